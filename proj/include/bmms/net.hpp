#pragma once

#include <vector>

#include "bmms/space.hpp"

namespace bmms {

// A maximal separated net inside a ground set.  Members are positions into
// the ground set (not atom ids); every two members are >= separation apart
// and every ground point lies strictly within `separation` of some member.
struct SeparatedNet {
  double separation = 0;
  std::vector<int> members;  // positions into the ground set, in greedy order
};

// Greedy scan in ascending position order starting from `seed` (default:
// position 0), so results are deterministic.  A point joins the net iff its
// distance to every current member is >= separation.
SeparatedNet maximal_separated_net(const MeasuredSubset& ground,
                                   double separation, int seed = 0);

// Same, but the net is seeded with `initial` (positions, kept in order) before
// the greedy scan.  The initial members must themselves be separated.
SeparatedNet maximal_separated_net_seeded(const MeasuredSubset& ground,
                                          double separation,
                                          const std::vector<int>& initial);

// True iff every two members are >= separation apart and every ground point
// is strictly within separation of some member.
bool verify_net(const MeasuredSubset& ground, const SeparatedNet& net);

}  // namespace bmms
