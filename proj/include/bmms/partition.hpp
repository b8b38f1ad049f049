#pragma once

#include <vector>

#include "bmms/space.hpp"

// Tent-function partitions of unity subordinate to a ball family: each bump is
// 1 on its ball, vanishes outside the 2-dilate, and is (1/radius)-Lipschitz;
// normalizing by the bump sum yields the partition weights.

namespace bmms {

// clamp(2 - d(x, center)/radius, 0, 1)
double bump(const Space& sp, const Ball& ball, int x);

struct PartitionOfUnity {
  const Space* sp = nullptr;
  std::vector<Ball> balls;

  // Normalized weights of all balls at atom x.  Throws
  // Error("UncoveredPoint") when every bump vanishes at x.
  std::vector<double> evaluate(int x) const;
  // Sum of raw bumps at x.
  double bump_sum(int x) const;
};

struct PartitionCheck {
  double max_sum_deviation = 0;   // max over sampled atoms of |sum - 1|
  bool support_exact = true;      // phi_B(x) > 0 implies d(x, center) < 2r
  double max_lipschitz_quotient = 0;  // max of |phi(x)-phi(y)| * r_B / d(x,y)
  bool pass = false;              // sum within 1e-9 and supports exact
};

// Verifies the partition over the sampled atom ids: the weights sum to one
// (within 1e-9), supports sit inside the 2-dilates exactly, and reports the
// empirical scaled Lipschitz quotient over all sample pairs.
PartitionCheck verify_partition(const PartitionOfUnity& pou,
                                const std::vector<int>& samples);

}  // namespace bmms
