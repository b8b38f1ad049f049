#pragma once

#include <vector>

#include "bmms/space.hpp"

// Interior Whitney-type cover: balls whose radius is exactly one eighth of the
// center's distance to the boundary, organized in dyadic levels, with centers
// forming per-level separated nets.  Each ball carries a boundary anchor (a
// nearest boundary atom) and the induced boundary shadows.

namespace bmms {

struct WhitneyBall {
  int level;        // i with 2^(i-1) < radius <= 2^i
  int center;       // interior atom id
  double radius;    // dist(center, boundary) / 8, exact
  int anchor;       // nearest boundary atom id (ties -> smallest id)
  std::vector<int> shadow;           // B(anchor, radius) ∩ boundary
  std::vector<int> enlarged_shadow;  // B(anchor, 32 radius) ∩ boundary
};

struct WhitneyCover {
  std::vector<WhitneyBall> balls;  // ordered by (level ascending, net order)
  std::vector<int> levels;         // distinct levels, ascending
};

// Layered construction: interior atoms are binned into dyadic distance bands
// L_i = {x : 2^(i+2) < dist(x, boundary) <= 2^(i+3)}; the centers at level i
// are a greedy maximal 2^(i-1)-separated net of L_i (seeded at the smallest
// atom id in the band).  Every interior atom is covered because the net
// leaves no band point at distance >= 2^(i-1) from all centers, while ball
// radii exceed 2^(i-1).
WhitneyCover whitney_cover(const Domain& dom);

// Max over `points` (atom ids) of the number of K-dilated balls containing
// the point.
int overlap_count(const Space& sp, const std::vector<WhitneyBall>& balls,
                  const std::vector<int>& points, double K);

// Max over boundary atoms of the number of K-dilated shadows
// (B(anchor, K * radius) ∩ boundary) containing the atom.
int shadow_overlap_count(const Domain& dom,
                         const std::vector<WhitneyBall>& balls, double K);

struct WhitneyCheck {
  bool covers_interior = false;       // every interior atom in some open ball
  bool radius_rule_exact = false;     // radius == dist/8 (exact fp equality)
  bool level_windows = false;         // 2^(level-1) < r <= 2^level
  bool level_separation = false;      // same-level centers >= 2^(level-1) apart
  int max_overlap_2dilate = 0;        // over all atoms of the domain's space
  bool pass = false;                  // all booleans above
};

WhitneyCheck verify_whitney(const Domain& dom, const WhitneyCover& cover);

}  // namespace bmms
