#pragma once

#include <vector>

#include "bmms/space.hpp"

// Regularity diagnostics: doubling constants, codimension profiles of the
// boundary measure, and a greedy upper bound for codimension Hausdorff
// content.

namespace bmms {

struct DoublingSample {
  int center;
  double radius;
  double ratio;  // m(B(x,2r)) / m(B(x,r))
};

struct DoublingReport {
  double constant = 1.0;  // max ratio over all samples
  DoublingSample argmax{0, 0, 1.0};
  int samples = 0;
};

// Doubling constant of the space's weight measure over the given radii (every
// center is paired with every radius).  An empty radii list means
// "all breakpoints": r ranges over all distinct positive pairwise distances,
// which captures the exact supremum over r > 0 — with open balls, both
// m(B(x,r)) and m(B(x,2r)) are left-continuous nondecreasing step functions
// of r, constant between consecutive pairwise distances, and on each such
// interval the ratio is maximized at the right endpoint.
DoublingReport doubling_constant_estimate(const Space& sp,
                                          const std::vector<double>& radii = {});

// Same, for the domain's combined measure (mu on the interior + nu on the
// boundary), sampling centers over all atoms.
DoublingReport doubling_constant_estimate(const Domain& dom,
                                          const std::vector<double>& radii = {});

struct CodimSample {
  int center;      // boundary atom id
  double radius;
  double ratio;    // r^theta * nu(B ∩ boundary) / mu(B ∩ interior)
  bool skipped;    // true when mu(B ∩ interior) == 0
};

struct CodimProfile {
  double theta = 0;
  double min_ratio = 0;
  double max_ratio = 0;
  double regularity_constant = 0;  // max(max_ratio, 1/min_ratio)
  int used = 0;
  int skipped = 0;
  std::vector<CodimSample> table;
};

// Two-sided codimension-theta regularity profile of nu against mu: for
// boundary centers z and radii r in (0, 2 diam(boundary)], the ratio
// r^theta nu(B(z,r)) / mu(B(z,r) ∩ interior).  Samples with empty interior
// intersection are recorded as skipped, not failed.  An empty radii list
// samples all breakpoints of the space capped at twice the boundary diameter.
CodimProfile codimension_profile(const Domain& dom, double theta,
                                 const std::vector<double>& radii = {});

struct ContentReport {
  double epsilon = 0;
  double theta = 0;
  double value = 0;          // sum of mu(B_i)/epsilon^theta over cover balls
  std::vector<int> centers;  // greedy net covering the boundary
};

// Upper-bound estimator for the codimension-theta content of the boundary at
// scale epsilon: greedy maximal epsilon-separated net of the boundary, cover
// by epsilon-balls, sum of interior mass over epsilon^theta.
ContentReport hausdorff_codim_content(const Domain& dom, double theta,
                                      double epsilon);

}  // namespace bmms
