#include "bmms/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "bmms/net.hpp"

namespace bmms {

namespace {

// Shared scan: mass(center, r) must return the measure of the open ball.
template <typename MassFn>
DoublingReport doubling_scan(int n, const std::vector<double>& radii,
                             MassFn mass) {
  DoublingReport rep;
  for (int c = 0; c < n; ++c) {
    for (double r : radii) {
      double small = mass(c, r);
      if (small <= 0) continue;
      double big = mass(c, 2 * r);
      double ratio = big / small;
      ++rep.samples;
      if (ratio > rep.constant) {
        rep.constant = ratio;
        rep.argmax = {c, r, ratio};
      }
    }
  }
  return rep;
}

}  // namespace

DoublingReport doubling_constant_estimate(const Space& sp,
                                          const std::vector<double>& radii) {
  std::vector<double> rs = radii.empty() ? sp.breakpoints() : radii;
  return doubling_scan(sp.size(), rs,
                       [&](int c, double r) { return sp.ball_mass(c, r); });
}

DoublingReport doubling_constant_estimate(const Domain& dom,
                                          const std::vector<double>& radii) {
  std::vector<double> rs = radii.empty() ? dom.space().breakpoints() : radii;
  return doubling_scan(dom.space().size(), rs,
                       [&](int c, double r) { return dom.total_ball(c, r); });
}

CodimProfile codimension_profile(const Domain& dom, double theta,
                                 const std::vector<double>& radii) {
  CodimProfile prof;
  prof.theta = theta;
  double rmax = 2.0 * dom.boundary_diameter();
  std::vector<double> rs;
  if (radii.empty()) {
    for (double b : dom.space().breakpoints())
      if (b <= rmax) rs.push_back(b);
    if (rs.empty() && rmax > 0) rs.push_back(rmax);
  } else {
    rs = radii;
  }
  prof.min_ratio = std::numeric_limits<double>::infinity();
  prof.max_ratio = 0;
  for (int z : dom.boundary()) {
    for (double r : rs) {
      CodimSample s{z, r, 0.0, false};
      double mu = dom.mu_ball(z, r);
      if (mu <= 0) {
        s.skipped = true;
        ++prof.skipped;
      } else {
        s.ratio = std::pow(r, theta) * dom.nu_ball(z, r) / mu;
        ++prof.used;
        prof.min_ratio = std::min(prof.min_ratio, s.ratio);
        prof.max_ratio = std::max(prof.max_ratio, s.ratio);
      }
      prof.table.push_back(s);
    }
  }
  if (prof.used == 0) {
    prof.min_ratio = prof.max_ratio = 0;
    prof.regularity_constant = 0;
  } else {
    prof.regularity_constant =
        std::max(prof.max_ratio,
                 prof.min_ratio > 0
                     ? 1.0 / prof.min_ratio
                     : std::numeric_limits<double>::infinity());
  }
  return prof;
}

ContentReport hausdorff_codim_content(const Domain& dom, double theta,
                                      double epsilon) {
  if (!(epsilon > 0)) throw Error("BadParams", "epsilon must be positive");
  ContentReport rep;
  rep.epsilon = epsilon;
  rep.theta = theta;
  MeasuredSubset bdry = boundary_subset(dom);
  SeparatedNet net = maximal_separated_net(bdry, epsilon);
  for (int pos : net.members) {
    int atom = bdry.idx[pos];
    rep.centers.push_back(atom);
    // interior mass only: the interior measure is zero-extended to the
    // boundary, so the closure mass of the cover ball equals its interior mass
    rep.value += dom.mu_ball(atom, epsilon);
  }
  rep.value /= std::pow(epsilon, theta);
  return rep;
}

}  // namespace bmms
