#pragma once

#include <vector>

#include "bmms/partition.hpp"
#include "bmms/space.hpp"

// Boundary trace operator realized as a Cauchy limit over shrinking scales:
// at scale r, boundary values are partition-of-unity blends of interior ball
// averages over a maximal r-separated boundary net.  Also the restricted
// fractional maximal function (exact sup via breakpoint intervals) and its
// weak-type table.

namespace bmms {

struct TraceAtScale {
  double r = 0;
  std::vector<int> net_atoms;      // kept net centers (boundary atom ids)
  std::vector<int> dropped_atoms;  // net centers whose ball missed the interior
  std::vector<double> coefficients;  // interior mu-averages, aligned with net_atoms
  std::vector<double> values;        // aligned with the domain's boundary list
};

// One trace scale: maximal r-separated net of the boundary (seeded at the
// first boundary atom), interior mu-averages of u over the net balls (balls
// with empty interior intersection are dropped from the partition), tent
// partition evaluated at the boundary atoms.  Throws Error("ScaleTooFine")
// when every net ball misses the interior.
TraceAtScale trace_at_scale(const Domain& dom, const std::vector<double>& u,
                            double r);

struct TraceResult {
  std::vector<double> scales;
  std::vector<std::vector<double>> per_scale_values;
  std::vector<double> values;       // finest-scale trace on the boundary list
  std::vector<double> cauchy_diffs; // ||T_{r_k} u - T_{r_{k+1}} u||_{L^p(nu)}
  double decay_slope = 0;           // least-squares slope of log2 diff vs k
  // mean over B(z, r_finest) of |u - Tu(z)|^p with mu, per boundary atom;
  // NaN where the finest ball misses the interior
  std::vector<double> lebesgue_residual;
};

// Runs trace_at_scale over the scales (default: boundary_diameter * 2^-k until
// the scale would drop below four times the smallest interior-boundary gap)
// and reports the Cauchy differences between consecutive scales.  Requires
// alpha - theta/p > 0.
TraceResult trace(const Domain& dom, const std::vector<double>& u,
                  const BesovParams& params,
                  const std::vector<double>& scales = {});

std::vector<double> default_trace_scales(const Domain& dom);

struct MaximalValue {
  double value = 0;    // sup over 0 < r < R of r^theta * avg_{B(z,r)} |f|
  double arg_r = 0;    // radius attaining (or approaching) the sup
};

// Restricted fractional maximal function of f (given on the interior, mu
// averages) at boundary atom z.  The average is piecewise constant between
// distances from z to interior atoms and r^theta is nondecreasing, so the
// exact sup evaluates each breakpoint interval at its right end capped at R.
// Balls with empty interior intersection contribute zero.
MaximalValue fractional_maximal(const Domain& dom, const std::vector<double>& f,
                                int z, double theta, double R);

struct Weak11Row {
  double lambda = 0;
  double nu_superlevel = 0;  // nu{z : Mf(z) > lambda}
  double normalized = 0;     // lambda * nu_superlevel / ||f||_L1(mu)
};

struct Weak11Report {
  std::vector<double> maximal;  // Mf per boundary atom
  double f_l1 = 0;
  std::vector<Weak11Row> rows;
  double max_normalized = 0;
};

// Weak-type (1,1) table for the restricted fractional maximal operator over
// the given lambda grid.
Weak11Report weak11_check(const Domain& dom, const std::vector<double>& f,
                          double theta, double R,
                          const std::vector<double>& lambdas);

}  // namespace bmms
