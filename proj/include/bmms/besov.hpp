#pragma once

#include <vector>

#include "bmms/space.hpp"

// Smoothness energies on a weighted point set: the per-scale energy
//   E(t) = sum_x w_x * (weighted mean over B(x,t) of |u(y)-u(x)|^p),
// its dyadic-sum and exact-integral aggregations against t^(-alpha*q-1) dt/t
// weights, and the dyadic envelope bracket that sandwiches the integral.
// E(t) is piecewise constant in t with jumps only at pairwise distances, so
// the integral form is evaluated in closed form (including the tail beyond
// the diameter) and is exact.

namespace bmms {

// Direct evaluation of E(t); O(n^2).
double scale_energy(const MeasuredSubset& set, const std::vector<double>& u,
                    double t, double p);

// Precomputed per-point sorted distances with prefix sums, making repeated
// E(t) evaluations O(n log n) each.
class EnergyEvaluator {
 public:
  EnergyEvaluator(const MeasuredSubset& set, const std::vector<double>& u,
                  double p);
  double energy(double t) const;  // equals scale_energy(set, u, t, p)
  double energy_inf() const;      // value for t > diameter
  const std::vector<double>& breakpoints() const { return breaks_; }

 private:
  int n_;
  std::vector<double> weights_;
  std::vector<std::vector<double>> dist_;        // per point, sorted ascending
  std::vector<std::vector<double>> prefix_w_;    // cumulative weights
  std::vector<std::vector<double>> prefix_num_;  // cumulative w*|du|^p
  std::vector<double> breaks_;
};

struct EnergyRow {
  int k = 0;            // dyadic scale index (t = 2^k)
  double t = 0;
  double energy = 0;    // E(t)
  double contribution = 0;
};

struct EnergyReport {
  std::string form;     // "dyadic", "integral", "sup-dyadic" or "sup-breakpoints"
  double value = 0;     // the energy (q-th root taken for the sum forms)
  double tail = 0;      // analytic upper-tail contribution (pre-root)
  int k_min = 0, k_max = 0;
  std::vector<EnergyRow> rows;
  int intervals = 0;    // breakpoint intervals used (integral form)
};

// Dyadic form: (sum_k 2^(-k alpha q) E(2^k)^(q/p))^(1/q) over k in
// [k_min, k_max] plus the geometric upper tail in closed form (E is constant
// beyond the diameter).  Scales below k_min contribute zero because E
// vanishes at and below the smallest positive distance.  When k bounds are
// not given they default to floor(log2(min gap)) and ceil(log2(diam)) + 1.
// For q = infinity the sup form over the same scales is returned, with the
// upper-tail sup attained at k_max + 1 included analytically.
EnergyReport besov_energy_dyadic(const MeasuredSubset& set,
                                 const std::vector<double>& u,
                                 const BesovParams& params,
                                 bool have_range = false, int k_min = 0,
                                 int k_max = 0);

// Exact integral form: (int_0^inf E(t)^(q/p) t^(-alpha q - 1) dt)^(1/q),
// evaluated via the piecewise-constant structure of E plus the exact tail
// integral beyond the diameter.  For q = infinity returns the supremum of
// t^(-alpha) E(t)^(1/p), attained at breakpoint interval edges.
EnergyReport besov_energy_integral(const MeasuredSubset& set,
                                   const std::vector<double>& u,
                                   const BesovParams& params);

struct InhomogeneousNorm {
  double lp = 0;       // (sum w |u|^p)^(1/p)
  double energy = 0;   // dyadic-form energy
  double total = 0;    // lp + energy
};

InhomogeneousNorm inhomogeneous_norm(const MeasuredSubset& set,
                                     const std::vector<double>& u,
                                     const BesovParams& params);

struct EnvelopeBracket {
  double lower = 0;  // c * sum_k 2^(-k alpha q) (inf over block E)^(q/p)
  double value = 0;  // the raw integral (q-th power of the integral form)
  double upper = 0;  // same with sup over block
  double c = 0;      // (2^(alpha q) - 1) / (alpha q)
};

// Sandwiches the integral over each dyadic block (2^(k-1), 2^k] between the
// inf and sup of E over the block (both exact via the breakpoint intervals),
// with the constant-tail blocks beyond the diameter summed analytically.
// All three sums run over identical pieces in identical order with shared
// nonnegative weights, so lower <= value <= upper holds exactly in floating
// point, not merely up to rounding.  Requires q < infinity.
EnvelopeBracket envelope_bracket(const MeasuredSubset& set,
                                 const std::vector<double>& u,
                                 const BesovParams& params);

struct RearrangementCheck {
  double lhs = 0;    // sum_i (sum_j a^(-|j-i|) c_j)^b, exact analytic tails
  double bound = 0;  // ((a+1)/(a-1))^b * sum_j c_j^b
  double ratio = 0;  // lhs / bound (0 when bound is 0)
  bool holds = false;  // lhs <= bound up to 1e-12 relative rounding room
                       // (b = 1 attains the bound exactly); b >= 1 only
};

// Discrete convolution-rearrangement inequality for a > 1, b > 0 and
// nonnegative finitely supported c (indexed 0..n-1, extended by zero).  The
// two geometric tails of the outer sum are added in closed form, so lhs is
// exact.  For b >= 1 the bound follows from the l1 * lb Young inequality with
// kernel mass (a+1)/(a-1); for b < 1 the ratio is reported without assertion.
RearrangementCheck sum_rearrangement_check(double a, double b,
                                           const std::vector<double>& c);

}  // namespace bmms
