#include "bmms/extension.hpp"

#include <algorithm>
#include <cmath>

#include "bmms/partition.hpp"

namespace bmms {

namespace {

std::vector<double> align(const std::vector<double>& full,
                          const std::vector<int>& idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(full[i]);
  return out;
}

double lp_norm(const MeasuredSubset& set, const std::vector<double>& aligned,
               double p) {
  double s = 0;
  for (int i = 0; i < set.size(); ++i)
    s += set.w[i] * std::pow(std::fabs(aligned[i]), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

ExtensionResult whitney_extension(const Domain& dom,
                                  const std::vector<double>& f) {
  ExtensionResult res;
  res.cover = whitney_cover(dom);

  res.coefficients.reserve(res.cover.balls.size());
  for (const auto& ball : res.cover.balls) {
    // weighted shadow mean; equal values short-circuit so constants are
    // extended bit-exactly, and the quotient is clamped into the exact value
    // bracket so rounding can never push a mean outside the data hull
    double num = 0, den = 0, common = 0;
    double lo = 0, hi = 0;
    bool any = false, all_equal = true;
    for (int b : ball.shadow) {
      double w = dom.nu_weight_of(b);
      if (!any) {
        common = lo = hi = f[b];
        any = true;
      } else if (f[b] != common) {
        all_equal = false;
        lo = std::min(lo, f[b]);
        hi = std::max(hi, f[b]);
      }
      num += w * f[b];
      den += w;
    }
    // shadows contain their anchor and boundary weights are positive
    res.coefficients.push_back(all_equal ? common
                                         : std::clamp(num / den, lo, hi));
  }

  PartitionOfUnity pou;
  pou.sp = &dom.space();
  for (const auto& ball : res.cover.balls)
    pou.balls.push_back({ball.center, ball.radius});

  res.values.assign(dom.space().size(), 0.0);
  for (int b : dom.boundary()) res.values[b] = f[b];
  for (int x : dom.interior()) {
    auto phi = pou.evaluate(x);
    // convex blend with the same equal-coefficient short-circuit as the
    // trace, so extension and trace fix constants at the bit level; the
    // blend is clamped into the coefficient bracket of the supporting balls
    // for the same reason as the shadow means
    double v = 0, common = 0, lo = 0, hi = 0;
    bool any = false, all_equal = true;
    for (size_t k = 0; k < phi.size(); ++k) {
      if (phi[k] > 0) {
        if (!any) {
          common = lo = hi = res.coefficients[k];
          any = true;
        } else if (res.coefficients[k] != common) {
          all_equal = false;
          lo = std::min(lo, res.coefficients[k]);
          hi = std::max(hi, res.coefficients[k]);
        }
      }
      v += res.coefficients[k] * phi[k];
    }
    res.values[x] = any ? (all_equal ? common : std::clamp(v, lo, hi)) : v;
  }
  return res;
}

std::vector<double> cutoff_extension(const Domain& dom,
                                     const ExtensionResult& ext) {
  std::vector<double> out = ext.values;
  for (int x : dom.interior()) {
    double cut = std::clamp(2.0 - dom.dist_to_boundary(x), 0.0, 1.0);
    out[x] *= cut;
  }
  return out;
}

RoundtripReport roundtrip_check(const Domain& dom, const std::vector<double>& f,
                                const BesovParams& params) {
  RoundtripReport rep;
  ExtensionResult ext = whitney_extension(dom, f);
  rep.trace_detail = trace(dom, ext.values, params);
  rep.traced = rep.trace_detail.values;
  const auto& bd = dom.boundary();
  double s = 0;
  for (size_t j = 0; j < bd.size(); ++j) {
    double dev = std::fabs(rep.traced[j] - f[bd[j]]);
    rep.deviations.push_back(dev);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    s += dom.nu()[j] * std::pow(dev, params.p);
  }
  rep.lp_deviation = std::pow(s, 1.0 / params.p);
  return rep;
}

OperatorNormReport operator_norm_report(
    const Domain& dom, const BesovParams& params,
    const std::vector<std::vector<double>>& interior_functions,
    const std::vector<std::vector<double>>& boundary_functions) {
  params.validate();
  double down = params.alpha - params.theta / params.p;
  double up = params.alpha + params.theta / params.p;
  if (!(down > 0))
    throw Error("BadParams", "trace window needs alpha - theta/p > 0");
  if (!(up < 1))
    throw Error("BadParams", "extension window needs alpha + theta/p < 1");

  OperatorNormReport rep;
  MeasuredSubset inter = interior_subset(dom);
  MeasuredSubset bdry = boundary_subset(dom);
  BesovParams traced_params = params;
  traced_params.alpha = down;
  BesovParams extended_params = params;
  extended_params.alpha = up;

  auto push = [&rep](const std::string& what, int idx, double num, double den) {
    OperatorNormRow row;
    row.quantity = what;
    row.function_index = idx;
    row.numerator = num;
    row.denominator = den;
    row.skipped = !(den > 0);
    row.ratio = row.skipped ? 0.0 : num / den;
    rep.rows.push_back(row);
    return row;
  };

  for (size_t i = 0; i < interior_functions.size(); ++i) {
    const auto& u = interior_functions[i];
    TraceResult tr = trace(dom, u, params);
    double num_e =
        besov_energy_dyadic(bdry, tr.values, traced_params).value;
    double den_e =
        besov_energy_dyadic(inter, align(u, inter.idx), params).value;
    auto row = push("trace-energy", static_cast<int>(i), num_e, den_e);
    if (!row.skipped)
      rep.trace_energy_ratio_max = std::max(rep.trace_energy_ratio_max, row.ratio);

    double num_lp = lp_norm(bdry, tr.values, params.p);
    double den_lp = lp_norm(inter, align(u, inter.idx), params.p) + den_e;
    row = push("trace-lp", static_cast<int>(i), num_lp, den_lp);
    if (!row.skipped)
      rep.trace_lp_ratio_max = std::max(rep.trace_lp_ratio_max, row.ratio);
  }

  for (size_t i = 0; i < boundary_functions.size(); ++i) {
    const auto& f = boundary_functions[i];
    ExtensionResult ext = whitney_extension(dom, f);
    double num_e =
        besov_energy_dyadic(inter, align(ext.values, inter.idx), extended_params)
            .value;
    double den_e = besov_energy_dyadic(bdry, align(f, bdry.idx), params).value;
    auto row = push("extension-energy", static_cast<int>(i), num_e, den_e);
    if (!row.skipped)
      rep.extension_energy_ratio_max =
          std::max(rep.extension_energy_ratio_max, row.ratio);

    double num_lp = lp_norm(inter, align(ext.values, inter.idx), params.p);
    double den_lp = lp_norm(bdry, align(f, bdry.idx), params.p);
    row = push("extension-lp", static_cast<int>(i), num_lp, den_lp);
    if (!row.skipped)
      rep.extension_lp_ratio_max =
          std::max(rep.extension_lp_ratio_max, row.ratio);
  }
  return rep;
}

}  // namespace bmms
