#include "bmms/trace.hpp"

#include <algorithm>
#include <cmath>

#include "bmms/net.hpp"

namespace bmms {

TraceAtScale trace_at_scale(const Domain& dom, const std::vector<double>& u,
                            double r) {
  if (!(r > 0)) throw Error("BadParams", "trace scale must be positive");
  TraceAtScale out;
  out.r = r;
  MeasuredSubset bdry = boundary_subset(dom);
  SeparatedNet net = maximal_separated_net(bdry, r);

  PartitionOfUnity pou;
  pou.sp = &dom.space();
  for (int pos : net.members) {
    int atom = bdry.idx[pos];
    double mass = dom.mu_ball(atom, r);
    if (mass <= 0) {
      out.dropped_atoms.push_back(atom);
      continue;
    }
    out.net_atoms.push_back(atom);
    out.coefficients.push_back(dom.mu_average(u, atom, r));
    pou.balls.push_back({atom, r});
  }
  if (out.net_atoms.empty())
    throw Error("ScaleTooFine",
                "every net ball at scale " + std::to_string(r) +
                    " misses the interior");

  out.values.reserve(dom.boundary().size());
  for (int z : dom.boundary()) {
    auto phi = pou.evaluate(z);  // throws UncoveredPoint if all bumps vanish
    // convex blend; equal active coefficients return the common value so
    // constants pass through the trace bit-exactly
    double v = 0, common = 0;
    bool any = false, all_equal = true;
    for (size_t k = 0; k < phi.size(); ++k) {
      if (phi[k] > 0) {
        if (!any) {
          common = out.coefficients[k];
          any = true;
        } else if (out.coefficients[k] != common) {
          all_equal = false;
        }
      }
      v += out.coefficients[k] * phi[k];
    }
    out.values.push_back(any && all_equal ? common : v);
  }
  return out;
}

std::vector<double> default_trace_scales(const Domain& dom) {
  double diam = dom.boundary_diameter();
  if (!(diam > 0))
    throw Error("BadParams",
                "default trace scales need a boundary with positive diameter");
  double floor_r = 4.0 * dom.min_interior_gap();
  std::vector<double> scales;
  for (double r = diam; r >= floor_r; r /= 2) scales.push_back(r);
  if (scales.empty()) scales.push_back(diam);
  return scales;
}

TraceResult trace(const Domain& dom, const std::vector<double>& u,
                  const BesovParams& params,
                  const std::vector<double>& scales) {
  params.validate();
  if (!(params.alpha - params.theta / params.p > 0))
    throw Error("BadParams", "trace requires alpha - theta/p > 0");
  TraceResult res;
  res.scales = scales.empty() ? default_trace_scales(dom) : scales;

  for (double r : res.scales)
    res.per_scale_values.push_back(trace_at_scale(dom, u, r).values);
  res.values = res.per_scale_values.back();

  const auto& bd = dom.boundary();
  for (size_t k = 0; k + 1 < res.scales.size(); ++k) {
    double s = 0;
    for (size_t j = 0; j < bd.size(); ++j)
      s += dom.nu()[j] * std::pow(std::fabs(res.per_scale_values[k][j] -
                                            res.per_scale_values[k + 1][j]),
                                  params.p);
    res.cauchy_diffs.push_back(std::pow(s, 1.0 / params.p));
  }

  // least-squares slope of log2(diff) against the scale index
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t k = 0; k < res.cauchy_diffs.size(); ++k) {
      if (!(res.cauchy_diffs[k] > 0)) continue;
      double x = static_cast<double>(k), y = std::log2(res.cauchy_diffs[k]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    double den = cnt * sxx - sx * sx;
    res.decay_slope = (cnt >= 2 && den != 0) ? (cnt * sxy - sx * sy) / den : 0.0;
  }

  double r_fine = res.scales.back();
  res.lebesgue_residual.reserve(bd.size());
  for (size_t j = 0; j < bd.size(); ++j) {
    double num = 0, den = 0;
    for (int i : dom.interior())
      if (dom.space().dist(bd[j], i) < r_fine) {
        num += dom.space().weight(i) *
               std::pow(std::fabs(u[i] - res.values[j]), params.p);
        den += dom.space().weight(i);
      }
    res.lebesgue_residual.push_back(
        den > 0 ? num / den : std::numeric_limits<double>::quiet_NaN());
  }
  return res;
}

MaximalValue fractional_maximal(const Domain& dom, const std::vector<double>& f,
                                int z, double theta, double R) {
  if (!(R > 0)) throw Error("BadParams", "maximal radius cap must be positive");
  if (!(theta >= 0)) throw Error("BadParams", "theta must be >= 0");
  // sorted distances from z to interior atoms with prefix sums of w, w|f|
  struct Row {
    double d, w, wf;
  };
  std::vector<Row> rows;
  rows.reserve(dom.interior().size());
  for (int i : dom.interior())
    rows.push_back({dom.space().dist(z, i), dom.space().weight(i),
                    dom.space().weight(i) * std::fabs(f[i])});
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.d < b.d; });

  MaximalValue mv;
  double cw = 0, cwf = 0;
  size_t k = 0;
  while (k < rows.size()) {
    double d = rows[k].d;
    while (k < rows.size() && rows[k].d == d) {  // absorb whole tie group
      cw += rows[k].w;
      cwf += rows[k].wf;
      ++k;
    }
    if (d >= R) break;
    // the average is constant for radii in (d, next_d]; r^theta grows, so
    // the sup over the interval sits at its right end, capped at R
    double r_end = k < rows.size() ? std::min(rows[k].d, R) : R;
    double cand = std::pow(r_end, theta) * (cwf / cw);
    if (cand > mv.value) {
      mv.value = cand;
      mv.arg_r = r_end;
    }
  }
  return mv;
}

Weak11Report weak11_check(const Domain& dom, const std::vector<double>& f,
                          double theta, double R,
                          const std::vector<double>& lambdas) {
  Weak11Report rep;
  for (int z : dom.boundary())
    rep.maximal.push_back(fractional_maximal(dom, f, z, theta, R).value);
  for (int i : dom.interior())
    rep.f_l1 += dom.space().weight(i) * std::fabs(f[i]);
  for (double lam : lambdas) {
    Weak11Row row;
    row.lambda = lam;
    for (size_t j = 0; j < rep.maximal.size(); ++j)
      if (rep.maximal[j] > lam) row.nu_superlevel += dom.nu()[j];
    row.normalized = rep.f_l1 > 0 ? lam * row.nu_superlevel / rep.f_l1 : 0.0;
    rep.max_normalized = std::max(rep.max_normalized, row.normalized);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace bmms
