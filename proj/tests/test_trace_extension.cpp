// Boundary trace and interior extension: scale-by-scale averages with exact
// small-grid oracles, constant preservation bit for bit, linearity and hull
// bounds up to pinned rounding room, the maximal function's exact sup, and
// the round-trip comparison.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bmms/extension.hpp"
#include "bmms/generators.hpp"
#include "bmms/space.hpp"
#include "bmms/trace.hpp"

using namespace bmms;

namespace {

std::vector<double> coord_function(const Space& sp) {
  std::vector<double> u(sp.size());
  for (int i = 0; i < sp.size(); ++i) u[i] = sp.point(i)[0];
  return u;
}

std::vector<double> random_function(std::mt19937_64& g, int n) {
  std::vector<double> u(n);
  for (double& v : u) v = (double)(g() >> 11) * 0x1.0p-53;
  return u;
}

BesovParams params(double alpha, double p, double q, double theta) {
  BesovParams bp;
  bp.alpha = alpha;
  bp.p = p;
  bp.q = q;
  bp.theta = theta;
  return bp;
}

}  // namespace

TEST_CASE("single-scale trace of the coordinate on the fine grid") {
  Domain dom = gen_interval_grid(1024).to_domain();
  std::vector<double> u = coord_function(dom.space());
  TraceAtScale t = trace_at_scale(dom, u, 0.25);
  // at x = 0 only its own net ball contributes: the mean of k/1025 for
  // k = 1..256 is 257/2050
  CHECK(t.values[0] == doctest::Approx(257.0 / 2050.0).epsilon(1e-12));
  CHECK(t.values[1] == doctest::Approx(1.0 - 257.0 / 2050.0).epsilon(1e-12));
  CHECK(t.net_atoms.size() == 2);
  CHECK(t.dropped_atoms.empty());
}

TEST_CASE("trace at the default scales on the interval") {
  Domain dom = gen_interval_grid(64).to_domain();
  std::vector<double> u = coord_function(dom.space());
  TraceResult res = trace(dom, u, params(0.75, 2, 2, 1));
  REQUIRE(res.scales.size() >= 2);
  for (std::size_t k = 0; k + 1 < res.scales.size(); ++k) {
    CHECK(res.scales[k] == 2.0 * res.scales[k + 1]);
  }
  // finest scale 1/16 catches the four atoms k/65, k = 1..4
  CHECK(res.values[0] == doctest::Approx(2.5 / 65.0).epsilon(1e-12));
  CHECK(res.values[1] == doctest::Approx(1.0 - 2.5 / 65.0).epsilon(1e-12));
  for (double d : res.cauchy_diffs) CHECK(d >= 0.0);
  for (double r : res.lebesgue_residual) {
    CHECK(std::isfinite(r));
    CHECK(r >= 0.0);
  }
}

TEST_CASE("trace fixes constants bitwise") {
  Domain dom = gen_square_grid_bottom_edge(8).to_domain();
  const double c = 0.1 + 0.2;
  std::vector<double> u(dom.space().size(), c);
  TraceResult res = trace(dom, u, params(0.75, 2, 2, 1));
  for (double v : res.values) CHECK(v == c);
  for (double d : res.cauchy_diffs) CHECK(d == 0.0);
}

TEST_CASE("trace is linear up to rounding") {
  Domain dom = gen_interval_grid(32).to_domain();
  std::mt19937_64 g(17);
  std::vector<double> u = random_function(g, dom.space().size());
  std::vector<double> v = random_function(g, dom.space().size());
  double a = 1.7, b = -0.4;
  std::vector<double> mix(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) mix[i] = a * u[i] + b * v[i];
  TraceAtScale tu = trace_at_scale(dom, u, 0.2);
  TraceAtScale tv = trace_at_scale(dom, v, 0.2);
  TraceAtScale tm = trace_at_scale(dom, mix, 0.2);
  for (std::size_t j = 0; j < tm.values.size(); ++j) {
    CHECK(tm.values[j] ==
          doctest::Approx(a * tu.values[j] + b * tv.values[j]).epsilon(1e-12));
  }
}

TEST_CASE("trace scale and window validation") {
  Domain dom = gen_interval_grid(16).to_domain();
  std::vector<double> u = coord_function(dom.space());
  CHECK_THROWS_AS(trace_at_scale(dom, u, 0.0), Error);
  CHECK_THROWS_AS(trace_at_scale(dom, u, 1e-9), Error);  // all balls empty
  // alpha - theta/p must be positive
  CHECK_THROWS_AS(trace(dom, u, params(0.5, 2, 2, 2)), Error);
}

TEST_CASE("default scales halve from the boundary diameter") {
  Domain dom = gen_interval_grid(64).to_domain();
  std::vector<double> s = default_trace_scales(dom);
  REQUIRE(!s.empty());
  CHECK(s.front() == 1.0);  // the unit boundary diameter
  CHECK(s.back() >= 4.0 * dom.min_interior_gap());
  CHECK(s.back() < 8.0 * dom.min_interior_gap());
}

TEST_CASE("maximal function of the constant is the capped power") {
  Domain dom = gen_interval_grid(32).to_domain();
  std::vector<double> f(dom.space().size(), 1.0);
  MaximalValue m = fractional_maximal(dom, f, dom.boundary()[0], 1.0, 0.5);
  CHECK(m.value == 0.5);
  CHECK(m.arg_r == 0.5);
  MaximalValue flat = fractional_maximal(dom, f, dom.boundary()[0], 0.0, 0.5);
  CHECK(flat.value == 1.0);
}

TEST_CASE("maximal function finds the exact spike sup") {
  Domain dom = gen_interval_grid(4).to_domain();  // atoms at 0.2 .. 0.8
  std::vector<double> f = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  MaximalValue m = fractional_maximal(dom, f, 4, 1.0, 1.0);
  // r in (0.2, 0.4]: the ball sees only the spike, so r * 1 peaks at 0.4;
  // wider balls dilute faster than r grows
  CHECK(m.value == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(m.arg_r == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("weak-type table is monotone in lambda") {
  Domain dom = gen_interval_grid(48).to_domain();
  std::mt19937_64 g(3);
  std::vector<double> f = random_function(g, dom.space().size());
  std::vector<double> lambdas = {0.001, 0.01, 0.05, 0.2, 0.8};
  Weak11Report rep = weak11_check(dom, f, 1.0, 1.0, lambdas);
  CHECK(rep.maximal.size() == dom.boundary().size());
  CHECK(rep.f_l1 > 0);
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].nu_superlevel >= rep.rows[i + 1].nu_superlevel);
  }
  for (const auto& r : rep.rows) {
    CHECK(std::isfinite(r.normalized));
    CHECK(r.normalized >= 0);
  }
  CHECK(rep.max_normalized >= 0);
}

TEST_CASE("extension coefficients are shadow means on the small grid") {
  Domain dom = gen_interval_grid(4).to_domain();
  std::vector<double> f = {0, 0, 0, 0, 0.3, 0.9};
  ExtensionResult ext = whitney_extension(dom, f);
  REQUIRE(ext.cover.balls.size() == 4);
  // each shadow is a single endpoint, so every atom copies its anchor value
  CHECK(ext.values[0] == 0.3);
  CHECK(ext.values[1] == 0.3);
  CHECK(ext.values[2] == 0.9);
  CHECK(ext.values[3] == 0.9);
  CHECK(ext.values[4] == 0.3);  // boundary atoms keep f
  CHECK(ext.values[5] == 0.9);
  for (std::size_t k = 0; k < ext.cover.balls.size(); ++k) {
    const auto& b = ext.cover.balls[k];
    REQUIRE(b.shadow.size() == 1);
    CHECK(ext.coefficients[k] == f[b.shadow[0]]);
  }
}

TEST_CASE("extension fixes constants bitwise") {
  Domain dom = gen_square_grid_bottom_edge(9).to_domain();
  const double c = 1.0 / 3.0;
  std::vector<double> f(dom.space().size(), c);
  ExtensionResult ext = whitney_extension(dom, f);
  for (double v : ext.values) CHECK(v == c);
}

TEST_CASE("extension stays in the convex hull of the boundary data") {
  Domain dom = gen_square_grid_bottom_edge(12).to_domain();
  std::mt19937_64 g(41);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> f = random_function(g, dom.space().size());
    double lo = 1e300, hi = -1e300;
    for (int b : dom.boundary()) {
      lo = std::min(lo, f[b]);
      hi = std::max(hi, f[b]);
    }
    ExtensionResult ext = whitney_extension(dom, f);
    for (int x : dom.interior()) {
      CHECK(ext.values[x] >= lo - 1e-12);
      CHECK(ext.values[x] <= hi + 1e-12);
    }
  }
}

TEST_CASE("extension is linear up to rounding") {
  Domain dom = gen_interval_grid(24).to_domain();
  std::mt19937_64 g(59);
  std::vector<double> f = random_function(g, dom.space().size());
  std::vector<double> h = random_function(g, dom.space().size());
  double a = -2.0, b = 0.7;
  std::vector<double> mix(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mix[i] = a * f[i] + b * h[i];
  ExtensionResult ef = whitney_extension(dom, f);
  ExtensionResult eh = whitney_extension(dom, h);
  ExtensionResult em = whitney_extension(dom, mix);
  for (int x : dom.interior()) {
    CHECK(em.values[x] ==
          doctest::Approx(a * ef.values[x] + b * eh.values[x]).epsilon(1e-12));
  }
}

TEST_CASE("cutoff multiplies by the clamped boundary distance") {
  Domain dom = gen_interval_grid(8).to_domain();
  std::vector<double> f(dom.space().size(), 0.0);
  f[dom.boundary()[0]] = 1.0;
  f[dom.boundary()[1]] = 1.0;
  ExtensionResult ext = whitney_extension(dom, f);
  std::vector<double> cut = cutoff_extension(dom, ext);
  for (int x : dom.interior()) {
    double d = dom.dist_to_boundary(x);
    double expect = ext.values[x] * std::clamp(2.0 - d, 0.0, 1.0);
    CHECK(cut[x] == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("roundtrip of endpoint data is exact on the interval") {
  // every shadow is a single endpoint, so the extension is locally constant
  // near each endpoint and the trace recovers the data without error
  for (int n : {64, 256}) {
    Domain dom = gen_interval_grid(n).to_domain();
    std::vector<double> f(dom.space().size(), 0.0);
    f[dom.boundary()[1]] = 1.0;
    RoundtripReport rep = roundtrip_check(dom, f, params(0.75, 2, 2, 1));
    CHECK(rep.max_deviation == 0.0);
    CHECK(rep.lp_deviation == 0.0);
  }
}

TEST_CASE("roundtrip reports finite deviations for random data") {
  Domain dom = gen_square_grid_bottom_edge(10).to_domain();
  std::mt19937_64 g(7);
  std::vector<double> f = random_function(g, dom.space().size());
  RoundtripReport rep = roundtrip_check(dom, f, params(0.6, 2, 2, 0.5));
  CHECK(std::isfinite(rep.max_deviation));
  CHECK(rep.max_deviation >= 0);
  CHECK(rep.lp_deviation >= 0);
  CHECK(rep.traced.size() == dom.boundary().size());
}

TEST_CASE("operator norm report skips constants and enforces windows") {
  Domain dom = gen_interval_grid(32).to_domain();
  std::mt19937_64 g(11);
  std::vector<std::vector<double>> us = {
      std::vector<double>(dom.space().size(), 2.5),
      random_function(g, dom.space().size())};
  std::vector<std::vector<double>> fs = {
      std::vector<double>(dom.space().size(), -1.0),
      random_function(g, dom.space().size())};
  OperatorNormReport rep =
      operator_norm_report(dom, params(0.6, 2, 2, 0.5), us, fs);
  bool saw_skip = false, saw_ratio = false;
  for (const auto& row : rep.rows) {
    if (row.skipped) saw_skip = true;
    if (!row.skipped && row.ratio > 0) {
      saw_ratio = true;
      CHECK(std::isfinite(row.ratio));
    }
  }
  CHECK(saw_skip);
  CHECK(saw_ratio);
  CHECK(rep.trace_energy_ratio_max >= 0);

  CHECK_THROWS_AS(operator_norm_report(dom, params(0.75, 2, 2, 1), us, fs),
                  Error);  // alpha + theta/p = 1.25 breaks the upper window
}
