// End-to-end acceptance checks for the library and CLI.  Each check prints
// exactly one [PASS]/[FAIL] line; the process exits nonzero if any check
// fails.  Tolerances are pinned here, next to the quantity they guard.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "bmms/besov.hpp"
#include "bmms/extension.hpp"
#include "bmms/generators.hpp"
#include "bmms/hyperfill.hpp"
#include "bmms/partition.hpp"
#include "bmms/trace.hpp"
#include "bmms/whitney.hpp"

namespace fs = std::filesystem;
using namespace bmms;
using Clock = std::chrono::steady_clock;

static int g_failures = 0;

static void report(int id, bool pass, const std::string& what,
                   const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("[%s] %02d %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

static double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

static std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---------------------------------------------------------------------------
// 01: two-atom space energies against closed forms.

static void check01() {
  auto t0 = Clock::now();
  bool pass = false;
  std::string detail;
  try {
    Space sp = gen_two_point().to_space();
    MeasuredSubset set = whole_space(sp);
    std::vector<double> u = {0.0, 1.0};
    BesovParams bp{0.5, 1.0, 1.0, 0.0};
    double integral = besov_energy_integral(set, u, bp).value;
    double dyadic = besov_energy_dyadic(set, u, bp).value;
    const double want_integral = 2.0;
    const double want_dyadic = 1.0 / (std::sqrt(2.0) - 1.0);
    double el = seconds_since(t0);
    pass = std::fabs(integral - want_integral) <= 1e-12 &&
           std::fabs(dyadic - want_dyadic) <= 1e-12 && el < 1.0;
    detail = fmt("integral=%.15g dyadic=%.15g elapsed=%.3fs", integral, dyadic,
                 el);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(1, pass, "two-atom energies match the closed forms", detail);
}

// ---------------------------------------------------------------------------
// 02: envelope bracket encloses the raw integral with no tolerance at all.

static void check02() {
  auto t0 = Clock::now();
  bool pass = false;
  std::string detail;
  try {
    Domain dom = gen_interval_grid(64).to_domain();
    MeasuredSubset set = interior_subset(dom);
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const BesovParams combos[5] = {{0.5, 1.0, 1.0, 0.0},
                                   {0.75, 2.0, 2.0, 0.0},
                                   {0.3, 1.5, 3.0, 0.0},
                                   {0.9, 2.0, 1.5, 0.0},
                                   {2.0 / 3.0, 3.0, 2.0, 0.0}};
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> u(set.idx.size());
      for (double& v : u) v = U(g);
      EnvelopeBracket env = envelope_bracket(set, u, combos[trial % 5]);
      // exact inequality: rounding room would defeat the point
      if (!(env.lower <= env.value && env.value <= env.upper)) ++bad;
    }
    double el = seconds_since(t0);
    pass = bad == 0 && el < 10.0;
    detail = fmt("violations=%d/50 elapsed=%.3fs", bad, el);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(2, pass, "envelope bracket encloses the raw integral exactly",
         detail);
}

// ---------------------------------------------------------------------------
// 03: cover structure is exact and the partition sums to one.

static void check03() {
  bool pass = false;
  std::string detail;
  try {
    bool all = true;
    std::string parts;
    for (int which = 0; which < 2; ++which) {
      Domain dom = which == 0 ? gen_interval_grid(1024).to_domain()
                              : gen_square_grid_bottom_edge(32).to_domain();
      WhitneyCover cover = whitney_cover(dom);
      WhitneyCheck chk = verify_whitney(dom, cover);
      PartitionOfUnity pou;
      pou.sp = &dom.space();
      for (const auto& b : cover.balls) pou.balls.push_back({b.center, b.radius});
      double dev = 0;
      for (int x : dom.interior()) {
        double s = 0;
        for (double v : pou.evaluate(x)) s += v;
        dev = std::max(dev, std::fabs(s - 1.0));
      }
      bool ok = chk.covers_interior && chk.radius_rule_exact &&
                chk.level_windows && dev <= 1e-9;
      all = all && ok;
      parts += fmt("%s: cover=%d radius=%d windows=%d sumdev=%.3g ",
                   which == 0 ? "interval" : "square", (int)chk.covers_interior,
                   (int)chk.radius_rule_exact, (int)chk.level_windows, dev);
    }
    pass = all;
    detail = parts;
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(3, pass, "cover radius/window/coverage exact, partition sums to one",
         detail);
}

// ---------------------------------------------------------------------------
// 04: operator identities — constants bit for bit, linearity and hull.

static void check04() {
  bool pass = false;
  std::string detail;
  try {
    Domain dom = gen_interval_grid(64).to_domain();
    const int n = dom.space().size();
    BesovParams bp{0.75, 2.0, 2.0, 1.0};

    // constants survive both operators bit for bit
    const double c = 0.3;
    std::vector<double> cf(n, c);
    ExtensionResult ce = whitney_extension(dom, cf);
    bool const_ok = true;
    for (double v : ce.values) const_ok = const_ok && v == c;
    TraceResult ct = trace(dom, cf, bp);
    for (double v : ct.values) const_ok = const_ok && v == c;

    // linearity of the fixed-scale trace and of the extension, allowing
    // 1e-12 of reordering room on data of unit size
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_real_distribution<double> C(-2.0, 2.0);
    const double r = dom.boundary_diameter() / 4;
    double lin_dev = 0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> f(n), h(n), mix(n);
      for (int i = 0; i < n; ++i) {
        f[i] = U(g);
        h[i] = U(g);
      }
      double a = C(g), b = C(g);
      for (int i = 0; i < n; ++i) mix[i] = a * f[i] + b * h[i];
      TraceAtScale tf = trace_at_scale(dom, f, r);
      TraceAtScale th = trace_at_scale(dom, h, r);
      TraceAtScale tm = trace_at_scale(dom, mix, r);
      for (std::size_t j = 0; j < tm.values.size(); ++j) {
        lin_dev = std::max(lin_dev, std::fabs(tm.values[j] - a * tf.values[j] -
                                              b * th.values[j]));
      }
      ExtensionResult ef = whitney_extension(dom, f);
      ExtensionResult eh = whitney_extension(dom, h);
      ExtensionResult em = whitney_extension(dom, mix);
      for (int i = 0; i < n; ++i) {
        lin_dev = std::max(lin_dev, std::fabs(em.values[i] - a * ef.values[i] -
                                              b * eh.values[i]));
      }
    }

    // convex hull of the boundary data contains every extension value, with
    // no tolerance
    int hull_bad = 0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> f(n);
      for (int i = 0; i < n; ++i) f[i] = U(g);
      double lo = 1e300, hi = -1e300;
      for (int b2 : dom.boundary()) {
        lo = std::min(lo, f[b2]);
        hi = std::max(hi, f[b2]);
      }
      ExtensionResult ext = whitney_extension(dom, f);
      for (int x : dom.interior()) {
        if (!(ext.values[x] >= lo && ext.values[x] <= hi)) ++hull_bad;
      }
    }

    pass = const_ok && lin_dev <= 1e-12 && hull_bad == 0;
    detail = fmt("constants=%d linearity_dev=%.3g hull_violations=%d",
                 (int)const_ok, lin_dev, hull_bad);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(4, pass, "operator identities: constants, linearity, convex hull",
         detail);
}

// ---------------------------------------------------------------------------
// 05: round-trip deviation strictly decreases under refinement.

static void check05() {
  auto t0 = Clock::now();
  bool pass = false;
  std::string detail;
  try {
    BesovParams bp{0.75, 2.0, 2.0, 1.0};
    double dev[2] = {0, 0};
    int sizes[2] = {256, 1024};
    for (int i = 0; i < 2; ++i) {
      Domain dom = gen_interval_grid(sizes[i]).to_domain();
      std::vector<double> f(dom.space().size(), 0.0);
      f[dom.boundary()[0]] = 0.0;
      f[dom.boundary()[1]] = 1.0;
      dev[i] = roundtrip_check(dom, f, bp).max_deviation;
    }
    double el = seconds_since(t0);
    pass = dev[1] < dev[0] && el < 30.0;
    detail = fmt("dev(256)=%.6g dev(1024)=%.6g elapsed=%.3fs", dev[0], dev[1],
                 el);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(5, pass, "round-trip deviation strictly decreases 256 -> 1024",
         detail);
}

// ---------------------------------------------------------------------------
// 06: normalized trace increments bounded across refinement.

static void check06() {
  bool pass = false;
  std::string detail;
  try {
    BesovParams bp{0.75, 2.0, 2.0, 1.0};
    const double ex = bp.alpha - bp.theta / bp.p;
    double cons[2] = {0, 0};
    int sizes[2] = {512, 1024};
    for (int i = 0; i < 2; ++i) {
      Domain dom = gen_interval_grid(sizes[i]).to_domain();
      std::vector<double> u(dom.space().size());
      for (int j = 0; j < dom.space().size(); ++j) u[j] = dom.space().point(j)[0];
      TraceResult tr = trace(dom, u, bp);
      for (std::size_t k = 0; k < tr.cauchy_diffs.size(); ++k) {
        cons[i] = std::max(cons[i],
                           tr.cauchy_diffs[k] / std::pow(tr.scales[k], ex));
      }
    }
    pass = cons[0] > 0 && cons[1] <= 1.25 * cons[0];
    detail = fmt("C(512)=%.10g C(1024)=%.10g growth=%.4g limit=1.25", cons[0],
                 cons[1], cons[1] / cons[0]);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(6, pass, "normalized trace increments stable under refinement",
         detail);
}

// ---------------------------------------------------------------------------
// 07: weak-type quotient stable under one refinement doubling.

static std::vector<double> trig_function(const Space& sp, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double a[4], b[4];
  for (int m = 0; m < 4; ++m) {
    a[m] = U(g);
    b[m] = U(g);
  }
  double c = 1.5 + U(g);
  std::vector<double> f(sp.size());
  for (int i = 0; i < sp.size(); ++i) {
    double x = sp.point(i)[0], v = c;
    for (int m = 0; m < 4; ++m) {
      v += a[m] * std::sin(2 * M_PI * (m + 1) * x) +
           b[m] * std::cos(2 * M_PI * (m + 1) * x);
    }
    f[i] = v;
  }
  return f;
}

static void check07() {
  bool pass = false;
  std::string detail;
  try {
    Domain coarse = gen_interval_grid(64).to_domain();
    Domain fine = gen_interval_grid(128).to_domain();
    double worst = 0;
    int bad = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
      std::vector<double> fc = trig_function(coarse.space(), 1000 + s);
      std::vector<double> ff = trig_function(fine.space(), 1000 + s);
      double top = 0;
      for (int z : coarse.boundary()) {
        top = std::max(top, fractional_maximal(coarse, fc, z, 1.0,
                                               coarse.boundary_diameter())
                                .value);
      }
      std::vector<double> lam;
      for (int j = 1; j <= 20; ++j)
        lam.push_back(top * std::pow(2.0, -j / 2.0));
      double mc = weak11_check(coarse, fc, 1.0, coarse.boundary_diameter(), lam)
                      .max_normalized;
      double mf = weak11_check(fine, ff, 1.0, fine.boundary_diameter(), lam)
                      .max_normalized;
      double rel = std::fabs(mf - mc) / mc;
      worst = std::max(worst, rel);
      if (!(rel <= 0.20)) ++bad;
    }
    pass = bad == 0;
    detail = fmt("functions=10 worst_change=%.4g limit=0.20", worst);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(7, pass, "weak-type quotient stable under refinement doubling",
         detail);
}

// ---------------------------------------------------------------------------
// 08: convolution-rearrangement bound never violated.

static void check08() {
  bool pass = false;
  std::string detail;
  try {
    std::mt19937_64 g(2024);
    std::uniform_int_distribution<int> len(1, 40);
    std::uniform_real_distribution<double> U(0.0, 10.0);
    std::uniform_real_distribution<double> Z(0.0, 1.0);
    const double as[3] = {1.5, 2.0, 4.0};
    const double bs[2] = {1.0, 2.0};
    int checks = 0, violations = 0;
    for (int t = 0; t < 1000; ++t) {
      std::vector<double> c(len(g));
      for (double& v : c) v = Z(g) < 0.2 ? 0.0 : U(g);
      for (double a : as) {
        for (double b : bs) {
          RearrangementCheck rc = sum_rearrangement_check(a, b, c);
          ++checks;
          if (!rc.holds) ++violations;
        }
      }
    }
    pass = violations == 0 && checks == 6000;
    detail = fmt("checks=%d violations=%d", checks, violations);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(8, pass, "rearrangement bound holds on 1000 random sequences",
         detail);
}

// ---------------------------------------------------------------------------
// 09: two-atom filling shape, root-edge length, and subdivided ball totals.

static void check09() {
  bool pass = false;
  std::string detail;
  try {
    Space base({{0.0}, {0.6}}, MetricSpec{}, {1.0, 1.0});
    FillingParams p;
    p.levels = 1;
    HyperbolicFilling fill(base, {1.0, 1.0}, p);
    const double want_len = 0.5 / std::log(2.0);
    bool shape = fill.vertex_count() == 3 && fill.edges().size() == 3;
    double len_dev = 0;
    int verticals = 0;
    for (const auto& e : fill.edges()) {
      if (e.kind == EdgeKind::Vertical) {
        ++verticals;
        len_dev = std::max(len_dev, std::fabs(e.unif_length - want_len));
      }
    }
    bool totals = true;
    double total = fill.total_mass();
    for (int m : {1, 8, 64}) {
      totals = totals && mu_beta_ball(fill, 0, 10.0, m) == total;
    }
    pass = shape && verticals == 2 && len_dev <= 1e-12 && totals &&
           total == 6.0;
    detail = fmt("V=%d E=%zu root_len_dev=%.3g total=%.17g subdiv_exact=%d",
                 fill.vertex_count(), fill.edges().size(), len_dev, total,
                 (int)totals);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(9, pass, "two-atom filling: 3+3 shape, root edges, ball totals",
         detail);
}

// ---------------------------------------------------------------------------
// 10: filling constants stable when the depth increases by one.

static void check10() {
  auto t0 = Clock::now();
  bool pass = false;
  std::string detail;
  try {
    SpaceData cd = gen_circle_net(16);
    Space base = cd.to_space();
    FillingParams p5;
    p5.levels = 5;
    p5.beta = std::log(2.0);
    FillingParams p6 = p5;
    p6.levels = 6;
    HyperbolicFilling f5(base, base.weights(), p5);
    HyperbolicFilling f6(base, base.weights(), p6);

    // identical radii for both runs: doubling radii from the shallower
    // uniformized diameter, base radii kept above the shallower skip bound
    FillingCheckOptions opt;
    for (int j = 1; j <= 5; ++j)
      opt.doubling_radii.push_back(f5.unif_diameter() * std::pow(2.0, -j));
    for (int j = 0; j <= 5; ++j) {
      double r = base.diameter() * std::pow(2.0, -j);
      if (r > 2 * f5.truncation_bound()) opt.codim_radii.push_back(r);
    }
    std::vector<int> pts;
    for (int i = 0; i < base.size(); ++i) pts.push_back(i);
    FillingCheck c5 = verify_filling(f5, pts, opt);
    FillingCheck c6 = verify_filling(f6, pts, opt);

    auto rel = [](double a, double b) { return std::fabs(b - a) / std::fabs(a); };
    double worst = std::max({rel(c5.doubling_max, c6.doubling_max),
                             rel(c5.codim_lo, c6.codim_lo),
                             rel(c5.codim_hi, c6.codim_hi),
                             rel(c5.bilip_lo, c6.bilip_lo),
                             rel(c5.bilip_hi, c6.bilip_hi)});
    double el = seconds_since(t0);
    pass = worst < 0.25 && c5.sigma == 1.0 && c6.sigma == 1.0 && el < 120.0;
    detail = fmt("worst_change=%.4g sigma=%.17g/%.17g elapsed=%.3fs", worst,
                 c5.sigma, c6.sigma, el);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(10, pass, "filling constants stable at one extra depth, exponent exact",
         detail);
}

// ---------------------------------------------------------------------------
// 11: trace through the filling agrees with the direct trace.

static void check11() {
  bool pass = false;
  std::string detail;
  try {
    Domain dom = gen_interval_grid(48).to_domain();
    ComposedTraceParams cp;
    cp.besov = BesovParams{0.75, 2.0, 2.0, 1.0};
    cp.levels = 6;
    cp.subdiv = 4;
    std::vector<double> u(dom.space().size());
    for (int i = 0; i < dom.space().size(); ++i) u[i] = dom.space().point(i)[0];
    ComposedTraceResult res = composed_trace(dom, u, cp);

    const double c = 0.1 + 0.2;
    std::vector<double> uc(dom.space().size(), c);
    ComposedTraceResult resc = composed_trace(dom, uc, cp);
    bool const_exact = resc.max_disagreement == 0.0;
    for (double v : resc.composed_values) const_exact = const_exact && v == c;

    pass = res.agree && res.max_disagreement <= res.tolerance && const_exact;
    detail = fmt("disagreement=%.6g tolerance=%.6g constants_exact=%d",
                 res.max_disagreement, res.tolerance, (int)const_exact);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(11, pass, "composed trace matches direct trace within residuals",
         detail);
}

// ---------------------------------------------------------------------------
// 12: every CLI command is byte-identical across reruns.

static int run_cli(const std::string& cli, const std::string& args) {
  std::string cmd = cli + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

static bool dirs_identical(const fs::path& a, const fs::path& b,
                           std::string& why) {
  std::vector<fs::path> rel;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), a));
  }
  std::size_t count_b = 0;
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    if (e.is_regular_file()) ++count_b;
  }
  if (rel.empty() || count_b != rel.size()) {
    why = "file sets differ";
    return false;
  }
  for (const auto& r : rel) {
    std::ifstream fa(a / r, std::ios::binary), fb(b / r, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (!fa || !fb || sa.str() != sb.str()) {
      why = r.string() + " differs";
      return false;
    }
  }
  return true;
}

static void check12() {
  bool pass = false;
  std::string detail;
  try {
    const char* cli = std::getenv("BMMS_CLI");
    if (!cli || !*cli) {
      report(12, false, "CLI reruns are byte-identical",
             "BMMS_CLI not set; cannot locate the command line tool");
      return;
    }
    fs::path root = fs::temp_directory_path() /
                    ("bmms_accept_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);

    // inputs: generated twice to include `gen` in the determinism sweep
    struct GenSpec {
      const char* name;
      const char* args;
    };
    const GenSpec gens[] = {
        {"interval64.json", "gen interval-grid --size 64 --out"},
        {"interval48.json", "gen interval-grid --size 48 --out"},
        {"interval1024.json", "gen interval-grid --size 1024 --out"},
        {"circle16.json", "gen circle-net --size 16 --out"},
    };
    bool ok = true;
    std::string why;
    for (const auto& gsp : gens) {
      fs::path f1 = root / gsp.name;
      fs::path f2 = root / (std::string("again_") + gsp.name);
      if (run_cli(cli, std::string(gsp.args) + " " + f1.string()) != 0 ||
          run_cli(cli, std::string(gsp.args) + " " + f2.string()) != 0) {
        ok = false;
        why = std::string("gen failed for ") + gsp.name;
        break;
      }
      std::ifstream a(f1, std::ios::binary), b(f2, std::ios::binary);
      std::stringstream sa, sb;
      sa << a.rdbuf();
      sb << b.rdbuf();
      if (sa.str() != sb.str()) {
        ok = false;
        why = std::string(gsp.name) + " differs between gen runs";
        break;
      }
    }

    const std::string i64 = (root / "interval64.json").string();
    const std::string i48 = (root / "interval48.json").string();
    const std::string i1024 = (root / "interval1024.json").string();
    const std::string c16 = (root / "circle16.json").string();
    const std::string cmds[] = {
        "net --input " + i64,
        "whitney --input " + i64,
        "partition-verify --input " + i64,
        "energy --input " + i64 + " --fn random --seed 42",
        "trace --input " + i64 + " --alpha 0.75 --fn coord",
        "extend --input " + i64 + " --fn coord",
        "roundtrip --input " + i64 + " --alpha 0.75 --fn coord",
        "maximal --input " + i64 + " --fn random --seed 7",
        "weak11 --input " + i64 + " --fn random --seed 9",
        "chain --input " + i1024 + " --aest 1",
        "fill --input " + c16 + " --levels 5",
        "fill-verify --input " + c16 + " --levels 5",
        "composed-trace --input " + i48 + " --alpha 0.75 --levels 6 --subdiv 4",
        "norms --input " + i64 + " --alpha 0.5 --theta 0.5 --samples 3 --seed 5",
    };
    int idx = 0, compared = 0;
    for (const auto& c : cmds) {
      if (!ok) break;
      fs::path da = root / ("cmd" + std::to_string(idx) + "_a");
      fs::path db = root / ("cmd" + std::to_string(idx) + "_b");
      int ra = run_cli(cli, c + " --out " + da.string());
      int rb = run_cli(cli, c + " --out " + db.string());
      if (ra != 0 || rb != 0) {
        ok = false;
        why = "command failed: " + c;
        break;
      }
      if (!dirs_identical(da, db, why)) {
        ok = false;
        why = c + ": " + why;
        break;
      }
      ++compared;
      ++idx;
    }
    fs::remove_all(root);
    pass = ok;
    detail = ok ? fmt("generators=4 commands=%d all byte-identical", compared)
                : why;
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(12, pass, "CLI reruns are byte-identical", detail);
}

int main() {
  check01();
  check02();
  check03();
  check04();
  check05();
  check06();
  check07();
  check08();
  check09();
  check10();
  check11();
  check12();
  std::printf("%d of 12 checks passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
