// Command-line front end: loads space JSON files, dispatches the library
// operations, and writes deterministic JSON summaries plus CSV tables.
// Exit code 0 means every exact invariant of the dispatched pipeline held;
// 1 means an invariant failed (named on stderr); 2 means an error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bmms/besov.hpp"
#include "bmms/chains.hpp"
#include "bmms/extension.hpp"
#include "bmms/generators.hpp"
#include "bmms/hyperfill.hpp"
#include "bmms/io.hpp"
#include "bmms/net.hpp"
#include "bmms/partition.hpp"
#include "bmms/regularity.hpp"
#include "bmms/space.hpp"
#include "bmms/trace.hpp"
#include "bmms/whitney.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace bmms;

namespace {

struct Options {
  std::string input;
  std::string out = "out";
  double alpha = 0.5;
  double p = 2;
  double q = 2;
  double theta = 1;
  double beta = 0.69314718055994530942;
  int levels = 5;
  double aest = 4;
  int subdiv = 8;
  int scales = 0;     // 0: default scale list
  int samples = 3;
  std::uint64_t seed = 0;
  std::string fn = "coord";
  double radius = 0;  // 0: derived from the input
  double separation = 0;
  double graph_radius = 0;
  int z = -1, w = -1;
  int size = 64;
  double distance = 1.0;
};

BesovParams besov_params(const Options& o) {
  BesovParams bp;
  bp.alpha = o.alpha;
  bp.p = o.p;
  bp.q = o.q;
  bp.theta = o.theta;
  bp.validate();
  return bp;
}

double unit_double(std::mt19937_64& g) {
  return (double)(g() >> 11) * 0x1.0p-53;
}

std::vector<double> make_function(const Space& sp, const std::string& kind,
                                  std::uint64_t seed) {
  std::vector<double> u(sp.size());
  if (kind == "constant") {
    std::fill(u.begin(), u.end(), 1.0);
  } else if (kind == "coord") {
    if (!sp.has_coords()) {
      throw Error("BadParams", "--fn coord needs a space with coordinates");
    }
    for (int i = 0; i < sp.size(); ++i) u[i] = sp.point(i)[0];
  } else if (kind == "random") {
    std::mt19937_64 g(seed);
    for (int i = 0; i < sp.size(); ++i) u[i] = unit_double(g);
  } else {
    throw Error("BadParams", "--fn must be coord, constant or random");
  }
  return u;
}

ordered_json params_json(const Options& o) {
  ordered_json j;
  j["alpha"] = o.alpha;
  j["p"] = o.p;
  j["q"] = o.q;
  j["theta"] = o.theta;
  j["seed"] = (long long)o.seed;
  j["fn"] = o.fn;
  return j;
}

void ensure_outdir(const Options& o) { fs::create_directories(o.out); }

std::string opath(const Options& o, const std::string& name) {
  return (fs::path(o.out) / name).string();
}

int finish(const Options& o, ordered_json& summary, bool pass,
           const std::string& fail_reason) {
  summary["pass"] = pass;
  if (!pass) summary["failed_invariant"] = fail_reason;
  io::write_json(opath(o, "summary.json"), summary);
  if (!pass) std::cerr << "invariant failed: " << fail_reason << "\n";
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------- commands

int cmd_gen(const std::string& example, const Options& o) {
  SpaceData d = example == "two-point" && o.distance != 1.0
                    ? [&] {
                        SpaceData t = gen_two_point();
                        t.points[1][0] = o.distance;
                        return t;
                      }()
                    : generate_example(example, o.size);
  io::save_space(o.out, d);
  return 0;
}

int cmd_net(const Options& o) {
  SpaceData d = io::load_space(o.input);
  Space sp = d.to_space();
  double sep = o.separation > 0 ? o.separation : sp.diameter() / 8;
  MeasuredSubset ground = whole_space(sp);
  SeparatedNet net = maximal_separated_net(ground, sep);
  bool ok = verify_net(ground, net);

  io::CsvTable t({"order", "atom"});
  for (std::size_t k = 0; k < net.members.size(); ++k) {
    t.add_row({(double)k, (double)ground.idx[net.members[k]]});
  }
  ensure_outdir(o);
  t.write(opath(o, "net.csv"));
  ordered_json s;
  s["command"] = "net";
  s["separation"] = sep;
  s["members"] = (int)net.members.size();
  return finish(o, s, ok, "net separation/maximality");
}

int cmd_whitney(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  WhitneyCover cover = whitney_cover(dom);
  WhitneyCheck check = verify_whitney(dom, cover);

  io::CsvTable t({"index", "level", "center", "radius", "anchor",
                  "shadow_size", "enlarged_shadow_size"});
  ordered_json balls = ordered_json::array();
  int idx = 0;
  int prev_level = cover.balls.empty() ? 0 : cover.balls.front().level;
  int in_level = 0;
  for (const auto& b : cover.balls) {
    if (b.level != prev_level) {
      prev_level = b.level;
      in_level = 0;
    }
    t.add_row({(double)idx, (double)b.level, (double)b.center, b.radius,
               (double)b.anchor, (double)b.shadow.size(),
               (double)b.enlarged_shadow.size()});
    ordered_json e;
    e["level"] = b.level;
    e["index_in_level"] = in_level;
    e["center"] = b.center;
    e["radius"] = b.radius;
    e["anchor"] = b.anchor;
    e["shadow_indices"] = b.shadow;
    e["enlarged_shadow_indices"] = b.enlarged_shadow;
    balls.push_back(e);
    ++idx;
    ++in_level;
  }
  ensure_outdir(o);
  t.write(opath(o, "whitney.csv"));
  ordered_json cov;
  cov["balls"] = balls;
  io::write_json(opath(o, "cover.json"), cov);

  ordered_json s;
  s["command"] = "whitney";
  s["balls"] = (int)cover.balls.size();
  s["levels"] = (int)cover.levels.size();
  s["covers_interior"] = check.covers_interior;
  s["radius_rule_exact"] = check.radius_rule_exact;
  s["level_windows"] = check.level_windows;
  s["level_separation"] = check.level_separation;
  s["max_overlap_2dilate"] = check.max_overlap_2dilate;
  return finish(o, s, check.pass, "whitney cover structure");
}

int cmd_partition_verify(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  WhitneyCover cover = whitney_cover(dom);
  PartitionOfUnity pou;
  pou.sp = &dom.space();
  for (const auto& b : cover.balls) pou.balls.push_back({b.center, b.radius});
  PartitionCheck check = verify_partition(pou, dom.interior());

  io::CsvTable t({"atom", "bump_sum"});
  for (int a : dom.interior()) t.add_row({(double)a, pou.bump_sum(a)});
  ensure_outdir(o);
  t.write(opath(o, "partition.csv"));

  ordered_json s;
  s["command"] = "partition-verify";
  s["max_sum_deviation"] = check.max_sum_deviation;
  s["support_exact"] = check.support_exact;
  s["max_lipschitz_quotient"] = check.max_lipschitz_quotient;
  return finish(o, s, check.pass, "partition normalization/support");
}

int cmd_energy(const Options& o) {
  SpaceData d = io::load_space(o.input);
  Space sp = d.to_space();
  BesovParams bp = besov_params(o);
  std::vector<double> u_full = make_function(sp, o.fn, o.seed);

  // The subset keeps a pointer into the domain's space, so the domain must
  // stay alive for the rest of the command.
  std::optional<Domain> dom;
  MeasuredSubset set = whole_space(sp);
  std::vector<double> u = u_full;
  if (d.has_boundary()) {
    dom.emplace(d.to_domain());
    set = interior_subset(*dom);
    u.clear();
    for (int a : set.idx) u.push_back(u_full[a]);
  }

  EnergyReport dy = besov_energy_dyadic(set, u, bp);
  EnergyReport in = besov_energy_integral(set, u, bp);
  InhomogeneousNorm norm = inhomogeneous_norm(set, u, bp);

  io::CsvTable t({"k", "t", "energy", "contribution"});
  for (const auto& r : dy.rows) {
    t.add_row({(double)r.k, r.t, r.energy, r.contribution});
  }
  ensure_outdir(o);
  t.write(opath(o, "energy.csv"));

  ordered_json s;
  s["command"] = "energy";
  s["params"] = params_json(o);
  s["dyadic"] = dy.value;
  s["integral"] = in.value;
  s["inhomogeneous"] = norm.total;
  bool ok = std::isfinite(dy.value) && std::isfinite(in.value);
  std::string reason = "energy values finite";
  if (!bp.q_is_inf()) {
    EnvelopeBracket env = envelope_bracket(set, u, bp);
    ordered_json e;
    e["lower"] = env.lower;
    e["value"] = env.value;
    e["upper"] = env.upper;
    e["c"] = env.c;
    s["envelope"] = e;
    double slack = 1e-9 * std::max(1.0, std::fabs(env.upper));
    if (!(env.lower <= env.value + slack && env.value <= env.upper + slack)) {
      ok = false;
      reason = "envelope bracket lower <= value <= upper";
    }
  }
  return finish(o, s, ok, reason);
}

std::vector<double> scale_list(const Domain& dom, const Options& o) {
  std::vector<double> scales = default_trace_scales(dom);
  if (o.scales > 0 && (int)scales.size() > o.scales) {
    scales.resize(o.scales);
  }
  return scales;
}

int cmd_trace(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  BesovParams bp = besov_params(o);
  std::vector<double> u = make_function(dom.space(), o.fn, o.seed);
  TraceResult res = trace(dom, u, bp, scale_list(dom, o));

  io::CsvTable t({"step", "scale", "cauchy_diff"});
  for (std::size_t k = 0; k < res.scales.size(); ++k) {
    double diff = k < res.cauchy_diffs.size()
                      ? res.cauchy_diffs[k]
                      : std::numeric_limits<double>::quiet_NaN();
    t.add_row({(double)k, res.scales[k], diff});
  }
  io::CsvTable v({"boundary_atom", "value", "lebesgue_residual"});
  const auto& bd = dom.boundary();
  for (std::size_t j = 0; j < bd.size(); ++j) {
    v.add_row({(double)bd[j], res.values[j], res.lebesgue_residual[j]});
  }
  ensure_outdir(o);
  t.write(opath(o, "trace_scales.csv"));
  v.write(opath(o, "trace_values.csv"));

  bool ok = true;
  std::string reason = "trace diagnostics";
  for (double x : res.values) {
    if (!std::isfinite(x)) {
      ok = false;
      reason = "trace values finite";
    }
  }
  for (std::size_t k = 0; k + 1 < res.scales.size(); ++k) {
    if (!(res.scales[k] > res.scales[k + 1])) {
      ok = false;
      reason = "scales strictly decreasing";
    }
  }
  for (double x : res.cauchy_diffs) {
    if (!(x >= 0)) {
      ok = false;
      reason = "cauchy differences nonnegative";
    }
  }
  ordered_json s;
  s["command"] = "trace";
  s["params"] = params_json(o);
  s["scales"] = res.scales;
  s["cauchy_diffs"] = res.cauchy_diffs;
  s["decay_slope"] = res.decay_slope;
  s["values"] = res.values;
  return finish(o, s, ok, reason);
}

int cmd_extend(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  std::vector<double> f = make_function(dom.space(), o.fn, o.seed);
  ExtensionResult ext = whitney_extension(dom, f);
  std::vector<double> cut = cutoff_extension(dom, ext);

  io::CsvTable t({"atom", "is_boundary", "extension", "cutoff_extension"});
  for (int a = 0; a < dom.space().size(); ++a) {
    t.add_row({(double)a, dom.is_boundary(a) ? 1.0 : 0.0, ext.values[a],
               cut[a]});
  }
  io::CsvTable c({"ball", "level", "center", "coefficient"});
  for (std::size_t k = 0; k < ext.cover.balls.size(); ++k) {
    c.add_row({(double)k, (double)ext.cover.balls[k].level,
               (double)ext.cover.balls[k].center, ext.coefficients[k]});
  }
  ensure_outdir(o);
  t.write(opath(o, "extend_values.csv"));
  c.write(opath(o, "extend_coefficients.csv"));

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int b : dom.boundary()) {
    lo = std::min(lo, f[b]);
    hi = std::max(hi, f[b]);
  }
  bool hull = true;
  for (int x : dom.interior()) {
    if (!(ext.values[x] >= lo - 1e-12 && ext.values[x] <= hi + 1e-12)) {
      hull = false;
    }
  }
  ordered_json s;
  s["command"] = "extend";
  s["boundary_min"] = lo;
  s["boundary_max"] = hi;
  s["balls"] = (int)ext.cover.balls.size();
  return finish(o, s, hull, "extension convex-hull property");
}

int cmd_roundtrip(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  BesovParams bp = besov_params(o);
  std::vector<double> f = make_function(dom.space(), o.fn, o.seed);
  RoundtripReport rep = roundtrip_check(dom, f, bp);

  io::CsvTable t({"boundary_atom", "f", "traced", "deviation"});
  const auto& bd = dom.boundary();
  for (std::size_t j = 0; j < bd.size(); ++j) {
    t.add_row({(double)bd[j], f[bd[j]], rep.traced[j], rep.deviations[j]});
  }
  ensure_outdir(o);
  t.write(opath(o, "roundtrip.csv"));

  bool ok = std::isfinite(rep.max_deviation);
  std::string reason = "roundtrip deviations finite";
  if (o.fn == "constant" && rep.max_deviation != 0) {
    ok = false;
    reason = "constant function round-trips exactly";
  }
  ordered_json s;
  s["command"] = "roundtrip";
  s["params"] = params_json(o);
  s["max_deviation"] = rep.max_deviation;
  s["lp_deviation"] = rep.lp_deviation;
  s["decay_slope"] = rep.trace_detail.decay_slope;
  return finish(o, s, ok, reason);
}

int cmd_maximal(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  std::vector<double> f = make_function(dom.space(), o.fn, o.seed);
  double cap = o.radius > 0 ? o.radius : dom.boundary_diameter();

  io::CsvTable t({"boundary_atom", "value", "arg_r"});
  bool dominates = true;
  for (int z : dom.boundary()) {
    MaximalValue m = fractional_maximal(dom, f, z, o.theta, cap);
    t.add_row({(double)z, m.value, m.arg_r});
    for (double r : {cap / 2, cap / 4, cap / 8}) {
      try {
        double avg = dom.mu_average(f, z, r, /*absolute=*/true);
        if (std::pow(r, o.theta) * avg > m.value * (1 + 1e-12)) {
          dominates = false;
        }
      } catch (const Error&) {
        // empty ball: zero contribution, nothing to dominate
      }
    }
  }
  ensure_outdir(o);
  t.write(opath(o, "maximal.csv"));
  ordered_json s;
  s["command"] = "maximal";
  s["theta"] = o.theta;
  s["radius_cap"] = cap;
  return finish(o, s, dominates, "maximal function dominates sampled averages");
}

int cmd_weak11(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  std::vector<double> f = make_function(dom.space(), o.fn, o.seed);
  double cap = o.radius > 0 ? o.radius : dom.boundary_diameter();

  // 20 dyadically log-spaced thresholds below the maximal sup
  double top = 0;
  for (int z : dom.boundary()) {
    top = std::max(top, fractional_maximal(dom, f, z, o.theta, cap).value);
  }
  if (!(top > 0)) throw Error("BadParams", "maximal function vanishes");
  std::vector<double> lambdas;
  for (int j = 1; j <= 20; ++j) lambdas.push_back(top * std::pow(2.0, -j / 2.0));

  Weak11Report rep = weak11_check(dom, f, o.theta, cap, lambdas);
  io::CsvTable t({"lambda", "nu_superlevel", "normalized"});
  for (const auto& r : rep.rows) {
    t.add_row({r.lambda, r.nu_superlevel, r.normalized});
  }
  ensure_outdir(o);
  t.write(opath(o, "weak11.csv"));
  ordered_json s;
  s["command"] = "weak11";
  s["theta"] = o.theta;
  s["radius_cap"] = cap;
  s["f_l1"] = rep.f_l1;
  s["max_normalized"] = rep.max_normalized;
  return finish(o, s, std::isfinite(rep.max_normalized),
                "weak-type quotients finite");
}

int cmd_chain(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  int z = o.z >= 0 ? o.z : dom.boundary().front();
  int w = o.w >= 0 ? o.w : dom.boundary().back();
  double gr = o.graph_radius > 0 ? o.graph_radius
                                 : 1.5 * dom.min_interior_gap();
  ProximityGraph g = radius_graph(dom.space(), dom.interior(), gr);
  BoundaryChainOptions opt;
  opt.a_est = o.aest;
  BoundaryChain bc = boundary_chain(dom, z, w, g, opt);
  ChainCheck check = verify_chain(dom, bc.chain);

  io::CsvTable t({"index", "center", "radius", "dist_to_boundary"});
  for (std::size_t k = 0; k < bc.chain.balls.size(); ++k) {
    const Ball& b = bc.chain.balls[k];
    t.add_row({(double)k, (double)b.center, b.radius,
               dom.dist_to_boundary(b.center)});
  }
  ensure_outdir(o);
  t.write(opath(o, "chain.csv"));

  ordered_json levels = ordered_json::array();
  for (const auto& lv : bc.levels) {
    ordered_json e;
    e["level"] = lv.level;
    e["shell_radius"] = lv.shell_radius;
    e["apex_z"] = lv.apex_z;
    e["apex_w"] = lv.apex_w;
    e["nominal_radius"] = lv.nominal_radius;
    e["radius"] = lv.radius;
    e["clamped"] = lv.clamped;
    levels.push_back(e);
  }
  ordered_json s;
  s["command"] = "chain";
  s["z"] = z;
  s["w"] = w;
  s["a_est"] = o.aest;
  s["r0"] = bc.r0;
  s["levels"] = levels;
  s["balls"] = (int)bc.chain.balls.size();
  s["dilates_inside"] = check.dilates_inside;
  s["endpoint_proximity"] = check.endpoint_proximity;
  s["half_balls_meet"] = check.half_balls_meet;
  s["depth_ratio_min"] = check.depth_ratio_min;
  s["depth_ratio_max"] = check.depth_ratio_max;
  s["max_overlap_4dilate"] = check.max_overlap_4dilate;
  return finish(o, s, check.pass, "chain ball properties");
}

HyperbolicFilling build_from_space(const SpaceData& d, const Options& o) {
  Space sp = d.to_space();
  FillingParams fp;
  fp.levels = o.levels;
  fp.beta = o.beta;
  fp.root = 0;
  return HyperbolicFilling(sp, d.weights, fp);
}

bool edge_rules_reproduced(const HyperbolicFilling& fill) {
  // recompute every forbidden/required pair from the distance thresholds
  const auto& vs = fill.vertices();
  std::vector<std::vector<bool>> has(vs.size(),
                                     std::vector<bool>(vs.size(), false));
  for (const auto& e : fill.edges()) has[e.a][e.b] = has[e.b][e.a] = true;
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      const int la = vs[a].level, lb = vs[b].level;
      bool expect = false;
      if (la == lb) {
        expect = fill.base().dist(vs[a].point, vs[b].point) <
                 std::ldexp(1.0, -la + 2);
      } else if (std::abs(la - lb) == 1) {
        expect = fill.base().dist(vs[a].point, vs[b].point) <
                 std::ldexp(1.0, -la) + std::ldexp(1.0, -lb);
      }
      if (expect != has[a][b]) return false;
    }
  }
  return true;
}

ordered_json filling_json(const HyperbolicFilling& fill) {
  ordered_json j;
  j["epsilon"] = fill.epsilon();
  j["beta"] = fill.params().beta;
  j["levels"] = fill.params().levels;
  j["scale_factor"] = fill.scale_factor();
  j["nets"] = fill.nets();
  ordered_json vs = ordered_json::array();
  for (const auto& v : fill.vertices()) {
    ordered_json e;
    e["point"] = v.point;
    e["level"] = v.level;
    e["depth"] = v.depth;
    e["mass"] = v.mass;
    vs.push_back(e);
  }
  j["vertices"] = vs;
  ordered_json es = ordered_json::array();
  for (const auto& e : fill.edges()) {
    ordered_json x;
    x["a"] = e.a;
    x["b"] = e.b;
    x["kind"] = e.kind == EdgeKind::Horizontal ? "horizontal" : "vertical";
    x["unif_length"] = e.unif_length;
    x["density"] = e.density;
    es.push_back(x);
  }
  j["edges"] = es;
  return j;
}

int cmd_fill(const Options& o) {
  SpaceData d = io::load_space(o.input);
  HyperbolicFilling fill = build_from_space(d, o);

  ensure_outdir(o);
  io::write_json(opath(o, "filling.json"), filling_json(fill));
  io::CsvTable t({"vertex", "level", "point", "mass", "depth"});
  for (int v = 0; v < fill.vertex_count(); ++v) {
    const auto& fv = fill.vertices()[v];
    t.add_row({(double)v, (double)fv.level, (double)fv.point, fv.mass,
               (double)fv.depth});
  }
  t.write(opath(o, "vertices.csv"));

  bool connected = fill.connected();
  std::vector<int> depth = fill.graph_depths();
  bool depth_ok = true;
  for (int v = 0; v < fill.vertex_count(); ++v) {
    if (depth[v] != fill.vertices()[v].level) depth_ok = false;
  }
  bool edges_ok = edge_rules_reproduced(fill);
  bool mass_ok = true;
  if (!fill.edges().empty()) {
    double total = fill.total_mass();
    double big = fill.unif_diameter() + 1;
    for (int m : {1, 8}) {
      if (mu_beta_ball(fill, 0, big, m) != total) mass_ok = false;
    }
  }
  ordered_json s;
  s["command"] = "fill";
  s["vertices"] = fill.vertex_count();
  s["edges"] = (int)fill.edges().size();
  s["total_mass"] = fill.total_mass();
  s["connected"] = connected;
  s["depth_equals_level"] = depth_ok;
  s["edge_rules_reproduced"] = edges_ok;
  s["ball_total_matches_edge_sum"] = mass_ok;
  std::string reason = !connected ? "filling connected"
                       : !depth_ok ? "graph depth equals level"
                       : !edges_ok ? "edge thresholds reproduce the edge set"
                                   : "full-ball mass equals the edge sum";
  return finish(o, s, connected && depth_ok && edges_ok && mass_ok, reason);
}

int cmd_fill_verify(const Options& o) {
  SpaceData d = io::load_space(o.input);
  HyperbolicFilling fill = build_from_space(d, o);
  std::vector<int> pts(fill.base().size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = (int)i;
  FillingCheckOptions opt;
  opt.subdiv = o.subdiv;
  FillingCheck check = verify_filling(fill, pts, opt);

  io::CsvTable t({"property", "lo", "hi"});
  t.add_mixed_row({"sigma", io::format_number(check.sigma),
                   io::format_number(check.sigma)});
  t.add_mixed_row({"truncation_bound",
                   io::format_number(check.truncation_bound),
                   io::format_number(check.truncation_bound)});
  t.add_mixed_row({"doubling", io::format_number(check.doubling_max),
                   io::format_number(check.doubling_max)});
  t.add_mixed_row({"codimension_ratio", io::format_number(check.codim_lo),
                   io::format_number(check.codim_hi)});
  t.add_mixed_row({"bilipschitz_ratio", io::format_number(check.bilip_lo),
                   io::format_number(check.bilip_hi)});
  ensure_outdir(o);
  t.write(opath(o, "fill_verify.csv"));

  ordered_json s;
  s["command"] = "fill-verify";
  s["beta"] = o.beta;
  s["levels"] = o.levels;
  s["sigma"] = check.sigma;
  s["truncation_bound"] = check.truncation_bound;
  s["connected"] = check.connected;
  s["depth_equals_level"] = check.depth_equals_level;
  s["doubling_max"] = check.doubling_max;
  s["codim_lo"] = check.codim_lo;
  s["codim_hi"] = check.codim_hi;
  s["codim_skipped"] = check.codim_skipped;
  s["bilip_lo"] = check.bilip_lo;
  s["bilip_hi"] = check.bilip_hi;
  return finish(o, s, check.connected && check.depth_equals_level,
                "filling connectivity and depth structure");
}

int cmd_composed_trace(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  BesovParams bp = besov_params(o);
  std::vector<double> u = make_function(dom.space(), o.fn, o.seed);
  ComposedTraceParams cp;
  cp.besov = bp;
  cp.levels = o.levels;
  cp.subdiv = o.subdiv;
  ComposedTraceResult res = composed_trace(dom, u, cp);

  io::CsvTable t({"boundary_atom", "direct", "composed", "difference"});
  const auto& bd = dom.boundary();
  for (std::size_t j = 0; j < bd.size(); ++j) {
    t.add_row({(double)bd[j], res.direct_values[j], res.composed_values[j],
               std::fabs(res.composed_values[j] - res.direct_values[j])});
  }
  ensure_outdir(o);
  t.write(opath(o, "composed.csv"));

  ordered_json s;
  s["command"] = "composed-trace";
  s["params"] = params_json(o);
  s["beta"] = res.beta;
  s["sigma"] = res.sigma;
  s["scale_factor"] = res.scale_factor;
  s["vertices"] = res.vertex_count;
  s["samples"] = res.sample_count;
  s["max_disagreement"] = res.max_disagreement;
  s["tolerance"] = res.tolerance;
  return finish(o, s, res.agree,
                "composed and direct traces agree within the residual sum");
}

int cmd_norms(const Options& o) {
  Domain dom = io::load_space(o.input).to_domain();
  BesovParams bp = besov_params(o);
  std::mt19937_64 g(o.seed);
  std::vector<std::vector<double>> interior_fns, boundary_fns;
  for (int k = 0; k < o.samples; ++k) {
    std::vector<double> u(dom.space().size(), 0.0);
    for (int a : dom.interior()) u[a] = unit_double(g);
    interior_fns.push_back(u);
    std::vector<double> f(dom.space().size(), 0.0);
    for (int b : dom.boundary()) f[b] = unit_double(g);
    boundary_fns.push_back(f);
  }
  OperatorNormReport rep =
      operator_norm_report(dom, bp, interior_fns, boundary_fns);

  io::CsvTable t({"quantity", "function", "numerator", "denominator", "ratio",
                  "skipped"});
  bool ok = true;
  for (const auto& r : rep.rows) {
    t.add_mixed_row({r.quantity, std::to_string(r.function_index),
                     io::format_number(r.numerator),
                     io::format_number(r.denominator),
                     io::format_number(r.ratio), r.skipped ? "1" : "0"});
    if (!r.skipped && !std::isfinite(r.ratio)) ok = false;
  }
  ensure_outdir(o);
  t.write(opath(o, "norms.csv"));

  ordered_json s;
  s["command"] = "norms";
  s["params"] = params_json(o);
  s["trace_energy_ratio_max"] = rep.trace_energy_ratio_max;
  s["trace_lp_ratio_max"] = rep.trace_lp_ratio_max;
  s["extension_energy_ratio_max"] = rep.extension_energy_ratio_max;
  s["extension_lp_ratio_max"] = rep.extension_lp_ratio_max;
  return finish(o, s, ok, "operator-norm ratios finite");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis on finite metric measure spaces with boundaries"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c, bool needs_input = true) {
    if (needs_input) {
      c->add_option("--input", o.input, "space JSON file")->required();
    }
    c->add_option("--out", o.out, "output directory");
    c->add_option("--alpha", o.alpha, "smoothness parameter in (0,1)");
    c->add_option("--p", o.p, "integrability exponent, >= 1");
    c->add_option("--q", o.q, "summation exponent, >= 1 (inf allowed)");
    c->add_option("--theta", o.theta, "codimension exponent, >= 0");
    c->add_option("--beta", o.beta, "filling mass exponent");
    c->add_option("--levels", o.levels, "filling depth");
    c->add_option("--aest", o.aest, "uniformity-constant estimate");
    c->add_option("--subdiv", o.subdiv, "edge subdivisions");
    c->add_option("--scales", o.scales, "number of trace scales (0: default)");
    c->add_option("--samples", o.samples, "sample/test-function count");
    c->add_option("--seed", o.seed, "seed for randomized inputs");
    c->add_option("--fn", o.fn, "test function: coord, constant or random");
    c->add_option("--radius", o.radius, "radius cap (0: derived)");
    c->add_option("--separation", o.separation, "net separation (0: derived)");
    c->add_option("--graph-radius", o.graph_radius,
                  "proximity-graph radius (0: derived)");
    c->add_option("--z", o.z, "first boundary atom (default: first)");
    c->add_option("--w", o.w, "second boundary atom (default: last)");
  };

  std::string gen_example;
  CLI::App* gen = app.add_subcommand("gen", "write an example space file");
  gen->add_option("example", gen_example,
                  "two-point, interval-grid, square-grid-bottom-edge, "
                  "cantor-boundary, circle-net, snowflake-circle")
      ->required();
  gen->add_option("--size", o.size, "point count / resolution");
  gen->add_option("--distance", o.distance, "two-point separation");
  gen->add_option("--out", o.out, "output space JSON path")->required();

  CLI::App* c_net = app.add_subcommand("net", "maximal separated net");
  CLI::App* c_whitney = app.add_subcommand("whitney", "interior cover");
  CLI::App* c_partition =
      app.add_subcommand("partition-verify", "partition-of-unity checks");
  CLI::App* c_energy = app.add_subcommand("energy", "smoothness energies");
  CLI::App* c_trace = app.add_subcommand("trace", "boundary trace");
  CLI::App* c_extend = app.add_subcommand("extend", "boundary-data extension");
  CLI::App* c_roundtrip =
      app.add_subcommand("roundtrip", "trace of extension vs the data");
  CLI::App* c_maximal =
      app.add_subcommand("maximal", "restricted fractional maximal function");
  CLI::App* c_weak11 = app.add_subcommand("weak11", "weak-type table");
  CLI::App* c_chain = app.add_subcommand("chain", "boundary-to-boundary chain");
  CLI::App* c_fill = app.add_subcommand("fill", "hyperbolic filling");
  CLI::App* c_fill_verify =
      app.add_subcommand("fill-verify", "filling structure constants");
  CLI::App* c_composed =
      app.add_subcommand("composed-trace", "trace through the filling");
  CLI::App* c_norms = app.add_subcommand("norms", "empirical operator norms");
  for (CLI::App* c : {c_net, c_whitney, c_partition, c_energy, c_trace,
                      c_extend, c_roundtrip, c_maximal, c_weak11, c_chain,
                      c_fill, c_fill_verify, c_composed, c_norms}) {
    add_common(c);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_example, o);
    if (c_net->parsed()) return cmd_net(o);
    if (c_whitney->parsed()) return cmd_whitney(o);
    if (c_partition->parsed()) return cmd_partition_verify(o);
    if (c_energy->parsed()) return cmd_energy(o);
    if (c_trace->parsed()) return cmd_trace(o);
    if (c_extend->parsed()) return cmd_extend(o);
    if (c_roundtrip->parsed()) return cmd_roundtrip(o);
    if (c_maximal->parsed()) return cmd_maximal(o);
    if (c_weak11->parsed()) return cmd_weak11(o);
    if (c_chain->parsed()) return cmd_chain(o);
    if (c_fill->parsed()) return cmd_fill(o);
    if (c_fill_verify->parsed()) return cmd_fill_verify(o);
    if (c_composed->parsed()) return cmd_composed_trace(o);
    if (c_norms->parsed()) return cmd_norms(o);
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
