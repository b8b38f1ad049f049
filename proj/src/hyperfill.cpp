#include "bmms/hyperfill.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "bmms/extension.hpp"
#include "bmms/net.hpp"

namespace bmms {

double unif_edge_length(int depth_a, int depth_b, double eps, double t0,
                        double t1) {
  if (!(eps > 0) || !(t0 >= 0) || !(t1 <= 1) || !(t0 <= t1)) {
    throw Error("BadParams", "unif_edge_length: bad segment");
  }
  const double a = depth_a, b = depth_b;
  const double tstar = std::clamp((b + 1 - a) / 2.0, 0.0, 1.0);
  double len = 0;
  // density e^{-eps (a + t)} while a + t <= b + 1 - t, i.e. t <= tstar
  const double hi1 = std::min(t1, tstar);
  if (hi1 > t0) {
    len += (std::exp(-eps * (a + t0)) - std::exp(-eps * (a + hi1))) / eps;
  }
  const double lo2 = std::max(t0, tstar);
  if (t1 > lo2) {
    len += (std::exp(-eps * (b + 1 - t1)) - std::exp(-eps * (b + 1 - lo2))) / eps;
  }
  return len;
}

HyperbolicFilling::HyperbolicFilling(const Space& base, std::vector<double> nu,
                                     const FillingParams& params)
    : base_(base), nu_(std::move(nu)), params_(params),
      eps_(std::log(2.0)) {
  const int n = base_.size();
  if ((int)nu_.size() != n) {
    throw Error("BadParams", "filling: mass vector size mismatch");
  }
  double nu_total = 0;
  for (double v : nu_) {
    if (!(v >= 0) || !std::isfinite(v)) {
      throw Error("BadParams", "filling: masses must be finite and nonnegative");
    }
    nu_total += v;
  }
  if (!(nu_total > 0)) {
    throw Error("BadParams", "filling: total mass must be positive");
  }
  if (params_.levels < 0 || params_.levels > 60) {
    throw Error("BadParams", "filling: levels out of range");
  }
  if (params_.root < 0 || params_.root >= n) {
    throw Error("BadParams", "filling: root out of range");
  }
  if (!(params_.beta > 0) || !std::isfinite(params_.beta)) {
    throw Error("BadParams", "filling: beta must be positive and finite");
  }
  const double diam = base_.diameter();
  if (diam >= 1) {
    scale_factor_ = 0.5 / diam;
    base_.rescale(scale_factor_);
  }

  // Nested nets: the level-(n+1) net refines the level-n net at half the
  // separation.  A single root is a maximal 1-net because the diameter is < 1.
  const MeasuredSubset ground = whole_space(base_);
  nets_.push_back({params_.root});
  for (int lev = 1; lev <= params_.levels; ++lev) {
    SeparatedNet net = maximal_separated_net_seeded(ground, std::ldexp(1.0, -lev),
                                                    nets_.back());
    nets_.push_back(net.members);
  }

  const auto nu_ball = [&](int z, double r) {
    double s = 0;
    for (int y = 0; y < n; ++y) {
      if (base_.dist(z, y) < r) s += nu_[y];
    }
    return s;
  };

  vertex_of_.resize(nets_.size());
  std::vector<int> level_start(nets_.size() + 1, 0);
  for (std::size_t lev = 0; lev < nets_.size(); ++lev) {
    level_start[lev] = (int)vertices_.size();
    for (int z : nets_[lev]) {
      FillingVertex v;
      v.level = (int)lev;
      v.point = z;
      v.mass = std::exp(-params_.beta * (double)lev) *
               nu_ball(z, std::ldexp(1.0, -(int)lev));
      v.depth = (int)lev;  // proved equal to the graph distance; verified
      vertex_of_[lev][z] = (int)vertices_.size();
      vertices_.push_back(v);
    }
  }
  level_start[nets_.size()] = (int)vertices_.size();

  adj_.assign(vertices_.size(), {});
  const auto add_edge = [&](int a, int b, EdgeKind kind) {
    FillingEdge e;
    e.a = a;
    e.b = b;
    e.kind = kind;
    e.unif_length =
        unif_edge_length(vertices_[a].level, vertices_[b].level, eps_);
    e.density = vertices_[a].mass + vertices_[b].mass;
    adj_[a].push_back({b, e.unif_length});
    adj_[b].push_back({a, e.unif_length});
    edges_.push_back(e);
  };
  for (int lev = 0; lev <= params_.levels; ++lev) {
    // horizontal: balls of radius 2^-lev dilated by 2 overlap
    const double h_thresh = std::ldexp(1.0, -lev + 2);
    for (int i = level_start[lev]; i < level_start[lev + 1]; ++i) {
      for (int j = i + 1; j < level_start[lev + 1]; ++j) {
        if (base_.dist(vertices_[i].point, vertices_[j].point) < h_thresh) {
          add_edge(i, j, EdgeKind::Horizontal);
        }
      }
    }
    // vertical: balls of radii 2^-lev and 2^-(lev+1) overlap
    if (lev + 1 <= params_.levels) {
      const double v_thresh =
          std::ldexp(1.0, -lev) + std::ldexp(1.0, -(lev + 1));
      for (int i = level_start[lev]; i < level_start[lev + 1]; ++i) {
        for (int j = level_start[lev + 1]; j < level_start[lev + 2]; ++j) {
          if (base_.dist(vertices_[i].point, vertices_[j].point) < v_thresh) {
            add_edge(i, j, EdgeKind::Vertical);
          }
        }
      }
    }
  }
}

double HyperbolicFilling::truncation_bound() const {
  return std::ldexp(1.0, -params_.levels) / eps_;
}

int HyperbolicFilling::vertex_at(int level, int point) const {
  if (level < 0 || level >= (int)vertex_of_.size()) return -1;
  auto it = vertex_of_[level].find(point);
  return it == vertex_of_[level].end() ? -1 : it->second;
}

double HyperbolicFilling::total_mass() const {
  double s = 0;
  for (const FillingEdge& e : edges_) s += e.density;
  return s;
}

std::vector<int> HyperbolicFilling::graph_depths() const {
  std::vector<int> depth(vertices_.size(), -1);
  std::deque<int> queue;
  depth[0] = 0;
  queue.push_back(0);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& [v, len] : adj_[u]) {
      if (depth[v] < 0) {
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return depth;
}

std::vector<double> HyperbolicFilling::unif_distances_from(int vertex) const {
  if (vertex < 0 || vertex >= (int)vertices_.size()) {
    throw Error("BadParams", "unif_distances_from: vertex out of range");
  }
  std::vector<double> dist(vertices_.size(),
                           std::numeric_limits<double>::infinity());
  std::vector<char> done(vertices_.size(), 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[vertex] = 0;
  heap.push({0.0, vertex});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& [v, len] : adj_[u]) {
      if (done[v]) continue;
      const double nd = d + len;
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist;
}

double HyperbolicFilling::unif_distance(int a, int b) const {
  const double d = unif_distances_from(a)[b];
  if (!std::isfinite(d)) {
    throw Error("Disconnected", "unif_distance: vertices not connected");
  }
  return d;
}

double HyperbolicFilling::unif_diameter() const {
  double best = 0;
  for (int v = 0; v < (int)vertices_.size(); ++v) {
    for (double d : unif_distances_from(v)) {
      if (std::isfinite(d)) best = std::max(best, d);
    }
  }
  return best;
}

std::vector<int> HyperbolicFilling::boundary_ray(int point) const {
  if (point < 0 || point >= base_.size()) {
    throw Error("BadParams", "boundary_ray: point out of range");
  }
  std::vector<int> ray;
  for (std::size_t lev = 0; lev < nets_.size(); ++lev) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int z : nets_[lev]) {
      const double d = base_.dist(point, z);
      if (d < best_d || (d == best_d && z < best)) {
        best_d = d;
        best = z;
      }
    }
    ray.push_back(vertex_of_[lev].at(best));
  }
  return ray;
}

bool HyperbolicFilling::connected() const {
  const std::vector<int> depth = graph_depths();
  return std::none_of(depth.begin(), depth.end(),
                      [](int d) { return d < 0; });
}

HyperbolicFilling build_filling(const Space& base, const std::vector<double>& nu,
                                const FillingParams& params) {
  return HyperbolicFilling(base, nu, params);
}

double mu_beta_ball(const HyperbolicFilling& fill, int center_vertex,
                    double radius, int subdiv) {
  if (subdiv < 1) throw Error("BadParams", "mu_beta_ball: subdiv must be >= 1");
  if (!(radius > 0)) throw Error("BadParams", "mu_beta_ball: radius must be positive");
  const std::vector<double> dist = fill.unif_distances_from(center_vertex);
  const double eps = fill.epsilon();
  double total = 0;
  for (const FillingEdge& e : fill.edges()) {
    const int la = fill.vertices()[e.a].level;
    const int lb = fill.vertices()[e.b].level;
    int cnt = 0;
    for (int s = 0; s < subdiv; ++s) {
      const double t = (s + 0.5) / subdiv;
      const double via_a = dist[e.a] + unif_edge_length(la, lb, eps, 0, t);
      const double via_b = dist[e.b] + unif_edge_length(la, lb, eps, t, 1);
      if (std::min(via_a, via_b) < radius) ++cnt;
    }
    total += e.density * ((double)cnt / subdiv);
  }
  return total;
}

FillingCheck verify_filling(const HyperbolicFilling& fill,
                            const std::vector<int>& boundary_points,
                            const FillingCheckOptions& opt) {
  FillingCheck out;
  out.connected = fill.connected();
  out.sigma = fill.sigma();
  out.truncation_bound = fill.truncation_bound();

  const std::vector<int> depth = fill.graph_depths();
  out.depth_equals_level = true;
  for (int v = 0; v < fill.vertex_count(); ++v) {
    if (depth[v] != fill.vertices()[v].level) {
      out.depth_equals_level = false;
      break;
    }
  }

  const auto stride_sample = [](int count, int cap) {
    std::vector<int> picks;
    if (count <= 0) return picks;
    const int step = std::max(1, (count + cap - 1) / cap);
    for (int i = 0; i < count; i += step) picks.push_back(i);
    return picks;
  };

  // doubling of the edge measure in the uniformized metric
  std::vector<double> drad = opt.doubling_radii;
  if (drad.empty()) {
    const double diam = fill.unif_diameter();
    for (int j = 1; j <= 5; ++j) drad.push_back(std::ldexp(diam, -j));
  }
  for (int vi : stride_sample(fill.vertex_count(), opt.max_vertex_samples)) {
    for (double r : drad) {
      if (!(r > 0)) continue;
      const double m1 = mu_beta_ball(fill, vi, r, opt.subdiv);
      if (!(m1 > 0)) continue;
      const double m2 = mu_beta_ball(fill, vi, 2 * r, opt.subdiv);
      out.doubling_max = std::max(out.doubling_max, m2 / m1);
    }
  }

  // codimension-sigma comparison at boundary rays.  Distances measured from
  // a truncated ray vertex underestimate the ideal-boundary distance by at
  // most tau (one vertical tail), so the measured ball mass at radius r is a
  // certified upper bound and the mass at r - tau a certified lower bound;
  // the ratio interval absorbs the truncation on one side only.
  const double tau = fill.truncation_bound();
  std::vector<double> crad = opt.codim_radii;
  if (crad.empty()) {
    const double diam = fill.base().diameter();
    for (int j = 0; j <= 5; ++j) crad.push_back(std::ldexp(diam, -j));
  }
  std::vector<int> bsample;
  for (int i : stride_sample((int)boundary_points.size(),
                             opt.max_boundary_samples)) {
    bsample.push_back(boundary_points[i]);
  }
  out.codim_lo = std::numeric_limits<double>::infinity();
  out.codim_hi = 0;
  for (int z : bsample) {
    const std::vector<int> ray = fill.boundary_ray(z);
    const int deep = ray.back();
    for (double r : crad) {
      if (!(r > 2 * tau)) {
        ++out.codim_skipped;
        continue;
      }
      double nu_b = 0;
      for (int y = 0; y < fill.base().size(); ++y) {
        if (fill.base().dist(z, y) < r) nu_b += fill.nu_of(y);
      }
      const double mu_lo = mu_beta_ball(fill, deep, r - tau, opt.subdiv);
      const double mu_hi = mu_beta_ball(fill, deep, r, opt.subdiv);
      if (!(nu_b > 0) || !(mu_lo > 0)) {
        ++out.codim_skipped;
        continue;
      }
      const double scale = std::pow(r, fill.sigma());
      out.codim_lo = std::min(out.codim_lo, scale * nu_b / mu_hi);
      out.codim_hi = std::max(out.codim_hi, scale * nu_b / mu_lo);
    }
  }
  if (!std::isfinite(out.codim_lo)) out.codim_lo = 0;

  // bi-Lipschitz comparison between uniformized ray distance and base
  // distance.  A ray-vertex distance D brackets the ideal-boundary distance
  // inside [D, D + 2 tau] (one vertical tail per endpoint), so the measured
  // value is the lower endpoint and the upper endpoint absorbs the
  // truncation; deepening the filling moves D up and tau down in step.
  out.bilip_lo = std::numeric_limits<double>::infinity();
  out.bilip_hi = 0;
  for (std::size_t i = 0; i < bsample.size(); ++i) {
    const int deep_i = fill.boundary_ray(bsample[i]).back();
    const std::vector<double> di = fill.unif_distances_from(deep_i);
    for (std::size_t j = i + 1; j < bsample.size(); ++j) {
      const double base_d = fill.base().dist(bsample[i], bsample[j]);
      if (!(base_d > 0)) continue;
      const int deep_j = fill.boundary_ray(bsample[j]).back();
      const double D = di[deep_j];
      out.bilip_lo = std::min(out.bilip_lo, D / base_d);
      out.bilip_hi = std::max(out.bilip_hi, (D + 2 * tau) / base_d);
    }
  }
  if (!std::isfinite(out.bilip_lo)) out.bilip_lo = 0;
  return out;
}

namespace {

// Geometry shared by the two stitched stages: interior points are edge
// sub-segment midpoints of the filling, boundary points are atoms of the
// base space represented by their deepest ray vertices.
struct StitchedGeometry {
  const HyperbolicFilling* fill = nullptr;
  int subdiv = 1;
  struct Sample {
    int edge = 0;
    double t = 0;
    double weight = 0;   // edge density / subdiv
    double len_to_a = 0; // uniformized length from endpoint a to the midpoint
    double len_to_b = 0;
    int a = 0, b = 0;    // vertex indices
  };
  std::vector<Sample> samples;
  int dropped = 0;
  std::vector<std::vector<double>> vertex_dist;  // all-pairs uniformized
  std::vector<int> deep_ray;                     // per base point

  void build(const HyperbolicFilling& f, int m) {
    fill = &f;
    subdiv = m;
    const double eps = f.epsilon();
    for (int ei = 0; ei < (int)f.edges().size(); ++ei) {
      const FillingEdge& e = f.edges()[ei];
      if (!(e.density > 0)) {
        dropped += m;
        continue;
      }
      const int la = f.vertices()[e.a].level;
      const int lb = f.vertices()[e.b].level;
      for (int s = 0; s < m; ++s) {
        Sample smp;
        smp.edge = ei;
        smp.t = (s + 0.5) / m;
        smp.weight = e.density / m;
        smp.a = e.a;
        smp.b = e.b;
        smp.len_to_a = unif_edge_length(la, lb, eps, 0, smp.t);
        smp.len_to_b = unif_edge_length(la, lb, eps, smp.t, 1);
        samples.push_back(smp);
      }
    }
    vertex_dist.resize(f.vertex_count());
    for (int v = 0; v < f.vertex_count(); ++v) {
      vertex_dist[v] = f.unif_distances_from(v);
    }
    deep_ray.resize(f.base().size());
    for (int z = 0; z < f.base().size(); ++z) {
      deep_ray[z] = f.boundary_ray(z).back();
    }
  }

  double sample_sample(int i, int j) const {
    const Sample& x = samples[i];
    const Sample& y = samples[j];
    double best = std::numeric_limits<double>::infinity();
    if (x.edge == y.edge) {
      best = std::abs(y.len_to_a - x.len_to_a);
    }
    const double xa = x.len_to_a, xb = x.len_to_b;
    const double ya = y.len_to_a, yb = y.len_to_b;
    best = std::min(best, xa + vertex_dist[x.a][y.a] + ya);
    best = std::min(best, xa + vertex_dist[x.a][y.b] + yb);
    best = std::min(best, xb + vertex_dist[x.b][y.a] + ya);
    best = std::min(best, xb + vertex_dist[x.b][y.b] + yb);
    return best;
  }

  double sample_point(int i, int z) const {
    const Sample& x = samples[i];
    const int rv = deep_ray[z];
    return std::min(x.len_to_a + vertex_dist[x.a][rv],
                    x.len_to_b + vertex_dist[x.b][rv]);
  }
};

}  // namespace

ComposedTraceResult composed_trace(const Domain& dom,
                                   const std::vector<double>& u,
                                   const ComposedTraceParams& params) {
  const BesovParams& bp = params.besov;
  bp.validate();
  if ((int)u.size() != dom.space().size()) {
    throw Error("BadParams", "composed_trace: function size mismatch");
  }
  if (params.subdiv < 1 || params.levels < 1) {
    throw Error("BadParams", "composed_trace: need levels >= 1 and subdiv >= 1");
  }

  ComposedTraceResult out;
  out.direct = trace(dom, u, bp);
  out.direct_values = out.direct.values;

  // interior measure, zero on the boundary atoms; the filling rescales the
  // space internally when the diameter is >= 1
  std::vector<double> mu_ext(dom.space().size(), 0.0);
  for (int a : dom.interior()) mu_ext[a] = dom.mu_weight(a);

  out.beta = std::log(2.0) * bp.p * (1 - bp.alpha) / 2;
  FillingParams fp;
  fp.levels = params.levels;
  fp.beta = out.beta;
  fp.root = params.root;
  const HyperbolicFilling fill(dom.space(), mu_ext, fp);
  const Space& Z = fill.base();
  out.scale_factor = fill.scale_factor();
  out.sigma = fill.sigma();
  out.vertex_count = fill.vertex_count();

  StitchedGeometry geo;
  geo.build(fill, params.subdiv);
  out.sample_count = (int)geo.samples.size();
  out.dropped_samples = geo.dropped;
  const int S = out.sample_count;
  if (S == 0) throw Error("BadParams", "composed_trace: no interior mass");

  // Stage one: extend u from the original interior atoms (the metric
  // boundary of the uniformized filling) to the edge samples.
  const std::vector<int>& bd1 = dom.interior();
  const int B1 = (int)bd1.size();
  std::vector<double> w1(S + B1);
  for (int i = 0; i < S; ++i) w1[i] = geo.samples[i].weight;
  for (int k = 0; k < B1; ++k) w1[S + k] = dom.mu_weight(bd1[k]);
  const auto cb1 = [&geo, &Z, &bd1, S](int i, int j) {
    if (i == j) return 0.0;
    const bool bi = i >= S, bj = j >= S;
    if (!bi && !bj) return geo.sample_sample(i, j);
    if (bi && bj) return Z.dist(bd1[i - S], bd1[j - S]);
    if (bi) std::swap(i, j);
    return geo.sample_point(i, bd1[j - S]);
  };
  const Space sp1 = Space::from_callback(S + B1, cb1, w1);
  std::vector<int> bidx1(B1);
  std::vector<double> nu1(B1);
  for (int k = 0; k < B1; ++k) {
    bidx1[k] = S + k;
    nu1[k] = dom.mu_weight(bd1[k]);
  }
  const Domain d1(sp1, bidx1, nu1);
  std::vector<double> f1(S + B1, 0.0);
  for (int k = 0; k < B1; ++k) f1[S + k] = u[bd1[k]];
  const ExtensionResult ext = whitney_extension(d1, f1);

  // Stage two: trace the extended samples onto the true boundary at shifted
  // smoothness alpha + sigma/p against codimension sigma + theta.
  const std::vector<int>& bd2 = dom.boundary();
  const int B2 = (int)bd2.size();
  std::vector<double> w2(S + B2);
  for (int i = 0; i < S; ++i) w2[i] = geo.samples[i].weight;
  for (int k = 0; k < B2; ++k) w2[S + k] = dom.nu_weight_of(bd2[k]);
  const auto cb2 = [&geo, &Z, &bd2, S](int i, int j) {
    if (i == j) return 0.0;
    const bool bi = i >= S, bj = j >= S;
    if (!bi && !bj) return geo.sample_sample(i, j);
    if (bi && bj) return Z.dist(bd2[i - S], bd2[j - S]);
    if (bi) std::swap(i, j);
    return geo.sample_point(i, bd2[j - S]);
  };
  const Space sp2 = Space::from_callback(S + B2, cb2, w2);
  std::vector<int> bidx2(B2);
  std::vector<double> nu2(B2);
  for (int k = 0; k < B2; ++k) {
    bidx2[k] = S + k;
    nu2[k] = dom.nu_weight_of(bd2[k]);
  }
  const Domain d2(sp2, bidx2, nu2);
  std::vector<double> u2(S + B2, 0.0);
  for (int i = 0; i < S; ++i) u2[i] = ext.values[i];

  BesovParams bp2 = bp;
  bp2.alpha = bp.alpha + out.sigma / bp.p;
  bp2.theta = bp.theta + out.sigma;

  // scale list: halve from the boundary diameter, keeping only scales whose
  // boundary net still reaches an interior sample
  double clearance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < S; ++i) {
    for (int k = 0; k < B2; ++k) {
      clearance = std::min(clearance, sp2.dist(i, S + k));
    }
  }
  const MeasuredSubset bsub = boundary_subset(d2);
  std::vector<double> scales2;
  for (double r = d2.boundary_diameter(); r >= 2 * clearance; r /= 2) {
    const SeparatedNet net = maximal_separated_net(bsub, r);
    bool usable = false;
    for (int m : net.members) {
      const int atom = bsub.idx[m];
      for (int i = 0; i < S && !usable; ++i) {
        if (sp2.dist(i, atom) < r) usable = true;
      }
      if (usable) break;
    }
    if (!usable) break;
    scales2.push_back(r);
  }
  if (scales2.empty()) {
    throw Error("ScaleTooFine", "composed_trace: no usable stage-two scale");
  }
  out.through = trace(d2, u2, bp2, scales2);
  out.composed_values = out.through.values;

  out.max_disagreement = 0;
  for (int k = 0; k < B2; ++k) {
    out.max_disagreement = std::max(
        out.max_disagreement,
        std::abs(out.composed_values[k] - out.direct_values[k]));
  }
  const auto residual_of = [&](const TraceResult& tr, double p) {
    double res = tr.cauchy_diffs.empty() ? 0.0 : tr.cauchy_diffs.back();
    double leb = 0;
    for (double v : tr.lebesgue_residual) {
      if (std::isfinite(v)) leb = std::max(leb, v);
    }
    return res + std::pow(leb, 1.0 / p);
  };
  out.tolerance = residual_of(out.direct, bp.p) + residual_of(out.through, bp2.p);
  out.agree = out.max_disagreement <= out.tolerance;
  return out;
}

}  // namespace bmms
