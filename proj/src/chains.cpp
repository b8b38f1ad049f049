#include "bmms/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace bmms {

void ProximityGraph::finalize(const Space& sp) {
  max_edge_length = 0;
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    std::sort(adj[p].begin(), adj[p].end());
    adj[p].erase(std::unique(adj[p].begin(), adj[p].end()), adj[p].end());
    for (int q : adj[p]) {
      max_edge_length = std::max(max_edge_length, sp.dist(nodes[p], nodes[q]));
    }
  }
  pos_of_atom.assign(sp.size(), -1);
  for (std::size_t p = 0; p < nodes.size(); ++p) pos_of_atom[nodes[p]] = (int)p;
}

ProximityGraph radius_graph(const Space& sp, const std::vector<int>& atoms,
                            double radius) {
  if (radius <= 0) throw Error("BadParams", "radius_graph: radius must be positive");
  ProximityGraph g;
  g.nodes = atoms;
  std::sort(g.nodes.begin(), g.nodes.end());
  g.adj.assign(g.nodes.size(), {});
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
      if (sp.dist(g.nodes[i], g.nodes[j]) <= radius) {
        g.adj[i].push_back((int)j);
        g.adj[j].push_back((int)i);
      }
    }
  }
  g.finalize(sp);
  return g;
}

std::vector<int> shortest_path(const Space& sp, const ProximityGraph& g,
                               int from, int to) {
  const int pf = (from >= 0 && from < (int)g.pos_of_atom.size())
                     ? g.pos_of_atom[from] : -1;
  const int pt = (to >= 0 && to < (int)g.pos_of_atom.size())
                     ? g.pos_of_atom[to] : -1;
  if (pf < 0 || pt < 0) {
    throw Error("BadParams", "shortest_path: endpoint not a graph node");
  }
  const int n = (int)g.nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[pf] = 0;
  heap.push({0.0, pf});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == pt) break;
    for (int v : g.adj[u]) {
      if (done[v]) continue;
      const double nd = d + sp.dist(g.nodes[u], g.nodes[v]);
      if (nd < dist[v]) {
        dist[v] = nd;
        parent[v] = u;
        heap.push({nd, v});
      }
    }
  }
  if (!done[pt]) {
    throw Error("DisconnectedGraph", "shortest_path: no path between endpoints");
  }
  std::vector<int> path;
  for (int cur = pt; cur != -1; cur = parent[cur]) path.push_back(g.nodes[cur]);
  std::reverse(path.begin(), path.end());
  return path;
}

BallChain harnack_chain(const Domain& dom, const std::vector<int>& path,
                        double r, double M, double first_step_cap) {
  if (path.empty()) throw Error("BadParams", "harnack_chain: empty path");
  if (!(r > 0) || !(M >= 1)) {
    throw Error("BadParams", "harnack_chain: need r > 0 and M >= 1");
  }
  const Space& sp = dom.space();
  for (int a : path) {
    if (dom.is_boundary(a)) {
      throw Error("BadParams", "harnack_chain: path touches the boundary at atom " +
                                   std::to_string(a));
    }
    if (!(dom.dist_to_boundary(a) > r)) {
      throw Error("BadParams",
                  "harnack_chain: path atom " + std::to_string(a) +
                      " is within r of the boundary");
    }
  }
  const double step = r / M;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (sp.dist(path[i], path[i + 1]) > step) {
      throw Error("PathTooSparse",
                  "harnack_chain: consecutive path points farther than r/M apart");
    }
  }
  BallChain out;
  out.M = M;
  std::size_t cur = 0;
  out.balls.push_back({path[0], r});
  const double first_cap = first_step_cap > 0
                               ? first_step_cap
                               : std::numeric_limits<double>::infinity();
  while (cur + 1 < path.size()) {
    const double limit = cur == 0 ? std::min(2 * step, first_cap) : 2 * step;
    std::size_t next = cur;
    for (std::size_t j = cur + 1; j < path.size(); ++j) {
      if (sp.dist(path[cur], path[j]) < limit) next = j;
    }
    if (next == cur) next = cur + 1;  // unreachable: the gap bound gives j=cur+1
    cur = next;
    out.balls.push_back({path[cur], r});
  }
  return out;
}

namespace {

// Deepest interior atom in the shell around `anchor` at radius rho.
int shell_apex(const Domain& dom, int anchor, double rho, double tol) {
  int best = -1;
  double best_depth = -1;
  for (int a : dom.interior()) {
    if (std::abs(dom.space().dist(anchor, a) - rho) > tol) continue;
    const double depth = dom.dist_to_boundary(a);
    if (depth > best_depth) {
      best_depth = depth;
      best = a;
    }
  }
  if (best < 0) {
    throw Error("DisconnectedShell",
                "boundary_chain: empty shell at radius " + std::to_string(rho));
  }
  return best;
}

double max_gap_along(const Space& sp, const std::vector<int>& path) {
  double g = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    g = std::max(g, sp.dist(path[i], path[i + 1]));
  }
  return g;
}

double min_depth_along(const Domain& dom, const std::vector<int>& path) {
  double d = std::numeric_limits<double>::infinity();
  for (int a : path) d = std::min(d, dom.dist_to_boundary(a));
  return d;
}

// Harnack chain over a geodesic leg; the nominal radius is raised to the
// discrete certification floor M * (max gap along the leg) when the graph is
// too coarse for it, capped by depth/8 so the 8-dilates stay interior.
BallChain leg_chain(const Domain& dom, const Space& sp, const ProximityGraph& g,
                    int from, int to, double nominal, double M, bool clamp,
                    double prev_radius, double* used, bool* clamped) {
  std::vector<int> path = shortest_path(sp, g, from, to);
  double r = nominal;
  *clamped = false;
  if (clamp) {
    const double floor_r = M * max_gap_along(sp, path);
    if (r < floor_r) {
      const double cap = min_depth_along(dom, path) / 8.0;
      if (floor_r > cap) {
        throw Error("PathTooSparse",
                    "boundary_chain: graph resolution too coarse for a leg");
      }
      r = floor_r;
      *clamped = true;
    }
  }
  *used = r;
  // When this leg continues an earlier one, the seam keeps the earlier leg's
  // ball; cap the first jump so that ball and this leg's next ball still have
  // intersecting M^-1-dilates even when the radius steps up across the seam.
  const double cap = prev_radius >= 0 ? (prev_radius + r) / M : 0;
  return harnack_chain(dom, path, r, M, cap);
}

void append_chain(BallChain& acc, const BallChain& leg) {
  std::size_t start = 0;
  if (!acc.balls.empty() && !leg.balls.empty() &&
      acc.balls.back().center == leg.balls.front().center) {
    start = 1;
  }
  for (std::size_t i = start; i < leg.balls.size(); ++i) {
    acc.balls.push_back(leg.balls[i]);
  }
}

}  // namespace

BoundaryChain boundary_chain(const Domain& dom, int z, int w,
                             const ProximityGraph& g,
                             const BoundaryChainOptions& opt) {
  if (!dom.is_boundary(z) || !dom.is_boundary(w) || z == w) {
    throw Error("BadParams", "boundary_chain: endpoints must be distinct boundary atoms");
  }
  if (!(opt.a_est >= 1) || !(opt.M >= 1) || opt.max_levels < 1) {
    throw Error("BadParams", "boundary_chain: need a_est >= 1, M >= 1, max_levels >= 1");
  }
  const Space& sp = dom.space();
  const double tol = opt.shell_tol >= 0 ? opt.shell_tol : g.max_edge_length;
  if (!(tol > 0)) throw Error("BadParams", "boundary_chain: shell tolerance must be positive");

  BoundaryChain out;
  out.r0 = sp.dist(z, w) / 4.0;
  const double denom = 64.0 * opt.a_est * opt.a_est;
  const double floor_rho =
      std::max(2.0 * tol, 16.0 * opt.M * g.max_edge_length);
  for (int i = 0; i < opt.max_levels; ++i) {
    const double rho = std::ldexp(out.r0, -i);
    if (i > 0 && rho < floor_rho) break;
    BoundaryChainLevel lv;
    lv.level = i;
    lv.shell_radius = rho;
    lv.apex_z = shell_apex(dom, z, rho, tol);
    lv.apex_w = shell_apex(dom, w, rho, tol);
    lv.nominal_radius = rho / denom;
    out.levels.push_back(lv);
  }

  BallChain& chain = out.chain;
  chain.M = opt.M;
  chain.z = z;
  chain.w = w;
  chain.shell_tol = tol;
  chain.deepest_shell_radius = out.levels.back().shell_radius;

  const int deepest = (int)out.levels.size() - 1;
  // Descend on the z side: deepest apex up to level 0.  The leg between
  // levels i+1 and i carries the level-i radius.
  for (int i = deepest - 1; i >= 0; --i) {
    BoundaryChainLevel& lv = out.levels[i];
    bool clamped = false;
    double used = 0;
    const double prev_r =
        chain.balls.empty() ? -1.0 : chain.balls.back().radius;
    BallChain leg = leg_chain(dom, sp, g, out.levels[i + 1].apex_z, lv.apex_z,
                              lv.nominal_radius, opt.M, opt.clamp_to_resolution,
                              prev_r, &used, &clamped);
    lv.radius = used;
    lv.clamped = clamped;
    append_chain(chain, leg);
  }
  // Joining leg at level 0.
  {
    BoundaryChainLevel& lv = out.levels[0];
    bool clamped = false;
    double used = 0;
    const double prev_r =
        chain.balls.empty() ? -1.0 : chain.balls.back().radius;
    BallChain leg = leg_chain(dom, sp, g, lv.apex_z, lv.apex_w,
                              lv.nominal_radius, opt.M, opt.clamp_to_resolution,
                              prev_r, &used, &clamped);
    lv.radius = std::max(lv.radius, used);
    lv.clamped = lv.clamped || clamped;
    out.join_first = (int)chain.balls.size() -
                     (chain.balls.empty() ? 0 : 1);
    append_chain(chain, leg);
    out.join_last = (int)chain.balls.size() - 1;
  }
  // Descend on the w side: level 0 down to the deepest apex.
  for (int i = 0; i + 1 <= deepest; ++i) {
    BoundaryChainLevel& lv = out.levels[i];
    bool clamped = false;
    double used = 0;
    const double prev_r =
        chain.balls.empty() ? -1.0 : chain.balls.back().radius;
    BallChain leg = leg_chain(dom, sp, g, out.levels[i].apex_w,
                              out.levels[i + 1].apex_w, lv.nominal_radius,
                              opt.M, opt.clamp_to_resolution, prev_r, &used,
                              &clamped);
    lv.radius = std::max(lv.radius, used);
    lv.clamped = lv.clamped || clamped;
    append_chain(chain, leg);
  }
  return out;
}

ChainCheck verify_chain(const Domain& dom, const BallChain& chain) {
  ChainCheck out;
  if (chain.balls.empty()) return out;
  const Space& sp = dom.space();

  out.dilates_inside = true;
  for (const Ball& b : chain.balls) {
    if (dom.dist_to_boundary(b.center) < 8 * b.radius) {
      out.dilates_inside = false;
      break;
    }
  }

  if (chain.z >= 0 && chain.w >= 0) {
    out.endpoint_dist_z = sp.dist(chain.balls.front().center, chain.z);
    out.endpoint_dist_w = sp.dist(chain.balls.back().center, chain.w);
    const double reach = chain.deepest_shell_radius + chain.shell_tol;
    out.endpoint_proximity =
        out.endpoint_dist_z <= reach && out.endpoint_dist_w <= reach;
  } else {
    out.endpoint_proximity = true;
  }

  out.half_balls_meet = true;
  for (std::size_t i = 0; i + 1 < chain.balls.size(); ++i) {
    const double d = sp.dist(chain.balls[i].center, chain.balls[i + 1].center);
    if (!(d < chain.balls[i].radius / 2 + chain.balls[i + 1].radius / 2)) {
      out.half_balls_meet = false;
      break;
    }
  }

  out.depth_ratio_min = std::numeric_limits<double>::infinity();
  out.depth_ratio_max = 0;
  out.anchor_ratio_min = std::numeric_limits<double>::infinity();
  out.anchor_ratio_max = 0;
  for (const Ball& b : chain.balls) {
    const double ratio = dom.dist_to_boundary(b.center) / b.radius;
    out.depth_ratio_min = std::min(out.depth_ratio_min, ratio);
    out.depth_ratio_max = std::max(out.depth_ratio_max, ratio);
    if (chain.z >= 0 && chain.w >= 0) {
      const double a = std::min(sp.dist(b.center, chain.z),
                                sp.dist(b.center, chain.w)) /
                       b.radius;
      out.anchor_ratio_min = std::min(out.anchor_ratio_min, a);
      out.anchor_ratio_max = std::max(out.anchor_ratio_max, a);
    }
  }
  if (chain.z < 0 || chain.w < 0) {
    out.anchor_ratio_min = 0;
    out.anchor_ratio_max = 0;
  }

  for (int a = 0; a < sp.size(); ++a) {
    int cnt = 0;
    for (const Ball& b : chain.balls) {
      if (sp.dist(a, b.center) < 4 * b.radius) ++cnt;
    }
    out.max_overlap_4dilate = std::max(out.max_overlap_4dilate, cnt);
  }

  out.pass = out.dilates_inside && out.endpoint_proximity && out.half_balls_meet;
  return out;
}

}  // namespace bmms
