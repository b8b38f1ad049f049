#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bmms/space.hpp"
#include "bmms/trace.hpp"

// Hyperbolic filling of a finite metric space of diameter < 1: vertices are
// (net point, level) pairs from a nested family of dyadic nets, horizontal
// and vertical edges join vertices whose associated balls overlap, and the
// graph is uniformized by the density e^{-eps * depth} with eps = log 2.
// A weighted measure on edges is induced by pushing the base measure through
// ball masses at each level.  The boundary of the uniformized graph
// recovers the original space up to a truncation error 2^-N / log 2.

namespace bmms {

struct FillingParams {
  int levels = 5;                 // deepest net level N
  double beta = 0.69314718055994530942;  // vertex mass exponent (default log 2)
  int root = 0;                   // point id used for the level-0 net
};

struct FillingVertex {
  int level = 0;
  int point = 0;        // point id in the underlying space
  double mass = 0;      // e^{-beta level} * nu(B(point, 2^-level))
  int depth = 0;        // graph distance to the root
};

enum class EdgeKind { Horizontal, Vertical };

struct FillingEdge {
  int a = 0, b = 0;     // vertex indices, a < b
  EdgeKind kind = EdgeKind::Horizontal;
  double unif_length = 0;  // integral of the uniformizing density along the edge
  double density = 0;      // mass(a) + mass(b), spread uniformly along the edge
};

class HyperbolicFilling {
 public:
  // nu[i] is the mass attached to point i (zeros allowed); the net hierarchy
  // and edges depend only on the metric.  A base space with diameter >= 1 is
  // rescaled to diameter 1/2 on construction (factor recorded).
  HyperbolicFilling(const Space& base, std::vector<double> nu,
                    const FillingParams& params);

  const Space& base() const { return base_; }  // after any rescale
  double scale_factor() const { return scale_factor_; }
  const FillingParams& params() const { return params_; }
  double epsilon() const { return eps_; }
  double sigma() const { return params_.beta / eps_; }
  double truncation_bound() const;  // 2^-N / eps

  int vertex_count() const { return (int)vertices_.size(); }
  double nu_of(int point) const { return nu_.at(point); }
  const std::vector<FillingVertex>& vertices() const { return vertices_; }
  const std::vector<FillingEdge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& nets() const { return nets_; }
  const std::vector<std::vector<std::pair<int, double>>>& adjacency() const {
    return adj_;
  }
  // vertex index of (level, point), or -1
  int vertex_at(int level, int point) const;
  double total_mass() const;  // sum of edge densities

  // Graph distance (unit edge lengths) from the root to every vertex.
  std::vector<int> graph_depths() const;
  // Uniformized shortest-path distances from one vertex to all vertices.
  std::vector<double> unif_distances_from(int vertex) const;
  double unif_distance(int a, int b) const;
  double unif_diameter() const;

  // Vertex ray approximating a base point: per level, the nearest net point
  // (ties to the smallest id); entry n is the vertex index at level n.
  std::vector<int> boundary_ray(int point) const;

  bool connected() const;

 private:
  Space base_;
  double scale_factor_ = 1;
  std::vector<double> nu_;
  FillingParams params_;
  double eps_;
  std::vector<std::vector<int>> nets_;
  std::vector<FillingVertex> vertices_;
  std::vector<FillingEdge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adj_;  // (vertex, unif length)
  std::vector<std::map<int, int>> vertex_of_;             // per level: point -> index
};

// Length of the sub-segment [t0,t1] of an edge between depths a and b under
// the density e^{-eps * min(a + t, b + 1 - t)}, t in [0,1] from a to b.
double unif_edge_length(int depth_a, int depth_b, double eps, double t0 = 0,
                        double t1 = 1);

HyperbolicFilling build_filling(const Space& base, const std::vector<double>& nu,
                                const FillingParams& params);

// Mass of the uniformized ball around a vertex: each edge is split into m
// equal sub-segments, a sub-segment counts when its midpoint is within
// `radius` of the center (shortest path through either endpoint, or along
// the edge itself when the center lies on it), and contributes
// density * (count / m).  A ball containing every edge therefore reports
// exactly the sum of edge densities, for any m.
double mu_beta_ball(const HyperbolicFilling& fill, int center_vertex,
                    double radius, int subdiv);

struct FillingCheckOptions {
  std::vector<double> doubling_radii;  // default: unif diameter * 2^-j, j=1..5
  std::vector<double> codim_radii;     // default: base diameter * 2^-j, j=0..5
  int subdiv = 8;
  int max_vertex_samples = 200;
  int max_boundary_samples = 48;
};

struct FillingCheck {
  bool connected = false;
  bool depth_equals_level = false;
  double sigma = 0;
  double truncation_bound = 0;
  double doubling_max = 0;           // worst mass ratio over sampled balls
  double codim_lo = 0, codim_hi = 0; // interval for r^sigma nu(B)/mu(B)
  int codim_skipped = 0;
  double bilip_lo = 0, bilip_hi = 0; // interval for d_unif(rays)/d(points)
};

// Empirical verification of the uniformized structure: connectivity, depth =
// level, doubling of the edge measure, codimension-sigma comparison between
// the base measure and the edge measure at boundary rays, and bi-Lipschitz
// comparison between uniformized ray distances and base distances.  Interval
// endpoints absorb the truncation error of the finite depth.
FillingCheck verify_filling(const HyperbolicFilling& fill,
                            const std::vector<int>& boundary_points,
                            const FillingCheckOptions& opt = {});

struct ComposedTraceParams {
  BesovParams besov;       // parameters for the direct trace on the domain
  int levels = 8;          // filling depth
  int subdiv = 4;          // edge sub-segments used as interior sample points
  int root = 0;
};

struct ComposedTraceResult {
  double scale_factor = 1;   // rescale applied to meet diameter < 1
  double beta = 0;           // eps * p * (1 - alpha) / 2
  double sigma = 0;          // beta / eps
  int vertex_count = 0;
  int sample_count = 0;      // interior edge-midpoint samples with positive mass
  int dropped_samples = 0;   // zero-density edge samples
  TraceResult direct;        // trace on the original domain
  TraceResult through;       // trace on the uniformized filling domain
  std::vector<double> composed_values;  // per boundary atom (order of dom.boundary())
  std::vector<double> direct_values;
  double max_disagreement = 0;
  double tolerance = 0;      // sum of both pipelines' tail residuals
  bool agree = false;
};

// Composition of extension and trace through the uniformized filling: the
// interior measure is carried by edge sub-segment midpoints, the original
// interior atoms act as the boundary for a first extension stage, and the
// domain's true boundary receives the final trace at shifted smoothness
// alpha + sigma/p against codimension sigma + theta.  The result compares
// the composed boundary values with the direct trace.
ComposedTraceResult composed_trace(const Domain& dom,
                                   const std::vector<double>& u,
                                   const ComposedTraceParams& params);

}  // namespace bmms
