#pragma once

#include <vector>

#include "bmms/space.hpp"

// Ball chains through the interior: fixed-radius Harnack-type chains
// subsampled from discrete paths, and two-sided boundary-to-boundary chains
// built from dyadic shells around the endpoints joined by proximity-graph
// geodesics, with per-level radii proportional to the shell radius.

namespace bmms {

// Undirected graph over a subset of atoms, used for discrete paths.
struct ProximityGraph {
  std::vector<int> nodes;               // atom ids, ascending
  std::vector<std::vector<int>> adj;    // positions into nodes
  std::vector<int> pos_of_atom;         // atom id -> position, -1 if absent
  double max_edge_length = 0;

  void finalize(const Space& sp);       // sorts adjacency, fills lengths
};

// Edges between the given atoms at distance <= radius (quadratic scan).
ProximityGraph radius_graph(const Space& sp, const std::vector<int>& atoms,
                            double radius);

// Dijkstra with euclidean edge weights and deterministic tie-breaking;
// returns the atom-id path from `from` to `to` inclusive.  Throws
// Error("DisconnectedGraph") when unreachable.
std::vector<int> shortest_path(const Space& sp, const ProximityGraph& g,
                               int from, int to);

struct BallChain {
  std::vector<Ball> balls;
  double M = 2;                      // dilate parameter used in construction
  int z = -1, w = -1;                // boundary targets, -1 for plain chains
  double deepest_shell_radius = 0;   // endpoint-proximity threshold
  double shell_tol = 0;
};

// Fixed-radius chain along a discrete interior path: starting at the first
// path point, greedily jump to the farthest later point within 2r/M, so that
// consecutive M^-1-dilates meet (open balls of radius r/M intersect when the
// centers are closer than 2r/M).  Requires every path point to lie farther
// than r from the boundary; throws Error("PathTooSparse") when consecutive
// path points are more than r/M apart.  first_step_cap (> 0) tightens the
// jump bound for the first step only; boundary_chain uses it so the hop out
// of a shared seam ball also satisfies the half-ball intersection rule when
// the previous leg carried a smaller radius.
BallChain harnack_chain(const Domain& dom, const std::vector<int>& path,
                        double r, double M = 2.0, double first_step_cap = 0);

struct BoundaryChainOptions {
  double a_est = 4.0;      // estimated uniformity constant
  double M = 2.0;
  double shell_tol = -1;   // <0: use the graph's max edge length
  int max_levels = 32;
  // raise leg radii to M * (max gap along the leg) when the nominal radius
  // falls below the discrete certification floor
  bool clamp_to_resolution = true;
};

struct BoundaryChainLevel {
  int level = 0;
  double shell_radius = 0;     // r0 * 2^-level
  int apex_z = -1, apex_w = -1;  // max-depth shell atoms on each side
  double nominal_radius = 0;   // shell_radius / (64 a_est^2)
  double radius = 0;           // after any resolution clamp
  bool clamped = false;
};

struct BoundaryChain {
  BallChain chain;
  double r0 = 0;               // d(z,w)/4
  std::vector<BoundaryChainLevel> levels;
  int join_first = 0, join_last = 0;  // ball index range of the joining leg
};

// Chain from boundary atom z to boundary atom w: for each dyadic level the
// shell {x : |d(x,z) - r0 2^-i| <= tol} contributes its deepest interior atom
// (max distance to the boundary, ties to the smallest id), mirrored from w;
// consecutive apexes and the two level-0 apexes are joined by graph
// geodesics, each converted to a Harnack chain with the level radius.  The
// level count stops at the resolution floor (shell radius at least
// max(2 tol, 16 M max_gap)), never below one level.  Throws
// Error("DisconnectedShell") when a shell holds no interior atom.
BoundaryChain boundary_chain(const Domain& dom, int z, int w,
                             const ProximityGraph& g,
                             const BoundaryChainOptions& opt = {});

struct ChainCheck {
  bool dilates_inside = false;     // no boundary atom within 8r of any center
  bool endpoint_proximity = false; // ends within deepest shell radius + tol
  bool half_balls_meet = false;    // consecutive centers closer than avg radius
  double depth_ratio_min = 0, depth_ratio_max = 0;  // dist-to-boundary / radius
  double anchor_ratio_min = 0, anchor_ratio_max = 0;  // dist-to-{z,w} / radius
  int max_overlap_4dilate = 0;     // over all atoms
  double endpoint_dist_z = 0, endpoint_dist_w = 0;
  bool pass = false;               // the three booleans
};

ChainCheck verify_chain(const Domain& dom, const BallChain& chain);

}  // namespace bmms
