#pragma once

#include <map>
#include <string>
#include <vector>

#include "bmms/space.hpp"

// Deterministic example spaces: a two-atom space, interval and square grids
// with designated boundaries, a middle-thirds Cantor boundary inside the unit
// interval, and circle nets (plain and snowflaked).  Each generator returns a
// plain data description that serializes to the space JSON format.

namespace bmms {

struct SpaceData {
  std::vector<std::vector<double>> points;  // empty rows allowed for matrix metric
  MetricSpec metric;
  std::vector<double> weights;
  std::vector<int> boundary_indices;        // empty: no designated boundary
  std::vector<double> boundary_weights;
  std::map<std::string, double> metadata;

  bool has_boundary() const { return !boundary_indices.empty(); }
  Space to_space() const;
  Domain to_domain() const;  // requires a boundary
};

// Two atoms at distance 1 with unit weights (no boundary).
SpaceData gen_two_point();

// n interior atoms k/(n+1) with weight 1/n each, boundary atoms {0, 1} with
// counting measure.
SpaceData gen_interval_grid(int n);

// n-by-n grid on the closed unit square with spacing 1/(n-1); the bottom row
// is the boundary with weight h per atom, the rest is interior with weight
// h^2 per atom.
SpaceData gen_square_grid_bottom_edge(int n);

// Interior: `size` midpoints (k+1/2)/size with weight 1/size.  Boundary: the
// 2^L left endpoints of the depth-L middle-thirds construction, where L is
// the smallest integer with 3^L >= size, each carrying mass 2^-L.  Records
// the codimension exponent 1 - log2/log3 in the metadata.  No interior atom
// can coincide with a boundary atom (odd/even numerator argument).
SpaceData gen_cantor_boundary(int size);

// n equally spaced points on a circle of the given radius (default 0.4, so
// the diameter stays below 1), chordal metric, arc-length weights.
SpaceData gen_circle_net(int n, double radius = 0.4);

// Same point set with the metric snowflaked to exponent s.
SpaceData gen_snowflake_circle(int n, double s = 0.5, double radius = 0.4);

// Dispatch by example name: two-point, interval-grid, square-grid-bottom-edge,
// cantor-boundary, circle-net, snowflake-circle.  Throws
// Error("UnknownExample") for other names.
SpaceData generate_example(const std::string& name, int size);

}  // namespace bmms
