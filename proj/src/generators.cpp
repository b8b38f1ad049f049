#include "bmms/generators.hpp"

#include <cmath>

namespace bmms {

Space SpaceData::to_space() const {
  if (metric.kind == MetricKind::Matrix) {
    return Space::from_matrix(metric.matrix, weights);
  }
  return Space(points, metric, weights);
}

Domain SpaceData::to_domain() const {
  if (!has_boundary()) {
    throw Error("BadDomain", "space has no designated boundary");
  }
  return Domain(to_space(), boundary_indices, boundary_weights);
}

SpaceData gen_two_point() {
  SpaceData d;
  d.points = {{0.0}, {1.0}};
  d.weights = {1.0, 1.0};
  return d;
}

SpaceData gen_interval_grid(int n) {
  if (n < 1) throw Error("BadParams", "interval grid needs n >= 1");
  SpaceData d;
  for (int k = 1; k <= n; ++k) {
    d.points.push_back({(double)k / (n + 1)});
    d.weights.push_back(1.0 / n);
  }
  d.points.push_back({0.0});
  d.points.push_back({1.0});
  d.weights.push_back(1.0);
  d.weights.push_back(1.0);
  d.boundary_indices = {n, n + 1};
  d.boundary_weights = {1.0, 1.0};
  return d;
}

SpaceData gen_square_grid_bottom_edge(int n) {
  if (n < 2) throw Error("BadParams", "square grid needs n >= 2");
  SpaceData d;
  const double h = 1.0 / (n - 1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      d.points.push_back({i * h, j * h});
      d.weights.push_back(j == 0 ? h : h * h);
    }
  }
  for (int i = 0; i < n; ++i) {
    d.boundary_indices.push_back(i);
    d.boundary_weights.push_back(h);
  }
  return d;
}

SpaceData gen_cantor_boundary(int size) {
  if (size < 2) throw Error("BadParams", "cantor boundary needs size >= 2");
  int depth = 0;
  long pow3 = 1;
  while (pow3 < size) {
    pow3 *= 3;
    ++depth;
  }
  SpaceData d;
  for (int k = 0; k < size; ++k) {
    d.points.push_back({(k + 0.5) / size});
    d.weights.push_back(1.0 / size);
  }
  const long count = 1L << depth;
  const double mass = std::ldexp(1.0, -depth);
  for (long b = 0; b < count; ++b) {
    double x = 0, scale = 1.0 / 3.0;
    for (int k = 0; k < depth; ++k) {
      if ((b >> (depth - 1 - k)) & 1) x += 2 * scale;
      scale /= 3;
    }
    d.boundary_indices.push_back(size + (int)b);
    d.boundary_weights.push_back(mass);
    d.points.push_back({x});
    d.weights.push_back(mass);
  }
  d.metadata["theta"] = 1.0 - std::log(2.0) / std::log(3.0);
  d.metadata["depth"] = depth;
  return d;
}

SpaceData gen_circle_net(int n, double radius) {
  if (n < 2) throw Error("BadParams", "circle net needs n >= 2");
  if (!(radius > 0)) throw Error("BadParams", "circle radius must be positive");
  SpaceData d;
  const double w = 2 * M_PI * radius / n;
  for (int k = 0; k < n; ++k) {
    const double th = 2 * M_PI * k / n;
    d.points.push_back({radius * std::cos(th), radius * std::sin(th)});
    d.weights.push_back(w);
  }
  return d;
}

SpaceData gen_snowflake_circle(int n, double s, double radius) {
  SpaceData d = gen_circle_net(n, radius);
  d.metric.kind = MetricKind::Snowflake;
  d.metric.snowflake_s = s;
  return d;
}

SpaceData generate_example(const std::string& name, int size) {
  if (name == "two-point") return gen_two_point();
  if (name == "interval-grid") return gen_interval_grid(size);
  if (name == "square-grid-bottom-edge") return gen_square_grid_bottom_edge(size);
  if (name == "cantor-boundary") return gen_cantor_boundary(size);
  if (name == "circle-net") return gen_circle_net(size);
  if (name == "snowflake-circle") return gen_snowflake_circle(size);
  throw Error("UnknownExample", "no example named '" + name + "'");
}

}  // namespace bmms
