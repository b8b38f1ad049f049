#include "bmms/space.hpp"

#include <algorithm>
#include <limits>

namespace bmms {

void BesovParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error("BadParams", "alpha must lie in (0,1)");
  if (!(p >= 1.0) || std::isinf(p))
    throw Error("BadParams", "p must be finite and >= 1");
  if (!(q >= 1.0)) throw Error("BadParams", "q must be >= 1 (or infinity)");
  if (!(theta >= 0.0) || std::isinf(theta))
    throw Error("BadParams", "theta must be finite and >= 0");
}

Space::Space(std::vector<std::vector<double>> coords, MetricSpec spec,
             std::vector<double> weights) {
  n_ = static_cast<int>(weights.size());
  spec_ = std::move(spec);
  weights_ = std::move(weights);
  if (n_ == 0) throw Error("BadSpace", "empty point set");
  for (double w : weights_)
    if (!(w > 0.0) || std::isinf(w))
      throw Error("BadSpace", "weights must be strictly positive and finite");

  if (spec_.kind == MetricKind::Euclidean || spec_.kind == MetricKind::Snowflake) {
    if (static_cast<int>(coords.size()) != n_)
      throw Error("BadSpace", "coordinate count does not match weight count");
    dim_ = static_cast<int>(coords[0].size());
    if (dim_ == 0) throw Error("BadSpace", "zero-dimensional coordinates");
    coords_.reserve(static_cast<size_t>(n_) * dim_);
    for (const auto& c : coords) {
      if (static_cast<int>(c.size()) != dim_)
        throw Error("BadSpace", "ragged coordinate rows");
      coords_.insert(coords_.end(), c.begin(), c.end());
    }
    if (spec_.kind == MetricKind::Snowflake) {
      double s = spec_.snowflake_s;
      if (!(s > 0.0 && s <= 1.0))
        throw Error("BadSpace", "snowflake exponent must lie in (0,1]");
    }
  } else if (spec_.kind == MetricKind::Matrix) {
    if (static_cast<int>(spec_.matrix.size()) != n_)
      throw Error("BadSpace", "matrix size does not match weight count");
    validate_matrix();
  } else {
    throw Error("BadSpace", "custom metrics must use from_callback");
  }
  // distinct points must have positive distance
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!(dist(i, j) > 0.0))
        throw Error("BadSpace", "distinct points at zero distance (ids " +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
}

Space Space::from_matrix(std::vector<std::vector<double>> matrix,
                         std::vector<double> weights) {
  MetricSpec spec;
  spec.kind = MetricKind::Matrix;
  spec.matrix = std::move(matrix);
  return Space({}, std::move(spec), std::move(weights));
}

Space Space::from_callback(int n, std::function<double(int, int)> dist,
                           std::vector<double> weights) {
  Space sp;
  sp.n_ = n;
  sp.spec_.kind = MetricKind::Custom;
  sp.custom_ = std::move(dist);
  sp.weights_ = std::move(weights);
  if (static_cast<int>(sp.weights_.size()) != n)
    throw Error("BadSpace", "weight count does not match point count");
  for (double w : sp.weights_)
    if (!(w > 0.0)) throw Error("BadSpace", "weights must be strictly positive");
  return sp;
}

void Space::validate_matrix() const {
  const auto& m = spec_.matrix;
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(m[i].size()) != n_)
      throw Error("BadSpace", "matrix is not square");
    if (m[i][i] != 0.0) throw Error("BadSpace", "matrix diagonal must be zero");
    for (int j = 0; j < n_; ++j) {
      if (m[i][j] != m[j][i]) throw Error("BadSpace", "matrix not symmetric");
      if (i != j && !(m[i][j] > 0.0))
        throw Error("BadSpace", "off-diagonal distances must be positive");
    }
  }
  const double tol = 1e-9;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        if (m[i][j] > m[i][k] + m[k][j] + tol)
          throw Error("BadSpace", "triangle inequality violated beyond 1e-9");
}

std::vector<double> Space::point(int i) const {
  if (coords_.empty()) return {};
  return std::vector<double>(coords_.begin() + static_cast<size_t>(i) * dim_,
                             coords_.begin() + static_cast<size_t>(i + 1) * dim_);
}

double Space::total_mass() const {
  double s = 0;
  for (double w : weights_) s += w;
  return s;
}

double Space::diameter() const {
  if (!diam_cache_) {
    double d = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) d = std::max(d, dist(i, j));
    diam_cache_ = d;
  }
  return *diam_cache_;
}

double Space::min_positive_distance() const {
  if (!min_gap_cache_) {
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        double v = dist(i, j);
        if (v > 0 && v < d) d = v;
      }
    min_gap_cache_ = d;
  }
  return *min_gap_cache_;
}

std::vector<double> Space::breakpoints() const {
  std::vector<double> b;
  b.reserve(static_cast<size_t>(n_) * (n_ - 1) / 2);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      double v = dist(i, j);
      if (v > 0) b.push_back(v);
    }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

std::vector<int> Space::ball(int center, double r) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (dist(center, i) < r) out.push_back(i);
  return out;
}

double Space::ball_mass(int center, double r) const {
  double s = 0;
  for (int i = 0; i < n_; ++i)
    if (dist(center, i) < r) s += weights_[i];
  return s;
}

void Space::rescale(double factor) {
  if (!(factor > 0)) throw Error("BadSpace", "rescale factor must be positive");
  diam_cache_.reset();
  min_gap_cache_.reset();
  switch (spec_.kind) {
    case MetricKind::Euclidean:
      for (double& c : coords_) c *= factor;
      return;
    case MetricKind::Snowflake: {
      // (f^(1/s) * |x-y|)^s = f * |x-y|^s
      double base = std::pow(factor, 1.0 / spec_.snowflake_s);
      for (double& c : coords_) c *= base;
      return;
    }
    case MetricKind::Matrix:
      for (auto& row : spec_.matrix)
        for (double& v : row) v *= factor;
      return;
    case MetricKind::Custom: {
      auto inner = custom_;
      custom_ = [inner, factor](int i, int j) { return factor * inner(i, j); };
      return;
    }
  }
}

double average_over_ball(const Space& sp, const std::vector<double>& f,
                         int center, double r, bool absolute) {
  // A weighted mean of equal values is that value; returning it directly
  // keeps constant functions fixed under averaging at the bit level.
  double num = 0, den = 0, common = 0;
  bool any = false, all_equal = true;
  for (int i = 0; i < sp.size(); ++i)
    if (sp.dist(center, i) < r) {
      double v = absolute ? std::fabs(f[i]) : f[i];
      if (!any) {
        common = v;
        any = true;
      } else if (v != common) {
        all_equal = false;
      }
      num += sp.weight(i) * v;
      den += sp.weight(i);
    }
  if (den == 0) throw Error("EmptyBall", "ball has no members");
  return all_equal ? common : num / den;
}

Domain::Domain(Space space, std::vector<int> boundary, std::vector<double> nu)
    : space_(std::move(space)), boundary_(std::move(boundary)), nu_(std::move(nu)) {
  int n = space_.size();
  if (boundary_.empty()) throw Error("BadDomain", "boundary must be nonempty");
  if (boundary_.size() != nu_.size())
    throw Error("BadDomain", "boundary weight count mismatch");
  is_boundary_.assign(n, 0);
  nu_pos_.assign(n, -1);
  for (size_t k = 0; k < boundary_.size(); ++k) {
    int b = boundary_[k];
    if (b < 0 || b >= n) throw Error("BadDomain", "boundary id out of range");
    if (is_boundary_[b]) throw Error("BadDomain", "duplicate boundary id");
    is_boundary_[b] = 1;
    nu_pos_[b] = static_cast<int>(k);
    if (!(nu_[k] > 0.0))
      throw Error("BadDomain", "boundary weights must be strictly positive");
  }
  for (int i = 0; i < n; ++i)
    if (!is_boundary_[i]) interior_.push_back(i);
  if (interior_.empty()) throw Error("BadDomain", "interior must be nonempty");
  dist_bdry_.assign(n, -1.0);
  nearest_bdry_.assign(n, -1);
}

double Domain::nu_weight_of(int atom) const {
  int k = nu_pos_[atom];
  return k < 0 ? 0.0 : nu_[k];
}

double Domain::mu_total() const {
  double s = 0;
  for (int i : interior_) s += space_.weight(i);
  return s;
}

double Domain::nu_total() const {
  double s = 0;
  for (double v : nu_) s += v;
  return s;
}

double Domain::mu_ball(int center, double r) const {
  double s = 0;
  for (int i : interior_)
    if (space_.dist(center, i) < r) s += space_.weight(i);
  return s;
}

double Domain::nu_ball(int center, double r) const {
  double s = 0;
  for (size_t k = 0; k < boundary_.size(); ++k)
    if (space_.dist(center, boundary_[k]) < r) s += nu_[k];
  return s;
}

double Domain::total_ball(int center, double r) const {
  return mu_ball(center, r) + nu_ball(center, r);
}

double Domain::dist_to_boundary(int i) const {
  if (dist_bdry_[i] < 0) {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int b : boundary_) {
      double d = space_.dist(i, b);
      if (d < best) {  // strict: ties keep the smallest boundary id
        best = d;
        arg = b;
      }
    }
    dist_bdry_[i] = best;
    nearest_bdry_[i] = arg;
    if (!is_boundary_[i] && !(best > 0))
      throw Error("BadDomain", "interior atom at zero distance to boundary");
  }
  return dist_bdry_[i];
}

int Domain::nearest_boundary_atom(int i) const {
  dist_to_boundary(i);
  return nearest_bdry_[i];
}

double Domain::boundary_diameter() const {
  double d = 0;
  for (size_t a = 0; a < boundary_.size(); ++a)
    for (size_t b = a + 1; b < boundary_.size(); ++b)
      d = std::max(d, space_.dist(boundary_[a], boundary_[b]));
  return d;
}

double Domain::min_interior_gap() const {
  double d = std::numeric_limits<double>::infinity();
  for (int i : interior_) d = std::min(d, dist_to_boundary(i));
  return d;
}

double Domain::mu_average(const std::vector<double>& f, int center, double r,
                          bool absolute) const {
  // Equal values short-circuit to the common value so that averaging
  // operators fix constants exactly (see average_over_ball).
  double num = 0, den = 0, common = 0;
  bool any = false, all_equal = true;
  for (int i : interior_)
    if (space_.dist(center, i) < r) {
      double v = absolute ? std::fabs(f[i]) : f[i];
      if (!any) {
        common = v;
        any = true;
      } else if (v != common) {
        all_equal = false;
      }
      num += space_.weight(i) * v;
      den += space_.weight(i);
    }
  if (den == 0) throw Error("EmptyBall", "ball contains no interior atoms");
  return all_equal ? common : num / den;
}

double MeasuredSubset::total() const {
  double s = 0;
  for (double v : w) s += v;
  return s;
}

double MeasuredSubset::diameter() const {
  double d = 0;
  for (int a = 0; a < size(); ++a)
    for (int b = a + 1; b < size(); ++b) d = std::max(d, dist(a, b));
  return d;
}

double MeasuredSubset::min_positive_distance() const {
  double d = std::numeric_limits<double>::infinity();
  for (int a = 0; a < size(); ++a)
    for (int b = a + 1; b < size(); ++b) {
      double v = dist(a, b);
      if (v > 0 && v < d) d = v;
    }
  return d;
}

std::vector<double> MeasuredSubset::breakpoints() const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(size()) * (size() - 1) / 2);
  for (int a = 0; a < size(); ++a)
    for (int b = a + 1; b < size(); ++b) {
      double v = dist(a, b);
      if (v > 0) out.push_back(v);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MeasuredSubset whole_space(const Space& sp) {
  MeasuredSubset s;
  s.sp = &sp;
  s.idx.resize(sp.size());
  for (int i = 0; i < sp.size(); ++i) s.idx[i] = i;
  s.w = sp.weights();
  return s;
}

MeasuredSubset interior_subset(const Domain& dom) {
  MeasuredSubset s;
  s.sp = &dom.space();
  s.idx = dom.interior();
  s.w.reserve(s.idx.size());
  for (int i : s.idx) s.w.push_back(dom.space().weight(i));
  return s;
}

MeasuredSubset boundary_subset(const Domain& dom) {
  MeasuredSubset s;
  s.sp = &dom.space();
  s.idx = dom.boundary();
  s.w = dom.nu();
  return s;
}

}  // namespace bmms
