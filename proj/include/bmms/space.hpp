#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Core types for finite metric measure spaces: a weighted point set with a
// metric given by coordinates (euclidean or snowflaked) or an explicit matrix,
// plus an optional interior/boundary split carrying a second measure on the
// boundary.  All balls are OPEN: y lies in B(x, r) iff d(x, y) < r.

namespace bmms {

// Error with a stable machine-readable code ("EmptyBall", "ScaleTooFine", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

enum class MetricKind { Euclidean, Snowflake, Matrix, Custom };

struct MetricSpec {
  MetricKind kind = MetricKind::Euclidean;
  double snowflake_s = 1.0;  // exponent for d(x,y)^s, required s in (0,1]
  std::vector<std::vector<double>> matrix;  // dense matrix for Matrix kind
};

// Smoothness/integrability parameters shared across the energy, trace and
// extension operations.  q may be infinity (sup form).
struct BesovParams {
  double alpha = 0.5;  // smoothness, in (0,1)
  double p = 1.0;      // integrability, >= 1
  double q = 1.0;      // summability, >= 1 or infinity
  double theta = 0.0;  // codimension of the boundary measure, >= 0

  void validate() const;
  bool q_is_inf() const { return std::isinf(q); }
};

struct Ball {
  int center = 0;    // point id
  double radius = 0; // > 0
};

// Finite metric measure space over point ids 0..size()-1.  Weights are
// strictly positive.  Matrix metrics are validated (symmetry, zero diagonal,
// triangle inequality up to 1e-9); custom distance callbacks skip validation
// and are used internally for stitched pipeline spaces.
class Space {
 public:
  Space(std::vector<std::vector<double>> coords, MetricSpec spec,
        std::vector<double> weights);

  static Space from_matrix(std::vector<std::vector<double>> matrix,
                           std::vector<double> weights);

  // Pseudo-metric oracle; no validation.  Used for derived spaces whose
  // distances are computed on the fly (e.g. uniformized graph distances).
  static Space from_callback(int n, std::function<double(int, int)> dist,
                             std::vector<double> weights);

  int size() const { return n_; }
  int dim() const { return dim_; }
  const MetricSpec& metric() const { return spec_; }
  bool has_coords() const { return !coords_.empty(); }
  const std::vector<double>& coords_flat() const { return coords_; }
  std::vector<double> point(int i) const;

  double dist(int i, int j) const {
    if (i == j) return 0.0;
    switch (spec_.kind) {
      case MetricKind::Euclidean:
        return euclid(i, j);
      case MetricKind::Snowflake:
        return std::pow(euclid(i, j), spec_.snowflake_s);
      case MetricKind::Matrix:
        return spec_.matrix[i][j];
      case MetricKind::Custom:
        return custom_(i, j);
    }
    return 0.0;
  }

  double weight(int i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const;

  // Largest pairwise distance (cached after first call).
  double diameter() const;
  // Smallest positive pairwise distance (cached after first call).
  double min_positive_distance() const;
  // Sorted distinct positive pairwise distances.  Ball membership as a
  // function of the radius changes exactly at these values.
  std::vector<double> breakpoints() const;

  // Open ball membership, ascending ids; always contains the center for r > 0.
  std::vector<int> ball(int center, double r) const;
  double ball_mass(int center, double r) const;

  // Multiplies all distances by `factor` (> 0).  Coordinates are scaled for
  // euclidean metrics; snowflake scaling adjusts the base coordinates so that
  // snowflaked distances scale by exactly `factor`.
  void rescale(double factor);

 private:
  Space() = default;
  double euclid(int i, int j) const {
    const double* a = coords_.data() + static_cast<size_t>(i) * dim_;
    const double* b = coords_.data() + static_cast<size_t>(j) * dim_;
    double s = 0;
    for (int k = 0; k < dim_; ++k) {
      double d = a[k] - b[k];
      s += d * d;
    }
    return std::sqrt(s);
  }
  void validate_matrix() const;

  int n_ = 0;
  int dim_ = 0;
  std::vector<double> coords_;  // flattened, n_*dim_ (empty for Matrix/Custom)
  MetricSpec spec_;
  std::vector<double> weights_;
  std::function<double(int, int)> custom_;
  mutable std::optional<double> diam_cache_;
  mutable std::optional<double> min_gap_cache_;
};

// Weighted mean of |f| or f over an open ball; throws Error("EmptyBall") when
// the ball has no members (r <= 0).
double average_over_ball(const Space& sp, const std::vector<double>& f,
                         int center, double r, bool absolute = false);

// A space split into interior and boundary atoms.  The space's own weights are
// the interior measure (zero-extended to the boundary); `nu` weighs boundary
// atoms.  Every interior atom must have positive distance to the boundary.
class Domain {
 public:
  Domain(Space space, std::vector<int> boundary, std::vector<double> nu);

  const Space& space() const { return space_; }
  Space& mutable_space() { return space_; }
  const std::vector<int>& interior() const { return interior_; }
  const std::vector<int>& boundary() const { return boundary_; }
  const std::vector<double>& nu() const { return nu_; }
  bool is_boundary(int i) const { return is_boundary_[i] != 0; }
  double mu_weight(int i) const {
    return is_boundary_[i] ? 0.0 : space_.weight(i);
  }
  double nu_weight_of(int atom) const;  // 0 for interior atoms

  double mu_total() const;
  double nu_total() const;
  // mu(B(center,r) ∩ interior)
  double mu_ball(int center, double r) const;
  // nu(B(center,r) ∩ boundary)
  double nu_ball(int center, double r) const;
  // mu_ball + nu_ball
  double total_ball(int center, double r) const;

  // Distance from atom i to the boundary atom set (cached).
  double dist_to_boundary(int i) const;
  // Index (into the atom ids) of a nearest boundary atom; ties resolved
  // towards the smallest boundary id.
  int nearest_boundary_atom(int i) const;

  double boundary_diameter() const;
  // Smallest distance from an interior atom to the boundary.
  double min_interior_gap() const;

  // mu-weighted mean of f over B(center,r) ∩ interior; f indexed by atom id.
  // Throws Error("EmptyBall") if no interior atom lies in the ball.
  double mu_average(const std::vector<double>& f, int center, double r,
                    bool absolute = false) const;

 private:
  Space space_;
  std::vector<int> interior_, boundary_;
  std::vector<double> nu_;
  std::vector<char> is_boundary_;
  std::vector<int> nu_pos_;  // atom id -> index into boundary_/nu_, else -1
  mutable std::vector<double> dist_bdry_;   // lazily filled, -1 = unset
  mutable std::vector<int> nearest_bdry_;
};

// A weighted subset of a space: the ground set for energy computations.
// (X, mu) itself, (interior, mu) and (boundary, nu) are all instances.
struct MeasuredSubset {
  const Space* sp = nullptr;
  std::vector<int> idx;
  std::vector<double> w;  // aligned with idx, strictly positive

  int size() const { return static_cast<int>(idx.size()); }
  double dist(int a, int b) const { return sp->dist(idx[a], idx[b]); }
  double total() const;
  double diameter() const;
  double min_positive_distance() const;
  std::vector<double> breakpoints() const;
};

MeasuredSubset whole_space(const Space& sp);
MeasuredSubset interior_subset(const Domain& dom);
MeasuredSubset boundary_subset(const Domain& dom);

}  // namespace bmms
