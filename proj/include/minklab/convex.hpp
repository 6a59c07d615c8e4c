#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace minklab {

using Vector = Eigen::VectorXd;

/// Supporting half-space {x : normal . x <= offset} of a polytope.
struct Facet {
  Vector normal;  // unit length
  double offset;  // > 0 when the origin is interior
};

/// Constants with a*C inside the unit ball and the unit ball inside b*C.
struct ContainmentConstants {
  double a;
  double b;
};

enum class BodyKind { ball, polytope };

/// A convex body with the origin strictly in its interior.
///
/// Balls are centred at the origin. Polytopes are stored in canonical form:
/// extreme vertices sorted lexicographically and the facet list derived from
/// them. Instances are immutable.
class ConvexBody {
 public:
  int dimension() const { return dim_; }
  BodyKind kind() const { return kind_; }
  bool is_ball() const { return kind_ == BodyKind::ball; }
  double radius() const { return radius_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  /// Per-axis bounds of the body.
  std::pair<Vector, Vector> bounding_box() const;

  std::string describe() const;

 private:
  friend struct BodyAccess;

  ConvexBody() = default;

  int dim_ = 0;
  BodyKind kind_ = BodyKind::ball;
  double radius_ = 0.0;
  std::vector<Vector> vertices_;
  std::vector<Facet> facets_;
};

ConvexBody make_ball(int dimension, double radius);

/// Hull of the given points (dimension 1, 2 or 3). Redundant points are dropped.
/// Throws OriginNotInterior or DegenerateHull.
ConvexBody make_polytope(const std::vector<Vector>& points);

/// Axis-aligned box [lo, hi] in any dimension; requires lo < 0 < hi.
ConvexBody make_box(const Vector& lo, const Vector& hi);

/// The 1-D body [lo, hi] with lo < 0 < hi.
ConvexBody make_interval(double lo, double hi);

double support(const ConvexBody& body, const Vector& y);
double gauge(const ConvexBody& body, const Vector& x);
ConvexBody polar(const ConvexBody& body);
ConvexBody scale(const ConvexBody& body, double r);
ConvexBody reflect(const ConvexBody& body);
ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b);
ContainmentConstants containment_constants(const ConvexBody& body);
double diameter(const ConvexBody& body);

/// Symmetric Hausdorff distance between vertex sets (0 for two equal balls,
/// radius difference for balls, +inf for mixed kinds).
double vertex_hausdorff(const ConvexBody& a, const ConvexBody& b);

/// Flattened gauge evaluator for hot loops over raw coordinates.
///
/// For polytopes the gauge is max_f w_f . x with w_f = normal_f / offset_f,
/// i.e. the maximum over the vertices of the polar body.
class GaugeKernel {
 public:
  explicit GaugeKernel(const ConvexBody& body);

  int dimension() const { return dim_; }
  bool is_ball() const { return ball_; }
  std::size_t facet_count() const { return ball_ ? 0 : weights_.size() / dim_; }
  std::span<const double> weights() const { return weights_; }
  double inverse_radius() const { return inv_radius_; }

  double operator()(const double* x) const {
    if (ball_) {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += x[i] * x[i];
      return std::sqrt(s) * inv_radius_;
    }
    double best = 0.0;
    const double* w = weights_.data();
    const std::size_t nf = weights_.size() / dim_;
    for (std::size_t f = 0; f < nf; ++f, w += dim_) {
      double v = 0.0;
      for (int i = 0; i < dim_; ++i) v += w[i] * x[i];
      if (v > best) best = v;
    }
    return best;
  }

 private:
  int dim_;
  bool ball_;
  double inv_radius_ = 0.0;
  std::vector<double> weights_;
};

}  // namespace minklab
