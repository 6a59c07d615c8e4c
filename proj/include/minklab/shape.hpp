#pragma once

#include "minklab/convex.hpp"
#include "minklab/functional.hpp"
#include "minklab/interval_set.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace minklab {

/// Axis-aligned box, used for bounding boxes and computation windows.
struct AxisBox {
  Vector lo;
  Vector hi;

  int dimension() const { return static_cast<int>(lo.size()); }
  bool empty() const { return (hi.array() < lo.array()).any(); }
  Vector extent() const { return hi - lo; }
  AxisBox inflated(double margin) const;
  /// True if `inner` lies in the interior of this box.
  bool strictly_contains(const AxisBox& inner) const;
};

enum class ShapeOp { ball, box, polygon, points, segments, intervals, unite, intersect, subtract };

struct ShapeNode;

/// Exact boolean algebra of analytic primitives.
///
/// Leaves: ball, axis box and simple polygon (n = 2) are full-dimensional and
/// may be open or closed; points and segments are lambda-null; `intervals`
/// wraps an exact 1-D set. Interior nodes are union, intersection and
/// difference. Shapes are immutable and cheap to copy.
class Shape {
 public:
  static Shape ball(const Vector& center, double radius, bool closed = false);
  static Shape box(const Vector& lo, const Vector& hi, bool closed = false);
  /// Simple polygon given by its vertex loop; the loop is reoriented
  /// counter-clockwise if needed.
  static Shape polygon(std::vector<Eigen::Vector2d> loop, bool closed = false);
  static Shape points(int dimension, std::vector<Vector> pts);
  static Shape segments(std::vector<std::pair<Vector, Vector>> segs);
  static Shape intervals(IntervalSet set);
  static Shape empty(int dimension);

  static Shape unite(const Shape& a, const Shape& b);
  static Shape intersect(const Shape& a, const Shape& b);
  static Shape subtract(const Shape& a, const Shape& b);

  int dimension() const;
  ShapeOp op() const;
  const ShapeNode& node() const { return *node_; }

  /// True when the set is lambda^n-negligible by construction.
  bool null_mass() const;

  bool contains(const Vector& x) const { return contains(x.data()); }
  bool contains(const double* x) const;

  /// True if x lies on the boundary of some leaf (within 1e-12 relative).
  bool on_leaf_boundary(const double* x) const;

  AxisBox bounding_box() const;

  /// Length scale used for probing tolerances.
  double scale() const;

 private:
  explicit Shape(std::shared_ptr<const ShapeNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ShapeNode> node_;
};

struct ShapeNode {
  ShapeOp op;
  int dim = 0;
  bool closed = false;
  Vector center;
  double radius = 0.0;
  Vector lo, hi;
  std::vector<Eigen::Vector2d> loop;
  std::vector<Vector> pts;
  std::vector<std::pair<Vector, Vector>> segs;
  IntervalSet intervals;
  std::vector<double> cuts;  // breakpoints of `intervals`
  std::shared_ptr<const ShapeNode> left, right;
};

enum class Indicator { inside, outside, on_boundary };

Indicator indicator(const Shape& s, const Vector& x);

/// The open set Omega (or all of R^n) together with a finite computation window.
class Domain {
 public:
  static Domain whole(AxisBox window);
  static Domain region(Shape open_region, AxisBox window);

  int dimension() const { return window_.dimension(); }
  bool is_whole() const { return !region_.has_value(); }
  const std::optional<Shape>& region() const { return region_; }
  const AxisBox& window() const { return window_; }

  bool contains(const double* x) const { return !region_ || region_->contains(x); }
  bool contains(const Vector& x) const { return contains(x.data()); }

  /// Throws WindowTooSmall unless the window strictly contains the bounding
  /// box of `subject` (and of the region) inflated by eps_max * diameter(C).
  void validate_window(const Shape& subject, const ConvexBody& body, double eps_max) const;

 private:
  Domain(std::optional<Shape> region, AxisBox window)
      : region_(std::move(region)), window_(std::move(window)) {}
  std::optional<Shape> region_;
  AxisBox window_;
};

enum class FacetKind { reduced, topological_only };

/// One boundary piece: a point (n = 1, or an isolated point), a segment
/// (n = 2) or a triangle (n = 3).
struct MeshFacet {
  std::vector<Vector> points;
  Vector normal;   // outward unit normal for reduced facets, zero for isolated points
  double measure;  // H^{n-1} of the piece
  FacetKind kind;
};

struct BoundaryMesh {
  int dimension = 0;
  std::vector<MeshFacet> facets;

  double reduced_measure() const;
  double total_measure() const;
  BoundaryMesh reduced_only() const;
  std::size_t reduced_count() const;
};

constexpr int kDefaultRefinement = 4096;
constexpr int kDefaultRefinement3d = 128;

/// Boundary of S as facets. With `clip_to_domain`, only the part inside the
/// open region of D is kept; otherwise the full topological boundary of S.
BoundaryMesh boundary_mesh(const Shape& s, const Domain& d, int refinement = kDefaultRefinement,
                           bool clip_to_domain = true);

enum class Orientation { outward, inward };

double perimeter(const BoundaryMesh& mesh);
double perimeter(const Shape& s, const Domain& d, int refinement = kDefaultRefinement);

double anisotropic_perimeter(const BoundaryMesh& mesh, const ConvexBody& c, Orientation o);
double anisotropic_perimeter(const Shape& s, const Domain& d, const ConvexBody& c, Orientation o,
                             int refinement = kDefaultRefinement);

/// Half of Per_C(E) + Per_C(O \ E), i.e. the mean of h_C(nu) and h_C(-nu)
/// integrated over the reduced boundary inside the domain.
double half_sum_target(const BoundaryMesh& mesh, const ConvexBody& c);
double half_sum_target(const Shape& s, const Domain& d, const ConvexBody& c,
                       int refinement = kDefaultRefinement);

/// Exact conversion of a 1-D shape to an interval set.
IntervalSet to_interval_set(const Shape& s);
/// The domain's open region as an interval set (the real line when whole).
IntervalSet domain_interval_set(const Domain& d);

/// Applies a target selector to an exact 1-D set.
IntervalSet resolve_target(const IntervalSet& e, Target t);

/// Exact value of a content functional in one dimension by interval
/// arithmetic. C must be one-dimensional (an interval).
double exact_1d_content(const Shape& s, const Domain& d, const ConvexBody& c, Functional f,
                        Target t, double eps);
double exact_1d_content(const IntervalSet& s, const IntervalSet& omega, const ConvexBody& c,
                        Functional f, double eps);

}  // namespace minklab
