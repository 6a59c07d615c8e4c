#include "doctest.h"

#include "minklab/error.hpp"
#include "minklab/shape.hpp"

#include <cmath>
#include <numbers>

using namespace minklab;

namespace {

Vector v2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}
Vector v1(double x) { return Vector::Constant(1, x); }
AxisBox box2(double lo, double hi) { return {Vector::Constant(2, lo), Vector::Constant(2, hi)}; }
AxisBox box1(double lo, double hi) { return {v1(lo), v1(hi)}; }

ConvexBody square() { return make_polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)}); }
ConvexBody triangle() { return make_polytope({v2(2, -1), v2(-1, 2), v2(-1, -1)}); }

Shape annulus() { return Shape::subtract(Shape::ball(Vector::Zero(2), 2), Shape::ball(Vector::Zero(2), 1, true)); }
Domain annulus_domain() {
  const Shape circle = Shape::subtract(Shape::ball(Vector::Zero(2), 1, true), Shape::ball(Vector::Zero(2), 1));
  return Domain::region(Shape::subtract(Shape::ball(Vector::Zero(2), 2), circle), box2(-2.7, 2.7));
}

Shape iv(IntervalSet s) { return Shape::intervals(std::move(s)); }
const ConvexBody unit = make_interval(-1, 1);

double exact(const Shape& s, Functional f, Target t, const ConvexBody& c, double eps) {
  return exact_1d_content(s, Domain::whole(box1(-10, 10)), c, f, t, eps);
}

// Integral of |cos| + |sin| over a turn, by the midpoint rule.
double disc_square_quadrature(int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) * 2 * std::numbers::pi / n;
    s += std::abs(std::cos(t)) + std::abs(std::sin(t));
  }
  return s * 2 * std::numbers::pi / n;
}

}  // namespace

TEST_CASE("indicator") {
  CHECK(indicator(Shape::box(v2(0, 0), v2(1, 1)), v2(0.5, 0.5)) == Indicator::inside);
  CHECK(indicator(annulus(), v2(1, 0)) == Indicator::on_boundary);
  CHECK(indicator(annulus(), v2(1.5, 0)) == Indicator::inside);
  CHECK(indicator(annulus(), v2(0.5, 0)) == Indicator::outside);
  const Shape d = Shape::subtract(Shape::box(v2(-1, -1), v2(1, 1)), Shape::ball(Vector::Zero(2), 0.5));
  CHECK(indicator(d, v2(0.1, 0.1)) == Indicator::outside);
  CHECK(Shape::ball(Vector::Zero(2), 1, true).contains(v2(1, 0)));
  CHECK_FALSE(Shape::ball(Vector::Zero(2), 1).contains(v2(1, 0)));
}

TEST_CASE("null mass flags") {
  CHECK(Shape::points(2, {v2(0, 0)}).null_mass());
  CHECK(Shape::segments({{v2(0, 0), v2(1, 1)}}).null_mass());
  CHECK_FALSE(Shape::ball(Vector::Zero(2), 1).null_mass());
  CHECK(iv(IntervalSet::points({0, 1})).null_mass());
  CHECK_FALSE(iv(IntervalSet::closed(0, 1)).null_mass());
}

TEST_CASE("boundary meshes") {
  const BoundaryMesh sq = boundary_mesh(Shape::box(v2(0, 0), v2(1, 1)), Domain::whole(box2(-2, 3)));
  CHECK(sq.reduced_count() == 4);
  CHECK(sq.reduced_measure() == doctest::Approx(4.0).epsilon(1e-14));
  for (const MeshFacet& f : sq.facets) CHECK(f.normal.norm() == doctest::Approx(1.0));

  CHECK(boundary_mesh(annulus(), annulus_domain()).facets.empty());

  const BoundaryMesh m = boundary_mesh(iv(IntervalSet::closed(0, 1).unite(IntervalSet::point(2))), Domain::whole(box1(-1, 3)));
  REQUIRE(m.facets.size() == 3);
  CHECK(m.facets[0].points[0][0] == 0);
  CHECK(m.facets[0].normal[0] == -1);
  CHECK(m.facets[1].points[0][0] == 1);
  CHECK(m.facets[1].normal[0] == 1);
  CHECK(m.facets[2].points[0][0] == 2);
  CHECK(m.facets[2].kind == FacetKind::topological_only);

  const BoundaryMesh pts = boundary_mesh(Shape::points(2, {v2(0.3, 0.3)}), Domain::whole(box2(-1, 1)));
  REQUIRE(pts.facets.size() == 1);
  CHECK(pts.facets[0].kind == FacetKind::topological_only);
  CHECK(pts.facets[0].measure == 0.0);
}

TEST_CASE("slits are topological only") {
  // A square with a slit removed along y = 0.5.
  const Shape e = Shape::subtract(Shape::box(v2(0, 0), v2(1, 1)), Shape::segments({{v2(0.2, 0.5), v2(0.8, 0.5)}}));
  const BoundaryMesh m = boundary_mesh(e, Domain::whole(box2(-1, 2)));
  CHECK(m.reduced_measure() == doctest::Approx(4.0));
  CHECK(m.total_measure() == doctest::Approx(4.6));
}

TEST_CASE("perimeters") {
  const Domain plane = Domain::whole(box2(-2, 3));
  CHECK(perimeter(Shape::box(v2(0, 0), v2(1, 1)), plane) == doctest::Approx(4.0));
  CHECK(perimeter(Shape::ball(Vector::Zero(2), 1), plane) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-6));
  CHECK(perimeter(annulus(), annulus_domain()) == 0.0);
  // Clipping to a region keeps only the part of the boundary inside it.
  const Domain half = Domain::region(Shape::box(v2(-3, -3), v2(0.5, 3)), box2(-2, 3));
  CHECK(perimeter(Shape::box(v2(0, 0), v2(1, 1)), half) == doctest::Approx(2.0));
}

TEST_CASE("anisotropic perimeters") {
  const Domain plane = Domain::whole(box2(-2, 3));
  const Shape sq = Shape::box(v2(0, 0), v2(1, 1));
  CHECK(anisotropic_perimeter(sq, plane, make_ball(2, 1), Orientation::outward) == doctest::Approx(4.0));
  CHECK(anisotropic_perimeter(sq, plane, triangle(), Orientation::outward) == doctest::Approx(6.0));
  CHECK(anisotropic_perimeter(sq, plane, triangle(), Orientation::inward) == doctest::Approx(6.0));
  CHECK(half_sum_target(sq, plane, triangle()) == doctest::Approx(6.0));
  const double oracle = disc_square_quadrature(1 << 16);
  CHECK(oracle == doctest::Approx(8.0).epsilon(1e-8));
  CHECK(anisotropic_perimeter(Shape::ball(Vector::Zero(2), 1), plane, square(), Orientation::outward) ==
        doctest::Approx(oracle).epsilon(1e-6));
  CHECK(half_sum_target(annulus(), annulus_domain(), square()) == 0.0);

  // A right triangle exposes the asymmetric body: h(-nu) differs from h(nu).
  const Shape tri = Shape::polygon({{0, 0}, {1, 0}, {0, 1}});
  const double out = anisotropic_perimeter(tri, plane, triangle(), Orientation::outward);
  const double in = anisotropic_perimeter(tri, plane, triangle(), Orientation::inward);
  const double s2 = std::sqrt(2.0);
  CHECK(out == doctest::Approx(1 * 1 + 1 * 1 + s2 * (1 / s2)));
  CHECK(in == doctest::Approx(1 * 2 + 1 * 2 + s2 * (2 / s2)));
}

TEST_CASE("window validation") {
  const Domain d = Domain::whole(box2(-1.5, 2.5));
  CHECK_NOTHROW(d.validate_window(Shape::box(v2(0, 0), v2(1, 1)), make_ball(2, 1), 0.25));
  bool threw = false;
  try {
    d.validate_window(Shape::box(v2(0, 0), v2(1, 1)), make_ball(2, 1), 1.0);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::WindowTooSmall;
  }
  CHECK(threw);
}

TEST_CASE("exact 1-D engine examples") {
  const Shape e = iv(IntervalSet::closed(0, 1).unite(IntervalSet::point(2)));
  for (double eps : {0.25, 0.125, 0.0625}) {
    // [0,1] grows by eps on each side and {2} by 2 eps: (2 eps + 2 eps) / eps.
    CHECK(exact(e, Functional::SM, Target::set, unit, eps) == 4.0);
    CHECK(exact(iv(IntervalSet::open(0, 1)), Functional::ScriptM, Target::set, unit, eps) == 2.0);
    CHECK(exact(iv(IntervalSet::point(0)), Functional::SM, Target::set, make_interval(-1, 2), eps) == 3.0);
    CHECK(exact(iv(IntervalSet::point(0)), Functional::M, Target::set, unit, eps) == 1.0);
    CHECK(exact(e, Functional::M, Target::topological_boundary, unit, eps) == 3.0);
    CHECK(exact(e, Functional::M, Target::reduced_boundary, unit, eps) == 2.0);
  }
  bool threw = false;
  try {
    exact(e, Functional::SM, Target::set, square(), 0.1);
  } catch (const Error& err) {
    threw = err.code() == ErrorCode::NonIntervalBody;
  }
  CHECK(threw);
}

TEST_CASE("exact 1-D engine with a domain") {
  // Omega = (0, 3): the left end of [0, 1] lies outside, so only 1 and 2 count.
  const Shape e = iv(IntervalSet::closed(0, 1).unite(IntervalSet::point(2)));
  const Domain d = Domain::region(iv(IntervalSet::open(0, 3)), box1(-1, 4));
  CHECK(exact_1d_content(e, d, unit, Functional::M, Target::topological_boundary, 0.25) == 2.0);
  CHECK(exact_1d_content(e, d, unit, Functional::FrakM, Target::topological_boundary, 0.25) == 2.5);
}

TEST_CASE("representative invariance and minimum") {
  for (double eps : {0.25, 0.03125}) {
    CHECK(exact(iv(IntervalSet::open(0, 1)), Functional::SM, Target::set, unit, eps) == 2.0);
    CHECK(exact(iv(IntervalSet::interval(0, 1, true, false)), Functional::SM, Target::set, unit, eps) == 2.0);
    CHECK(exact(iv(IntervalSet::closed(0, 1)), Functional::SM, Target::set, unit, eps) == 2.0);
  }
  const IntervalSet e = IntervalSet::closed(0, 1).unite(IntervalSet::point(2));
  CHECK(exact(iv(e.density_one()), Functional::SM, Target::set, unit, 0.125) == 2.0);
  CHECK(exact(iv(e.density_zero().complement()), Functional::SM, Target::set, unit, 0.125) == 2.0);
}

TEST_CASE("interval set algebra") {
  const IntervalSet a = IntervalSet::closed(0, 1).unite(IntervalSet::point(2));
  CHECK(a.boundary() == IntervalSet::points({0, 1, 2}));
  CHECK(a.interior() == IntervalSet::open(0, 1));
  CHECK(a.essential_boundary() == IntervalSet::points({0, 1}));
  CHECK(a.dilate(-0.5, 0.5) == IntervalSet::closed(-0.5, 2.5));
  CHECK(a.dilate(-0.25, 0.25).measure() == 2.0);
  CHECK(IntervalSet::open(0, 1).unite(IntervalSet::open(1, 2)).measure() == 2.0);
  CHECK(IntervalSet::open(0, 1).unite(IntervalSet::closed(1, 2)) == IntervalSet::interval(0, 2, false, true));
  CHECK(IntervalSet::real_line().subtract(IntervalSet::point(0)).complement() == IntervalSet::point(0));
}
