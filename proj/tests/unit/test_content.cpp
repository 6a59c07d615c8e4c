#include "doctest.h"

#include "minklab/content.hpp"
#include "minklab/error.hpp"

#include <cmath>
#include <numbers>

using namespace minklab;

namespace {

constexpr double pi = std::numbers::pi;

Vector v2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}
AxisBox box2(double lo, double hi) { return {Vector::Constant(2, lo), Vector::Constant(2, hi)}; }
AxisBox box1(double lo, double hi) { return {Vector::Constant(1, lo), Vector::Constant(1, hi)}; }

ConvexBody square() { return make_polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)}); }
ConvexBody triangle() { return make_polytope({v2(2, -1), v2(-1, 2), v2(-1, -1)}); }

Shape disc() { return Shape::ball(Vector::Zero(2), 1); }
Shape unit_square() { return Shape::box(v2(0, 0), v2(1, 1)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("fixed-eps functionals against closed forms") {
  const AxisBox w = box2(-2, 2);
  const Domain d = Domain::whole(w);
  const Grid g = Grid::covering(w, 1024);
  const double eps = 0.1;
  // Annulus of half-width eps around the circle: 4 pi eps / (2 eps).
  CHECK(m_eps(disc(), Target::topological_boundary, d, make_ball(2, 1), eps, g) == doctest::Approx(2 * pi).epsilon(2e-3));
  // Outer annulus: pi ((1 + eps)^2 - 1) / eps.
  CHECK(sm_eps(disc(), d, make_ball(2, 1), eps, g) == doctest::Approx(pi * (2 + eps)).epsilon(2e-3));
  CHECK(m_eps(Shape::empty(2), Target::set, d, make_ball(2, 1), eps, g) == 0.0);
  CHECK(frak_m_eps(disc(), Target::topological_boundary, d, square(), eps, g) ==
        m_eps(disc(), Target::topological_boundary, d, square(), eps, g));
}

TEST_CASE("grid-aligned square dilated by the square is exact") {
  const AxisBox w = box2(-1.5, 2.5);
  const Grid g = Grid::covering(w, 1024);
  const RasterEvaluator ev(unit_square(), Domain::whole(w), g);
  for (double cells : {8.0, 32.0, 64.0}) {
    const double eps = cells * g.spacing();
    CHECK(ev.evaluate(Functional::SM, Target::set, square(), eps) ==
          doctest::Approx(((1 + 2 * eps) * (1 + 2 * eps) - 1) / eps).epsilon(1e-12));
    CHECK(ev.evaluate(Functional::M, Target::topological_boundary, square(), eps) ==
          doctest::Approx(((1 + 2 * eps) * (1 + 2 * eps) - (1 - 2 * eps) * (1 - 2 * eps)) / (2 * eps)).epsilon(1e-12));
  }
  // Rounded outer parallel set of the square: 4 eps + pi eps^2.
  const double eps = 0.125;
  CHECK(ev.evaluate(Functional::SM, Target::set, make_ball(2, 1), eps) == doctest::Approx(4 + pi * eps).epsilon(2e-3));
}

TEST_CASE("E equal to Omega gives zero") {
  const AxisBox w = box2(-2, 2);
  const Shape region = Shape::box(v2(-1, -1), v2(1, 1));
  const Domain d = Domain::region(region, w);
  const Grid g = Grid::covering(w, 256);
  CHECK(sm_eps(region, d, square(), 0.1, g) == 0.0);
  CHECK(script_m_eps(region, d, square(), 0.1, g) == 0.0);
}

TEST_CASE("epsilon floor") {
  const AxisBox w = box2(-2, 2);
  const Grid g = Grid::covering(w, 64);
  CHECK(code_of([&] { sm_eps(disc(), Domain::whole(w), square(), g.spacing(), g); }) == ErrorCode::EpsilonBelowFloor);
}

TEST_CASE("voxel-set functionals") {
  const Grid g(v2(0, 0), 1.0 / 64, {64, 64});
  const VoxelSet omega = VoxelSet(g).complement();
  const VoxelSet e = rasterize(Shape::box(v2(0.25, 0.25), v2(0.75, 0.75)), g, RasterMode::cell_center);
  const double eps = 4.0 / 64;
  VoxelSet shell = dilate(e, build_stencil(square(), eps, g));
  shell.subtract(e);
  CHECK(sm_eps(e, omega, square(), eps) == measure(shell) / eps);
  CHECK(sm_eps(e, omega, square(), eps) == doctest::Approx(((0.5 + 2 * eps) * (0.5 + 2 * eps) - 0.25) / eps));
  CHECK(frak_m_eps(e, omega, square(), eps) == measure(dilate(e, build_stencil(square(), eps, g))) / (2 * eps));
  CHECK(m_eps(e, omega, square(), eps) == frak_m_eps(e, omega, square(), eps));
  VoxelSet rest = omega;
  rest.subtract(e);
  CHECK(script_m_eps(e, omega, square(), eps) == 0.5 * (sm_eps(e, omega, square(), eps) + sm_eps(rest, omega, square(), eps)));
}

TEST_CASE("scaling identity on rasters is bit-exact for dyadic factors") {
  const AxisBox w = box2(-1.5, 2.5);
  const Grid g = Grid::covering(w, 512);
  const RasterEvaluator ev(unit_square(), Domain::whole(w), g);
  for (const ConvexBody& c : {triangle(), make_ball(2, 1)}) {
    const double eps = 16 * g.spacing();
    for (double a : {0.5, 2.0}) {
      CHECK(ev.evaluate(Functional::SM, Target::set, scale(c, a), eps) ==
            a * ev.evaluate(Functional::SM, Target::set, c, a * eps));
    }
  }
}

TEST_CASE("extrapolation examples") {
  const std::vector<double> eps{0.4, 0.2, 0.1, 0.05};
  ContentCurve c{Functional::M, Target::set, "b", 0.0, eps, std::vector<double>(4, 2 * pi)};
  ContentEstimate e = extrapolate(c);
  CHECK(e.value == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(e.converged);
  CHECK(e.lower <= e.value);
  CHECK(e.value <= e.upper);
  for (std::size_t i = 0; i < 4; ++i) c.values[i] = 3 + 5 * eps[i];
  e = extrapolate(c);
  CHECK(e.value == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(e.slope == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(e.residual >= 0);
  c.values = {1.0, 1.5, 0.7, 1.9};
  ExtrapolationOptions o;
  o.rel_tol = 0.05;
  CHECK_FALSE(extrapolate(c, o).converged);
  c.eps.resize(2);
  c.values.resize(2);
  CHECK(code_of([&] { extrapolate(c); }) == ErrorCode::TooFewPoints);
}

TEST_CASE("existence verdicts") {
  ContentEstimate e;
  e.value = 4.05;
  e.converged = true;
  ExtrapolationOptions o;
  CHECK(exists_verdict(e, 4.0, o));
  e.value = 4.2;
  CHECK_FALSE(exists_verdict(e, 4.0, o));
  e.value = 0.04;
  CHECK(exists_verdict(e, 0.0, o));
  e.converged = false;
  CHECK_FALSE(exists_verdict(e, 0.0, o));
  CHECK(default_abs_floor(box2(-2, 2)) == doctest::Approx(0.2));
  CHECK(default_abs_floor(box1(-1, 3)) == doctest::Approx(0.05));
}

TEST_CASE("ladders") {
  CHECK(geometric_ladder(1.0, 4) == std::vector<double>{1.0, 0.5, 0.25, 0.125});
  CHECK(code_of([] { check_ladder({0.1, 0.2}, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { check_ladder({}, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { check_ladder({0.1, -0.1}, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { check_ladder({0.1, 0.05}, 0.06); }) == ErrorCode::EpsilonBelowFloor);
}

TEST_CASE("content curves") {
  const Domain line = Domain::whole(box1(-1, 3));
  const Shape e = Shape::intervals(IntervalSet::closed(0, 1).unite(IntervalSet::point(2)));
  const ContentCurve c = content_curve(e, line, Functional::SM, Target::set, make_interval(-1, 1), "unit",
                                       geometric_ladder(0.25, 5));
  CHECK(c.values == std::vector<double>(5, 4.0));
  CHECK(c.h == 0.0);

  const AxisBox w = box2(-2, 2);
  const Grid g = Grid::covering(w, 512);
  const RasterEvaluator ev(disc(), Domain::whole(w), g);
  const ContentCurve r = content_curve(ev, Functional::M, Target::topological_boundary, make_ball(2, 1), "ball",
                                       geometric_ladder(64 * g.spacing(), 4));
  for (double v : r.values) CHECK(v == doctest::Approx(2 * pi).epsilon(5e-3));
  CHECK(code_of([&] {
          content_curve(ev, Functional::M, Target::set, make_ball(2, 1), "ball", {0.1, 0.2, 0.05});
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("SM decomposition in one dimension") {
  // SM(E) = |{0 < dist < eps}| / eps + |closure(E) \ E| / eps.
  const ConvexBody c = make_interval(-0.5, 2);
  const IntervalSet e = IntervalSet::open(0, 1).unite(IntervalSet::interval(3, 4, true, false)).unite(IntervalSet::point(6));
  for (double eps : {0.25, 0.0625}) {
    const IntervalSet cl = e.closure();
    const double shell = cl.dilate(-0.5 * eps, 2 * eps).subtract(cl).measure();
    const double want = (shell + cl.subtract(e).measure()) / eps;
    CHECK(exact_1d_content(e, IntervalSet::real_line(), c, Functional::SM, eps) == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("isolated points each add the diameter") {
  const ConvexBody c = make_interval(-1, 2);
  const double base = exact_1d_content(IntervalSet::open(0, 1), IntervalSet::real_line(), c, Functional::SM, 0.0625);
  CHECK(base == 3.0);
  IntervalSet e = IntervalSet::open(0, 1);
  for (int k = 1; k <= 3; ++k) {
    e = e.unite(IntervalSet::point(1 + 2 * k));
    CHECK(exact_1d_content(e, IntervalSet::real_line(), c, Functional::SM, 0.0625) == base + 3.0 * k);
  }
}

TEST_CASE("relation report in one dimension") {
  const Domain line = Domain::whole(box1(-1, 3));
  const Shape e = Shape::intervals(IntervalSet::closed(0, 1).unite(IntervalSet::point(2)));
  ReportOptions ro;
  ro.extrapolation.abs_floor = default_abs_floor(line.window());
  const RelationReport rep = relation_report(
      e, line, {{"sym", make_interval(-1, 1)}, {"skew", make_interval(-1, 2)}}, geometric_ladder(0.125, 4), ro);
  REQUIRE(rep.bodies.size() == 2);
  const BodyReport& sym = rep.bodies[0];
  CHECK(sym.half_sum == 2.0);
  CHECK(sym.row(ReportRow::M_reduced).estimate.value == 2.0);
  CHECK(sym.row(ReportRow::M_reduced).exists);
  CHECK(sym.row(ReportRow::M_topological).estimate.value == 3.0);
  CHECK_FALSE(sym.row(ReportRow::M_topological).exists);
  CHECK(sym.row(ReportRow::SM_E).estimate.value == 4.0);
  CHECK(sym.chain_ok);
  CHECK(sym.lower_bounds_ok);
  CHECK(rep.all_verdicts_agree);
  CHECK(rep.chain_slack_layer == 0.0);
}

TEST_CASE("relation report on the disc") {
  const AxisBox w = box2(-1.25, 1.25);
  const Grid g = Grid::covering(w, 1024);
  const RasterEvaluator ev(disc(), Domain::whole(w), g);
  ReportOptions ro;
  ro.closure_inside = true;
  ro.extrapolation.abs_floor = default_abs_floor(w);
  const RelationReport rep =
      relation_report(ev, {{"ball", make_ball(2, 1)}, {"square", square()}}, geometric_ladder(64 * g.spacing(), 4), ro);
  for (const BodyReport& b : rep.bodies) {
    CHECK(b.coincide.value_or(false));
    CHECK(b.chain_ok);
    CHECK(b.row(ReportRow::M_topological).exists);
  }
  CHECK(rep.bodies[1].half_sum == doctest::Approx(8.0).epsilon(1e-6));
  CHECK(rep.all_verdicts_agree);
}

TEST_CASE("chain predicate") {
  CHECK(chain_holds(3, 2, 1, 0));
  CHECK_FALSE(chain_holds(1, 2, 1, 0));
  CHECK(chain_holds(1.9, 2, 1, 0.1));
}
