#include "doctest.h"

#include "minklab/convex.hpp"
#include "minklab/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace minklab;

namespace {

Vector v2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

ConvexBody square() { return make_polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)}); }
ConvexBody cross() { return make_polytope({v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1)}); }
ConvexBody triangle() { return make_polytope({v2(2, -1), v2(-1, 2), v2(-1, -1)}); }

// Oracles below use only the vertex list handed to the constructor.

double support_oracle(const std::vector<Vector>& verts, const Vector& y) {
  double best = -1e300;
  for (const Vector& v : verts) best = std::max(best, v.dot(y));
  return best;
}

// Counter-clockwise convex loop membership by cross products.
bool inside_loop(const std::vector<Vector>& loop, const Vector& x) {
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vector& a = loop[i];
    const Vector& b = loop[(i + 1) % loop.size()];
    if ((b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) < 0) return false;
  }
  return true;
}

double gauge_bisection(const std::vector<Vector>& loop, const Vector& x) {
  double lo = 0.0, hi = 1.0;
  while (!inside_loop(loop, x / hi)) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (inside_loop(loop, x / mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

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

TEST_CASE("make_polytope builds the square and cross facets") {
  const ConvexBody sq = square();
  REQUIRE(sq.facets().size() == 4);
  for (const Facet& f : sq.facets()) {
    CHECK(f.offset == doctest::Approx(1.0));
    CHECK(std::abs(f.normal[0]) + std::abs(f.normal[1]) == doctest::Approx(1.0));
  }
  const ConvexBody cr = cross();
  REQUIRE(cr.facets().size() == 4);
  for (const Facet& f : cr.facets()) {
    CHECK(f.offset == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(std::abs(f.normal[0]) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(std::abs(f.normal[1]) == doctest::Approx(1 / std::sqrt(2.0)));
  }
}

TEST_CASE("make_polytope drops redundant points") {
  const ConvexBody sq = make_polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1), v2(0, 0), v2(0.5, 1)});
  CHECK(sq.vertices().size() == 4);
}

TEST_CASE("constructor errors") {
  CHECK(code_of([] { make_polytope({v2(1, 0), v2(-1, 0)}); }) == ErrorCode::DegenerateHull);
  CHECK(code_of([] { make_polytope({v2(1, 0), v2(0, 1)}); }) == ErrorCode::OriginNotInterior);
  CHECK(code_of([] { make_polytope({v2(1, 0), v2(0, 1), v2(1, 1)}); }) == ErrorCode::OriginNotInterior);
  CHECK(code_of([] { make_polytope({v2(1, 0), v2(0, 1), v2(-1, 0)}); }) == ErrorCode::OriginNotInterior);
  CHECK(code_of([] { make_ball(2, 0.0); }) == ErrorCode::OriginNotInterior);
  CHECK(code_of([] { scale(square(), 0.0); }) == ErrorCode::NonpositiveScale);
  CHECK(code_of([] { minkowski_sum(square(), make_ball(2, 1)); }) == ErrorCode::MixedKinds);
  CHECK(code_of([] { make_interval(0.0, 1.0); }) == ErrorCode::OriginNotInterior);
}

TEST_CASE("support examples") {
  CHECK(support(make_ball(2, 1), v2(3, 4)) == 5.0);
  CHECK(support(square(), v2(1, 2)) == 3.0);
  CHECK(support(triangle(), Vector::Zero(2)) == 0.0);
  CHECK(support(make_interval(-1, 2), Vector::Constant(1, -1)) == 1.0);
}

TEST_CASE("gauge examples and bisection oracle") {
  CHECK(gauge(make_ball(2, 2), v2(0, 3)) == 1.5);
  CHECK(gauge(square(), v2(0.5, -0.25)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gauge(square(), Vector::Zero(2)) == 0.0);

  const std::vector<Vector> tri_loop{v2(-1, -1), v2(2, -1), v2(-1, 2)};
  const std::vector<Vector> sq_loop{v2(-1, -1), v2(1, -1), v2(1, 1), v2(-1, 1)};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const Vector x = v2(u(rng), u(rng));
    CHECK(gauge(triangle(), x) == doctest::Approx(gauge_bisection(tri_loop, x)).epsilon(1e-12));
    CHECK(gauge(square(), x) == doctest::Approx(gauge_bisection(sq_loop, x)).epsilon(1e-12));
    CHECK(support(triangle(), x) == doctest::Approx(support_oracle(tri_loop, x)).epsilon(1e-14));
  }
}

TEST_CASE("polar examples") {
  CHECK(polar(make_ball(2, 1)).radius() == 1.0);
  CHECK(polar(make_ball(2, 2)).radius() == 0.5);
  CHECK(vertex_hausdorff(polar(square()), cross()) < 1e-12);
  CHECK(vertex_hausdorff(polar(cross()), square()) < 1e-12);
}

TEST_CASE("scale and reflect") {
  CHECK(scale(make_ball(2, 1), 3).radius() == 3.0);
  CHECK(support(scale(square(), 2), v2(1, 2)) == 6.0);
  CHECK(vertex_hausdorff(scale(triangle(), 1), triangle()) == 0.0);
  CHECK(reflect(make_ball(2, 1.5)).radius() == 1.5);
  CHECK(vertex_hausdorff(reflect(triangle()), make_polytope({v2(-2, 1), v2(1, -2), v2(1, 1)})) == 0.0);
  CHECK(vertex_hausdorff(reflect(reflect(triangle())), triangle()) == 0.0);
  for (const Vector& x : {v2(1, 0.3), v2(-2, 5), v2(0.1, -0.7)}) {
    CHECK(support(reflect(triangle()), x) == doctest::Approx(support(triangle(), Vector(-x))));
  }
}

TEST_CASE("minkowski sums") {
  CHECK(vertex_hausdorff(minkowski_sum(square(), square()), make_polytope({v2(2, 2), v2(-2, 2), v2(-2, -2), v2(2, -2)})) <
        1e-12);
  CHECK(minkowski_sum(make_ball(2, 1), make_ball(2, 2)).radius() == 3.0);
}

TEST_CASE("containment constants and diameter") {
  const ContainmentConstants b = containment_constants(make_ball(2, 2));
  CHECK(b.a == 0.5);
  CHECK(b.b == 0.5);
  const ContainmentConstants s = containment_constants(square());
  CHECK(s.a == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(s.b == doctest::Approx(1.0));
  const ContainmentConstants c = containment_constants(cross());
  CHECK(c.a == doctest::Approx(1.0));
  CHECK(c.b == doctest::Approx(std::sqrt(2.0)));
  CHECK(diameter(make_ball(3, 1.5)) == 3.0);
  CHECK(diameter(square()) == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(diameter(make_interval(-1, 2)) == 3.0);
}

TEST_CASE("property: generalized Cauchy-Schwarz and interval sublinearity") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  for (const ConvexBody& c : {square(), cross(), triangle(), make_ball(2, 0.7)}) {
    for (int i = 0; i < 300; ++i) {
      const Vector x = v2(nd(rng), nd(rng)), y = v2(nd(rng), nd(rng));
      CHECK(x.dot(y) <= gauge(c, x) * support(c, y) + 1e-12);
      const double t = std::uniform_real_distribution<double>(0, 1)(rng);
      CHECK(support(c, Vector(t * x + (1 - t) * y)) <= t * support(c, x) + (1 - t) * support(c, y) + 1e-12);
    }
  }
}

TEST_CASE("three-dimensional and higher bodies") {
  std::vector<Vector> cube;
  for (int m = 0; m < 8; ++m) {
    Vector v(3);
    v << (m & 1 ? 1 : -1), (m & 2 ? 1 : -1), (m & 4 ? 1 : -1);
    cube.push_back(v);
  }
  const ConvexBody c = make_polytope(cube);
  CHECK(c.facets().size() == 6);
  Vector y(3);
  y << 1, -2, 3;
  CHECK(support(c, y) == 6.0);
  CHECK(gauge(c, y) == 3.0);
  CHECK(vertex_hausdorff(polar(polar(c)), c) < 1e-9);

  const ConvexBody box5 = make_box(Vector::Constant(5, -1), Vector::Constant(5, 2));
  CHECK(support(box5, Vector::Ones(5)) == 10.0);
  CHECK(gauge(box5, Vector::Constant(5, -0.5)) == 0.5);
}

TEST_CASE("gauge kernel agrees with gauge") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (const ConvexBody& c : {square(), triangle(), make_ball(2, 1.3)}) {
    const GaugeKernel k(c);
    for (int i = 0; i < 100; ++i) {
      const Vector x = v2(nd(rng), nd(rng));
      CHECK(k(x.data()) == doctest::Approx(gauge(c, x)).epsilon(1e-14));
    }
  }
}
