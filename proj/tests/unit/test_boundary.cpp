#include "doctest.h"

#include "minklab/boundary.hpp"
#include "minklab/error.hpp"

#include <cmath>
#include <sstream>

using namespace minklab;

namespace {

Vector v2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Shape disc() { return Shape::ball(Vector::Zero(2), 1); }

}  // namespace

TEST_CASE("default radii") {
  CHECK(default_radii(0.8) == std::vector<double>{0.8, 0.4, 0.2, 0.1, 0.05});
}

TEST_CASE("density estimates") {
  const auto r = default_radii(0.2);
  const DensityEstimate in = density_estimate(disc(), v2(0.2, -0.3), r);
  CHECK(in.theta == doctest::Approx(1.0));
  CHECK(in.classification == DensityClass::density1);
  const DensityEstimate edge = density_estimate(disc(), v2(0.6, 0.8), r);
  CHECK(edge.theta == doctest::Approx(0.5).epsilon(0.02));
  CHECK(edge.classification == DensityClass::half);
  const DensityEstimate out = density_estimate(disc(), v2(1.5, 0), r);
  CHECK(out.classification == DensityClass::density0);
  for (double q : edge.ratios) {
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
  }
  // A square corner has density one quarter.
  const DensityEstimate corner = density_estimate(Shape::box(v2(0, 0), v2(1, 1)), v2(0, 0), r);
  CHECK(corner.theta == doctest::Approx(0.25).epsilon(0.02));
  CHECK(corner.classification == DensityClass::other);
}

TEST_CASE("one-dimensional density is exact") {
  const Shape e = Shape::intervals(IntervalSet::closed(0, 1).unite(IntervalSet::point(2)));
  const auto r = default_radii(0.25);
  const DensityEstimate iso = density_estimate(e, Vector::Constant(1, 2.0), r);
  CHECK(iso.theta == 0.0);
  CHECK(iso.classification == DensityClass::density0);
  const DensityEstimate end = density_estimate(e, Vector::Constant(1, 1.0), r);
  CHECK(end.ratios == std::vector<double>(5, 0.5));
}

TEST_CASE("density window check") {
  bool threw = false;
  try {
    density_estimate(disc(), v2(1.9, 0), default_radii(0.2), AxisBox{Vector::Constant(2, -2), Vector::Constant(2, 2)});
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::OutOfWindow;
  }
  CHECK(threw);
}

TEST_CASE("reduced boundaries") {
  const AxisBox w{Vector::Constant(2, -2), Vector::Constant(2, 3)};
  const Domain d = Domain::whole(w);
  const Shape poly = Shape::polygon({{0, 0}, {2, 0}, {1, 1.5}});
  const BoundaryMesh rb = reduced_boundary(poly, d);
  CHECK(rb.facets.size() >= 3);
  CHECK(rb.total_measure() == perimeter(poly, d));
  for (const MeshFacet& f : rb.facets) CHECK(f.kind == FacetKind::reduced);
  CHECK(reduced_boundary(disc(), d).total_measure() == doctest::Approx(2 * M_PI).epsilon(1e-6));

  const Shape e = Shape::intervals(IntervalSet::closed(0, 1).unite(IntervalSet::point(2)));
  const BoundaryMesh pts = reduced_boundary(e, Domain::whole({Vector::Constant(1, -1), Vector::Constant(1, 3)}));
  REQUIRE(pts.facets.size() == 2);
  CHECK(pts.facets[0].points[0][0] == 0);
  CHECK(pts.facets[1].points[0][0] == 1);

  // A slit and an isolated point leave the reduced boundary unchanged.
  const Shape sq = Shape::box(v2(0, 0), v2(1, 1));
  const Shape dirty = Shape::unite(Shape::subtract(sq, Shape::segments({{v2(0.2, 0.5), v2(0.7, 0.5)}})),
                                   Shape::points(2, {v2(2, 2)}));
  CHECK(reduced_boundary(dirty, d).total_measure() == doctest::Approx(4.0));
}

TEST_CASE("complement normals are negated") {
  const AxisBox w{Vector::Constant(2, -2), Vector::Constant(2, 3)};
  const Domain d = Domain::region(Shape::box(w.lo, w.hi), w);
  const Shape poly = Shape::polygon({{0, 0}, {2, 0}, {1, 1.5}});
  const BoundaryMesh a = reduced_boundary(poly, d);
  const BoundaryMesh b = reduced_boundary(Shape::subtract(Shape::box(w.lo, w.hi), poly), d);
  REQUIRE(a.facets.size() == b.facets.size());
  for (const MeshFacet& f : a.facets) {
    const Vector m = 0.5 * (f.points[0] + f.points[1]);
    int matched = 0;
    for (const MeshFacet& g : b.facets) {
      if ((0.5 * (g.points[0] + g.points[1]) - m).norm() < 1e-9) {
        ++matched;
        CHECK((g.normal + f.normal).norm() < 1e-12);
      }
    }
    CHECK(matched == 1);
  }
}

TEST_CASE("symbolic E1 and E0 in one dimension") {
  const Shape e = Shape::intervals(IntervalSet::closed(0, 1).unite(IntervalSet::point(2)));
  const IntervalSet e1 = to_interval_set(density_one_shape(e));
  const IntervalSet e0 = to_interval_set(density_zero_shape(e));
  CHECK(e1 == IntervalSet::open(0, 1));
  CHECK(e1.boundary() == IntervalSet::points({0, 1}));
  CHECK(e0 == IntervalSet::closed(0, 1).complement());
  CHECK(e0.contains(2.0));
}

TEST_CASE("voxel classification") {
  const Grid g(v2(-1, -1), 1.0 / 32, {64, 64});
  const VoxelSet half = rasterize(Shape::box(v2(-2, -2), v2(0, 2)), g, RasterMode::cell_center);
  const auto labels = classify_voxels(half, {2, 4});
  auto at = [&](std::int64_t i, std::int64_t j) {
    const std::int64_t idx[2] = {i, j};
    return labels[g.flat(idx)];
  };
  CHECK(at(4, 30) == VoxelLabel::E1);
  CHECK(at(60, 30) == VoxelLabel::E0);
  CHECK(at(31, 30) == VoxelLabel::essential);
  CHECK(at(32, 30) == VoxelLabel::essential);
  std::ostringstream os;
  write_labels_csv(os, g, labels);
  const std::string s = os.str();
  CHECK(s.rfind("i0,i1,label\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 1 + 64 * 64);
}
