#include "doctest.h"

#include "minklab/error.hpp"
#include "minklab/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

using namespace minklab;

namespace {

Vector v2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

ConvexBody square() { return make_polytope({v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)}); }
ConvexBody triangle() { return make_polytope({v2(2, -1), v2(-1, 2), v2(-1, -1)}); }

std::int64_t at(const Grid& g, std::int64_t i, std::int64_t j) {
  const std::int64_t idx[2] = {i, j};
  return g.flat(idx);
}

// Lattice points o with |o| <= r, counted directly.
int lattice_disc(double r) {
  int n = 0;
  const int k = static_cast<int>(std::ceil(r));
  for (int i = -k; i <= k; ++i) {
    for (int j = -k; j <= k; ++j) n += i * i + j * j <= r * r;
  }
  return n;
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid g(v2(-1, -1), 0.25, {8, 8});
  CHECK(g.cell_count() == 64);
  CHECK(g.cell_volume() == 0.0625);
  CHECK(g.center(at(g, 0, 0))[0] == -0.875);
  // Cells are (a, b]; a coordinate on a cell face belongs to the lower cell.
  CHECK(g.cell_of(0, 0.0) == 3);
  CHECK(g.cell_of(0, 0.01) == 4);
  std::int64_t idx[2];
  g.unflat(at(g, 5, 2), idx);
  CHECK(idx[0] == 5);
  CHECK(idx[1] == 2);
  const Grid c = Grid::covering({Vector::Constant(2, -2), v2(2, 0)}, 8);
  CHECK(c.spacing() == 0.5);
  CHECK(c.counts()[1] == 4);
}

TEST_CASE("rasterize examples") {
  const Grid g(v2(-1, -1), 0.25, {8, 8});
  const VoxelSet sq = rasterize(Shape::box(v2(0, 0), v2(1, 1)), g, RasterMode::cell_center);
  CHECK(sq.count() == 16);
  CHECK(measure(sq) == 1.0);
  CHECK(rasterize(Shape::empty(2), g, RasterMode::cell_center).count() == 0);
  CHECK(measure(VoxelSet(g).complement()) == 4.0);

  const Grid g1(Vector::Constant(1, -1), 0.25, {8});
  const VoxelSet p = rasterize(Shape::points(1, {Vector::Zero(1)}), g1, RasterMode::supercover);
  CHECK(p.count() == 1);
  CHECK(p.test(3));

  bool threw = false;
  try {
    rasterize(Shape::empty(1), g, RasterMode::cell_center);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::DimensionMismatch;
  }
  CHECK(threw);
}

TEST_CASE("supercover of a segment touches every crossed cell") {
  const Grid g(v2(0, 0), 0.25, {4, 4});
  // The diagonal passes through cell corners; corner ties go to the lower cell.
  const VoxelSet d = rasterize(Shape::segments({{v2(0.1, 0.1), v2(0.9, 0.9)}}), g, RasterMode::supercover);
  for (int k = 0; k < 4; ++k) CHECK(d.test(at(g, k, k)));
  const VoxelSet h = rasterize(Shape::segments({{v2(0.1, 0.6), v2(0.9, 0.6)}}), g, RasterMode::supercover);
  CHECK(h.count() == 4);
}

TEST_CASE("stencil sizes") {
  const Grid g(v2(-1, -1), 0.25, {8, 8});
  CHECK(build_stencil(square(), 0.25, g).size() == 9);
  CHECK(build_stencil(make_ball(2, 1), 0.5, g).size() == 13);
  CHECK(build_stencil(make_ball(2, 1), 0.2, g).size() == 1);
  for (double r : {1.0, 2.5, 3.0, 7.3}) {
    CHECK(build_stencil(make_ball(2, 1), r * 0.25, g).size() == static_cast<std::size_t>(lattice_disc(r)));
  }
  CHECK(build_stencil(make_ball(2, 1), 0.5, g, false).size() == 9);
  bool threw = false;
  try {
    build_stencil(make_ball(2, 1), 100.0, g, true, 1000);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::StencilTooLarge;
  }
  CHECK(threw);
}

TEST_CASE("dilate examples") {
  const Grid g(v2(-1, -1), 0.25, {8, 8});
  VoxelSet one(g);
  one.set(at(g, 4, 4));
  const VoxelSet block = dilate(one, build_stencil(square(), 0.25, g));
  CHECK(block.count() == 9);
  for (int i = 3; i <= 5; ++i) {
    for (int j = 3; j <= 5; ++j) CHECK(block.test(at(g, i, j)));
  }
  const VoxelSet sq = rasterize(Shape::box(v2(0, 0), v2(1, 1)), g, RasterMode::cell_center);
  CHECK(dilate(sq, build_stencil(square(), 0.1, g)) == sq);
  VoxelSet big = sq;
  big.set(at(g, 0, 0));
  VoxelSet small = dilate(sq, build_stencil(triangle(), 0.5, g));
  VoxelSet large = dilate(big, build_stencil(triangle(), 0.5, g));
  small.subtract(large);
  CHECK(small.empty());
  bool threw = false;
  try {
    VoxelSet other(Grid(v2(-1, -1), 0.5, {4, 4}));
    other |= sq;
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::GridMismatch;
  }
  CHECK(threw);
}

TEST_CASE("cells pushed past the grid edge are dropped") {
  const Grid g(v2(0, 0), 1.0, {4, 4});
  VoxelSet corner(g);
  corner.set(at(g, 0, 0));
  CHECK(dilate(corner, build_stencil(square(), 1.0, g)).count() == 4);
}

TEST_CASE("distance fields") {
  const Grid g(v2(-1, -1), 0.25, {8, 8});
  VoxelSet one(g);
  one.set(at(g, 4, 4));
  const ScalarField cheb = distance_field(one, square(), DistanceMethod::brute);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      CHECK(cheb.values[at(g, i, j)] == 0.25 * std::max(std::abs(i - 4), std::abs(j - 4)));
    }
  }
  const ScalarField eu = distance_field(one, make_ball(2, 1), DistanceMethod::brute);
  CHECK(eu.values[at(g, 7, 0)] == doctest::Approx(0.25 * 5));
  CHECK(eu.values[at(g, 4, 4)] == 0.0);
  // The square gauge is exact along the chamfer steps.
  const ScalarField ch = distance_field(one, square(), DistanceMethod::chamfer, 1);
  CHECK(ch.values == cheb.values);

  bool threw = false;
  try {
    distance_field(VoxelSet(g), square(), DistanceMethod::brute);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::EmptySeed;
  }
  CHECK(threw);
}

TEST_CASE("thresholds") {
  const Grid g(v2(-1, -1), 0.25, {8, 8});
  const VoxelSet seed = rasterize(Shape::ball(v2(0.1, 0), 0.4), g, RasterMode::cell_center);
  const ScalarField f = distance_field(seed, triangle(), DistanceMethod::brute);
  CHECK(threshold_below(f, 1e-9, true) == seed);
  CHECK(threshold_below(f, 1e9, false).count() == g.cell_count());
  for (double eps : {0.25, 0.4, 0.75}) {
    CHECK(threshold_below(f, eps, false) == dilate(seed, build_stencil(triangle(), eps, g)));
    CHECK(threshold_below(f, eps, true) == dilate(seed, build_stencil(triangle(), eps, g, false)));
  }
}

TEST_CASE("property: random seeds dilate like the brute threshold") {
  const Grid g(v2(0, 0), 1.0 / 32, {32, 32});
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> pick(0, g.cell_count() - 1);
  for (int trial = 0; trial < 5; ++trial) {
    VoxelSet seed(g);
    for (int k = 0; k < 6; ++k) seed.set(pick(rng));
    for (const ConvexBody& c : {square(), triangle(), make_ball(2, 0.5)}) {
      const ScalarField f = distance_field(seed, c, DistanceMethod::brute);
      const ScalarField ch = distance_field(seed, c, DistanceMethod::chamfer, 3);
      for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(ch.values[i] >= f.values[i] - 1e-12);
      for (double eps : {2.0 / 32, 3.7 / 32}) {
        CHECK(threshold_below(f, eps, false) == dilate(seed, build_stencil(c, eps, g)));
      }
    }
  }
}

TEST_CASE("boundary voxels") {
  const Grid g(v2(-1, -1), 0.25, {8, 8});
  CHECK(boundary_voxels(VoxelSet(g).complement()).count() == 0);
  VoxelSet one(g);
  one.set(at(g, 3, 5));
  CHECK(boundary_voxels(one).count() == 5);
  const VoxelSet half = rasterize(Shape::box(v2(-2, -2), v2(0, 2)), g, RasterMode::cell_center);
  const VoxelSet slab = boundary_voxels(half);
  CHECK(slab.count() == 16);
  for (int j = 0; j < 8; ++j) {
    CHECK(slab.test(at(g, 3, j)));
    CHECK(slab.test(at(g, 4, j)));
  }
}

TEST_CASE("field dumps") {
  const Grid g(v2(-1, -1), 0.5, {4, 4});
  VoxelSet one(g);
  one.set(at(g, 1, 2));
  const ScalarField f = distance_field(one, square(), DistanceMethod::brute);
  std::ostringstream bin;
  write_field_binary(bin, f, "square", "brute");
  const std::string s = bin.str();
  const std::size_t nl = s.find('\n');
  CHECK(s.substr(0, nl) == "minklab-field v1 dim=2 counts=4,4 origin=-1,-1 spacing=0.5 body=square method=brute");
  REQUIRE(s.size() == nl + 1 + 16 * sizeof(double));
  double v = 0;
  std::memcpy(&v, s.data() + nl + 1 + sizeof(double) * at(g, 3, 3), sizeof v);
  CHECK(v == 1.0);
  std::ostringstream csv;
  write_field_csv(csv, f);
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 17);
}
