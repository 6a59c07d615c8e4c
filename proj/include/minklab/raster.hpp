#pragma once

#include "minklab/convex.hpp"
#include "minklab/shape.hpp"

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace minklab {

/// Uniform grid of cubical cells. Cell k along an axis spans
/// (origin + k h, origin + (k + 1) h]; cells are stored row-major with
/// axis 0 slowest, so a "row" runs along the last axis.
class Grid {
 public:
  Grid(Vector origin, double spacing, std::vector<std::int64_t> counts);

  /// Square grid covering `window` with n cells along its longest axis.
  static Grid covering(const AxisBox& window, std::int64_t n);

  int dimension() const { return static_cast<int>(counts_.size()); }
  const Vector& origin() const { return origin_; }
  double spacing() const { return h_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t cell_count() const { return total_; }
  std::int64_t row_length() const { return counts_.back(); }
  std::int64_t row_count() const { return total_ / counts_.back(); }
  double cell_volume() const;

  std::int64_t flat(const std::int64_t* idx) const;
  void unflat(std::int64_t flat, std::int64_t* idx) const;
  Vector center(std::int64_t flat) const;
  double center_coord(int axis, std::int64_t k) const { return origin_[axis] + (k + 0.5) * h_; }
  /// Index of the cell containing coordinate x on `axis` (may be out of range).
  std::int64_t cell_of(int axis, double x) const;

  AxisBox extent() const;

  bool operator==(const Grid& o) const;
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  Vector origin_;
  double h_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// Membership bitset over the cells of a grid. Each row is padded to whole
/// 64-bit words.
class VoxelSet {
 public:
  explicit VoxelSet(Grid grid);

  const Grid& grid() const { return grid_; }
  bool test(std::int64_t flat) const;
  void set(std::int64_t flat);
  void reset(std::int64_t flat);
  /// Sets bits [lo, hi] (inclusive) of a row; the range is clipped to the row.
  void set_run(std::int64_t row, std::int64_t lo, std::int64_t hi);
  bool test_row(std::int64_t row, std::int64_t k) const {
    return (words_[row * wpr_ + (k >> 6)] >> (k & 63)) & 1u;
  }
  void set_row(std::int64_t row, std::int64_t k) { words_[row * wpr_ + (k >> 6)] |= std::uint64_t{1} << (k & 63); }

  std::int64_t count() const;
  bool empty() const { return count() == 0; }

  VoxelSet& operator|=(const VoxelSet& o);
  VoxelSet& operator&=(const VoxelSet& o);
  /// Removes the cells of o.
  VoxelSet& subtract(const VoxelSet& o);
  VoxelSet complement() const;

  bool operator==(const VoxelSet& o) const;

  std::int64_t words_per_row() const { return wpr_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Calls f(lo, hi) for each maximal run of set bits in `row`.
  template <class F>
  void for_each_run(std::int64_t row, F&& f) const;

 private:
  void require_same(const VoxelSet& o) const;
  Grid grid_;
  std::int64_t wpr_;
  std::vector<std::uint64_t> words_;
};

/// Nonnegative value per cell, same layout as VoxelSet.
struct ScalarField {
  Grid grid;
  std::vector<double> values;
};

/// Integer offsets realizing eps C on a grid: o is included iff
/// gauge(C, h o) <= eps (closed) or < eps (open).
struct Stencil {
  struct Run {
    std::vector<std::int64_t> prefix;  // offsets on all axes but the last
    std::int64_t lo, hi;               // inclusive range on the last axis
  };
  int dimension = 0;
  double spacing = 0.0;
  double eps = 0.0;
  bool closed = true;
  std::string body;
  std::vector<std::int64_t> offsets;  // flattened, `dimension` entries per offset
  std::vector<Run> runs;

  std::size_t size() const { return dimension ? offsets.size() / dimension : 0; }
  Vector displacement(std::size_t i) const;
};

enum class RasterMode { cell_center, supercover };

constexpr std::size_t kDefaultStencilCap = 20'000'000;

VoxelSet rasterize(const Shape& s, const Grid& g, RasterMode mode);
/// Cells whose half-open box meets one of the facets (supercover of a mesh).
VoxelSet rasterize_mesh(const BoundaryMesh& mesh, const Grid& g);

double measure(const VoxelSet& v);

Stencil build_stencil(const ConvexBody& c, double eps, const Grid& g, bool closed = true,
                      std::size_t cap = kDefaultStencilCap);

VoxelSet dilate(const VoxelSet& v, const Stencil& st);

enum class DistanceMethod { brute, chamfer };

ScalarField distance_field(const VoxelSet& seed, const ConvexBody& c, DistanceMethod method,
                           int chamfer_radius = 3);

VoxelSet threshold_below(const ScalarField& f, double eps, bool strict);

VoxelSet boundary_voxels(const VoxelSet& v);

/// Binary dump: one text header line, then binary64 little-endian values.
void write_field_binary(std::ostream& os, const ScalarField& f, const std::string& body,
                        const std::string& method);
/// CSV dump: index tuple and value, one row per cell.
void write_field_csv(std::ostream& os, const ScalarField& f);

template <class F>
void VoxelSet::for_each_run(std::int64_t row, F&& f) const {
  const std::uint64_t* w = words_.data() + row * wpr_;
  const std::int64_t len = grid_.row_length();
  std::int64_t k = 0;
  while (k < len) {
    // Find next set bit.
    std::int64_t wi = k >> 6;
    std::uint64_t cur = w[wi] & (~std::uint64_t{0} << (k & 63));
    while (cur == 0) {
      if (++wi >= wpr_) return;
      cur = w[wi];
    }
    const std::int64_t start = (wi << 6) + __builtin_ctzll(cur);
    if (start >= len) return;
    // Find next clear bit.
    std::uint64_t inv = ~w[wi] & (~std::uint64_t{0} << (start & 63));
    while (inv == 0) {
      if (++wi >= wpr_) {
        inv = 1;
        wi = wpr_;
        break;
      }
      inv = ~w[wi];
    }
    std::int64_t stop = wi >= wpr_ ? len : (wi << 6) + __builtin_ctzll(inv);
    stop = std::min(stop, len);
    f(start, stop - 1);
    k = stop;
  }
}

}  // namespace minklab
