#include "minklab/raster.hpp"

#include "minklab/error.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace minklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Odometer over an index box [lo, hi] (inclusive) on every axis.
struct BoxIter {
  std::vector<std::int64_t> lo, hi, cur;
  bool done = false;

  BoxIter(std::vector<std::int64_t> l, std::vector<std::int64_t> h) : lo(std::move(l)), hi(std::move(h)), cur(lo) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] > hi[i]) done = true;
    }
  }
  void next() {
    for (std::size_t i = cur.size(); i-- > 0;) {
      if (++cur[i] <= hi[i]) return;
      cur[i] = lo[i];
    }
    done = true;
  }
};

void mark_point(VoxelSet& v, const Vector& p) {
  const Grid& g = v.grid();
  std::vector<std::int64_t> idx(g.dimension());
  for (int i = 0; i < g.dimension(); ++i) {
    idx[i] = g.cell_of(i, p[i]);
    if (idx[i] < 0 || idx[i] >= g.counts()[i]) return;
  }
  v.set(g.flat(idx.data()));
}

void mark_segment(VoxelSet& v, const Vector& a, const Vector& b) {
  const Grid& g = v.grid();
  const int n = g.dimension();
  const double h = g.spacing();
  std::vector<double> ts{0.0, 1.0};
  for (int i = 0; i < n; ++i) {
    const double d = b[i] - a[i];
    if (d == 0.0) continue;
    const double u0 = (std::min(a[i], b[i]) - g.origin()[i]) / h;
    const double u1 = (std::max(a[i], b[i]) - g.origin()[i]) / h;
    for (double k = std::ceil(u0); k <= u1; k += 1.0) {
      const double t = (g.origin()[i] + k * h - a[i]) / d;
      if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());
  mark_point(v, a);
  mark_point(v, b);
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    mark_point(v, Vector(a + 0.5 * (ts[k] + ts[k + 1]) * (b - a)));
    mark_point(v, Vector(a + ts[k + 1] * (b - a)));
  }
}

// Separating-axis test of a closed box against a triangle.
bool box_meets_triangle(const Eigen::Vector3d& c, double half, const std::array<Eigen::Vector3d, 3>& tri) {
  const Eigen::Vector3d v0 = tri[0] - c, v1 = tri[1] - c, v2 = tri[2] - c;
  const Eigen::Vector3d e[3] = {v1 - v0, v2 - v1, v0 - v2};
  auto separated = [&](const Eigen::Vector3d& axis) {
    const double p0 = axis.dot(v0), p1 = axis.dot(v1), p2 = axis.dot(v2);
    const double r = half * axis.cwiseAbs().sum();
    return std::min({p0, p1, p2}) > r || std::max({p0, p1, p2}) < -r;
  };
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d axis = Eigen::Vector3d::Zero();
    axis[i] = 1.0;
    if (separated(axis)) return false;
    for (const auto& ed : e) {
      const Eigen::Vector3d x = axis.cross(ed);
      if (x.squaredNorm() > 0.0 && separated(x)) return false;
    }
  }
  const Eigen::Vector3d nrm = e[0].cross(e[1]);
  return !(nrm.squaredNorm() > 0.0 && separated(nrm));
}

void mark_triangle(VoxelSet& v, const std::vector<Vector>& pts) {
  const Grid& g = v.grid();
  const double h = g.spacing();
  std::array<Eigen::Vector3d, 3> tri;
  std::vector<std::int64_t> lo(3), hi(3);
  for (int k = 0; k < 3; ++k) tri[k] = Eigen::Vector3d(pts[k][0], pts[k][1], pts[k][2]);
  for (int i = 0; i < 3; ++i) {
    const double mn = std::min({tri[0][i], tri[1][i], tri[2][i]});
    const double mx = std::max({tri[0][i], tri[1][i], tri[2][i]});
    lo[i] = std::max<std::int64_t>(0, g.cell_of(i, mn) - 1);
    hi[i] = std::min<std::int64_t>(g.counts()[i] - 1, g.cell_of(i, mx) + 1);
  }
  for (BoxIter it(lo, hi); !it.done; it.next()) {
    const Eigen::Vector3d c(g.center_coord(0, it.cur[0]), g.center_coord(1, it.cur[1]), g.center_coord(2, it.cur[2]));
    if (box_meets_triangle(c, 0.5 * h, tri)) v.set(g.flat(it.cur.data()));
  }
}

std::vector<std::int64_t> row_prefix(const Grid& g, std::int64_t row) {
  const int n = g.dimension();
  std::vector<std::int64_t> p(n > 1 ? n - 1 : 0);
  for (int i = n - 2; i >= 0; --i) {
    p[i] = row % g.counts()[i];
    row /= g.counts()[i];
  }
  return p;
}

}  // namespace

Grid::Grid(Vector origin, double spacing, std::vector<std::int64_t> counts)
    : origin_(std::move(origin)), h_(spacing), counts_(std::move(counts)) {
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  if (counts_.empty() || static_cast<Eigen::Index>(counts_.size()) != origin_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "grid origin and counts differ in dimension");
  }
  total_ = 1;
  for (std::int64_t c : counts_) {
    if (c <= 0) throw Error(ErrorCode::InvalidArgument, "grid counts must be positive");
    if (total_ > (std::int64_t{1} << 40) / c) throw Error(ErrorCode::ResourceCap, "grid has too many cells");
    total_ *= c;
  }
}

Grid Grid::covering(const AxisBox& window, std::int64_t n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "grid resolution must be positive");
  const Vector ext = window.extent();
  const double h = ext.maxCoeff() / static_cast<double>(n);
  std::vector<std::int64_t> counts(window.dimension());
  for (int i = 0; i < window.dimension(); ++i) {
    counts[i] = std::max<std::int64_t>(1, std::llround(ext[i] / h));
  }
  return Grid(window.lo, h, std::move(counts));
}

double Grid::cell_volume() const { return std::pow(h_, dimension()); }

std::int64_t Grid::flat(const std::int64_t* idx) const {
  std::int64_t f = 0;
  for (int i = 0; i < dimension(); ++i) f = f * counts_[i] + idx[i];
  return f;
}

void Grid::unflat(std::int64_t f, std::int64_t* idx) const {
  for (int i = dimension() - 1; i >= 0; --i) {
    idx[i] = f % counts_[i];
    f /= counts_[i];
  }
}

Vector Grid::center(std::int64_t f) const {
  std::vector<std::int64_t> idx(dimension());
  unflat(f, idx.data());
  Vector c(dimension());
  for (int i = 0; i < dimension(); ++i) c[i] = center_coord(i, idx[i]);
  return c;
}

std::int64_t Grid::cell_of(int axis, double x) const {
  return static_cast<std::int64_t>(std::ceil((x - origin_[axis]) / h_)) - 1;
}

AxisBox Grid::extent() const {
  Vector hi = origin_;
  for (int i = 0; i < dimension(); ++i) hi[i] += static_cast<double>(counts_[i]) * h_;
  return {origin_, hi};
}

bool Grid::operator==(const Grid& o) const {
  return h_ == o.h_ && counts_ == o.counts_ && origin_.size() == o.origin_.size() && origin_ == o.origin_;
}

VoxelSet::VoxelSet(Grid grid)
    : grid_(std::move(grid)), wpr_((grid_.row_length() + 63) / 64),
      words_(static_cast<std::size_t>(wpr_ * grid_.row_count()), 0) {}

bool VoxelSet::test(std::int64_t f) const {
  const std::int64_t len = grid_.row_length();
  return test_row(f / len, f % len);
}

void VoxelSet::set(std::int64_t f) {
  const std::int64_t len = grid_.row_length();
  set_row(f / len, f % len);
}

void VoxelSet::reset(std::int64_t f) {
  const std::int64_t len = grid_.row_length();
  const std::int64_t k = f % len;
  words_[(f / len) * wpr_ + (k >> 6)] &= ~(std::uint64_t{1} << (k & 63));
}

void VoxelSet::set_run(std::int64_t row, std::int64_t lo, std::int64_t hi) {
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min<std::int64_t>(hi, grid_.row_length() - 1);
  if (lo > hi) return;
  std::uint64_t* w = words_.data() + row * wpr_;
  const std::int64_t wl = lo >> 6, wh = hi >> 6;
  const std::uint64_t ml = ~std::uint64_t{0} << (lo & 63);
  const std::uint64_t mh = ~std::uint64_t{0} >> (63 - (hi & 63));
  if (wl == wh) {
    w[wl] |= ml & mh;
    return;
  }
  w[wl] |= ml;
  for (std::int64_t i = wl + 1; i < wh; ++i) w[i] = ~std::uint64_t{0};
  w[wh] |= mh;
}

std::int64_t VoxelSet::count() const {
  std::int64_t c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

void VoxelSet::require_same(const VoxelSet& o) const {
  if (grid_ != o.grid_) throw Error(ErrorCode::GridMismatch, "voxel sets live on different grids");
}

VoxelSet& VoxelSet::operator|=(const VoxelSet& o) {
  require_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

VoxelSet& VoxelSet::operator&=(const VoxelSet& o) {
  require_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

VoxelSet& VoxelSet::subtract(const VoxelSet& o) {
  require_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

VoxelSet VoxelSet::complement() const {
  VoxelSet out(grid_);
  for (std::int64_t r = 0; r < grid_.row_count(); ++r) out.set_run(r, 0, grid_.row_length() - 1);
  out.subtract(*this);
  return out;
}

bool VoxelSet::operator==(const VoxelSet& o) const { return grid_ == o.grid_ && words_ == o.words_; }

Vector Stencil::displacement(std::size_t i) const {
  Vector d(dimension);
  for (int k = 0; k < dimension; ++k) d[k] = static_cast<double>(offsets[i * dimension + k]) * spacing;
  return d;
}

VoxelSet rasterize(const Shape& s, const Grid& g, RasterMode mode) {
  if (s.dimension() != g.dimension()) throw Error(ErrorCode::DimensionMismatch, "shape and grid dimensions differ");
  VoxelSet v(g);
  const int n = g.dimension();
  const std::int64_t len = g.row_length();
  std::vector<double> x(n);
  if (!s.null_mass()) {
    for (std::int64_t r = 0; r < g.row_count(); ++r) {
      const auto p = row_prefix(g, r);
      for (int i = 0; i + 1 < n; ++i) x[i] = g.center_coord(i, p[i]);
      for (std::int64_t k = 0; k < len; ++k) {
        x[n - 1] = g.center_coord(n - 1, k);
        if (s.contains(x.data())) v.set_row(r, k);
      }
    }
  }
  if (mode == RasterMode::supercover) {
    const Domain whole = Domain::whole(g.extent());
    v |= rasterize_mesh(boundary_mesh(s, whole, kDefaultRefinement, false), g);
  }
  return v;
}

VoxelSet rasterize_mesh(const BoundaryMesh& mesh, const Grid& g) {
  if (!mesh.facets.empty() && mesh.dimension != g.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "mesh and grid dimensions differ");
  }
  VoxelSet v(g);
  for (const MeshFacet& f : mesh.facets) {
    if (f.points.size() == 1) {
      mark_point(v, f.points[0]);
    } else if (f.points.size() == 2) {
      mark_segment(v, f.points[0], f.points[1]);
    } else if (f.points.size() == 3) {
      mark_triangle(v, f.points);
    }
  }
  return v;
}

double measure(const VoxelSet& v) { return static_cast<double>(v.count()) * v.grid().cell_volume(); }

Stencil build_stencil(const ConvexBody& c, double eps, const Grid& g, bool closed, std::size_t cap) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "stencil eps must be positive");
  if (c.dimension() != g.dimension()) throw Error(ErrorCode::DimensionMismatch, "body and grid dimensions differ");
  const int n = g.dimension();
  const double h = g.spacing();
  const ContainmentConstants k = containment_constants(c);
  const double reach = std::floor(eps / (k.a * h)) + 1.0;
  double box = 1.0;
  for (int i = 0; i < n; ++i) box *= 2.0 * reach + 1.0;
  if (reach > 1e7 || box > 8.0 * static_cast<double>(cap)) {
    throw Error(ErrorCode::StencilTooLarge, "eps/h too large for the stencil cap");
  }
  const auto r = static_cast<std::int64_t>(reach);
  Stencil st;
  st.dimension = n;
  st.spacing = h;
  st.eps = eps;
  st.closed = closed;
  st.body = c.describe();
  const GaugeKernel gauge(c);
  std::vector<double> disp(n);
  std::vector<std::int64_t> lo(n, -r), hi(n, r);
  for (BoxIter it(lo, hi); !it.done; it.next()) {
    for (int i = 0; i < n; ++i) disp[i] = static_cast<double>(it.cur[i]) * h;
    const double gv = gauge(disp.data());
    if (closed ? gv <= eps : gv < eps) {
      st.offsets.insert(st.offsets.end(), it.cur.begin(), it.cur.end());
      if (st.offsets.size() / n > cap) throw Error(ErrorCode::StencilTooLarge, "stencil exceeds the offset cap");
    }
  }
  // Offsets come in odometer order, so equal prefixes are contiguous.
  for (std::size_t i = 0; i < st.size(); ++i) {
    const std::int64_t* o = st.offsets.data() + i * n;
    std::vector<std::int64_t> prefix(o, o + n - 1);
    const std::int64_t last = o[n - 1];
    if (!st.runs.empty() && st.runs.back().prefix == prefix && st.runs.back().hi + 1 == last) {
      st.runs.back().hi = last;
    } else {
      st.runs.push_back({std::move(prefix), last, last});
    }
  }
  return st;
}

VoxelSet dilate(const VoxelSet& v, const Stencil& st) {
  const Grid& g = v.grid();
  if (st.dimension != g.dimension() || st.spacing != g.spacing()) {
    throw Error(ErrorCode::GridMismatch, "stencil was built for another grid");
  }
  const int n = g.dimension();
  VoxelSet out(g);
  std::vector<std::int64_t> target(n > 1 ? n - 1 : 0);
  for (std::int64_t r = 0; r < g.row_count(); ++r) {
    const auto p = row_prefix(g, r);
    std::vector<std::pair<std::int64_t, std::int64_t>> runs;
    v.for_each_run(r, [&](std::int64_t a, std::int64_t b) { runs.emplace_back(a, b); });
    if (runs.empty()) continue;
    for (const Stencil::Run& sr : st.runs) {
      bool inside = true;
      std::int64_t row = 0;
      for (int i = 0; i + 1 < n; ++i) {
        target[i] = p[i] + sr.prefix[i];
        if (target[i] < 0 || target[i] >= g.counts()[i]) {
          inside = false;
          break;
        }
        row = row * g.counts()[i] + target[i];
      }
      if (!inside) continue;
      for (const auto& [a, b] : runs) out.set_run(row, a + sr.lo, b + sr.hi);
    }
  }
  return out;
}

ScalarField distance_field(const VoxelSet& seed, const ConvexBody& c, DistanceMethod method, int chamfer_radius) {
  const Grid& g = seed.grid();
  if (c.dimension() != g.dimension()) throw Error(ErrorCode::DimensionMismatch, "body and grid dimensions differ");
  if (seed.empty()) throw Error(ErrorCode::EmptySeed, "distance field needs a nonempty seed");
  const int n = g.dimension();
  const double h = g.spacing();
  const GaugeKernel gauge(c);
  const std::int64_t total = g.cell_count();
  ScalarField f{g, std::vector<double>(static_cast<std::size_t>(total), kInf)};
  std::vector<std::int64_t> idx(n), sidx(n);
  std::vector<double> disp(n);

  if (method == DistanceMethod::brute) {
    std::vector<std::int64_t> seeds;
    for (std::int64_t i = 0; i < total; ++i) {
      if (!seed.test(i)) continue;
      g.unflat(i, idx.data());
      seeds.insert(seeds.end(), idx.begin(), idx.end());
    }
    const std::size_t ns = seeds.size() / n;
    for (std::int64_t i = 0; i < total; ++i) {
      if (seed.test(i)) {
        f.values[i] = 0.0;
        continue;
      }
      g.unflat(i, idx.data());
      double best = kInf;
      for (std::size_t s = 0; s < ns; ++s) {
        for (int k = 0; k < n; ++k) disp[k] = static_cast<double>(idx[k] - seeds[s * n + k]) * h;
        best = std::min(best, gauge(disp.data()));
      }
      f.values[i] = best;
    }
    return f;
  }

  if (chamfer_radius < 1) throw Error(ErrorCode::InvalidArgument, "chamfer radius must be positive");
  struct Step {
    std::vector<std::int64_t> o;
    std::int64_t delta;  // flat index difference
    double w;
  };
  std::vector<Step> forward, backward;
  std::vector<std::int64_t> lo(n, -chamfer_radius), hi(n, chamfer_radius);
  for (BoxIter it(lo, hi); !it.done; it.next()) {
    int first = 0;
    for (int k = 0; k < n && first == 0; ++k) first = it.cur[k] > 0 ? 1 : (it.cur[k] < 0 ? -1 : 0);
    if (first == 0) continue;
    for (int k = 0; k < n; ++k) disp[k] = static_cast<double>(it.cur[k]) * h;
    Step s{it.cur, 0, gauge(disp.data())};
    std::int64_t stride = 1;
    for (int k = n - 1; k >= 0; --k) {
      s.delta += it.cur[k] * stride;
      stride *= g.counts()[k];
    }
    (first > 0 ? forward : backward).push_back(std::move(s));
  }
  for (std::int64_t i = 0; i < total; ++i) {
    if (seed.test(i)) f.values[i] = 0.0;
  }
  auto relax = [&](std::int64_t i, const std::vector<Step>& steps) {
    g.unflat(i, idx.data());
    double best = f.values[i];
    for (const Step& s : steps) {
      bool ok = true;
      for (int k = 0; k < n; ++k) {
        const std::int64_t q = idx[k] - s.o[k];
        if (q < 0 || q >= g.counts()[k]) {
          ok = false;
          break;
        }
      }
      if (ok) best = std::min(best, f.values[i - s.delta] + s.w);
    }
    f.values[i] = best;
  };
  for (std::int64_t i = 0; i < total; ++i) relax(i, forward);
  for (std::int64_t i = total; i-- > 0;) relax(i, backward);
  return f;
}

VoxelSet threshold_below(const ScalarField& f, double eps, bool strict) {
  VoxelSet v(f.grid);
  for (std::int64_t i = 0; i < f.grid.cell_count(); ++i) {
    const double x = f.values[i];
    if (strict ? x < eps : x <= eps) v.set(i);
  }
  return v;
}

VoxelSet boundary_voxels(const VoxelSet& v) {
  const Grid& g = v.grid();
  const int n = g.dimension();
  VoxelSet out(g);
  std::vector<std::int64_t> idx(n);
  for (std::int64_t i = 0; i < g.cell_count(); ++i) {
    const bool in = v.test(i);
    g.unflat(i, idx.data());
    bool edge = false;
    for (int k = 0; k < n && !edge; ++k) {
      for (int s : {-1, 1}) {
        const std::int64_t save = idx[k];
        idx[k] += s;
        if (idx[k] >= 0 && idx[k] < g.counts()[k] && v.test(g.flat(idx.data())) != in) edge = true;
        idx[k] = save;
        if (edge) break;
      }
    }
    if (edge) out.set(i);
  }
  return out;
}

void write_field_binary(std::ostream& os, const ScalarField& f, const std::string& body, const std::string& method) {
  const Grid& g = f.grid;
  os << "minklab-field v1 dim=" << g.dimension() << " counts=";
  for (int i = 0; i < g.dimension(); ++i) os << (i ? "," : "") << g.counts()[i];
  std::ostringstream sp;
  sp.precision(17);
  sp << g.spacing();
  os << " origin=" << join(g.origin()) << " spacing=" << sp.str() << " body=" << body << " method=" << method
     << "\n";
  for (double v : f.values) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    char buf[8];
    for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    os.write(buf, 8);
  }
}

void write_field_csv(std::ostream& os, const ScalarField& f) {
  const Grid& g = f.grid;
  const int n = g.dimension();
  for (int i = 0; i < n; ++i) os << "i" << i << ",";
  os << "value\n";
  std::vector<std::int64_t> idx(n);
  char buf[64];
  for (std::int64_t c = 0; c < g.cell_count(); ++c) {
    g.unflat(c, idx.data());
    for (int i = 0; i < n; ++i) os << idx[i] << ",";
    std::snprintf(buf, sizeof buf, "%.17g", f.values[c]);
    os << buf << "\n";
  }
}

}  // namespace minklab
