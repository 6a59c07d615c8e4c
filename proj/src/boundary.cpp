#include "minklab/boundary.hpp"

#include "minklab/error.hpp"

#include <cmath>
#include <ostream>

namespace minklab {

namespace {

constexpr double kClassTol = 0.05;

DensityClass classify(double theta) {
  if (theta <= kClassTol) return DensityClass::density0;
  if (theta >= 1.0 - kClassTol) return DensityClass::density1;
  if (std::abs(theta - 0.5) <= kClassTol) return DensityClass::half;
  return DensityClass::other;
}

double raster_ratio(const Shape& e, const Vector& x, double r, int samples) {
  const int n = e.dimension();
  const int s = n == 3 ? std::min(samples, 64) : samples;
  const double step = 2.0 * r / s;
  std::vector<int> idx(n, 0);
  Vector p(n);
  std::int64_t in_ball = 0, in_e = 0;
  while (true) {
    double rr = 0.0;
    for (int i = 0; i < n; ++i) {
      const double off = -r + (idx[i] + 0.5) * step;
      p[i] = x[i] + off;
      rr += off * off;
    }
    if (rr <= r * r) {
      ++in_ball;
      if (e.contains(p)) ++in_e;
    }
    int axis = n - 1;
    for (; axis >= 0; --axis) {
      if (++idx[axis] < s) break;
      idx[axis] = 0;
    }
    if (axis < 0) break;
  }
  return in_ball ? static_cast<double>(in_e) / static_cast<double>(in_ball) : 0.0;
}

}  // namespace

std::string_view to_string(DensityClass c) {
  switch (c) {
    case DensityClass::density0: return "density0";
    case DensityClass::density1: return "density1";
    case DensityClass::half: return "half";
    case DensityClass::other: return "other";
  }
  return "?";
}

std::string_view to_string(VoxelLabel l) {
  switch (l) {
    case VoxelLabel::E0: return "E0";
    case VoxelLabel::E1: return "E1";
    case VoxelLabel::essential: return "essential";
  }
  return "?";
}

std::vector<double> default_radii(double r0, int points) {
  if (!(r0 > 0.0) || points < 1) throw Error(ErrorCode::InvalidArgument, "radii need r0 > 0 and points >= 1");
  std::vector<double> out;
  for (int k = 0; k < points; ++k) out.push_back(std::ldexp(r0, -k));
  return out;
}

DensityEstimate density_estimate(const Shape& e, const Vector& x, const std::vector<double>& radii,
                                 const std::optional<AxisBox>& window, int samples) {
  if (x.size() != e.dimension()) throw Error(ErrorCode::DimensionMismatch, "density point");
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "density needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "radii must be positive");
    if (i && !(radii[i] < radii[i - 1])) throw Error(ErrorCode::InvalidArgument, "radii must decrease");
  }
  if (window) {
    const AxisBox ball{x.array() - radii.front(), x.array() + radii.front()};
    if ((ball.lo.array() < window->lo.array()).any() || (ball.hi.array() > window->hi.array()).any()) {
      throw Error(ErrorCode::OutOfWindow, "density ball leaves the window");
    }
  }
  DensityEstimate est{x, radii, {}, 0.0, DensityClass::other};
  if (e.dimension() == 1) {
    const IntervalSet s = to_interval_set(e);
    for (double r : radii) {
      est.ratios.push_back(s.intersect(IntervalSet::open(x[0] - r, x[0] + r)).measure() / (2.0 * r));
    }
  } else {
    for (double r : radii) est.ratios.push_back(raster_ratio(e, x, r, samples));
  }
  const std::size_t tail = std::min<std::size_t>(3, est.ratios.size());
  for (std::size_t i = est.ratios.size() - tail; i < est.ratios.size(); ++i) est.theta += est.ratios[i];
  est.theta /= static_cast<double>(tail);
  est.classification = classify(est.theta);
  return est;
}

BoundaryMesh reduced_boundary(const Shape& e, const Domain& d, int refinement) {
  if (e.dimension() > 3) throw Error(ErrorCode::UnsupportedDimension, "reduced boundary needs n <= 3");
  return boundary_mesh(e, d, refinement).reduced_only();
}

std::vector<VoxelLabel> classify_voxels(const VoxelSet& e, const std::vector<int>& radii_in_cells) {
  if (radii_in_cells.empty()) throw Error(ErrorCode::InvalidArgument, "classification needs radii");
  const Grid& g = e.grid();
  const int n = g.dimension();
  std::vector<std::vector<std::int64_t>> balls;
  for (int r : radii_in_cells) {
    if (r < 1) throw Error(ErrorCode::InvalidArgument, "radii must be at least one cell");
    std::vector<std::int64_t> offs;
    std::vector<std::int64_t> o(n, -r);
    while (true) {
      std::int64_t rr = 0;
      for (std::int64_t v : o) rr += v * v;
      if (rr <= static_cast<std::int64_t>(r) * r) offs.insert(offs.end(), o.begin(), o.end());
      int axis = n - 1;
      for (; axis >= 0; --axis) {
        if (++o[axis] <= r) break;
        o[axis] = -r;
      }
      if (axis < 0) break;
    }
    balls.push_back(std::move(offs));
  }
  std::vector<VoxelLabel> labels(static_cast<std::size_t>(g.cell_count()));
  std::vector<std::int64_t> idx(n), q(n);
  for (std::int64_t c = 0; c < g.cell_count(); ++c) {
    g.unflat(c, idx.data());
    double sum = 0.0;
    for (const auto& offs : balls) {
      std::int64_t total = 0, hit = 0;
      for (std::size_t k = 0; k < offs.size(); k += n) {
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          q[i] = idx[i] + offs[k + i];
          if (q[i] < 0 || q[i] >= g.counts()[i]) ok = false;
        }
        if (!ok) continue;
        ++total;
        if (e.test(g.flat(q.data()))) ++hit;
      }
      sum += total ? static_cast<double>(hit) / static_cast<double>(total) : 0.0;
    }
    const double ratio = sum / static_cast<double>(balls.size());
    labels[c] = ratio <= kClassTol ? VoxelLabel::E0 : ratio >= 1.0 - kClassTol ? VoxelLabel::E1 : VoxelLabel::essential;
  }
  return labels;
}

void write_labels_csv(std::ostream& os, const Grid& g, const std::vector<VoxelLabel>& labels) {
  const int n = g.dimension();
  for (int i = 0; i < n; ++i) os << "i" << i << ",";
  os << "label\n";
  std::vector<std::int64_t> idx(n);
  for (std::int64_t c = 0; c < g.cell_count(); ++c) {
    g.unflat(c, idx.data());
    for (int i = 0; i < n; ++i) os << idx[i] << ",";
    os << to_string(labels[c]) << "\n";
  }
}

Shape density_one_shape(const Shape& e) { return Shape::intervals(to_interval_set(e).density_one()); }

Shape density_zero_shape(const Shape& e) { return Shape::intervals(to_interval_set(e).density_zero()); }

}  // namespace minklab
