#include "minklab/shape.hpp"

#include "minklab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <tuple>

namespace minklab {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

enum class Local { interior, boundary, exterior };

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double dist_to_segment(const double* x, const Vector& a, const Vector& b) {
  const Eigen::Index n = a.size();
  double dd = 0.0, t = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = b[i] - a[i];
    dd += d * d;
    t += (x[i] - a[i]) * d;
  }
  t = dd > 0.0 ? std::clamp(t / dd, 0.0, 1.0) : 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = x[i] - (a[i] + t * (b[i] - a[i]));
    s += d * d;
  }
  return std::sqrt(s);
}

double dist_to_point(const double* x, const Vector& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) s += (x[i] - p[i]) * (x[i] - p[i]);
  return std::sqrt(s);
}

Local eval_leaf(const ShapeNode& n, const double* x) {
  switch (n.op) {
    case ShapeOp::ball: {
      const double d = dist_to_point(x, n.center);
      const double tol = kRelTol * std::max(1.0, n.radius);
      if (std::abs(d - n.radius) <= tol) return Local::boundary;
      return d < n.radius ? Local::interior : Local::exterior;
    }
    case ShapeOp::box: {
      bool strict = true;
      for (int i = 0; i < n.dim; ++i) {
        const double tol = kRelTol * std::max({1.0, std::abs(n.lo[i]), std::abs(n.hi[i])});
        if (x[i] < n.lo[i] - tol || x[i] > n.hi[i] + tol) return Local::exterior;
        if (x[i] <= n.lo[i] + tol || x[i] >= n.hi[i] - tol) strict = false;
      }
      return strict ? Local::interior : Local::boundary;
    }
    case ShapeOp::polygon: {
      const Vec2 p(x[0], x[1]);
      const std::size_t m = n.loop.size();
      double scale = 1.0;
      for (const Vec2& v : n.loop) scale = std::max(scale, v.cwiseAbs().maxCoeff());
      const double tol = kRelTol * scale;
      bool inside = false;
      for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Vec2& a = n.loop[j];
        const Vec2& b = n.loop[i];
        const Vec2 ab = b - a;
        const double len2 = ab.squaredNorm();
        const double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        if ((p - (a + t * ab)).norm() <= tol) return Local::boundary;
        if ((a.y() > p.y()) != (b.y() > p.y())) {
          const double xc = a.x() + (p.y() - a.y()) * ab.x() / ab.y();
          if (p.x() < xc) inside = !inside;
        }
      }
      return inside ? Local::interior : Local::exterior;
    }
    case ShapeOp::points: {
      for (const Vector& q : n.pts) {
        const double tol = kRelTol * std::max(1.0, q.cwiseAbs().maxCoeff());
        if (dist_to_point(x, q) <= tol) return Local::boundary;
      }
      return Local::exterior;
    }
    case ShapeOp::segments: {
      for (const auto& [a, b] : n.segs) {
        const double tol = kRelTol * std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
        if (dist_to_segment(x, a, b) <= tol) return Local::boundary;
      }
      return Local::exterior;
    }
    case ShapeOp::intervals: {
      if (std::binary_search(n.cuts.begin(), n.cuts.end(), x[0])) return Local::boundary;
      return n.intervals.contains(x[0]) ? Local::interior : Local::exterior;
    }
    default:
      break;
  }
  return Local::exterior;
}

bool eval_contains(const ShapeNode& n, const double* x) {
  switch (n.op) {
    case ShapeOp::unite: return eval_contains(*n.left, x) || eval_contains(*n.right, x);
    case ShapeOp::intersect: return eval_contains(*n.left, x) && eval_contains(*n.right, x);
    case ShapeOp::subtract: return eval_contains(*n.left, x) && !eval_contains(*n.right, x);
    case ShapeOp::intervals: return n.intervals.contains(x[0]);
    case ShapeOp::points:
    case ShapeOp::segments: return eval_leaf(n, x) == Local::boundary;
    default: {
      const Local l = eval_leaf(n, x);
      return l == Local::interior || (l == Local::boundary && n.closed);
    }
  }
}

bool eval_on_boundary(const ShapeNode& n, const double* x) {
  switch (n.op) {
    case ShapeOp::unite:
    case ShapeOp::intersect:
    case ShapeOp::subtract: return eval_on_boundary(*n.left, x) || eval_on_boundary(*n.right, x);
    default: return eval_leaf(n, x) == Local::boundary;
  }
}

bool eval_null(const ShapeNode& n) {
  switch (n.op) {
    case ShapeOp::points:
    case ShapeOp::segments: return true;
    case ShapeOp::intervals: {
      for (const Interval& p : n.intervals.components()) {
        if (!p.degenerate()) return false;
      }
      return true;
    }
    case ShapeOp::unite: return eval_null(*n.left) && eval_null(*n.right);
    case ShapeOp::intersect: return eval_null(*n.left) || eval_null(*n.right);
    case ShapeOp::subtract: return eval_null(*n.left);
    default: return false;
  }
}

AxisBox eval_bbox(const ShapeNode& n) {
  const int d = n.dim;
  AxisBox box{Vector::Constant(d, kInf), Vector::Constant(d, -kInf)};
  auto grow = [&](const Vector& p) {
    box.lo = box.lo.cwiseMin(p);
    box.hi = box.hi.cwiseMax(p);
  };
  switch (n.op) {
    case ShapeOp::ball:
      return {n.center.array() - n.radius, n.center.array() + n.radius};
    case ShapeOp::box: return {n.lo, n.hi};
    case ShapeOp::polygon:
      for (const Vec2& v : n.loop) grow(Vector(v));
      return box;
    case ShapeOp::points:
      for (const Vector& p : n.pts) grow(p);
      return box;
    case ShapeOp::segments:
      for (const auto& [a, b] : n.segs) {
        grow(a);
        grow(b);
      }
      return box;
    case ShapeOp::intervals: {
      const auto& parts = n.intervals.components();
      if (parts.empty()) return box;
      box.lo[0] = parts.front().lo;
      box.hi[0] = parts.back().hi;
      return box;
    }
    case ShapeOp::unite: {
      const AxisBox a = eval_bbox(*n.left);
      const AxisBox b = eval_bbox(*n.right);
      return {a.lo.cwiseMin(b.lo), a.hi.cwiseMax(b.hi)};
    }
    case ShapeOp::intersect: {
      const AxisBox a = eval_bbox(*n.left);
      const AxisBox b = eval_bbox(*n.right);
      return {a.lo.cwiseMax(b.lo), a.hi.cwiseMin(b.hi)};
    }
    case ShapeOp::subtract: return eval_bbox(*n.left);
  }
  return box;
}

std::vector<Vector> probe_directions(int dim) {
  std::vector<Vector> dirs;
  if (dim == 1) {
    dirs.push_back(Vector::Constant(1, 1.0));
    dirs.push_back(Vector::Constant(1, -1.0));
  } else if (dim == 2) {
    for (int k = 0; k < 16; ++k) {
      const double a = 2.0 * std::numbers::pi * (k + 0.37) / 16.0;
      Vector v(2);
      v << std::cos(a), std::sin(a);
      dirs.push_back(v);
    }
  } else {
    for (int i = 0; i < dim; ++i) {
      Vector e = Vector::Zero(dim);
      e[i] = 1.0;
      dirs.push_back(e);
      dirs.push_back(-e);
    }
    for (unsigned mask = 0; mask < (1u << dim) && mask < 64; ++mask) {
      Vector v(dim);
      for (int i = 0; i < dim; ++i) v[i] = (mask >> i) & 1u ? 1.0 : -1.0;
      dirs.push_back(v.normalized());
    }
  }
  return dirs;
}

// ---------------------------------------------------------------------------
// 2-D boundary extraction

struct Curve2 {
  bool circle = false;
  Vec2 a, b;            // segment endpoints
  Vec2 c;               // circle centre
  double r = 0.0;       // circle radius
  bool oriented = true; // false for lambda-null segments
  Vec2 outward;         // leaf-outward normal of an oriented segment
};

void collect_curves_2d(const ShapeNode& n, std::vector<Curve2>& curves, std::vector<Vec2>& isolated) {
  auto add_edge = [&](const Vec2& a, const Vec2& b) {
    const Vec2 d = b - a;
    if (d.norm() == 0.0) return;
    Curve2 c;
    c.a = a;
    c.b = b;
    c.outward = Vec2(d.y(), -d.x()).normalized();
    curves.push_back(c);
  };
  switch (n.op) {
    case ShapeOp::ball: {
      Curve2 c;
      c.circle = true;
      c.c = Vec2(n.center[0], n.center[1]);
      c.r = n.radius;
      curves.push_back(c);
      break;
    }
    case ShapeOp::box: {
      const Vec2 p0(n.lo[0], n.lo[1]), p1(n.hi[0], n.lo[1]), p2(n.hi[0], n.hi[1]), p3(n.lo[0], n.hi[1]);
      add_edge(p0, p1);
      add_edge(p1, p2);
      add_edge(p2, p3);
      add_edge(p3, p0);
      break;
    }
    case ShapeOp::polygon:
      for (std::size_t i = 0; i < n.loop.size(); ++i) add_edge(n.loop[i], n.loop[(i + 1) % n.loop.size()]);
      break;
    case ShapeOp::segments:
      for (const auto& [a, b] : n.segs) {
        Curve2 c;
        c.a = Vec2(a[0], a[1]);
        c.b = Vec2(b[0], b[1]);
        c.oriented = false;
        const Vec2 d = c.b - c.a;
        if (d.norm() == 0.0) {
          isolated.push_back(c.a);
          continue;
        }
        c.outward = Vec2(d.y(), -d.x()).normalized();
        curves.push_back(c);
      }
      break;
    case ShapeOp::points:
      for (const Vector& p : n.pts) isolated.emplace_back(p[0], p[1]);
      break;
    case ShapeOp::intervals:
      throw Error(ErrorCode::UnsupportedDimension, "interval leaves are one-dimensional");
    case ShapeOp::unite:
    case ShapeOp::intersect:
    case ShapeOp::subtract:
      collect_curves_2d(*n.left, curves, isolated);
      collect_curves_2d(*n.right, curves, isolated);
      break;
  }
}

// Parameters t in [0, 1] where segment s meets curve o.
void segment_hits(const Curve2& s, const Curve2& o, double tol, std::vector<double>& out) {
  const Vec2 d = s.b - s.a;
  const double dd = d.squaredNorm();
  if (o.circle) {
    const Vec2 f = s.a - o.c;
    const double b = 2.0 * d.dot(f);
    const double c = f.squaredNorm() - o.r * o.r;
    const double disc = b * b - 4.0 * dd * c;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    for (double t : {(-b - sq) / (2.0 * dd), (-b + sq) / (2.0 * dd)}) {
      if (t > 0.0 && t < 1.0) out.push_back(t);
    }
    return;
  }
  const Vec2 e = o.b - o.a;
  const double denom = cross2(d, e);
  const Vec2 w = o.a - s.a;
  if (std::abs(denom) > 1e-14 * std::sqrt(dd) * e.norm()) {
    const double t = cross2(w, e) / denom;
    const double u = cross2(w, d) / denom;
    if (t > 0.0 && t < 1.0 && u >= -1e-12 && u <= 1.0 + 1e-12) out.push_back(t);
    return;
  }
  // Parallel: split at the other segment's endpoints when collinear.
  if (std::abs(cross2(w, d)) <= tol * std::sqrt(dd)) {
    for (const Vec2& p : {o.a, o.b}) {
      const double t = (p - s.a).dot(d) / dd;
      if (t > 0.0 && t < 1.0) out.push_back(t);
    }
  }
}

// Angles where circle s meets curve o.
void circle_hits(const Curve2& s, const Curve2& o, std::vector<double>& out) {
  auto angle_of = [&](const Vec2& p) {
    double a = std::atan2(p.y() - s.c.y(), p.x() - s.c.x());
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
  };
  if (!o.circle) {
    const Vec2 d = o.b - o.a;
    const double dd = d.squaredNorm();
    const Vec2 f = o.a - s.c;
    const double b = 2.0 * d.dot(f);
    const double c = f.squaredNorm() - s.r * s.r;
    const double disc = b * b - 4.0 * dd * c;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    for (double t : {(-b - sq) / (2.0 * dd), (-b + sq) / (2.0 * dd)}) {
      if (t >= 0.0 && t <= 1.0) out.push_back(angle_of(o.a + t * d));
    }
    return;
  }
  const Vec2 delta = o.c - s.c;
  const double dist = delta.norm();
  if (dist == 0.0) return;
  if (dist > s.r + o.r || dist < std::abs(s.r - o.r)) return;
  const double a = (s.r * s.r - o.r * o.r + dist * dist) / (2.0 * dist);
  const double h = std::sqrt(std::max(0.0, s.r * s.r - a * a));
  const Vec2 u = delta / dist;
  const Vec2 perp(-u.y(), u.x());
  out.push_back(angle_of(s.c + a * u + h * perp));
  out.push_back(angle_of(s.c + a * u - h * perp));
}

struct Classified {
  bool keep = false;
  FacetKind kind = FacetKind::reduced;
  double sign = 1.0;  // multiply the probe normal by this
};

template <class Contains>
Classified classify_piece(const Contains& contains, const Vector& mid, const Vector& nu, double delta) {
  const bool on = contains(mid);
  const bool out = contains(Vector(mid + delta * nu));
  const bool in = contains(Vector(mid - delta * nu));
  Classified c;
  if (in && !out) {
    c.keep = true;
  } else if (!in && out) {
    c.keep = true;
    c.sign = -1.0;
  } else if (on != in) {
    c.keep = true;
    c.kind = FacetKind::topological_only;
  }
  return c;
}

class FacetDeduper {
 public:
  explicit FacetDeduper(double quantum) : q_(quantum) {}

  // Returns false if a facet with (nearly) this midpoint was seen.
  bool insert(const Vector& m) {
    std::array<long long, 3> key{0, 0, 0};
    for (Eigen::Index i = 0; i < m.size() && i < 3; ++i) key[i] = std::llround(m[i] / q_);
    const int dim = static_cast<int>(m.size());
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = (dim > 1 ? -1 : 0); dy <= (dim > 1 ? 1 : 0); ++dy) {
        for (int dz = (dim > 2 ? -1 : 0); dz <= (dim > 2 ? 1 : 0); ++dz) {
          if (seen_.count({key[0] + dx, key[1] + dy, key[2] + dz})) return false;
        }
      }
    }
    seen_.insert(key);
    return true;
  }

 private:
  double q_;
  std::set<std::array<long long, 3>> seen_;
};

void isolated_point_facets(const Shape& s, const Domain& d, bool clip, const std::vector<Vector>& pts,
                           double delta, BoundaryMesh& mesh) {
  const auto dirs = probe_directions(s.dimension());
  FacetDeduper dedup(1e-9 * s.scale());
  for (const Vector& p : pts) {
    const bool in = s.contains(p);
    bool uniform = true;
    bool probe_state = false;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const bool v = s.contains(Vector(p + delta * dirs[k]));
      if (k == 0) probe_state = v;
      if (v != probe_state) {
        uniform = false;
        break;
      }
    }
    if (!uniform || probe_state == in) continue;
    if (clip && !d.contains(p)) continue;
    if (!dedup.insert(p)) continue;
    mesh.facets.push_back({{p}, Vector::Zero(s.dimension()), 0.0, FacetKind::topological_only});
  }
}

BoundaryMesh mesh_1d(const Shape& s, const Domain& d, bool clip) {
  BoundaryMesh mesh;
  mesh.dimension = 1;
  const IntervalSet e = to_interval_set(s);
  const IntervalSet omega = domain_interval_set(d);
  const IntervalSet topo = e.boundary();
  for (double p : e.breakpoints()) {
    if (!topo.contains(p)) continue;
    if (clip && !omega.contains(p)) continue;
    const bool left = e.dense_left_of(p);
    const bool right = e.dense_right_of(p);
    Vector pt = Vector::Constant(1, p);
    if (left != right) {
      mesh.facets.push_back({{pt}, Vector::Constant(1, left ? 1.0 : -1.0), 1.0, FacetKind::reduced});
    } else {
      mesh.facets.push_back({{pt}, Vector::Zero(1), 0.0, FacetKind::topological_only});
    }
  }
  return mesh;
}

BoundaryMesh mesh_2d(const Shape& s, const Domain& d, int refinement, bool clip) {
  BoundaryMesh mesh;
  mesh.dimension = 2;
  std::vector<Curve2> curves;
  std::vector<Vec2> isolated;
  collect_curves_2d(s.node(), curves, isolated);
  const std::size_t subject_count = curves.size();
  if (clip && d.region()) {
    std::vector<Vec2> ignored;
    collect_curves_2d(d.region()->node(), curves, ignored);
  }

  const double scale = std::max(s.scale(), d.region() ? d.region()->scale() : 1.0);
  const double tol = 1e-12 * scale;
  const double probe = 1e-7 * scale;
  const double min_piece = 1e-13 * scale;
  FacetDeduper dedup(1e-9 * scale);
  auto contains = [&](const Vector& x) { return s.contains(x); };

  auto emit = [&](const Vec2& p0, const Vec2& p1, const Vec2& mid, const Vec2& nu, double measure) {
    const Vector m(mid);
    const double delta = std::min(probe, 0.25 * measure);
    const Classified c = classify_piece(contains, m, Vector(nu), delta);
    if (!c.keep) return;
    if (clip && !d.contains(m)) return;
    if (!dedup.insert(m)) return;
    mesh.facets.push_back({{Vector(p0), Vector(p1)}, Vector(c.sign * nu), measure, c.kind});
  };

  for (std::size_t i = 0; i < subject_count; ++i) {
    const Curve2& cur = curves[i];
    if (!cur.circle) {
      std::vector<double> ts{0.0, 1.0};
      for (std::size_t j = 0; j < curves.size(); ++j) {
        if (j != i) segment_hits(cur, curves[j], tol, ts);
      }
      std::sort(ts.begin(), ts.end());
      const Vec2 dvec = cur.b - cur.a;
      const double len = dvec.norm();
      for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const double piece = (ts[k + 1] - ts[k]) * len;
        if (piece <= min_piece) continue;
        const Vec2 p0 = cur.a + ts[k] * dvec;
        const Vec2 p1 = cur.a + ts[k + 1] * dvec;
        emit(p0, p1, 0.5 * (p0 + p1), cur.outward, piece);
      }
      continue;
    }
    const int steps = std::max(8, refinement);
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(steps) + 8);
    for (int k = 0; k < steps; ++k) angles.push_back(2.0 * std::numbers::pi * k / steps);
    for (std::size_t j = 0; j < curves.size(); ++j) {
      if (j != i) circle_hits(cur, curves[j], angles);
    }
    std::sort(angles.begin(), angles.end());
    for (std::size_t k = 0; k < angles.size(); ++k) {
      const double a0 = angles[k];
      const double a1 = k + 1 < angles.size() ? angles[k + 1] : angles.front() + 2.0 * std::numbers::pi;
      const double piece = (a1 - a0) * cur.r;
      if (piece <= min_piece) continue;
      const double am = 0.5 * (a0 + a1);
      const Vec2 dir(std::cos(am), std::sin(am));
      const Vec2 p0 = cur.c + cur.r * Vec2(std::cos(a0), std::sin(a0));
      const Vec2 p1 = cur.c + cur.r * Vec2(std::cos(a1), std::sin(a1));
      emit(p0, p1, cur.c + cur.r * dir, dir, piece);
    }
  }

  std::vector<Vector> pts;
  for (const Vec2& p : isolated) pts.emplace_back(p);
  isolated_point_facets(s, d, clip, pts, probe, mesh);
  return mesh;
}

struct Patch3 {
  Vec3 center;  // on the true surface
  Vec3 normal;  // leaf-outward
  double area;
  std::array<Vec3, 4> corners;
};

void collect_patches_3d(const ShapeNode& n, int refinement, std::vector<Patch3>& patches,
                        std::vector<Vector>& isolated) {
  switch (n.op) {
    case ShapeOp::ball: {
      const int nphi = std::max(8, refinement);
      const int ntheta = std::max(4, refinement / 2);
      const Vec3 c(n.center[0], n.center[1], n.center[2]);
      auto at = [&](double th, double ph) {
        return Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
      };
      for (int i = 0; i < ntheta; ++i) {
        const double t0 = std::numbers::pi * i / ntheta;
        const double t1 = std::numbers::pi * (i + 1) / ntheta;
        for (int j = 0; j < nphi; ++j) {
          const double f0 = 2.0 * std::numbers::pi * j / nphi;
          const double f1 = 2.0 * std::numbers::pi * (j + 1) / nphi;
          Patch3 p;
          // Area-weighted centre: cos(theta) midpoint.
          const double tm = std::acos(0.5 * (std::cos(t0) + std::cos(t1)));
          p.normal = at(tm, 0.5 * (f0 + f1));
          p.center = c + n.radius * p.normal;
          p.area = n.radius * n.radius * (f1 - f0) * (std::cos(t0) - std::cos(t1));
          p.corners = {c + n.radius * at(t0, f0), c + n.radius * at(t1, f0), c + n.radius * at(t1, f1),
                       c + n.radius * at(t0, f1)};
          patches.push_back(p);
        }
      }
      break;
    }
    case ShapeOp::box: {
      const int m = std::max(1, refinement / 16);
      for (int axis = 0; axis < 3; ++axis) {
        const int u = (axis + 1) % 3;
        const int v = (axis + 2) % 3;
        for (int side = 0; side < 2; ++side) {
          const double w = side ? n.hi[axis] : n.lo[axis];
          Vec3 normal = Vec3::Zero();
          normal[axis] = side ? 1.0 : -1.0;
          const double du = (n.hi[u] - n.lo[u]) / m;
          const double dv = (n.hi[v] - n.lo[v]) / m;
          for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
              auto corner = [&](int ia, int ib) {
                Vec3 p;
                p[axis] = w;
                p[u] = n.lo[u] + ia * du;
                p[v] = n.lo[v] + ib * dv;
                return p;
              };
              Patch3 p;
              p.corners = {corner(a, b), corner(a + 1, b), corner(a + 1, b + 1), corner(a, b + 1)};
              p.center = 0.25 * (p.corners[0] + p.corners[1] + p.corners[2] + p.corners[3]);
              p.normal = normal;
              p.area = du * dv;
              patches.push_back(p);
            }
          }
        }
      }
      break;
    }
    case ShapeOp::points:
      for (const Vector& p : n.pts) isolated.push_back(p);
      break;
    case ShapeOp::unite:
    case ShapeOp::intersect:
    case ShapeOp::subtract:
      collect_patches_3d(*n.left, refinement, patches, isolated);
      collect_patches_3d(*n.right, refinement, patches, isolated);
      break;
    default:
      throw Error(ErrorCode::UnsupportedDimension, "3-D meshes support balls, boxes and points only");
  }
}

BoundaryMesh mesh_3d(const Shape& s, const Domain& d, int refinement, bool clip) {
  BoundaryMesh mesh;
  mesh.dimension = 3;
  std::vector<Patch3> patches;
  std::vector<Vector> isolated;
  collect_patches_3d(s.node(), refinement, patches, isolated);
  const double scale = s.scale();
  const double probe = 1e-7 * scale;
  FacetDeduper dedup(1e-9 * scale);
  auto contains = [&](const Vector& x) { return s.contains(x); };
  for (const Patch3& p : patches) {
    if (p.area <= 0.0) continue;
    const Vector m(p.center);
    const double delta = std::min(probe, 0.25 * std::sqrt(p.area));
    const Classified c = classify_piece(contains, m, Vector(p.normal), delta);
    if (!c.keep) continue;
    if (clip && !d.contains(m)) continue;
    if (!dedup.insert(m)) continue;
    const Vector nu(c.sign * p.normal);
    mesh.facets.push_back({{Vector(p.corners[0]), Vector(p.corners[1]), Vector(p.corners[2])}, nu,
                           0.5 * p.area, c.kind});
    mesh.facets.push_back({{Vector(p.corners[0]), Vector(p.corners[2]), Vector(p.corners[3])}, nu,
                           0.5 * p.area, c.kind});
  }
  isolated_point_facets(s, d, clip, isolated, probe, mesh);
  return mesh;
}

IntervalSet node_to_intervals(const ShapeNode& n) {
  switch (n.op) {
    case ShapeOp::ball:
      return IntervalSet::interval(n.center[0] - n.radius, n.center[0] + n.radius, n.closed, n.closed);
    case ShapeOp::box: return IntervalSet::interval(n.lo[0], n.hi[0], n.closed, n.closed);
    case ShapeOp::points: {
      std::vector<double> xs;
      for (const Vector& p : n.pts) xs.push_back(p[0]);
      return IntervalSet::points(xs);
    }
    case ShapeOp::intervals: return n.intervals;
    case ShapeOp::unite: return node_to_intervals(*n.left).unite(node_to_intervals(*n.right));
    case ShapeOp::intersect: return node_to_intervals(*n.left).intersect(node_to_intervals(*n.right));
    case ShapeOp::subtract: return node_to_intervals(*n.left).subtract(node_to_intervals(*n.right));
    default: throw Error(ErrorCode::UnsupportedDimension, "leaf has no 1-D interval form");
  }
}

std::shared_ptr<ShapeNode> new_node(ShapeOp op, int dim) {
  auto n = std::make_shared<ShapeNode>();
  n->op = op;
  n->dim = dim;
  return n;
}

}  // namespace

AxisBox AxisBox::inflated(double margin) const {
  return {lo.array() - margin, hi.array() + margin};
}

bool AxisBox::strictly_contains(const AxisBox& inner) const {
  return (lo.array() < inner.lo.array()).all() && (inner.hi.array() < hi.array()).all();
}

Shape Shape::ball(const Vector& center, double radius, bool closed) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  auto n = new_node(ShapeOp::ball, static_cast<int>(center.size()));
  n->center = center;
  n->radius = radius;
  n->closed = closed;
  return Shape(n);
}

Shape Shape::box(const Vector& lo, const Vector& hi, bool closed) {
  if (lo.size() != hi.size() || lo.size() == 0) throw Error(ErrorCode::DimensionMismatch, "box bounds");
  if (!(lo.array() < hi.array()).all()) throw Error(ErrorCode::InvalidArgument, "box needs lo < hi");
  auto n = new_node(ShapeOp::box, static_cast<int>(lo.size()));
  n->lo = lo;
  n->hi = hi;
  n->closed = closed;
  return Shape(n);
}

Shape Shape::polygon(std::vector<Eigen::Vector2d> loop, bool closed) {
  if (loop.size() < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 vertices");
  double area2 = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) area2 += cross2(loop[i], loop[(i + 1) % loop.size()]);
  if (area2 == 0.0) throw Error(ErrorCode::InvalidArgument, "polygon has zero area");
  if (area2 < 0.0) std::reverse(loop.begin(), loop.end());
  auto n = new_node(ShapeOp::polygon, 2);
  n->loop = std::move(loop);
  n->closed = closed;
  return Shape(n);
}

Shape Shape::points(int dimension, std::vector<Vector> pts) {
  for (const Vector& p : pts) {
    if (p.size() != dimension) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  }
  auto n = new_node(ShapeOp::points, dimension);
  n->pts = std::move(pts);
  n->closed = true;
  return Shape(n);
}

Shape Shape::segments(std::vector<std::pair<Vector, Vector>> segs) {
  const int dim = segs.empty() ? 2 : static_cast<int>(segs.front().first.size());
  for (const auto& [a, b] : segs) {
    if (a.size() != dim || b.size() != dim) throw Error(ErrorCode::DimensionMismatch, "segment dimension");
  }
  if (dim != 2) throw Error(ErrorCode::UnsupportedDimension, "segments are supported in the plane only");
  auto n = new_node(ShapeOp::segments, dim);
  n->segs = std::move(segs);
  n->closed = true;
  return Shape(n);
}

Shape Shape::intervals(IntervalSet set) {
  auto n = new_node(ShapeOp::intervals, 1);
  n->cuts = set.breakpoints();
  n->intervals = std::move(set);
  return Shape(n);
}

Shape Shape::empty(int dimension) { return points(dimension, {}); }

Shape Shape::unite(const Shape& a, const Shape& b) {
  if (a.dimension() != b.dimension()) throw Error(ErrorCode::DimensionMismatch, "union operands");
  auto n = new_node(ShapeOp::unite, a.dimension());
  n->left = a.node_;
  n->right = b.node_;
  return Shape(n);
}

Shape Shape::intersect(const Shape& a, const Shape& b) {
  if (a.dimension() != b.dimension()) throw Error(ErrorCode::DimensionMismatch, "intersection operands");
  auto n = new_node(ShapeOp::intersect, a.dimension());
  n->left = a.node_;
  n->right = b.node_;
  return Shape(n);
}

Shape Shape::subtract(const Shape& a, const Shape& b) {
  if (a.dimension() != b.dimension()) throw Error(ErrorCode::DimensionMismatch, "difference operands");
  auto n = new_node(ShapeOp::subtract, a.dimension());
  n->left = a.node_;
  n->right = b.node_;
  return Shape(n);
}

int Shape::dimension() const { return node_->dim; }
ShapeOp Shape::op() const { return node_->op; }
bool Shape::null_mass() const { return eval_null(*node_); }
bool Shape::contains(const double* x) const { return eval_contains(*node_, x); }
bool Shape::on_leaf_boundary(const double* x) const { return eval_on_boundary(*node_, x); }
AxisBox Shape::bounding_box() const { return eval_bbox(*node_); }

double Shape::scale() const {
  const AxisBox b = bounding_box();
  double s = 1.0;
  for (int i = 0; i < b.dimension(); ++i) {
    if (std::isfinite(b.lo[i])) s = std::max(s, std::abs(b.lo[i]));
    if (std::isfinite(b.hi[i])) s = std::max(s, std::abs(b.hi[i]));
  }
  return s;
}

Indicator indicator(const Shape& s, const Vector& x) {
  if (x.size() != s.dimension()) throw Error(ErrorCode::DimensionMismatch, "indicator point");
  const bool in = s.contains(x);
  if (!s.on_leaf_boundary(x.data())) return in ? Indicator::inside : Indicator::outside;
  const double delta = 1e-7 * s.scale();
  for (const Vector& dir : probe_directions(s.dimension())) {
    if (s.contains(Vector(x + delta * dir)) != in) return Indicator::on_boundary;
  }
  return in ? Indicator::inside : Indicator::outside;
}

Domain Domain::whole(AxisBox window) {
  if (window.lo.size() != window.hi.size() || window.empty()) {
    throw Error(ErrorCode::InvalidArgument, "window must be a non-empty box");
  }
  return Domain(std::nullopt, std::move(window));
}

Domain Domain::region(Shape open_region, AxisBox window) {
  if (open_region.dimension() != window.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "region and window dimensions differ");
  }
  if (window.empty()) throw Error(ErrorCode::InvalidArgument, "window must be a non-empty box");
  return Domain(std::move(open_region), std::move(window));
}

void Domain::validate_window(const Shape& subject, const ConvexBody& body, double eps_max) const {
  const double reach = eps_max * diameter(body);
  AxisBox need = subject.bounding_box();
  if (region_) {
    const AxisBox r = region_->bounding_box();
    if (need.empty()) {
      need = r;
    } else if (!r.empty()) {
      need = {need.lo.cwiseMin(r.lo), need.hi.cwiseMax(r.hi)};
    }
  }
  if (need.empty()) return;
  if (!need.lo.allFinite() || !need.hi.allFinite() || !window_.strictly_contains(need.inflated(reach))) {
    throw Error(ErrorCode::WindowTooSmall,
                "window must strictly contain the shape bounding box inflated by eps_max * diam(C) = " +
                    std::to_string(reach));
  }
}

double BoundaryMesh::reduced_measure() const {
  double total = 0.0;
  for (const MeshFacet& f : facets) {
    if (f.kind == FacetKind::reduced) total += f.measure;
  }
  return total;
}

double BoundaryMesh::total_measure() const {
  double total = 0.0;
  for (const MeshFacet& f : facets) total += f.measure;
  return total;
}

BoundaryMesh BoundaryMesh::reduced_only() const {
  BoundaryMesh out;
  out.dimension = dimension;
  for (const MeshFacet& f : facets) {
    if (f.kind == FacetKind::reduced) out.facets.push_back(f);
  }
  return out;
}

std::size_t BoundaryMesh::reduced_count() const {
  return static_cast<std::size_t>(std::count_if(
      facets.begin(), facets.end(), [](const MeshFacet& f) { return f.kind == FacetKind::reduced; }));
}

BoundaryMesh boundary_mesh(const Shape& s, const Domain& d, int refinement, bool clip_to_domain) {
  if (s.dimension() != d.dimension()) throw Error(ErrorCode::DimensionMismatch, "shape and domain");
  if (refinement < 1) throw Error(ErrorCode::InvalidArgument, "refinement must be positive");
  switch (s.dimension()) {
    case 1: return mesh_1d(s, d, clip_to_domain);
    case 2: return mesh_2d(s, d, refinement, clip_to_domain);
    case 3:
      return mesh_3d(s, d, refinement == kDefaultRefinement ? kDefaultRefinement3d : refinement,
                     clip_to_domain);
    default: throw Error(ErrorCode::UnsupportedDimension, "boundary meshes exist for n <= 3");
  }
}

double perimeter(const BoundaryMesh& mesh) { return mesh.reduced_measure(); }

double perimeter(const Shape& s, const Domain& d, int refinement) {
  return perimeter(boundary_mesh(s, d, refinement));
}

double anisotropic_perimeter(const BoundaryMesh& mesh, const ConvexBody& c, Orientation o) {
  if (mesh.dimension != c.dimension() && !mesh.facets.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "mesh and body dimensions differ");
  }
  const double sign = o == Orientation::outward ? 1.0 : -1.0;
  double total = 0.0;
  for (const MeshFacet& f : mesh.facets) {
    if (f.kind == FacetKind::reduced) total += f.measure * support(c, Vector(sign * f.normal));
  }
  return total;
}

double anisotropic_perimeter(const Shape& s, const Domain& d, const ConvexBody& c, Orientation o,
                             int refinement) {
  return anisotropic_perimeter(boundary_mesh(s, d, refinement), c, o);
}

double half_sum_target(const BoundaryMesh& mesh, const ConvexBody& c) {
  return 0.5 * (anisotropic_perimeter(mesh, c, Orientation::outward) +
                anisotropic_perimeter(mesh, c, Orientation::inward));
}

double half_sum_target(const Shape& s, const Domain& d, const ConvexBody& c, int refinement) {
  return half_sum_target(boundary_mesh(s, d, refinement), c);
}

IntervalSet to_interval_set(const Shape& s) {
  if (s.dimension() != 1) throw Error(ErrorCode::UnsupportedDimension, "interval form needs n = 1");
  return node_to_intervals(s.node());
}

IntervalSet domain_interval_set(const Domain& d) {
  if (d.dimension() != 1) throw Error(ErrorCode::UnsupportedDimension, "interval form needs n = 1");
  return d.region() ? to_interval_set(*d.region()) : IntervalSet::real_line();
}

IntervalSet resolve_target(const IntervalSet& e, Target t) {
  switch (t) {
    case Target::set: return e;
    case Target::topological_boundary: return e.boundary();
    case Target::reduced_boundary: return e.essential_boundary();
  }
  return e;
}

double exact_1d_content(const IntervalSet& s, const IntervalSet& omega, const ConvexBody& c,
                        Functional f, double eps) {
  if (c.dimension() != 1) throw Error(ErrorCode::NonIntervalBody, "exact engine needs a 1-D body");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  const auto [lo, hi] = c.bounding_box();
  const double a = eps * lo[0];
  const double b = eps * hi[0];
  auto outer = [&](const IntervalSet& e) {
    return e.intersect(omega).dilate(a, b).intersect(omega.subtract(e)).measure() / eps;
  };
  switch (f) {
    case Functional::M: return s.intersect(omega).dilate(a, b).intersect(omega).measure() / (2.0 * eps);
    case Functional::FrakM: return s.dilate(a, b).intersect(omega).measure() / (2.0 * eps);
    case Functional::SM: return outer(s);
    case Functional::ScriptM: return 0.5 * (outer(s) + outer(omega.subtract(s)));
  }
  return 0.0;
}

double exact_1d_content(const Shape& s, const Domain& d, const ConvexBody& c, Functional f, Target t,
                        double eps) {
  if (c.dimension() != 1) throw Error(ErrorCode::NonIntervalBody, "exact engine needs a 1-D body");
  return exact_1d_content(resolve_target(to_interval_set(s), t), domain_interval_set(d), c, f, eps);
}

}  // namespace minklab
