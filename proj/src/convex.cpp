#include "minklab/convex.hpp"

#include "minklab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace minklab {

namespace {

constexpr double kExtremalityTol = 1e-9;

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

void check_dim(const ConvexBody& body, const Vector& v, const char* what) {
  if (v.size() != body.dimension()) {
    std::ostringstream os;
    os << what << ": vector of size " << v.size() << " for body of dimension "
       << body.dimension();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

int affine_rank(const std::vector<Vector>& pts, double tol) {
  if (pts.size() < 2) return 0;
  const Eigen::Index n = pts.front().size();
  Eigen::MatrixXd m(n, static_cast<Eigen::Index>(pts.size() - 1));
  for (std::size_t i = 1; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i - 1)) = pts[i] - pts[0];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

int normal_rank(const std::vector<const Facet*>& fs) {
  if (fs.empty()) return 0;
  const Eigen::Index n = fs.front()->normal.size();
  Eigen::MatrixXd m(n, static_cast<Eigen::Index>(fs.size()));
  for (std::size_t i = 0; i < fs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = fs[i]->normal;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

bool is_axis_box(const ConvexBody& body) {
  if (body.is_ball()) return false;
  const int n = body.dimension();
  if (static_cast<int>(body.facets().size()) != 2 * n) return false;
  for (const Facet& f : body.facets()) {
    int nonzero = 0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(f.normal[i]) > 1e-12) ++nonzero;
    }
    if (nonzero != 1) return false;
  }
  return true;
}

}  // namespace

struct BodyAccess {
  static ConvexBody ball(int dim, double r) {
    ConvexBody b;
    b.dim_ = dim;
    b.kind_ = BodyKind::ball;
    b.radius_ = r;
    return b;
  }

  static ConvexBody polytope(int dim, std::vector<Vector> vertices, std::vector<Facet> facets) {
    ConvexBody b;
    b.dim_ = dim;
    b.kind_ = BodyKind::polytope;
    std::sort(vertices.begin(), vertices.end(), lex_less);
    std::sort(facets.begin(), facets.end(),
              [](const Facet& x, const Facet& y) { return lex_less(x.normal, y.normal); });
    b.vertices_ = std::move(vertices);
    b.facets_ = std::move(facets);
    return b;
  }
};

std::pair<Vector, Vector> ConvexBody::bounding_box() const {
  if (is_ball()) {
    return {Vector::Constant(dim_, -radius_), Vector::Constant(dim_, radius_)};
  }
  Vector lo = vertices_.front();
  Vector hi = vertices_.front();
  for (const Vector& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  os.precision(12);
  if (is_ball()) {
    os << "ball(n=" << dim_ << ", r=" << radius_ << ")";
    return os.str();
  }
  os << "polytope(n=" << dim_ << ", vertices=[";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) os << ", ";
    os << "(";
    for (int k = 0; k < dim_; ++k) os << (k ? "," : "") << vertices_[i][k];
    os << ")";
  }
  os << "])";
  return os.str();
}

ConvexBody make_ball(int dimension, double radius) {
  if (dimension < 1) throw Error(ErrorCode::UnsupportedDimension, "ball dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::OriginNotInterior, "ball radius must be positive and finite");
  }
  return BodyAccess::ball(dimension, radius);
}

ConvexBody make_box(const Vector& lo, const Vector& hi) {
  const auto n = static_cast<int>(lo.size());
  if (n < 1 || hi.size() != lo.size()) throw Error(ErrorCode::DimensionMismatch, "box bounds");
  if (n > 20) throw Error(ErrorCode::UnsupportedDimension, "box dimension above 20");
  for (int i = 0; i < n; ++i) {
    if (!(lo[i] < 0.0 && hi[i] > 0.0) || !std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
      throw Error(ErrorCode::OriginNotInterior, "box must satisfy lo < 0 < hi on every axis");
    }
  }
  std::vector<Vector> vertices;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1u ? hi[i] : lo[i];
    vertices.push_back(std::move(v));
  }
  std::vector<Facet> facets;
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e[i] = 1.0;
    facets.push_back({e, hi[i]});
    facets.push_back({-e, -lo[i]});
  }
  return BodyAccess::polytope(n, std::move(vertices), std::move(facets));
}

ConvexBody make_interval(double lo, double hi) {
  Vector l(1), h(1);
  l[0] = lo;
  h[0] = hi;
  return make_box(l, h);
}

ConvexBody make_polytope(const std::vector<Vector>& points) {
  if (points.empty()) throw Error(ErrorCode::DegenerateHull, "no points");
  const auto n = static_cast<int>(points.front().size());
  for (const Vector& p : points) {
    if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");
    if (!p.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite vertex");
  }
  if (n < 1) throw Error(ErrorCode::UnsupportedDimension, "dimension 0");
  if (n > 3) {
    throw Error(ErrorCode::UnsupportedDimension,
                "polytope hulls are enumerated for n <= 3 only; use make_box or make_ball");
  }

  double scale = 0.0;
  for (const Vector& p : points) scale = std::max(scale, p.norm());
  if (scale == 0.0) throw Error(ErrorCode::DegenerateHull, "all points at the origin");
  const double tol = kExtremalityTol * scale;

  // Drop duplicates.
  std::vector<Vector> pts;
  for (const Vector& p : points) {
    bool dup = false;
    for (const Vector& q : pts) {
      if ((p - q).norm() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(p);
  }
  if (static_cast<int>(pts.size()) < n + 1 || affine_rank(pts, tol) < n) {
    // A flat hull has no interior. Report the origin problem when the input is
    // a single point or the origin is off the affine span of the points.
    std::vector<Vector> with_origin = pts;
    with_origin.push_back(Vector::Zero(n));
    if (pts.size() == 1 || affine_rank(with_origin, tol) > affine_rank(pts, tol)) {
      throw Error(ErrorCode::OriginNotInterior, "origin lies outside the (flat) hull");
    }
    throw Error(ErrorCode::DegenerateHull, "points do not span the ambient dimension");
  }

  if (n == 1) {
    double lo = pts.front()[0], hi = pts.front()[0];
    for (const Vector& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    if (!(-lo > 1e-12 * scale && hi > 1e-12 * scale)) {
      throw Error(ErrorCode::OriginNotInterior, "origin is not inside the interval");
    }
    return make_interval(lo, hi);
  }

  std::vector<Facet> facets;
  auto try_plane = [&](Vector normal, const Vector& through) {
    const double len = normal.norm();
    if (len <= tol * (n == 3 ? scale : 1.0)) return;
    normal /= len;
    const double off = normal.dot(through);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vector& p : pts) {
      const double s = normal.dot(p) - off;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (hi <= tol) {
      // keep normal
    } else if (lo >= -tol) {
      normal = -normal;
    } else {
      return;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const Vector& p : pts) best = std::max(best, normal.dot(p));
    for (const Facet& f : facets) {
      if ((f.normal - normal).norm() <= 1e-9 && std::abs(f.offset - best) <= tol) return;
    }
    facets.push_back({normal, best});
  };

  const std::size_t m = pts.size();
  if (n == 2) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const Vector d = pts[j] - pts[i];
        Vector normal(2);
        normal << d[1], -d[0];
        try_plane(normal, pts[i]);
      }
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
          const Eigen::Vector3d u = (pts[j] - pts[i]).head<3>();
          const Eigen::Vector3d v = (pts[k] - pts[i]).head<3>();
          const Eigen::Vector3d c = u.cross(v);
          try_plane(Vector(c), pts[i]);
        }
      }
    }
  }

  for (const Facet& f : facets) {
    if (!(f.offset > 1e-12 * scale)) {
      throw Error(ErrorCode::OriginNotInterior, "origin lies on or outside the hull");
    }
  }

  std::vector<Vector> extreme;
  for (const Vector& p : pts) {
    std::vector<const Facet*> incident;
    for (const Facet& f : facets) {
      if (std::abs(f.normal.dot(p) - f.offset) <= tol) incident.push_back(&f);
    }
    if (normal_rank(incident) == n) extreme.push_back(p);
  }
  return BodyAccess::polytope(n, std::move(extreme), std::move(facets));
}

double support(const ConvexBody& body, const Vector& y) {
  check_dim(body, y, "support");
  if (body.is_ball()) return body.radius() * y.norm();
  double best = -std::numeric_limits<double>::infinity();
  for (const Vector& v : body.vertices()) best = std::max(best, v.dot(y));
  return best;
}

double gauge(const ConvexBody& body, const Vector& x) {
  check_dim(body, x, "gauge");
  if (body.is_ball()) return x.norm() / body.radius();
  double best = 0.0;
  for (const Facet& f : body.facets()) best = std::max(best, f.normal.dot(x) / f.offset);
  return best;
}

ConvexBody polar(const ConvexBody& body) {
  if (body.is_ball()) return BodyAccess::ball(body.dimension(), 1.0 / body.radius());
  std::vector<Vector> vertices;
  vertices.reserve(body.facets().size());
  for (const Facet& f : body.facets()) vertices.push_back(f.normal / f.offset);
  std::vector<Facet> facets;
  facets.reserve(body.vertices().size());
  for (const Vector& v : body.vertices()) {
    const double len = v.norm();
    facets.push_back({v / len, 1.0 / len});
  }
  return BodyAccess::polytope(body.dimension(), std::move(vertices), std::move(facets));
}

ConvexBody scale(const ConvexBody& body, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::NonpositiveScale, "scale factor must be positive");
  }
  if (body.is_ball()) return BodyAccess::ball(body.dimension(), body.radius() * r);
  std::vector<Vector> vertices;
  for (const Vector& v : body.vertices()) vertices.push_back(v * r);
  std::vector<Facet> facets;
  for (const Facet& f : body.facets()) facets.push_back({f.normal, f.offset * r});
  return BodyAccess::polytope(body.dimension(), std::move(vertices), std::move(facets));
}

ConvexBody reflect(const ConvexBody& body) {
  if (body.is_ball()) return body;
  std::vector<Vector> vertices;
  for (const Vector& v : body.vertices()) vertices.push_back(-v);
  std::vector<Facet> facets;
  for (const Facet& f : body.facets()) facets.push_back({-f.normal, f.offset});
  return BodyAccess::polytope(body.dimension(), std::move(vertices), std::move(facets));
}

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "minkowski_sum of bodies of different dimension");
  }
  if (a.is_ball() != b.is_ball()) {
    throw Error(ErrorCode::MixedKinds, "ball + polytope sums are not representable");
  }
  if (a.is_ball()) return BodyAccess::ball(a.dimension(), a.radius() + b.radius());
  if (a.dimension() > 3) {
    if (!is_axis_box(a) || !is_axis_box(b)) {
      throw Error(ErrorCode::UnsupportedDimension, "n > 3 sums are limited to axis boxes");
    }
    auto [alo, ahi] = a.bounding_box();
    auto [blo, bhi] = b.bounding_box();
    return make_box(alo + blo, ahi + bhi);
  }
  std::vector<Vector> sums;
  sums.reserve(a.vertices().size() * b.vertices().size());
  for (const Vector& u : a.vertices()) {
    for (const Vector& v : b.vertices()) sums.push_back(u + v);
  }
  return make_polytope(sums);
}

ContainmentConstants containment_constants(const ConvexBody& body) {
  if (body.is_ball()) return {1.0 / body.radius(), 1.0 / body.radius()};
  double max_norm = 0.0;
  for (const Vector& v : body.vertices()) max_norm = std::max(max_norm, v.norm());
  double min_offset = std::numeric_limits<double>::infinity();
  for (const Facet& f : body.facets()) min_offset = std::min(min_offset, f.offset);
  return {1.0 / max_norm, 1.0 / min_offset};
}

double diameter(const ConvexBody& body) {
  if (body.is_ball()) return 2.0 * body.radius();
  double best = 0.0;
  const auto& vs = body.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) best = std::max(best, (vs[i] - vs[j]).norm());
  }
  return best;
}

double vertex_hausdorff(const ConvexBody& a, const ConvexBody& b) {
  if (a.dimension() != b.dimension() || a.is_ball() != b.is_ball()) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.is_ball()) return std::abs(a.radius() - b.radius());
  auto directed = [](const std::vector<Vector>& from, const std::vector<Vector>& to) {
    double worst = 0.0;
    for (const Vector& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vector& q : to) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a.vertices(), b.vertices()), directed(b.vertices(), a.vertices()));
}

GaugeKernel::GaugeKernel(const ConvexBody& body) : dim_(body.dimension()), ball_(body.is_ball()) {
  if (ball_) {
    inv_radius_ = 1.0 / body.radius();
    return;
  }
  weights_.reserve(body.facets().size() * static_cast<std::size_t>(dim_));
  for (const Facet& f : body.facets()) {
    for (int i = 0; i < dim_; ++i) weights_.push_back(f.normal[i] / f.offset);
  }
}

}  // namespace minklab
