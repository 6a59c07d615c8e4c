#include "minklab/content.hpp"

#include "minklab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace minklab {

namespace {

enum MeshId { kTopoClipped, kReducedClipped, kTopoFull, kReducedFull, kEInOmega, kOmegaMinusE, kMeshCount };

double max_ball_radius(const ShapeNode& n) {
  switch (n.op) {
    case ShapeOp::ball: return n.radius;
    case ShapeOp::unite:
    case ShapeOp::intersect:
    case ShapeOp::subtract: return std::max(max_ball_radius(*n.left), max_ball_radius(*n.right));
    default: return 0.0;
  }
}

int pick_refinement(const Shape& e, const Domain& d, double h, int requested) {
  if (requested > 0) return requested;
  if (e.dimension() == 3) return kDefaultRefinement3d;
  double r = max_ball_radius(e.node());
  if (d.region()) r = std::max(r, max_ball_radius(d.region()->node()));
  if (r <= 0.0) return kDefaultRefinement;
  // Chord sagitta r (1 - cos(dt / 2)) ~ r dt^2 / 8 kept below h / 100.
  const double dt = std::sqrt(8.0 * (h / 100.0) / r);
  const double n = std::ceil(2.0 * std::numbers::pi / dt);
  return static_cast<int>(std::clamp(n, 64.0, 65536.0));
}

Shape window_box(const AxisBox& w) { return Shape::box(w.lo, w.hi, false); }

VoxelSet full_set(const Grid& g) { return VoxelSet(g).complement(); }

// Exact test "gauge(x - y) <= eps for some y on the facet".
class FacetProbe {
 public:
  FacetProbe(const MeshFacet& f, const GaugeKernel& k, double eps) : k_(k), eps_(eps), n_(k.dimension()) {
    const std::size_t np = f.points.size();
    kind_ = static_cast<int>(np);
    a_ = f.points[0];
    if (np >= 2) d1_ = f.points[1] - f.points[0];
    if (np == 3) d2_ = f.points[2] - f.points[0];
    if (!k.is_ball()) {
      const std::size_t nf = k.facet_count();
      const double* w = k.weights().data();
      wa_.resize(nf);
      b1_.assign(nf, 0.0);
      b2_.assign(nf, 0.0);
      for (std::size_t j = 0; j < nf; ++j, w += n_) {
        for (int i = 0; i < n_; ++i) {
          wa_[j] += w[i] * a_[i];
          if (np >= 2) b1_[j] += w[i] * d1_[i];
          if (np == 3) b2_[j] += w[i] * d2_[i];
        }
      }
    } else {
      reach_ = eps / k.inverse_radius();
    }
  }

  bool operator()(const double* x) const {
    if (kind_ == 1) {
      double z[3];
      for (int i = 0; i < n_; ++i) z[i] = x[i] - a_[i];
      return k_(z) <= eps_;
    }
    if (k_.is_ball()) return ball_distance(x) <= reach_;
    const std::size_t nf = wa_.size();
    const double* w = k_.weights().data();
    if (kind_ == 2) {
      double lo = 0.0, hi = 1.0;
      for (std::size_t j = 0; j < nf; ++j, w += n_) {
        double wx = 0.0;
        for (int i = 0; i < n_; ++i) wx += w[i] * x[i];
        const double slack = wx - wa_[j] - eps_;  // need slack <= t b1
        const double b = b1_[j];
        if (b > 0.0) {
          lo = std::max(lo, slack / b);
        } else if (b < 0.0) {
          hi = std::min(hi, slack / b);
        } else if (slack > 0.0) {
          return false;
        }
        if (lo > hi) return false;
      }
      return true;
    }
    // Triangle: clip the parameter simplex by s b1 + t b2 >= slack.
    std::vector<std::array<double, 2>> poly{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, next;
    for (std::size_t j = 0; j < nf && !poly.empty(); ++j, w += n_) {
      double wx = 0.0;
      for (int i = 0; i < n_; ++i) wx += w[i] * x[i];
      const double slack = wx - wa_[j] - eps_;
      auto val = [&](const std::array<double, 2>& p) { return p[0] * b1_[j] + p[1] * b2_[j] - slack; };
      next.clear();
      for (std::size_t q = 0; q < poly.size(); ++q) {
        const auto& p = poly[q];
        const auto& r = poly[(q + 1) % poly.size()];
        const double vp = val(p), vr = val(r);
        if (vp >= 0.0) next.push_back(p);
        if ((vp >= 0.0) != (vr >= 0.0)) {
          const double t = vp / (vp - vr);
          next.push_back({p[0] + t * (r[0] - p[0]), p[1] + t * (r[1] - p[1])});
        }
      }
      poly.swap(next);
    }
    return !poly.empty();
  }

 private:
  double ball_distance(const double* x) const {
    Vector p(n_);
    for (int i = 0; i < n_; ++i) p[i] = x[i];
    if (kind_ == 2) {
      const double dd = d1_.squaredNorm();
      const double t = dd > 0.0 ? std::clamp((p - a_).dot(d1_) / dd, 0.0, 1.0) : 0.0;
      return (p - a_ - t * d1_).norm();
    }
    return triangle_distance(p);
  }

  // Closest point on triangle (a, a + d1, a + d2) by Voronoi regions.
  double triangle_distance(const Vector& p) const {
    const Vector b = a_ + d1_, c = a_ + d2_;
    const Vector ab = d1_, ac = d2_, ap = p - a_;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return ap.norm();
    const Vector bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return bp.norm();
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return (p - (a_ + d1 / (d1 - d3) * ab)).norm();
    const Vector cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return cp.norm();
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return (p - (a_ + d2 / (d2 - d6) * ac)).norm();
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
      const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
      return (p - (b + w * (c - b))).norm();
    }
    const double denom = 1.0 / (va + vb + vc);
    return (p - (a_ + ab * (vb * denom) + ac * (vc * denom))).norm();
  }

  const GaugeKernel& k_;
  double eps_;
  int n_;
  int kind_;
  double reach_ = 0.0;
  Vector a_, d1_, d2_;
  std::vector<double> wa_, b1_, b2_;
};

double counted(const VoxelSet& v) { return measure(v); }

}  // namespace

RasterEvaluator::Mask RasterEvaluator::make_mask(VoxelSet v) {
  const Grid& g = v.grid();
  const int n = g.dimension();
  std::vector<std::int64_t> lo(n, std::numeric_limits<std::int64_t>::max()), hi(n, -1), idx(n);
  for (std::int64_t r = 0; r < g.row_count(); ++r) {
    v.for_each_run(r, [&](std::int64_t a, std::int64_t b) {
      g.unflat(r * g.row_length() + a, idx.data());
      for (int i = 0; i + 1 < n; ++i) {
        lo[i] = std::min(lo[i], idx[i]);
        hi[i] = std::max(hi[i], idx[i]);
      }
      lo[n - 1] = std::min(lo[n - 1], a);
      hi[n - 1] = std::max(hi[n - 1], b);
    });
  }
  return Mask{std::move(v), std::move(lo), std::move(hi)};
}

RasterEvaluator::RasterEvaluator(Shape e, Domain d, Grid g, RasterOptions opt)
    : e_(std::move(e)), d_(std::move(d)), grid_(std::move(g)), opt_(opt),
      refinement_(pick_refinement(e_, d_, grid_.spacing(), opt.refinement)),
      e_raster_(rasterize(e_, grid_, RasterMode::cell_center)),
      e_and_omega_(e_raster_),
      omega_(make_mask(d_.region() ? rasterize(*d_.region(), grid_, RasterMode::cell_center) : full_set(grid_))),
      omega_minus_e_(make_mask(VoxelSet(omega_.cells).subtract(e_raster_))),
      e_in_omega_(make_mask((e_and_omega_ &= omega_.cells, e_and_omega_))) {
  if (e_.dimension() != grid_.dimension() || d_.dimension() != grid_.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "shape, domain and grid dimensions differ");
  }
  const Domain whole = Domain::whole(d_.window());
  meshes_.resize(kMeshCount);
  meshes_[kTopoClipped] = boundary_mesh(e_, d_, refinement_, true);
  meshes_[kReducedClipped] = meshes_[kTopoClipped].reduced_only();
  meshes_[kTopoFull] = boundary_mesh(e_, d_, refinement_, false);
  meshes_[kReducedFull] = meshes_[kTopoFull].reduced_only();
  const Shape omega_shape = d_.region() ? *d_.region() : window_box(d_.window());
  meshes_[kEInOmega] = boundary_mesh(Shape::intersect(e_, omega_shape), whole, refinement_, false);
  meshes_[kOmegaMinusE] = boundary_mesh(Shape::subtract(omega_shape, e_), whole, refinement_, false);
  if (opt_.path == DilationPath::stencil) {
    for (const BoundaryMesh& m : meshes_) supercovers_.push_back(rasterize_mesh(m, grid_));
  }
}

double RasterEvaluator::boundary_layer() const {
  return grid_.spacing() * 2.0 * meshes_[kTopoFull].total_measure();
}

double RasterEvaluator::dilation_count(int mesh, const VoxelSet* base, const Mask& mask, const ConvexBody& c,
                                       double eps) const {
  const Grid& g = grid_;
  if (opt_.path == DilationPath::stencil) {
    VoxelSet seed = supercovers_[mesh];
    if (base) seed |= *base;
    VoxelSet out = dilate(seed, build_stencil(c, eps, g));
    out &= mask.cells;
    return counted(out);
  }
  const int n = g.dimension();
  VoxelSet hit(g);
  if (base) {
    hit = *base;
    hit &= mask.cells;
  }
  if (mask.hi[0] < 0) return 0.0;
  const GaugeKernel kernel(c);
  const auto [clo, chi] = c.bounding_box();
  const double h = g.spacing();
  std::vector<std::int64_t> lo(n), hi(n), idx(n);
  std::vector<double> x(n);
  for (const MeshFacet& f : meshes_[mesh].facets) {
    bool empty = false;
    for (int i = 0; i < n; ++i) {
      double mn = f.points[0][i], mx = mn;
      for (const Vector& p : f.points) {
        mn = std::min(mn, p[i]);
        mx = std::max(mx, p[i]);
      }
      mn += eps * clo[i];
      mx += eps * chi[i];
      // Cells whose centres lie in [mn, mx].
      lo[i] = std::max(mask.lo[i], static_cast<std::int64_t>(std::ceil((mn - g.origin()[i]) / h - 0.5)));
      hi[i] = std::min(mask.hi[i], static_cast<std::int64_t>(std::floor((mx - g.origin()[i]) / h - 0.5)));
      if (lo[i] > hi[i]) empty = true;
    }
    if (empty) continue;
    const FacetProbe probe(f, kernel, eps);
    idx = lo;
    while (true) {
      std::int64_t row = 0;
      for (int i = 0; i + 1 < n; ++i) {
        row = row * g.counts()[i] + idx[i];
        x[i] = g.center_coord(i, idx[i]);
      }
      for (std::int64_t k = lo[n - 1]; k <= hi[n - 1]; ++k) {
        if (hit.test_row(row, k) || !mask.cells.test_row(row, k)) continue;
        x[n - 1] = g.center_coord(n - 1, k);
        if (probe(x.data())) hit.set_row(row, k);
      }
      int axis = n - 2;
      for (; axis >= 0; --axis) {
        if (++idx[axis] <= hi[axis]) break;
        idx[axis] = lo[axis];
      }
      if (axis < 0) break;
    }
  }
  return counted(hit);
}

double RasterEvaluator::evaluate(Functional f, Target t, const ConvexBody& c, double eps) const {
  if (c.dimension() != grid_.dimension()) throw Error(ErrorCode::DimensionMismatch, "body and grid dimensions differ");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (eps < opt_.eps_floor_cells * grid_.spacing() * (1.0 - 1e-12)) {
    throw Error(ErrorCode::EpsilonBelowFloor, "eps is below the floor of " + std::to_string(opt_.eps_floor_cells) +
                                                  " cells");
  }
  switch (f) {
    case Functional::M: {
      if (t == Target::set) return dilation_count(kEInOmega, &e_and_omega_, omega_, c, eps) / (2.0 * eps);
      const int mesh = t == Target::topological_boundary ? kTopoClipped : kReducedClipped;
      return dilation_count(mesh, nullptr, omega_, c, eps) / (2.0 * eps);
    }
    case Functional::FrakM: {
      if (t == Target::set) return dilation_count(kTopoFull, &e_raster_, omega_, c, eps) / (2.0 * eps);
      const int mesh = t == Target::topological_boundary ? kTopoFull : kReducedFull;
      return dilation_count(mesh, nullptr, omega_, c, eps) / (2.0 * eps);
    }
    case Functional::SM: return dilation_count(kEInOmega, &e_and_omega_, omega_minus_e_, c, eps) / eps;
    case Functional::ScriptM: {
      const double a = dilation_count(kEInOmega, &e_and_omega_, omega_minus_e_, c, eps);
      const double b = dilation_count(kOmegaMinusE, &omega_minus_e_.cells, e_in_omega_, c, eps);
      return 0.5 * (a + b) / eps;
    }
  }
  return 0.0;
}

double m_eps(const Shape& e, Target t, const Domain& d, const ConvexBody& c, double eps, const Grid& g) {
  return RasterEvaluator(e, d, g).evaluate(Functional::M, t, c, eps);
}

double sm_eps(const Shape& e, const Domain& d, const ConvexBody& c, double eps, const Grid& g) {
  return RasterEvaluator(e, d, g).evaluate(Functional::SM, Target::set, c, eps);
}

double frak_m_eps(const Shape& e, Target t, const Domain& d, const ConvexBody& c, double eps, const Grid& g) {
  return RasterEvaluator(e, d, g).evaluate(Functional::FrakM, t, c, eps);
}

double script_m_eps(const Shape& e, const Domain& d, const ConvexBody& c, double eps, const Grid& g) {
  return RasterEvaluator(e, d, g).evaluate(Functional::ScriptM, Target::set, c, eps);
}

double m_eps(const VoxelSet& s, const VoxelSet& omega, const ConvexBody& c, double eps) {
  VoxelSet a = s;
  a &= omega;
  VoxelSet out = dilate(a, build_stencil(c, eps, s.grid()));
  out &= omega;
  return measure(out) / (2.0 * eps);
}

double sm_eps(const VoxelSet& e, const VoxelSet& omega, const ConvexBody& c, double eps) {
  VoxelSet a = e;
  a &= omega;
  VoxelSet out = dilate(a, build_stencil(c, eps, e.grid()));
  out &= omega;
  out.subtract(e);
  return measure(out) / eps;
}

double frak_m_eps(const VoxelSet& s, const VoxelSet& omega, const ConvexBody& c, double eps) {
  VoxelSet out = dilate(s, build_stencil(c, eps, s.grid()));
  out &= omega;
  return measure(out) / (2.0 * eps);
}

double script_m_eps(const VoxelSet& e, const VoxelSet& omega, const ConvexBody& c, double eps) {
  VoxelSet rest = omega;
  rest.subtract(e);
  return 0.5 * (sm_eps(e, omega, c, eps) + sm_eps(rest, omega, c, eps));
}

void check_ladder(const std::vector<double>& ladder, double floor) {
  if (ladder.empty()) throw Error(ErrorCode::InvalidArgument, "ladder is empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0) || !std::isfinite(ladder[i])) throw Error(ErrorCode::InvalidArgument, "ladder values must be positive");
    if (i && !(ladder[i] < ladder[i - 1])) throw Error(ErrorCode::InvalidArgument, "ladder must be strictly decreasing");
  }
  if (floor > 0.0 && ladder.back() < floor * (1.0 - 1e-12)) {
    throw Error(ErrorCode::EpsilonBelowFloor, "smallest ladder eps is below the floor");
  }
}

std::vector<double> geometric_ladder(double eps_max, int points) {
  if (!(eps_max > 0.0) || points < 1) throw Error(ErrorCode::InvalidArgument, "ladder needs eps_max > 0 and points >= 1");
  std::vector<double> out;
  for (int k = 0; k < points; ++k) out.push_back(std::ldexp(eps_max, -k));
  return out;
}

ContentCurve content_curve(const RasterEvaluator& ev, Functional f, Target t, const ConvexBody& c,
                           const std::string& body_id, const std::vector<double>& ladder) {
  check_ladder(ladder, ev.options().eps_floor_cells * ev.grid().spacing());
  ContentCurve curve{f, t, body_id, ev.grid().spacing(), ladder, {}};
  for (double eps : ladder) curve.values.push_back(ev.evaluate(f, t, c, eps));
  return curve;
}

ContentCurve content_curve(const Shape& e, const Domain& d, Functional f, Target t, const ConvexBody& c,
                           const std::string& body_id, const std::vector<double>& ladder) {
  check_ladder(ladder, 0.0);
  if (f == Functional::SM || f == Functional::ScriptM) t = Target::set;
  ContentCurve curve{f, t, body_id, 0.0, ladder, {}};
  for (double eps : ladder) curve.values.push_back(exact_1d_content(e, d, c, f, t, eps));
  return curve;
}

ContentEstimate extrapolate(const ContentCurve& curve, const ExtrapolationOptions& opt) {
  const std::size_t n = curve.values.size();
  if (n < 3 || curve.eps.size() != n) throw Error(ErrorCode::TooFewPoints, "extrapolation needs at least 3 points");
  const std::size_t k = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(opt.tail, 3)));
  const std::size_t first = n - k;
  Eigen::MatrixXd a(k, 2);
  Eigen::VectorXd y(k);
  for (std::size_t i = 0; i < k; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = curve.eps[first + i];
    y[i] = curve.values[first + i];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
  ContentEstimate est;
  est.value = coef[0];
  est.slope = coef[1];
  est.residual = std::sqrt((a * coef - y).squaredNorm() / static_cast<double>(k));
  est.lower = est.upper = est.value;
  const double scale = std::max(std::abs(est.value), opt.abs_floor);
  bool tight = true;
  for (std::size_t i = first; i < n; ++i) {
    est.lower = std::min(est.lower, curve.values[i]);
    est.upper = std::max(est.upper, curve.values[i]);
    if (std::abs(curve.values[i] - est.value) > opt.bracket_tol * scale) tight = false;
  }
  est.converged = tight && est.residual <= opt.rel_tol * scale;
  return est;
}

bool exists_verdict(const ContentEstimate& est, double target, const ExtrapolationOptions& opt) {
  return est.converged && std::abs(est.value - target) <= std::max(opt.rel_tol * target, opt.abs_floor);
}

double default_abs_floor(const AxisBox& window) {
  return 0.05 * std::pow(window.extent().maxCoeff(), window.dimension() - 1);
}

std::string_view to_string(ReportRow r) {
  switch (r) {
    case ReportRow::M_topological: return "M(topological)";
    case ReportRow::M_reduced: return "M(reduced)";
    case ReportRow::FrakM_topological: return "FrakM(topological)";
    case ReportRow::ScriptM: return "ScriptM(set)";
    case ReportRow::SM_E: return "SM(set)";
    case ReportRow::SM_complement: return "SM(complement)";
  }
  return "?";
}

const RowResult& BodyReport::row(ReportRow r) const {
  for (const RowResult& x : rows) {
    if (x.row == r) return x;
  }
  throw Error(ErrorCode::InvalidArgument, "report row missing");
}

bool chain_holds(double frak, double script, double m, double slack) {
  return frak >= script - slack && script >= m - slack;
}

namespace {

struct RowSpec {
  ReportRow row;
  Functional f;
  Target t;
};

constexpr RowSpec kRows[] = {
    {ReportRow::M_topological, Functional::M, Target::topological_boundary},
    {ReportRow::M_reduced, Functional::M, Target::reduced_boundary},
    {ReportRow::FrakM_topological, Functional::FrakM, Target::topological_boundary},
    {ReportRow::ScriptM, Functional::ScriptM, Target::set},
    {ReportRow::SM_E, Functional::SM, Target::set},
    {ReportRow::SM_complement, Functional::SM, Target::set},
};

template <class CurveFn>
RelationReport build_report(const Shape& e, const Domain& d, const std::vector<NamedBody>& bodies,
                            const std::vector<double>& ladder, const ReportOptions& opt, double layer,
                            bool exact, CurveFn&& curve_of) {
  RelationReport rep;
  rep.chain_slack_layer = layer;
  const BoundaryMesh targets = boundary_mesh(e, d);
  for (const NamedBody& nb : bodies) {
    BodyReport br;
    br.body = nb.id;
    br.per_outward = anisotropic_perimeter(targets, nb.body, Orientation::outward);
    br.per_inward = anisotropic_perimeter(targets, nb.body, Orientation::inward);
    br.half_sum = half_sum_target(targets, nb.body);
    for (const RowSpec& rs : kRows) {
      RowResult rr;
      rr.row = rs.row;
      rr.curve = curve_of(rs, nb);
      rr.estimate = extrapolate(rr.curve, opt.extrapolation);
      switch (rs.row) {
        case ReportRow::SM_E: rr.target = br.per_outward; break;
        case ReportRow::SM_complement: rr.target = br.per_inward; break;
        default: rr.target = br.half_sum; break;
      }
      rr.exists = exists_verdict(rr.estimate, rr.target, opt.extrapolation);
      br.rows.push_back(std::move(rr));
    }
    const double keep = 1.0 - opt.lower_bound_tol;
    br.lower_bounds_ok = br.row(ReportRow::SM_E).estimate.lower >= keep * br.per_outward &&
                         br.row(ReportRow::SM_complement).estimate.lower >= keep * br.per_inward &&
                         br.row(ReportRow::M_topological).estimate.lower >= keep * br.half_sum &&
                         br.row(ReportRow::M_reduced).estimate.lower >= keep * br.half_sum;
    br.chain_ok = true;
    bool same = true;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      const double slack = exact ? 1e-12 : 2.0 * layer / ladder[k];
      const double fr = br.row(ReportRow::FrakM_topological).curve.values[k];
      const double sc = br.row(ReportRow::ScriptM).curve.values[k];
      const double m = br.row(ReportRow::M_topological).curve.values[k];
      if (!chain_holds(fr, sc, m, slack)) br.chain_ok = false;
      if (std::abs(fr - sc) > slack || std::abs(sc - m) > slack) same = false;
    }
    if (opt.closure_inside) br.coincide = same;
    rep.bodies.push_back(std::move(br));
  }
  rep.all_verdicts_agree = true;
  for (const RowSpec& rs : kRows) {
    bool agree = true;
    for (const BodyReport& br : rep.bodies) {
      if (br.row(rs.row).exists != rep.bodies.front().row(rs.row).exists) agree = false;
    }
    rep.verdicts_agree[rs.row] = agree;
    rep.all_verdicts_agree = rep.all_verdicts_agree && agree;
  }
  return rep;
}

}  // namespace

RelationReport relation_report(const RasterEvaluator& ev, const std::vector<NamedBody>& bodies,
                               const std::vector<double>& ladder, const ReportOptions& opt) {
  check_ladder(ladder, ev.options().eps_floor_cells * ev.grid().spacing());
  const Shape& e = ev.shape();
  const Domain& d = ev.domain();
  const Shape rest = Shape::subtract(d.region() ? *d.region() : Shape::box(d.window().lo, d.window().hi), e);
  std::optional<RasterEvaluator> complement;
  return build_report(e, d, bodies, ladder, opt, ev.boundary_layer(), false,
                      [&](const RowSpec& rs, const NamedBody& nb) {
                        if (rs.row != ReportRow::SM_complement) {
                          return content_curve(ev, rs.f, rs.t, nb.body, nb.id, ladder);
                        }
                        if (!complement) complement.emplace(rest, d, ev.grid(), ev.options());
                        return content_curve(*complement, rs.f, rs.t, nb.body, nb.id, ladder);
                      });
}

RelationReport relation_report(const Shape& e, const Domain& d, const std::vector<NamedBody>& bodies,
                               const std::vector<double>& ladder, const ReportOptions& opt) {
  check_ladder(ladder, 0.0);
  const Shape rest = d.region() ? Shape::subtract(*d.region(), e)
                                : Shape::intervals(to_interval_set(e).complement());
  return build_report(e, d, bodies, ladder, opt, 0.0, true, [&](const RowSpec& rs, const NamedBody& nb) {
    return content_curve(rs.row == ReportRow::SM_complement ? rest : e, d, rs.f, rs.t, nb.body, nb.id, ladder);
  });
}

}  // namespace minklab
