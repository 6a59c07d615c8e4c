#pragma once

#include "minklab/convex.hpp"
#include "minklab/functional.hpp"
#include "minklab/raster.hpp"
#include "minklab/shape.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace minklab {

enum class Engine { exact, raster };

/// How a raster evaluator realizes (A + eps C).
enum class DilationPath {
  /// Cell centres tested against the exact continuum dilation of the facets.
  sampled,
  /// Supercover raster of the facets dilated by a closed grid stencil.
  stencil,
};

struct RasterOptions {
  /// Circle segments per turn; 0 picks one from h (sagitta <= h / 100).
  int refinement = 0;
  /// Smallest admissible eps, in cells.
  double eps_floor_cells = 4.0;
  DilationPath path = DilationPath::sampled;
};

/// Fixed-eps content functionals of one shape on one grid. Rasters of E and
/// Omega and the boundary meshes are built once and reused across eps and
/// bodies.
class RasterEvaluator {
 public:
  RasterEvaluator(Shape e, Domain d, Grid g, RasterOptions opt = {});

  const Grid& grid() const { return grid_; }
  const Shape& shape() const { return e_; }
  const Domain& domain() const { return d_; }
  const RasterOptions& options() const { return opt_; }

  /// Value of F applied to the target of E at scale eps.
  double evaluate(Functional f, Target t, const ConvexBody& c, double eps) const;

  /// Measure of one boundary layer: h times twice the facet measure of dE.
  double boundary_layer() const;

 private:
  struct Mask {
    VoxelSet cells;
    std::vector<std::int64_t> lo, hi;  // index bounding box of the set cells
  };
  static Mask make_mask(VoxelSet v);
  double dilation_count(int mesh, const VoxelSet* base, const Mask& mask, const ConvexBody& c,
                        double eps) const;

  Shape e_;
  Domain d_;
  Grid grid_;
  RasterOptions opt_;
  int refinement_;
  VoxelSet e_raster_;
  VoxelSet e_and_omega_;
  Mask omega_;
  Mask omega_minus_e_;
  Mask e_in_omega_;
  std::vector<BoundaryMesh> meshes_;
  std::vector<VoxelSet> supercovers_;  // stencil path only
};

/// Fixed-eps functionals on shapes (sampled path) and on voxel sets (stencil
/// path). Shape overloads take the target of E; with Target::set, S = E.
double m_eps(const Shape& e, Target t, const Domain& d, const ConvexBody& c, double eps, const Grid& g);
double sm_eps(const Shape& e, const Domain& d, const ConvexBody& c, double eps, const Grid& g);
double frak_m_eps(const Shape& e, Target t, const Domain& d, const ConvexBody& c, double eps, const Grid& g);
double script_m_eps(const Shape& e, const Domain& d, const ConvexBody& c, double eps, const Grid& g);

double m_eps(const VoxelSet& s, const VoxelSet& omega, const ConvexBody& c, double eps);
double sm_eps(const VoxelSet& e, const VoxelSet& omega, const ConvexBody& c, double eps);
double frak_m_eps(const VoxelSet& s, const VoxelSet& omega, const ConvexBody& c, double eps);
double script_m_eps(const VoxelSet& e, const VoxelSet& omega, const ConvexBody& c, double eps);

struct ContentCurve {
  Functional functional = Functional::M;
  Target target = Target::set;
  std::string body;
  double h = 0.0;  // 0 for the exact engine
  std::vector<double> eps;
  std::vector<double> values;
};

/// Checks a ladder: nonempty, strictly decreasing, positive, and above
/// floor (if floor > 0). Throws InvalidArgument or EpsilonBelowFloor.
void check_ladder(const std::vector<double>& ladder, double floor);

/// eps_k = eps_max 2^-k for k < points.
std::vector<double> geometric_ladder(double eps_max, int points);

ContentCurve content_curve(const RasterEvaluator& ev, Functional f, Target t, const ConvexBody& c,
                           const std::string& body_id, const std::vector<double>& ladder);
/// Exact 1-D engine.
ContentCurve content_curve(const Shape& e, const Domain& d, Functional f, Target t, const ConvexBody& c,
                           const std::string& body_id, const std::vector<double>& ladder);

struct ExtrapolationOptions {
  int tail = 4;
  double rel_tol = 0.03;
  double bracket_tol = 0.25;
  double abs_floor = 0.05;
};

struct ContentEstimate {
  double value = 0.0;
  double slope = 0.0;
  double residual = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool converged = false;
};

/// Least-squares fit F(eps) = L + c eps on the smallest `tail` points.
/// Brackets are the min/max over the tail values and L.
ContentEstimate extrapolate(const ContentCurve& curve, const ExtrapolationOptions& opt = {});

/// converged and |L - target| <= max(rel_tol target, abs_floor).
bool exists_verdict(const ContentEstimate& est, double target, const ExtrapolationOptions& opt);

/// Default abs_floor: 0.05 times the window extent to the power n - 1.
double default_abs_floor(const AxisBox& window);

/// The functionals computed per body by relation_report.
enum class ReportRow { M_topological, M_reduced, FrakM_topological, ScriptM, SM_E, SM_complement };

std::string_view to_string(ReportRow r);

struct RowResult {
  ReportRow row;
  ContentCurve curve;
  ContentEstimate estimate;
  double target = 0.0;
  bool exists = false;
};

struct BodyReport {
  std::string body;
  double per_outward = 0.0;
  double per_inward = 0.0;
  double half_sum = 0.0;
  std::vector<RowResult> rows;
  bool lower_bounds_ok = false;
  bool chain_ok = false;
  /// Set when the closure of E lies in Omega: the three chain members agree per eps.
  std::optional<bool> coincide;

  const RowResult& row(ReportRow r) const;
};

struct RelationReport {
  std::vector<BodyReport> bodies;
  double chain_slack_layer = 0.0;  // boundary layer measure; 0 for the exact engine
  /// Per row, whether the existence verdicts agree across all bodies.
  std::map<ReportRow, bool> verdicts_agree;
  bool all_verdicts_agree = false;
};

struct ReportOptions {
  ExtrapolationOptions extrapolation;
  double lower_bound_tol = 0.03;
  /// Set when the caller knows closure(E) is inside Omega.
  bool closure_inside = false;
};

struct NamedBody {
  std::string id;
  ConvexBody body;
};

RelationReport relation_report(const RasterEvaluator& ev, const std::vector<NamedBody>& bodies,
                               const std::vector<double>& ladder, const ReportOptions& opt = {});
/// Exact 1-D engine.
RelationReport relation_report(const Shape& e, const Domain& d, const std::vector<NamedBody>& bodies,
                               const std::vector<double>& ladder, const ReportOptions& opt = {});

/// Fixed-eps chain FrakM(dE) >= ScriptM(E) >= M(dE) with additive slack.
bool chain_holds(double frak, double script, double m, double slack);

}  // namespace minklab
