#pragma once

#include "minklab/content.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace minklab {

struct FunctionalRequest {
  Functional functional;
  Target target;
};

struct LadderSpec {
  std::optional<double> eps_max;        // absolute
  std::optional<double> eps_max_cells;  // in units of h (raster only)
  int points = 4;
};

struct Tolerances {
  double rel_tol = 0.03;
  double bracket_tol = 0.25;
  std::optional<double> abs_floor;  // default_abs_floor(window) when unset
  double eps_floor_cells = 4.0;
  double lower_bound_tol = 0.03;
};

/// A self-contained run description, read from JSON.
struct Scenario {
  std::string name;
  int dimension = 0;
  Shape shape = Shape::empty(1);
  Domain domain = Domain::whole({Vector::Constant(1, -1.0), Vector::Constant(1, 1.0)});
  std::vector<NamedBody> bodies;
  std::vector<FunctionalRequest> functionals;
  Engine engine = Engine::raster;
  std::int64_t grid = 1024;
  LadderSpec ladder;
  Tolerances tolerances;
  bool relations = false;
  bool closure_inside = false;
  int refinement = 0;
  std::string output = ".";
};

/// Command-line knobs that override scenario fields.
struct Overrides {
  std::optional<std::int64_t> grid;
  std::optional<double> eps_max;
  std::optional<int> eps_points;
  std::optional<double> rel_tol;
  std::optional<std::string> out;
};

/// Parsers for the JSON records of the scenario format. Errors are
/// ParseError for malformed JSON and ValidationError naming the field path.
Shape parse_shape_text(const std::string& json, int dimension);
ConvexBody parse_body_text(const std::string& json, int dimension);
Scenario parse_scenario_text(const std::string& json);
Scenario load_scenario(const std::filesystem::path& file);

void apply_overrides(Scenario& s, const Overrides& o);

/// Everything a run needs after defaults are applied and validated.
struct ResolvedRun {
  std::optional<Grid> grid;  // raster engine only
  std::vector<double> ladder;
  ExtrapolationOptions extrapolation;
};

/// Throws ValidationError naming the offending field.
ResolvedRun resolve(const Scenario& s);

const NamedBody& find_body(const Scenario& s, const std::string& id);

struct RunRow {
  FunctionalRequest request;
  std::string body;
  ContentCurve curve;
  ContentEstimate estimate;
  std::optional<double> target;
  bool exists = false;
};

struct RunResult {
  ResolvedRun resolved;
  std::vector<RunRow> rows;
  std::optional<RelationReport> relations;
};

RunResult run_scenario(const Scenario& s);

std::string curves_csv(const Scenario& s, const RunResult& r);
std::string summary_csv(const Scenario& s, const RunResult& r);
std::string text_report(const Scenario& s, const RunResult& r);

/// Writes <name>_curves.csv, <name>_summary.csv and <name>_report.txt into
/// the output directory, each via write-then-rename. Returns the paths.
std::vector<std::filesystem::path> write_outputs(const Scenario& s, const RunResult& r);

/// Writes `contents` to `file` atomically.
void write_atomic(const std::filesystem::path& file, const std::string& contents);

/// The rasterized seed used for distance-field dumps: cell centres of E, or
/// the supercover when E is null.
VoxelSet scenario_seed(const Scenario& s, const Grid& g);

}  // namespace minklab
