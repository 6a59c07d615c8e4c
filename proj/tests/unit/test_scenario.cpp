#include "doctest.h"

#include "minklab/error.hpp"
#include "minklab/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace minklab;

namespace {

const char* kInterval = R"({
  "name": "ip",
  "dimension": 1,
  "domain": {"window": {"lo": [-1], "hi": [3]}},
  "shape": {"op": "intervals", "intervals": [[0, 1], [2, 2]]},
  "bodies": [{"id": "unit", "kind": "interval", "interval": [-1, 1]}],
  "functionals": [{"functional": "SM"}, {"functional": "M", "target": "reduced"}],
  "ladder": {"eps_max": 0.125, "points": 4}
})";

const char* kDisc = R"({
  "name": "disc",
  "dimension": 2,
  "domain": {"window": {"lo": [-2, -2], "hi": [2, 2]}},
  "shape": {"op": "ball", "center": [0, 0], "radius": 1},
  "bodies": [{"id": "square", "kind": "polytope", "vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]]}],
  "functionals": [{"functional": "SM"}],
  "grid": 512,
  "ladder": {"eps_max": 0.25}
})";

std::string error_text(const std::string& json) {
  try {
    resolve(parse_scenario_text(json));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const std::size_t p = s.find(from);
  REQUIRE(p != std::string::npos);
  return s.replace(p, from.size(), to);
}

}  // namespace

TEST_CASE("parse shapes and bodies") {
  const Shape s = parse_shape_text(
      R"({"op": "difference", "args": [{"op": "box", "lo": [0, 0], "hi": [2, 2]}, {"op": "ball", "center": [1, 1], "radius": 0.5}]})",
      2);
  Vector p(2);
  p << 0.2, 0.2;
  CHECK(s.contains(p));
  p << 1, 1;
  CHECK_FALSE(s.contains(p));
  const ConvexBody b = parse_body_text(R"({"kind": "polytope", "vertices": [[2, -1], [-1, 2], [-1, -1]]})", 2);
  CHECK(b.vertices().size() == 3);
  CHECK(parse_body_text(R"({"kind": "interval", "interval": [-1, 2]})", 1).dimension() == 1);
}

TEST_CASE("parse errors name the field") {
  std::string what;
  try {
    parse_body_text(R"({"kind": "polytope", "vertices": [[1, 0], [0, 1], [1, 1]]})", 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    what = e.what();
  }
  CHECK(what.find("body") != std::string::npos);
  CHECK(what.find("OriginNotInterior") != std::string::npos);

  bool parse_error = false;
  try {
    parse_scenario_text("{ not json");
  } catch (const Error& e) {
    parse_error = e.code() == ErrorCode::ParseError;
  }
  CHECK(parse_error);
  CHECK(error_text(replace(kDisc, "\"ball\", \"center\"", "\"blob\", \"center\"")).find("shape.op") != std::string::npos);
  CHECK(error_text(replace(kDisc, "\"radius\": 1}", "\"radius\": \"x\"}")).find("shape.radius") != std::string::npos);
  CHECK(error_text(replace(kInterval, "\"target\": \"reduced\"", "\"target\": \"sideways\"")).find("functionals[1]") !=
        std::string::npos);
}

TEST_CASE("resolve applies defaults and validates") {
  const Scenario s = parse_scenario_text(kDisc);
  CHECK(s.engine == Engine::raster);
  const ResolvedRun r = resolve(s);
  REQUIRE(r.grid);
  CHECK(r.grid->spacing() == 4.0 / 512);
  CHECK(r.ladder == geometric_ladder(0.25, 4));
  CHECK(r.extrapolation.abs_floor == doctest::Approx(0.2));

  CHECK(parse_scenario_text(kInterval).engine == Engine::exact);

  const std::string below = error_text(replace(kDisc, "\"eps_max\": 0.25", "\"eps_max\": 0.02"));
  CHECK(below.find("ValidationError: ladder") != std::string::npos);
  CHECK(error_text(replace(kDisc, "\"grid\": 512", "\"grid\": 100000")).find("ResourceCap") != std::string::npos);
  CHECK(error_text(replace(kDisc, "\"eps_max\": 0.25", "\"eps_max\": 2")).find("domain.window") !=
        std::string::npos);
  CHECK(error_text(replace(kInterval, "\"points\": 4", "\"points\": 2")).find("ladder.points") != std::string::npos);
}

TEST_CASE("overrides") {
  Scenario s = parse_scenario_text(kDisc);
  Overrides o;
  o.grid = 1024;
  o.eps_max = 0.125;
  o.rel_tol = 0.5;
  o.eps_points = 3;
  apply_overrides(s, o);
  const ResolvedRun r = resolve(s);
  CHECK(r.grid->counts()[0] == 1024);
  CHECK(r.ladder == geometric_ladder(0.125, 3));
  CHECK(r.extrapolation.rel_tol == 0.5);
}

TEST_CASE("exact run gives SM = 4 and reports") {
  const Scenario s = parse_scenario_text(kInterval);
  const RunResult r = run_scenario(s);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].curve.values == std::vector<double>(4, 4.0));
  CHECK(r.rows[0].estimate.value == 4.0);
  CHECK(*r.rows[0].target == 2.0);
  CHECK_FALSE(r.rows[0].exists);
  CHECK(r.rows[1].estimate.value == 2.0);
  CHECK(r.rows[1].exists);

  const std::string curves = curves_csv(s, r);
  CHECK(curves.rfind("scenario,functional,target,body,h,eps,value\n", 0) == 0);
  CHECK(curves.find("ip,SM,set,unit,0,0.125,4\n") != std::string::npos);
  CHECK(std::count(curves.begin(), curves.end(), '\n') == 9);
  const std::string summary = summary_csv(s, r);
  CHECK(summary.rfind("scenario,functional,target,body,estimate,lower,upper,target_value,exists_flag\n", 0) == 0);
  CHECK(summary.find("ip,M,reduced,unit,2,2,2,2,1\n") != std::string::npos);
  const std::string report = text_report(s, r);
  for (const char* key : {"rel_tol", "bracket_tol", "abs_floor", "ladder", "tail"}) CHECK(report.find(key) != std::string::npos);
}

TEST_CASE("outputs are written and deterministic") {
  Scenario s = parse_scenario_text(kDisc);
  const auto dir = std::filesystem::temp_directory_path() / "minklab_scenario_test";
  std::filesystem::remove_all(dir);
  s.output = dir.string();
  const auto files = write_outputs(s, run_scenario(s));
  REQUIRE(files.size() == 3);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string first = slurp(files[0]);
  write_outputs(s, run_scenario(s));
  CHECK(slurp(files[0]) == first);
  for (const auto& f : files) CHECK(std::filesystem::exists(f));
  CHECK_FALSE(std::filesystem::exists(dir / "disc_curves.csv.tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("field seeds") {
  Scenario s = parse_scenario_text(replace(kDisc, R"({"op": "ball", "center": [0, 0], "radius": 1})",
                                           R"({"op": "points", "points": [[0.01, 0.01]]})"));
  const Grid g = Grid::covering(s.domain.window(), 16);
  CHECK(scenario_seed(s, g).count() == 1);
}
