#include "CLI11.hpp"

#include "minklab/error.hpp"
#include "minklab/scenario.hpp"
#include "minklab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace minklab;

namespace {

std::string vec(const Vector& v) {
  std::string s = "(";
  char buf[40];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", v[i] + 0.0);
    s += buf;
  }
  return s + ")";
}

std::vector<Vector> sample_directions(int n) {
  std::vector<Vector> out;
  if (n == 2) {
    for (int k = 0; k < 8; ++k) {
      const double a = k * std::numbers::pi / 4;
      Vector v(2);
      v << std::cos(a), std::sin(a);
      v = (v.array().abs() < 1e-12).select(0.0, v);
      out.push_back(v);
    }
    return out;
  }
  for (int i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      Vector v = Vector::Zero(n);
      v[i] = s;
      out.push_back(v);
    }
  }
  return out;
}

int cmd_bodies(const std::string& file) {
  const Scenario s = load_scenario(file);
  for (const NamedBody& b : s.bodies) {
    std::printf("body %s: %s\n", b.id.c_str(), b.body.describe().c_str());
    std::printf("  support:\n");
    for (const Vector& u : sample_directions(s.dimension)) {
      std::printf("    h%s = %.10g\n", vec(u).c_str(), support(b.body, u));
    }
    const ConvexBody p = polar(b.body);
    if (p.is_ball()) {
      std::printf("  polar: ball of radius %.10g\n", p.radius());
    } else {
      std::printf("  polar vertices:\n");
      for (const Vector& v : p.vertices()) std::printf("    %s\n", vec(v).c_str());
    }
    const ContainmentConstants k = containment_constants(b.body);
    std::printf("  constants: a = %.10g, b = %.10g\n", k.a, k.b);
    std::printf("  diameter: %.10g\n", diameter(b.body));
  }
  return 0;
}

int cmd_run(const std::string& file, const Overrides& o) {
  Scenario s = load_scenario(file);
  apply_overrides(s, o);
  const RunResult r = run_scenario(s);
  std::cout << text_report(s, r);
  for (const auto& p : write_outputs(s, r)) std::cout << "wrote " << p.string() << "\n";
  return 0;
}

int cmd_verify(const VerifyOptions& opt, bool list) {
  if (list) {
    for (const CheckInfo& c : list_checks()) std::printf("%s%s\n", c.name.c_str(), c.raster ? "  [raster]" : "");
    return 0;
  }
  int failed = 0, total = 0;
  run_checks(opt, [&](const CheckResult& r) {
    ++total;
    if (!r.passed) ++failed;
    std::printf("%s\n", format_result(r).c_str());
    std::fflush(stdout);
  });
  if (total == 0) {
    std::fprintf(stderr, "no check matches '%s'\n", opt.filter.c_str());
    return 2;
  }
  std::printf("%d/%d checks passed\n", total - failed, total);
  return failed ? 1 : 0;
}

int cmd_field(const std::string& file, const std::string& body_id, const std::string& out, bool csv,
              const std::string& method, int radius, const Overrides& o) {
  Scenario s = load_scenario(file);
  apply_overrides(s, o);
  // The field needs only the grid; the ladder and window margins do not apply.
  if (std::pow(static_cast<double>(s.grid), s.dimension) > static_cast<double>(std::int64_t{1} << 28)) {
    throw Error(ErrorCode::ResourceCap, "grid: " + std::to_string(s.grid) + " cells per axis exceed the cap");
  }
  const Grid g = Grid::covering(s.domain.window(), s.grid);
  const NamedBody& b = find_body(s, body_id);
  const DistanceMethod m = method == "chamfer" ? DistanceMethod::chamfer : DistanceMethod::brute;
  const ScalarField f = distance_field(scenario_seed(s, g), b.body, m, radius);
  std::ostringstream os(std::ios::binary);
  if (csv) {
    write_field_csv(os, f);
  } else {
    write_field_binary(os, f, b.id, m == DistanceMethod::chamfer ? "chamfer" + std::to_string(radius) : "brute");
  }
  write_atomic(out, os.str());
  std::printf("wrote %s (%lld cells)\n", out.c_str(), static_cast<long long>(f.values.size()));
  return 0;
}

void add_overrides(CLI::App* app, Overrides& o) {
  app->add_option("--grid", o.grid, "Cells along the longest window axis");
  app->add_option("--eps-max", o.eps_max, "Largest eps of the ladder");
  app->add_option("--eps-points", o.eps_points, "Number of ladder points");
  app->add_option("--rel-tol", o.rel_tol, "Relative tolerance of the existence verdict");
  app->add_option("--out", o.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minkowski content estimation"};
  app.require_subcommand(1);

  std::string file;
  Overrides run_o;
  auto* run = app.add_subcommand("run", "Run a scenario and write its reports");
  run->add_option("file", file, "Scenario JSON")->required();
  add_overrides(run, run_o);

  VerifyOptions vopt;
  bool list = false;
  auto* verify = app.add_subcommand("verify", "Run the built-in check suite");
  verify->add_option("--filter", vopt.filter, "Only checks whose name contains this");
  verify->add_option("--rel-tol", vopt.rel_tol, "Relative tolerance for raster checks");
  verify->add_flag("--list", list, "List the checks without running them");

  std::string body_id, out_path, method = "brute";
  bool csv = false;
  int radius = 3;
  Overrides field_o;
  auto* field = app.add_subcommand("field", "Write the distance field of a scenario's seed");
  field->add_option("file", file, "Scenario JSON")->required();
  field->add_option("--body", body_id, "Body id")->required();
  field->add_option("--out", out_path, "Output file")->required();
  field->add_flag("--csv", csv, "Write CSV instead of the binary format");
  field->add_option("--method", method, "brute or chamfer")->check(CLI::IsMember({"brute", "chamfer"}));
  field->add_option("--radius", radius, "Chamfer neighbourhood radius")->check(CLI::PositiveNumber);
  field->add_option("--grid", field_o.grid, "Cells along the longest window axis");

  auto* bodies = app.add_subcommand("bodies", "Describe the bodies of a scenario");
  bodies->add_option("file", file, "Scenario JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(file, run_o);
    if (*verify) return cmd_verify(vopt, list);
    if (*field) return cmd_field(file, body_id, out_path, csv, method, radius, field_o);
    if (*bodies) return cmd_bodies(file);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
