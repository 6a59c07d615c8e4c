#include "minklab/scenario.hpp"

#include "minklab/error.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace minklab {

using nlohmann::json;

namespace {

constexpr std::int64_t kMaxCells = std::int64_t{1} << 28;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ValidationError, path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) invalid(path, std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) invalid(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(path, "expected a finite number");
  return v;
}

Vector vec(const json& j, int dim, const std::string& path) {
  if (dim == 1 && j.is_number()) return Vector::Constant(1, number(j, path));
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    invalid(path, "expected an array of " + std::to_string(dim) + " numbers");
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

bool flag(const json& j, const char* key, bool fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) invalid(path + "." + key, "expected true or false");
  return j.at(key).get<bool>();
}

Interval parse_interval(const json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) invalid(path, "expected [lo, hi]");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]"), true, true};
  }
  if (!j.is_object()) invalid(path, "expected [lo, hi] or an object");
  Interval iv{number(field(j, "lo", path), path + ".lo"), number(field(j, "hi", path), path + ".hi"), true, true};
  iv.lo_closed = flag(j, "lo_closed", true, path);
  iv.hi_closed = flag(j, "hi_closed", true, path);
  if (iv.lo > iv.hi) invalid(path, "lo exceeds hi");
  return iv;
}

Shape parse_shape_json(const json& j, int dim, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected a shape object");
  const std::string op = field(j, "op", path).get<std::string>();
  const bool closed = flag(j, "closed", false, path);
  try {
    if (op == "ball") {
      return Shape::ball(vec(field(j, "center", path), dim, path + ".center"),
                         number(field(j, "radius", path), path + ".radius"), closed);
    }
    if (op == "box") {
      return Shape::box(vec(field(j, "lo", path), dim, path + ".lo"), vec(field(j, "hi", path), dim, path + ".hi"),
                        closed);
    }
    if (op == "polygon") {
      if (dim != 2) invalid(path, "polygons need dimension 2");
      std::vector<Eigen::Vector2d> loop;
      const json& vs = field(j, "vertices", path);
      if (!vs.is_array()) invalid(path + ".vertices", "expected an array");
      for (std::size_t i = 0; i < vs.size(); ++i) {
        const Vector v = vec(vs[i], 2, path + ".vertices[" + std::to_string(i) + "]");
        loop.emplace_back(v[0], v[1]);
      }
      return Shape::polygon(std::move(loop), closed);
    }
    if (op == "points") {
      std::vector<Vector> pts;
      const json& ps = field(j, "points", path);
      if (!ps.is_array()) invalid(path + ".points", "expected an array");
      for (std::size_t i = 0; i < ps.size(); ++i) pts.push_back(vec(ps[i], dim, path + ".points[" + std::to_string(i) + "]"));
      return Shape::points(dim, std::move(pts));
    }
    if (op == "segments") {
      std::vector<std::pair<Vector, Vector>> segs;
      const json& ss = field(j, "segments", path);
      if (!ss.is_array()) invalid(path + ".segments", "expected an array");
      for (std::size_t i = 0; i < ss.size(); ++i) {
        const std::string p = path + ".segments[" + std::to_string(i) + "]";
        if (!ss[i].is_array() || ss[i].size() != 2) invalid(p, "expected [a, b]");
        segs.emplace_back(vec(ss[i][0], dim, p + "[0]"), vec(ss[i][1], dim, p + "[1]"));
      }
      return Shape::segments(std::move(segs));
    }
    if (op == "intervals") {
      if (dim != 1) invalid(path, "intervals need dimension 1");
      std::vector<Interval> parts;
      const json& is = field(j, "intervals", path);
      if (!is.is_array()) invalid(path + ".intervals", "expected an array");
      for (std::size_t i = 0; i < is.size(); ++i) parts.push_back(parse_interval(is[i], path + ".intervals[" + std::to_string(i) + "]"));
      return Shape::intervals(IntervalSet::from_components(std::move(parts)));
    }
    if (op == "union" || op == "intersection" || op == "difference") {
      const json& args = field(j, "args", path);
      if (!args.is_array() || args.size() < 2) invalid(path + ".args", "expected at least two shapes");
      Shape acc = parse_shape_json(args[0], dim, path + ".args[0]");
      for (std::size_t i = 1; i < args.size(); ++i) {
        const Shape next = parse_shape_json(args[i], dim, path + ".args[" + std::to_string(i) + "]");
        acc = op == "union" ? Shape::unite(acc, next)
              : op == "intersection" ? Shape::intersect(acc, next)
                                     : Shape::subtract(acc, next);
      }
      return acc;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    invalid(path, e.what());
  }
  invalid(path + ".op", "unknown shape op '" + op + "'");
}

ConvexBody parse_body_json(const json& j, int dim, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected a body object");
  const std::string kind = field(j, "kind", path).get<std::string>();
  try {
    if (kind == "ball") return make_ball(dim, number(field(j, "radius", path), path + ".radius"));
    if (kind == "interval") {
      if (dim != 1) invalid(path, "interval bodies need dimension 1");
      const Interval iv = parse_interval(field(j, "interval", path), path + ".interval");
      return make_interval(iv.lo, iv.hi);
    }
    if (kind == "box") return make_box(vec(field(j, "lo", path), dim, path + ".lo"), vec(field(j, "hi", path), dim, path + ".hi"));
    if (kind == "polytope") {
      const json& vs = field(j, "vertices", path);
      if (!vs.is_array()) invalid(path + ".vertices", "expected an array");
      std::vector<Vector> pts;
      for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(vec(vs[i], dim, path + ".vertices[" + std::to_string(i) + "]"));
      return make_polytope(pts);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    invalid(path, e.what());
  }
  invalid(path + ".kind", "unknown body kind '" + kind + "'");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) invalid("scenario", "expected an object");
  Scenario s;
  s.name = field(j, "name", "scenario").get<std::string>();
  if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos) invalid("name", "must be a plain nonempty name");
  s.dimension = static_cast<int>(number(field(j, "dimension", "scenario"), "dimension"));
  if (s.dimension < 1 || s.dimension > 3) invalid("dimension", "must be 1, 2 or 3");
  const int n = s.dimension;

  const json& dom = field(j, "domain", "scenario");
  const json& win = field(dom, "window", "domain");
  const AxisBox window{vec(field(win, "lo", "domain.window"), n, "domain.window.lo"),
                       vec(field(win, "hi", "domain.window"), n, "domain.window.hi")};
  if (!(window.lo.array() < window.hi.array()).all()) invalid("domain.window", "lo must be below hi on every axis");
  if (dom.contains("region") && !dom.at("region").is_null()) {
    s.domain = Domain::region(parse_shape_json(dom.at("region"), n, "domain.region"), window);
  } else {
    s.domain = Domain::whole(window);
  }
  s.shape = parse_shape_json(field(j, "shape", "scenario"), n, "shape");

  const json& bodies = field(j, "bodies", "scenario");
  if (!bodies.is_array() || bodies.empty()) invalid("bodies", "expected a nonempty array");
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const std::string p = "bodies[" + std::to_string(i) + "]";
    const std::string id = field(bodies[i], "id", p).get<std::string>();
    for (const NamedBody& b : s.bodies) {
      if (b.id == id) invalid(p + ".id", "duplicate body id '" + id + "'");
    }
    s.bodies.push_back({id, parse_body_json(bodies[i], n, p)});
  }

  if (j.contains("functionals")) {
    const json& fs = j.at("functionals");
    if (!fs.is_array()) invalid("functionals", "expected an array");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string p = "functionals[" + std::to_string(i) + "]";
      FunctionalRequest r{};
      try {
        r.functional = parse_functional(field(fs[i], "functional", p).get<std::string>());
        const bool set_only = r.functional == Functional::SM || r.functional == Functional::ScriptM;
        r.target = fs[i].contains("target") ? parse_target(fs[i].at("target").get<std::string>())
                   : set_only              ? Target::set
                                           : Target::topological_boundary;
        if (set_only && r.target != Target::set) invalid(p + ".target", "SM and ScriptM act on the set E");
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ValidationError) throw;
        invalid(p, e.what());
      }
      s.functionals.push_back(r);
    }
  }
  if (s.functionals.empty()) {
    s.functionals = {{Functional::M, Target::topological_boundary},
                     {Functional::FrakM, Target::topological_boundary},
                     {Functional::ScriptM, Target::set},
                     {Functional::SM, Target::set}};
  }

  if (j.contains("engine")) {
    const std::string e = j.at("engine").get<std::string>();
    if (e == "exact") {
      s.engine = Engine::exact;
    } else if (e == "raster") {
      s.engine = Engine::raster;
    } else {
      invalid("engine", "expected 'exact' or 'raster'");
    }
  } else {
    s.engine = n == 1 ? Engine::exact : Engine::raster;
  }
  if (j.contains("grid")) {
    const double g = number(j.at("grid"), "grid");
    if (g < 1 || g != std::floor(g)) invalid("grid", "expected a positive integer");
    s.grid = static_cast<std::int64_t>(g);
  }
  if (j.contains("ladder")) {
    const json& l = j.at("ladder");
    if (l.contains("eps_max")) s.ladder.eps_max = number(l.at("eps_max"), "ladder.eps_max");
    if (l.contains("eps_max_cells")) s.ladder.eps_max_cells = number(l.at("eps_max_cells"), "ladder.eps_max_cells");
    if (l.contains("points")) s.ladder.points = static_cast<int>(number(l.at("points"), "ladder.points"));
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (t.contains("rel_tol")) s.tolerances.rel_tol = number(t.at("rel_tol"), "tolerances.rel_tol");
    if (t.contains("bracket_tol")) s.tolerances.bracket_tol = number(t.at("bracket_tol"), "tolerances.bracket_tol");
    if (t.contains("abs_floor")) s.tolerances.abs_floor = number(t.at("abs_floor"), "tolerances.abs_floor");
    if (t.contains("eps_floor_cells")) s.tolerances.eps_floor_cells = number(t.at("eps_floor_cells"), "tolerances.eps_floor_cells");
    if (t.contains("lower_bound_tol")) s.tolerances.lower_bound_tol = number(t.at("lower_bound_tol"), "tolerances.lower_bound_tol");
  }
  s.relations = flag(j, "relations", false, "scenario");
  s.closure_inside = flag(j, "closure_inside", false, "scenario");
  if (j.contains("refinement")) s.refinement = static_cast<int>(number(j.at("refinement"), "refinement"));
  if (j.contains("output")) s.output = j.at("output").get<std::string>();
  return s;
}

// Shortest representation that reads back to the same double.
std::string fmt(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string label(const FunctionalRequest& r) {
  return std::string(to_string(r.functional)) + "," + std::string(to_string(r.target));
}

}  // namespace

Shape parse_shape_text(const std::string& text, int dimension) {
  try {
    return parse_shape_json(parse_json(text), dimension, "shape");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

ConvexBody parse_body_text(const std::string& text, int dimension) {
  try {
    return parse_body_json(parse_json(text), dimension, "body");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Scenario parse_scenario_text(const std::string& text) {
  try {
    return scenario_from_json(parse_json(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + file.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario_text(os.str());
}

void apply_overrides(Scenario& s, const Overrides& o) {
  if (o.grid) s.grid = *o.grid;
  if (o.eps_max) {
    s.ladder.eps_max = *o.eps_max;
    s.ladder.eps_max_cells.reset();
  }
  if (o.eps_points) s.ladder.points = *o.eps_points;
  if (o.rel_tol) s.tolerances.rel_tol = *o.rel_tol;
  if (o.out) s.output = *o.out;
}

ResolvedRun resolve(const Scenario& s) {
  const int n = s.dimension;
  if (s.domain.dimension() != n || s.shape.dimension() != n) invalid("dimension", "shape and domain must match");
  for (std::size_t i = 0; i < s.bodies.size(); ++i) {
    if (s.bodies[i].body.dimension() != n) invalid("bodies[" + std::to_string(i) + "]", "dimension mismatch");
  }
  if (s.ladder.points < 3) invalid("ladder.points", "extrapolation needs at least 3 points");
  if (s.tolerances.rel_tol <= 0 || s.tolerances.bracket_tol <= 0) invalid("tolerances", "tolerances must be positive");
  ResolvedRun r;
  double h = 0.0;
  if (s.engine == Engine::exact) {
    if (n != 1) invalid("engine", "the exact engine needs dimension 1");
  } else {
    if (s.grid < 1) invalid("grid", "expected a positive integer");
    if (std::pow(static_cast<double>(s.grid), n) > static_cast<double>(kMaxCells)) {
      throw Error(ErrorCode::ResourceCap, "grid: " + std::to_string(s.grid) + "^" + std::to_string(n) + " cells exceed the cap");
    }
    r.grid = Grid::covering(s.domain.window(), s.grid);
    h = r.grid->spacing();
  }
  double eps_max = 0.0;
  if (s.ladder.eps_max) {
    eps_max = *s.ladder.eps_max;
  } else if (s.engine == Engine::raster) {
    eps_max = s.ladder.eps_max_cells.value_or(64.0) * h;
  } else {
    eps_max = s.domain.window().extent().maxCoeff() / 64.0;
  }
  if (!(eps_max > 0.0)) invalid("ladder.eps_max", "must be positive");
  r.ladder = geometric_ladder(eps_max, s.ladder.points);
  if (s.engine == Engine::raster) {
    const double floor = s.tolerances.eps_floor_cells * h;
    if (r.ladder.back() < floor * (1.0 - 1e-12)) {
      invalid("ladder", "smallest eps " + fmt_short(r.ladder.back()) + " is below the floor " +
                            fmt_short(s.tolerances.eps_floor_cells) + "h = " + fmt_short(floor));
    }
  }
  for (const NamedBody& b : s.bodies) {
    try {
      s.domain.validate_window(s.shape, b.body, eps_max);
    } catch (const Error& e) {
      invalid("domain.window", std::string(e.what()) + " (body " + b.id + ")");
    }
  }
  r.extrapolation.tail = std::min(4, s.ladder.points);
  r.extrapolation.rel_tol = s.tolerances.rel_tol;
  r.extrapolation.bracket_tol = s.tolerances.bracket_tol;
  r.extrapolation.abs_floor = s.tolerances.abs_floor.value_or(default_abs_floor(s.domain.window()));
  return r;
}

const NamedBody& find_body(const Scenario& s, const std::string& id) {
  for (const NamedBody& b : s.bodies) {
    if (b.id == id) return b;
  }
  throw Error(ErrorCode::ValidationError, "bodies: no body with id '" + id + "'");
}

RunResult run_scenario(const Scenario& s) {
  RunResult out;
  out.resolved = resolve(s);
  const ResolvedRun& r = out.resolved;
  std::optional<RasterEvaluator> ev;
  if (s.engine == Engine::raster) {
    RasterOptions opt;
    opt.refinement = s.refinement;
    opt.eps_floor_cells = s.tolerances.eps_floor_cells;
    ev.emplace(s.shape, s.domain, *r.grid, opt);
  }
  const BoundaryMesh targets = boundary_mesh(s.shape, s.domain);
  for (const FunctionalRequest& req : s.functionals) {
    for (const NamedBody& b : s.bodies) {
      RunRow row;
      row.request = req;
      row.body = b.id;
      row.curve = ev ? content_curve(*ev, req.functional, req.target, b.body, b.id, r.ladder)
                     : content_curve(s.shape, s.domain, req.functional, req.target, b.body, b.id, r.ladder);
      row.estimate = extrapolate(row.curve, r.extrapolation);
      if (req.functional == Functional::SM) {
        row.target = anisotropic_perimeter(targets, b.body, Orientation::outward);
      } else if (req.target != Target::set || req.functional == Functional::ScriptM) {
        row.target = half_sum_target(targets, b.body);
      }
      row.exists = row.target && exists_verdict(row.estimate, *row.target, r.extrapolation);
      out.rows.push_back(std::move(row));
    }
  }
  if (s.relations) {
    ReportOptions ro;
    ro.extrapolation = r.extrapolation;
    ro.lower_bound_tol = s.tolerances.lower_bound_tol;
    ro.closure_inside = s.closure_inside;
    out.relations = ev ? relation_report(*ev, s.bodies, r.ladder, ro) : relation_report(s.shape, s.domain, s.bodies, r.ladder, ro);
  }
  return out;
}

std::string curves_csv(const Scenario& s, const RunResult& r) {
  std::ostringstream os;
  os << "scenario,functional,target,body,h,eps,value\n";
  for (const RunRow& row : r.rows) {
    for (std::size_t k = 0; k < row.curve.eps.size(); ++k) {
      os << s.name << "," << label(row.request) << "," << row.body << "," << fmt(row.curve.h) << ","
         << fmt(row.curve.eps[k]) << "," << fmt(row.curve.values[k]) << "\n";
    }
  }
  return os.str();
}

std::string summary_csv(const Scenario& s, const RunResult& r) {
  std::ostringstream os;
  os << "scenario,functional,target,body,estimate,lower,upper,target_value,exists_flag\n";
  for (const RunRow& row : r.rows) {
    os << s.name << "," << label(row.request) << "," << row.body << "," << fmt(row.estimate.value) << ","
       << fmt(row.estimate.lower) << "," << fmt(row.estimate.upper) << "," << (row.target ? fmt(*row.target) : "")
       << "," << (row.exists ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string text_report(const Scenario& s, const RunResult& r) {
  std::ostringstream os;
  const ResolvedRun& rr = r.resolved;
  os << "scenario " << s.name << "\n";
  os << "  dimension " << s.dimension << "\n";
  os << "  engine " << (s.engine == Engine::exact ? "exact" : "raster") << "\n";
  if (rr.grid) {
    os << "  grid " << s.grid << " counts";
    for (std::int64_t c : rr.grid->counts()) os << " " << c;
    os << " h " << fmt(rr.grid->spacing()) << "\n";
    os << "  eps_floor_cells " << fmt(s.tolerances.eps_floor_cells) << "\n";
    os << "  refinement " << (s.refinement ? std::to_string(s.refinement) : std::string("auto")) << "\n";
  }
  os << "  ladder";
  for (double e : rr.ladder) os << " " << fmt(e);
  os << "\n";
  os << "  rel_tol " << fmt(rr.extrapolation.rel_tol) << "\n";
  os << "  bracket_tol " << fmt(rr.extrapolation.bracket_tol) << "\n";
  os << "  abs_floor " << fmt(rr.extrapolation.abs_floor) << "\n";
  os << "  tail " << rr.extrapolation.tail << "\n";
  os << "  lower_bound_tol " << fmt(s.tolerances.lower_bound_tol) << "\n";
  for (const NamedBody& b : s.bodies) os << "  body " << b.id << " " << b.body.describe() << "\n";
  for (const RunRow& row : r.rows) {
    os << "row " << to_string(row.request.functional) << " " << to_string(row.request.target) << " " << row.body << "\n";
    os << "  values";
    for (double v : row.curve.values) os << " " << fmt(v);
    os << "\n";
    os << "  estimate " << fmt(row.estimate.value) << " slope " << fmt(row.estimate.slope) << " residual "
       << fmt(row.estimate.residual) << "\n";
    os << "  bracket " << fmt(row.estimate.lower) << " " << fmt(row.estimate.upper) << "\n";
    os << "  converged " << (row.estimate.converged ? "true" : "false") << "\n";
    os << "  target " << (row.target ? fmt(*row.target) : std::string("none")) << "\n";
    os << "  exists " << (row.exists ? "true" : "false") << "\n";
  }
  if (r.relations) {
    const RelationReport& rel = *r.relations;
    os << "relations\n";
    os << "  boundary_layer " << fmt(rel.chain_slack_layer) << "\n";
    for (const BodyReport& b : rel.bodies) {
      os << "  body " << b.body << "\n";
      os << "    per_outward " << fmt(b.per_outward) << " per_inward " << fmt(b.per_inward) << " half_sum "
         << fmt(b.half_sum) << "\n";
      for (const RowResult& x : b.rows) {
        os << "    " << to_string(x.row) << " estimate " << fmt(x.estimate.value) << " lower " << fmt(x.estimate.lower)
           << " upper " << fmt(x.estimate.upper) << " target " << fmt(x.target) << " exists "
           << (x.exists ? "true" : "false") << "\n";
      }
      os << "    lower_bounds " << (b.lower_bounds_ok ? "true" : "false") << "\n";
      os << "    chain " << (b.chain_ok ? "true" : "false") << "\n";
      if (b.coincide) os << "    coincide " << (*b.coincide ? "true" : "false") << "\n";
    }
    for (const auto& [row, agree] : rel.verdicts_agree) {
      os << "  verdicts_agree " << to_string(row) << " " << (agree ? "true" : "false") << "\n";
    }
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& file, const std::string& contents) {
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::InvalidArgument, "failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

std::vector<std::filesystem::path> write_outputs(const Scenario& s, const RunResult& r) {
  const std::filesystem::path dir(s.output);
  std::filesystem::create_directories(dir);
  const std::vector<std::filesystem::path> files{dir / (s.name + "_curves.csv"), dir / (s.name + "_summary.csv"),
                                                 dir / (s.name + "_report.txt")};
  write_atomic(files[0], curves_csv(s, r));
  write_atomic(files[1], summary_csv(s, r));
  write_atomic(files[2], text_report(s, r));
  return files;
}

VoxelSet scenario_seed(const Scenario& s, const Grid& g) {
  return rasterize(s.shape, g, s.shape.null_mass() ? RasterMode::supercover : RasterMode::cell_center);
}

}  // namespace minklab
