#include "minklab/functional.hpp"

#include "minklab/error.hpp"

namespace minklab {

std::string_view to_string(Functional f) {
  switch (f) {
    case Functional::M: return "M";
    case Functional::SM: return "SM";
    case Functional::FrakM: return "FrakM";
    case Functional::ScriptM: return "ScriptM";
  }
  return "?";
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::set: return "set";
    case Target::topological_boundary: return "topological";
    case Target::reduced_boundary: return "reduced";
  }
  return "?";
}

Functional parse_functional(std::string_view s) {
  if (s == "M") return Functional::M;
  if (s == "SM") return Functional::SM;
  if (s == "FrakM") return Functional::FrakM;
  if (s == "ScriptM") return Functional::ScriptM;
  throw Error(ErrorCode::ParseError, "unknown functional '" + std::string(s) + "'");
}

Target parse_target(std::string_view s) {
  if (s == "set" || s == "E") return Target::set;
  if (s == "topological" || s == "boundary") return Target::topological_boundary;
  if (s == "reduced") return Target::reduced_boundary;
  throw Error(ErrorCode::ParseError, "unknown target '" + std::string(s) + "'");
}

}  // namespace minklab
