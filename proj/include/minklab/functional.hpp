#pragma once

#include <string>
#include <string_view>

namespace minklab {

/// The four content functionals at fixed epsilon:
///   M       (S)  = |((S n O) + eps C) n O| / (2 eps)
///   SM      (E)  = |((E n O) + eps C) n (O \ E)| / eps
///   FrakM   (S)  = |(S + eps C) n O| / (2 eps)
///   ScriptM (E)  = (SM(E) + SM(O \ E)) / 2
enum class Functional { M, SM, FrakM, ScriptM };

/// Which set a functional is applied to, relative to the shape E.
enum class Target { set, topological_boundary, reduced_boundary };

std::string_view to_string(Functional f);
std::string_view to_string(Target t);
Functional parse_functional(std::string_view s);
Target parse_target(std::string_view s);

}  // namespace minklab
