#pragma once

#include "minklab/content.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace minklab {

/// Standard sets and bodies used by the built-in checks.
namespace catalog {

ConvexBody square();    // [-1, 1]^2
ConvexBody cross();     // hull of (+-1, 0), (0, +-1)
ConvexBody triangle();  // hull of (2, -1), (-1, 2), (-1, -1)

/// E = {1 < |x| < 2} and Omega = {|x| in [0, 1) u (1, 2)} in the window [-w, w]^2.
Shape annulus();
Domain annulus_domain(double half_width = 2.7);

Shape unit_square();
Shape unit_disc();
/// The segment from (1, 0) to (0, 1).
Shape tilted_segment();

/// [0, 1] u {2} on the line.
Shape interval_with_point();

}  // namespace catalog

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Replaces the relative tolerances of raster checks.
  std::optional<double> rel_tol;
  /// Only checks whose name contains this string run.
  std::string filter;
};

struct CheckInfo {
  std::string name;
  bool raster;  // subject to the rel_tol override
};

std::vector<CheckInfo> list_checks();

/// Runs the selected checks in order; `on_result` sees each result as it completes.
std::vector<CheckResult> run_checks(const VerifyOptions& opt,
                                    const std::function<void(const CheckResult&)>& on_result = {});

/// One line per check plus a summary line.
std::string format_result(const CheckResult& r);

}  // namespace minklab
