#pragma once

#include <string>
#include <vector>

namespace minklab {

/// One connected component of a subset of the real line. A single point is
/// the closed degenerate interval [x, x]. Endpoints may be infinite (then open).
struct Interval {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;

  bool degenerate() const { return lo == hi; }
  bool contains(double x) const {
    return (x > lo || (lo_closed && x == lo)) && (x < hi || (hi_closed && x == hi));
  }
};

/// Exact finite union of intervals and points on the real line.
///
/// Components are kept sorted, pairwise disjoint and non-adjacent, so two sets
/// are equal iff their component lists are equal. Set operations are computed
/// by evaluating membership on the common breakpoint partition, which is exact
/// in floating point because no new coordinates are created.
class IntervalSet {
 public:
  IntervalSet() = default;

  static IntervalSet empty() { return {}; }
  static IntervalSet real_line();
  static IntervalSet interval(double lo, double hi, bool lo_closed, bool hi_closed);
  static IntervalSet closed(double lo, double hi) { return interval(lo, hi, true, true); }
  static IntervalSet open(double lo, double hi) { return interval(lo, hi, false, false); }
  static IntervalSet point(double x) { return interval(x, x, true, true); }
  static IntervalSet points(const std::vector<double>& xs);
  static IntervalSet from_components(std::vector<Interval> parts);

  const std::vector<Interval>& components() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool contains(double x) const;

  /// Every finite endpoint, sorted and unique.
  std::vector<double> breakpoints() const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet subtract(const IntervalSet& other) const;
  IntervalSet complement() const;

  IntervalSet closure() const;
  IntervalSet interior() const;
  /// Topological boundary: closure minus interior.
  IntervalSet boundary() const;

  /// Minkowski sum with the closed interval [a, b] (a <= b).
  IntervalSet dilate(double a, double b) const;

  /// Lebesgue measure (may be +inf).
  double measure() const;

  /// True if every point just left of x (resp. right of x) belongs to the set.
  bool dense_left_of(double x) const;
  bool dense_right_of(double x) const;

  /// Points of Lebesgue density one: interior of the closure of the
  /// non-degenerate part.
  IntervalSet density_one() const;
  /// Points of Lebesgue density zero: complement of that closure.
  IntervalSet density_zero() const;
  /// Finite points where the density is neither 0 nor 1 (here always 1/2).
  IntervalSet essential_boundary() const;

  bool operator==(const IntervalSet& other) const;

  std::string describe() const;

 private:
  void normalize();

  std::vector<Interval> parts_;
};

}  // namespace minklab
