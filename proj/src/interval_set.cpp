#include "minklab/interval_set.hpp"

#include "minklab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace minklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Representative of the open gap (a, b); either bound may be infinite.
double gap_sample(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  if (std::isinf(a)) return b - 1.0 - std::abs(b);
  if (std::isinf(b)) return a + 1.0 + std::abs(a);
  return a + 0.5 * (b - a);
}

template <class Pred>
IntervalSet build_from_predicate(std::vector<double> cuts, Pred&& in) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Interval> parts;
  // Walk the partition (-inf, c0), {c0}, (c0, c1), {c1}, ..., (ck, +inf).
  double prev = -kInf;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double next = i < cuts.size() ? cuts[i] : kInf;
    if (in(gap_sample(prev, next))) parts.push_back({prev, next, false, false});
    if (i < cuts.size() && in(next)) parts.push_back({next, next, true, true});
    prev = next;
  }
  return IntervalSet::from_components(std::move(parts));
}

}  // namespace

IntervalSet IntervalSet::real_line() {
  IntervalSet s;
  s.parts_.push_back({-kInf, kInf, false, false});
  return s;
}

IntervalSet IntervalSet::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  if (std::isnan(lo) || std::isnan(hi)) throw Error(ErrorCode::InvalidArgument, "NaN endpoint");
  IntervalSet s;
  if (lo > hi) return s;
  if (lo == hi && !(lo_closed && hi_closed)) return s;
  if (std::isinf(lo)) lo_closed = false;
  if (std::isinf(hi)) hi_closed = false;
  if (lo == hi && std::isinf(lo)) return s;
  s.parts_.push_back({lo, hi, lo_closed, hi_closed});
  return s;
}

IntervalSet IntervalSet::points(const std::vector<double>& xs) {
  std::vector<Interval> parts;
  for (double x : xs) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite point");
    parts.push_back({x, x, true, true});
  }
  return from_components(std::move(parts));
}

IntervalSet IntervalSet::from_components(std::vector<Interval> parts) {
  IntervalSet s;
  for (const Interval& p : parts) {
    IntervalSet one = interval(p.lo, p.hi, p.lo_closed, p.hi_closed);
    for (const Interval& q : one.parts_) s.parts_.push_back(q);
  }
  s.normalize();
  return s;
}

void IntervalSet::normalize() {
  std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> out;
  for (const Interval& p : parts_) {
    if (!out.empty()) {
      Interval& last = out.back();
      const bool overlaps = p.lo < last.hi || (p.lo == last.hi && (p.lo_closed || last.hi_closed));
      if (overlaps) {
        if (p.lo == last.lo) last.lo_closed = last.lo_closed || p.lo_closed;
        if (p.hi > last.hi) {
          last.hi = p.hi;
          last.hi_closed = p.hi_closed;
        } else if (p.hi == last.hi) {
          last.hi_closed = last.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(p);
  }
  parts_ = std::move(out);
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](double v, const Interval& p) { return v < p.lo; });
  // Candidates: the component starting at or before x.
  if (it != parts_.begin()) {
    if (std::prev(it)->contains(x)) return true;
  }
  return false;
}

std::vector<double> IntervalSet::breakpoints() const {
  std::vector<double> out;
  for (const Interval& p : parts_) {
    if (std::isfinite(p.lo)) out.push_back(p.lo);
    if (std::isfinite(p.hi)) out.push_back(p.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> parts = parts_;
  parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
  IntervalSet s;
  s.parts_ = std::move(parts);
  s.normalize();
  return s;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<double> cuts = breakpoints();
  const std::vector<double> more = other.breakpoints();
  cuts.insert(cuts.end(), more.begin(), more.end());
  return build_from_predicate(std::move(cuts),
                              [&](double x) { return contains(x) && other.contains(x); });
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
  std::vector<double> cuts = breakpoints();
  const std::vector<double> more = other.breakpoints();
  cuts.insert(cuts.end(), more.begin(), more.end());
  return build_from_predicate(std::move(cuts),
                              [&](double x) { return contains(x) && !other.contains(x); });
}

IntervalSet IntervalSet::complement() const {
  return build_from_predicate(breakpoints(), [&](double x) { return !contains(x); });
}

IntervalSet IntervalSet::closure() const {
  std::vector<Interval> parts = parts_;
  for (Interval& p : parts) {
    p.lo_closed = std::isfinite(p.lo);
    p.hi_closed = std::isfinite(p.hi);
  }
  return from_components(std::move(parts));
}

IntervalSet IntervalSet::interior() const {
  std::vector<Interval> parts;
  for (const Interval& p : parts_) {
    if (!p.degenerate()) parts.push_back({p.lo, p.hi, false, false});
  }
  return from_components(std::move(parts));
}

IntervalSet IntervalSet::boundary() const { return closure().subtract(interior()); }

IntervalSet IntervalSet::dilate(double a, double b) const {
  if (!(a <= b)) throw Error(ErrorCode::InvalidArgument, "dilation interval must satisfy a <= b");
  std::vector<Interval> parts;
  parts.reserve(parts_.size());
  for (const Interval& p : parts_) parts.push_back({p.lo + a, p.hi + b, p.lo_closed, p.hi_closed});
  return from_components(std::move(parts));
}

double IntervalSet::measure() const {
  double total = 0.0;
  for (const Interval& p : parts_) total += p.hi - p.lo;
  return total;
}

bool IntervalSet::dense_left_of(double x) const {
  for (const Interval& p : parts_) {
    if (p.lo < x && p.hi >= x) return true;
  }
  return false;
}

bool IntervalSet::dense_right_of(double x) const {
  for (const Interval& p : parts_) {
    if (p.lo <= x && p.hi > x) return true;
  }
  return false;
}

IntervalSet IntervalSet::density_one() const {
  // Interior of the closure of the positive-length part.
  std::vector<Interval> fat;
  for (const Interval& p : parts_) {
    if (!p.degenerate()) fat.push_back(p);
  }
  return from_components(std::move(fat)).closure().interior();
}

IntervalSet IntervalSet::density_zero() const {
  std::vector<Interval> fat;
  for (const Interval& p : parts_) {
    if (!p.degenerate()) fat.push_back(p);
  }
  return from_components(std::move(fat)).closure().complement();
}

IntervalSet IntervalSet::essential_boundary() const {
  return density_one().unite(density_zero()).complement();
}

bool IntervalSet::operator==(const IntervalSet& other) const {
  if (parts_.size() != other.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const Interval& a = parts_[i];
    const Interval& b = other.parts_[i];
    if (a.lo != b.lo || a.hi != b.hi || a.lo_closed != b.lo_closed || a.hi_closed != b.hi_closed) {
      return false;
    }
  }
  return true;
}

std::string IntervalSet::describe() const {
  if (parts_.empty()) return "{}";
  std::ostringstream os;
  os.precision(15);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const Interval& p = parts_[i];
    if (i) os << " u ";
    if (p.degenerate()) {
      os << "{" << p.lo << "}";
    } else {
      os << (p.lo_closed ? "[" : "(") << p.lo << ", " << p.hi << (p.hi_closed ? "]" : ")");
    }
  }
  return os.str();
}

}  // namespace minklab
