#pragma once

#include <limits>

namespace ddvv {

/// Outcome of evaluating one inequality lhs >= rhs at a point.
struct GapReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;    // lhs - rhs
  double ratio = 0.0;  // rhs / lhs, 0 when both sides vanish
  double scale = 0.0;  // homogeneity normalizer for tolerances

  /// gap >= -tol * scale
  bool holds(double tol) const { return gap >= -tol * scale; }
};

inline GapReport make_gap(double lhs, double rhs, double scale) {
  GapReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  if (lhs != 0.0) {
    r.ratio = rhs / lhs;
  } else if (rhs == 0.0) {
    r.ratio = 0.0;
  } else {
    r.ratio = rhs > 0.0 ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
  }
  r.scale = scale;
  return r;
}

}  // namespace ddvv
