#pragma once

#include <functional>

namespace kvb::num {

using RealFunction = std::function<double(double)>;

/// A sign-changing interval [lo, hi] of some function.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/// Evaluates f at both ends and validates the sign change.
/// Throws ErrorKind::Bracket (same signs, or lo ≥ hi) or ErrorKind::Evaluation.
Bracket make_bracket(const RealFunction& f, double lo, double hi);

/// Bisection down to an interval of width ≤ tol (or until floating-point
/// resolution is exhausted). f is only evaluated strictly inside [lo, hi].
double bisect(const RealFunction& f, Bracket bracket, double tol);

inline double bisect(const RealFunction& f, double lo, double hi, double tol) {
  return bisect(f, make_bracket(f, lo, hi), tol);
}

inline constexpr double kDefaultRootTol = 1e-12;

}  // namespace kvb::num
