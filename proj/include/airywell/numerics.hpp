#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace airywell::numerics {

using RealFn = std::function<double(double)>;

/// Sign-change interval: lo < hi and f_lo * f_hi < 0.
struct Bracket {
  double lo = 0, hi = 0, f_lo = 0, f_hi = 0;
};

struct ScanResult {
  std::vector<Bracket> brackets;
  std::vector<double> skipped;  ///< grid points where f was not finite
  std::vector<Bracket> poles;   ///< sign changes classified as poles
};

/// Samples f on `grid_points` equally spaced points of [lo, hi] and returns one
/// bracket per sign change between adjacent finite samples, ascending.
///
/// A sign change is classified as a pole (and reported in `poles` instead)
/// when the midpoint value has the sign of one endpoint but a larger
/// magnitude, i.e. |f| grows into the interval. Roots of even multiplicity
/// between two grid points are not seen.
///
/// Throws DomainError if lo >= hi, grid_points < 2 or no sample is finite.
ScanResult scan_brackets(const RealFn& f, double lo, double hi, std::size_t grid_points);

/// Brent's method (inverse quadratic / secant with bisection safeguard) on a
/// valid bracket; returns once the bracket is narrower than `tol`.
/// Throws NumericError if f turns non-finite inside the bracket.
double refine_root(const RealFn& f, const Bracket& b, double tol);

/// scan_brackets + refine_root, discarding anything whose refined |f| does
/// not drop below both bracket endpoint magnitudes (a pole, not a root).
std::vector<double> find_roots(const RealFn& f, double lo, double hi, std::size_t grid_points,
                               double tol);

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature. The rule never
/// evaluates interval endpoints, so integrable endpoint singularities such
/// as x^{-1/2} are fine. Stops when the summed error estimate is below
/// tol * (1 + |value|); otherwise returns the best estimate with
/// `converged == false` after `max_intervals` subdivisions.
QuadratureResult integrate(const RealFn& f, double lo, double hi, double tol,
                           std::size_t max_intervals = 4000);

}  // namespace airywell::numerics
