#include "airywell/turning.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "airywell/errors.hpp"

namespace airywell::turning {

namespace {

constexpr double series_cutoff = 1e-2;  // d/a below which the series is used

void check(double a, double d, Side side)
{
  if (!(a > 0) || !std::isfinite(a)) throw DomainError("turning arc: a must be positive");
  if (!(d >= 0) || !std::isfinite(d)) throw DomainError("turning arc: distance must be >= 0");
  if (side == Side::allowed && d > 2 * a)
    throw DomainError("turning arc: distance " + std::to_string(d) + " beyond the far turning point");
}

// S = T / ((2/3) sqrt(2a) d^{3/2}) = sum_k binom(1/2, k) (side*d/2a)^k (3/2)/(k + 3/2)
double shape_series(double a, double d, Side side)
{
  const double x = static_cast<int>(side) * d / (2 * a);
  double binom = 1.0, power = 1.0, sum = 0.0;
  for (int k = 0; k < 10; ++k) {
    sum += binom * power * 1.5 / (k + 1.5);
    binom *= (0.5 - k) / (k + 1);
    power *= x;
  }
  return sum;
}

double closed_form(double a, double d, Side side)
{
  const double u = d / a;
  if (side == Side::forbidden) {
    const double root = std::sqrt(d * (d + 2 * a));
    // acosh(1 + u) = log1p(u + sqrt(u (u + 2)))
    return 0.5 * ((d + a) * root - a * a * std::log1p(u + std::sqrt(u * (u + 2))));
  }
  const double root = std::sqrt(d * (2 * a - d));
  // acos(1 - u) = 2 asin(sqrt(u/2))
  return 0.5 * ((d - a) * root + a * a * 2 * std::asin(std::sqrt(0.5 * u)));
}

}  // namespace

double arc(double a, double d, Side side)
{
  check(a, d, side);
  // past the midpoint of an allowed arc, measure from the far turning point
  if (side == Side::allowed && d > a) return 0.5 * std::numbers::pi * a * a - arc(a, 2 * a - d, side);
  if (d < series_cutoff * a) return (2.0 / 3.0) * std::sqrt(2 * a) * d * std::sqrt(d) * shape_series(a, d, side);
  return closed_form(a, d, side);
}

ArcTerms arc_terms(double a, double d, Side side)
{
  check(a, d, side);
  const double two_a = 2 * a;
  double w, shape;
  if (d < series_cutoff * a) {
    shape = shape_series(a, d, side);
    w = (2.0 / 3.0) * std::sqrt(two_a) * d * std::sqrt(d) * shape;
  } else {
    w = closed_form(a, d, side);
    shape = w / ((2.0 / 3.0) * std::sqrt(two_a) * d * std::sqrt(d));
  }
  const double far = two_a + static_cast<int>(side) * d;
  return {w, std::cbrt(two_a) * d * std::cbrt(shape * shape),
          std::pow(two_a, 1.0 / 12) * std::pow(shape, 1.0 / 6) / std::pow(far, 0.25)};
}

}  // namespace airywell::turning
