#pragma once

#include <cmath>

namespace airywell {

/// The two closed potential families, in dimensionless units
/// (z = x / x_HO, energies in units of hbar*omega/2):
///   SHO: v(z) = z^2
///   DWP: v(z) = (|z| - z0)^2, barrier height v(0) = z0^2.
struct Potential {
  enum class Kind { sho, dwp };

  Kind kind = Kind::sho;
  double z0 = 0.0;

  static Potential sho() { return {Kind::sho, 0.0}; }
  /// Throws ConfigError unless z0 > 0.
  static Potential dwp(double z0);

  bool is_dwp() const { return kind == Kind::dwp; }
  double barrier() const { return z0 * z0; }

  double operator()(double z) const
  {
    const double u = std::abs(z) - z0;
    return u * u;
  }
};

}  // namespace airywell
