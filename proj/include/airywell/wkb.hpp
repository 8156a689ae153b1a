#pragma once

#include "airywell/potential.hpp"
#include "airywell/types.hpp"
#include "airywell/wavefunction.hpp"

namespace airywell::wkb {

/// A WKB level. For the SHO both turning-point fields hold z_t = sqrt(eps);
/// for the DWP they hold z1 = z0 - sqrt(eps) and z2 = z0 + sqrt(eps).
struct WkbLevel {
  int n = 0;
  Parity parity = Parity::even;
  double eps = 0;
  double z1 = 0;
  double z2 = 0;
};

// ---- SHO ------------------------------------------------------------------

/// eps_n = 2n + 1 for n = 0..count-1. Throws ConfigError if count < 1.
std::vector<WkbLevel> sho_wkb_levels(int count);

/// k-th (k >= 1) root of the even or odd quantization condition, in z_t^2:
/// 4k - 3 (even) and 4k - 1 (odd).
int sho_quantized_zt2(int k, Parity parity);

enum class SKind { s1, s2 };

/// s1(z) = int_z^{z_t} sqrt(z_t^2 - y^2) dy (0 <= z <= z_t),
/// s2(z) = int_{z_t}^z sqrt(y^2 - z_t^2) dy (z >= z_t).
/// Throws DomainError outside those ranges.
double sho_s_aux(SKind kind, double z, double z_t);

/// Airy scale sqrt(2) (n + 1/2)^{1/6} and the default half-width 0.5/alpha.
double sho_airy_scale(const WkbLevel& level);
double sho_default_delta_z(const WkbLevel& level);

/// Three regions: R1 bare oscillatory, R2 Airy patch of half-width delta_z
/// about z_t, R3 bare decaying. Throws ConfigError unless
/// 0 < delta_z < z_t and z_max > z_t + delta_z.
PiecewiseWavefunction sho_wkb_wavefunction(const WkbLevel& level, double delta_z, double z_max,
                                           double quad_tol = 1e-12);

// ---- DWP ------------------------------------------------------------------

/// Even/odd quantization function
///   cot(pi eps/2) - (g/2) ((z0 + r)/sqrt(eps))^eps exp(-z0 r),  r = sqrt(z0^2 - eps),
/// with g_odd = -1 and g_even = (2r^3 + z0)/(2r^3 - z0). Requires 0 < eps < z0^2.
double dwp_wkb_condition(double eps, double z0, Parity parity);

/// Energy above which g_even changes sign through its pole:
/// z0^2 - (z0/2)^{2/3}. Even roots are only admitted below it.
double dwp_wkb_even_limit(double z0);

/// Lowest `count` sub-barrier levels, alternating even/odd. The list stops
/// (exhausted = true) when roots run out or the next root has the wrong parity.
LevelSet<WkbLevel> dwp_wkb_eigenvalues(double z0, int count, double root_tol = 1e-12);

enum class WKind { w1, w2, w3, w4 };

/// Phase integrals with z1,2 = z0 -+ sqrt(eps):
///   w1 = int_z^{z1} sqrt((y-z0)^2 - eps)   (z <= z1)
///   w2 = int_{z1}^z sqrt(eps - (y-z0)^2)   (z1 <= z <= z2)
///   w3 = int_z^{z2} sqrt(eps - (y-z0)^2)   (z1 <= z <= z2)
///   w4 = int_{z2}^z sqrt((y-z0)^2 - eps)   (z >= z2)
/// Throws DomainError for eps outside (0, z0^2) or z outside the range.
double dwp_w_aux(WKind kind, double z, double z0, double eps);

/// Airy scale (4 eps)^{1/6}.
double dwp_airy_scale(const WkbLevel& level);

/// min(0.5/alpha, half the largest admissible half-width).
double dwp_default_delta_z(const WkbLevel& level);

/// Five regions R1..R5 with Airy patches of half-width delta_z about z1 and
/// z2. Throws ConfigError unless 0 < delta_z < min(z1, (z2 - z1)/2) and
/// z_max > z2 + delta_z.
PiecewiseWavefunction dwp_wkb_wavefunction(const WkbLevel& level, double z0, double delta_z, double z_max,
                                           double quad_tol = 1e-12);

}  // namespace airywell::wkb
