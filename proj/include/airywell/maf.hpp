#pragma once

#include "airywell/types.hpp"
#include "airywell/wavefunction.hpp"

namespace airywell::maf {

/// A MAF level. For the SHO eps = z_t^2 and the matching fields keep their
/// defaults; for the DWP (c1, c2, gamma) are those of dwp_maf_coeffs(eps).
struct MafLevel {
  int n = 0;
  Parity parity = Parity::even;
  double eps = 0;
  double c1 = 1;
  double c2 = 0;
  double gamma = 0;
};

// ---- SHO ------------------------------------------------------------------

/// Derivatives at z = 0 of q(z) = -(3/2 s1(z))^{2/3}.
struct QAtOrigin {
  double q, dq, d2q;
};
QAtOrigin sho_q_origin(double zt2);

/// Quantization functions in zt2 = z_t^2:
///   odd:  Ai(q(0))
///   even: Ai'(q(0)) q'(0)^2 - q''(0) Ai(q(0)) / 2   (psi'(0) = 0 without the pole)
double sho_maf_condition(double zt2, Parity parity);

/// Lowest `count` levels; the root scan covers (0, 4 count].
/// Throws NumericError if fewer roots are found.
std::vector<MafLevel> sho_maf_energies(int count, double root_tol = 1e-12);

/// q(z) for the SHO: -(3/2 s1)^{2/3} inside z_t, +(3/2 s2)^{2/3} outside.
double sho_maf_q(double z, double z_t);

/// Two branches meeting at z_t. Throws ConfigError unless z_max > z_t.
PiecewiseWavefunction sho_maf_wavefunction(const MafLevel& level, double z_max, double quad_tol = 1e-12);

// ---- DWP ------------------------------------------------------------------

struct MatchCoeffs {
  double c1, c2, gamma;
};

/// gamma = -(1/4)(3 pi eps)^{2/3};
/// c1 = 1 + 2 pi Bi(gamma)(Ai(gamma)/(4 gamma) + Ai'(gamma)),
/// c2 = -2 pi Ai(gamma)(Ai(gamma)/(4 gamma) + Ai'(gamma)).
/// Throws DomainError if eps <= 0.
MatchCoeffs dwp_maf_coeffs(double eps);

/// odd:  c1 Ai(xi0) + c2 Bi(xi0), xi0 = (3/2 w1(0))^{2/3}
/// even: psi'(0) of the outer branch divided by its prefactor,
///       (u'/u) B(xi0) + xi'(0) B'(xi0),  B = c1 Ai + c2 Bi.
/// Requires 0 < eps < z0^2.
double dwp_maf_condition(double eps, double z0, Parity parity);

/// Lowest `count` levels below the barrier, alternating parity; exhausted
/// when roots run out or parity breaks.
LevelSet<MafLevel> dwp_maf_eigenvalues(double z0, int count, double root_tol = 1e-12);

/// q1 on [0, z0] (around z1) and q2 beyond z0 (around z2); negative where
/// the motion is classically allowed.
double dwp_maf_q(double z, double z0, double eps);

/// Four branches M1 (0, z1), M2 (z1, z0), M3 (z0, z2), M4 (z2, inf).
/// Throws DomainError if eps >= z0^2 and ConfigError unless z_max > z2.
PiecewiseWavefunction dwp_maf_wavefunction(const MafLevel& level, double z0, double z_max,
                                           double quad_tol = 1e-12);

}  // namespace airywell::maf
