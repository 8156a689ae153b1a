#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "airywell/matrix.hpp"
#include "airywell/potential.hpp"
#include "airywell/types.hpp"

namespace airywell::exact {

/// Numerical knobs shared by all three methods.
struct SolverConfig {
  double z_c = 10.0;       ///< infinite-well width (dimensionless)
  int n_max = 200;         ///< sine-basis size
  double quad_tol = 1e-10;
  double root_tol = 1e-12;
  double delta_z = 0.0;    ///< WKB patch half-width; 0 selects 0.5/alpha per level

  /// z_c = 10 (SHO) or 10*z0 (DWP, never below 10), n_max = 200.
  static SolverConfig defaults_for(const Potential& pot);

  /// Throws ConfigError on a non-positive width, tolerance or basis size
  /// (delta_z == 0 means "default" and is accepted).
  void validate() const;
};

/// K_l(n) = integral_0^{1/2} x^l cos(n pi x) dx for l in {0,1,2}, n >= 0.
double k_moment(int l, int n);

/// delta_nm (n pi / z_c)^2.
double kinetic_element(int n, int m, double z_c);

/// <n|v|m> of the box-centred potential in the normalized sine basis:
/// (2/z_c) int_0^{z_c} sin(n pi z/z_c) v(z - z_c/2) sin(m pi z/z_c) dz.
/// Throws ConfigError for a DWP with z0 > z_c/2.
double potential_element(const Potential& pot, int n, int m, double z_c);

/// H = H0 + V, n_max x n_max, symmetric bit-for-bit. Assembly runs on the
/// OpenMP kernel.
Matrix build_hamiltonian(const Potential& pot, const SolverConfig& cfg);

struct SpectrumResult {
  std::vector<double> energies;                  ///< ascending
  std::vector<std::vector<double>> coefficients; ///< unit-norm c_m per level
  std::vector<Parity> parities;                  ///< filled by solve_potential only
  SolverConfig config;

  /// True when level i sits within 1e-9 of a neighbour.
  bool near_degenerate(std::size_t i) const;
};

/// Lowest k eigenpairs of a symmetric matrix (Householder + implicit QL).
/// Throws DomainError if H is asymmetric beyond 1e-12 or k > size.
SpectrumResult solve_spectrum(const Matrix& h, std::size_t k);

/// Lowest k levels for a potential. The box-centred potential is even, so H
/// splits exactly into odd-m (even parity) and even-m (odd parity) blocks,
/// which are diagonalized separately; coefficients are then embedded back
/// into the full basis and sign-fixed (positive first significant extremum
/// from the left).
SpectrumResult solve_potential(const Potential& pot, const SolverConfig& cfg, std::size_t k);

struct SampledWavefunction {
  std::vector<double> z;       ///< centred coordinate z' = z - z_c/2
  std::vector<double> values;
};

/// psi(z) = sum_m c_m sqrt(2/z_c) sin(m pi z / z_c) on a grid in [0, z_c],
/// sign-fixed so the first extremum from the left with |psi| >= 1% of the
/// peak is positive. Throws DomainError for points outside the box.
SampledWavefunction wavefunction_from_coeffs(std::span<const double> coeffs, double z_c,
                                             std::span<const double> grid);

/// Unsigned basis sum at a single centred coordinate (no sign convention).
double basis_sum(std::span<const double> coeffs, double z_c, double z_centred);

}  // namespace airywell::exact
