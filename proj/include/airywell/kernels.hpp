#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp with identical
// per-element arithmetic, so the two agree bit-for-bit (tests rely on it).

#include <functional>
#include <span>
#include <vector>

#include "airywell/matrix.hpp"
#include "airywell/potential.hpp"

namespace airywell::kernels {

namespace serial {

Matrix assemble_hamiltonian(const Potential& pot, double z_c, int n_max);

/// psi(z_i) = sum_m c_m sqrt(2/z_c) sin(m pi z_i / z_c), z_i in box coordinates.
std::vector<double> expand_basis(std::span<const double> coeffs, double z_c,
                                 std::span<const double> grid);

/// out_i = f(x_i). f must be safe to call concurrently for the omp variant.
std::vector<double> sample(const std::function<double(double)>& f, std::span<const double> grid);

}  // namespace serial

namespace omp {

Matrix assemble_hamiltonian(const Potential& pot, double z_c, int n_max);
std::vector<double> expand_basis(std::span<const double> coeffs, double z_c,
                                 std::span<const double> grid);
std::vector<double> sample(const std::function<double(double)>& f, std::span<const double> grid);

}  // namespace omp

/// Number of threads the omp kernels will use (1 when built without OpenMP).
int max_threads();

}  // namespace airywell::kernels
