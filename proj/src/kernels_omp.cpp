#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "airywell/exact.hpp"
#include "airywell/kernels.hpp"

namespace airywell::kernels {

namespace omp {

Matrix assemble_hamiltonian(const Potential& pot, double z_c, int n_max)
{
  Matrix h(static_cast<std::size_t>(n_max));
  // Validation happens once up front; the element function then cannot throw
  // inside the parallel region.
  (void)exact::potential_element(pot, 1, 1, z_c);
#pragma omp parallel for schedule(dynamic, 8)
  for (int n = 1; n <= n_max; ++n) {
    for (int m = n; m <= n_max; ++m) {
      const double value = exact::kinetic_element(n, m, z_c) + exact::potential_element(pot, n, m, z_c);
      h(n - 1, m - 1) = value;
      h(m - 1, n - 1) = value;
    }
  }
  return h;
}

std::vector<double> expand_basis(std::span<const double> coeffs, double z_c,
                                 std::span<const double> grid)
{
  const double norm = std::sqrt(2.0 / z_c);
  const double k = std::numbers::pi / z_c;
  std::vector<double> out(grid.size());
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m)
      acc += coeffs[m] * std::sin(static_cast<double>(m + 1) * k * grid[i]);
    out[i] = norm * acc;
  }
  return out;
}

std::vector<double> sample(const std::function<double(double)>& f, std::span<const double> grid)
{
  std::vector<double> out(grid.size());
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = f(grid[i]);
  return out;
}

}  // namespace omp

int max_threads()
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace airywell::kernels
