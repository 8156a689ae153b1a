#include "airywell/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "airywell/errors.hpp"
#include "airywell/kernels.hpp"

namespace airywell {

Potential Potential::dwp(double z0)
{
  if (!(z0 > 0) || !std::isfinite(z0)) throw ConfigError("double-well offset z0 must be positive");
  return {Kind::dwp, z0};
}

namespace exact {

namespace {

// sin(k pi/2), cos(k pi/2) without rounding, so the parity blocks of H are
// exactly decoupled.
constexpr double quarter_sin(int k) { return std::array<double, 4>{0, 1, 0, -1}[((k % 4) + 4) % 4]; }
constexpr double quarter_cos(int k) { return std::array<double, 4>{1, 0, -1, 0}[((k % 4) + 4) % 4]; }

struct Eigensystem {
  std::vector<double> values;   // ascending
  Matrix vectors;               // column j is the eigenvector of values[j]
};

// Householder reduction to tridiagonal form followed by the implicit QL
// iteration (EISPACK tred2/tql2 lineage). On return d holds eigenvalues and
// v the eigenvectors as columns.
void tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e)
{
  const int n = static_cast<int>(v.size());
  for (int j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (int k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

void ql_implicit(Matrix& v, std::vector<double>& d, std::vector<double>& e)
{
  const int n = static_cast<int>(v.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 200) throw NumericError("eigensolver: QL iteration did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (int k = 0; k < n; ++k) {
            h = v(k, i + 1);
            v(k, i + 1) = s * v(k, i) + c * h;
            v(k, i) = c * v(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

Eigensystem symmetric_eigensystem(const Matrix& h)
{
  const std::size_t n = h.size();
  Matrix v = h;
  std::vector<double> d(n), e(n);
  tridiagonalize(v, d, e);
  ql_implicit(v, d, e);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });
  Eigensystem out{std::vector<double>(n), Matrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

double sign_convention(std::span<const double> values)
{
  if (values.empty()) return 1.0;
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 1.0;
  const double floor = 0.01 * peak;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double a = values[i - 1], b = values[i], c = values[i + 1];
    if (std::abs(b) < floor) continue;
    const bool extremum = (b >= a && b >= c) || (b <= a && b <= c);
    if (extremum) return b < 0 ? -1.0 : 1.0;
  }
  // monotone sample: use the largest-magnitude point
  auto it = std::max_element(values.begin(), values.end(),
                             [](double a, double b) { return std::abs(a) < std::abs(b); });
  return *it < 0 ? -1.0 : 1.0;
}

}  // namespace

SolverConfig SolverConfig::defaults_for(const Potential& pot)
{
  SolverConfig cfg;
  if (pot.is_dwp()) cfg.z_c = std::max(10.0, 10.0 * pot.z0);
  return cfg;
}

void SolverConfig::validate() const
{
  if (!(z_c > 0) || !std::isfinite(z_c)) throw ConfigError("z_c must be positive");
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  if (!(quad_tol > 0) || !(root_tol > 0)) throw ConfigError("tolerances must be positive");
  if (delta_z < 0 || !std::isfinite(delta_z)) throw ConfigError("delta_z must be positive (0 = default)");
}

double k_moment(int l, int n)
{
  if (l < 0 || l > 2) throw DomainError("k_moment: l must be 0, 1 or 2");
  if (n < 0) throw DomainError("k_moment: n must be >= 0");
  if (n == 0) {
    constexpr double zero_values[3] = {1.0 / 2, 1.0 / 8, 1.0 / 24};
    return zero_values[l];
  }
  const double a = n * std::numbers::pi;
  const double a2 = a * a;
  const double k0 = quarter_sin(n) / a;
  switch (l) {
    case 0: return k0;
    case 1: return 0.5 * k0 - (1.0 - quarter_cos(n)) / a2;
    default: return (0.25 - 2.0 / a2) * k0 + quarter_cos(n) / a2;
  }
}

double kinetic_element(int n, int m, double z_c)
{
  if (n < 1 || m < 1) throw DomainError("kinetic_element: indices start at 1");
  if (n != m) return 0.0;
  const double k = n * std::numbers::pi / z_c;
  return k * k;
}

double potential_element(const Potential& pot, int n, int m, double z_c)
{
  if (n < 1 || m < 1) throw DomainError("potential_element: indices start at 1");
  if (!(z_c > 0)) throw ConfigError("potential_element: z_c must be positive");
  if (pot.is_dwp() && pot.z0 > 0.5 * z_c)
    throw ConfigError("double well does not fit in the box: z0 = " + std::to_string(pot.z0) +
                      " > z_c/2 = " + std::to_string(0.5 * z_c));

  // v(s) is even about the box centre, so only the cosine parts survive:
  // V_nm = 2 z_c^2 [cos((n-m)pi/2) K(n-m) - cos((n+m)pi/2) K(n+m)]
  // with K = K2 - 2r K1 + r^2 K0 and r = z0/z_c (r = 0 for the SHO).
  const double r = pot.is_dwp() ? pot.z0 / z_c : 0.0;
  auto composite = [r](int k) {
    return k_moment(2, k) - 2.0 * r * k_moment(1, k) + r * r * k_moment(0, k);
  };
  const int diff = std::abs(n - m);
  const int sum = n + m;
  double value = 0.0;
  if (quarter_cos(diff) != 0.0) value += quarter_cos(diff) * composite(diff);
  if (quarter_cos(sum) != 0.0) value -= quarter_cos(sum) * composite(sum);
  return 2.0 * z_c * z_c * value;
}

Matrix build_hamiltonian(const Potential& pot, const SolverConfig& cfg)
{
  cfg.validate();
  return kernels::omp::assemble_hamiltonian(pot, cfg.z_c, cfg.n_max);
}

bool SpectrumResult::near_degenerate(std::size_t i) const
{
  constexpr double threshold = 1e-9;
  if (i > 0 && std::abs(energies[i] - energies[i - 1]) < threshold) return true;
  if (i + 1 < energies.size() && std::abs(energies[i + 1] - energies[i]) < threshold) return true;
  return false;
}

SpectrumResult solve_spectrum(const Matrix& h, std::size_t k)
{
  const std::size_t n = h.size();
  if (k > n) throw DomainError("solve_spectrum: requested more levels than the matrix dimension");
  double scale = 1.0;
  for (double v : h.data()) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(h(i, j) - h(j, i)) > 1e-12 * scale)
        throw DomainError("solve_spectrum: matrix is not symmetric");

  SpectrumResult out;
  if (n == 0 || k == 0) return out;
  const auto sys = symmetric_eigensystem(h);
  for (std::size_t j = 0; j < k; ++j) {
    out.energies.push_back(sys.values[j]);
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = sys.vectors(i, j);
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

double basis_sum(std::span<const double> coeffs, double z_c, double z_centred)
{
  const double z = z_centred + 0.5 * z_c;
  double acc = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    acc += coeffs[m] * std::sin(static_cast<double>(m + 1) * std::numbers::pi * z / z_c);
  return std::sqrt(2.0 / z_c) * acc;
}

SpectrumResult solve_potential(const Potential& pot, const SolverConfig& cfg, std::size_t k)
{
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.n_max);
  if (k > n) throw DomainError("solve_potential: requested more levels than the basis size");
  const Matrix h = build_hamiltonian(pot, cfg);

  struct Candidate {
    double energy;
    Parity parity;
    std::vector<double> coeffs;
  };
  std::vector<Candidate> all;
  // even parity <-> odd m (index 0, 2, 4, ...); odd parity <-> even m
  for (Parity parity : {Parity::even, Parity::odd}) {
    const std::size_t first = parity == Parity::even ? 0 : 1;
    std::vector<std::size_t> idx;
    for (std::size_t i = first; i < n; i += 2) idx.push_back(i);
    if (idx.empty()) continue;
    Matrix block(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) block(a, b) = h(idx[a], idx[b]);
    const auto sys = symmetric_eigensystem(block);
    const std::size_t take = std::min(k, idx.size());
    for (std::size_t j = 0; j < take; ++j) {
      std::vector<double> c(n, 0.0);
      for (std::size_t a = 0; a < idx.size(); ++a) c[idx[a]] = sys.vectors(a, j);
      all.push_back({sys.values[j], parity, std::move(c)});
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.parity == Parity::even && b.parity == Parity::odd;
  });

  // sign convention evaluated on a fixed internal grid
  const std::size_t points = 8 * n + 1;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = cfg.z_c * static_cast<double>(i) / (points - 1);

  SpectrumResult out;
  out.config = cfg;
  for (std::size_t j = 0; j < k && j < all.size(); ++j) {
    auto& cand = all[j];
    const auto samples = kernels::omp::expand_basis(cand.coeffs, cfg.z_c, grid);
    const double s = sign_convention(samples);
    for (double& c : cand.coeffs) c *= s;
    out.energies.push_back(cand.energy);
    out.parities.push_back(cand.parity);
    out.coefficients.push_back(std::move(cand.coeffs));
  }
  return out;
}

SampledWavefunction wavefunction_from_coeffs(std::span<const double> coeffs, double z_c,
                                             std::span<const double> grid)
{
  if (!(z_c > 0)) throw ConfigError("wavefunction_from_coeffs: z_c must be positive");
  for (double z : grid)
    if (!(z >= 0.0 && z <= z_c)) throw DomainError("wavefunction_from_coeffs: grid point outside the box");
  SampledWavefunction out;
  out.values = kernels::omp::expand_basis(coeffs, z_c, grid);
  const double s = sign_convention(out.values);
  out.z.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.z.push_back(grid[i] - 0.5 * z_c);
    out.values[i] *= s;
  }
  return out;
}

}  // namespace exact
}  // namespace airywell
