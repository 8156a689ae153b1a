#include "airywell/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "airywell/airy.hpp"
#include "airywell/errors.hpp"
#include "airywell/numerics.hpp"
#include "airywell/turning.hpp"

namespace airywell::wkb {

using turning::Side;

namespace {

// Clamp tiny negative distances left by rounding at a turning point.
double distance(double d, double scale, const char* what)
{
  if (d >= 0) return d;
  if (d > -1e-12 * (1 + scale)) return 0.0;
  throw DomainError(std::string(what) + ": argument outside the function's range");
}

}  // namespace

std::vector<WkbLevel> sho_wkb_levels(int count)
{
  if (count < 1) throw ConfigError("level count must be >= 1");
  std::vector<WkbLevel> out;
  for (int n = 0; n < count; ++n) {
    const double eps = 2 * n + 1;
    const double zt = std::sqrt(eps);
    out.push_back({n, parity_of(n), eps, zt, zt});
  }
  return out;
}

int sho_quantized_zt2(int k, Parity parity)
{
  if (k < 1) throw DomainError("quantization index starts at 1");
  return parity == Parity::even ? 4 * k - 3 : 4 * k - 1;
}

double sho_s_aux(SKind kind, double z, double z_t)
{
  if (!(z_t > 0)) throw DomainError("s functions: z_t must be positive");
  if (kind == SKind::s1) {
    if (z < 0) throw DomainError("s1: z must be >= 0");
    return turning::arc(z_t, distance(z_t - z, z_t, "s1"), Side::allowed);
  }
  return turning::arc(z_t, distance(z - z_t, z_t, "s2"), Side::forbidden);
}

double sho_airy_scale(const WkbLevel& level) { return std::sqrt(2.0) * std::pow(level.n + 0.5, 1.0 / 6); }

double sho_default_delta_z(const WkbLevel& level) { return 0.5 / sho_airy_scale(level); }

PiecewiseWavefunction sho_wkb_wavefunction(const WkbLevel& level, double delta_z, double z_max, double quad_tol)
{
  const double zt = level.z1;
  if (!(delta_z > 0 && delta_z < zt))
    throw ConfigError("WKB patch half-width must satisfy 0 < delta_z < z_t = " + std::to_string(zt));
  if (!(z_max > zt + delta_z)) throw ConfigError("z_max must exceed z_t + delta_z");
  const double alpha = sho_airy_scale(level);
  const double half = level.n + 0.5;

  auto r1 = [zt](double z) {
    const double x = z / zt;
    return 2.0 / std::pow(1 - x * x, 0.25) * std::sin(std::numbers::pi / 4 + sho_s_aux(SKind::s1, z, zt));
  };
  auto r2 = [zt, alpha, half](double z) {
    return 2 * std::sqrt(std::numbers::pi) * std::pow(half, 1.0 / 6) * airy::airy_eval(alpha * (z - zt)).ai;
  };
  auto r3 = [zt](double z) {
    const double x = z / zt;
    return std::exp(-sho_s_aux(SKind::s2, z, zt)) / std::pow(x * x - 1, 0.25);
  };
  std::vector<Region> regions{
      {0.0, zt - delta_z, "R1", BranchKind::bare, r1},
      {zt - delta_z, zt + delta_z, "R2", BranchKind::patch, r2},
      {zt + delta_z, z_max, "R3", BranchKind::bare, r3},
  };
  return PiecewiseWavefunction(std::move(regions), level.parity, z_max, quad_tol);
}

double dwp_wkb_condition(double eps, double z0, Parity parity)
{
  if (!(z0 > 0)) throw DomainError("DWP: z0 must be positive");
  if (!(eps > 0 && eps < z0 * z0)) throw DomainError("DWP WKB condition: need 0 < eps < z0^2");
  const double r = std::sqrt(z0 * z0 - eps);
  const double g = parity == Parity::odd ? -1.0 : (2 * r * r * r + z0) / (2 * r * r * r - z0);
  const double tunnel = std::exp(eps * std::log((z0 + r) / std::sqrt(eps)) - z0 * r);
  const double half_angle = std::numbers::pi * eps / 2;
  return std::cos(half_angle) / std::sin(half_angle) - 0.5 * g * tunnel;
}

double dwp_wkb_even_limit(double z0) { return z0 * z0 - std::cbrt(0.25 * z0 * z0); }

LevelSet<WkbLevel> dwp_wkb_eigenvalues(double z0, int count, double root_tol)
{
  if (!(z0 > 0)) throw ConfigError("DWP: z0 must be positive");
  if (count < 1) throw ConfigError("level count must be >= 1");
  constexpr double margin = 1e-6;
  constexpr std::size_t grid = 2000;
  const double top = z0 * z0 - margin;

  struct Root {
    double eps;
    Parity parity;
  };
  std::vector<Root> roots;
  for (Parity p : {Parity::even, Parity::odd}) {
    const double hi = p == Parity::even ? std::min(top, dwp_wkb_even_limit(z0) - margin) : top;
    if (!(hi > margin)) continue;
    auto f = [z0, p](double e) { return dwp_wkb_condition(e, z0, p); };
    for (double e : numerics::find_roots(f, margin, hi, grid, root_tol)) roots.push_back({e, p});
  }
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.eps < b.eps; });

  LevelSet<WkbLevel> out;
  for (const auto& r : roots) {
    const int n = static_cast<int>(out.levels.size());
    if (n == count) break;
    if (r.parity != parity_of(n)) break;
    const double a = std::sqrt(r.eps);
    out.levels.push_back({n, r.parity, r.eps, z0 - a, z0 + a});
  }
  out.exhausted = static_cast<int>(out.levels.size()) < count;
  return out;
}

double dwp_w_aux(WKind kind, double z, double z0, double eps)
{
  if (!(z0 > 0)) throw DomainError("w functions: z0 must be positive");
  if (!(eps > 0 && eps < z0 * z0)) throw DomainError("w functions: need 0 < eps < z0^2");
  const double a = std::sqrt(eps);
  const double z1 = z0 - a, z2 = z0 + a;
  switch (kind) {
    case WKind::w1: return turning::arc(a, distance(z1 - z, z0, "w1"), Side::forbidden);
    case WKind::w2:
    case WKind::w3: {
      // w2 + w3 = pi eps / 2; the shorter arc is the well-conditioned one
      const double from_z1 = distance(z - z1, z0, "w2/w3");
      const double to_z2 = distance(z2 - z, z0, "w2/w3");
      const double near = turning::arc(a, std::min(from_z1, to_z2), Side::allowed);
      const bool direct = (kind == WKind::w2) == (from_z1 <= to_z2);
      return direct ? near : 0.5 * std::numbers::pi * eps - near;
    }
    case WKind::w4: return turning::arc(a, distance(z - z2, z0, "w4"), Side::forbidden);
  }
  throw DomainError("w functions: unknown kind");
}

double dwp_airy_scale(const WkbLevel& level) { return std::pow(4 * level.eps, 1.0 / 6); }

double dwp_default_delta_z(const WkbLevel& level)
{
  const double a = std::sqrt(level.eps);
  return std::min(0.5 / dwp_airy_scale(level), 0.5 * std::min(level.z1, a));
}

PiecewiseWavefunction dwp_wkb_wavefunction(const WkbLevel& level, double z0, double delta_z, double z_max,
                                           double quad_tol)
{
  const double eps = level.eps;
  if (!(eps > 0 && eps < z0 * z0))
    throw DomainError("WKB level above the barrier: eps must be below z0^2 = " + std::to_string(z0 * z0));
  const double a = std::sqrt(eps);
  const double z1 = z0 - a, z2 = z0 + a;
  const double limit = std::min(z1, a);
  if (!(delta_z > 0 && delta_z < limit))
    throw ConfigError("WKB patch half-width must satisfy 0 < delta_z < " + std::to_string(limit));
  if (!(z_max > z2 + delta_z)) throw ConfigError("z_max must exceed z2 + delta_z");

  const double alpha = std::pow(4 * eps, 1.0 / 6);
  const double amp = std::sqrt(4 * std::numbers::pi / alpha);
  const double s = std::sin(std::numbers::pi * eps / 2);
  const double c = std::cos(std::numbers::pi * eps / 2);

  auto r1 = [=](double z) {
    const double w = dwp_w_aux(WKind::w1, z, z0, eps);
    const double u = z - z0;
    return (2 * c * std::exp(w) + s * std::exp(-w)) / std::pow(u * u - eps, 0.25);
  };
  auto r2 = [=](double z) {
    const auto v = airy::airy_eval(alpha * (z1 - z));
    return amp * (s * v.ai + c * v.bi);
  };
  auto r3 = [=](double z) {
    const double u = z - z0;
    return 2 / std::pow(eps - u * u, 0.25) * std::sin(dwp_w_aux(WKind::w3, z, z0, eps) + std::numbers::pi / 4);
  };
  auto r4 = [=](double z) { return amp * airy::airy_eval(alpha * (z - z2)).ai; };
  auto r5 = [=](double z) {
    const double u = z - z0;
    return std::exp(-dwp_w_aux(WKind::w4, z, z0, eps)) / std::pow(u * u - eps, 0.25);
  };
  std::vector<Region> regions{
      {0.0, z1 - delta_z, "R1", BranchKind::bare, r1},
      {z1 - delta_z, z1 + delta_z, "R2", BranchKind::patch, r2},
      {z1 + delta_z, z2 - delta_z, "R3", BranchKind::bare, r3},
      {z2 - delta_z, z2 + delta_z, "R4", BranchKind::patch, r4},
      {z2 + delta_z, z_max, "R5", BranchKind::bare, r5},
  };
  return PiecewiseWavefunction(std::move(regions), level.parity, z_max, quad_tol);
}

}  // namespace airywell::wkb
