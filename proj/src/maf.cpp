#include "airywell/maf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "airywell/airy.hpp"
#include "airywell/errors.hpp"
#include "airywell/numerics.hpp"
#include "airywell/turning.hpp"

namespace airywell::maf {

using turning::Side;

namespace {

constexpr double pi = std::numbers::pi;

struct Root {
  double eps;
  Parity parity;
};

std::vector<Root> merged_roots(const std::function<double(double, Parity)>& f, double lo, double hi,
                               double tol)
{
  std::vector<Root> roots;
  for (Parity p : {Parity::even, Parity::odd}) {
    auto g = [&f, p](double e) { return f(e, p); };
    for (double e : numerics::find_roots(g, lo, hi, 2000, tol)) roots.push_back({e, p});
  }
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.eps < b.eps; });
  return roots;
}

// Distance from a turning point, clamped at rounding level.
double clamp_distance(double d, double scale)
{
  if (d < 0 && d > -1e-12 * (1 + scale)) return 0.0;
  if (d < 0) throw DomainError("MAF branch evaluated on the wrong side of its turning point");
  return d;
}

}  // namespace

QAtOrigin sho_q_origin(double zt2)
{
  if (!(zt2 > 0)) throw DomainError("SHO MAF: z_t^2 must be positive");
  const double c = std::cbrt(2.25);  // (3/2)^{2/3}
  const double s = pi * zt2 / 4;     // s1(0)
  const double zt = std::sqrt(zt2);
  const double s13 = std::cbrt(s);
  return {-c * s13 * s13, (2.0 / 3) * c * zt / s13, (2.0 / 9) * c * zt2 / (s * s13)};
}

double sho_maf_condition(double zt2, Parity parity)
{
  const auto q = sho_q_origin(zt2);
  const auto v = airy::airy_eval(q.q);
  if (parity == Parity::odd) return v.ai;
  return v.ai_prime * q.dq * q.dq - 0.5 * q.d2q * v.ai;
}

std::vector<MafLevel> sho_maf_energies(int count, double root_tol)
{
  if (count < 1) throw ConfigError("level count must be >= 1");
  const auto roots = merged_roots(sho_maf_condition, 1e-9, 4.0 * count, root_tol);
  std::vector<MafLevel> out;
  for (const auto& r : roots) {
    const int n = static_cast<int>(out.size());
    if (n == count) break;
    if (r.parity != parity_of(n)) break;
    out.push_back({n, r.parity, r.eps});
  }
  if (static_cast<int>(out.size()) < count)
    throw NumericError("SHO MAF: found " + std::to_string(out.size()) + " of " + std::to_string(count) +
                       " levels");
  return out;
}

double sho_maf_q(double z, double z_t)
{
  const double x = std::abs(z);
  if (x <= z_t) return -turning::arc_terms(z_t, z_t - x, Side::allowed).zeta;
  return turning::arc_terms(z_t, x - z_t, Side::forbidden).zeta;
}

PiecewiseWavefunction sho_maf_wavefunction(const MafLevel& level, double z_max, double quad_tol)
{
  const double zt = std::sqrt(level.eps);
  if (!(z_max > zt)) throw ConfigError("z_max must exceed the turning point z_t = " + std::to_string(zt));
  auto inner = [zt](double z) {
    const auto t = turning::arc_terms(zt, clamp_distance(zt - z, zt), Side::allowed);
    return t.prefactor * airy::airy_eval(-t.zeta).ai;
  };
  auto outer = [zt](double z) {
    const auto t = turning::arc_terms(zt, clamp_distance(z - zt, zt), Side::forbidden);
    return t.prefactor * airy::airy_eval(t.zeta).ai;
  };
  std::vector<Region> regions{
      {0.0, zt, "M1", BranchKind::maf, inner},
      {zt, z_max, "M2", BranchKind::maf, outer},
  };
  return PiecewiseWavefunction(std::move(regions), level.parity, z_max, quad_tol);
}

MatchCoeffs dwp_maf_coeffs(double eps)
{
  if (!(eps > 0) || !std::isfinite(eps)) throw DomainError("MAF matching: eps must be positive");
  const double gamma = -0.25 * std::pow(3 * pi * eps, 2.0 / 3);
  const auto v = airy::airy_eval(gamma);
  const double t = v.ai / (4 * gamma) + v.ai_prime;
  return {1 + 2 * pi * v.bi * t, -2 * pi * v.ai * t, gamma};
}

double dwp_maf_condition(double eps, double z0, Parity parity)
{
  if (!(z0 > 0)) throw DomainError("DWP: z0 must be positive");
  if (!(eps > 0 && eps < z0 * z0)) throw DomainError("DWP MAF condition: need 0 < eps < z0^2");
  const auto [c1, c2, gamma] = dwp_maf_coeffs(eps);
  const double a = std::sqrt(eps);
  const double d = z0 - a;  // distance from z = 0 to z1
  const auto t = turning::arc_terms(a, d, Side::forbidden);
  const auto v = airy::airy_eval(t.zeta);
  const double b = c1 * v.ai + c2 * v.bi;
  if (parity == Parity::odd) return b;
  const double r2 = z0 * z0 - eps;
  const double dw = -std::sqrt(r2);                      // w1'(0)
  const double log_du = dw / (6 * t.w) + z0 / (2 * r2);  // u'(0)/u(0)
  const double dxi = dw / std::cbrt(1.5 * t.w);
  return log_du * b + dxi * (c1 * v.ai_prime + c2 * v.bi_prime);
}

LevelSet<MafLevel> dwp_maf_eigenvalues(double z0, int count, double root_tol)
{
  if (!(z0 > 0)) throw ConfigError("DWP: z0 must be positive");
  if (count < 1) throw ConfigError("level count must be >= 1");
  constexpr double margin = 1e-6;
  auto f = [z0](double e, Parity p) { return dwp_maf_condition(e, z0, p); };
  const auto roots = merged_roots(f, margin, z0 * z0 - margin, root_tol);
  LevelSet<MafLevel> out;
  for (const auto& r : roots) {
    const int n = static_cast<int>(out.levels.size());
    if (n == count) break;
    if (r.parity != parity_of(n)) break;
    const auto m = dwp_maf_coeffs(r.eps);
    out.levels.push_back({n, r.parity, r.eps, m.c1, m.c2, m.gamma});
  }
  out.exhausted = static_cast<int>(out.levels.size()) < count;
  return out;
}

double dwp_maf_q(double z, double z0, double eps)
{
  if (!(eps > 0 && eps < z0 * z0)) throw DomainError("DWP MAF q: need 0 < eps < z0^2");
  const double a = std::sqrt(eps);
  const double x = std::abs(z);
  const double z1 = z0 - a, z2 = z0 + a;
  if (x <= z1) return turning::arc_terms(a, z1 - x, Side::forbidden).zeta;
  if (x <= z0) return -turning::arc_terms(a, x - z1, Side::allowed).zeta;
  if (x <= z2) return -turning::arc_terms(a, z2 - x, Side::allowed).zeta;
  return turning::arc_terms(a, x - z2, Side::forbidden).zeta;
}

PiecewiseWavefunction dwp_maf_wavefunction(const MafLevel& level, double z0, double z_max, double quad_tol)
{
  const double eps = level.eps;
  if (!(z0 > 0)) throw DomainError("DWP: z0 must be positive");
  if (!(eps > 0 && eps < z0 * z0))
    throw DomainError("MAF level above the barrier: eps must be below z0^2 = " + std::to_string(z0 * z0));
  const double a = std::sqrt(eps);
  const double z1 = z0 - a, z2 = z0 + a;
  if (!(z_max > z2)) throw ConfigError("z_max must exceed the outer turning point z2 = " + std::to_string(z2));
  const double c1 = level.c1, c2 = level.c2;

  auto m1 = [=](double z) {
    const auto t = turning::arc_terms(a, clamp_distance(z1 - z, z0), Side::forbidden);
    const auto v = airy::airy_eval(t.zeta);
    return t.prefactor * (c1 * v.ai + c2 * v.bi);
  };
  auto m2 = [=](double z) {
    const auto t = turning::arc_terms(a, clamp_distance(z - z1, z0), Side::allowed);
    const auto v = airy::airy_eval(-t.zeta);
    return t.prefactor * (c1 * v.ai + c2 * v.bi);
  };
  auto m3 = [=](double z) {
    const auto t = turning::arc_terms(a, clamp_distance(z2 - z, z0), Side::allowed);
    return t.prefactor * airy::airy_eval(-t.zeta).ai;
  };
  auto m4 = [=](double z) {
    const auto t = turning::arc_terms(a, clamp_distance(z - z2, z0), Side::forbidden);
    return t.prefactor * airy::airy_eval(t.zeta).ai;
  };
  std::vector<Region> regions{
      {0.0, z1, "M1", BranchKind::maf, m1},
      {z1, z0, "M2", BranchKind::maf, m2},
      {z0, z2, "M3", BranchKind::maf, m3},
      {z2, z_max, "M4", BranchKind::maf, m4},
  };
  return PiecewiseWavefunction(std::move(regions), level.parity, z_max, quad_tol);
}

}  // namespace airywell::maf
