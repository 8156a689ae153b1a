#include "airywell/airy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "airywell/errors.hpp"

namespace airywell::airy {

namespace {

using quad = __float128;

// Ai(0) and -Ai'(0) to ~33 digits, split as hi + lo doubles.
constexpr double ai0_hi = 0.3550280538878172;
constexpr double ai0_lo = 2.05233632436212e-17;
constexpr double mai0p_hi = 0.2588194037928068;
constexpr double mai0p_lo = -2.522243111610832e-17;
constexpr double sqrt3_hi = 1.7320508075688772;
constexpr double sqrt3_lo = 1.0035084221806903e-16;

constexpr double series_limit = 8.0;
constexpr double double_series_limit = 2.5;

/// Sums of the two standard Maclaurin solutions f, g of y'' = x y and their
/// derivatives. Ai = c1 f - c2 g, Bi = sqrt3 (c1 f + c2 g).
template <class Real>
struct SeriesSums {
  Real f, g, fp, gp;
};

template <class Real>
SeriesSums<Real> maclaurin(Real x, Real eps)
{
  const Real x3 = x * x * x;
  Real tf = 1, tg = x, tfp = x * x / 2, tgp = 1;
  SeriesSums<Real> s{tf, tg, tfp, tgp};
  for (int k = 1; k < 400; ++k) {
    const Real kk = 3 * k;
    tf *= x3 / ((kk - 1) * kk);
    tg *= x3 / (kk * (kk + 1));
    tgp *= x3 / (kk * (kk - 2));
    s.f += tf;
    s.g += tg;
    s.gp += tgp;
    if (k >= 2) {
      tfp *= x3 / ((kk - 3) * (kk - 1));
      s.fp += tfp;
    }
    auto mag = [](Real v) { return v < 0 ? -v : v; };
    const Real biggest = mag(s.f) + mag(s.g) + mag(s.fp) + mag(s.gp);
    if (mag(tf) + mag(tg) + mag(tfp) + mag(tgp) <= eps * biggest) break;
  }
  return s;
}

template <class Real>
AiryValues combine(const SeriesSums<Real>& s, Real c1, Real c2, Real sqrt3)
{
  AiryValues v;
  v.ai = static_cast<double>(c1 * s.f - c2 * s.g);
  v.bi = static_cast<double>(sqrt3 * (c1 * s.f + c2 * s.g));
  v.ai_prime = static_cast<double>(c1 * s.fp - c2 * s.gp);
  v.bi_prime = static_cast<double>(sqrt3 * (c1 * s.fp + c2 * s.gp));
  return v;
}

AiryValues series_double(double x)
{
  const auto s = maclaurin<double>(x, 1e-18);
  return combine<double>(s, ai0_hi, mai0p_hi, sqrt3_hi);
}

AiryValues series_quad(double x)
{
  const quad c1 = quad(ai0_hi) + quad(ai0_lo);
  const quad c2 = quad(mai0p_hi) + quad(mai0p_lo);
  const quad r3 = quad(sqrt3_hi) + quad(sqrt3_lo);
  const auto s = maclaurin<quad>(quad(x), quad(1e-30));
  return combine<quad>(s, c1, c2, r3);
}

/// Asymptotic sums sum_k (sign)^k u_k / zeta^k, split into the parts needed
/// by the growing/decaying (x > 0) and oscillatory (x < 0) forms.
struct AsymptoticSums {
  double u_alt = 0, u_plain = 0, v_alt = 0, v_plain = 0;  // x > 0
  double u_even = 0, u_odd = 0, v_even = 0, v_odd = 0;    // x < 0
};

AsymptoticSums asymptotic_sums(double zeta)
{
  AsymptoticSums s;
  double u = 1.0;
  double term_prev = std::numeric_limits<double>::infinity();
  s.u_alt = s.u_plain = s.u_even = 1.0;
  s.v_alt = s.v_plain = s.v_even = 1.0;
  double zk = 1.0;
  for (int k = 1; k < 60; ++k) {
    u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
    const double v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
    zk *= zeta;
    const double tu = u / zk;
    const double tv = v / zk;
    const double term = std::abs(tu) + std::abs(tv);
    if (term >= term_prev || term < 1e-18) break;  // optimal truncation
    term_prev = term;
    const double alt = (k % 2 == 0) ? 1.0 : -1.0;
    s.u_alt += alt * tu;
    s.u_plain += tu;
    s.v_alt += alt * tv;
    s.v_plain += tv;
    // x < 0: sum_j (-1)^j u_{2j}/zeta^{2j} and sum_j (-1)^j u_{2j+1}/zeta^{2j+1}
    const int j = k / 2;
    const double sj = (j % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      s.u_even += sj * tu;
      s.v_even += sj * tv;
    } else {
      s.u_odd += sj * tu;
      s.v_odd += sj * tv;
    }
  }
  return s;
}

AiryValues asymptotic_positive(double x)
{
  constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double x14 = std::sqrt(std::sqrt(x));
  const auto s = asymptotic_sums(zeta);
  AiryValues v;
  const double decay = std::exp(-zeta);
  v.ai = 0.5 * inv_sqrt_pi / x14 * decay * s.u_alt;
  v.ai_prime = -0.5 * inv_sqrt_pi * x14 * decay * s.v_alt;

  constexpr double log_max = 709.782712893384;  // log(DBL_MAX)
  const double log_bi = zeta + std::log(inv_sqrt_pi / x14 * s.u_plain);
  const double log_bip = zeta + std::log(inv_sqrt_pi * x14 * s.v_plain);
  constexpr double big = std::numeric_limits<double>::max();
  if (log_bi >= log_max) {
    v.bi = big;
    v.overflow |= overflow_bi;
  } else {
    v.bi = std::exp(log_bi);
  }
  if (log_bip >= log_max) {
    v.bi_prime = big;
    v.overflow |= overflow_bi_prime;
  } else {
    v.bi_prime = std::exp(log_bip);
  }
  return v;
}

AiryValues asymptotic_negative(double x)
{
  constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;
  const double t = -x;
  const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
  const double t14 = std::sqrt(std::sqrt(t));
  const auto s = asymptotic_sums(zeta);
  const double phase = zeta - std::numbers::pi / 4;
  const double c = std::cos(phase);
  const double sn = std::sin(phase);
  AiryValues v;
  v.ai = inv_sqrt_pi / t14 * (c * s.u_even + sn * s.u_odd);
  v.bi = inv_sqrt_pi / t14 * (-sn * s.u_even + c * s.u_odd);
  v.ai_prime = inv_sqrt_pi * t14 * (sn * s.v_even - c * s.v_odd);
  v.bi_prime = inv_sqrt_pi * t14 * (c * s.v_even + sn * s.v_odd);
  return v;
}

enum class Target { ai, ai_prime };

double zero_target(Target which, double x)
{
  const auto v = airy_eval(x);
  return which == Target::ai ? v.ai : v.ai_prime;
}

double locate_zero(Target which, double guess)
{
  double lo = guess - 0.25;
  double hi = guess + 0.25;
  double f_lo = zero_target(which, lo);
  double f_hi = zero_target(which, hi);
  for (int widen = 0; f_lo * f_hi > 0 && widen < 8; ++widen) {
    lo -= 0.1;
    hi += 0.1;
    f_lo = zero_target(which, lo);
    f_hi = zero_target(which, hi);
  }
  if (f_lo * f_hi > 0) throw NumericError("airy zero: failed to bracket near " + std::to_string(guess));
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = zero_target(which, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

}  // namespace

AiryValues airy_eval(double x)
{
  if (!std::isfinite(x)) throw DomainError("airy_eval: argument must be finite");
  if (std::abs(x) <= double_series_limit) return series_double(x);
  if (std::abs(x) <= series_limit) return series_quad(x);
  return x > 0 ? asymptotic_positive(x) : asymptotic_negative(x);
}

double ai_zero(int k)
{
  if (k < 1) throw DomainError("ai_zero: index must be >= 1");
  const double t = 3.0 * std::numbers::pi * (4.0 * k - 1) / 8.0;
  const double t2 = 1.0 / (t * t);
  const double guess = -std::cbrt(t * t) * (1 + 5.0 / 48 * t2 - 5.0 / 36 * t2 * t2);
  return locate_zero(Target::ai, guess);
}

double ai_prime_zero(int k)
{
  if (k < 1) throw DomainError("ai_prime_zero: index must be >= 1");
  const double t = 3.0 * std::numbers::pi * (4.0 * k - 3) / 8.0;
  const double t2 = 1.0 / (t * t);
  const double guess = -std::cbrt(t * t) * (1 - 7.0 / 48 * t2 + 35.0 / 288 * t2 * t2);
  return locate_zero(Target::ai_prime, guess);
}

}  // namespace airywell::airy
