#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "airywell/airy.hpp"
#include "airywell/errors.hpp"
#include "airywell/numerics.hpp"
#include "airywell/turning.hpp"
#include "airywell/wkb.hpp"

using namespace airywell;
using namespace airywell::wkb;

namespace {

double quad(const numerics::RealFn& f, double lo, double hi)
{
  return numerics::integrate(f, lo, hi, 1e-14, 20000).value;
}

}  // namespace

TEST_CASE("turning arc against quadrature, both sides, across the series switch")
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(0.2, 5.0), frac(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double a = ua(rng);
    // log-uniform distance so both the series and the closed form are hit
    const double d = a * std::pow(10.0, -6 + 6.3 * frac(rng));
    for (auto side : {turning::Side::forbidden, turning::Side::allowed}) {
      if (side == turning::Side::allowed && d > 2 * a) continue;
      const int s = static_cast<int>(side);
      const double want = quad([=](double y) { return std::sqrt(y * (2 * a + s * y)); }, 0.0, d);
      CAPTURE(a);
      CAPTURE(d);
      CHECK(std::abs(turning::arc(a, d, side) - want) < 1e-10 * std::max(1.0, want));
    }
  }
}

TEST_CASE("turning arc terms are finite and continuous at the turning point")
{
  for (double a : {0.5, 1.0, 3.0}) {
    const auto at = turning::arc_terms(a, 0.0, turning::Side::forbidden);
    CHECK(at.w == 0.0);
    CHECK(at.zeta == 0.0);
    CHECK(at.prefactor == doctest::Approx(std::pow(2 * a, -1.0 / 6)).epsilon(1e-15));
    for (auto side : {turning::Side::forbidden, turning::Side::allowed}) {
      const auto near = turning::arc_terms(a, 1e-9 * a, side);
      CHECK(std::abs(near.prefactor - at.prefactor) < 1e-9);
      // prefactor^4 * |eps - v| = (3/2 w)^{2/3} = zeta at a regular distance
      const double d = 0.3 * a;
      const auto t = turning::arc_terms(a, d, side);
      const double gap = d * (2 * a + static_cast<int>(side) * d);
      CHECK(std::pow(t.prefactor, 4) * gap == doctest::Approx(t.zeta).epsilon(1e-13));
      CHECK(t.zeta == doctest::Approx(std::pow(1.5 * t.w, 2.0 / 3)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(turning::arc(1.0, 2.5, turning::Side::allowed), DomainError);
  CHECK_THROWS_AS(turning::arc(0.0, 0.5, turning::Side::allowed), DomainError);
  CHECK_THROWS_AS(turning::arc(1.0, -0.5, turning::Side::forbidden), DomainError);
}

TEST_CASE("SHO WKB levels are the odd integers")
{
  const auto levels = sho_wkb_levels(12);
  for (int n = 0; n < 12; ++n) {
    CHECK(levels[n].eps == 2 * n + 1);
    CHECK(levels[n].z1 == std::sqrt(2.0 * n + 1));
    CHECK(levels[n].parity == parity_of(n));
  }
  CHECK(levels[0].z1 == 1.0);
  CHECK(sho_wkb_levels(11)[10].eps == 21);
  CHECK_THROWS_AS(sho_wkb_levels(0), ConfigError);
  // even roots 4k-3 and odd roots 4k-1 interleave to 2n+1
  for (int k = 1; k <= 10; ++k) {
    CHECK(sho_quantized_zt2(k, Parity::even) == 2 * (2 * (k - 1)) + 1);
    CHECK(sho_quantized_zt2(k, Parity::odd) == 2 * (2 * (k - 1) + 1) + 1);
  }
}

TEST_CASE("s functions against quadrature")
{
  for (double zt : {1.0, std::sqrt(3.0), std::sqrt(21.0)}) {
    for (double f : {0.0, 0.3, 0.9, 0.999}) {
      const double z = f * zt;
      const double want = quad([=](double y) { return std::sqrt(zt * zt - y * y); }, z, zt);
      CHECK(std::abs(sho_s_aux(SKind::s1, z, zt) - want) < 1e-10);
    }
    for (double f : {1.001, 1.5, 3.0}) {
      const double z = f * zt;
      const double want = quad([=](double y) { return std::sqrt(y * y - zt * zt); }, zt, z);
      CHECK(std::abs(sho_s_aux(SKind::s2, z, zt) - want) < 1e-10 * std::max(1.0, want));
    }
    CHECK(sho_s_aux(SKind::s1, 0.0, zt) == doctest::Approx(std::numbers::pi * zt * zt / 4).epsilon(1e-14));
  }
  CHECK_THROWS_AS(sho_s_aux(SKind::s1, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(sho_s_aux(SKind::s2, 0.5, 1.0), DomainError);
}

TEST_CASE("w functions against quadrature and each other")
{
  for (double z0sq : {4.0, 9.0, 16.0}) {
    const double z0 = std::sqrt(z0sq);
    for (double eps : {0.3, 0.949292352, 2.5, 0.9 * z0sq}) {
      const double a = std::sqrt(eps), z1 = z0 - a, z2 = z0 + a;
      auto out = [=](double y) { return std::sqrt((y - z0) * (y - z0) - eps); };
      auto in = [=](double y) { return std::sqrt(eps - (y - z0) * (y - z0)); };
      CAPTURE(z0sq);
      CAPTURE(eps);
      for (double f : {0.0, 0.5, 0.99}) {
        const double z = f * z1;
        CHECK(std::abs(dwp_w_aux(WKind::w1, z, z0, eps) - quad(out, z, z1)) < 1e-10);
      }
      for (double f : {0.01, 0.3, 0.5, 0.8, 1.0}) {
        const double z = z1 + f * (z2 - z1);
        CHECK(std::abs(dwp_w_aux(WKind::w2, z, z0, eps) - quad(in, z1, z)) < 1e-10);
        CHECK(std::abs(dwp_w_aux(WKind::w3, z, z0, eps) - quad(in, z, z2)) < 1e-10);
        CHECK(dwp_w_aux(WKind::w2, z, z0, eps) + dwp_w_aux(WKind::w3, z, z0, eps) ==
              doctest::Approx(std::numbers::pi * eps / 2).epsilon(1e-13));
      }
      for (double dz : {1e-4, 0.5, 1.0, 3.0}) {
        const double want = quad(out, z2, z2 + dz);
        CHECK(std::abs(dwp_w_aux(WKind::w4, z2 + dz, z0, eps) - want) < 1e-10 * std::max(1.0, want));
      }
      CHECK(dwp_w_aux(WKind::w1, z1, z0, eps) == 0.0);
      CHECK(dwp_w_aux(WKind::w2, z1, z0, eps) == 0.0);
      CHECK(dwp_w_aux(WKind::w3, z2, z0, eps) == 0.0);
      CHECK(dwp_w_aux(WKind::w4, z2, z0, eps) == 0.0);
      // dw3/dz = -sqrt(eps - (z - z0)^2)
      const double z = z1 + 0.37 * (z2 - z1), h = 1e-6;
      const double fd = (dwp_w_aux(WKind::w3, z + h, z0, eps) - dwp_w_aux(WKind::w3, z - h, z0, eps)) / (2 * h);
      CHECK(std::abs(fd + in(z)) < 1e-6);
      CHECK_THROWS_AS(dwp_w_aux(WKind::w1, z1 + 0.1, z0, eps), DomainError);
      CHECK_THROWS_AS(dwp_w_aux(WKind::w4, z2 - 0.1, z0, eps), DomainError);
    }
    CHECK_THROWS_AS(dwp_w_aux(WKind::w1, 0.0, z0, z0sq + 0.1), DomainError);
  }
}

TEST_CASE("DWP WKB levels reproduce the tabulated WKB energies")
{
  const double z0sq4[] = {0.949292352, 1.039081813, 2.525729513, 3.240818000};
  const auto four = dwp_wkb_eigenvalues(2.0, 9);
  REQUIRE(four.levels.size() == 4);
  CHECK(four.exhausted);
  for (int n = 0; n < 4; ++n) CHECK(std::abs(four.levels[n].eps / z0sq4[n] - 1) < 1e-6);
  const auto sixteen = dwp_wkb_eigenvalues(4.0, 9);
  REQUIRE(sixteen.levels.size() == 9);
  CHECK_FALSE(sixteen.exhausted);
  CHECK(std::abs(sixteen.levels[8].eps / 8.987266055 - 1) < 1e-6);
  const auto nine = dwp_wkb_eigenvalues(3.0, 9);
  CHECK(nine.levels.size() == 8);
  CHECK(std::abs((nine.levels[1].eps - nine.levels[0].eps) - 8.2047e-4) < 1e-7);
  for (const auto& set : {four, nine, sixteen})
    for (const auto& l : set.levels) {
      CHECK(l.parity == parity_of(l.n));
      CHECK(l.z1 == doctest::Approx(l.z2 - 2 * std::sqrt(l.eps)));
    }
}

TEST_CASE("WKB odd condition has exactly two roots below z0^2 = 4")
{
  auto f = [](double e) { return dwp_wkb_condition(e, 2.0, Parity::odd); };
  const auto scan = numerics::scan_brackets(f, 1e-6, 4 - 1e-6, 2000);
  REQUIRE(scan.brackets.size() == 2);
  CHECK(scan.brackets[0].lo < 1.039081813);
  CHECK(scan.brackets[0].hi > 1.039081813);
  CHECK(scan.brackets[1].lo < 3.240818000);
  CHECK(scan.brackets[1].hi > 3.240818000);
}

TEST_CASE("DWP WKB pairs approach degeneracy as the barrier grows")
{
  const auto low = dwp_wkb_eigenvalues(2.0, 2);
  const auto high = dwp_wkb_eigenvalues(4.0, 2);
  CHECK(low.levels[1].eps - low.levels[0].eps >= 5e-2);
  CHECK(high.levels[1].eps - high.levels[0].eps <= 1e-6);
}

TEST_CASE("SHO WKB wavefunction: regions, normalization, jumps")
{
  const auto level = sho_wkb_levels(1)[0];
  const auto wf = sho_wkb_wavefunction(level, 0.3, 9.0);
  REQUIRE(wf.regions().size() == 3);
  CHECK(wf.regions()[1].kind == BranchKind::patch);
  CHECK(std::abs(wf.norm_integral() - 1) < 1e-6);
  // patch value at z_t
  const double want = 2 * std::sqrt(std::numbers::pi) * std::pow(0.5, 1.0 / 6) * airy::airy_eval(0).ai;
  CHECK(wf(1.0) == doctest::Approx(want * wf.normalization()).epsilon(1e-13));
  const auto report = discontinuity_report(wf);
  REQUIRE(report.size() == 2);
  CHECK(report[0].z == doctest::Approx(0.7));
  CHECK(report[0].relative_jump > 0);
  for (double dz = 0.06; dz < 0.5; dz += 0.02) {
    const auto w = sho_wkb_wavefunction(level, dz, 9.0);
    CHECK(discontinuity_report(w)[0].jump > 0);
  }
  // R3 decays monotonically
  double prev = wf(1.4);
  for (double z = 1.5; z < 8; z += 0.1) {
    const double v = wf(z);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(sho_wkb_wavefunction(level, 1.0, 9.0), ConfigError);
  CHECK_THROWS_AS(sho_wkb_wavefunction(level, 0.3, 1.2), ConfigError);
}

TEST_CASE("bare WKB branches diverge as distance^(-1/4) at the turning point")
{
  const auto level = sho_wkb_levels(3)[2];
  const auto wf = sho_wkb_wavefunction(level, sho_default_delta_z(level), 10.0);
  const double zt = level.z1;
  double prev = 0;
  for (int k = 2; k <= 8; ++k) {
    const double h = std::pow(10.0, -k);
    const double scaled = wf.branch_value(0, zt - h) * std::pow(h, 0.25);
    if (k > 2) CHECK(std::abs(scaled - prev) < 1e-2 * std::abs(prev));
    prev = scaled;
  }
  CHECK(std::abs(prev) > 0.1);
}

TEST_CASE("DWP WKB wavefunction: five regions, normalized, jumps everywhere")
{
  const auto levels = dwp_wkb_eigenvalues(2.0, 4).levels;
  const auto wf = dwp_wkb_wavefunction(levels[0], 2.0, 0.3, 10.0);
  REQUIRE(wf.regions().size() == 5);
  CHECK(std::abs(wf.norm_integral() - 1) < 1e-6);
  for (const auto& d : discontinuity_report(wf)) CHECK(d.jump > 0);
  const double z2 = levels[0].z2;
  const double alpha = dwp_airy_scale(levels[0]);
  CHECK(wf(z2) == doctest::Approx(std::sqrt(4 * std::numbers::pi / alpha) * airy::airy_eval(0).ai * wf.normalization())
                      .epsilon(1e-13));
  // odd level: antisymmetric under reflection
  const auto odd = dwp_wkb_wavefunction(levels[1], 2.0, dwp_default_delta_z(levels[1]), 10.0);
  for (double z : {0.1, 0.7, 1.9, 3.3}) CHECK(odd(-z) == -odd(z));
  for (const auto& l : levels) {
    const double dz = dwp_default_delta_z(l);
    CHECK(dz > 0);
    CHECK(dz < std::min(l.z1, std::sqrt(l.eps)));
  }
  CHECK_THROWS_AS(dwp_wkb_wavefunction(levels[0], 2.0, 0.99, 10.0), ConfigError);
  CHECK_THROWS_AS(dwp_wkb_wavefunction(levels[0], 2.0, 0.3, 3.0), ConfigError);
  wkb::WkbLevel above{0, Parity::even, 4.5, 0, 0};
  CHECK_THROWS_AS(dwp_wkb_wavefunction(above, 2.0, 0.1, 10.0), DomainError);
}
