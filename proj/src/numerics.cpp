#include "airywell/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "airywell/errors.hpp"

namespace airywell::numerics {

namespace {

bool opposite(double a, double b) { return (a < 0) != (b < 0); }

}  // namespace

ScanResult scan_brackets(const RealFn& f, double lo, double hi, std::size_t grid_points)
{
  if (!(lo < hi)) throw DomainError("scan_brackets: require lo < hi");
  if (grid_points < 2) throw DomainError("scan_brackets: need at least 2 grid points");

  ScanResult out;
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  bool have_prev = false;
  double x_prev = 0, f_prev = 0;
  std::size_t valid = 0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = (i + 1 == grid_points) ? hi : lo + step * static_cast<double>(i);
    const double fx = f(x);
    if (!std::isfinite(fx)) {
      out.skipped.push_back(x);
      continue;
    }
    ++valid;
    if (have_prev && fx != 0.0 && f_prev != 0.0 && opposite(fx, f_prev)) {
      Bracket b{x_prev, x, f_prev, fx};
      const double f_mid = f(0.5 * (x_prev + x));
      const double same_side = opposite(f_mid, f_prev) ? fx : f_prev;
      if (!std::isfinite(f_mid) || std::abs(f_mid) > std::abs(same_side))
        out.poles.push_back(b);
      else
        out.brackets.push_back(b);
    } else if (fx == 0.0) {
      // exact hit on the grid: a degenerate bracket around the point
      out.brackets.push_back({x, x, 0.0, 0.0});
    }
    x_prev = x;
    f_prev = fx;
    have_prev = true;
  }
  if (valid == 0) throw DomainError("scan_brackets: f is not finite at any grid point");
  return out;
}

double refine_root(const RealFn& f, const Bracket& br, double tol)
{
  if (!(tol > 0)) throw DomainError("refine_root: tol must be positive");
  if (br.lo == br.hi) return br.lo;
  if (!(br.lo < br.hi) || !opposite(br.f_lo, br.f_hi))
    throw DomainError("refine_root: invalid bracket");

  // Brent (1973), zero-in form.
  double a = br.lo, b = br.hi, fa = br.f_lo, fb = br.f_hi;
  double c = a, fc = fa;
  double d = b - a, e = d;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 500; ++iter) {
    if (opposite(fb, fc) == false) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2 * eps * std::abs(b) + 0.5 * tol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2 * m * s;
        q = 1 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2 * m * qa * (qa - r) - (b - a) * (r - 1));
        q = (qa - 1) * (r - 1) * (s - 1);
      }
      if (p > 0) q = -q; else p = -p;
      if (2 * p < std::min(3 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (m > 0 ? tol1 : -tol1);
    fb = f(b);
    if (!std::isfinite(fb)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "refine_root: non-finite value at " << b << "; last valid bracket [" << std::min(a, c)
          << ", " << std::max(a, c) << "]";
      throw NumericError(msg.str());
    }
  }
  throw NumericError("refine_root: iteration limit reached");
}

std::vector<double> find_roots(const RealFn& f, double lo, double hi, std::size_t grid_points,
                               double tol)
{
  const auto scan = scan_brackets(f, lo, hi, grid_points);
  std::vector<double> roots;
  for (const auto& b : scan.brackets) {
    const double r = refine_root(f, b, tol);
    const double fr = f(r);
    if (b.lo != b.hi && !(std::abs(fr) < std::min(std::abs(b.f_lo), std::abs(b.f_hi)))) continue;
    roots.push_back(r);
  }
  return roots;
}

namespace {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss weights.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double lo, hi, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gauss_kronrod(const RealFn& f, double lo, double hi)
{
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, 15> fv;
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  auto weight = [](int i) { return wgk[i < 8 ? i : 14 - i]; };
  double kronrod = 0, gauss = fv[7] * wg[3];
  for (int i = 0; i < 15; ++i) kronrod += weight(i) * fv[i];
  for (int j = 1; j < 7; j += 2) gauss += wg[j / 2] * (fv[j] + fv[14 - j]);
  const double mean = 0.5 * kronrod;
  double asc = 0;
  for (int i = 0; i < 15; ++i) asc += weight(i) * std::abs(fv[i] - mean);

  // QUADPACK's scaling of |K - G|: pessimistic when the two rules agree by
  // accident on a non-smooth piece
  double err = std::abs((kronrod - gauss) * half);
  asc *= std::abs(half);
  if (asc != 0 && err != 0) err = asc * std::min(1.0, std::pow(200 * err / asc, 1.5));
  return {lo, hi, kronrod * half, err};
}

}  // namespace

QuadratureResult integrate(const RealFn& f, double lo, double hi, double tol,
                           std::size_t max_intervals)
{
  if (!(tol > 0)) throw DomainError("integrate: tol must be positive");
  QuadratureResult out;
  if (lo == hi) {
    out.converged = true;
    return out;
  }
  const double sign = lo < hi ? 1.0 : -1.0;
  if (sign < 0) std::swap(lo, hi);

  std::priority_queue<Piece> heap;
  const Piece first = gauss_kronrod(f, lo, hi);
  heap.push(first);
  out.evaluations = 15;
  double value = first.value;
  double error = first.error;
  std::size_t intervals = 1;
  while (error > tol * (1 + std::abs(value)) && intervals < max_intervals) {
    const Piece worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // no room left to split
    heap.pop();
    const Piece left = gauss_kronrod(f, worst.lo, mid);
    const Piece right = gauss_kronrod(f, mid, worst.hi);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // re-sum to drop the accumulated running-update rounding
  value = 0;
  error = 0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = sign * value;
  out.error_estimate = error;
  out.converged = error <= tol * (1 + std::abs(value));
  return out;
}

}  // namespace airywell::numerics
