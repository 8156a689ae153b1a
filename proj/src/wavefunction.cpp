#include "airywell/wavefunction.hpp"

#include <algorithm>
#include <cmath>

#include "airywell/errors.hpp"
#include "airywell/numerics.hpp"

namespace airywell {

std::string_view to_string(BranchKind k)
{
  switch (k) {
    case BranchKind::bare: return "bare";
    case BranchKind::patch: return "patch";
    case BranchKind::maf: return "maf";
  }
  return "?";
}

PiecewiseWavefunction::PiecewiseWavefunction(std::vector<Region> regions, Parity parity, double z_max,
                                             double quad_tol)
    : regions_(std::move(regions)), parity_(parity), z_max_(z_max)
{
  if (regions_.empty()) throw ConfigError("wavefunction: no regions");
  if (regions_.front().z_lo != 0.0) throw ConfigError("wavefunction: first region must start at z = 0");
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const auto& r = regions_[i];
    if (!r.branch) throw ConfigError("wavefunction: region " + r.label + " has no branch");
    if (i + 1 < regions_.size()) {
      if (!(r.z_hi > r.z_lo)) throw ConfigError("wavefunction: empty region " + r.label);
      if (regions_[i + 1].z_lo != r.z_hi) throw ConfigError("wavefunction: regions are not contiguous");
    }
  }
  if (!(z_max > regions_.back().z_lo))
    throw ConfigError("wavefunction: z_max must lie beyond the last boundary");
  regions_.back().z_hi = z_max;

  const double n = raw_norm(quad_tol);
  if (!(n > 0) || !std::isfinite(n)) throw NumericError("wavefunction: normalization integral is not positive");
  scale_ = 1.0 / std::sqrt(n);
}

double PiecewiseWavefunction::raw_norm(double quad_tol) const
{
  double total = 0.0;
  for (const auto& r : regions_) {
    auto density = [&r](double z) {
      const double v = r.branch(z);
      return v * v;
    };
    const auto q = numerics::integrate(density, r.z_lo, r.z_hi, quad_tol, 20000);
    if (!q.converged)
      throw NumericError("wavefunction: norm integral over region " + r.label + " did not reach tolerance");
    total += q.value;
  }
  return 2.0 * total;
}

double PiecewiseWavefunction::norm_integral(double quad_tol) const { return scale_ * scale_ * raw_norm(quad_tol); }

std::size_t PiecewiseWavefunction::region_index(double z) const
{
  const double x = std::abs(z);
  for (std::size_t i = 0; i + 1 < regions_.size(); ++i)
    if (x < regions_[i].z_hi) return i;
  return regions_.size() - 1;
}

double PiecewiseWavefunction::branch_value(std::size_t i, double z) const
{
  return scale_ * regions_.at(i).branch(z);
}

double PiecewiseWavefunction::operator()(double z) const
{
  const double x = std::abs(z);
  const double v = branch_value(region_index(x), x);
  return (z < 0 && parity_ == Parity::odd) ? -v : v;
}

double sampled_peak(const PiecewiseWavefunction& wf)
{
  double peak = 0.0;
  constexpr int samples = 2001;
  for (int i = 0; i < samples; ++i) peak = std::max(peak, std::abs(wf(wf.z_max() * i / (samples - 1.0))));
  const auto& regions = wf.regions();
  for (std::size_t i = 0; i + 1 < regions.size(); ++i) {
    peak = std::max(peak, std::abs(wf.branch_value(i, regions[i].z_hi)));
    peak = std::max(peak, std::abs(wf.branch_value(i + 1, regions[i].z_hi)));
  }
  return peak;
}

std::vector<Discontinuity> discontinuity_report(const PiecewiseWavefunction& wf)
{
  std::vector<Discontinuity> out;
  const auto& regions = wf.regions();
  if (regions.size() < 2) return out;
  const double peak = sampled_peak(wf);
  for (std::size_t i = 0; i + 1 < regions.size(); ++i) {
    const double z = regions[i].z_hi;
    const double jump = std::abs(wf.branch_value(i, z) - wf.branch_value(i + 1, z));
    out.push_back({z, jump, peak > 0 ? jump / peak : jump});
  }
  return out;
}

}  // namespace airywell
