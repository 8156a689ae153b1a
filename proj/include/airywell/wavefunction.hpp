#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "airywell/types.hpp"

namespace airywell {

enum class BranchKind { bare, patch, maf };

std::string_view to_string(BranchKind k);

/// One piece of a wavefunction on z >= 0. `branch` is the unnormalized
/// closed form; it may be evaluated outside [z_lo, z_hi] wherever the
/// formula is defined (used for the jump report and figure overlays).
struct Region {
  double z_lo = 0;
  double z_hi = 0;
  std::string label;  ///< "R1".."R5" for WKB, "M1".."M4" for MAF
  BranchKind kind = BranchKind::bare;
  std::function<double(double)> branch;
};

/// Wavefunction built from contiguous regions covering [0, z_max]; the last
/// region extends to infinity. Values at z < 0 come from parity reflection.
/// Construction normalizes so that int_{-z_max}^{z_max} psi^2 = 1, integrating
/// region by region (the jumps between WKB regions have measure zero).
class PiecewiseWavefunction {
 public:
  /// Throws ConfigError if the regions are empty, do not start at 0, are not
  /// contiguous, or if z_max does not lie inside the last region.
  PiecewiseWavefunction(std::vector<Region> regions, Parity parity, double z_max,
                        double quad_tol = 1e-12);

  /// Normalized value at any real z.
  double operator()(double z) const;

  /// Normalized value of region i's closed form at z >= 0 (no reflection).
  double branch_value(std::size_t i, double z) const;

  /// Region containing |z|; a boundary point belongs to the region on its right.
  std::size_t region_index(double z) const;

  const std::vector<Region>& regions() const { return regions_; }
  Parity parity() const { return parity_; }
  double z_max() const { return z_max_; }
  /// Factor applied to the closed forms (the D~ / C~ constant).
  double normalization() const { return scale_; }

  /// Multiplies the whole function by -1.
  void flip_sign() { scale_ = -scale_; }

  /// int_{-z_max}^{z_max} psi^2 recomputed with the current scale.
  double norm_integral(double quad_tol = 1e-12) const;

 private:
  double raw_norm(double quad_tol) const;

  std::vector<Region> regions_;
  Parity parity_;
  double z_max_;
  double scale_ = 1.0;
};

struct Discontinuity {
  double z = 0;
  double jump = 0;           ///< |psi_left(z) - psi_right(z)|
  double relative_jump = 0;  ///< jump / max |psi| on [0, z_max]
};

/// Per internal boundary, the mismatch between the two adjacent closed forms
/// evaluated at the boundary itself. Single-region functions give an empty list.
std::vector<Discontinuity> discontinuity_report(const PiecewiseWavefunction& wf);

/// max |psi| sampled on [0, z_max] (2001 points plus region boundaries).
double sampled_peak(const PiecewiseWavefunction& wf);

}  // namespace airywell
