#pragma once

// Integrals of sqrt|eps - v| measured from a linear-crossing turning point.
//
// Near a turning point at distance d, with a = sqrt(eps) for the DWP (or z_t
// for the SHO), both potentials give |eps - v| = d (2a + side*d) exactly, so
// every WKB/MAF phase integral is
//
//   T(a, d, side) = int_0^d sqrt(y (2a + side*y)) dy
//
// with side = +1 in the classically forbidden direction and -1 in the allowed
// one. The helpers below evaluate T and the MAF quantities built from it
// without the 0/0 that the textbook forms hit at d -> 0.

namespace airywell::turning {

enum class Side : int { allowed = -1, forbidden = +1 };

/// T(a, d, side). Requires a > 0, d >= 0, and d <= 2a on the allowed side.
double arc(double a, double d, Side side);

/// Quantities for an Airy function attached at the turning point.
struct ArcTerms {
  double w;          ///< T(a, d, side)
  double zeta;       ///< (3/2 w)^{2/3}
  double prefactor;  ///< (3/2 w)^{1/6} / |eps - v|^{1/4}, finite at d = 0
};

ArcTerms arc_terms(double a, double d, Side side);

}  // namespace airywell::turning
