#pragma once

namespace airywell::airy {

/// Bit flags naming which components saturated at DBL_MAX.
enum Overflow : unsigned {
  overflow_none = 0,
  overflow_bi = 1u << 0,
  overflow_bi_prime = 1u << 1,
};

/// Ai, Bi and their first derivatives at one real argument.
///
/// For x beyond ~104 Bi and Bi' exceed the double range; they are then
/// clamped to DBL_MAX and `overflow` records which ones. Ai underflows to 0
/// gracefully and is never flagged.
struct AiryValues {
  double ai = 0.0;
  double bi = 0.0;
  double ai_prime = 0.0;
  double bi_prime = 0.0;
  unsigned overflow = overflow_none;

  bool saturated() const { return overflow != overflow_none; }
};

/// Evaluates the Airy functions on the real line.
///
/// |x| <= 8 uses the Maclaurin series of the two standard solutions (in
/// extended precision beyond |x| = 2.5, where the growing and decaying parts
/// cancel); |x| > 8 uses the asymptotic expansions, in their oscillatory form
/// for x < 0. Relative accuracy is ~1e-13 away from zeros.
///
/// Throws DomainError for NaN or infinite x.
AiryValues airy_eval(double x);

/// k-th zero of Ai (k >= 1), ordered by increasing magnitude: -2.338..., -4.087...
double ai_zero(int k);

/// k-th zero of Ai' (k >= 1): -1.0187..., -3.2481...
double ai_prime_zero(int k);

}  // namespace airywell::airy
