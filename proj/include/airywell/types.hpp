#pragma once

#include <string_view>
#include <vector>

namespace airywell {

enum class Parity { even, odd };

constexpr Parity parity_of(int n) { return (n % 2 == 0) ? Parity::even : Parity::odd; }

constexpr double parity_sign(Parity p) { return p == Parity::even ? 1.0 : -1.0; }

constexpr std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

enum class Method { exact, wkb, maf };

constexpr std::string_view to_string(Method m)
{
  switch (m) {
    case Method::exact: return "exact";
    case Method::wkb: return "wkb";
    case Method::maf: return "maf";
  }
  return "?";
}

/// Level list from a root search. `exhausted` is set when fewer levels than
/// requested exist below the barrier (printed as "N/A" in tables).
template <class Level>
struct LevelSet {
  std::vector<Level> levels;
  bool exhausted = false;
};

}  // namespace airywell
