#pragma once

#include <cstdint>

namespace znec {

/// Work limits for the exhaustive routines. Everything in the library runs
/// at desk scale; these make it refuse instead of running forever.
struct Budgets {
  std::uint64_t enumeration = 1'000'000;  // points listed by enumerate_points
  std::uint64_t counting = 10'000'000;    // largest prime counted naively
  std::uint64_t oracle = 100'000;         // |E| accepted by brute_force_structure
  std::uint64_t search = 200'000'000;     // point evaluations in curve searches

  /// Defaults, with ZNEC_BUDGET (a positive integer) overriding the
  /// enumeration and counting limits when set.
  static Budgets from_environment();
};

}  // namespace znec
