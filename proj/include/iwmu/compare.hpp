#pragma once

// Decisions of the form "same elementary representation" for two modules,
// and the same decision made from raw (n, m) -> ord tower data.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwmu/invariants.hpp"

namespace iwmu {

enum class VerdictKind { Equal, Unequal, Inconclusive };

std::string to_string(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<int> witness_n;  // Unequal only
  std::string reason;            // Inconclusive only
  std::vector<std::int64_t> mu_first;
  std::vector<std::int64_t> mu_second;
  std::optional<std::pair<int, int>> theta_pair;
  std::optional<ElementaryRep> rep_first;
  std::optional<ElementaryRep> rep_second;
  std::optional<bool> rank_equal;
};

enum class CompareMode {
  UpToTheta,  // compare through theta(first) + 1; first must be torsion
  AllN,       // compare through n_max
};

struct CompareOptions {
  CompareMode mode = CompareMode::AllN;
  int n_max = kDefaultNMax;
  std::vector<int> levels;  // empty: default_levels(group)
};

/// Compares two already computed profiles.
Verdict compare_profiles(const MuProfile& first, const MuProfile& second, CompareMode mode);

Verdict compare_modules(const Presentation& first, const Presentation& second,
                        const CompareOptions& options = {});

struct TowerSeries {
  int p = 2;
  int r = 1;
  std::map<std::pair<int, int>, std::int64_t> data;  // (n, m) -> ord
  std::string label;

  std::vector<int> ns() const;
  std::vector<int> ms() const;
  /// Throws GridMismatch unless every (n, m) of ns() x ms() is present and n = 1..n_max.
  void check_rectangular() const;
  std::map<int, std::int64_t> level_column(int n) const;
};

/// Error model: |ord - mu p^{rm}| <= C p^{(r-1)m} with C = error_c.
Verdict tower_compare(const TowerSeries& a, const TowerSeries& b, const Rational& error_c = 1);

/// Profile recovered from tower data (each row fitted independently).
MuProfile tower_profile(const TowerSeries& series);

}  // namespace iwmu
