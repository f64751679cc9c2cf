#include "iwmu/compare.hpp"

#include <algorithm>
#include <set>

#include "iwmu/errors.hpp"

namespace iwmu {

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Equal:
      return "Equal";
    case VerdictKind::Unequal:
      return "Unequal";
    case VerdictKind::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

Verdict inconclusive(Verdict v, std::string reason) {
  v.kind = VerdictKind::Inconclusive;
  v.reason = std::move(reason);
  return v;
}

// Distinguishes "raise the levels" from "raise n_max" in the reason text.
std::optional<ElementaryRep> try_recover(const MuProfile& profile, std::string& failure) {
  try {
    return recover_elementary(profile);
  } catch (const NotConverged& e) {
    failure = std::string("not converged, more levels needed: ") + e.what();
  } catch (const ProfileTooShort& e) {
    failure = std::string("profile too short, larger n needed: ") + e.what();
  } catch (const InconsistentProfile& e) {
    failure = std::string("inconsistent profile: ") + e.what();
  }
  return std::nullopt;
}

std::optional<int> first_difference(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                    int upto) {
  for (int n = 1; n <= upto; ++n) {
    if (a[static_cast<std::size_t>(n - 1)] != b[static_cast<std::size_t>(n - 1)]) return n;
  }
  return std::nullopt;
}

}  // namespace

Verdict compare_profiles(const MuProfile& first, const MuProfile& second, CompareMode mode) {
  Verdict v;
  v.mu_first = first.mu_values();
  v.mu_second = second.mu_values();
  std::string fail_first, fail_second;
  v.rep_first = try_recover(first, fail_first);
  v.rep_second = try_recover(second, fail_second);
  if (v.rep_first && v.rep_second) {
    v.theta_pair = std::make_pair(v.rep_first->theta, v.rep_second->theta);
    v.rank_equal = v.rep_first->free_rank == v.rep_second->free_rank;
  }
  const int n_common = std::min(first.n_max(), second.n_max());

  if (mode == CompareMode::UpToTheta) {
    if (!v.rep_first) return inconclusive(std::move(v), "first module: " + fail_first);
    if (v.rep_first->free_rank != 0) {
      throw InvalidInput("comparison up to theta needs a torsion first module (recovered rank " +
                         std::to_string(v.rep_first->free_rank) + ")");
    }
    const int bound = v.rep_first->theta + 1;
    if (bound > n_common) {
      return inconclusive(std::move(v), "profile too short, larger n needed: theta + 1 = " +
                                            std::to_string(bound) + " exceeds n_max");
    }
    for (int n = 1; n <= bound; ++n) {
      const auto& e = second.estimates[static_cast<std::size_t>(n - 1)];
      if (!e.converged) {
        return inconclusive(std::move(v), "second module: not converged, more levels needed at n = " +
                                              std::to_string(n) + ": " + e.reason);
      }
    }
    if (auto n = first_difference(v.mu_first, v.mu_second, bound)) {
      v.kind = VerdictKind::Unequal;
      v.witness_n = *n;
      return v;
    }
    if (!v.rep_second) return inconclusive(std::move(v), "second module: " + fail_second);
    if (!(*v.rep_first == *v.rep_second)) {
      return inconclusive(std::move(v),
                          "profiles agree through theta + 1 but the recovered representations differ");
    }
    v.kind = VerdictKind::Equal;
    return v;
  }

  if (!first.converged()) return inconclusive(std::move(v), "first module: " + fail_first);
  if (!second.converged()) return inconclusive(std::move(v), "second module: " + fail_second);
  if (auto n = first_difference(v.mu_first, v.mu_second, n_common)) {
    v.kind = VerdictKind::Unequal;
    v.witness_n = *n;
    return v;
  }
  v.kind = VerdictKind::Equal;
  return v;
}

Verdict compare_modules(const Presentation& first, const Presentation& second,
                        const CompareOptions& options) {
  if (!(first.group == second.group) || !(first.ring == second.ring)) {
    throw InvalidInput("modules live over different rings or groups");
  }
  const std::vector<int> levels =
      options.levels.empty() ? default_levels(first.group) : options.levels;
  std::optional<MuProfile> a, b;
  try {
    a = mu_profile(first, options.n_max, levels);
  } catch (const InconsistentProfile& e) {
    return inconclusive({}, std::string("first module: inconsistent profile: ") + e.what());
  }
  try {
    b = mu_profile(second, options.n_max, levels);
  } catch (const InconsistentProfile& e) {
    return inconclusive({}, std::string("second module: inconsistent profile: ") + e.what());
  }
  return compare_profiles(*a, *b, options.mode);
}

std::vector<int> TowerSeries::ns() const {
  std::set<int> out;
  for (const auto& [key, ord] : data) out.insert(key.first);
  return {out.begin(), out.end()};
}

std::vector<int> TowerSeries::ms() const {
  std::set<int> out;
  for (const auto& [key, ord] : data) out.insert(key.second);
  return {out.begin(), out.end()};
}

void TowerSeries::check_rectangular() const {
  const auto n_values = ns();
  const auto m_values = ms();
  if (data.size() != n_values.size() * m_values.size()) {
    throw GridMismatch("tower '" + label + "' is not rectangular over its (n, m) grid");
  }
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    if (n_values[k] != static_cast<int>(k) + 1) {
      throw GridMismatch("tower '" + label + "' must list n = 1, 2, .. without gaps");
    }
  }
  for (const auto& [key, ord] : data) {
    if (ord < 0) throw GridMismatch("tower '" + label + "' has a negative order");
    if (key.second < 0) throw GridMismatch("tower '" + label + "' has a negative level");
  }
}

std::map<int, std::int64_t> TowerSeries::level_column(int n) const {
  std::map<int, std::int64_t> out;
  for (const auto& [key, ord] : data) {
    if (key.first == n) out[key.second] = ord;
  }
  return out;
}

MuProfile tower_profile(const TowerSeries& series) {
  series.check_rectangular();
  std::vector<LevelOrders> raw;
  for (int n : series.ns()) raw.push_back(LevelOrders{n, 0, series.level_column(n)});
  return profile_from_orders(series.p, series.r, std::move(raw));
}

namespace {

struct Rounded {
  std::int64_t mu = 0;
  bool tie = false;
};

Rounded round_level(int p, int r, int m, std::int64_t ord) {
  const Integer q = pow(Integer(p), static_cast<unsigned>(r * m));
  const Integer x = ord;
  return {static_cast<std::int64_t>((2 * x + q) / (2 * q)), 2 * (x % q) == q};
}

}  // namespace

Verdict tower_compare(const TowerSeries& a, const TowerSeries& b, const Rational& error_c) {
  if (a.p != b.p || a.r != b.r) throw GridMismatch("towers have different (p, r)");
  a.check_rectangular();
  b.check_rectangular();
  if (a.ns() != b.ns() || a.ms() != b.ms()) throw GridMismatch("towers are sampled on different grids");
  if (error_c < 0) throw InvalidInput("error constant must be >= 0");

  Verdict v;
  const int p = a.p, r = a.r;
  const auto levels = a.ms();
  const auto n_values = a.ns();
  if (levels.size() < 2) return inconclusive(std::move(v), "insufficient levels: need at least two");
  const int top = levels.back();
  const int second = levels[levels.size() - 2];

  for (int n : n_values) {
    v.mu_first.push_back(round_level(p, r, top, a.data.at({n, top})).mu);
    v.mu_second.push_back(round_level(p, r, top, b.data.at({n, top})).mu);
  }
  for (const TowerSeries* s : {&a, &b}) {
    try {
      auto rep = recover_elementary(tower_profile(*s));
      (s == &a ? v.rep_first : v.rep_second) = rep;
    } catch (const Error&) {
    }
  }
  if (v.rep_first && v.rep_second) {
    v.theta_pair = std::make_pair(v.rep_first->theta, v.rep_second->theta);
    v.rank_equal = v.rep_first->free_rank == v.rep_second->free_rank;
  }

  for (int n : n_values) {
    const auto at = round_level(p, r, top, a.data.at({n, top}));
    const auto bt = round_level(p, r, top, b.data.at({n, top}));
    const auto as = round_level(p, r, second, a.data.at({n, second}));
    const auto bs = round_level(p, r, second, b.data.at({n, second}));
    if (!at.tie && !bt.tie && !as.tie && !bs.tie && at.mu != bt.mu && as.mu != bs.mu) {
      v.kind = VerdictKind::Unequal;
      v.witness_n = n;
      return v;
    }
  }

  const Integer num = numerator(error_c);
  const Integer den = denominator(error_c);
  for (int n : n_values) {
    for (const TowerSeries* s : {&a, &b}) {
      const auto rounded = round_level(p, r, top, s->data.at({n, top}));
      if (rounded.tie) {
        return inconclusive(std::move(v), "tie at the top level for n = " + std::to_string(n));
      }
      for (int m : levels) {
        Integer residual = Integer(s->data.at({n, m})) - rounded.mu * pow(Integer(p), static_cast<unsigned>(r * m));
        if (residual < 0) residual = -residual;
        if (residual * den > num * pow(Integer(p), static_cast<unsigned>((r - 1) * m))) {
          return inconclusive(std::move(v), "residual bound violated by '" + s->label + "' at (n, m) = (" +
                                                std::to_string(n) + ", " + std::to_string(m) + ")");
        }
      }
    }
    const std::size_t k = static_cast<std::size_t>(n - 1);
    if (v.mu_first[k] != v.mu_second[k]) {
      return inconclusive(std::move(v), "rounded mu differs at n = " + std::to_string(n) +
                                            " only at the top level");
    }
  }
  v.kind = VerdictKind::Equal;
  return v;
}

}  // namespace iwmu
