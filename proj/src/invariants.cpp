#include "iwmu/invariants.hpp"

#include <algorithm>

#include "iwmu/errors.hpp"

namespace iwmu {

namespace {

Integer power(int base, int exponent) { return pow(Integer(base), static_cast<unsigned>(exponent)); }

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

}  // namespace

std::vector<int> default_levels(const GroupSpec& group) {
  if (group.r == 1) return {0, 1, 2, 3, 4};
  return {0, 1, 2};
}

MuEstimate fit_mu(int p, int r, const std::map<int, std::int64_t>& orders) {
  if (orders.size() < 2) throw InvalidInput("mu estimation needs at least two levels");
  MuEstimate out;
  const auto top = std::prev(orders.end());
  const auto second = std::prev(top);

  const Integer q_top = power(p, r * top->first);
  const Integer ord_top = top->second;
  const Integer rem = ord_top % q_top;
  out.mu = static_cast<std::int64_t>((2 * ord_top + q_top) / (2 * q_top));
  const bool tie = 2 * rem == q_top;

  const Integer q_second = power(p, r * second->first);
  const bool agrees = 2 * abs_value(Integer(second->second) - out.mu * q_second) <= q_second;

  Rational rho_top = 0, rho_second = 0;
  for (const auto& [m, ord] : orders) {
    const Rational rho(abs_value(Integer(ord) - out.mu * power(p, r * m)), power(p, (r - 1) * m));
    out.c_hat = std::max(out.c_hat, rho);
    if (m == top->first) rho_top = rho;
    if (m == second->first) rho_second = rho;
  }

  if (tie) {
    out.reason = "ord/p^(rm) is a half-integer at the top level " + std::to_string(top->first);
  } else if (!agrees) {
    out.reason = "rounded mu differs between levels " + std::to_string(second->first) + " and " +
                 std::to_string(top->first);
  } else if (rho_top > rho_second) {
    out.reason = "normalized residual grows from level " + std::to_string(second->first) +
                 " to " + std::to_string(top->first);
  } else {
    out.converged = true;
  }
  return out;
}

MuEstimate estimate_mu(const Presentation& p, int n, std::span<const int> levels) {
  if (n < 1) throw InvalidInput("n must be >= 1");
  const Presentation quotient = quotient_pi(p, n);
  std::map<int, std::int64_t> orders;
  for (int m : levels) orders[m] = coinvariants_ordq(quotient, m, n).ordq;
  return fit_mu(p.group.p, p.group.r, orders);
}

bool MuProfile::converged() const {
  return std::all_of(estimates.begin(), estimates.end(),
                     [](const MuEstimate& e) { return e.converged; });
}

std::vector<std::int64_t> MuProfile::mu_values() const {
  std::vector<std::int64_t> out;
  out.reserve(estimates.size());
  for (const auto& e : estimates) out.push_back(e.mu);
  return out;
}

MuProfile profile_from_orders(int p, int r, std::vector<LevelOrders> raw) {
  MuProfile profile;
  profile.p = p;
  profile.r = r;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k].n != static_cast<int>(k) + 1) throw InvalidInput("level orders must cover n = 1, 2, ...");
  }
  if (!raw.empty()) {
    for (const auto& [m, ord] : raw.front().orders) profile.levels_used.push_back(m);
  }
  for (const auto& row : raw) profile.estimates.push_back(fit_mu(p, r, row.orders));
  profile.raw = std::move(raw);

  std::int64_t previous_mu = 0;
  std::int64_t previous_delta = -1;
  for (int n = 1; n <= profile.n_max(); ++n) {
    const std::int64_t delta = profile.mu(n) - previous_mu;
    if (delta < 0 || (previous_delta >= 0 && delta > previous_delta)) {
      throw InconsistentProfile("mu profile violates monotonicity at n = " + std::to_string(n) +
                                " (first difference " + std::to_string(delta) + " after " +
                                std::to_string(previous_delta) + "); levels are probably too low");
    }
    previous_mu = profile.mu(n);
    previous_delta = delta;
  }
  return profile;
}

MuProfile mu_profile(const Presentation& p, int n_max, std::span<const int> levels) {
  if (levels.size() < 2) throw InvalidInput("mu estimation needs at least two levels");
  return profile_from_orders(p.group.p, p.group.r, level_orders(p, n_max, levels));
}

ElementaryRep elementary_from_exponents(std::int64_t free_rank, std::span<const int> alphas) {
  ElementaryRep rep;
  rep.free_rank = free_rank;
  for (int a : alphas) {
    if (a < 1) throw InvalidInput("pi-exponents must be >= 1");
    rep.theta = std::max(rep.theta, a);
  }
  rep.multiplicities.assign(static_cast<std::size_t>(rep.theta), 0);
  for (int a : alphas) {
    ++rep.multiplicities[static_cast<std::size_t>(a - 1)];
    rep.mu_total += a;
  }
  return rep;
}

std::int64_t predicted_mu(const ElementaryRep& rep, int n) {
  std::int64_t total = n * rep.free_rank;
  for (std::size_t i = 0; i < rep.multiplicities.size(); ++i) {
    total += std::min<std::int64_t>(n, static_cast<std::int64_t>(i) + 1) * rep.multiplicities[i];
  }
  return total;
}

ElementaryRep recover_elementary(const MuProfile& profile) {
  for (int n = 1; n <= profile.n_max(); ++n) {
    const auto& e = profile.estimates[static_cast<std::size_t>(n - 1)];
    if (!e.converged) throw NotConverged("mu(M/pi^" + std::to_string(n) + ") not converged: " + e.reason);
  }
  const int n_max = profile.n_max();
  std::vector<std::int64_t> delta(static_cast<std::size_t>(n_max) + 1, 0);
  for (int n = 1; n <= n_max; ++n) {
    delta[static_cast<std::size_t>(n)] = profile.mu(n) - (n > 1 ? profile.mu(n - 1) : 0);
  }
  bool repeated = false;
  for (int n = 1; n < n_max; ++n) {
    repeated = repeated || delta[static_cast<std::size_t>(n)] == delta[static_cast<std::size_t>(n + 1)];
  }
  if (!repeated) {
    throw ProfileTooShort("first differences of mu never repeat within n_max = " +
                          std::to_string(n_max) + "; the missing depth is unknown, try n_max = " +
                          std::to_string(n_max + 1));
  }

  ElementaryRep rep;
  rep.free_rank = delta[static_cast<std::size_t>(n_max)];
  std::vector<std::int64_t> s;
  for (int i = 1; i < n_max; ++i) {
    s.push_back(delta[static_cast<std::size_t>(i)] - delta[static_cast<std::size_t>(i + 1)]);
  }
  while (!s.empty() && s.back() == 0) s.pop_back();
  rep.multiplicities = std::move(s);
  rep.theta = static_cast<int>(rep.multiplicities.size());
  for (std::size_t i = 0; i < rep.multiplicities.size(); ++i) {
    rep.mu_total += static_cast<std::int64_t>(i + 1) * rep.multiplicities[i];
  }
  for (int n = 1; n <= n_max; ++n) {
    if (predicted_mu(rep, n) != profile.mu(n)) {
      throw InconsistentProfile("recovered representation does not reproduce mu at n = " +
                                std::to_string(n));
    }
  }
  return rep;
}

std::vector<std::int64_t> solve_multiplicities(std::span<const std::int64_t> mu, int theta) {
  if (theta < 0 || mu.size() != static_cast<std::size_t>(theta)) {
    throw InvalidInput("solve_multiplicities needs theta >= 0 and exactly theta values");
  }
  const auto t = static_cast<std::size_t>(theta);
  // Augmented system [min(n, i) | mu_n], eliminated over the rationals.
  std::vector<std::vector<Rational>> a(t, std::vector<Rational>(t + 1));
  for (std::size_t n = 0; n < t; ++n) {
    for (std::size_t i = 0; i < t; ++i) a[n][i] = static_cast<std::int64_t>(std::min(n, i) + 1);
    a[n][t] = mu[n];
  }
  for (std::size_t col = 0; col < t; ++col) {
    std::size_t pivot = col;
    while (pivot < t && a[pivot][col] == 0) ++pivot;
    if (pivot == t) throw std::logic_error("multiplicity matrix is singular");
    std::swap(a[pivot], a[col]);
    for (std::size_t row = 0; row < t; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j <= t; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  std::vector<std::int64_t> s(t);
  for (std::size_t i = 0; i < t; ++i) {
    const Rational value = a[i][t] / a[i][i];
    if (denominator(value) != 1 || value < 0) {
      throw InconsistentInput("mu vector gives s_" + std::to_string(i + 1) + " = " + value.str() +
                              ", which is not a non-negative integer");
    }
    s[i] = static_cast<std::int64_t>(numerator(value));
  }
  return s;
}

bool is_pseudonull_pi_part(const Presentation& p, std::span<const int> levels) {
  return recover_elementary(mu_profile(p, kDefaultNMax, levels)).theta == 0;
}

}  // namespace iwmu
