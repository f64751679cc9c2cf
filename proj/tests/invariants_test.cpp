#include <random>

#include <gtest/gtest.h>

#include "iwmu/errors.hpp"
#include "iwmu/invariants.hpp"

namespace iwmu {
namespace {

Presentation residue_line(const GroupSpec& group) {
  const RingBase base{group.p, 1, 1};
  Presentation p{group, base, PolyMatrix(2, 1), 1};
  p.matrix(0, 0) = GroupRingPoly::constant(group.p, group.r);
  p.matrix(1, 0) = GroupRingPoly::generator_minus_one(group.r, 0);
  return p;
}

Presentation elementary(const GroupSpec& group, int free_rank, std::initializer_list<int> alphas) {
  const RingBase base{group.p, 1, 1};
  Presentation out = Presentation::free_module(group, base, free_rank);
  for (int a : alphas) out = direct_sum(out, Presentation::cyclic_pi(group, base, a));
  return out;
}

// Raw orders mu_n p^{rm} for a prescribed profile.
MuProfile exact_profile(int p, int r, const std::vector<std::int64_t>& mu, int top_level) {
  std::vector<LevelOrders> raw;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    LevelOrders row;
    row.n = static_cast<int>(k) + 1;
    row.truncation = static_cast<int>(mu.size());
    std::int64_t q = 1;
    for (int m = 0; m <= top_level; ++m) {
      row.orders[m] = mu[k] * q;
      for (int j = 0; j < r; ++j) q *= p;
    }
    raw.push_back(row);
  }
  return profile_from_orders(p, r, raw);
}

TEST(FitMu, ExactAndNoisy) {
  auto e = fit_mu(3, 2, {{0, 2}, {1, 18}, {2, 162}});
  EXPECT_EQ(e.mu, 2);
  EXPECT_TRUE(e.converged);
  EXPECT_EQ(e.c_hat, 0);

  e = fit_mu(2, 2, {{0, 1}, {1, 2}, {2, 4}, {3, 8}});
  EXPECT_EQ(e.mu, 0);
  EXPECT_TRUE(e.converged);
  EXPECT_EQ(e.c_hat, 1);

  e = fit_mu(2, 2, {{1, 2}, {2, 8}});  // 8/16 is a tie
  EXPECT_FALSE(e.converged);

  e = fit_mu(3, 1, {{0, 0}, {1, 3}, {2, 18}});  // 1 then 2
  EXPECT_FALSE(e.converged);

  EXPECT_THROW(fit_mu(3, 1, {{0, 1}}), InvalidInput);
}

TEST(EstimateMu, KnownValues) {
  for (int r : {1, 2}) {
    const auto p = Presentation::cyclic_pi(GroupSpec::abelian(3, r), {3, 1, 1}, 2);
    const auto e = estimate_mu(p, 2, std::vector<int>{0, 1, 2});
    EXPECT_EQ(e.mu, 2);
    EXPECT_TRUE(e.converged);
    EXPECT_EQ(e.c_hat, 0);
  }
  const auto line = estimate_mu(residue_line(GroupSpec::abelian(2, 2)), 1, std::vector<int>{0, 1, 2, 3});
  EXPECT_EQ(line.mu, 0);
  EXPECT_TRUE(line.converged);
  EXPECT_EQ(line.c_hat, 1);

  const auto zero = estimate_mu(elementary(GroupSpec::abelian(2, 1), 0, {}), 3, std::vector<int>{0, 1});
  EXPECT_EQ(zero.mu, 0);
  EXPECT_EQ(zero.c_hat, 0);
}

TEST(MuProfile, KnownValues) {
  const GroupSpec group = GroupSpec::abelian(3, 1);
  const auto levels = default_levels(group);
  EXPECT_EQ(mu_profile(elementary(group, 0, {1, 3}), 4, levels).mu_values(),
            (std::vector<std::int64_t>{2, 3, 4, 4}));
  EXPECT_EQ(mu_profile(elementary(group, 1, {}), 5, levels).mu_values(),
            (std::vector<std::int64_t>{1, 2, 3, 4, 5}));
  EXPECT_EQ(mu_profile(elementary(group, 0, {}), 3, levels).mu_values(),
            (std::vector<std::int64_t>{0, 0, 0}));
}

TEST(MuProfile, RejectsNonMonotoneDifferences) {
  EXPECT_THROW(exact_profile(3, 1, {1, 3}, 2), InconsistentProfile);
  EXPECT_THROW(exact_profile(3, 1, {2, 1}, 2), InconsistentProfile);
  EXPECT_NO_THROW(exact_profile(3, 1, {2, 3, 3}, 2));
}

TEST(RecoverElementary, KnownValues) {
  auto rep = recover_elementary(exact_profile(3, 1, {2, 3, 4, 4}, 2));
  EXPECT_EQ(rep.free_rank, 0);
  EXPECT_EQ(rep.multiplicities, (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(rep.theta, 3);
  EXPECT_EQ(rep.mu_total, 4);

  rep = recover_elementary(exact_profile(3, 1, {1, 2, 3, 4}, 2));
  EXPECT_EQ(rep.free_rank, 1);
  EXPECT_TRUE(rep.multiplicities.empty());
  EXPECT_EQ(rep.theta, 0);

  rep = recover_elementary(exact_profile(3, 1, {0, 0}, 2));
  EXPECT_EQ(rep, ElementaryRep{});
}

TEST(RecoverElementary, NeedsARepeatedDifference) {
  EXPECT_THROW(recover_elementary(exact_profile(2, 1, {3, 5, 6}, 2)), ProfileTooShort);
}

TEST(RecoverElementary, RoundTripOnElementarySums) {
  const GroupSpec group = GroupSpec::abelian(2, 2);
  const auto levels = default_levels(group);
  const auto p = direct_sum(elementary(group, 2, {1, 1, 4}), residue_line(group));
  const auto rep = recover_elementary(mu_profile(p, kDefaultNMax, levels));
  EXPECT_EQ(rep, elementary_from_exponents(2, std::vector<int>{1, 1, 4}));
}

TEST(SolveMultiplicities, KnownValues) {
  EXPECT_EQ(solve_multiplicities(std::vector<std::int64_t>{2, 3}, 2), (std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(solve_multiplicities(std::vector<std::int64_t>{0, 0}, 2), (std::vector<std::int64_t>{0, 0}));
  EXPECT_EQ(solve_multiplicities(std::vector<std::int64_t>{2, 4}, 2), (std::vector<std::int64_t>{0, 2}));
  EXPECT_THROW(solve_multiplicities(std::vector<std::int64_t>{2, 5}, 2), InconsistentInput);
  EXPECT_THROW(solve_multiplicities(std::vector<std::int64_t>{2}, 2), InvalidInput);
  EXPECT_TRUE(solve_multiplicities(std::vector<std::int64_t>{}, 0).empty());
}

TEST(SolveMultiplicities, AgreesWithClosedForm) {
  // s_i = 2 mu_i - mu_{i-1} - mu_{i+1} (i < theta), s_theta = mu_theta - mu_{theta-1}
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int theta = 1 + static_cast<int>(rng() % 6);
    ElementaryRep rep;
    rep.theta = theta;
    for (int i = 0; i < theta; ++i) rep.multiplicities.push_back(static_cast<std::int64_t>(rng() % 4));
    std::vector<std::int64_t> mu;
    for (int n = 1; n <= theta; ++n) mu.push_back(predicted_mu(rep, n));
    const auto s = solve_multiplicities(mu, theta);
    for (int i = 1; i <= theta; ++i) {
      const std::int64_t before = i > 1 ? mu[static_cast<std::size_t>(i - 2)] : 0;
      const std::int64_t here = mu[static_cast<std::size_t>(i - 1)];
      const std::int64_t closed =
          i < theta ? 2 * here - before - mu[static_cast<std::size_t>(i)] : here - before;
      EXPECT_EQ(s[static_cast<std::size_t>(i - 1)], closed);
    }
    EXPECT_EQ(s, rep.multiplicities);
  }
}

TEST(IsPseudonull, KnownValues) {
  const GroupSpec group = GroupSpec::abelian(2, 2);
  const auto levels = default_levels(group);
  EXPECT_TRUE(is_pseudonull_pi_part(residue_line(group), levels));
  EXPECT_FALSE(is_pseudonull_pi_part(elementary(group, 0, {1}), levels));
  EXPECT_TRUE(is_pseudonull_pi_part(elementary(group, 0, {}), levels));
}

}  // namespace
}  // namespace iwmu
