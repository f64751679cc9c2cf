#include <gtest/gtest.h>

#include "iwmu/errors.hpp"
#include "iwmu/homology.hpp"

namespace iwmu {
namespace {

// Lambda / (pi, g_1 - 1)
Presentation residue_line(const GroupSpec& group) {
  const RingBase base{group.p, 1, 1};
  const IntegralOrder order(base);
  Presentation p{group, base, PolyMatrix(2, 1), 1};
  p.matrix(0, 0) = GroupRingPoly::monomial(order.pi_power(1), Exponents(static_cast<std::size_t>(group.r), 0));
  p.matrix(1, 0) = GroupRingPoly::generator_minus_one(group.r, 0);
  return p;
}

TEST(Coinvariants, CyclicPiPower) {
  const auto p = Presentation::cyclic_pi(GroupSpec::abelian(3, 1), {3, 1, 1}, 2);
  EXPECT_EQ(coinvariants_ordq(p, 2, 2).ordq, 18);
  for (int m = 0; m <= 2; ++m) {
    const auto q = Presentation::cyclic_pi(GroupSpec::metacyclic(3), {3, 2, 1}, 3);
    EXPECT_EQ(coinvariants_ordq(q, m, 4).ordq, 3 * quotient_order(q.group, m));
  }
}

TEST(Coinvariants, ZeroModule) {
  const GroupSpec group = GroupSpec::abelian(2, 2);
  Presentation p{group, {2, 1, 1}, PolyMatrix(1, 1), std::nullopt};
  p.matrix(0, 0) = GroupRingPoly::constant(1, 2);
  for (int m = 0; m <= 2; ++m) {
    const auto c = coinvariants_ordq(p, m, 3);
    EXPECT_EQ(c.ordq, 0);
    EXPECT_TRUE(c.warning.empty());
  }
}

TEST(Coinvariants, ResidueLineGrowsLikePm) {
  const auto p = residue_line(GroupSpec::abelian(2, 2));
  for (int m = 0; m <= 3; ++m) EXPECT_EQ(coinvariants_ordq(p, m, 2).ordq, 1 << m);
}

TEST(Coinvariants, SaturationWarning) {
  const auto free = Presentation::free_module(GroupSpec::abelian(3, 1), {3, 1, 1}, 1);
  const auto unbounded = coinvariants_ordq(free, 1, 3);
  EXPECT_EQ(unbounded.ordq, 9);
  EXPECT_TRUE(unbounded.saturated);
  EXPECT_FALSE(unbounded.warning.empty());
  const auto bounded = coinvariants_ordq(quotient_pi(free, 3), 1, 3);
  EXPECT_EQ(bounded.ordq, 9);
  EXPECT_TRUE(bounded.warning.empty());
}

TEST(Coinvariants, DirectSumAdditivity) {
  const GroupSpec group = GroupSpec::abelian(2, 2);
  const auto a = residue_line(group);
  const auto b = Presentation::cyclic_pi(group, {2, 1, 1}, 2);
  for (int m = 0; m <= 2; ++m) {
    EXPECT_EQ(coinvariants_ordq(direct_sum(a, b), m, 3).ordq,
              coinvariants_ordq(a, m, 3).ordq + coinvariants_ordq(b, m, 3).ordq);
  }
}

TEST(LevelOrders, BatchedMatchesPerQuotient) {
  const GroupSpec group = GroupSpec::abelian(2, 2);
  const auto p = direct_sum(direct_sum(residue_line(group), Presentation::cyclic_pi(group, {2, 1, 1}, 3)),
                            Presentation::free_module(group, {2, 1, 1}, 1));
  const int levels[] = {0, 1, 2};
  const auto batched = level_orders(p, 4, levels);
  ASSERT_EQ(batched.size(), 4u);
  for (const auto& row : batched) {
    for (int m : levels) {
      EXPECT_EQ(row.orders.at(m), coinvariants_ordq(quotient_pi(p, row.n), m, row.n).ordq)
          << "n=" << row.n << " m=" << m;
    }
  }
  EXPECT_THROW(level_orders(p, 2, std::vector<int>{1, 0}), InvalidInput);
  EXPECT_THROW(level_orders(p, 0, levels), InvalidInput);
}

TEST(Koszul, CyclicPiPowerIsAcyclic) {
  for (const auto& group : {GroupSpec::abelian(2, 1), GroupSpec::abelian(3, 1), GroupSpec::abelian(2, 2)}) {
    const RingBase base{group.p, 1, 1};
    for (int alpha = 1; alpha <= 2; ++alpha) {
      const auto p = Presentation::cyclic_pi(group, base, alpha);
      for (int m = 0; m <= 1; ++m) {
        EXPECT_EQ(koszul_homology_ordq(p, m, 0, alpha), alpha * quotient_order(group, m));
        for (int i = 1; i <= group.r; ++i) {
          EXPECT_EQ(koszul_homology_ordq(p, m, i, alpha), 0) << "r=" << group.r << " m=" << m << " i=" << i;
        }
      }
    }
  }
}

TEST(Koszul, ResidueLineEulerCharacteristicVanishes) {
  const auto p = residue_line(GroupSpec::abelian(2, 2));
  EXPECT_EQ(koszul_homology_ordq(p, 0, 0, 1), 1);
  EXPECT_EQ(koszul_homology_ordq(p, 0, 1, 1), 1);
  EXPECT_EQ(koszul_homology_ordq(p, 0, 2, 1), 0);
  EXPECT_EQ(homology_euler_characteristic(p, 0, 1), 0);
}

TEST(Koszul, FiniteModuleInRankOne) {
  // Lambda/(pi, g - 1) = k for r = 1: H_0 = H_1 = k.
  const auto p = residue_line(GroupSpec::abelian(3, 1));
  EXPECT_EQ(koszul_homology_ordq(p, 0, 1, 1), 1);
  EXPECT_EQ(koszul_homology_ordq(p, 1, 1, 1), 1);
  EXPECT_EQ(homology_euler_characteristic(p, 0, 1), 0);
}

TEST(Koszul, EulerCharacteristicIsMuForElementarySums) {
  const GroupSpec group = GroupSpec::abelian(2, 2);
  const RingBase base{2, 1, 1};
  const auto p = direct_sum(direct_sum(Presentation::cyclic_pi(group, base, 1),
                                       Presentation::cyclic_pi(group, base, 3)),
                            residue_line(group));
  EXPECT_EQ(homology_euler_characteristic(p, 0, 3), 4);
}

TEST(Koszul, RejectsUnsupportedRequests) {
  const auto meta = Presentation::cyclic_pi(GroupSpec::metacyclic(3), {3, 1, 1}, 1);
  EXPECT_THROW(koszul_homology_ordq(meta, 0, 1, 1), NonAbelianUnsupported);
  EXPECT_EQ(koszul_homology_ordq(meta, 1, 0, 1), 9);
  EXPECT_THROW(koszul_homology_ordq(meta, 0, 3, 1), InvalidInput);
}

}  // namespace
}  // namespace iwmu
