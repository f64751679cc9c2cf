#include <random>
#include <set>

#include <gtest/gtest.h>

#include "iwmu/errors.hpp"
#include "iwmu/group.hpp"
#include "iwmu/group_ring.hpp"
#include "iwmu/normal_form.hpp"
#include "iwmu/presentation.hpp"
#include "test_support.hpp"

namespace iwmu {
namespace {

TEST(QuotientOrder, Values) {
  EXPECT_EQ(quotient_order(GroupSpec::abelian(3, 1), 2), 9);
  EXPECT_EQ(quotient_order(GroupSpec::abelian(2, 2), 3), 64);
  EXPECT_EQ(quotient_order(GroupSpec::abelian(5, 3), 0), 1);
  EXPECT_EQ(quotient_order(GroupSpec::metacyclic(3), 2), 81);
  EXPECT_THROW(quotient_order(GroupSpec::abelian(2, 1), -1), InvalidInput);
  EXPECT_THROW(quotient_order(GroupSpec::abelian(3, 8), 5), TooLarge);
}

TEST(GroupSpec, MetacyclicRejectsTwo) {
  EXPECT_THROW(GroupSpec::metacyclic(2).validate(), InvalidInput);
  EXPECT_NO_THROW(GroupSpec::metacyclic(5).validate());
  EXPECT_THROW(GroupSpec::abelian(6, 1).validate(), InvalidInput);
}

void check_group_axioms(const GroupLevel& level) {
  const std::int64_t n = level.order();
  std::int64_t identity = -1;
  for (std::int64_t g = 0; g < n; ++g) {
    bool is_identity = true;
    for (std::int64_t h = 0; h < n && is_identity; ++h) {
      is_identity = level.multiply(g, h) == h && level.multiply(h, g) == h;
    }
    if (is_identity) identity = g;
  }
  ASSERT_EQ(identity, 0);
  for (std::int64_t g = 0; g < n; ++g) {
    std::set<std::int64_t> row;
    for (std::int64_t h = 0; h < n; ++h) {
      row.insert(level.multiply(g, h));
      for (std::int64_t k = 0; k < n; ++k) {
        ASSERT_EQ(level.multiply(level.multiply(g, h), k), level.multiply(g, level.multiply(h, k)));
      }
    }
    EXPECT_EQ(static_cast<std::int64_t>(row.size()), n);  // Latin square, so inverses exist
  }
}

TEST(GroupLevel, MetacyclicTableIsAGroupOfOrderP2m) {
  for (int m = 0; m <= 2; ++m) {
    const GroupLevel level(GroupSpec::metacyclic(3), m);
    EXPECT_EQ(level.order(), quotient_order(GroupSpec::metacyclic(3), m));
    check_group_axioms(level);
  }
}

TEST(GroupLevel, AbelianTablesAreGroups) {
  check_group_axioms(GroupLevel(GroupSpec::abelian(2, 2), 2));
  check_group_axioms(GroupLevel(GroupSpec::abelian(3, 1), 2));
}

TEST(GroupLevel, MetacyclicIsNotCommutative) {
  const GroupLevel level(GroupSpec::metacyclic(3), 2);
  const auto a = level.index_of(Exponents{1, 0});
  const auto b = level.index_of(Exponents{0, 1});
  EXPECT_NE(level.multiply(a, b), level.multiply(b, a));
  // b a b^-1 = a^(1+p)
  const auto b_inv = level.index_of(Exponents{0, -1});
  EXPECT_EQ(level.multiply(level.multiply(b, a), b_inv), level.index_of(Exponents{4, 0}));
}

TEST(GroupLevel, ProductAgreesWithExactProduct) {
  const GroupSpec spec = GroupSpec::metacyclic(3);
  const GroupLevel level(spec, 2);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Exponents x{static_cast<std::int64_t>(rng() % 20), static_cast<std::int64_t>(rng() % 20)};
    const Exponents y{static_cast<std::int64_t>(rng() % 20), static_cast<std::int64_t>(rng() % 20)};
    EXPECT_EQ(level.index_of(multiply_in_group(spec, x, y)),
              level.multiply(level.index_of(x), level.index_of(y)));
  }
}

TEST(GroupLevel, ProjectionIsAHomomorphism) {
  for (const auto& spec : {GroupSpec::metacyclic(3), GroupSpec::abelian(2, 2)}) {
    const GroupLevel fine(spec, 2);
    const GroupLevel coarse(spec, 1);
    for (std::int64_t g = 0; g < fine.order(); ++g) {
      for (std::int64_t h = 0; h < fine.order(); ++h) {
        ASSERT_EQ(fine.project(fine.multiply(g, h), coarse),
                  coarse.multiply(fine.project(g, coarse), fine.project(h, coarse)));
      }
    }
  }
}

TEST(IntegralOrder, EisensteinAndGaloisArithmetic) {
  const IntegralOrder order({3, 2, 2});
  EXPECT_EQ(order.mul(order.pi_power(1), order.pi_power(1)), (Coefficient{3}));
  EXPECT_EQ(order.pi_power(3), (Coefficient{0, 0, 3}));
  // x^2 = -2x - 2 for the Conway polynomial x^2 + 2x + 2 over F_3
  EXPECT_EQ(order.mul({0, 1}, {0, 1}), (Coefficient{-2, -2}));
  EXPECT_EQ(order.add({1, 2}, {-1, -2}), Coefficient{});
}

TEST(GroupRingPoly, CanonicalForm) {
  const GroupRingPoly x({Term{{2}, {1, 0}}, Term{{1}, {0, 0}}, Term{{-2}, {1, 0}}, Term{{0, 0}, {2, 2}}});
  ASSERT_EQ(x.terms().size(), 1u);
  EXPECT_EQ(x.terms()[0], (Term{{1}, {0, 0}}));
  EXPECT_TRUE(add(x, GroupRingPoly::constant(-1, 2)).is_zero());
  EXPECT_THROW(GroupRingPoly({Term{{1}, {-1}}}), InvalidInput);
}

TEST(ReducePoly, AugmentationAtLevelZero) {
  const ResidueRing ring({2, 1, 1, 3});
  const auto x = reduce_poly(ring, GroupLevel(GroupSpec::abelian(2, 1), 0),
                             GroupRingPoly::generator_minus_one(1, 0));
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(x[0], 0u);
}

TEST(ReducePoly, GeneratorPowerVanishesAtItsLevel) {
  const ResidueRing ring({3, 1, 1, 2});
  for (int m = 0; m <= 3; ++m) {
    const GroupLevel level(GroupSpec::abelian(3, 1), m);
    const auto x = reduce_poly(ring, level,
                               GroupRingPoly::generator_minus_one(1, 0, level.exponent_modulus()));
    for (auto c : x) EXPECT_EQ(c, 0u);
  }
}

TEST(ReducePoly, MetacyclicNormalOrdering) {
  const GroupSpec spec = GroupSpec::metacyclic(3);
  const IntegralOrder order({3, 1, 1});
  const GroupLevel level(spec, 1);
  const ResidueRing ring({3, 1, 1, 2});
  const auto b = GroupRingPoly::monomial({1}, {0, 1});
  const auto a = GroupRingPoly::monomial({1}, {1, 0});
  const auto ba = multiply(order, spec, b, a);
  ASSERT_EQ(ba.terms().size(), 1u);
  EXPECT_EQ(ba.terms()[0].exponents, (Exponents{4, 1}));
  const auto reduced = reduce_poly(ring, level, ba);
  for (std::int64_t g = 0; g < level.order(); ++g) {
    EXPECT_EQ(reduced[static_cast<std::size_t>(g)], g == level.index_of(Exponents{1, 1}) ? 1u : 0u);
  }
}

TEST(ReducePoly, CommutesWithProjection) {
  const GroupSpec spec = GroupSpec::metacyclic(3);
  const ChainRing ring({3, 1, 2, 2});
  const GroupLevel fine(spec, 2);
  const GroupLevel coarse(spec, 1);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Term> terms;
    for (int t = 0; t < 5; ++t) {
      terms.push_back(Term{{Integer(static_cast<int>(rng() % 9) - 4), Integer(rng() % 5)},
                           {static_cast<std::int64_t>(rng() % 12), static_cast<std::int64_t>(rng() % 12)}});
    }
    const GroupRingPoly x(terms);
    const auto at_fine = reduce_poly(ring, fine, x);
    std::vector<ChainRingElem> projected(static_cast<std::size_t>(coarse.order()), ring.zero());
    for (std::int64_t g = 0; g < fine.order(); ++g) {
      auto& slot = projected[static_cast<std::size_t>(fine.project(g, coarse))];
      slot = ring.add(slot, at_fine[static_cast<std::size_t>(g)]);
    }
    EXPECT_EQ(projected, reduce_poly(ring, coarse, x));
  }
}

TEST(RegularRep, SmallCases) {
  const ResidueRing ring({2, 1, 1, 3});
  const GroupLevel level(GroupSpec::abelian(2, 1), 1);
  const auto rep = [&](const GroupRingPoly& x) {
    const auto v = reduce_poly(ring, level, x);
    return regular_rep(ring, level, std::span<const std::uint64_t>(v));
  };
  EXPECT_EQ(rep(GroupRingPoly::constant(1, 1)), identity_matrix(ring, 2));
  RingMatrix<ResidueRing> pi_id(2, 2);
  pi_id << 2, 0, 0, 2;
  EXPECT_EQ(rep(GroupRingPoly::constant(2, 1)), pi_id);
  RingMatrix<ResidueRing> swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(rep(GroupRingPoly::monomial({1}, {1})), swap);
}

template <class Ring>
void check_homomorphism(const Ring& ring, const GroupLevel& level, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::size_t>(level.order());
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<typename Ring::Element> x(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = testing::random_element(ring, rng);
      y[k] = testing::random_element(ring, rng);
    }
    using Span = std::span<const typename Ring::Element>;
    const auto xy = multiply_at_level(ring, level, Span(x), Span(y));
    EXPECT_EQ(regular_rep(ring, level, Span(xy)),
              multiply(ring, regular_rep(ring, level, Span(x)), regular_rep(ring, level, Span(y))));
    std::vector<typename Ring::Element> sum(n);
    for (std::size_t k = 0; k < n; ++k) sum[k] = ring.add(x[k], y[k]);
    RingMatrix<Ring> expected = regular_rep(ring, level, Span(x));
    const auto ry = regular_rep(ring, level, Span(y));
    for (Eigen::Index i = 0; i < expected.rows(); ++i) {
      for (Eigen::Index j = 0; j < expected.cols(); ++j) expected(i, j) = ring.add(expected(i, j), ry(i, j));
    }
    EXPECT_EQ(regular_rep(ring, level, Span(sum)), expected);
  }
}

TEST(RegularRep, IsARingHomomorphism) {
  for (int m = 0; m <= 2; ++m) {
    check_homomorphism(ResidueRing({3, 1, 1, 2}), GroupLevel(GroupSpec::metacyclic(3), m), 40 + m);
    check_homomorphism(ChainRing({2, 2, 1, 3}), GroupLevel(GroupSpec::abelian(2, 2), m), 50 + m);
  }
}

TEST(Presentation, QuotientAndDirectSum) {
  const GroupSpec group = GroupSpec::abelian(3, 1);
  const RingBase base{3, 1, 1};
  const auto free = Presentation::free_module(group, base, 1);
  const auto lambda_mod_pi2 = quotient_pi(free, 2);
  EXPECT_EQ(lambda_mod_pi2.rels(), 1);
  EXPECT_EQ(lambda_mod_pi2.pi_exponent, 2);
  const ResidueRing ring({3, 1, 1, 4});
  for (int m = 0; m <= 2; ++m) {
    const GroupLevel level(group, m);
    const auto order = quotient_order(group, m);
    EXPECT_EQ(cokernel_ordq(ring, expand_at_level(ring, level, lambda_mod_pi2)), 2 * order);
    const auto cubed = Presentation::cyclic_pi(group, base, 3);
    EXPECT_EQ(cokernel_ordq(ring, expand_at_level(ring, level, quotient_pi(cubed, 5))), 3 * order);
    EXPECT_EQ(cokernel_ordq(ring, expand_at_level(ring, level, quotient_pi(cubed, 2))), 2 * order);
    const auto sum = direct_sum(cubed, lambda_mod_pi2);
    EXPECT_EQ(cokernel_ordq(ring, expand_at_level(ring, level, sum)), 5 * order);
  }
}

TEST(Presentation, ValidateCatchesMismatches) {
  Presentation p = Presentation::free_module(GroupSpec::abelian(2, 2), {2, 1, 1}, 1);
  p.matrix.resize(1, 1);
  p.matrix(0, 0) = GroupRingPoly::monomial({1}, {1});
  EXPECT_THROW(p.validate(), InvalidInput);
  p.matrix(0, 0) = GroupRingPoly::monomial({1, 1}, {1, 0});
  EXPECT_THROW(p.validate(), InvalidInput);
  p.ring = {3, 1, 1};
  p.matrix(0, 0) = GroupRingPoly::constant(1, 2);
  EXPECT_THROW(p.validate(), InvalidInput);
}

}  // namespace
}  // namespace iwmu
