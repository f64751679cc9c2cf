#include <random>

#include <gtest/gtest.h>

#include "iwmu/chain_ring.hpp"
#include "iwmu/errors.hpp"
#include "iwmu/normal_form.hpp"
#include "test_support.hpp"

namespace iwmu {
namespace {

using testing::random_element;
using testing::random_matrix;

TEST(ChainRingSpec, RejectsBadParameters) {
  EXPECT_THROW((ChainRingSpec{4, 1, 1, 2}.validate()), InvalidInput);
  EXPECT_THROW((ChainRingSpec{3, 0, 1, 2}.validate()), InvalidInput);
  EXPECT_THROW((ChainRingSpec{3, 1, 1, 0}.validate()), InvalidInput);
  EXPECT_THROW((ChainRingSpec{2, 3, 3, 2}.validate()), InvalidInput);
  EXPECT_NO_THROW((ChainRingSpec{3, 2, 2, 5}.validate()));
  EXPECT_EQ((ChainRingSpec{3, 1, 2, 1}.q()), 9u);
}

TEST(ResidueFieldModulus, TableAndFallbackAreIrreducible) {
  for (int p : {2, 3, 5, 7, 11, 13}) {
    for (int f = 1; f <= 4; ++f) {
      const auto h = residue_field_modulus(p, f);
      ASSERT_EQ(h.size(), static_cast<std::size_t>(f) + 1);
      EXPECT_EQ(h.back(), 1u);
      EXPECT_TRUE(is_irreducible_mod_p(h, static_cast<std::uint64_t>(p))) << p << " " << f;
    }
  }
  EXPECT_FALSE(is_irreducible_mod_p({1, 0, 1}, 2));  // x^2 + 1 = (x + 1)^2
}

template <class Ring>
void check_ring_laws(const Ring& ring, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_element(ring, rng);
    const auto b = random_element(ring, rng);
    const auto c = random_element(ring, rng);
    EXPECT_EQ(ring.mul(a, b), ring.mul(b, a));
    EXPECT_EQ(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
    EXPECT_EQ(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
    EXPECT_EQ(ring.add(a, ring.neg(a)), ring.zero());
    EXPECT_EQ(ring.mul_sub(a, b, c), ring.sub(a, ring.mul(b, c)));
    EXPECT_EQ(ring.mul(ring.one(), a), a);

    // a = unit * pi^val(a)
    const int v = ring.valuation(a);
    if (ring.is_zero(a)) {
      EXPECT_EQ(v, ring.truncation());
      continue;
    }
    ASSERT_LT(v, ring.truncation());
    const auto u = ring.divide_by_pi_power(a, v);
    EXPECT_EQ(ring.valuation(u), 0);
    EXPECT_EQ(ring.mul(u, ring.pi_power(v)), a);
    EXPECT_EQ(ring.mul(u, ring.inverse_unit(u)), ring.one());
    EXPECT_EQ(ring.valuation(ring.mul(a, b)),
              std::min(ring.truncation(), v + ring.valuation(b)));
  }
}

TEST(ChainRing, RingLawsAcrossSpecs) {
  const ChainRingSpec specs[] = {{2, 1, 1, 3}, {3, 1, 2, 3}, {2, 2, 1, 5}, {3, 2, 2, 4},
                                 {5, 3, 1, 7}, {2, 1, 3, 4}, {7, 1, 1, 1}, {2, 4, 2, 9}};
  std::uint64_t seed = 1;
  for (const auto& spec : specs) {
    SCOPED_TRACE(::testing::Message() << spec.p << "," << spec.e << "," << spec.f << "," << spec.N);
    check_ring_laws(ChainRing(spec), seed++);
  }
}

TEST(ResidueRing, RingLaws) {
  check_ring_laws(ResidueRing({3, 1, 1, 4}), 11);
  check_ring_laws(ResidueRing({2, 1, 1, 6}), 12);
  check_ring_laws(ResidueRing({5, 1, 1, 1}), 13);
}

TEST(ChainRing, PiPowersAndNilpotence) {
  const ChainRing ring({3, 2, 1, 5});
  EXPECT_EQ(ring.mul(ring.pi_power(1), ring.pi_power(1)), ring.from_integer(3));
  EXPECT_EQ(ring.mul(ring.pi_power(2), ring.pi_power(3)), ring.zero());
  for (int v = 0; v < 5; ++v) EXPECT_EQ(ring.valuation(ring.pi_power(v)), v);
  EXPECT_EQ(ring.valuation(ring.zero()), 5);
  EXPECT_THROW(ring.inverse_unit(ring.pi_power(1)), InvalidInput);
}

TEST(ChainRing, AgreesWithResidueRingWhenUnramified) {
  const ChainRingSpec spec{3, 1, 1, 4};
  const ChainRing general(spec);
  const ResidueRing fast(spec);
  for (std::uint64_t x = 0; x < 81; ++x) {
    for (std::uint64_t y = 0; y < 81; y += 7) {
      const auto gx = general.from_integer(Integer(x));
      const auto gy = general.from_integer(Integer(y));
      EXPECT_EQ(general.mul(gx, gy).c[0], fast.mul(x, y));
      EXPECT_EQ(general.valuation(gx), fast.valuation(x));
    }
  }
}

TEST(Diagonalize, AlreadyDiagonal) {
  const ResidueRing ring({3, 1, 1, 4});
  RingMatrix<ResidueRing> a(2, 2);
  a << ring.pi_power(2), 0, 0, 1;
  const auto form = diagonalize(ring, a);
  EXPECT_EQ(form.diag_valuations, (std::vector<int>{0, 2}));
  EXPECT_EQ(form.free_cols, 0);
  EXPECT_EQ(form.ordq(), 2);
}

TEST(Diagonalize, NoRelations) {
  const ResidueRing ring({3, 1, 1, 4});
  const auto form = diagonalize(ring, RingMatrix<ResidueRing>(0, 3));
  EXPECT_TRUE(form.diag_valuations.empty());
  EXPECT_EQ(form.free_cols, 3);
  EXPECT_EQ(form.row_count, 0);
  EXPECT_EQ(form.col_count, 3);
  EXPECT_TRUE(form.saturated());
}

TEST(CokernelOrdq, SingleEntries) {
  const ResidueRing ring({3, 1, 1, 4});
  RingMatrix<ResidueRing> a(1, 1);
  a << ring.pi_power(1);
  EXPECT_EQ(cokernel_ordq(ring, a), 1);
  for (int alpha = 0; alpha <= 4; ++alpha) {
    a(0, 0) = ring.pi_power(alpha);
    EXPECT_EQ(cokernel_ordq(ring, a), alpha);
  }
  const ResidueRing small({3, 1, 1, 3});
  RingMatrix<ResidueRing> z(1, 1);
  z << 0;
  EXPECT_EQ(cokernel_ordq(small, z), 3);
}

TEST(Diagonalize, RejectsForeignEntries) {
  const ResidueRing ring({2, 1, 1, 2});
  RingMatrix<ResidueRing> a(1, 1);
  a << 7;  // not reduced mod 4
  EXPECT_THROW(diagonalize(ring, a), InvalidInput);
}

template <class Ring>
RingMatrix<Ring> block_diag(const Ring& ring, const RingMatrix<Ring>& a, const RingMatrix<Ring>& b) {
  RingMatrix<Ring> out = zero_matrix(ring, a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

TEST(CokernelOrdq, BlockAdditivityAndUnitInvariance) {
  const ChainRing ring({2, 2, 1, 5});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_matrix(ring, 1 + rng() % 3, 1 + rng() % 3, rng);
    const auto b = random_matrix(ring, rng() % 3, 1 + rng() % 3, rng);
    const auto oa = cokernel_ordq(ring, a);
    const auto ob = cokernel_ordq(ring, b);
    EXPECT_EQ(cokernel_ordq(ring, block_diag(ring, a, b)), oa + ob);

    auto c = a;
    c.row(0).swap(c.row(c.rows() - 1));
    auto unit = random_element(ring, rng);
    if (ring.valuation(unit) != 0) unit = ring.add(unit, ring.one());
    if (ring.valuation(unit) != 0) unit = ring.one();
    for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, 0) = ring.mul(unit, c(i, 0));
    for (Eigen::Index j = 0; j < c.cols(); ++j) c(0, j) = ring.mul(unit, c(0, j));
    EXPECT_EQ(cokernel_ordq(ring, c), oa);
  }
}

TEST(LeftKernel, AnnihilatesAndHasCorrectSize) {
  // |ker| * |image| = |source|, and ord(image) = ord(target) - ord(coker).
  const ChainRing ring({3, 1, 2, 3});
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index rows = 1 + rng() % 4;
    const Eigen::Index cols = 1 + rng() % 4;
    const auto a = random_matrix(ring, rows, cols, rng);
    const auto kernel = left_kernel(ring, a);
    const auto product = multiply(ring, kernel, a);
    for (Eigen::Index i = 0; i < product.rows(); ++i) {
      for (Eigen::Index j = 0; j < product.cols(); ++j) EXPECT_TRUE(ring.is_zero(product(i, j)));
    }
    const std::int64_t image = cols * ring.truncation() - cokernel_ordq(ring, a);
    EXPECT_EQ(row_span_ordq(ring, kernel) + image, rows * ring.truncation());
  }
}

}  // namespace
}  // namespace iwmu
