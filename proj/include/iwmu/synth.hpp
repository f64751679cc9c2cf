#pragma once

// Ground-truth modules with known elementary representation, seeded
// presentation obfuscation, an enumeration oracle for cokernel orders and
// synthetic tower data.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "iwmu/compare.hpp"
#include "iwmu/errors.hpp"
#include "iwmu/invariants.hpp"
#include "iwmu/normal_form.hpp"
#include "iwmu/presentation.hpp"

namespace iwmu {

/// Pseudo-null summand Lambda / (pi, g_k - 1), k 0-based.
struct Garnish {
  int generator = 0;

  friend bool operator==(const Garnish&, const Garnish&) = default;
};

struct GroundTruth {
  std::int64_t free_rank = 0;
  std::vector<int> alphas;
  std::vector<Garnish> garnish;
  std::uint64_t seed = 0;
};

/// theta = max alpha, s_i = multiplicity of i, mu = sum alpha.
ElementaryRep expected_rep(const GroundTruth& gt);

struct ObfuscationOptions {
  int moves = 6;
  int split_generators = 1;
  /// Negative control: multiplies one relation by pi (or adds pi e_0), which changes the module.
  bool corrupt = false;
};

struct SynthModule {
  Presentation presentation;
  std::vector<std::string> log;
};

/// Block-diagonal Lambda^a + sum Lambda/pi^alpha + garnish, before obfuscation.
Presentation block_presentation(const GroundTruth& gt, const GroupSpec& group, const RingBase& ring);

SynthModule make_module(const GroundTruth& gt, const GroupSpec& group, const RingBase& ring,
                        const ObfuscationOptions& options = {});

inline SynthModule make_module(const GroundTruth& gt, const GroupSpec& group) {
  return make_module(gt, group, RingBase{group.p, 1, 1});
}

/// Uniform draw in [0, n) by plain reduction, so results do not depend on the
/// standard library's distribution implementations.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline constexpr std::uint64_t kEnumerationBound = std::uint64_t{1} << 24;

/// ord_q of coker(a) by enumerating the row span inside (O/pi^N)^cols.
template <ChainRingType Ring>
std::int64_t brute_force_ordq(const Ring& ring, const RingMatrix<Ring>& a);

template <ChainRingType Ring>
typename Ring::Element random_element(const Ring& ring, std::mt19937_64& rng) {
  std::vector<Integer> coords(static_cast<std::size_t>(ring.rank()));
  for (int k = 0; k < ring.rank(); ++k) {
    coords[static_cast<std::size_t>(k)] = draw(rng, ring.coordinate_modulus(k));
  }
  return ring.from_coordinates(coords);
}

/// Entries biased towards zero and small valuations so that ranks vary.
template <ChainRingType Ring>
RingMatrix<Ring> random_matrix(const Ring& ring, Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  RingMatrix<Ring> a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      switch (draw(rng, 4)) {
        case 0:
          a(i, j) = ring.zero();
          break;
        case 1:
          a(i, j) = ring.mul(ring.pi_power(static_cast<int>(draw(rng, static_cast<std::uint64_t>(ring.truncation())))),
                             random_element(ring, rng));
          break;
        default:
          a(i, j) = random_element(ring, rng);
      }
    }
  }
  return a;
}

struct OracleCase {
  ChainRingSpec spec;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::int64_t brute_force = 0;
  std::int64_t normal_form = 0;
};

/// One random matrix over a small chain ring, counted both ways.
OracleCase run_oracle_case(std::mt19937_64& rng);

/// Exact tower a_{n,m} = mu_n p^{rm} + noise, |noise| <= floor(C p^{(r-1)m}).
/// Without a seed the noise is +floor(C p^{(r-1)m}); with one it is uniform.
TowerSeries synthetic_tower(int p, int r, std::span<const std::int64_t> mu, std::span<const int> levels,
                            const Rational& noise_c, std::optional<std::uint64_t> seed,
                            std::string label = "synthetic");

// ---------------------------------------------------------------------------

template <ChainRingType Ring>
std::int64_t brute_force_ordq(const Ring& ring, const RingMatrix<Ring>& a) {
  const Eigen::Index cols = a.cols();
  const int rank = ring.rank();
  std::vector<std::uint64_t> radix;  // per (column, coordinate)
  std::uint64_t total = 1;
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (int k = 0; k < rank; ++k) {
      radix.push_back(ring.coordinate_modulus(k));
      if (total > kEnumerationBound / radix.back()) {
        throw TooLarge("enumeration space exceeds 2^24 elements");
      }
      total *= radix.back();
    }
  }
  const std::size_t digits = radix.size();
  auto encode = [&](const std::vector<std::uint64_t>& d) {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < digits; ++k) idx = idx * radix[k] + d[k];
    return idx;
  };
  auto decode = [&](std::uint64_t idx, std::vector<std::uint64_t>& d) {
    for (std::size_t k = digits; k-- > 0;) {
      d[k] = idx % radix[k];
      idx /= radix[k];
    }
  };

  // Additive generators x^i pi^j * row.
  std::vector<std::vector<std::uint64_t>> gens;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < rank; ++k) {
      const auto scalar = ring.basis_element(k);
      std::vector<std::uint64_t> g;
      bool nonzero = false;
      for (Eigen::Index j = 0; j < cols; ++j) {
        const auto e = ring.mul(scalar, a(i, j));
        for (auto c : ring.coordinates(e)) {
          g.push_back(c);
          nonzero = nonzero || c != 0;
        }
      }
      if (nonzero) gens.push_back(std::move(g));
    }
  }

  std::vector<bool> seen(total, false);
  std::vector<std::uint64_t> queue{0};
  seen[0] = true;
  std::vector<std::uint64_t> d(digits);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    decode(queue[head], d);
    for (const auto& g : gens) {
      std::vector<std::uint64_t> next(digits);
      for (std::size_t k = 0; k < digits; ++k) next[k] = (d[k] + g[k]) % radix[k];
      const std::uint64_t idx = encode(next);
      if (!seen[idx]) {
        seen[idx] = true;
        queue.push_back(idx);
      }
    }
  }

  // |coker| = total / |span| = q^ord
  std::uint64_t quotient = total / queue.size();
  const auto p = static_cast<std::uint64_t>(ring.spec().p);
  std::int64_t p_power = 0;
  while (quotient > 1) {
    if (quotient % p != 0) throw std::logic_error("cokernel order is not a power of p");
    quotient /= p;
    ++p_power;
  }
  if (p_power % ring.spec().f != 0) throw std::logic_error("cokernel order is not a power of q");
  return p_power / ring.spec().f;
}

}  // namespace iwmu
