#include "iwmu/synth.hpp"

namespace iwmu {

namespace {

class Obfuscator {
 public:
  Obfuscator(Presentation& p, std::uint64_t seed, std::vector<std::string>& log)
      : p_(p), order_(p.ring), rng_(seed), log_(log) {}

  GroupRingPoly random_exponent_monomial(Coefficient c) {
    Exponents e(static_cast<std::size_t>(p_.group.r));
    for (auto& x : e) x = static_cast<std::int64_t>(draw(rng_, 3));
    return GroupRingPoly::monomial(std::move(c), std::move(e));
  }

  GroupRingPoly random_multiplier() {
    const auto c = static_cast<std::int64_t>(draw(rng_, 5)) - 2;
    return random_exponent_monomial(c == 0 ? Coefficient{1} : Coefficient{c});
  }

  GroupRingPoly random_unit() {
    std::int64_t c = 1 + static_cast<std::int64_t>(draw(rng_, 4));
    while (c % p_.group.p == 0) ++c;
    if (draw(rng_, 2) == 1) c = -c;
    return random_exponent_monomial({c});
  }

  void row_add() {
    const auto i = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.rels())));
    auto j = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.rels() - 1)));
    if (j >= i) ++j;
    const auto lambda = random_multiplier();
    for (Eigen::Index k = 0; k < p_.gens(); ++k) {
      p_.matrix(i, k) = add(p_.matrix(i, k), multiply(order_, p_.group, lambda, p_.matrix(j, k)));
    }
    log_.push_back("row " + std::to_string(i) + " += " + to_string(lambda) + " * row " + std::to_string(j));
  }

  void column_add() {
    const auto j = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.gens())));
    auto i = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.gens() - 1)));
    if (i >= j) ++i;
    const auto lambda = random_multiplier();
    for (Eigen::Index k = 0; k < p_.rels(); ++k) {
      p_.matrix(k, j) = add(p_.matrix(k, j), multiply(order_, p_.group, p_.matrix(k, i), lambda));
    }
    log_.push_back("col " + std::to_string(j) + " += col " + std::to_string(i) + " * " + to_string(lambda));
  }

  void row_scale() {
    const auto i = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.rels())));
    const auto u = random_unit();
    for (Eigen::Index k = 0; k < p_.gens(); ++k) {
      p_.matrix(i, k) = multiply(order_, p_.group, u, p_.matrix(i, k));
    }
    log_.push_back("row " + std::to_string(i) + " = " + to_string(u) + " * row " + std::to_string(i));
  }

  void column_scale() {
    const auto j = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.gens())));
    const auto u = random_unit();
    for (Eigen::Index k = 0; k < p_.rels(); ++k) {
      p_.matrix(k, j) = multiply(order_, p_.group, p_.matrix(k, j), u);
    }
    log_.push_back("col " + std::to_string(j) + " = col " + std::to_string(j) + " * " + to_string(u));
  }

  void swap_rows() {
    const auto i = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.rels())));
    const auto j = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.rels())));
    p_.matrix.row(i).swap(p_.matrix.row(j));
    log_.push_back("swap rows " + std::to_string(i) + ", " + std::to_string(j));
  }

  void swap_columns() {
    const auto i = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.gens())));
    const auto j = static_cast<Eigen::Index>(draw(rng_, static_cast<std::uint64_t>(p_.gens())));
    p_.matrix.col(i).swap(p_.matrix.col(j));
    log_.push_back("swap cols " + std::to_string(i) + ", " + std::to_string(j));
  }

  // New generator e' with relation x + u e' = 0, x a random combination of old generators.
  void split_generator() {
    const Eigen::Index rels = p_.rels();
    const Eigen::Index gens = p_.gens();
    PolyMatrix grown(rels + 1, gens + 1);
    grown.topLeftCorner(rels, gens) = p_.matrix;
    for (Eigen::Index k = 0; k < gens; ++k) {
      if (draw(rng_, 2) == 0) grown(rels, k) = random_multiplier();
    }
    const auto u = random_unit();
    grown(rels, gens) = u;
    p_.matrix = std::move(grown);
    log_.push_back("split generator " + std::to_string(gens) + " with unit " + to_string(u));
  }

  void random_move() {
    for (;;) {
      switch (draw(rng_, 6)) {
        case 0:
          if (p_.rels() < 2) continue;
          return row_add();
        case 1:
          if (p_.gens() < 2) continue;
          return column_add();
        case 2:
          if (p_.rels() < 1) continue;
          return row_scale();
        case 3:
          if (p_.gens() < 1) continue;
          return column_scale();
        case 4:
          if (p_.rels() < 2) continue;
          return swap_rows();
        default:
          if (p_.gens() < 2) continue;
          return swap_columns();
      }
    }
  }

  void corrupt() {
    const Coefficient pi = order_.pi_power(1);
    const auto pi_poly = GroupRingPoly::monomial(pi, Exponents(static_cast<std::size_t>(p_.group.r), 0));
    if (p_.rels() > 0) {
      for (Eigen::Index k = 0; k < p_.gens(); ++k) {
        p_.matrix(0, k) = multiply(order_, p_.group, pi_poly, p_.matrix(0, k));
      }
      log_.push_back("corrupt: row 0 = pi * row 0");
      return;
    }
    if (p_.gens() == 0) {
      p_.matrix = PolyMatrix(0, 1);
      log_.push_back("corrupt: add free generator");
      return;
    }
    PolyMatrix grown(1, p_.gens());
    grown(0, 0) = pi_poly;
    p_.matrix = std::move(grown);
    log_.push_back("corrupt: add relation pi * e_0");
  }

 private:
  Presentation& p_;
  IntegralOrder order_;
  std::mt19937_64 rng_;
  std::vector<std::string>& log_;
};

}  // namespace

ElementaryRep expected_rep(const GroundTruth& gt) {
  return elementary_from_exponents(gt.free_rank, gt.alphas);
}

Presentation block_presentation(const GroundTruth& gt, const GroupSpec& group, const RingBase& ring) {
  if (gt.free_rank < 0) throw InvalidInput("free rank must be >= 0");
  for (const Garnish& g : gt.garnish) {
    if (group.r < 2) throw InvalidGarnish("Lambda/(pi, g - 1) is pseudo-null only when r >= 2");
    if (g.generator < 0 || g.generator >= group.r) {
      throw InvalidGarnish("garnish generator index " + std::to_string(g.generator) + " out of range");
    }
  }
  const IntegralOrder order(ring);
  Presentation out = Presentation::free_module(group, ring, gt.free_rank);
  for (int a : gt.alphas) {
    if (a < 1) throw InvalidInput("pi-exponents must be >= 1");
    out = direct_sum(out, Presentation::cyclic_pi(group, ring, a));
  }
  for (const Garnish& g : gt.garnish) {
    Presentation line{group, ring, PolyMatrix(2, 1), 1};
    line.matrix(0, 0) = GroupRingPoly::monomial(order.pi_power(1), Exponents(static_cast<std::size_t>(group.r), 0));
    line.matrix(1, 0) = GroupRingPoly::generator_minus_one(group.r, g.generator);
    out = direct_sum(out, line);
  }
  out.validate();
  return out;
}

SynthModule make_module(const GroundTruth& gt, const GroupSpec& group, const RingBase& ring,
                        const ObfuscationOptions& options) {
  SynthModule out{block_presentation(gt, group, ring), {}};
  Obfuscator ob(out.presentation, gt.seed, out.log);
  if (options.corrupt) {
    ob.corrupt();
    out.presentation.pi_exponent.reset();
  }
  for (int s = 0; s < options.split_generators; ++s) ob.split_generator();
  for (int k = 0; k < options.moves; ++k) ob.random_move();
  return out;
}

OracleCase run_oracle_case(std::mt19937_64& rng) {
  static const ChainRingSpec kRings[] = {{2, 1, 1, 2}, {2, 1, 1, 3}, {3, 1, 1, 2}, {5, 1, 1, 2},
                                         {2, 2, 1, 3}, {3, 2, 1, 2}, {2, 1, 2, 2}, {2, 3, 1, 4}};
  OracleCase out;
  out.spec = kRings[draw(rng, std::size(kRings))];
  out.rows = 1 + static_cast<Eigen::Index>(draw(rng, 3));
  out.cols = 1 + static_cast<Eigen::Index>(draw(rng, 3));
  visit_ring(out.spec, [&](const auto& ring) {
    const auto a = random_matrix(ring, out.rows, out.cols, rng);
    out.brute_force = brute_force_ordq(ring, a);
    out.normal_form = cokernel_ordq(ring, a);
  });
  return out;
}

TowerSeries synthetic_tower(int p, int r, std::span<const std::int64_t> mu, std::span<const int> levels,
                            const Rational& noise_c, std::optional<std::uint64_t> seed, std::string label) {
  TowerSeries out;
  out.p = p;
  out.r = r;
  out.label = std::move(label);
  std::mt19937_64 rng(seed.value_or(0));
  for (std::size_t k = 0; k < mu.size(); ++k) {
    for (int m : levels) {
      const Integer base = mu[k] * pow(Integer(p), static_cast<unsigned>(r * m));
      const Rational bound = noise_c * Rational(pow(Integer(p), static_cast<unsigned>((r - 1) * m)));
      const Integer amplitude = numerator(bound) / denominator(bound);
      Integer noise = amplitude;
      if (seed) {
        const auto width = static_cast<std::uint64_t>(2 * amplitude + 1);
        noise = Integer(draw(rng, width)) - amplitude;
      }
      Integer value = base + noise;
      if (value < 0) value = 0;
      out.data[{static_cast<int>(k) + 1, m}] = static_cast<std::int64_t>(value);
    }
  }
  return out;
}

}  // namespace iwmu
