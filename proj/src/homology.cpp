#include "iwmu/homology.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "iwmu/errors.hpp"

namespace iwmu {

DiagonalForm coinvariants_form(const Presentation& p, int m, int truncation) {
  p.validate();
  const GroupLevel level(p.group, m);
  return visit_ring(p.ring.truncated(truncation), [&](const auto& ring) {
    return diagonalize(ring, expand_at_level(ring, level, p));
  });
}

CoinvariantOrder coinvariants_ordq(const Presentation& p, int m, int truncation) {
  const DiagonalForm form = coinvariants_form(p, m, truncation);
  CoinvariantOrder out;
  out.ordq = form.ordq();
  out.saturated = form.saturated();
  if (out.saturated && !(p.pi_exponent && *p.pi_exponent <= truncation)) {
    out.warning = std::to_string(form.free_cols) +
                  " coordinate(s) saturate at N = " + std::to_string(truncation) +
                  "; the module may not be killed by pi^N, so the order can be truncated";
  }
  return out;
}

std::vector<LevelOrders> level_orders(const Presentation& p, int n_max, std::span<const int> levels) {
  if (n_max < 1) throw InvalidInput("n_max must be >= 1");
  if (levels.empty()) throw InvalidInput("level range is empty");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] < 0 || (k > 0 && levels[k] <= levels[k - 1])) {
      throw InvalidInput("levels must be non-negative and strictly ascending");
    }
  }
  std::vector<LevelOrders> out(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    out[static_cast<std::size_t>(n - 1)].n = n;
    out[static_cast<std::size_t>(n - 1)].truncation = n_max;
  }
  for (int m : levels) {
    const DiagonalForm form = coinvariants_form(p, m, n_max);
    for (int n = 1; n <= n_max; ++n) {
      out[static_cast<std::size_t>(n - 1)].orders[m] = form.ordq_truncated(n);
    }
  }
  return out;
}

namespace {

// Monomials T^e in r variables of total degree < k, ordered by degree and then
// lexicographically, so lower truncations are prefixes of higher ones.
class MonomialBasis {
 public:
  MonomialBasis(int r, int k) : r_(r), k_(k) {
    std::vector<int> e(static_cast<std::size_t>(r), 0);
    for (int d = 0; d < k; ++d) enumerate(e, 0, d);
    const auto n = mons_.size();
    table_.assign(n * n, -1);
    std::vector<int> sum(static_cast<std::size_t>(r));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (int j = 0; j < r; ++j) {
          sum[static_cast<std::size_t>(j)] =
              mons_[a][static_cast<std::size_t>(j)] + mons_[b][static_cast<std::size_t>(j)];
        }
        table_[a * n + b] = index(sum);
      }
    }
  }

  int size() const noexcept { return static_cast<int>(mons_.size()); }
  int product(int a, int b) const noexcept {
    return table_[static_cast<std::size_t>(a) * mons_.size() + static_cast<std::size_t>(b)];
  }
  int index(const std::vector<int>& e) const {
    const auto it = index_.find(e);
    return it == index_.end() ? -1 : it->second;
  }
  /// Index of T_j^s, or -1 once s >= k.
  int power(int j, int s) const {
    std::vector<int> e(static_cast<std::size_t>(r_), 0);
    e[static_cast<std::size_t>(j)] = s;
    return index(e);
  }
  int truncation() const noexcept { return k_; }

 private:
  void enumerate(std::vector<int>& e, int j, int remaining) {
    if (j == r_ - 1) {
      e[static_cast<std::size_t>(j)] = remaining;
      index_.emplace(e, static_cast<int>(mons_.size()));
      mons_.push_back(e);
      return;
    }
    for (int s = remaining; s >= 0; --s) {
      e[static_cast<std::size_t>(j)] = s;
      enumerate(e, j + 1, remaining - s);
    }
  }

  int r_;
  int k_;
  std::vector<std::vector<int>> mons_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> table_;
};

std::vector<unsigned> subsets_of_size(int r, int size) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (std::popcount(mask) == size) out.push_back(mask);
  }
  return out;
}

template <ChainRingType Ring>
RingMatrix<Ring> vstack(const Ring& ring, const RingMatrix<Ring>& a, const RingMatrix<Ring>& b,
                        Eigen::Index cols) {
  RingMatrix<Ring> out = zero_matrix(ring, a.rows() + b.rows(), cols);
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  if (b.rows() > 0) out.bottomRows(b.rows()) = b;
  return out;
}

// Koszul complex of (t_1, .., t_r), t_j = (1+T_j)^{p^m} - 1, on the truncations
// M_k = M / T^k M over A[T]/(T)^k, with A = O/pi^N and g_j = 1 + T_j.
// H_i(G_m, M) is recovered as the stable image of H_i(M_k') in H_i(M_k).
template <ChainRingType Ring>
class KoszulTower {
 public:
  using Element = typename Ring::Element;
  using Matrix = RingMatrix<Ring>;

  KoszulTower(const Ring& ring, const Presentation& p, int m, int degree)
      : ring_(ring), p_(p), degree_(degree), r_(p.group.r) {
    step_ = static_cast<int>(GroupLevel(p.group, m).exponent_modulus());
    here_ = subsets_of_size(r_, degree);
    below_ = subsets_of_size(r_, degree - 1);
    if (degree < r_) above_ = subsets_of_size(r_, degree + 1);
  }

  int step() const noexcept { return step_; }

  /// ord_q of the image of H_i(M_{k2}) in H_i(M_k).
  std::int64_t image_ordq(int k, int k2) {
    const Matrix& z = cycles(k2);
    const Matrix& b = boundaries(k);
    const int nm = basis(k).size();
    const int nm2 = basis(k2).size();
    const Eigen::Index blocks = static_cast<Eigen::Index>(here_.size()) * p_.gens();
    Matrix projected(z.rows(), blocks * nm);
    for (Eigen::Index row = 0; row < z.rows(); ++row) {
      for (Eigen::Index s = 0; s < blocks; ++s) {
        projected.row(row).segment(s * nm, nm) = z.row(row).segment(s * nm2, nm);
      }
    }
    return row_span_ordq(ring_, vstack(ring_, projected, b, blocks * nm)) - boundary_ordq(k);
  }

 private:
  const MonomialBasis& basis(int k) {
    auto it = bases_.find(k);
    if (it == bases_.end()) it = bases_.emplace(k, MonomialBasis(r_, k)).first;
    return it->second;
  }

  std::vector<Element> poly_of(const GroupRingPoly& x, const MonomialBasis& mb) {
    const int nm = mb.size();
    std::vector<Element> out(static_cast<std::size_t>(nm), ring_.zero());
    for (const Term& term : x.terms()) {
      std::vector<Element> acc(static_cast<std::size_t>(nm), ring_.zero());
      acc[0] = ring_.from_coordinates(term.coeff);
      for (int j = 0; j < r_; ++j) {
        const std::int64_t e = term.exponents[static_cast<std::size_t>(j)];
        if (e == 0) continue;
        std::vector<Element> next(static_cast<std::size_t>(nm), ring_.zero());
        for (int s = 0; s <= e; ++s) {
          const int ts = mb.power(j, s);
          if (ts < 0) break;
          const Element c = ring_.from_integer(binomial(e, s));
          if (ring_.is_zero(c)) continue;
          for (int mu = 0; mu < nm; ++mu) {
            if (ring_.is_zero(acc[static_cast<std::size_t>(mu)])) continue;
            const int target = mb.product(mu, ts);
            if (target < 0) continue;
            next[static_cast<std::size_t>(target)] = ring_.add(
                next[static_cast<std::size_t>(target)], ring_.mul(c, acc[static_cast<std::size_t>(mu)]));
          }
        }
        acc = std::move(next);
      }
      for (int mu = 0; mu < nm; ++mu) {
        out[static_cast<std::size_t>(mu)] =
            ring_.add(out[static_cast<std::size_t>(mu)], acc[static_cast<std::size_t>(mu)]);
      }
    }
    return out;
  }

  // Row mu holds T^mu * x.
  Matrix multiplication(const std::vector<Element>& x, const MonomialBasis& mb) {
    const int nm = mb.size();
    Matrix out = zero_matrix(ring_, nm, nm);
    for (int nu = 0; nu < nm; ++nu) {
      if (ring_.is_zero(x[static_cast<std::size_t>(nu)])) continue;
      for (int mu = 0; mu < nm; ++mu) {
        const int target = mb.product(mu, nu);
        if (target >= 0) out(mu, target) = ring_.add(out(mu, target), x[static_cast<std::size_t>(nu)]);
      }
    }
    return out;
  }

  struct Level {
    Matrix relations;                 // generators of T-truncated W inside A[T]_k^b
    std::vector<Matrix> t;            // multiplication by t_j
  };

  const Level& level(int k) {
    auto it = levels_.find(k);
    if (it != levels_.end()) return it->second;
    const MonomialBasis& mb = basis(k);
    const int nm = mb.size();
    Level lv;
    lv.relations = zero_matrix(ring_, p_.rels() * nm, p_.gens() * nm);
    for (Eigen::Index i = 0; i < p_.rels(); ++i) {
      for (Eigen::Index j = 0; j < p_.gens(); ++j) {
        if (p_.matrix(i, j).is_zero()) continue;
        lv.relations.block(i * nm, j * nm, nm, nm) = multiplication(poly_of(p_.matrix(i, j), mb), mb);
      }
    }
    for (int j = 0; j < r_; ++j) {
      const auto tj = GroupRingPoly::generator_minus_one(r_, j, step_);
      lv.t.push_back(multiplication(poly_of(tj, mb), mb));
    }
    return levels_.emplace(k, std::move(lv)).first->second;
  }

  // Koszul differential K_d -> K_{d-1} on free modules, as a right-acting matrix.
  Matrix differential(int k, const std::vector<unsigned>& from, const std::vector<unsigned>& to) {
    const Level& lv = level(k);
    const Eigen::Index nm = basis(k).size();
    const Eigen::Index b = p_.gens();
    Matrix out = zero_matrix(ring_, static_cast<Eigen::Index>(from.size()) * b * nm,
                             static_cast<Eigen::Index>(to.size()) * b * nm);
    for (std::size_t si = 0; si < from.size(); ++si) {
      int position = 0;
      for (int s = 0; s < r_; ++s) {
        if (!(from[si] & (1u << s))) continue;
        const unsigned face = from[si] & ~(1u << s);
        const auto ti = static_cast<std::size_t>(std::find(to.begin(), to.end(), face) - to.begin());
        Matrix block = lv.t[static_cast<std::size_t>(s)];
        if (position % 2 == 1) {
          block = block.unaryExpr([this](const Element& x) { return ring_.neg(x); });
        }
        for (Eigen::Index g = 0; g < b; ++g) {
          out.block((static_cast<Eigen::Index>(si) * b + g) * nm,
                    (static_cast<Eigen::Index>(ti) * b + g) * nm, nm, nm) = block;
        }
        ++position;
      }
    }
    return out;
  }

  // Relations of K_d(M_k): one copy of the relation generators per subset.
  Matrix relation_blocks(int k, std::size_t copies) {
    const Matrix& w = level(k).relations;
    Matrix out = zero_matrix(ring_, static_cast<Eigen::Index>(copies) * w.rows(),
                             static_cast<Eigen::Index>(copies) * w.cols());
    for (std::size_t c = 0; c < copies; ++c) {
      out.block(static_cast<Eigen::Index>(c) * w.rows(), static_cast<Eigen::Index>(c) * w.cols(),
                w.rows(), w.cols()) = w;
    }
    return out;
  }

  const Matrix& cycles(int k) {
    auto it = cycles_.find(k);
    if (it != cycles_.end()) return it->second;
    const Matrix d = differential(k, here_, below_);
    const Matrix w = relation_blocks(k, below_.size());
    const Matrix kernel = left_kernel(ring_, vstack(ring_, d, w, d.cols()));
    Matrix z = kernel.leftCols(d.rows());
    return cycles_.emplace(k, std::move(z)).first->second;
  }

  const Matrix& boundaries(int k) {
    auto it = boundaries_.find(k);
    if (it != boundaries_.end()) return it->second;
    const Matrix w = relation_blocks(k, here_.size());
    Matrix b = above_.empty() ? w : vstack(ring_, differential(k, above_, here_), w, w.cols());
    return boundaries_.emplace(k, std::move(b)).first->second;
  }

  std::int64_t boundary_ordq(int k) {
    auto it = boundary_ordq_.find(k);
    if (it == boundary_ordq_.end()) it = boundary_ordq_.emplace(k, row_span_ordq(ring_, boundaries(k))).first;
    return it->second;
  }

  const Ring& ring_;
  const Presentation& p_;
  int degree_;
  int r_;
  int step_ = 1;
  std::vector<unsigned> here_, below_, above_;
  std::map<int, MonomialBasis> bases_;
  std::map<int, Level> levels_;
  std::map<int, Matrix> cycles_;
  std::map<int, Matrix> boundaries_;
  std::map<int, std::int64_t> boundary_ordq_;
};

template <ChainRingType Ring>
std::int64_t koszul_positive_degree(const Ring& ring, const Presentation& p, int m, int degree,
                                    const KoszulOptions& options) {
  KoszulTower<Ring> tower(ring, p, m, degree);
  const int step = tower.step();
  const int budget = ring.truncation() * step + options.max_extra_degree;
  auto give_up = [&] {
    return NotConverged("Koszul homology did not stabilize within " + std::to_string(budget) +
                        " truncation degrees");
  };
  auto stable_image = [&](int k) {
    int k2 = k + step;
    std::int64_t previous = tower.image_ordq(k, k2);
    for (;;) {
      if (++k2 > k + budget) throw give_up();
      const std::int64_t current = tower.image_ordq(k, k2);
      if (current == previous) return current;
      previous = current;
    }
  };
  int k = step + 1;
  std::int64_t previous = stable_image(k);
  for (;;) {
    if (++k > step + 1 + budget) throw give_up();
    const std::int64_t current = stable_image(k);
    if (current == previous) return current;
    previous = current;
  }
}

}  // namespace

std::int64_t koszul_homology_ordq(const Presentation& p, int m, int degree, int truncation,
                                  const KoszulOptions& options) {
  p.validate();
  if (degree < 0 || degree > p.group.r) {
    throw InvalidInput("homology degree must lie in [0, " + std::to_string(p.group.r) + "]");
  }
  if (degree == 0) return coinvariants_ordq(p, m, truncation).ordq;
  if (!p.group.is_abelian()) {
    throw NonAbelianUnsupported("homology in degree >= 1 needs the abelian preset");
  }
  return visit_ring(p.ring.truncated(truncation), [&](const auto& ring) {
    return koszul_positive_degree(ring, p, m, degree, options);
  });
}

std::int64_t homology_euler_characteristic(const Presentation& p, int m, int truncation,
                                           const KoszulOptions& options) {
  std::int64_t total = 0;
  for (int i = 0; i <= p.group.r; ++i) {
    const std::int64_t h = koszul_homology_ordq(p, m, i, truncation, options);
    total += i % 2 == 0 ? h : -h;
  }
  return total;
}

}  // namespace iwmu
