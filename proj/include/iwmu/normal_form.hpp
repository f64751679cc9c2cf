#pragma once

// Diagonal normal form over O/pi^N.  Every matrix over a chain ring is
// equivalent to diag(u_i pi^{v_i}); the multiset of v_i together with the
// number of unpivoted columns determines the cokernel up to isomorphism.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "iwmu/chain_ring.hpp"
#include "iwmu/errors.hpp"

namespace iwmu {

struct DiagonalForm {
  /// Valuations of the pivots, ascending.  Entries equal to 0 contribute nothing.
  std::vector<int> diag_valuations;
  /// Target coordinates that receive no relation at all.
  Eigen::Index free_cols = 0;
  Eigen::Index row_count = 0;
  Eigen::Index col_count = 0;
  int truncation = 0;

  /// ord_q of the cokernel over O/pi^N.
  std::int64_t ordq() const { return ordq_truncated(truncation); }

  /// ord_q of the cokernel tensored down to O/pi^n (n <= N).
  std::int64_t ordq_truncated(int n) const {
    std::int64_t total = static_cast<std::int64_t>(free_cols) * n;
    for (int v : diag_valuations) total += std::min(v, n);
    return total;
  }

  /// Some coordinate is unconstrained, so the value equals N times its count.
  bool saturated() const noexcept { return free_cols > 0; }
};

namespace detail {

struct EliminationResult {
  std::vector<int> pivot_valuations;  // in pivot order; pivot k sits at (k, k)
};

/// Gaussian elimination with minimal-valuation pivoting (ties broken by
/// (row, col) order).  On exit rows [0, rank) carry the pivots, every row at
/// or beyond rank vanishes, and `row_transform` (when given) has received the
/// same row operations so that transform * original * V = diag for some
/// invertible V.
template <ChainRingType Ring>
EliminationResult eliminate(const Ring& ring, RingMatrix<Ring>& a,
                            RingMatrix<Ring>* row_transform = nullptr) {
  using Element = typename Ring::Element;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  const int n = ring.truncation();
  EliminationResult result;
  std::vector<Eigen::Index> pivot_support;
  pivot_support.reserve(static_cast<std::size_t>(cols));
  std::vector<Eigen::Index> transform_support;

  for (Eigen::Index k = 0; k < std::min(rows, cols); ++k) {
    int best = n;
    Eigen::Index bi = -1;
    Eigen::Index bj = -1;
    for (Eigen::Index i = k; i < rows && best > 0; ++i) {
      const Element* row = a.data() + i * cols;
      for (Eigen::Index j = k; j < cols; ++j) {
        if (ring.is_zero(row[j])) continue;
        const int v = ring.valuation(row[j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    }
    if (bi < 0) break;

    if (bi != k) {
      a.row(bi).swap(a.row(k));
      if (row_transform) row_transform->row(bi).swap(row_transform->row(k));
    }
    if (bj != k) {
      for (Eigen::Index i = k; i < rows; ++i) std::swap(a(i, bj), a(i, k));
    }

    const Element* pivot_row = a.data() + k * cols;
    const Element unit_inverse = ring.inverse_unit(ring.divide_by_pi_power(pivot_row[k], best));
    pivot_support.clear();
    for (Eigen::Index j = k + 1; j < cols; ++j) {
      if (!ring.is_zero(pivot_row[j])) pivot_support.push_back(j);
    }
    if (row_transform) {
      transform_support.clear();
      const Element* t = row_transform->data() + k * row_transform->cols();
      for (Eigen::Index j = 0; j < row_transform->cols(); ++j) {
        if (!ring.is_zero(t[j])) transform_support.push_back(j);
      }
    }

    for (Eigen::Index i = k + 1; i < rows; ++i) {
      Element* row = a.data() + i * cols;
      if (ring.is_zero(row[k])) continue;
      const Element factor = ring.mul(ring.divide_by_pi_power(row[k], best), unit_inverse);
      for (Eigen::Index j : pivot_support) row[j] = ring.mul_sub(row[j], factor, pivot_row[j]);
      row[k] = ring.zero();
      if (row_transform) {
        Element* ti = row_transform->data() + i * row_transform->cols();
        const Element* tk = row_transform->data() + k * row_transform->cols();
        for (Eigen::Index j : transform_support) ti[j] = ring.mul_sub(ti[j], factor, tk[j]);
      }
    }
    result.pivot_valuations.push_back(best);
  }
  return result;
}

template <ChainRingType Ring>
void require_canonical(const Ring& ring, const RingMatrix<Ring>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (!ring.is_canonical(a(i, j))) {
        throw InvalidInput("matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") does not belong to the ring");
      }
    }
  }
}

}  // namespace detail

/// Diagonal form of the cokernel of the relation matrix `a` (rows are relations).
template <ChainRingType Ring>
DiagonalForm diagonalize(const Ring& ring, RingMatrix<Ring> a) {
  detail::require_canonical(ring, a);
  DiagonalForm form;
  form.row_count = a.rows();
  form.col_count = a.cols();
  form.truncation = ring.truncation();
  auto elim = detail::eliminate(ring, a);
  form.free_cols = a.cols() - static_cast<Eigen::Index>(elim.pivot_valuations.size());
  form.diag_valuations = std::move(elim.pivot_valuations);
  std::sort(form.diag_valuations.begin(), form.diag_valuations.end());
  return form;
}

/// ord_q of coker(a) over O/pi^N.
template <ChainRingType Ring>
std::int64_t cokernel_ordq(const Ring& ring, const RingMatrix<Ring>& a) {
  return diagonalize(ring, a).ordq();
}

/// ord_q of the submodule of (O/pi^N)^cols generated by the rows of `gens`.
template <ChainRingType Ring>
std::int64_t row_span_ordq(const Ring& ring, RingMatrix<Ring> gens) {
  const auto elim = detail::eliminate(ring, gens);
  std::int64_t total = 0;
  for (int v : elim.pivot_valuations) total += ring.truncation() - v;
  return total;
}

/// Generators (as rows) of the left kernel {x : x * a = 0}.
template <ChainRingType Ring>
RingMatrix<Ring> left_kernel(const Ring& ring, RingMatrix<Ring> a) {
  const Eigen::Index rows = a.rows();
  RingMatrix<Ring> transform = identity_matrix(ring, rows);
  const auto elim = detail::eliminate(ring, a, &transform);
  const int n = ring.truncation();
  const auto rank = static_cast<Eigen::Index>(elim.pivot_valuations.size());

  std::vector<Eigen::Index> picked;
  std::vector<int> scale;
  for (Eigen::Index k = 0; k < rank; ++k) {
    const int v = elim.pivot_valuations[static_cast<std::size_t>(k)];
    if (v > 0) {
      picked.push_back(k);
      scale.push_back(n - v);
    }
  }
  for (Eigen::Index k = rank; k < rows; ++k) {
    picked.push_back(k);
    scale.push_back(0);
  }
  RingMatrix<Ring> kernel(static_cast<Eigen::Index>(picked.size()), rows);
  for (std::size_t r = 0; r < picked.size(); ++r) {
    const auto factor = ring.pi_power(scale[r]);
    for (Eigen::Index j = 0; j < rows; ++j) {
      kernel(static_cast<Eigen::Index>(r), j) = ring.mul(factor, transform(picked[r], j));
    }
  }
  return kernel;
}

}  // namespace iwmu
