#pragma once

// Finitely presented left modules M = coker(Lambda^a -> Lambda^b) over
// Lambda = O[[G]], rows acting as relations, and their expansion at a finite
// level into a relation matrix over O/pi^N.

#include <optional>

#include <Eigen/Core>

#include "iwmu/chain_ring.hpp"
#include "iwmu/group.hpp"
#include "iwmu/group_ring.hpp"

namespace iwmu {

using PolyMatrix = Eigen::Matrix<GroupRingPoly, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Presentation {
  GroupSpec group;
  RingBase ring;
  PolyMatrix matrix;  // rels x gens
  /// Set when the module is known to be killed by pi^n (an explicit pi-power quotient).
  std::optional<int> pi_exponent;

  Eigen::Index gens() const noexcept { return matrix.cols(); }
  Eigen::Index rels() const noexcept { return matrix.rows(); }

  /// Checks ring/group compatibility, exponent tuple lengths, coefficient lengths.
  void validate() const;

  static Presentation free_module(const GroupSpec& group, const RingBase& ring, Eigen::Index gens);
  /// Lambda / pi^alpha.
  static Presentation cyclic_pi(const GroupSpec& group, const RingBase& ring, int alpha);
};

/// Presentation of M / pi^n: appends pi^n e_j for every generator.
Presentation quotient_pi(const Presentation& p, int n);

/// Presentation of the direct sum (block-diagonal relation matrix).
Presentation direct_sum(const Presentation& a, const Presentation& b);

/// (O/pi^N)[G/G_m] (x) M as a relation matrix over O/pi^N of shape
/// (rels * |G/G_m|) x (gens * |G/G_m|).  Row (i, g) holds g * r_i.
template <ChainRingType Ring>
RingMatrix<Ring> expand_at_level(const Ring& ring, const GroupLevel& level, const Presentation& p) {
  const Eigen::Index n = level.order();
  RingMatrix<Ring> out = zero_matrix(ring, p.rels() * n, p.gens() * n);
  for (Eigen::Index i = 0; i < p.rels(); ++i) {
    for (Eigen::Index j = 0; j < p.gens(); ++j) {
      const GroupRingPoly& entry = p.matrix(i, j);
      if (entry.is_zero()) continue;
      const auto x = reduce_poly(ring, level, entry);
      out.block(i * n, j * n, n, n) =
          regular_rep(ring, level, std::span<const typename Ring::Element>(x));
    }
  }
  return out;
}

}  // namespace iwmu
