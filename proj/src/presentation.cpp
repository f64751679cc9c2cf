#include "iwmu/presentation.hpp"

#include <algorithm>
#include <string>

#include "iwmu/errors.hpp"

namespace iwmu {

void Presentation::validate() const {
  group.validate();
  ring.truncated(1).validate();
  if (ring.p != group.p) {
    throw InvalidInput("ring prime " + std::to_string(ring.p) + " differs from group prime " +
                       std::to_string(group.p));
  }
  const auto rank = static_cast<std::size_t>(ring.rank());
  for (Eigen::Index i = 0; i < rels(); ++i) {
    for (Eigen::Index j = 0; j < gens(); ++j) {
      for (const Term& t : matrix(i, j).terms()) {
        if (t.exponents.size() != static_cast<std::size_t>(group.r)) {
          throw InvalidInput("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") has an exponent tuple of length " +
                             std::to_string(t.exponents.size()) + ", expected " +
                             std::to_string(group.r));
        }
        if (t.coeff.size() > rank) {
          throw InvalidInput("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") has a coefficient vector longer than e*f");
        }
      }
    }
  }
}

Presentation Presentation::free_module(const GroupSpec& group, const RingBase& ring,
                                       Eigen::Index gens) {
  Presentation p{group, ring, PolyMatrix(0, gens), std::nullopt};
  p.validate();
  return p;
}

Presentation Presentation::cyclic_pi(const GroupSpec& group, const RingBase& ring, int alpha) {
  const IntegralOrder order(ring);
  Presentation p{group, ring, PolyMatrix(1, 1), alpha};
  p.matrix(0, 0) = GroupRingPoly::monomial(order.pi_power(alpha),
                                           Exponents(static_cast<std::size_t>(group.r), 0));
  p.validate();
  return p;
}

Presentation quotient_pi(const Presentation& p, int n) {
  if (n < 1) throw InvalidInput("pi-power quotient needs n >= 1");
  const IntegralOrder order(p.ring);
  const Eigen::Index b = p.gens();
  Presentation out{p.group, p.ring, PolyMatrix(p.rels() + b, b), n};
  if (p.pi_exponent) out.pi_exponent = std::min(*p.pi_exponent, n);
  out.matrix.topRows(p.rels()) = p.matrix;
  const auto pi_n = GroupRingPoly::monomial(order.pi_power(n),
                                            Exponents(static_cast<std::size_t>(p.group.r), 0));
  for (Eigen::Index j = 0; j < b; ++j) out.matrix(p.rels() + j, j) = pi_n;
  return out;
}

Presentation direct_sum(const Presentation& a, const Presentation& b) {
  if (!(a.group == b.group) || !(a.ring == b.ring)) {
    throw InvalidInput("direct sum of presentations over different rings");
  }
  Presentation out{a.group, a.ring, PolyMatrix(a.rels() + b.rels(), a.gens() + b.gens()),
                   std::nullopt};
  out.matrix.topLeftCorner(a.rels(), a.gens()) = a.matrix;
  out.matrix.bottomRightCorner(b.rels(), b.gens()) = b.matrix;
  if (a.pi_exponent && b.pi_exponent) {
    out.pi_exponent = std::max(*a.pi_exponent, *b.pi_exponent);
  } else if (a.gens() == 0) {
    out.pi_exponent = b.pi_exponent;
  } else if (b.gens() == 0) {
    out.pi_exponent = a.pi_exponent;
  }
  return out;
}

}  // namespace iwmu
