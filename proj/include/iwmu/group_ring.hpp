#pragma once

// Elements of the Iwasawa algebra O[[G]] represented by finite polynomial
// truncations sum c * g^e with exact O-coefficients, their images in the
// finite group rings (O/pi^N)[G/G_m], and the regular representation that
// turns group-ring linear algebra into chain-ring linear algebra.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "iwmu/chain_ring.hpp"
#include "iwmu/group.hpp"
#include "iwmu/integer.hpp"

namespace iwmu {

/// (p, e, f) of the coefficient ring O, without a truncation.
struct RingBase {
  int p = 2;
  int e = 1;
  int f = 1;

  int rank() const noexcept { return e * f; }
  ChainRingSpec truncated(int n) const { return {p, e, f, n}; }

  friend bool operator==(const RingBase&, const RingBase&) = default;
};

/// Coordinates of an element of O in the basis x^i pi^j (index j*f + i).
/// Canonical form has no trailing zeros, so integers are one-entry vectors.
using Coefficient = std::vector<Integer>;

/// Exact arithmetic in O = W[pi]/(pi^e - p) with W = Z[x]/(h).
class IntegralOrder {
 public:
  explicit IntegralOrder(const RingBase& base);

  const RingBase& base() const noexcept { return base_; }

  Coefficient from_integer(const Integer& value) const;
  /// pi^n = p^(n div e) pi^(n mod e)
  Coefficient pi_power(int n) const;
  Coefficient add(const Coefficient& a, const Coefficient& b) const;
  Coefficient neg(const Coefficient& a) const;
  Coefficient mul(const Coefficient& a, const Coefficient& b) const;

 private:
  RingBase base_;
  std::vector<Integer> h_low_;  // x^f = -sum h_low_[i] x^i
};

void trim_coefficient(Coefficient& c);
bool is_zero_coefficient(const Coefficient& c);

struct Term {
  Coefficient coeff;
  Exponents exponents;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Finite sum of terms c * g^e; kept sorted by exponent tuple with distinct
/// tuples and nonzero coefficients.
class GroupRingPoly {
 public:
  GroupRingPoly() = default;
  explicit GroupRingPoly(std::vector<Term> terms);

  static GroupRingPoly monomial(Coefficient coeff, Exponents exponents);
  static GroupRingPoly constant(const Integer& value, int dimension);
  /// g_k^power - 1 (k is 0-based).
  static GroupRingPoly generator_minus_one(int dimension, int k, std::int64_t power = 1);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  friend bool operator==(const GroupRingPoly&, const GroupRingPoly&) = default;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

/// Human-readable form such as "(1)g^(0,0) + (-2,1)g^(1,0)".
std::string to_string(const GroupRingPoly& x);
std::ostream& operator<<(std::ostream& os, const GroupRingPoly& x);

GroupRingPoly add(const GroupRingPoly& x, const GroupRingPoly& y);
GroupRingPoly negate(const IntegralOrder& order, const GroupRingPoly& x);
GroupRingPoly multiply(const IntegralOrder& order, const GroupSpec& group, const GroupRingPoly& x,
                       const GroupRingPoly& y);
GroupRingPoly scale(const IntegralOrder& order, const Coefficient& c, const GroupRingPoly& x);

/// Image of x in (O/pi^N)[G/G_m], indexed by the enumeration of G/G_m.
template <ChainRingType Ring>
std::vector<typename Ring::Element> reduce_poly(const Ring& ring, const GroupLevel& level,
                                                const GroupRingPoly& x) {
  std::vector<typename Ring::Element> out(static_cast<std::size_t>(level.order()), ring.zero());
  for (const Term& term : x.terms()) {
    const auto idx = static_cast<std::size_t>(level.index_of(term.exponents));
    out[idx] = ring.add(out[idx], ring.from_coordinates(term.coeff));
  }
  return out;
}

/// Matrix of right multiplication by x on (O/pi^N)[G/G_m] in the group basis:
/// row g holds the coordinates of g * x.
template <ChainRingType Ring>
RingMatrix<Ring> regular_rep(const Ring& ring, const GroupLevel& level,
                             std::span<const typename Ring::Element> x) {
  const Eigen::Index n = level.order();
  RingMatrix<Ring> out = zero_matrix(ring, n, n);
  for (Eigen::Index h = 0; h < n; ++h) {
    if (ring.is_zero(x[static_cast<std::size_t>(h)])) continue;
    for (Eigen::Index g = 0; g < n; ++g) {
      const Eigen::Index gh = level.multiply(g, h);
      out(g, gh) = ring.add(out(g, gh), x[static_cast<std::size_t>(h)]);
    }
  }
  return out;
}

/// Group-ring product at a finite level (used to test regular_rep).
template <ChainRingType Ring>
std::vector<typename Ring::Element> multiply_at_level(const Ring& ring, const GroupLevel& level,
                                                      std::span<const typename Ring::Element> x,
                                                      std::span<const typename Ring::Element> y) {
  std::vector<typename Ring::Element> out(x.size(), ring.zero());
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (ring.is_zero(x[g])) continue;
    for (std::size_t h = 0; h < y.size(); ++h) {
      const auto gh = static_cast<std::size_t>(
          level.multiply(static_cast<std::int64_t>(g), static_cast<std::int64_t>(h)));
      out[gh] = ring.add(out[gh], ring.mul(x[g], y[h]));
    }
  }
  return out;
}

}  // namespace iwmu

namespace Eigen {
template <>
struct NumTraits<iwmu::GroupRingPoly> : GenericNumTraits<iwmu::GroupRingPoly> {
  using Real = iwmu::GroupRingPoly;
  using NonInteger = iwmu::GroupRingPoly;
  using Literal = iwmu::GroupRingPoly;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
};
}  // namespace Eigen
