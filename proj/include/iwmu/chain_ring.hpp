#pragma once

// Finite chain rings O/pi^N, where O is the ring of integers of a finite
// extension of Q_p with ramification index e and residue degree f.
//
// O is realized as W[pi]/(pi^e - p) over the unramified ring W = Z_p[x]/(h),
// h a monic lift of an irreducible polynomial of degree f over F_p.  An
// element of O/pi^N is stored by its coordinates in the basis x^i pi^j
// (index j*f + i); the coordinate at pi-index j is reduced modulo
// p^ceil((N - j)/e), which makes the representation canonical.

#include <array>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "iwmu/integer.hpp"

namespace iwmu {

/// Largest supported e*f.
inline constexpr int kMaxRank = 8;

struct ChainRingSpec {
  int p = 2;
  int e = 1;
  int f = 1;
  int N = 1;

  /// Throws InvalidInput / TooLarge when the ring is not supported.
  void validate() const;
  /// Order of the residue field.
  std::uint64_t q() const;

  friend bool operator==(const ChainRingSpec&, const ChainRingSpec&) = default;
};

/// Reduction modulo a fixed m < 2^31 using a precomputed reciprocal.
class Modulus {
 public:
  Modulus() = default;
  explicit Modulus(std::uint64_t m);

  std::uint64_t value() const noexcept { return m_; }

  std::uint64_t reduce(std::uint64_t x) const noexcept {
    const auto quotient =
        static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * reciprocal_) >> 64);
    std::uint64_t r = x - quotient * m_;
    while (r >= m_) r -= m_;
    return r;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    const std::uint64_t s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + m_ - b;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return reduce(a * b); }

 private:
  std::uint64_t m_ = 1;
  std::uint64_t reciprocal_ = 0;
};

/// Monic polynomial of degree f over F_p used to build the unramified part:
/// the Conway polynomial when tabulated, otherwise the least monic
/// irreducible polynomial in base-p counting order.  Coefficients low to high.
std::vector<std::uint64_t> residue_field_modulus(int p, int f);

/// True when the monic polynomial (coefficients low to high, mod p) is irreducible over F_p.
bool is_irreducible_mod_p(const std::vector<std::uint64_t>& poly, std::uint64_t p);

struct ChainRingElem {
  std::array<std::uint64_t, kMaxRank> c{};

  friend bool operator==(const ChainRingElem&, const ChainRingElem&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ChainRingElem& a) {
    os << '(';
    for (std::size_t k = 0; k < a.c.size(); ++k) os << (k ? "," : "") << a.c[k];
    return os << ')';
  }
};

/// General O/pi^N for any admissible (p, e, f, N).
class ChainRing {
 public:
  using Element = ChainRingElem;

  explicit ChainRing(const ChainRingSpec& spec);

  const ChainRingSpec& spec() const noexcept { return spec_; }
  int truncation() const noexcept { return spec_.N; }
  int rank() const noexcept { return rank_; }

  Element zero() const noexcept { return {}; }
  Element one() const;
  Element pi_power(int v) const;
  /// The basis element x^i pi^j for k = j*f + i.
  Element basis_element(int k) const;
  Element from_integer(const Integer& value) const;
  Element from_coordinates(std::span<const Integer> coords) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  /// a - f*b
  Element mul_sub(const Element& a, const Element& f, const Element& b) const {
    return sub(a, mul(f, b));
  }

  bool is_zero(const Element& a) const noexcept { return a == Element{}; }
  /// pi-adic valuation; N for zero.
  int valuation(const Element& a) const;
  /// Some c with a = pi^v * c; requires valuation(a) >= v.
  Element divide_by_pi_power(const Element& a, int v) const;
  /// Inverse of an element of valuation 0.
  Element inverse_unit(const Element& a) const;

  bool is_canonical(const Element& a) const;
  std::uint64_t coordinate_modulus(int k) const { return coord_mod_[k].value(); }
  std::span<const std::uint64_t> coordinates(const Element& a) const {
    return {a.c.data(), static_cast<std::size_t>(rank_)};
  }

 private:
  void canonicalize(Element& a) const;
  void galois_mul_add(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t scale,
                      std::uint64_t* out) const;

  ChainRingSpec spec_;
  int rank_ = 1;
  Modulus big_;                        // p^ceil(N/e)
  std::vector<Modulus> coord_mod_;     // per coordinate
  std::vector<std::uint64_t> h_low_;   // x^f = -sum h_low_[i] x^i
};

/// O/pi^N = Z/p^N (e = f = 1) with machine-word elements.
class ResidueRing {
 public:
  using Element = std::uint64_t;

  explicit ResidueRing(const ChainRingSpec& spec);

  const ChainRingSpec& spec() const noexcept { return spec_; }
  int truncation() const noexcept { return spec_.N; }
  int rank() const noexcept { return 1; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return mod_.value() == 1 ? 0 : 1; }
  Element pi_power(int v) const;
  Element basis_element(int) const noexcept { return one(); }
  Element from_integer(const Integer& value) const { return mod_u64(value, mod_.value()); }
  Element from_coordinates(std::span<const Integer> coords) const {
    return coords.empty() ? 0 : from_integer(coords[0]);
  }

  Element add(Element a, Element b) const noexcept { return mod_.add(a, b); }
  Element sub(Element a, Element b) const noexcept { return mod_.sub(a, b); }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : mod_.value() - a; }
  Element mul(Element a, Element b) const noexcept { return mod_.mul(a, b); }
  Element mul_sub(Element a, Element f, Element b) const noexcept {
    return mod_.reduce(a + neg(f) * b);
  }

  bool is_zero(Element a) const noexcept { return a == 0; }
  int valuation(Element a) const noexcept {
    if (!valuation_table_.empty()) return valuation_table_[a];
    if (a == 0) return spec_.N;
    int v = 0;
    while (a % p_ == 0) {
      a /= p_;
      ++v;
    }
    return v;
  }
  Element divide_by_pi_power(Element a, int v) const { return a / pi_pow_[v]; }
  Element inverse_unit(Element a) const;

  bool is_canonical(Element a) const noexcept { return a < mod_.value(); }
  std::uint64_t coordinate_modulus(int) const noexcept { return mod_.value(); }
  std::span<const std::uint64_t> coordinates(const Element& a) const { return {&a, 1}; }

 private:
  ChainRingSpec spec_;
  std::uint64_t p_ = 2;
  Modulus mod_;
  std::vector<std::uint64_t> pi_pow_;
  std::vector<std::uint8_t> valuation_table_;
};

template <class R>
concept ChainRingType = requires(const R& ring, const typename R::Element& a, int v) {
  { ring.zero() } -> std::convertible_to<typename R::Element>;
  { ring.one() } -> std::convertible_to<typename R::Element>;
  { ring.add(a, a) } -> std::convertible_to<typename R::Element>;
  { ring.sub(a, a) } -> std::convertible_to<typename R::Element>;
  { ring.mul(a, a) } -> std::convertible_to<typename R::Element>;
  { ring.mul_sub(a, a, a) } -> std::convertible_to<typename R::Element>;
  { ring.valuation(a) } -> std::convertible_to<int>;
  { ring.divide_by_pi_power(a, v) } -> std::convertible_to<typename R::Element>;
  { ring.inverse_unit(a) } -> std::convertible_to<typename R::Element>;
  { ring.is_zero(a) } -> std::convertible_to<bool>;
  { ring.truncation() } -> std::convertible_to<int>;
};

/// Dense matrices over a chain ring; row-major because elimination is row-oriented.
template <class Ring>
using RingMatrix =
    Eigen::Matrix<typename Ring::Element, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <class Ring>
RingMatrix<Ring> zero_matrix(const Ring& ring, Eigen::Index rows, Eigen::Index cols) {
  RingMatrix<Ring> m(rows, cols);
  m.setConstant(ring.zero());
  return m;
}

template <class Ring>
RingMatrix<Ring> identity_matrix(const Ring& ring, Eigen::Index n) {
  RingMatrix<Ring> m = zero_matrix(ring, n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

template <class Ring>
RingMatrix<Ring> multiply(const Ring& ring, const RingMatrix<Ring>& a, const RingMatrix<Ring>& b) {
  RingMatrix<Ring> out = zero_matrix(ring, a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (ring.is_zero(a(i, k))) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        out(i, j) = ring.add(out(i, j), ring.mul(a(i, k), b(k, j)));
      }
    }
  }
  return out;
}

/// Calls fn with the fastest ring implementation for the spec.
template <class F>
decltype(auto) visit_ring(const ChainRingSpec& spec, F&& fn) {
  if (spec.e == 1 && spec.f == 1) return fn(ResidueRing(spec));
  return fn(ChainRing(spec));
}

}  // namespace iwmu

namespace Eigen {
template <>
struct NumTraits<iwmu::ChainRingElem> : GenericNumTraits<iwmu::ChainRingElem> {
  using Real = iwmu::ChainRingElem;
  using NonInteger = iwmu::ChainRingElem;
  using Literal = iwmu::ChainRingElem;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 16
  };
};
}  // namespace Eigen
