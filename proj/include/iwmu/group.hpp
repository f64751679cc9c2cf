#pragma once

// Uniform pro-p group presets and their lower p-series quotients G/G_m.
//
//  * Abelian{r}:  G = Z_p^r with generators g_1..g_r; G/G_m = (Z/p^m)^r.
//  * Metacyclic:  G = <a, b | b a b^-1 = a^(1+p)>, p odd, dimension 2;
//                 G/G_m = <a, b | a^(p^m) = b^(p^m) = 1, b a b^-1 = a^(1+p)>.
//
// Elements of G/G_m are exponent tuples (e_1, .., e_r) standing for
// g_1^e_1 ... g_r^e_r (a^e_1 b^e_2 for the metacyclic preset), enumerated in
// lexicographic order with the first generator most significant.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace iwmu {

enum class GroupKind { Abelian, Metacyclic };

struct GroupSpec {
  GroupKind kind = GroupKind::Abelian;
  int p = 2;
  int r = 1;

  static GroupSpec abelian(int p, int r) { return {GroupKind::Abelian, p, r}; }
  static GroupSpec metacyclic(int p) { return {GroupKind::Metacyclic, p, 2}; }

  int dimension() const noexcept { return r; }
  bool is_abelian() const noexcept { return kind == GroupKind::Abelian; }
  void validate() const;
  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

using Exponents = std::vector<std::int64_t>;

/// |G / G_m| = p^(r m).
std::int64_t quotient_order(const GroupSpec& spec, int m);

/// Product of group elements in G itself (exponent tuples in normal form).
Exponents multiply_in_group(const GroupSpec& spec, const Exponents& x, const Exponents& y);

class GroupLevel {
 public:
  GroupLevel(const GroupSpec& spec, int m);

  const GroupSpec& spec() const noexcept { return spec_; }
  int level() const noexcept { return m_; }
  std::int64_t order() const noexcept { return order_; }
  /// p^m, the exponent modulus at this level.
  std::int64_t exponent_modulus() const noexcept { return modulus_; }

  /// Index of the image of g^exps in G/G_m.
  std::int64_t index_of(std::span<const std::int64_t> exps) const;
  Exponents exponents(std::int64_t index) const;
  std::int64_t multiply(std::int64_t x, std::int64_t y) const;
  /// Image of an element in G/G_{m-1}.
  std::int64_t project(std::int64_t index, const GroupLevel& coarser) const;

 private:
  GroupSpec spec_;
  int m_;
  std::int64_t modulus_;
  std::int64_t order_;
  std::vector<std::int64_t> twist_;  // (1+p)^j mod p^m, metacyclic only
};

}  // namespace iwmu
