#include "iwmu/chain_ring.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "iwmu/errors.hpp"

namespace iwmu {

namespace {

constexpr std::uint64_t kWordLimit = std::uint64_t{1} << 31;

using Poly = std::vector<std::uint64_t>;  // low to high, coefficients mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inverse_mod_prime(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    const std::int64_t quotient = r / new_r;
    t = std::exchange(new_t, t - quotient * new_t);
    r = std::exchange(new_r, r - quotient * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

Poly poly_rem(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inverse_mod_prime(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + (p - factor) * b[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& h, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return poly_rem(std::move(out), h, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

const std::map<std::pair<int, int>, Poly>& conway_table() {
  static const std::map<std::pair<int, int>, Poly> table = {
      {{2, 1}, {1, 1}},          {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}}, {{3, 1}, {1, 1}},          {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}}, {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},       {{5, 3}, {3, 3, 0, 1}},    {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},       {{7, 3}, {4, 0, 6, 1}},
  };
  return table;
}

}  // namespace

void ChainRingSpec::validate() const {
  if (!is_prime(p) || p > 65521) throw InvalidInput("p must be a prime below 2^16");
  if (e < 1 || f < 1) throw InvalidInput("ramification index and residue degree must be >= 1");
  if (e * f > kMaxRank) {
    throw InvalidInput("e*f = " + std::to_string(e * f) + " exceeds the supported maximum " +
                       std::to_string(kMaxRank));
  }
  if (N < 1) throw InvalidInput("truncation exponent N must be >= 1");
  const int k = (N + e - 1) / e;
  checked_pow(static_cast<std::uint64_t>(p), k, kWordLimit - 1);
}

std::uint64_t ChainRingSpec::q() const { return checked_pow(static_cast<std::uint64_t>(p), f); }

Modulus::Modulus(std::uint64_t m) : m_(m), reciprocal_(~std::uint64_t{0} / m) {
  if (m == 0 || m >= kWordLimit) throw std::invalid_argument("modulus out of range");
}

bool is_irreducible_mod_p(const std::vector<std::uint64_t>& poly, std::uint64_t p) {
  Poly h = poly;
  trim(h);
  if (h.size() < 2) return false;
  const std::size_t degree = h.size() - 1;
  if (degree == 1) return true;
  // Ben-Or: gcd(x^(p^i) - x, h) = 1 for all i <= degree/2.
  Poly power = {0, 1};
  for (std::size_t i = 1; i <= degree / 2; ++i) {
    Poly base = power;
    Poly acc = {1};
    for (std::uint64_t e = p; e > 0; e >>= 1) {
      if (e & 1) acc = poly_mul_mod(acc, base, h, p);
      base = poly_mul_mod(base, base, h, p);
    }
    power = acc;
    Poly diff = power;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    const Poly g = poly_gcd(h, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> residue_field_modulus(int p, int f) {
  if (f < 1) throw InvalidInput("residue degree must be >= 1");
  const auto& table = conway_table();
  if (auto it = table.find({p, f}); it != table.end()) return it->second;
  const auto up = static_cast<std::uint64_t>(p);
  const std::uint64_t count = checked_pow(up, f);
  for (std::uint64_t t = 0; t < count; ++t) {
    Poly candidate(static_cast<std::size_t>(f) + 1, 0);
    std::uint64_t rest = t;
    for (int i = 0; i < f; ++i) {
      candidate[static_cast<std::size_t>(i)] = rest % up;
      rest /= up;
    }
    candidate.back() = 1;
    if (is_irreducible_mod_p(candidate, up)) return candidate;
  }
  throw std::logic_error("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------
// ChainRing

ChainRing::ChainRing(const ChainRingSpec& spec) : spec_(spec) {
  spec_.validate();
  rank_ = spec_.e * spec_.f;
  const auto up = static_cast<std::uint64_t>(spec_.p);
  big_ = Modulus(checked_pow(up, (spec_.N + spec_.e - 1) / spec_.e));
  coord_mod_.reserve(static_cast<std::size_t>(rank_));
  for (int j = 0; j < spec_.e; ++j) {
    const int exponent = std::max(0, (spec_.N - j + spec_.e - 1) / spec_.e);
    for (int i = 0; i < spec_.f; ++i) coord_mod_.emplace_back(checked_pow(up, exponent));
  }
  const Poly h = residue_field_modulus(spec_.p, spec_.f);
  h_low_.assign(h.begin(), h.end() - 1);
}

void ChainRing::canonicalize(Element& a) const {
  for (int k = 0; k < rank_; ++k) a.c[k] = coord_mod_[k].reduce(a.c[k]);
}

ChainRing::Element ChainRing::one() const {
  Element a;
  a.c[0] = 1;
  canonicalize(a);
  return a;
}

ChainRing::Element ChainRing::basis_element(int k) const {
  Element a;
  a.c[static_cast<std::size_t>(k)] = 1;
  canonicalize(a);
  return a;
}

ChainRing::Element ChainRing::pi_power(int v) const {
  if (v >= spec_.N) return zero();
  Element a;
  a.c[static_cast<std::size_t>((v % spec_.e) * spec_.f)] =
      checked_pow(static_cast<std::uint64_t>(spec_.p), v / spec_.e);
  canonicalize(a);
  return a;
}

ChainRing::Element ChainRing::from_integer(const Integer& value) const {
  Element a;
  a.c[0] = mod_u64(value, coord_mod_[0].value());
  return a;
}

ChainRing::Element ChainRing::from_coordinates(std::span<const Integer> coords) const {
  if (coords.size() > static_cast<std::size_t>(rank_)) {
    throw InvalidInput("coefficient vector longer than e*f = " + std::to_string(rank_));
  }
  Element a;
  for (std::size_t k = 0; k < coords.size(); ++k) a.c[k] = mod_u64(coords[k], coord_mod_[k].value());
  return a;
}

ChainRing::Element ChainRing::add(const Element& a, const Element& b) const {
  Element out;
  for (int k = 0; k < rank_; ++k) out.c[k] = coord_mod_[k].add(a.c[k], b.c[k]);
  return out;
}

ChainRing::Element ChainRing::sub(const Element& a, const Element& b) const {
  Element out;
  for (int k = 0; k < rank_; ++k) out.c[k] = coord_mod_[k].sub(a.c[k], b.c[k]);
  return out;
}

ChainRing::Element ChainRing::neg(const Element& a) const { return sub(zero(), a); }

// out += scale * a * b in W/p^K, with a, b given by f coordinates.
void ChainRing::galois_mul_add(const std::uint64_t* a, const std::uint64_t* b,
                               std::uint64_t scale, std::uint64_t* out) const {
  const int f = spec_.f;
  std::array<std::uint64_t, 2 * kMaxRank> prod{};
  for (int i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f; ++j) prod[i + j] = big_.add(prod[i + j], big_.mul(a[i], b[j]));
  }
  for (int t = 2 * f - 2; t >= f; --t) {
    const std::uint64_t top = prod[t];
    if (top == 0) continue;
    prod[t] = 0;
    for (int i = 0; i < f; ++i) {
      prod[t - f + i] = big_.sub(prod[t - f + i], big_.mul(top, h_low_[i] % big_.value()));
    }
  }
  for (int i = 0; i < f; ++i) out[i] = big_.add(out[i], big_.mul(scale, prod[i]));
}

ChainRing::Element ChainRing::mul(const Element& a, const Element& b) const {
  const int e = spec_.e;
  const int f = spec_.f;
  Element out;
  const std::uint64_t p = static_cast<std::uint64_t>(spec_.p) % big_.value();
  for (int j = 0; j < e; ++j) {
    const std::uint64_t* aj = a.c.data() + j * f;
    if (std::all_of(aj, aj + f, [](std::uint64_t x) { return x == 0; })) continue;
    for (int l = 0; l < e; ++l) {
      const std::uint64_t* bl = b.c.data() + l * f;
      int target = j + l;
      std::uint64_t scale = 1;
      if (target >= e) {  // pi^e = p
        target -= e;
        scale = p;
      }
      galois_mul_add(aj, bl, scale, out.c.data() + target * f);
    }
  }
  canonicalize(out);
  return out;
}

int ChainRing::valuation(const Element& a) const {
  int best = spec_.N;
  const auto up = static_cast<std::uint64_t>(spec_.p);
  for (int j = 0; j < spec_.e; ++j) {
    int vp = -1;
    for (int i = 0; i < spec_.f; ++i) {
      std::uint64_t x = a.c[static_cast<std::size_t>(j * spec_.f + i)];
      if (x == 0) continue;
      int v = 0;
      while (x % up == 0) {
        x /= up;
        ++v;
      }
      if (vp < 0 || v < vp) vp = v;
    }
    if (vp >= 0) best = std::min(best, spec_.e * vp + j);
  }
  return best;
}

ChainRing::Element ChainRing::divide_by_pi_power(const Element& a, int v) const {
  Element cur = a;
  const int e = spec_.e;
  const int f = spec_.f;
  const auto up = static_cast<std::uint64_t>(spec_.p);
  for (int step = 0; step < v; ++step) {
    Element next;
    for (int j = 0; j + 1 < e; ++j) {
      for (int i = 0; i < f; ++i) next.c[j * f + i] = cur.c[(j + 1) * f + i];
    }
    for (int i = 0; i < f; ++i) next.c[(e - 1) * f + i] = cur.c[i] / up;
    cur = next;
  }
  canonicalize(cur);
  return cur;
}

ChainRing::Element ChainRing::inverse_unit(const Element& a) const {
  if (valuation(a) != 0) throw InvalidInput("inverse_unit: element is not a unit");
  // a^(q-2) inverts a modulo pi; Newton steps double the precision.
  Element y = one();
  Element base = a;
  for (std::uint64_t e = spec_.q() - 2; e > 0; e >>= 1) {
    if (e & 1) y = mul(y, base);
    base = mul(base, base);
  }
  const Element two = add(one(), one());
  for (int precision = 1; precision < spec_.N; precision *= 2) y = mul(y, sub(two, mul(a, y)));
  if (mul(a, y) != one()) throw std::logic_error("inverse_unit: Newton iteration failed");
  return y;
}

bool ChainRing::is_canonical(const Element& a) const {
  for (int k = 0; k < kMaxRank; ++k) {
    if (k < rank_) {
      if (a.c[static_cast<std::size_t>(k)] >= coord_mod_[static_cast<std::size_t>(k)].value()) {
        return false;
      }
    } else if (a.c[static_cast<std::size_t>(k)] != 0) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// ResidueRing

ResidueRing::ResidueRing(const ChainRingSpec& spec) : spec_(spec) {
  spec_.validate();
  if (spec_.e != 1 || spec_.f != 1) throw InvalidInput("ResidueRing requires e = f = 1");
  p_ = static_cast<std::uint64_t>(spec_.p);
  mod_ = Modulus(checked_pow(p_, spec_.N));
  pi_pow_.resize(static_cast<std::size_t>(spec_.N) + 1);
  for (int v = 0; v <= spec_.N; ++v) pi_pow_[static_cast<std::size_t>(v)] = checked_pow(p_, v);
  if (mod_.value() <= (std::uint64_t{1} << 20)) {
    valuation_table_.assign(mod_.value(), 0);
    valuation_table_[0] = static_cast<std::uint8_t>(spec_.N);
    for (std::uint64_t x = 1; x < mod_.value(); ++x) {
      valuation_table_[x] = x % p_ == 0 ? valuation_table_[x / p_] + 1 : 0;
    }
  }
}

ResidueRing::Element ResidueRing::pi_power(int v) const {
  if (v >= spec_.N) return 0;
  return pi_pow_[static_cast<std::size_t>(v)];
}

ResidueRing::Element ResidueRing::inverse_unit(Element a) const {
  if (a % p_ == 0) throw InvalidInput("inverse_unit: element is not a unit");
  const auto m = static_cast<std::int64_t>(mod_.value());
  std::int64_t t = 0, new_t = 1, r = m, new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    const std::int64_t quotient = r / new_r;
    t = std::exchange(new_t, t - quotient * new_t);
    r = std::exchange(new_r, r - quotient * new_r);
  }
  if (t < 0) t += m;
  return static_cast<Element>(t);
}

}  // namespace iwmu
