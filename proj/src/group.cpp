#include "iwmu/group.hpp"

#include "iwmu/errors.hpp"
#include "iwmu/integer.hpp"

namespace iwmu {

namespace {

constexpr std::uint64_t kMaxQuotientOrder = std::uint64_t{1} << 40;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw TooLarge("group exponent overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw TooLarge("group exponent overflow");
  return out;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

void GroupSpec::validate() const {
  if (!is_prime(p)) throw InvalidInput("group prime must be prime");
  if (kind == GroupKind::Abelian) {
    if (r < 1) throw InvalidInput("abelian preset needs dimension r >= 1");
    return;
  }
  if (r != 2) throw InvalidInput("metacyclic preset has dimension 2");
  if (p == 2) {
    throw InvalidInput(
        "metacyclic preset with action 1+p requires p >= 3 (the p = 2 analogue is not uniform)");
  }
}

std::string GroupSpec::name() const {
  return kind == GroupKind::Abelian ? "abelian" : "metacyclic";
}

std::int64_t quotient_order(const GroupSpec& spec, int m) {
  if (m < 0) throw InvalidInput("level must be >= 0");
  return static_cast<std::int64_t>(
      checked_pow(static_cast<std::uint64_t>(spec.p), spec.r * m, kMaxQuotientOrder));
}

Exponents multiply_in_group(const GroupSpec& spec, const Exponents& x, const Exponents& y) {
  if (x.size() != static_cast<std::size_t>(spec.r) || y.size() != x.size()) {
    throw InvalidInput("exponent tuple has wrong length");
  }
  Exponents out(x.size());
  if (spec.kind == GroupKind::Abelian) {
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = checked_add(x[k], y[k]);
    return out;
  }
  // (a^i b^j)(a^k b^l) = a^(i + k (1+p)^j) b^(j + l)
  std::int64_t twist = 1;
  for (std::int64_t t = 0; t < x[1]; ++t) twist = checked_mul(twist, 1 + spec.p);
  out[0] = checked_add(x[0], checked_mul(y[0], twist));
  out[1] = checked_add(x[1], y[1]);
  return out;
}

GroupLevel::GroupLevel(const GroupSpec& spec, int m) : spec_(spec), m_(m) {
  spec_.validate();
  order_ = quotient_order(spec_, m);
  modulus_ = static_cast<std::int64_t>(checked_pow(static_cast<std::uint64_t>(spec_.p), m));
  if (spec_.kind == GroupKind::Metacyclic) {
    twist_.resize(static_cast<std::size_t>(modulus_));
    std::int64_t t = 1 % modulus_;
    for (std::int64_t j = 0; j < modulus_; ++j) {
      twist_[static_cast<std::size_t>(j)] = t;
      t = t * ((1 + spec_.p) % modulus_) % modulus_;
    }
  }
}

std::int64_t GroupLevel::index_of(std::span<const std::int64_t> exps) const {
  if (exps.size() != static_cast<std::size_t>(spec_.r)) {
    throw InvalidInput("exponent tuple has wrong length");
  }
  std::int64_t index = 0;
  for (std::int64_t e : exps) index = index * modulus_ + floor_mod(e, modulus_);
  return index;
}

Exponents GroupLevel::exponents(std::int64_t index) const {
  Exponents out(static_cast<std::size_t>(spec_.r));
  for (int k = spec_.r - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = index % modulus_;
    index /= modulus_;
  }
  return out;
}

std::int64_t GroupLevel::multiply(std::int64_t x, std::int64_t y) const {
  if (spec_.kind == GroupKind::Abelian) {
    std::int64_t out = 0;
    std::int64_t place = 1;
    for (int k = 0; k < spec_.r; ++k) {
      const std::int64_t digit = (x % modulus_ + y % modulus_) % modulus_;
      out += digit * place;
      place *= modulus_;
      x /= modulus_;
      y /= modulus_;
    }
    return out;
  }
  const std::int64_t i = x / modulus_, j = x % modulus_;
  const std::int64_t k = y / modulus_, l = y % modulus_;
  const std::int64_t a = (i + k * twist_[static_cast<std::size_t>(j)]) % modulus_;
  const std::int64_t b = (j + l) % modulus_;
  return a * modulus_ + b;
}

std::int64_t GroupLevel::project(std::int64_t index, const GroupLevel& coarser) const {
  if (coarser.level() > m_ || !(coarser.spec() == spec_)) {
    throw InvalidInput("projection target must be a coarser level of the same group");
  }
  const Exponents e = exponents(index);
  return coarser.index_of(e);
}

}  // namespace iwmu
