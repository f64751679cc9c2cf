#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace iwmu {

/// Arbitrary-precision integer used for exact O-coefficients.
using Integer = boost::multiprecision::cpp_int;

/// Least non-negative residue of x modulo m (m > 0).
inline std::uint64_t mod_u64(const Integer& x, std::uint64_t m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

/// Parses an optionally signed decimal integer; throws ParseError.
Integer parse_integer(std::string_view text);

inline std::string to_decimal(const Integer& x) { return x.str(); }

bool is_prime(std::int64_t n);

/// base^exponent, throwing TooLarge once the result would reach `limit`.
std::uint64_t checked_pow(std::uint64_t base, int exponent,
                          std::uint64_t limit = std::uint64_t{1} << 62);

/// Binomial coefficient C(n, k) as an exact integer (0 when k > n).
Integer binomial(std::int64_t n, std::int64_t k);

}  // namespace iwmu
