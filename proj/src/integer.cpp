#include "iwmu/integer.hpp"

#include <algorithm>
#include <cctype>

#include "iwmu/errors.hpp"

namespace iwmu {

Integer parse_integer(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw ParseError("empty integer literal");
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError("invalid integer literal '" + std::string(text) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return negative ? Integer(-value) : value;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t checked_pow(std::uint64_t base, int exponent, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > limit / base) {
      throw TooLarge("integer power " + std::to_string(base) + "^" +
                     std::to_string(exponent) + " exceeds the supported range");
    }
    result *= base;
  }
  return result;
}

Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Integer result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

}  // namespace iwmu
