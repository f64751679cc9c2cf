#include "iwmu/group_ring.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "iwmu/errors.hpp"

namespace iwmu {

void trim_coefficient(Coefficient& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

bool is_zero_coefficient(const Coefficient& c) {
  return std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; });
}

IntegralOrder::IntegralOrder(const RingBase& base) : base_(base) {
  base_.truncated(1).validate();
  const auto h = residue_field_modulus(base_.p, base_.f);
  for (std::size_t i = 0; i + 1 < h.size(); ++i) h_low_.emplace_back(h[i]);
}

Coefficient IntegralOrder::from_integer(const Integer& value) const {
  Coefficient c{value};
  trim_coefficient(c);
  return c;
}

Coefficient IntegralOrder::pi_power(int n) const {
  Coefficient c(static_cast<std::size_t>((n % base_.e) * base_.f) + 1, 0);
  c.back() = pow(Integer(base_.p), static_cast<unsigned>(n / base_.e));
  return c;
}

Coefficient IntegralOrder::add(const Coefficient& a, const Coefficient& b) const {
  Coefficient out(std::max(a.size(), b.size()), 0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  trim_coefficient(out);
  return out;
}

Coefficient IntegralOrder::neg(const Coefficient& a) const {
  Coefficient out = a;
  for (auto& x : out) x = -x;
  return out;
}

Coefficient IntegralOrder::mul(const Coefficient& a, const Coefficient& b) const {
  const int e = base_.e;
  const int f = base_.f;
  const auto d = static_cast<std::size_t>(e * f);
  if (a.size() > d || b.size() > d) throw InvalidInput("coefficient vector longer than e*f");
  Coefficient pa = a, pb = b;
  pa.resize(d, 0);
  pb.resize(d, 0);
  Coefficient out(d, 0);
  for (int j = 0; j < e; ++j) {
    for (int l = 0; l < e; ++l) {
      std::vector<Integer> prod(static_cast<std::size_t>(2 * f - 1), 0);
      bool any = false;
      for (int i = 0; i < f; ++i) {
        const Integer& ai = pa[static_cast<std::size_t>(j * f + i)];
        if (ai == 0) continue;
        for (int k = 0; k < f; ++k) {
          const Integer& bk = pb[static_cast<std::size_t>(l * f + k)];
          if (bk == 0) continue;
          prod[static_cast<std::size_t>(i + k)] += ai * bk;
          any = true;
        }
      }
      if (!any) continue;
      for (int t = 2 * f - 2; t >= f; --t) {
        const Integer top = prod[static_cast<std::size_t>(t)];
        if (top == 0) continue;
        prod[static_cast<std::size_t>(t)] = 0;
        for (int i = 0; i < f; ++i) {
          prod[static_cast<std::size_t>(t - f + i)] -= top * h_low_[static_cast<std::size_t>(i)];
        }
      }
      int target = j + l;
      Integer factor = 1;
      if (target >= e) {
        target -= e;
        factor = base_.p;
      }
      for (int i = 0; i < f; ++i) {
        out[static_cast<std::size_t>(target * f + i)] += factor * prod[static_cast<std::size_t>(i)];
      }
    }
  }
  trim_coefficient(out);
  return out;
}

std::string to_string(const GroupRingPoly& x) {
  std::ostringstream os;
  if (x.is_zero()) return "0";
  bool first = true;
  for (const Term& t : x.terms()) {
    if (!first) os << " + ";
    first = false;
    os << '(';
    for (std::size_t k = 0; k < t.coeff.size(); ++k) os << (k ? "," : "") << t.coeff[k];
    os << ")g^(";
    for (std::size_t k = 0; k < t.exponents.size(); ++k) os << (k ? "," : "") << t.exponents[k];
    os << ')';
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GroupRingPoly& x) { return os << to_string(x); }

GroupRingPoly::GroupRingPoly(std::vector<Term> terms) : terms_(std::move(terms)) {
  canonicalize();
}

GroupRingPoly GroupRingPoly::monomial(Coefficient coeff, Exponents exponents) {
  return GroupRingPoly({Term{std::move(coeff), std::move(exponents)}});
}

GroupRingPoly GroupRingPoly::constant(const Integer& value, int dimension) {
  return monomial({value}, Exponents(static_cast<std::size_t>(dimension), 0));
}

GroupRingPoly GroupRingPoly::generator_minus_one(int dimension, int k, std::int64_t power) {
  Exponents e(static_cast<std::size_t>(dimension), 0);
  e[static_cast<std::size_t>(k)] = power;
  return GroupRingPoly({Term{{1}, e}, Term{{-1}, Exponents(static_cast<std::size_t>(dimension), 0)}});
}

void GroupRingPoly::canonicalize() {
  std::map<Exponents, Coefficient> merged;
  for (auto& term : terms_) {
    for (auto x : term.exponents) {
      if (x < 0) throw InvalidInput("group exponents must be non-negative");
    }
    auto& slot = merged[term.exponents];
    if (slot.size() < term.coeff.size()) slot.resize(term.coeff.size(), 0);
    for (std::size_t k = 0; k < term.coeff.size(); ++k) slot[k] += term.coeff[k];
  }
  terms_.clear();
  for (auto& [exps, coeff] : merged) {
    trim_coefficient(coeff);
    if (!coeff.empty()) terms_.push_back(Term{std::move(coeff), exps});
  }
}

GroupRingPoly add(const GroupRingPoly& x, const GroupRingPoly& y) {
  std::vector<Term> terms = x.terms();
  terms.insert(terms.end(), y.terms().begin(), y.terms().end());
  return GroupRingPoly(std::move(terms));
}

GroupRingPoly negate(const IntegralOrder& order, const GroupRingPoly& x) {
  std::vector<Term> terms = x.terms();
  for (auto& t : terms) t.coeff = order.neg(t.coeff);
  return GroupRingPoly(std::move(terms));
}

GroupRingPoly multiply(const IntegralOrder& order, const GroupSpec& group, const GroupRingPoly& x,
                       const GroupRingPoly& y) {
  std::vector<Term> terms;
  terms.reserve(x.terms().size() * y.terms().size());
  for (const auto& a : x.terms()) {
    for (const auto& b : y.terms()) {
      terms.push_back(Term{order.mul(a.coeff, b.coeff),
                           multiply_in_group(group, a.exponents, b.exponents)});
    }
  }
  return GroupRingPoly(std::move(terms));
}

GroupRingPoly scale(const IntegralOrder& order, const Coefficient& c, const GroupRingPoly& x) {
  std::vector<Term> terms = x.terms();
  for (auto& t : terms) t.coeff = order.mul(c, t.coeff);
  return GroupRingPoly(std::move(terms));
}

}  // namespace iwmu
