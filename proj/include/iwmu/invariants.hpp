#pragma once

// Recovery of mu(M/pi^n), the Lambda-rank, theta and the elementary
// representation of the pi-primary part from coinvariant orders.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "iwmu/homology.hpp"
#include "iwmu/presentation.hpp"

namespace iwmu {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kDefaultNMax = 6;

/// {0,1,2} for r >= 2 and {0,..,4} for r = 1.
std::vector<int> default_levels(const GroupSpec& group);

struct MuEstimate {
  std::int64_t mu = 0;
  bool converged = false;
  /// max over levels of |ord - mu p^{rm}| / p^{(r-1)m}
  Rational c_hat = 0;
  std::string reason;  // why not converged
};

/// Fits mu from ord values at >= 2 levels (m -> ord), using integrality of mu.
MuEstimate fit_mu(int p, int r, const std::map<int, std::int64_t>& orders);

/// mu(M/pi^n) estimated from levels m in `levels`.
MuEstimate estimate_mu(const Presentation& p, int n, std::span<const int> levels);

struct MuProfile {
  int p = 2;
  int r = 1;
  std::vector<int> levels_used;
  std::vector<LevelOrders> raw;      // entry k is n = k + 1
  std::vector<MuEstimate> estimates;  // entry k is n = k + 1

  int n_max() const noexcept { return static_cast<int>(estimates.size()); }
  std::int64_t mu(int n) const { return estimates.at(static_cast<std::size_t>(n - 1)).mu; }
  bool converged() const;
  std::vector<std::int64_t> mu_values() const;
};

/// Builds a profile from raw orders and checks that mu is nondecreasing with
/// nonincreasing first differences (InconsistentProfile otherwise).
MuProfile profile_from_orders(int p, int r, std::vector<LevelOrders> raw);

MuProfile mu_profile(const Presentation& p, int n_max, std::span<const int> levels);

struct ElementaryRep {
  std::int64_t free_rank = 0;
  std::vector<std::int64_t> multiplicities;  // s_1..s_theta
  int theta = 0;
  std::int64_t mu_total = 0;

  friend bool operator==(const ElementaryRep&, const ElementaryRep&) = default;
};

/// Representation with free rank a and pi-exponents alpha (closed form).
ElementaryRep elementary_from_exponents(std::int64_t free_rank, std::span<const int> alphas);

/// mu(M/pi^n) = n a + sum_i min(n, i) s_i.
std::int64_t predicted_mu(const ElementaryRep& rep, int n);

/// Difference method on a converged profile.
ElementaryRep recover_elementary(const MuProfile& profile);

/// Exact solve of mu_n = sum_i min(n, i) s_i, n = 1..theta.
std::vector<std::int64_t> solve_multiplicities(std::span<const std::int64_t> mu, int theta);

bool is_pseudonull_pi_part(const Presentation& p, std::span<const int> levels);

}  // namespace iwmu
