#pragma once

// Finite-level images of a presented module: coinvariant orders
// ord_q((M/pi^n)_{G_m}) over the (n, m) grid and Koszul homology H_i(G_m, M)
// for the abelian preset.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "iwmu/normal_form.hpp"
#include "iwmu/presentation.hpp"

namespace iwmu {

struct CoinvariantOrder {
  std::int64_t ordq = 0;
  bool saturated = false;
  /// Nonempty when the value saturates at N and nothing guarantees pi^N M = 0.
  std::string warning;
};

/// Diagonal form of (O/pi^N)[G/G_m] (x) M.
DiagonalForm coinvariants_form(const Presentation& p, int m, int truncation);

/// ord_q of (O/pi^N)[G/G_m] (x) M, which is ord_q(M_{G_m}) when pi^N kills M.
CoinvariantOrder coinvariants_ordq(const Presentation& p, int m, int truncation);

struct LevelOrders {
  int n = 0;
  int truncation = 0;
  std::map<int, std::int64_t> orders;  // m -> ord_q((M/pi^n)_{G_m})
};

/// Orders for n = 1..n_max at every requested level.  One diagonalization at
/// N = n_max per level serves all n, since (M/pi^{n_max})/pi^n = M/pi^n.
std::vector<LevelOrders> level_orders(const Presentation& p, int n_max, std::span<const int> levels);

struct KoszulOptions {
  /// T-adic truncation degrees tried beyond N p^m before giving up; the
  /// stable range grows with both the pi-adic depth N and p^m.
  int max_extra_degree = 64;
};

/// ord_q(H_i(G_m, M)) for a module killed by pi^N.  Degree 0 is the
/// coinvariant order.  Degrees >= 1 need the abelian preset.
std::int64_t koszul_homology_ordq(const Presentation& p, int m, int degree, int truncation,
                                  const KoszulOptions& options = {});

/// sum_i (-1)^i ord_q(H_i(G_m, M)).
std::int64_t homology_euler_characteristic(const Presentation& p, int m, int truncation,
                                           const KoszulOptions& options = {});

}  // namespace iwmu
