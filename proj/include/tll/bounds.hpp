#pragma once

#include <cstdint>
#include <vector>

#include "tll/configuration.hpp"
#include "tll/potential.hpp"

namespace tll {

/// C(a, 2) style binomial for small nonnegative arguments.
constexpr std::int64_t choose2(std::int64_t a) noexcept { return a * (a - 1) / 2; }

/// (n + 1) C(m, 2) + r m in exact integer arithmetic.
std::int64_t ground_energy_exact(int n, std::int64_t N);
double ground_energy(int n, std::int64_t N);

struct BoundReport {
  double lower_bound = 0.0;
  double ground_energy_formula = 0.0;
  std::int64_t pair_count = 0;
  std::int64_t chain_count = 0;
};

/// Chain-decomposition lower bound m N - C(m+1, 2) - n C(m+1, 2), valid for
/// every N-particle configuration on [0, n].
BoundReport chain_lower_bound(int n, std::int64_t N);

struct ChainRecord {
  int step = 0;   // j: pairs (i, i + j)
  int start = 0;  // first particle index (1-based)
  int pairs = 0;
  double potential_sum = 0.0;  // sum of u over the chain's pairs
  double chord_sum = 0.0;      // sum of 1 + x_a - x_b over the chain's pairs
  double span = 0.0;           // last minus first coordinate
};

/// Constructive recomputation of the bound. Each stage is a lower bound of the
/// previous one:  energy >= retained_sum >= chord_sum >= bound.
struct ChainAudit {
  int m = 0;
  int r = 0;
  double energy = 0.0;
  double retained_sum = 0.0;
  double chord_sum = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // energy - bound
  std::int64_t retained_pairs = 0;
  std::vector<ChainRecord> chains;
};

ChainAudit chain_bound_audit(const Configuration& config, const PotentialSpec& potential);

/// Ground-state energy per unit length at density rho >= 1.
double energy_density_formula(double rho);

}  // namespace tll
