#include "tll/bounds.hpp"

#include <cmath>

#include "tll/energy.hpp"
#include "tll/error.hpp"

namespace tll {

std::int64_t ground_energy_exact(int n, std::int64_t N) {
  const auto [m, r] = decompose_N(N, n);
  return (static_cast<std::int64_t>(n) + 1) * choose2(m) + static_cast<std::int64_t>(r) * m;
}

double ground_energy(int n, std::int64_t N) { return static_cast<double>(ground_energy_exact(n, N)); }

BoundReport chain_lower_bound(int n, std::int64_t N) {
  const auto [m, r] = decompose_N(N, n);
  const std::int64_t chains = choose2(static_cast<std::int64_t>(m) + 1);
  const std::int64_t pairs = static_cast<std::int64_t>(m) * N - chains;
  const std::int64_t bound = pairs - static_cast<std::int64_t>(n) * chains;
  BoundReport report;
  report.lower_bound = static_cast<double>(bound);
  report.ground_energy_formula = static_cast<double>(ground_energy_exact(n, N));
  report.pair_count = pairs;
  report.chain_count = chains;
  (void)r;
  return report;
}

ChainAudit chain_bound_audit(const Configuration& config, const PotentialSpec& potential) {
  if (config.domain().is_ring()) throw Error(ErrorKind::Domain, "chain_bound_audit: interval domain only");
  const int n = config.domain().n();
  const auto x = config.positions();
  const auto N = static_cast<std::int64_t>(x.size());
  const auto [m, r] = decompose_N(N, n);

  ChainAudit audit;
  audit.m = m;
  audit.r = r;
  audit.energy = total_energy(config, potential, EnergyMethod::Naive).total;
  audit.bound = chain_lower_bound(n, N).lower_bound;

  // Chain (j, i) visits indices i, i + j, i + 2j, ... (1-based), i = 1..j.
  for (int j = 1; j <= m; ++j) {
    for (int start = 1; start <= j; ++start) {
      ChainRecord chain;
      chain.step = j;
      chain.start = start;
      std::int64_t a = start;
      while (a + j <= N) {
        const double xa = x[static_cast<std::size_t>(a - 1)];
        const double xb = x[static_cast<std::size_t>(a + j - 1)];
        chain.potential_sum += evaluate(potential, xa - xb);
        chain.chord_sum += 1.0 + xa - xb;
        ++chain.pairs;
        a += j;
      }
      if (start <= N) chain.span = x[static_cast<std::size_t>(a - 1)] - x[static_cast<std::size_t>(start - 1)];
      audit.retained_sum += chain.potential_sum;
      audit.chord_sum += chain.chord_sum;
      audit.retained_pairs += chain.pairs;
      audit.chains.push_back(chain);
    }
  }
  audit.slack = audit.energy - audit.bound;
  return audit;
}

double energy_density_formula(double rho) {
  if (!(rho >= 1.0)) {
    throw Error(ErrorKind::DensityBelowOne, "energy_density_formula: rho must be >= 1");
  }
  const double whole = std::floor(rho);
  const double frac = rho - whole;
  return 0.5 * whole * (rho + frac - 1.0);
}

}  // namespace tll
