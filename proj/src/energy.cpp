#include "tll/energy.hpp"

#include <cmath>
#include <vector>

#include "tll/bounds.hpp"
#include "tll/error.hpp"
#include "tll/kernels.hpp"

namespace tll {

const char* to_string(EnergyMethod method) {
  return method == EnergyMethod::Naive ? "naive" : "cell_list";
}

namespace {

EnergyReport run(std::span<const double> positions, const PotentialSpec& spec, int cells, int period,
                 EnergyMethod method) {
  const kernels::PairSum sum = method == EnergyMethod::Naive
                                   ? kernels::pair_sum_naive(positions, spec, period)
                                   : kernels::pair_sum_cells(positions, spec, cells, period);
  return {sum.total, sum.nonzero, method};
}

std::vector<std::size_t> members(std::span<const double> positions, Window window, int period) {
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (window.contains(positions[i], period)) inside.push_back(i);
  }
  return inside;
}

double window_sum(std::span<const double> x, const PotentialSpec& spec, Window window, int period) {
  if (!(window.lo < window.hi)) throw Error(ErrorKind::InvalidArgument, "window: need lo < hi");
  const auto inside = members(x, window, period);
  std::vector<char> in(x.size(), 0);
  for (std::size_t i : inside) in[i] = 1;
  double sum = 0.0;
  for (std::size_t i : inside) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      // pairs with both members inside are visited once, from the lower index
      if (j == i || (in[j] && j < i)) continue;
      double d = x[i] - x[j];
      if (period > 0) d -= period * std::round(d / period);
      sum += evaluate(spec, d);
    }
  }
  return sum;
}

}  // namespace

bool Window::contains(double x, int period) const noexcept {
  if (period <= 0) return x >= lo && x <= hi;
  if (hi - lo >= period) return true;
  const double L = period;
  // shift x to the first image not below lo
  const double shifted = x - L * std::floor((x - lo) / L);
  return shifted >= lo && shifted <= hi;
}

EnergyReport total_energy(const Configuration& config, const PotentialSpec& potential,
                          EnergyMethod method) {
  if (config.domain().is_ring()) {
    throw Error(ErrorKind::Domain, "total_energy: ring configuration, use ring_energy");
  }
  return run(config.positions(), potential, config.domain().sites(), 0, method);
}

EnergyReport ring_energy(const Configuration& config, const PeriodizedPotential& periodized,
                         EnergyMethod method) {
  const Domain& d = config.domain();
  if (!d.is_ring()) throw Error(ErrorKind::Domain, "ring_energy: configuration is not on a ring");
  if (d.length() != periodized.period()) {
    throw Error(ErrorKind::Domain, "ring_energy: ring length " + std::to_string(d.length()) +
                                       " does not match period " + std::to_string(periodized.period()));
  }
  return run(config.positions(), periodized.base(), d.length(), d.length(), method);
}

double window_energy(const Configuration& config, const PotentialSpec& potential, Window window) {
  if (config.domain().is_ring()) {
    throw Error(ErrorKind::Domain, "window_energy: ring configuration needs a periodized potential");
  }
  return window_sum(config.positions(), potential, window, 0);
}

double window_energy(const Configuration& config, const PeriodizedPotential& periodized, Window window) {
  const Domain& d = config.domain();
  if (!d.is_ring() || d.length() != periodized.period()) {
    throw Error(ErrorKind::Domain, "window_energy: ring length does not match period");
  }
  return window_sum(config.positions(), periodized.base(), window, d.length());
}

double energy_per_length(const TowerProfile& profile, const PotentialSpec& potential, int repeats) {
  if (repeats < 2) throw Error(ErrorKind::InvalidArgument, "energy_per_length: repeats must be >= 2");
  TowerProfile tiled;
  tiled.heights.reserve(profile.heights.size() * static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    tiled.heights.insert(tiled.heights.end(), profile.heights.begin(), profile.heights.end());
  }
  const Configuration config = config_from_profile(tiled, DomainKind::Ring);
  const PeriodizedPotential periodized(potential, config.domain().length());
  return ring_energy(config, periodized).total / static_cast<double>(config.domain().length());
}

TowerProfile profile_for_density(double rho, int max_period) {
  if (!(rho >= 1.0)) throw Error(ErrorKind::DensityBelowOne, "profile_for_density: rho must be >= 1");
  if (max_period < 1) throw Error(ErrorKind::InvalidArgument, "profile_for_density: max_period must be >= 1");
  const int m = static_cast<int>(std::floor(rho));
  const double frac = rho - m;
  int best_q = 1;
  long best_p = std::lround(frac);
  double best_err = std::abs(frac - static_cast<double>(best_p));
  for (int q = 2; q <= max_period; ++q) {
    const long p = std::lround(frac * q);
    const double err = std::abs(frac - static_cast<double>(p) / q);
    if (err < best_err - 1e-15) {
      best_q = q;
      best_p = p;
      best_err = err;
    }
  }
  TowerProfile profile;
  if (best_p == best_q) return TowerProfile{{m + 1}};
  for (int i = 0; i < best_q; ++i) {
    const long before = (static_cast<long>(i) * best_p) / best_q;
    const long after = (static_cast<long>(i + 1) * best_p) / best_q;
    profile.heights.push_back(m + static_cast<int>(after - before));
  }
  return profile;
}

DensityPoint density_point(double rho, const PotentialSpec& potential, int repeats) {
  DensityPoint point;
  point.rho = rho;
  point.profile = profile_for_density(rho, repeats);
  point.formula = energy_density_formula(rho);
  point.measured = energy_per_length(point.profile, potential, repeats);
  point.gap = point.measured - point.formula;
  return point;
}

}  // namespace tll
