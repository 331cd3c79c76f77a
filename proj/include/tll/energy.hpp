#pragma once

#include <cstdint>

#include "tll/configuration.hpp"
#include "tll/potential.hpp"

namespace tll {

enum class EnergyMethod { Naive, CellList };

const char* to_string(EnergyMethod method);

struct EnergyReport {
  double total = 0.0;
  std::int64_t pair_count_nonzero = 0;
  EnergyMethod method = EnergyMethod::CellList;
};

/// U = sum over unordered pairs of u(x_i - x_j) on an interval configuration.
EnergyReport total_energy(const Configuration& config, const PotentialSpec& potential,
                          EnergyMethod method = EnergyMethod::CellList);

/// Pair sum with the periodized potential. The ring length must equal the period.
EnergyReport ring_energy(const Configuration& config, const PeriodizedPotential& periodized,
                         EnergyMethod method = EnergyMethod::CellList);

struct Window {
  double lo;
  double hi;
  bool contains(double x, int period = 0) const noexcept;
};

/// Sum over pairs with at least one member inside [lo, hi] (interval domain).
double window_energy(const Configuration& config, const PotentialSpec& potential, Window window);

/// Ring version; membership is tested modulo the period.
double window_energy(const Configuration& config, const PeriodizedPotential& periodized, Window window);

/// Ring energy per unit length of `profile` tiled `repeats` times.
double energy_per_length(const TowerProfile& profile, const PotentialSpec& potential, int repeats);

/// Two-height profile of density closest to rho among periods q <= max_period,
/// with the tall sites spread evenly.
TowerProfile profile_for_density(double rho, int max_period);

struct DensityPoint {
  double rho = 0.0;
  double formula = 0.0;   // closed-form ground-state energy per length
  double measured = 0.0;  // energy_per_length of the matching profile
  double gap = 0.0;       // measured - formula
  TowerProfile profile;
};

DensityPoint density_point(double rho, const PotentialSpec& potential, int repeats);

}  // namespace tll
