#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tll/configuration.hpp"
#include "tll/energy.hpp"
#include "tll/potential.hpp"

namespace tll {

inline constexpr double kDefaultCertifyTolerance = 1e-6;

struct AnnealSchedule {
  double initial_temperature = 1.0;
  double cooling_factor = 0.95;
  /// Single-particle move attempts per temperature level; 0 means 50 N.
  int sweeps_per_temperature = 0;
  double move_scale = 0.3;
  int restarts = 8;
  /// Cooling stops once the temperature drops below this value.
  double final_temperature = 1e-4;

  void validate() const;
  int sweeps_for(std::size_t particles) const;
};

enum class CertificateStatus { CertifiedOptimal, GapRemaining };

struct Certificate {
  CertificateStatus status = CertificateStatus::GapRemaining;
  double gap = 0.0;  // best_energy - lower bound
  double lower_bound = 0.0;

  bool optimal() const noexcept { return status == CertificateStatus::CertifiedOptimal; }
};

struct OptimizationResult {
  Configuration best_config;
  double best_energy = 0.0;
  /// Absent when N < n + 1 (no bound applies) or on rings.
  std::optional<Certificate> certificate;
  std::int64_t iterations = 0;
  std::uint64_t seed = 0;
  /// Full grid argmin set (brute force with collect_argmin only), lexicographic order.
  std::vector<Configuration> argmin_set;
};

/// Compares against the chain bound; throws DensityBelowOne when N < n + 1.
Certificate certify(double best_energy, int n, std::int64_t N,
                    double tolerance = kDefaultCertifyTolerance);
Certificate certify(const OptimizationResult& result, int n, std::int64_t N,
                    double tolerance = kDefaultCertifyTolerance);

/// Number of N-element multisets of a grid with `grid_points` points, saturating at `cap + 1`.
std::uint64_t multiset_count(std::uint64_t grid_points, std::uint64_t N, std::uint64_t cap);

/// Exhaustive minimum over multisets of grid points {0, h, 2h, ..., n}.
/// grid_step must divide 1; the multiset count is capped at `budget`.
OptimizationResult brute_force_min(int n, int N, const PotentialSpec& potential, double grid_step,
                                   bool collect_argmin = false, std::uint64_t budget = 10'000'000);

/// Simulated annealing plus golden-section coordinate polish. Restarts run in
/// parallel with seeds derived from `seed`; the merge is deterministic.
OptimizationResult anneal(const Domain& domain, int N, const PotentialSpec& potential,
                          const AnnealSchedule& schedule, std::uint64_t seed);

OptimizationResult anneal(int n, int N, const PotentialSpec& potential, const AnnealSchedule& schedule,
                          std::uint64_t seed);

/// Coordinate-wise derivative-free descent: golden-section search in a
/// shrinking bracket around each particle, plus snaps onto other particles
/// and onto their unit-distance neighbours. Returns the final energy.
double polish(std::vector<double>& positions, const Domain& domain, const PotentialSpec& potential,
              int rounds = 60);

struct StabilityReport {
  double baseline = 0.0;   // window energy of the input
  double min_delta = 0.0;  // smallest observed change of the window energy
  std::optional<Configuration> violating;  // set when min_delta < -1e-9
  int trials = 0;
  std::size_t window_particles = 0;

  bool stable() const noexcept { return min_delta >= -1e-9; }
};

/// Random number-preserving perturbations confined to the window, followed by
/// a window-restricted anneal with all outside particles frozen.
StabilityReport local_stability_test(const Configuration& config, const PeriodizedPotential& potential,
                                     Window window, int trials, std::uint64_t seed);

struct DegenerateMember {
  Configuration config;
  double energy = 0.0;
  /// x_{i+m+1} - x_i >= 1 for every i (gaps-or-coincidence structure).
  bool spacing_ok = false;
  /// A full m-high background on every site plus extras at mutual distance >= 1.
  bool background_form = false;
};

struct UniquenessReport {
  double ground_energy = 0.0;
  int trials = 0;
  int distinct_found = 0;
  std::vector<DegenerateMember> examples;  // first few distinct minimizers

  bool unique() const noexcept { return distinct_found == 0; }
};

/// Both structure checks for a configuration on Interval(n) with background height m.
DegenerateMember classify_degenerate(const Configuration& config, int m, double energy,
                                     double tolerance = 1e-6);

/// Perturbs tower ground states X^{n,m} (plus r tall sites) by displacements of
/// magnitude in [epsilon, 0.4], re-polishes, and records every equal-energy
/// result that does not snap back to a tower profile.
UniquenessReport uniqueness_probe(int n, int m, int r, const PotentialSpec& potential, int trials,
                                  double epsilon, std::uint64_t seed, std::size_t max_examples = 8);

}  // namespace tll
