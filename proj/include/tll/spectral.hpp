#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tll/potential.hpp"

namespace tll {

/// Finite atomic positive measure on the ring [0, L) with total weight L.
class Measure {
public:
  /// Throws InvalidMeasure unless weights are positive, positions lie in
  /// [0, L) and the total weight equals L (relative tolerance 1e-12).
  Measure(int period, std::vector<std::pair<double, double>> atoms);

  /// Unit atom at every integer site.
  static Measure lattice(int period);

  int period() const noexcept { return period_; }
  const std::vector<std::pair<double, double>>& atoms() const noexcept { return atoms_; }

private:
  int period_;
  std::vector<std::pair<double, double>> atoms_;
};

/// I[mu] = (1 / 2L) sum_{a,b} w_a w_b u_L(x_a - x_b), diagonal included.
double functional_real(const Measure& mu, const PotentialSpec& potential);

/// u_hat(2 pi j / L) for j = 0..cutoff. The OpenMP and serial builders agree bit for bit.
std::vector<double> fourier_table(const PotentialSpec& potential, int period, int cutoff);
std::vector<double> fourier_table_serial(const PotentialSpec& potential, int period, int cutoff);

struct KSpaceResult {
  double value = 0.0;
  /// Rigorous bound on |value - I[mu]| from the discarded modes plus quadrature error.
  double truncation_estimate = 0.0;
};

/// (1/2) sum_{|j| <= cutoff} u_hat(k_j) |mu_hat(k_j)|^2, k_j = 2 pi j / L.
KSpaceResult functional_kspace(const Measure& mu, const PotentialSpec& potential, int mode_cutoff);
KSpaceResult functional_kspace(const Measure& mu, const PotentialSpec& potential,
                               const std::vector<double>& table);

struct ScanReport {
  double min_value = 0.0;
  Measure argmin;
  double lattice_value = 0.0;  // I[mu_0]
  int samples = 0;
};

/// Random atomic measures (half of them local perturbations of mu_0) plus mu_0
/// itself. Each sample's seed is derived from `seed`, so the scan is
/// reproducible at any thread count.
ScanReport minimality_scan(const PotentialSpec& potential, int period, int samples, std::uint64_t seed);

/// The measure evaluated as sample `index` of a scan with master `seed`.
Measure scan_sample(int period, int index, std::uint64_t seed);

}  // namespace tll
