#include "tll/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "tll/error.hpp"
#include "tll/random.hpp"

namespace tll {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// |sum_{j > J} sin(j theta) / j| is at most pi/2 + Si(pi) < 3.5 for every theta.
constexpr double kSineTailCap = 3.5;

// Per-mode allowance for the adaptive quadrature behind u_hat.

double sine_tail_bound(double theta, int cutoff) {
  const double s = std::abs(std::sin(0.5 * theta));
  if (s == 0.0) return 0.0;
  return std::min(kSineTailCap, 1.0 / ((cutoff + 1.0) * s));
}

double minimal_image(double d, int period) { return d - period * std::round(d / period); }

}  // namespace

Measure::Measure(int period, std::vector<std::pair<double, double>> atoms)
    : period_(period), atoms_(std::move(atoms)) {
  if (period < 2) throw Error(ErrorKind::InvalidMeasure, "measure: period must be >= 2");
  if (atoms_.empty()) throw Error(ErrorKind::InvalidMeasure, "measure: no atoms");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto [x, w] = atoms_[i];
    if (!(x >= 0.0 && x < period)) {
      throw Error(ErrorKind::InvalidMeasure, "measure: atom " + std::to_string(i) + " outside [0, L)");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::InvalidMeasure, "measure: atom " + std::to_string(i) + " has nonpositive weight");
    }
    total += w;
  }
  if (std::abs(total - period) > 1e-12 * period) {
    throw Error(ErrorKind::InvalidMeasure,
                "measure: total weight " + std::to_string(total) + " differs from L = " + std::to_string(period));
  }
}

Measure Measure::lattice(int period) {
  std::vector<std::pair<double, double>> atoms;
  for (int j = 0; j < period; ++j) atoms.emplace_back(static_cast<double>(j), 1.0);
  return Measure(period, std::move(atoms));
}

double functional_real(const Measure& mu, const PotentialSpec& potential) {
  const int L = mu.period();
  double sum = 0.0;
  for (const auto& [xa, wa] : mu.atoms()) {
    for (const auto& [xb, wb] : mu.atoms()) {
      sum += wa * wb * evaluate(potential, minimal_image(xa - xb, L));
    }
  }
  return sum / (2.0 * L);
}

std::vector<double> fourier_table_serial(const PotentialSpec& potential, int period, int cutoff) {
  std::vector<double> table(static_cast<std::size_t>(cutoff) + 1);
  for (int j = 0; j <= cutoff; ++j) {
    table[static_cast<std::size_t>(j)] = fourier_transform(potential, kTwoPi * j / period);
  }
  return table;
}

std::vector<double> fourier_table(const PotentialSpec& potential, int period, int cutoff) {
  if (period < 2 || cutoff < 1) throw Error(ErrorKind::InvalidArgument, "fourier_table: need L >= 2, cutoff >= 1");
  std::vector<double> table(static_cast<std::size_t>(cutoff) + 1);
#pragma omp parallel for schedule(dynamic, 8)
  for (int j = 0; j <= cutoff; ++j) {
    table[static_cast<std::size_t>(j)] = fourier_transform(potential, kTwoPi * j / period);
  }
  return table;
}

KSpaceResult functional_kspace(const Measure& mu, const PotentialSpec& potential, int mode_cutoff) {
  if (mode_cutoff < 1) throw Error(ErrorKind::InvalidArgument, "functional_kspace: cutoff must be >= 1");
  return functional_kspace(mu, potential, fourier_table(potential, mu.period(), mode_cutoff));
}

KSpaceResult functional_kspace(const Measure& mu, const PotentialSpec& potential,
                               const std::vector<double>& table) {
  const int L = mu.period();
  const int cutoff = static_cast<int>(table.size()) - 1;
  if (cutoff < 1) throw Error(ErrorKind::InvalidArgument, "functional_kspace: table too short");

  auto mu_hat_sq = [&](double k) {
    double re = 0.0;
    double im = 0.0;
    for (const auto& [x, w] : mu.atoms()) {
      re += w * std::cos(k * x);
      im -= w * std::sin(k * x);
    }
    return (re * re + im * im) / (static_cast<double>(L) * L);
  };

  // u_hat is even, so modes j and -j contribute equally.
  double sum = table[0] * mu_hat_sq(0.0);
  for (int j = 1; j <= cutoff; ++j) sum += 2.0 * table[static_cast<std::size_t>(j)] * mu_hat_sq(kTwoPi * j / L);

  KSpaceResult out;
  out.value = 0.5 * sum;

  // Tail: u_hat(k) = 2 J sin(k)/k + O(2V/k^2) with J the jump at |x| = 1.
  const double smooth = 2.0 * potential.slope_variation() * L * L / (kTwoPi * kTwoPi * cutoff);
  double jump = 0.0;
  const double J = potential.edge_jump();
  if (J != 0.0) {
    double pairs = 0.0;
    for (const auto& [xa, wa] : mu.atoms()) {
      for (const auto& [xb, wb] : mu.atoms()) {
        const double d = xa - xb;
        pairs += wa * wb *
                 (sine_tail_bound(kTwoPi * (1.0 + d) / L, cutoff) + sine_tail_bound(kTwoPi * (1.0 - d) / L, cutoff));
      }
    }
    jump = std::abs(J) / (kTwoPi * L) * pairs;
  }
  // |mu_hat|^2 / L^2 <= 1, so each mode contributes at most its transform error
  double quadrature = 0.5 * fourier_error_bound(0.0);
  for (int j = 1; j <= cutoff; ++j) quadrature += fourier_error_bound(kTwoPi * j / L);
  out.truncation_estimate = smooth + jump + quadrature;
  return out;
}

Measure scan_sample(int period, int index, std::uint64_t seed) {
  if (index == 0) return Measure::lattice(period);
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  std::vector<std::pair<double, double>> atoms;
  if (index % 2 == 1) {
    // local perturbation of the lattice measure
    const double spread = uniform(rng, 0.0, 0.5);
    for (int j = 0; j < period; ++j) {
      double x = j + uniform(rng, -spread, spread);
      x -= period * std::floor(x / period);
      if (x >= period) x = 0.0;
      atoms.emplace_back(x, std::exp(uniform(rng, -0.5, 0.5)));
    }
  } else {
    const int count = uniform_int(rng, 1, 2 * period + 2);
    for (int a = 0; a < count; ++a) {
      atoms.emplace_back(uniform(rng, 0.0, period), -std::log1p(-uniform01(rng)) + 1e-12);
    }
  }
  double total = 0.0;
  for (const auto& a : atoms) total += a.second;
  for (auto& a : atoms) a.second *= period / total;
  return Measure(period, std::move(atoms));
}

ScanReport minimality_scan(const PotentialSpec& potential, int period, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "minimality_scan: samples must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(samples));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < samples; ++i) {
    values[static_cast<std::size_t>(i)] = functional_real(scan_sample(period, i, seed), potential);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return ScanReport{values[best], scan_sample(period, static_cast<int>(best), seed), values[0], samples};
}

}  // namespace tll
