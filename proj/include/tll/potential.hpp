#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tll {

enum class PotentialKind { Overlap, Step, PowerLaw, Tabulated };

/// An even, nonnegative, range-1 pair potential normalized to u(0) = 1 and
/// dominating the chord 1 - |x| inside its support.
///
/// Tabulated members are given on the half line: samples (x, u) with x
/// strictly increasing from 0 to 1, interpolated linearly and mirrored to
/// negative x. Construction checks only the table structure; family
/// membership is checked by validate_family().
class PotentialSpec {
public:
  static PotentialSpec overlap();
  static PotentialSpec step();
  /// u(x) = 1 - |x|^beta inside the support. Requires beta >= 1.
  static PotentialSpec power_law(double beta);
  static PotentialSpec tabulated(std::vector<std::pair<double, double>> samples);

  PotentialKind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }
  const std::vector<std::pair<double, double>>& samples() const noexcept { return samples_; }

  /// True iff u(x) > 1 - |x| for all 0 < |x| < 1.
  bool strict_above_chord() const noexcept { return strict_; }

  /// Value u(x_left) just inside the support edge; nonzero means u jumps at |x| = 1.
  double edge_jump() const noexcept;

  /// Bound V with |u_hat(k) - 2 edge_jump sin(k)/k| <= 2V/k^2 (total variation
  /// of u' over [0,1] plus its endpoint magnitudes).
  double slope_variation() const noexcept;

  std::string name() const;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;

private:
  PotentialSpec() = default;

  PotentialKind kind_ = PotentialKind::Overlap;
  double beta_ = 1.0;
  std::vector<std::pair<double, double>> samples_;
  bool strict_ = false;
};

double evaluate(const PotentialSpec& spec, double x);

struct Violation {
  std::string invariant;
  double location;
  double value;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool mentions(const std::string& invariant) const;
};

/// Checks the family invariants on the grid -1.5, -1.5 + grid_step, ..., 1.5
/// (plus x = 0). Chord domination is exact for built-ins; tabulated members
/// get 1e-12 of interpolation slack away from their sample points.
ValidationReport validate_family(const PotentialSpec& spec, double grid_step);

/// u summed over all images of period L. For L >= 2 at most one image
/// lies inside the support, so evaluation reduces to the minimal image.
class PeriodizedPotential {
public:
  PeriodizedPotential(PotentialSpec base, int period);

  const PotentialSpec& base() const noexcept { return base_; }
  int period() const noexcept { return period_; }

  double minimal_image(double x) const noexcept;
  double operator()(double x) const { return evaluate(base_, minimal_image(x)); }

private:
  PotentialSpec base_;
  int period_;
};

PeriodizedPotential periodize(const PotentialSpec& spec, int period);

/// u_hat(k) = integral of u(x) e^{-ikx} over [-1, 1], by adaptive quadrature.
double fourier_transform(const PotentialSpec& spec, double k);

/// Bound on the quadrature error of fourier_transform at wavenumber k.
double fourier_error_bound(double k);

/// Closed form 2(1 - cos k)/k^2 of the overlap potential's transform.
double overlap_fourier_closed_form(double k);

}  // namespace tll
