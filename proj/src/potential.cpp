#include "tll/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tll/error.hpp"
#include "tll/quadrature.hpp"

namespace tll {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::UnsupportedPeriod: return "unsupported-period";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::DensityBelowOne: return "density-below-one";
    case ErrorKind::Contract: return "contract-violation";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::InvalidMeasure: return "invalid-measure";
    case ErrorKind::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

namespace {

// Linear interpolation in a half-line table; `t` in [0, 1).
double interpolate(const std::vector<std::pair<double, double>>& samples, double t) {
  auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const auto& s) { return v < s.first; });
  if (hi == samples.begin()) return samples.front().second;
  if (hi == samples.end()) return samples.back().second;
  auto lo = std::prev(hi);
  if (t == lo->first) return lo->second;
  const double w = (t - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

// Piecewise-linear excess g(x) = u(x) - (1 - x) is positive on (0, 1) iff it
// is positive at every interior node and nonnegative at the ends, with the
// single-segment case needing one strictly positive end.
bool tabulated_strict(const std::vector<std::pair<double, double>>& samples) {
  auto excess = [](const std::pair<double, double>& s) { return s.second - (1.0 - s.first); };
  if (excess(samples.front()) < 0.0 || excess(samples.back()) < 0.0) return false;
  if (samples.size() == 2) return excess(samples.front()) + excess(samples.back()) > 0.0;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    if (!(excess(samples[i]) > 0.0)) return false;
  }
  return true;
}

}  // namespace

PotentialSpec PotentialSpec::overlap() {
  PotentialSpec s;
  s.kind_ = PotentialKind::Overlap;
  s.strict_ = false;
  return s;
}

PotentialSpec PotentialSpec::step() {
  PotentialSpec s;
  s.kind_ = PotentialKind::Step;
  s.strict_ = true;
  return s;
}

PotentialSpec PotentialSpec::power_law(double beta) {
  if (!std::isfinite(beta) || beta < 1.0) {
    std::ostringstream msg;
    msg << "power_law: beta must be >= 1 (got " << beta
        << "); for beta < 1, 1 - |x|^beta falls below the chord 1 - |x|";
    throw Error(ErrorKind::InvalidSpec, msg.str());
  }
  PotentialSpec s;
  s.kind_ = PotentialKind::PowerLaw;
  s.beta_ = beta;
  s.strict_ = beta > 1.0;
  return s;
}

PotentialSpec PotentialSpec::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorKind::InvalidSpec, "tabulated: need at least two samples");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [x, u] = samples[i];
    if (!std::isfinite(x) || !std::isfinite(u)) {
      throw Error(ErrorKind::InvalidSpec, "tabulated: non-finite sample at index " + std::to_string(i));
    }
    if (x < 0.0 || x > 1.0) {
      throw Error(ErrorKind::InvalidSpec,
                  "tabulated: sample coordinate out of range [0, 1] at index " + std::to_string(i));
    }
    if (i > 0 && !(x > samples[i - 1].first)) {
      throw Error(ErrorKind::InvalidSpec,
                  "tabulated: sample coordinates not strictly increasing at index " + std::to_string(i));
    }
  }
  if (samples.front().first != 0.0 || samples.back().first != 1.0) {
    throw Error(ErrorKind::InvalidSpec, "tabulated: samples must start at x = 0 and end at x = 1");
  }
  PotentialSpec s;
  s.kind_ = PotentialKind::Tabulated;
  s.strict_ = tabulated_strict(samples);
  s.samples_ = std::move(samples);
  return s;
}

double PotentialSpec::edge_jump() const noexcept {
  switch (kind_) {
    case PotentialKind::Step: return 1.0;
    case PotentialKind::Tabulated: return samples_.back().second;
    default: return 0.0;
  }
}

double PotentialSpec::slope_variation() const noexcept {
  switch (kind_) {
    case PotentialKind::Overlap: return 2.0;
    case PotentialKind::Step: return 0.0;
    case PotentialKind::PowerLaw: return 2.0 * beta_;
    case PotentialKind::Tabulated: {
      double v = 0.0;
      double prev = 0.0;
      for (std::size_t i = 1; i < samples_.size(); ++i) {
        const double slope = (samples_[i].second - samples_[i - 1].second) /
                             (samples_[i].first - samples_[i - 1].first);
        v += (i == 1) ? std::abs(slope) : std::abs(slope - prev);
        prev = slope;
      }
      return v + std::abs(prev);
    }
  }
  return 0.0;
}

std::string PotentialSpec::name() const {
  switch (kind_) {
    case PotentialKind::Overlap: return "overlap";
    case PotentialKind::Step: return "step";
    case PotentialKind::PowerLaw: {
      std::ostringstream out;
      out << "power_law(" << beta_ << ")";
      return out.str();
    }
    case PotentialKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

double evaluate(const PotentialSpec& spec, double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "evaluate: non-finite coordinate");
  const double t = std::abs(x);
  if (t >= 1.0) return 0.0;
  switch (spec.kind()) {
    case PotentialKind::Overlap: return 1.0 - t;
    case PotentialKind::Step: return 1.0;
    case PotentialKind::PowerLaw:
      if (spec.beta() == 2.0) return 1.0 - t * t;
      return 1.0 - std::pow(t, spec.beta());
    case PotentialKind::Tabulated: return interpolate(spec.samples(), t);
  }
  return 0.0;
}

bool ValidationReport::mentions(const std::string& invariant) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.invariant == invariant; });
}

ValidationReport validate_family(const PotentialSpec& spec, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw Error(ErrorKind::InvalidArgument, "validate_family: grid_step must lie in (0, 0.1]");
  }
  const bool tabulated = spec.kind() == PotentialKind::Tabulated;
  const double slack = tabulated ? 1e-12 : 0.0;

  ValidationReport report;
  auto check_point = [&](double x, double tol) {
    const double u = evaluate(spec, x);
    const double t = std::abs(x);
    if (u != evaluate(spec, -x)) report.violations.push_back({"evenness", x, u});
    if (t == 0.0) {
      if (u != 1.0) report.violations.push_back({"u(0) != 1", x, u});
    } else if (t < 1.0) {
      const double chord = 1.0 - t;
      if (u < chord - tol) report.violations.push_back({"chord domination", x, u});
      if (spec.strict_above_chord() && !(u - chord > 0.0)) {
        report.violations.push_back({"strict above chord", x, u});
      }
    } else if (u != 0.0) {
      report.violations.push_back({"compact support", x, u});
    }
  };

  check_point(0.0, 0.0);
  const long steps = std::lround(std::floor(3.0 / grid_step + 1e-9));
  for (long k = 0; k <= steps; ++k) {
    const double x = -1.5 + static_cast<double>(k) * grid_step;
    if (x != 0.0) check_point(x, slack);
  }
  if (tabulated) {
    for (const auto& [x, u] : spec.samples()) {
      if (x > 0.0) check_point(x, 0.0);
    }
  }
  return report;
}

PeriodizedPotential::PeriodizedPotential(PotentialSpec base, int period)
    : base_(std::move(base)), period_(period) {
  if (period < 2) {
    throw Error(ErrorKind::UnsupportedPeriod,
                "periodize: period must be >= 2, otherwise the range-1 support overlaps its own image");
  }
}

double PeriodizedPotential::minimal_image(double x) const noexcept {
  const double L = static_cast<double>(period_);
  return x - L * std::round(x / L);
}

PeriodizedPotential periodize(const PotentialSpec& spec, int period) {
  return PeriodizedPotential(spec, period);
}

double overlap_fourier_closed_form(double k) {
  if (k == 0.0) return 1.0;
  // 2(1 - cos k)/k^2 = (sin(k/2)/(k/2))^2 without cancellation.
  const double h = 0.5 * k;
  const double s = std::sin(h) / h;
  return s * s;
}

namespace {
constexpr double kFourierTolerance = 1e-15;
}

double fourier_error_bound(double k) {
  // requested tolerance over [0, 1] plus the roundoff acceptance (integral of |u cos| <= 1), doubled
  return 2.0 * (kFourierTolerance * std::max(1.0, std::abs(k)) + 50.0 * std::numeric_limits<double>::epsilon());
}

double fourier_transform(const PotentialSpec& spec, double k) {
  if (!std::isfinite(k)) throw Error(ErrorKind::InvalidArgument, "fourier_transform: non-finite k");
  // u is even, so u_hat(k) = 2 * integral_0^1 u(x) cos(kx) dx.
  std::vector<double> breaks{0.0, 1.0};
  if (spec.kind() == PotentialKind::Tabulated) {
    breaks.clear();
    for (const auto& s : spec.samples()) breaks.push_back(s.first);
  }
  const int per_oscillation = 2;
  // cos(kx) carries absolute rounding of order eps * k, so ask for no less
  const double tol = kFourierTolerance * std::max(1.0, std::abs(k));
  auto integrand = [&](double x) { return evaluate(spec, x) * std::cos(k * x); };

  double total = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double lo = breaks[b];
    const double hi = breaks[b + 1];
    const int panels =
        std::max(1, static_cast<int>(std::ceil(std::abs(k) * (hi - lo) / std::numbers::pi)) * per_oscillation);
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = lo + p * width;
      const double c = (p + 1 == panels) ? hi : a + width;
      total += integrate_adaptive(integrand, a, c, tol * (c - a)).value;
    }
  }
  return 2.0 * total;
}

}  // namespace tll
