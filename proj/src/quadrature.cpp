#include "tll/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace tll {
namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double gauss;
  double kronrod_abs;  // Kronrod estimate of the integral of |f|
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double k = fc * kKronrod[7];
  double g = fc * kGauss[3];
  double kabs = std::abs(fc) * kKronrod[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    k += kKronrod[i] * (f1 + f2);
    kabs += kKronrod[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) g += kGauss[i / 2] * (f1 + f2);
  }
  return {k * half, g * half, kabs * std::abs(half)};
}

void refine(const std::function<double(double)>& f, double a, double b, double tol, int depth,
            QuadratureResult& acc) {
  const Panel p = gk15(f, a, b);
  acc.evaluations += 15;
  const double err = std::abs(p.kronrod - p.gauss);
  // below this the G/K difference is rounding noise and splitting cannot help
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * p.kronrod_abs;
  if (err <= tol || err <= roundoff || depth <= 0) {
    acc.value += p.kronrod;
    acc.error += err;
    return;
  }
  const double mid = 0.5 * (a + b);
  refine(f, a, mid, 0.5 * tol, depth - 1, acc);
  refine(f, mid, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tolerance, int max_depth) {
  QuadratureResult acc;
  if (a == b) return acc;
  refine(f, a, b, abs_tolerance, max_depth, acc);
  return acc;
}

}  // namespace tll
