#pragma once

#include <functional>

namespace tll {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature with recursive bisection.
/// Subintervals are split until |K15 - G7| <= tolerance share or max_depth.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tolerance, int max_depth = 40);

}  // namespace tll
