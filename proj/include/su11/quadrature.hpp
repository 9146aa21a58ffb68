#pragma once

#include <vector>

namespace su11 {

struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;

  /// Rule mapped affinely onto [a, b].
  GaussLegendreRule mapped(double a, double b) const;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes from Newton iteration on
/// the Legendre three-term recurrence.
GaussLegendreRule gauss_legendre(int n);

}  // namespace su11
