// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "core.hpp"

namespace swcyl {

/// Integer-order Bessel function of the first kind, any sign of order and argument.
inline double bessel_j(int n, double x)
{
  const int an = n < 0 ? -n : n;
  double sign = (n < 0 && (an % 2)) ? -1.0 : 1.0;
  double ax = x;
  if (x < 0.0) {
    ax = -x;
    if (an % 2) sign = -sign;
  }
  if (ax == 0.0) return an == 0 ? 1.0 : 0.0;
  return sign * std::cyl_bessel_j(static_cast<double>(an), ax);
}

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n)
{
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

}  // namespace swcyl
