// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracmix/geometry.hpp"

namespace fracmix {

/// C(n, s) = 2^{2s} s Gamma(s + n/2) / (pi^{n/2} Gamma(1 - s)).
double normalization_constant(int dim, double s);

struct KernelParams {
  int dim = 2;
  double s = 0.5;
  double C = 0.0;  // normalization constant

  static KernelParams make(int dim, double s);
  /// Exponent n + 2s of |x - y|.
  double exponent() const { return dim + 2.0 * s; }
};

/// |x - y|^{-(n + 2s)}; x == y is rejected.
double kernel(const Point& x, const Point& y, const KernelParams& p);

/// int_{|y| > R} |x - y|^{-(n+2s)} dy for |x| < R.
double tail_weight_outside_ball(const Point& x, double R, const KernelParams& p);

/// int_{|x| < r} |x - y|^{-(n+2s)} dx for |y| > r.
double omega_weight_over_ball(const Point& y, double r, const KernelParams& p);

}  // namespace fracmix
