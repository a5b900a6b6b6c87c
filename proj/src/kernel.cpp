// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/kernel.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "fracmix/error.hpp"
#include "fracmix/quadrature.hpp"

namespace fracmix {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre on [a, b], doubling the point count from 64 until two
// successive values agree to 1e-10 relative.
double converged_gauss(const std::function<double(double)>& f, double a, double b) {
  const auto& g = quad::gauss_legendre(64);
  double prev = 0.0;
  for (int panels = 1; panels <= 256; panels *= 2) {
    double sum = 0.0;
    const double len = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
      for (std::size_t i = 0; i < g.x.size(); ++i) sum += g.w[i] * f(a + len * (p + g.x[i]));
    sum *= len;
    if (panels > 1 && std::abs(sum - prev) <= 1e-10 * std::abs(sum)) return sum;
    prev = sum;
  }
  throw NumericalError("complement weight quadrature did not converge");
}

}  // namespace

double normalization_constant(int dim, double s) {
  require(s > 0.0 && s < 1.0, "normalization_constant: s must lie in (0, 1)");
  require(dim >= 1, "normalization_constant: dimension must be positive");
  const double n = dim;
  return std::pow(2.0, 2.0 * s) * s * std::tgamma(s + 0.5 * n) /
         (std::pow(kPi, 0.5 * n) * std::tgamma(1.0 - s));
}

KernelParams KernelParams::make(int dim, double s) {
  require(dim == 1 || dim == 2, "kernel: dimension must be 1 or 2");
  return KernelParams{dim, s, normalization_constant(dim, s)};
}

double kernel(const Point& x, const Point& y, const KernelParams& p) {
  const double dx = x[0] - y[0];
  const double dy = p.dim == 2 ? x[1] - y[1] : 0.0;
  const double r2 = dx * dx + dy * dy;
  require(r2 > 0.0, "kernel: coincident points");
  return std::pow(r2, -0.5 * p.exponent());
}

double tail_weight_outside_ball(const Point& x, double R, const KernelParams& p) {
  const double s = p.s;
  if (p.dim == 1) {
    const double a = x[0];
    require(std::abs(a) < R, "tail_weight_outside_ball: point must lie inside the ball");
    return (std::pow(R - a, -2.0 * s) + std::pow(R + a, -2.0 * s)) / (2.0 * s);
  }
  const double a = std::hypot(x[0], x[1]);
  require(a < R, "tail_weight_outside_ball: point must lie inside the ball");
  if (a == 0.0) return kPi * std::pow(R, -2.0 * s) / s;
  // Distance to the circle along direction theta measured from x / |x|.
  auto integrand = [&](double theta) {
    const double st = std::sin(theta);
    const double d = std::sqrt(R * R - a * a * st * st) - a * std::cos(theta);
    return std::pow(d, -2.0 * s);
  };
  return 2.0 * converged_gauss(integrand, 0.0, kPi) / (2.0 * s);
}

double omega_weight_over_ball(const Point& y, double r, const KernelParams& p) {
  const double s = p.s;
  if (p.dim == 1) {
    const double b = std::abs(y[0]);
    require(b > r, "omega_weight_over_ball: point must lie outside the ball");
    return (std::pow(b - r, -2.0 * s) - std::pow(b + r, -2.0 * s)) / (2.0 * s);
  }
  const double rho = std::hypot(y[0], y[1]);
  require(rho > r, "omega_weight_over_ball: point must lie outside the ball");
  // Rays from y at angle phi to the center: sin(phi) = (r / rho) sin(psi)
  // removes the square-root behaviour at the tangent rays. Each ray meets the
  // disc on [t1, t2]; the radial integral of t^{-(1+2s)} is exact.
  const double q = r / rho;
  auto integrand = [&](double psi) {
    const double sp = std::sin(psi), cp = std::cos(psi);
    const double cphi = std::sqrt(1.0 - q * q * sp * sp);
    const double t1 = rho * cphi - r * cp;
    const double t2 = rho * cphi + r * cp;
    const double radial = (std::pow(t1, -2.0 * s) - std::pow(t2, -2.0 * s)) / (2.0 * s);
    return radial * q * cp / cphi;
  };
  return 2.0 * converged_gauss(integrand, 0.0, 0.5 * kPi);
}

}  // namespace fracmix
