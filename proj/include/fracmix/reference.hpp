// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "fracmix/geometry.hpp"

namespace fracmix {

/// kappa(n, s) = Gamma(n/2) / (2^{2s} Gamma(1 + s) Gamma(n/2 + s)); the
/// solution of (-Delta)^s u = 1 in B(0, r), u = 0 outside, is
/// kappa (r^2 - |x|^2)_+^s.
double getoor_constant(int dim, double s);

/// c_f kappa(n, s) (r^2 - |x|^2)_+^s.
double getoor_solution(int dim, double s, double r, double c_f, const Point& x);

/// Gradient of the above for |x| < r.
Point getoor_gradient(int dim, double s, double r, double c_f, const Point& x);

/// int_{B(0, r)} of getoor_solution, in closed form.
double getoor_integral(int dim, double s, double r, double c_f);

/// Poisson kernel of B(0, r) for the fractional Laplacian.
double poisson_kernel(const Point& x, const Point& y, double r, int dim, double s);

using RadialField = std::function<double(double rho)>;

/// u(x) = int_{|y| > r} g(|y|) P(x, y) dy for radial g. Integrating over
/// spheres reduces this to
///   u(x) = sin(pi s)/pi int_0^1 g(rho(t)) t^{-s} (1 - t)^{s-1} dt,
///   rho(t)^2 = r^2 + (r^2 - |x|^2) t / (1 - t),
/// in any dimension; evaluated by tanh-sinh quadrature to rel. 1e-10.
double poisson_solution(const Point& x, const RadialField& g, double r, int dim, double s);

/// C(n, s) int_{B(0, r)} (u(x) - u(y)) |x - y|^{-(n + 2s)} dy for |x| > r.
double nonlocal_derivative(const std::function<double(const Point&)>& u, const Point& x, double r, int dim,
                           double s);

/// Exact solution of one experiment, evaluable on R^n.
class ReferenceSolution {
 public:
  enum class Kind { kGetoorConstantRhs, kGetoorTraceDatum, kPoissonKernel, kSum };

  /// c_f kappa (r^2 - |x|^2)_+^s.
  static ReferenceSolution getoor(int dim, double s, double r, double c_f);
  /// Solution whose exterior datum is kappa (rho^2 - |x|^2)_+^s with rho > r;
  /// it equals that expression everywhere.
  static ReferenceSolution getoor_trace(int dim, double s, double rho);
  /// Poisson integral in B(0, r), g outside.
  static ReferenceSolution poisson(int dim, double s, double r, RadialField g, std::string datum_id);
  static ReferenceSolution sum(std::vector<ReferenceSolution> parts);

  Kind kind() const { return kind_; }
  double value(const Point& x) const;
  bool has_gradient() const;
  Point gradient(const Point& x) const;

 private:
  struct Cache;
  Kind kind_ = Kind::kGetoorConstantRhs;
  int dim_ = 2;
  double s_ = 0.5;
  double r_ = 1.0;
  double c_ = 1.0;
  RadialField g_;
  std::string datum_;
  std::vector<ReferenceSolution> parts_;
  std::shared_ptr<Cache> cache_;
};

/// CSV `x[,y],u_exact`.
void write_reference_csv(std::ostream& os, const ReferenceSolution& ref, std::span<const Point> points, int dim);

}  // namespace fracmix
