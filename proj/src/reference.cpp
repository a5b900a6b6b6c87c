// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/reference.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include "fracmix/error.hpp"
#include "fracmix/kernel.hpp"

namespace fracmix {

namespace {

double norm(const Point& x, int dim) { return dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]); }

void check_s(double s) { require(s > 0.0 && s < 1.0, "order s must lie in (0, 1)"); }

}  // namespace

double getoor_constant(int dim, double s) {
  check_s(s);
  require(dim == 1 || dim == 2, "dimension must be 1 or 2");
  const double h = 0.5 * dim;
  return std::tgamma(h) / (std::pow(2.0, 2.0 * s) * std::tgamma(1.0 + s) * std::tgamma(h + s));
}

double getoor_solution(int dim, double s, double r, double c_f, const Point& x) {
  const double q = r * r - norm(x, dim) * norm(x, dim);
  return q <= 0.0 ? 0.0 : c_f * getoor_constant(dim, s) * std::pow(q, s);
}

Point getoor_gradient(int dim, double s, double r, double c_f, const Point& x) {
  const double q = r * r - norm(x, dim) * norm(x, dim);
  if (q <= 0.0) return {0.0, 0.0};
  const double f = -2.0 * s * c_f * getoor_constant(dim, s) * std::pow(q, s - 1.0);
  return {f * x[0], dim == 2 ? f * x[1] : 0.0};
}

double getoor_integral(int dim, double s, double r, double c_f) {
  const double k = c_f * getoor_constant(dim, s);
  if (dim == 2) return k * std::numbers::pi * std::pow(r, 2.0 + 2.0 * s) / (1.0 + s);
  // int_{-r}^{r} (r^2 - x^2)^s dx = r^{1+2s} sqrt(pi) Gamma(1+s) / Gamma(3/2+s)
  return k * std::pow(r, 1.0 + 2.0 * s) * std::sqrt(std::numbers::pi) * std::tgamma(1.0 + s) / std::tgamma(1.5 + s);
}

double poisson_kernel(const Point& x, const Point& y, double r, int dim, double s) {
  check_s(s);
  const double nx = norm(x, dim), ny = norm(y, dim);
  require(nx < r && ny > r, "poisson_kernel: need |x| < r < |y|");
  const double h = 0.5 * dim;
  const double c = std::tgamma(h) * std::sin(std::numbers::pi * s) / std::pow(std::numbers::pi, h + 1.0);
  const double dx = x[0] - y[0], dy = dim == 2 ? x[1] - y[1] : 0.0;
  const double d2 = dx * dx + dy * dy;
  return c * std::pow((r * r - nx * nx) / (ny * ny - r * r), s) * std::pow(d2, -0.5 * dim);
}

double poisson_solution(const Point& x, const RadialField& g, double r, int dim, double s) {
  check_s(s);
  const double nx = norm(x, dim);
  require(nx < r, "poisson_solution: x must lie inside the ball");
  const double a = r * r - nx * nx;
  // the second argument is the signed distance to the nearest endpoint
  auto integrand = [&](double t, double xc) {
    double tc = 1.0 - t;
    if (xc > 0.0) {
      tc = xc;
    } else {
      t = -xc;
    }
    if (tc <= 0.0 || t <= 0.0) return 0.0;
    const double rho = std::sqrt(r * r + a * t / tc);
    const double v = g(rho);
    if (v == 0.0) return 0.0;
    return v * std::pow(t, -s) * std::pow(tc, s - 1.0);
  };
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double err = 0.0, l1 = 0.0;
  const double I = ts.integrate(integrand, 0.0, 1.0, 1e-12, &err, &l1);
  if (!std::isfinite(I) || err > 1e-9 * std::max(1.0, l1))
    throw NumericalError("poisson_solution: quadrature did not converge (error estimate " + std::to_string(err) +
                         ")");
  return std::sin(std::numbers::pi * s) / std::numbers::pi * I;
}

double nonlocal_derivative(const std::function<double(const Point&)>& u, const Point& x, double r, int dim,
                           double s) {
  const double nx = norm(x, dim);
  require(nx > r, "nonlocal_derivative: x must lie outside the closed ball");
  const double C = normalization_constant(dim, s);
  const double ux = u(x);
  const double alpha = 0.5 * (dim + 2.0 * s);
  boost::math::quadrature::tanh_sinh<double> ts(15);
  if (dim == 1) {
    auto f = [&](double y) {
      const double d = x[0] - y;
      return (ux - u({y, 0.0})) * std::pow(d * d, -alpha);
    };
    return C * ts.integrate(f, -r, r, 1e-12);
  }
  // polar coordinates around the origin; the angular integrand peaks
  // towards x when x is close to the circle
  const double phi0 = std::atan2(x[1], x[0]);
  auto radial = [&](double rho) {
    auto ang = [&](double th) {
      const Point y{rho * std::cos(phi0 + th), rho * std::sin(phi0 + th)};
      const double dx = x[0] - y[0], dy = x[1] - y[1];
      return (ux - u(y)) * std::pow(dx * dx + dy * dy, -alpha);
    };
    // split where the integrand peaks
    const double a1 = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(ang, 0.0, std::numbers::pi, 20,
                                                                                    1e-12);
    const double a2 = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(ang, -std::numbers::pi, 0.0, 20,
                                                                                    1e-12);
    return rho * (a1 + a2);
  };
  return C * ts.integrate(radial, 0.0, r, 1e-10);
}

struct ReferenceSolution::Cache {
  std::mutex mu;
  std::unordered_map<double, double> by_radius;
};

ReferenceSolution ReferenceSolution::getoor(int dim, double s, double r, double c_f) {
  ReferenceSolution R;
  R.kind_ = Kind::kGetoorConstantRhs;
  R.dim_ = dim;
  R.s_ = s;
  R.r_ = r;
  R.c_ = c_f;
  getoor_constant(dim, s);
  return R;
}

ReferenceSolution ReferenceSolution::getoor_trace(int dim, double s, double rho) {
  ReferenceSolution R = getoor(dim, s, rho, 1.0);
  R.kind_ = Kind::kGetoorTraceDatum;
  return R;
}

ReferenceSolution ReferenceSolution::poisson(int dim, double s, double r, RadialField g, std::string datum_id) {
  ReferenceSolution R;
  R.kind_ = Kind::kPoissonKernel;
  R.dim_ = dim;
  R.s_ = s;
  R.r_ = r;
  R.g_ = std::move(g);
  R.datum_ = std::move(datum_id);
  R.cache_ = std::make_shared<Cache>();
  check_s(s);
  return R;
}

ReferenceSolution ReferenceSolution::sum(std::vector<ReferenceSolution> parts) {
  require(!parts.empty(), "reference: empty sum");
  ReferenceSolution R;
  R.kind_ = Kind::kSum;
  R.dim_ = parts.front().dim_;
  R.s_ = parts.front().s_;
  R.parts_ = std::move(parts);
  return R;
}

double ReferenceSolution::value(const Point& x) const {
  switch (kind_) {
    case Kind::kGetoorConstantRhs:
    case Kind::kGetoorTraceDatum:
      return getoor_solution(dim_, s_, r_, c_, x);
    case Kind::kPoissonKernel: {
      const double rad = norm(x, dim_);
      if (rad >= r_) return g_(rad);
      {
        std::lock_guard lock(cache_->mu);
        auto it = cache_->by_radius.find(rad);
        if (it != cache_->by_radius.end()) return it->second;
      }
      const double v = poisson_solution({rad, 0.0}, g_, r_, dim_, s_);
      std::lock_guard lock(cache_->mu);
      cache_->by_radius.emplace(rad, v);
      return v;
    }
    case Kind::kSum: {
      double v = 0.0;
      for (const auto& p : parts_) v += p.value(x);
      return v;
    }
  }
  return 0.0;
}

bool ReferenceSolution::has_gradient() const {
  switch (kind_) {
    case Kind::kGetoorConstantRhs:
    case Kind::kGetoorTraceDatum:
      return true;
    case Kind::kPoissonKernel:
      return false;
    case Kind::kSum:
      for (const auto& p : parts_)
        if (!p.has_gradient()) return false;
      return true;
  }
  return false;
}

Point ReferenceSolution::gradient(const Point& x) const {
  require(has_gradient(), "reference: this solution has no gradient evaluator");
  if (kind_ == Kind::kSum) {
    Point g{0.0, 0.0};
    for (const auto& p : parts_) {
      const Point q = p.gradient(x);
      g[0] += q[0];
      g[1] += q[1];
    }
    return g;
  }
  return getoor_gradient(dim_, s_, r_, c_, x);
}

void write_reference_csv(std::ostream& os, const ReferenceSolution& ref, std::span<const Point> points, int dim) {
  os << std::setprecision(17) << (dim == 1 ? "x,u_exact\n" : "x,y,u_exact\n");
  for (const auto& p : points) {
    os << p[0] << ',';
    if (dim == 2) os << p[1] << ',';
    os << ref.value(p) << '\n';
  }
}

}  // namespace fracmix
