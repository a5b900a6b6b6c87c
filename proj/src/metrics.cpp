// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "fracmix/error.hpp"
#include "fracmix/kernel.hpp"
#include "fracmix/quadrature.hpp"

namespace fracmix {

namespace {

// Calls fn(x, weight, uh, grad_uh) at every quadrature point of every cell
// selected by `keep`.
template <class Keep, class Fn>
void for_each_point(const DiscreteSolution& sol, int order, Keep&& keep, Fn&& fn) {
  const Mesh& mesh = *sol.mesh;
  const int dim = mesh.dim();
  const int nv = mesh.cell_size();
  const auto& rule = quad::collapsed_simplex(dim, order);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (!keep(c)) continue;
    const auto& cell = mesh.cell(c);
    Point v[3];
    double u[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < nv; ++a) {
      v[a] = mesh.vertex(cell[a]);
      u[a] = sol.nodal(cell[a]);
    }
    Point grad{0.0, 0.0};
    double scale;
    if (dim == 1) {
      const double len = v[1][0] - v[0][0];
      grad[0] = (u[1] - u[0]) / len;
      scale = std::abs(len);
    } else {
      const double e1x = v[1][0] - v[0][0], e1y = v[1][1] - v[0][1];
      const double e2x = v[2][0] - v[0][0], e2y = v[2][1] - v[0][1];
      const double det = e1x * e2y - e2x * e1y;
      const double d1 = u[1] - u[0], d2 = u[2] - u[0];
      // solve J^T grad = (d1, d2)
      grad[0] = (d1 * e2y - d2 * e1y) / det;
      grad[1] = (e1x * d2 - e2x * d1) / det;
      scale = std::abs(det);
    }
    for (std::size_t q = 0; q < rule.w.size(); ++q) {
      double mu[3] = {1.0, 0.0, 0.0};
      for (int k = 0; k < dim; ++k) {
        mu[k + 1] = rule.x[q][k];
        mu[0] -= rule.x[q][k];
      }
      Point x{0.0, 0.0};
      double uh = 0.0;
      for (int a = 0; a < nv; ++a) {
        x[0] += mu[a] * v[a][0];
        x[1] += mu[a] * v[a][1];
        uh += mu[a] * u[a];
      }
      fn(x, rule.w[q] * scale, uh, grad);
    }
  }
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) throw NumericalError(std::string(what) + ": error value not finite");
}

}  // namespace

double l2_error(const DiscreteSolution& sol, const ReferenceSolution& ref, Region region,
                std::optional<double> exterior_tail_sq, int order) {
  require(region != Region::kRn || exterior_tail_sq.has_value(),
          "l2_error: region R^n needs the exterior norm of the datum");
  const Mesh& mesh = *sol.mesh;
  double acc = 0.0;
  for_each_point(
      sol, order, [&](std::size_t c) { return region != Region::kOmega || mesh.cell_in_omega(c); },
      [&](const Point& x, double w, double uh, const Point&) {
        const double e = uh - ref.value(x);
        acc += w * e * e;
      });
  if (region == Region::kRn) {
    require(*exterior_tail_sq >= 0.0, "l2_error: negative exterior norm");
    acc += *exterior_tail_sq;
  }
  const double v = std::sqrt(acc);
  check_finite(v, "l2_error");
  return v;
}

double h1_error(const DiscreteSolution& sol, const ReferenceSolution& ref, int order) {
  require(ref.has_gradient(), "h1_error: reference solution has no gradient");
  const Mesh& mesh = *sol.mesh;
  double acc = 0.0;
  for_each_point(
      sol, order, [&](std::size_t c) { return mesh.cell_in_omega(c); },
      [&](const Point& x, double w, double uh, const Point& gh) {
        const double e = uh - ref.value(x);
        const Point g = ref.gradient(x);
        const double ex = gh[0] - g[0], ey = gh[1] - g[1];
        acc += w * (e * e + ex * ex + ey * ey);
      });
  const double v = std::sqrt(acc);
  check_finite(v, "h1_error");
  return v;
}

double hs_error_smooth_bound(double l2, double h1, double s) {
  require(s >= 0.0 && s <= 1.0, "interpolation exponent must lie in [0, 1]");
  require(l2 >= 0.0 && h1 >= 0.0, "norms must be nonnegative");
  if (s == 0.0) return l2;
  if (s == 1.0) return h1;
  if (l2 == 0.0 || h1 == 0.0) return 0.0;
  return std::pow(l2, 1.0 - s) * std::pow(h1, s);
}

double hs_error_smooth_bound(const DiscreteSolution& sol, const ReferenceSolution& ref, double s, int order) {
  return hs_error_smooth_bound(l2_error(sol, ref, Region::kOmega, std::nullopt, order), h1_error(sol, ref, order), s);
}

EnergyError hs_energy_error_homogeneous(const DiscreteSolution& sol, double s, double f_value, double exact_integral) {
  require(f_value > 0.0, "energy error: needs a positive constant right-hand side");
  const Mesh& mesh = *sol.mesh;
  double integral = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (!mesh.cell_in_omega(c)) continue;
    double mean = 0.0;
    for (int a = 0; a < mesh.cell_size(); ++a) mean += sol.nodal(mesh.cell(c)[a]);
    integral += mesh.cell_measure(c) * mean / mesh.cell_size();
  }
  EnergyError e;
  e.radicand = exact_integral - integral;
  if (e.radicand < -1e-12 * std::max(1.0, std::abs(exact_integral)))
    throw NumericalError("energy error: negative radicand " + std::to_string(e.radicand) +
                         " (assembly or quadrature inconsistent)");
  const double r = std::max(0.0, e.radicand);
  e.raw = std::sqrt(r);
  e.energy = std::sqrt(2.0 * f_value * r / normalization_constant(mesh.dim(), s));
  return e;
}

double eoc_fit(const std::vector<std::pair<double, double>>& pairs) {
  require(pairs.size() >= 3, "eoc_fit: need at least 3 (h, error) pairs");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [h, e] : pairs) {
    require(h > 0.0 && e > 0.0, "eoc_fit: values must be positive");
    const double x = std::log(h), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pairs.size());
  const double den = n * sxx - sx * sx;
  require(den > 0.0, "eoc_fit: mesh sizes must not all coincide");
  return (n * sxy - sx * sy) / den;
}

double pow4_tail_sq(double R) { return std::numbers::pi / 3.0 * std::pow(R, -6.0); }

double gauss_tail_sq(double R) { return 0.5 * std::numbers::pi * std::exp(-2.0 * R * R); }

void ConvergenceReport::finalize() {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.h > b.h; });
  eoc.assign(norms.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < norms.size(); ++k) {
    const auto pts = series(k);
    if (pts.size() >= 3) eoc[k] = eoc_fit(pts);
  }
}

std::vector<std::pair<double, double>> ConvergenceReport::series(std::size_t norm) const {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows)
    if (r.failure.empty() && norm < r.values.size() && r.values[norm] > 0.0 && std::isfinite(r.values[norm]))
      pts.emplace_back(r.h, r.values[norm]);
  return pts;
}

std::size_t ConvergenceReport::column(const std::string& name) const {
  for (std::size_t k = 0; k < norms.size(); ++k)
    if (norms[k] == name) return k;
  throw ValidationError("report has no column " + name);
}

namespace {
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}
}  // namespace

void ConvergenceReport::write_csv(std::ostream& os) const {
  os << "# experiment=" << experiment << " n=" << dim << " s=" << s << '\n';
  if (!calibration.empty() || !method.empty()) os << "# cal=" << calibration << " method=" << method << '\n';
  os << "h,H,Ndof";
  for (const auto& n : norms) os << ',' << n;
  os << '\n';
  for (const auto& r : rows) {
    if (!r.failure.empty()) continue;
    os << num(r.h) << ',' << num(r.H) << ',' << r.ndof;
    for (double v : r.values) os << ',' << num(v);
    os << '\n';
  }
  os << "EOC,,";
  for (double v : eoc) os << ',' << num(v);
  os << '\n';
  for (const auto& r : rows)
    if (!r.failure.empty()) os << "# failed h=" << num(r.h) << ": " << r.failure << '\n';
}

}  // namespace fracmix
