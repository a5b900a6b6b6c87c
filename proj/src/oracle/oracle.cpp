// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/oracle.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace fracmix::oracle {

namespace bq = boost::math::quadrature;
using boost::math::constants::pi;

double normalization_constant(int dim, double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("oracle: s must lie in (0, 1)");
  const double h = 0.5 * dim;
  return std::pow(2.0, 2.0 * s) * s * boost::math::tgamma(s + h) /
         (std::pow(pi<double>(), h) * boost::math::tgamma(1.0 - s));
}

namespace {

struct Hats {
  const std::vector<double>& x;
  // value of hat i at y lying in element e = [x_e, x_{e+1}]
  double value(int i, int e, double y) const {
    if (e == i - 1) return (y - x[e]) / (x[e + 1] - x[e]);
    if (e == i) return (x[e + 1] - y) / (x[e + 1] - x[e]);
    return 0.0;
  }
  double slope(int i, int e) const {
    if (e == i - 1) return 1.0 / (x[e + 1] - x[e]);
    if (e == i) return -1.0 / (x[e + 1] - x[e]);
    return 0.0;
  }
  bool vanishes_on(int i, int e) const { return e != i - 1 && e != i; }
};

}  // namespace

std::vector<double> stiffness_1d(const std::vector<double>& nodes, double r, double s) {
  const int M = static_cast<int>(nodes.size()) - 1;
  if (M < 2) throw std::invalid_argument("oracle: need at least 3 nodes");
  const double R = nodes.back();
  const double C = normalization_constant(1, s);
  const double p = 1.0 + 2.0 * s;
  Hats hats{nodes};
  auto in_omega = [&](int e) { return nodes[e] >= -r - 1e-12 && nodes[e + 1] <= r + 1e-12; };
  bq::tanh_sinh<double> ts(12);
  const int n = M - 1;
  std::vector<double> A(static_cast<std::size_t>(n) * n, 0.0);

  for (int i = 1; i < M; ++i)
    for (int j = i; j < M; ++j) {
      double total = 0.0;
      for (int e = 0; e < M; ++e) {
        if (!in_omega(e)) continue;
        // x in element e; dl = x - x_e, dr = x_{e+1} - x supplied accurately
        auto F = [&](double x, double xc) {
          const double len = nodes[e + 1] - nodes[e];
          double dl = x - nodes[e], dr = nodes[e + 1] - x;
          if (xc < 0.0) {
            dl = -xc;
            dr = len - dl;
          } else if (xc > 0.0) {
            dr = xc;
            dl = len - dr;
          }
          // F is bounded at the nodes; dropping a 1e-12 sliver keeps |x - y| representable
          if (dl <= 1e-12 * len || dr <= 1e-12 * len) return 0.0;
          const double pix = hats.value(i, e, x), pjx = hats.value(j, e, x);
          double acc = 0.0;
          // same element: D = s_i s_j (x - y)^2, integrated exactly
          const double ss = hats.slope(i, e) * hats.slope(j, e);
          if (ss != 0.0) acc += 0.5 * ss * (std::pow(dl, 2.0 - 2.0 * s) + std::pow(dr, 2.0 - 2.0 * s)) / (2.0 - 2.0 * s);
          for (int k = 0; k < M; ++k) {
            if (k == e) continue;
            if ((pix == 0.0 && hats.vanishes_on(i, k)) || (pjx == 0.0 && hats.vanishes_on(j, k))) continue;
            const double w = in_omega(k) ? 0.5 : 1.0;
            // |x - y| rebuilt from gaps so it stays positive when x rounds onto a node
            auto G = [&](double y, double yc) {
              const double to_left = yc < 0.0 ? -yc : y - nodes[k];
              const double to_right = yc > 0.0 ? yc : nodes[k + 1] - y;
              const double d = k < e ? (nodes[e] - nodes[k + 1]) + to_right + dl
                                     : (nodes[k] - nodes[e + 1]) + to_left + dr;
              const double num = (pix - hats.value(i, k, y)) * (pjx - hats.value(j, k, y));
              return num == 0.0 ? 0.0 : num * std::pow(d, -p);
            };
            acc += w * ts.integrate(G, nodes[k], nodes[k + 1], 1e-13);
          }
          // exterior of (-R, R): D = phi_i(x) phi_j(x)
          const double tail = (std::pow(R - x, -2.0 * s) + std::pow(R + x, -2.0 * s)) / (2.0 * s);
          acc += pix * pjx * tail;
          return acc;
        };
        total += ts.integrate(F, nodes[e], nodes[e + 1], 1e-11);
      }
      A[(i - 1) * n + (j - 1)] = A[(j - 1) * n + (i - 1)] = C * total;
    }
  return A;
}

double fractional_laplacian_getoor_1d(double x, double s) {
  x = std::abs(x);
  if (!(x < 1.0)) throw std::invalid_argument("oracle: |x| must be below 1");
  const double C = normalization_constant(1, s);
  const double q = 1.0 - x * x;
  const double ux = std::pow(q, s);
  // u(x) - u(x + t) for x + t inside, without cancellation
  auto diff = [&](double t) {
    const double dy2 = t * (2.0 * x + t);  // (x + t)^2 - x^2
    // clamp: x + t can round just past the endpoint
    return -ux * std::expm1(s * std::log1p(std::max(-1.0, -dy2 / q)));
  };
  const double upp = -2.0 * s * std::pow(q, s - 1.0) + 4.0 * s * (s - 1.0) * x * x * std::pow(q, s - 2.0);
  const double a = 1.0 - x, b = 1.0 + x;
  bq::tanh_sinh<double> ts(15);
  // [0, t0]: second difference = -u'' t^2 + O(t^4)
  const double t0 = 1e-4 * a;
  double I = -upp * std::pow(t0, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  I += ts.integrate([&](double t) { return (diff(t) + diff(-t)) * std::pow(t, -1.0 - 2.0 * s); }, t0, a, 1e-13);
  // x + t outside, x - t inside
  if (b > a)
    I += ts.integrate(
      [&](double t, double tc) {
        double tt = t;
        if (tc < 0.0) tt = a - tc;  // near a: t = a + |tc|
        return (ux + diff(-tt)) * std::pow(tt, -1.0 - 2.0 * s);
      },
      a, b, 1e-13);
  // both outside
  I += 2.0 * ux * std::pow(b, -2.0 * s) / (2.0 * s);
  return C * I;
}

namespace {

double poisson_constant(int dim, double s) {
  const double h = 0.5 * dim;
  return boost::math::tgamma(h) * std::sin(pi<double>() * s) / std::pow(pi<double>(), h + 1.0);
}

}  // namespace

double poisson_integral_2d(const std::array<double, 2>& x, double r, double s,
                           const std::function<double(double)>& g) {
  const double nx2 = x[0] * x[0] + x[1] * x[1];
  if (!(nx2 < r * r)) throw std::invalid_argument("oracle: x must lie inside the ball");
  const double c = poisson_constant(2, s) * std::pow(r * r - nx2, s);
  const double phi = std::atan2(x[1], x[0]);
  // rho^2 - r^2 passed separately for accuracy near the circle
  auto shell = [&](double rho, double excess) {
    auto ang = [&](double th) {
      const double dx = rho * std::cos(phi + th) - x[0], dy = rho * std::sin(phi + th) - x[1];
      return 1.0 / (dx * dx + dy * dy);
    };
    const double a = bq::gauss_kronrod<double, 61>::integrate(ang, -pi<double>(), pi<double>(), 25, 1e-13);
    return g(rho) * rho * std::pow(excess, -s) * a;
  };
  bq::tanh_sinh<double> ts(15);
  const double inner = ts.integrate(
      [&](double rho, double rc) {
        const double d = rc < 0.0 ? -rc : rho - r;  // distance to r
        if (d <= 0.0) return 0.0;
        return shell(r + d, d * (2.0 * r + d));
      },
      r, 2.0 * r, 1e-12);
  bq::exp_sinh<double> es;
  const double outer = es.integrate([&](double rho) { return shell(rho, rho * rho - r * r); }, 2.0 * r,
                                    std::numeric_limits<double>::infinity(), 1e-12);
  return c * (inner + outer);
}

double poisson_integral_1d(double x, double r, double s, const std::function<double(double)>& g) {
  if (!(std::abs(x) < r)) throw std::invalid_argument("oracle: x must lie inside the interval");
  const double c = poisson_constant(1, s) * std::pow(r * r - x * x, s);
  auto f = [&](double y, double excess) {
    return g(y) * std::pow(excess, -s) * (1.0 / std::abs(x - y) + 1.0 / std::abs(x + y));
  };
  bq::tanh_sinh<double> ts(15);
  const double inner = ts.integrate(
      [&](double y, double yc) {
        const double d = yc < 0.0 ? -yc : y - r;
        if (d <= 0.0) return 0.0;
        return f(r + d, d * (2.0 * r + d));
      },
      r, 2.0 * r, 1e-12);
  bq::exp_sinh<double> es;
  const double outer =
      es.integrate([&](double y) { return f(y, y * y - r * r); }, 2.0 * r, std::numeric_limits<double>::infinity(),
                   1e-12);
  return c * (inner + outer);
}

double seminorm_fourier_1d(const std::vector<double>& nodes, const std::vector<double>& values, double s) {
  const std::size_t m = nodes.size();
  if (m < 3 || values.size() != m) throw std::invalid_argument("oracle: bad nodal data");
  if (values.front() != 0.0 || values.back() != 0.0) throw std::invalid_argument("oracle: v must vanish at the ends");
  std::vector<double> slope(m - 1);
  for (std::size_t e = 0; e + 1 < m; ++e) slope[e] = (values[e + 1] - values[e]) / (nodes[e + 1] - nodes[e]);
  std::vector<double> c(m);
  for (std::size_t k = 0; k < m; ++k) c[k] = (k + 1 < m ? slope[k] : 0.0) - (k > 0 ? slope[k - 1] : 0.0);
  // sum c_k = sum c_k x_k = 0, so S(xi) = sum c_k (e^{-i xi x_k} - 1 + i xi x_k)
  auto S2 = [&](double xi) {
    std::complex<double> S = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double th = xi * nodes[k];
      const double sh = std::sin(0.5 * th);
      double th_minus_sin;
      if (std::abs(th) < 0.1) {
        const double t2 = th * th;
        th_minus_sin = th * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)));
      } else {
        th_minus_sin = th - std::sin(th);
      }
      S += c[k] * std::complex<double>(-2.0 * sh * sh, th_minus_sin);
    }
    return std::norm(S);
  };
  // S2 = O(xi^4) near 0; below 1e-20 the integrand is negligible and pow would overflow
  auto f = [&](double xi) { return xi <= 1e-20 ? 0.0 : std::pow(xi, 2.0 * s - 4.0) * S2(xi); };
  bq::tanh_sinh<double> ts(15);
  double I = ts.integrate(f, 0.0, 1.0, 1e-13);
  const double panel = 0.25;
  const double Lambda = 4.0e4;
  for (double a = 1.0; a < Lambda; a += panel) I += bq::gauss<double, 20>::integrate(f, a, a + panel);
  // beyond Lambda |S|^2 averages to sum c_k^2
  double c2 = 0.0;
  for (double v : c) c2 += v * v;
  I += c2 * std::pow(Lambda, 2.0 * s - 3.0) / (3.0 - 2.0 * s);
  return I / pi<double>();
}

}  // namespace fracmix::oracle
