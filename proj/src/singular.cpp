// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/singular.hpp"

#include <cmath>
#include <span>

#include "fracmix/error.hpp"
#include "fracmix/quadrature.hpp"

namespace fracmix::singular {

namespace {

template <int M>
using Face = std::array<std::array<double, M>, M>;

template <int M>
double det(const Face<M>& f) {
  if constexpr (M == 1) {
    return f[0][0];
  } else if constexpr (M == 2) {
    return f[0][0] * f[1][1] - f[0][1] * f[1][0];
  } else if constexpr (M == 3) {
    return f[0][0] * (f[1][1] * f[2][2] - f[1][2] * f[2][1]) - f[0][1] * (f[1][0] * f[2][2] - f[1][2] * f[2][0]) +
           f[0][2] * (f[1][0] * f[2][1] - f[1][1] * f[2][0]);
  } else {
    static_assert(M == 4);
    double total = 0.0;
    for (int c = 0; c < 4; ++c) {
      Face<3> minor{};
      for (int i = 1; i < 4; ++i)
        for (int j = 0, jj = 0; j < 4; ++j) {
          if (j == c) continue;
          minor[i - 1][jj++] = f[i][j];
        }
      total += ((c % 2 == 0) ? 1.0 : -1.0) * f[0][c] * det<3>(minor);
    }
    return total;
  }
}

// Integrates F over the cones {rho * p : p in face, 0 < rho < 1} of all faces,
// without the radial factor. F(w, d, z) writes the basis differences d and
// the physical x - y.
template <int M, class Map>
void integrate_faces(std::span<const Face<M>> faces, int order, double exponent, int nloc, Map&& map,
                     double acc[5][5]) {
  const int fdim = M - 1;
  for (const auto& face : faces) {
    const double jac = std::abs(det<M>(face));
    auto eval = [&](const std::array<double, M>& w, double wt) {
      double d[5] = {};
      double z[2] = {};
      map(w, d, z);
      const double r2 = z[0] * z[0] + z[1] * z[1];
      const double k = wt * jac * std::pow(r2, -0.5 * exponent);
      for (int a = 0; a < nloc; ++a)
        for (int b = 0; b < nloc; ++b) acc[a][b] += k * d[a] * d[b];
    };
    if (fdim == 0) {
      eval(face[0], 1.0);
      continue;
    }
    const auto& rule = quad::collapsed_simplex(fdim, order);
    for (std::size_t q = 0; q < rule.w.size(); ++q) {
      std::array<double, M> w{};
      double lam0 = 1.0;
      for (int k = 0; k < fdim; ++k) lam0 -= rule.x[q][k];
      for (int i = 0; i < M; ++i) {
        w[i] = lam0 * face[0][i];
        for (int k = 0; k < fdim; ++k) w[i] += rule.x[q][k] * face[k + 1][i];
      }
      eval(w, rule.w[q]);
    }
  }
}

void check_exponent(double exponent, int dim) {
  require(exponent < dim + 2.0, "singular quadrature: kernel exponent must be below n + 2");
}

double beta(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

// Radial factor: int_0^1 rho^{m - 1 + delta} (1 - rho)^k d rho with delta the
// homogeneity degree 2 - exponent.
double radial(int m, int k, double exponent) { return beta(m + 2.0 - exponent, k + 1.0); }

void scale(LocalMatrix& out, double f) {
  for (int a = 0; a < out.size; ++a)
    for (int b = 0; b < out.size; ++b) out.m[a][b] *= f;
}

}  // namespace

LocalMatrix identical(const Point* v, int dim, double exponent, int order) {
  check_exponent(exponent, dim);
  LocalMatrix out;
  if (dim == 1) {
    // w = a - b in [-1, 1]; leftover length 1 - |w|.
    out.size = 2;
    const double J = v[1][0] - v[0][0];
    static const Face<1> faces[2] = {{{{1.0}}}, {{{-1.0}}}};
    integrate_faces<1>(faces, order, exponent, 2,
                       [&](const std::array<double, 1>& w, double* d, double* z) {
                         d[0] = -w[0];
                         d[1] = w[0];
                         z[0] = J * w[0];
                       },
                       out.m);
    scale(out, radial(1, 1, exponent) * J * J);
    return out;
  }
  // w = a - b in reference coordinates; overlap area (1/2)(1 - l(w))^2 with
  // l(w) = max(0, -w1 - w2) + max(0, w1) + max(0, w2). {l = 1} is a hexagon.
  out.size = 3;
  const double J[2][2] = {{v[1][0] - v[0][0], v[2][0] - v[0][0]}, {v[1][1] - v[0][1], v[2][1] - v[0][1]}};
  const double detJ = std::abs(J[0][0] * J[1][1] - J[0][1] * J[1][0]);
  static const std::array<double, 2> hex[6] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  Face<2> faces[6];
  for (int i = 0; i < 6; ++i) faces[i] = {hex[i], hex[(i + 1) % 6]};
  integrate_faces<2>(faces, order, exponent, 3,
                     [&](const std::array<double, 2>& w, double* d, double* z) {
                       d[0] = -w[0] - w[1];
                       d[1] = w[0];
                       d[2] = w[1];
                       z[0] = J[0][0] * w[0] + J[0][1] * w[1];
                       z[1] = J[1][0] * w[0] + J[1][1] * w[1];
                     },
                     out.m);
  scale(out, 0.5 * radial(2, 2, exponent) * detJ * detJ);
  return out;
}

LocalMatrix common_edge(const Point& v0, const Point& v1, const Point& v2, const Point& v3, double exponent,
                        int order) {
  check_exponent(exponent, 2);
  // x = v0 + a1 e + a2 (v2 - v0), y = v0 + b1 e + b2 (v3 - v0), w = (a1 - b1, a2, b2).
  // For fixed w the admissible a1 form an interval of length 1 - l(w),
  // l(w) = max(0, u) + max(a2, b2 - u).
  const double e[2] = {v1[0] - v0[0], v1[1] - v0[1]};
  const double p[2] = {v2[0] - v0[0], v2[1] - v0[1]};
  const double q[2] = {v3[0] - v0[0], v3[1] - v0[1]};
  static const Face<3> faces[6] = {
      // u >= 0, a2 >= b2 - u: top u + a2 = 1 (square, two triangles)
      {{{0, 1, 0}, {1, 0, 0}, {1, 0, 1}}},
      {{{0, 1, 0}, {1, 0, 1}, {0, 1, 1}}},
      // u >= 0, a2 <= b2 - u: top b2 = 1
      {{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}},
      // u <= 0, a2 >= b2 - u: top a2 = 1
      {{{0, 1, 0}, {-1, 1, 0}, {0, 1, 1}}},
      // u <= 0, a2 <= b2 - u: top b2 - u = 1 (square)
      {{{0, 0, 1}, {-1, 0, 0}, {-1, 1, 0}}},
      {{{0, 0, 1}, {-1, 1, 0}, {0, 1, 1}}},
  };
  LocalMatrix out;
  out.size = 4;
  integrate_faces<3>(faces, order, exponent, 4,
                     [&](const std::array<double, 3>& w, double* d, double* z) {
                       const double u = w[0], a2 = w[1], b2 = w[2];
                       d[0] = -u - a2 + b2;
                       d[1] = u;
                       d[2] = a2;
                       d[3] = -b2;
                       z[0] = u * e[0] + a2 * p[0] - b2 * q[0];
                       z[1] = u * e[1] + a2 * p[1] - b2 * q[1];
                     },
                     out.m);
  const double detT = std::abs(e[0] * p[1] - e[1] * p[0]);
  const double detS = std::abs(e[0] * q[1] - e[1] * q[0]);
  scale(out, radial(3, 1, exponent) * detT * detS);
  return out;
}

LocalMatrix common_vertex_2d(const Point& v, const Point& p1, const Point& p2, const Point& q1, const Point& q2,
                             double exponent, int order) {
  check_exponent(exponent, 2);
  // w = (a1, a2, b1, b2); T x T' = {max(|a|_1, |b|_1) <= 1}. Two pieces by
  // which norm attains the max; each top face is a segment x triangle prism
  // cut into three tetrahedra.
  const double P1[2] = {p1[0] - v[0], p1[1] - v[1]}, P2[2] = {p2[0] - v[0], p2[1] - v[1]};
  const double Q1[2] = {q1[0] - v[0], q1[1] - v[1]}, Q2[2] = {q2[0] - v[0], q2[1] - v[1]};
  using W = std::array<double, 4>;
  auto prism = [](bool a_on_top) {
    const std::array<double, 2> seg[2] = {{1, 0}, {0, 1}};
    const std::array<double, 2> tri[3] = {{0, 0}, {1, 0}, {0, 1}};
    auto pt = [&](int s, int t) {
      return a_on_top ? W{seg[s][0], seg[s][1], tri[t][0], tri[t][1]}
                      : W{tri[t][0], tri[t][1], seg[s][0], seg[s][1]};
    };
    // A_i = pt(0, i), B_i = pt(1, i)
    return std::array<Face<4>, 3>{Face<4>{pt(0, 0), pt(0, 1), pt(0, 2), pt(1, 2)},
                                  Face<4>{pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 2)},
                                  Face<4>{pt(0, 0), pt(1, 0), pt(1, 1), pt(1, 2)}};
  };
  const auto top_a = prism(true);
  const auto top_b = prism(false);
  Face<4> faces[6] = {top_a[0], top_a[1], top_a[2], top_b[0], top_b[1], top_b[2]};
  LocalMatrix out;
  out.size = 5;
  integrate_faces<4>(faces, order, exponent, 5,
                     [&](const W& w, double* d, double* z) {
                       d[0] = -(w[0] + w[1]) + (w[2] + w[3]);
                       d[1] = w[0];
                       d[2] = w[1];
                       d[3] = -w[2];
                       d[4] = -w[3];
                       z[0] = w[0] * P1[0] + w[1] * P2[0] - w[2] * Q1[0] - w[3] * Q2[0];
                       z[1] = w[0] * P1[1] + w[1] * P2[1] - w[2] * Q1[1] - w[3] * Q2[1];
                     },
                     out.m);
  const double detT = std::abs(P1[0] * P2[1] - P1[1] * P2[0]);
  const double detS = std::abs(Q1[0] * Q2[1] - Q1[1] * Q2[0]);
  scale(out, radial(4, 0, exponent) * detT * detS);
  return out;
}

LocalMatrix common_vertex_1d(const Point& v, const Point& p, const Point& q, double exponent, int order) {
  check_exponent(exponent, 1);
  // x = v + a (p - v), y = v + b (q - v), w = (a, b), top face max(a, b) = 1.
  const double P = p[0] - v[0], Q = q[0] - v[0];
  static const Face<2> faces[2] = {{{{1, 0}, {1, 1}}}, {{{0, 1}, {1, 1}}}};
  LocalMatrix out;
  out.size = 3;
  integrate_faces<2>(faces, order, exponent, 3,
                     [&](const std::array<double, 2>& w, double* d, double* z) {
                       d[0] = -w[0] + w[1];
                       d[1] = w[0];
                       d[2] = -w[1];
                       z[0] = w[0] * P - w[1] * Q;
                     },
                     out.m);
  scale(out, radial(2, 0, exponent) * std::abs(P) * std::abs(Q));
  return out;
}

}  // namespace fracmix::singular
