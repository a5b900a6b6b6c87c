// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fracmix/quadrature.hpp"
#include "fracmix/singular.hpp"

namespace fracmix {
namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

TEST(GaussLegendre, ExactForPolynomials) {
  for (int n : {1, 3, 6, 12}) {
    const auto& g = quad::gauss_legendre(n);
    for (int k = 0; k < 2 * n; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < g.x.size(); ++i) sum += g.w[i] * std::pow(g.x[i], k);
      EXPECT_NEAR(sum, 1.0 / (k + 1), 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(CollapsedSimplex, ExactForMonomials) {
  const auto& rule = quad::collapsed_simplex(2, 5);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 8; ++b) {
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.w.size(); ++q) sum += rule.w[q] * std::pow(rule.x[q][0], a) * std::pow(rule.x[q][1], b);
      EXPECT_NEAR(sum, factorial(a) * factorial(b) / factorial(a + b + 2), 1e-15);
    }
  const auto& tet = quad::collapsed_simplex(3, 4);
  double vol = 0.0, xyz = 0.0;
  for (std::size_t q = 0; q < tet.w.size(); ++q) {
    vol += tet.w[q];
    xyz += tet.w[q] * tet.x[q][0] * tet.x[q][1] * tet.x[q][2];
  }
  EXPECT_NEAR(vol, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(xyz, 1.0 / 720.0, 1e-16);
}

// Brute-force product rule over T x T' for non-singular exponents.
struct Cell {
  std::vector<Point> v;
};

double bary(const Cell& c, int k, const Point& x, int dim) {
  if (dim == 1) {
    const double t = (x[0] - c.v[0][0]) / (c.v[1][0] - c.v[0][0]);
    return k == 0 ? 1.0 - t : t;
  }
  const Point& a = c.v[0];
  const Point& b = c.v[1];
  const Point& d = c.v[2];
  const double det = (b[0] - a[0]) * (d[1] - a[1]) - (d[0] - a[0]) * (b[1] - a[1]);
  const double l1 = ((x[0] - a[0]) * (d[1] - a[1]) - (d[0] - a[0]) * (x[1] - a[1])) / det;
  const double l2 = ((b[0] - a[0]) * (x[1] - a[1]) - (x[0] - a[0]) * (b[1] - a[1])) / det;
  return k == 0 ? 1.0 - l1 - l2 : k == 1 ? l1 : l2;
}

// phi of global node `node` restricted to cell c
double hat(const Cell& c, const Point& node, const Point& x, int dim) {
  for (int k = 0; k < static_cast<int>(c.v.size()); ++k)
    if (c.v[k] == node) return bary(c, k, x, dim);
  return 0.0;
}

std::vector<std::pair<Point, double>> points(const Cell& c, int dim) {
  const auto& rule = quad::collapsed_simplex(dim, 8);
  std::vector<std::pair<Point, double>> out;
  double measure;
  if (dim == 1) {
    measure = std::abs(c.v[1][0] - c.v[0][0]);
  } else {
    measure = 0.5 * std::abs((c.v[1][0] - c.v[0][0]) * (c.v[2][1] - c.v[0][1]) -
                             (c.v[2][0] - c.v[0][0]) * (c.v[1][1] - c.v[0][1]));
  }
  const double ref = dim == 1 ? 1.0 : 2.0;
  for (std::size_t q = 0; q < rule.w.size(); ++q) {
    Point x = c.v[0];
    for (int k = 0; k < dim; ++k)
      for (int d = 0; d < 2; ++d) x[d] += rule.x[q][k] * (c.v[k + 1][d] - c.v[0][d]);
    out.push_back({x, rule.w[q] * measure * ref});
  }
  return out;
}

singular::LocalMatrix product_reference(const Cell& T, const Cell& S, const std::vector<Point>& nodes, int dim,
                                        double exponent) {
  singular::LocalMatrix m;
  m.size = static_cast<int>(nodes.size());
  const auto px = points(T, dim), py = points(S, dim);
  for (const auto& [x, wx] : px)
    for (const auto& [y, wy] : py) {
      const double r2 = (x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]);
      const double k = std::pow(r2, -0.5 * exponent);
      for (int a = 0; a < m.size; ++a)
        for (int b = 0; b < m.size; ++b)
          m.m[a][b] += wx * wy * k * (hat(T, nodes[a], x, dim) - hat(S, nodes[a], y, dim)) *
                       (hat(T, nodes[b], x, dim) - hat(S, nodes[b], y, dim));
    }
  return m;
}

void expect_close(const singular::LocalMatrix& a, const singular::LocalMatrix& b, double tol) {
  ASSERT_EQ(a.size, b.size);
  double scale = 0.0;
  for (int i = 0; i < a.size; ++i)
    for (int j = 0; j < a.size; ++j) scale = std::max(scale, std::abs(b.m[i][j]));
  for (int i = 0; i < a.size; ++i)
    for (int j = 0; j < a.size; ++j) EXPECT_NEAR(a.m[i][j], b.m[i][j], tol * scale) << i << "," << j;
}

const Point kA{0.1, -0.2}, kB{0.9, 0.05}, kC{0.35, 0.7}, kD{0.8, -0.75}, kE{-0.6, -0.1}, kF{-0.3, -0.9};

class ConeRuleExactness : public ::testing::TestWithParam<double> {};

TEST_P(ConeRuleExactness, IdenticalTriangle) {
  const double e = GetParam();
  const Point v[3] = {kA, kB, kC};
  const Cell T{{kA, kB, kC}};
  expect_close(singular::identical(v, 2, e, 6), product_reference(T, T, {kA, kB, kC}, 2, e), 1e-12);
}

TEST_P(ConeRuleExactness, CommonEdge) {
  const double e = GetParam();
  const Cell T{{kA, kB, kC}}, S{{kA, kB, kD}};
  expect_close(singular::common_edge(kA, kB, kC, kD, e, 6), product_reference(T, S, {kA, kB, kC, kD}, 2, e), 1e-12);
}

TEST_P(ConeRuleExactness, CommonVertex2d) {
  const double e = GetParam();
  const Cell T{{kA, kB, kC}}, S{{kA, kE, kF}};
  expect_close(singular::common_vertex_2d(kA, kB, kC, kE, kF, e, 6),
               product_reference(T, S, {kA, kB, kC, kE, kF}, 2, e), 1e-12);
}

TEST_P(ConeRuleExactness, Intervals) {
  const double e = GetParam();
  const Point p{-0.4, 0.0}, v{0.2, 0.0}, q{1.3, 0.0};
  const Point seg[2] = {p, v};
  expect_close(singular::identical(seg, 1, e, 6), product_reference(Cell{{p, v}}, Cell{{p, v}}, {p, v}, 1, e), 1e-12);
  expect_close(singular::common_vertex_1d(v, p, q, e, 6),
               product_reference(Cell{{v, p}}, Cell{{v, q}}, {v, p, q}, 1, e), 1e-12);
}

// exponent 0 and -2 make the integrand polynomial
INSTANTIATE_TEST_SUITE_P(PolynomialExponents, ConeRuleExactness, ::testing::Values(0.0, -2.0));

TEST(ConeRule, SingularExponentConverges) {
  for (double s : {0.1, 0.5, 0.9}) {
    const double e = 2.0 + 2.0 * s;
    const Point v[3] = {kA, kB, kC};
    expect_close(singular::identical(v, 2, e, 12), singular::identical(v, 2, e, 24), 1e-9);
    expect_close(singular::common_edge(kA, kB, kC, kD, e, 12), singular::common_edge(kA, kB, kC, kD, e, 24), 1e-9);
    expect_close(singular::common_vertex_2d(kA, kB, kC, kE, kF, e, 12),
                 singular::common_vertex_2d(kA, kB, kC, kE, kF, e, 24), 1e-9);
  }
}

TEST(ConeRule, LocalMatrixSymmetricWithZeroRowSums) {
  // constants are in the kernel of (phi(x) - phi(y)) on the union of the two cells
  const auto m = singular::common_edge(kA, kB, kC, kD, 3.0, 10);
  for (int a = 0; a < m.size; ++a) {
    double row = 0.0;
    for (int b = 0; b < m.size; ++b) {
      EXPECT_DOUBLE_EQ(m.m[a][b], m.m[b][a]);
      row += m.m[a][b];
    }
    EXPECT_NEAR(row, 0.0, 1e-12 * m.m[a][a]);
  }
}

}  // namespace
}  // namespace fracmix
