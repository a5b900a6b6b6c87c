// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "fracmix/geometry.hpp"

namespace fracmix::singular {

/// Local matrix over the union of the two cells' vertices:
///   m[a][b] = int_T int_T' (phi_a(x) - phi_a(y)) (phi_b(x) - phi_b(y)) |x - y|^{-exponent} dy dx
/// where phi are the P1 hat functions of the union.
///
/// Touching pairs are integrated in relative coordinates w in which x - y and
/// every phi_a(x) - phi_a(y) are linear, so the integrand is homogeneous in w.
/// The polytope of admissible w is cut into cones over simplicial faces of
/// {l(w) = 1}; along each ray the radial integral is a Beta function and only
/// the face integral is done numerically (collapsed Gauss, `order` points per
/// direction). Valid for exponent < n + 2.
struct LocalMatrix {
  int size = 0;
  double m[5][5] = {};
};

/// Same segment or triangle. Order: the cell's vertices.
LocalMatrix identical(const Point* v, int dim, double exponent, int order);

/// Triangles (v0, v1, v2) and (v0, v1, v3) sharing edge v0-v1.
/// Order: v0, v1, v2, v3.
LocalMatrix common_edge(const Point& v0, const Point& v1, const Point& v2, const Point& v3, double exponent,
                        int order);

/// Triangles (v, p1, p2) and (v, q1, q2) sharing only v. Order: v, p1, p2, q1, q2.
LocalMatrix common_vertex_2d(const Point& v, const Point& p1, const Point& p2, const Point& q1, const Point& q2,
                             double exponent, int order);

/// Segments (v, p) and (v, q) sharing v. Order: v, p, q.
LocalMatrix common_vertex_1d(const Point& v, const Point& p, const Point& q, double exponent, int order);

}  // namespace fracmix::singular
