// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

namespace fracmix::quad {

/// Gauss-Legendre rule on [0, 1].
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre rule with n points mapped to [0, 1]. Cached per n.
const Rule1D& gauss_legendre(int n);

/// Rule on the reference simplex of dimension d (vertices 0, e_1, ..., e_d),
/// stored as barycentric-free reference coordinates. Weights sum to 1/d!.
struct SimplexRule {
  int dim = 0;
  std::vector<std::array<double, 3>> x;  // first `dim` entries used
  std::vector<double> w;
};

/// Collapsed (Duffy) tensor Gauss rule with q points per direction; exact for
/// polynomials of degree 2q - 2 or better.
const SimplexRule& collapsed_simplex(int dim, int q);

}  // namespace fracmix::quad
