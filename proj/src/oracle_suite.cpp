// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fracmix/assembly.hpp"
#include "fracmix/oracle.hpp"
#include "fracmix/reference.hpp"

namespace fracmix::suite {

Deviation stiffness_1d(double s, double h, double r, double R) {
  const Mesh mesh = mesh_interval(DomainSpec{1, r, R}, h);
  const DofMap dofs = DofMap::build(mesh);
  const Eigen::MatrixXd A = assemble_a(mesh, dofs, s);

  std::vector<int> order(mesh.num_nodes());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return mesh.vertex(a)[0] < mesh.vertex(b)[0]; });
  std::vector<double> x;
  for (int v : order) x.push_back(mesh.vertex(v)[0]);
  const auto O = oracle::stiffness_1d(x, r, s);
  const int n = static_cast<int>(x.size()) - 2;

  Deviation d;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int di = dofs.node_to_dof[order[i + 1]], dj = dofs.node_to_dof[order[j + 1]];
      const double o = O[i * n + j];
      d.max_rel = std::max(d.max_rel, std::abs(A(di, dj) - o) / std::abs(o));
      ++d.checked;
    }
  return d;
}

Deviation getoor_1d(double s) {
  Deviation d;
  const double kappa = getoor_constant(1, s);
  for (double x : {0.0, 0.5, 0.9}) {
    d.max_rel = std::max(d.max_rel, std::abs(kappa * oracle::fractional_laplacian_getoor_1d(x, s) - 1.0));
    ++d.checked;
  }
  return d;
}

Deviation poisson_normalization(double s) {
  Deviation d;
  auto one = [](double) { return 1.0; };
  for (double x : {0.0, 0.3, -0.55, 0.8, 0.95}) {
    d.max_rel = std::max(d.max_rel, std::abs(poisson_solution(Point{x, 0.0}, one, 1.0, 1, s) - 1.0));
    d.max_rel = std::max(d.max_rel, std::abs(oracle::poisson_integral_1d(x, 1.0, s, one) - 1.0));
    ++d.checked;
  }
  for (Point x : {Point{0.0, 0.0}, Point{0.3, 0.2}, Point{-0.5, 0.4}, Point{0.1, -0.85}, Point{0.7, 0.65}}) {
    d.max_rel = std::max(d.max_rel, std::abs(poisson_solution(x, one, 1.0, 2, s) - 1.0));
    d.max_rel = std::max(d.max_rel, std::abs(oracle::poisson_integral_2d({x[0], x[1]}, 1.0, s, one) - 1.0));
    ++d.checked;
  }
  return d;
}

}  // namespace fracmix::suite
