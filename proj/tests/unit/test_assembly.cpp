// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <Eigen/Cholesky>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

#include "fracmix/assembly.hpp"
#include "fracmix/error.hpp"
#include "fracmix/oracle.hpp"

namespace fracmix {
namespace {

std::vector<int> nodes_by_x(const Mesh& m) {
  std::vector<int> order(m.num_nodes());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return m.vertex(a)[0] < m.vertex(b)[0]; });
  return order;
}

std::vector<double> xs(const Mesh& m, const std::vector<int>& order) {
  std::vector<double> x;
  for (int v : order) x.push_back(m.vertex(v)[0]);
  return x;
}

TEST(Stiffness1d, MatchesBruteForceOracleHalfStep) {
  const Mesh mesh = mesh_interval(DomainSpec{1, 1.0, 2.0}, 0.5);
  const DofMap dofs = DofMap::build(mesh);
  const auto order = nodes_by_x(mesh);
  for (double s : {0.5, 0.3, 0.8}) {
    const Eigen::MatrixXd A = assemble_a(mesh, dofs, s);
    const auto O = oracle::stiffness_1d(xs(mesh, order), 1.0, s);
    const int n = static_cast<int>(order.size()) - 2;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double o = O[i * n + j];
        EXPECT_NEAR(A(dofs.node_to_dof[order[i + 1]], dofs.node_to_dof[order[j + 1]]), o, 1e-5 * std::abs(o))
            << "s=" << s << " i=" << i << " j=" << j;
      }
  }
}

TEST(Stiffness1d, NonuniformNodesMatchOracle) {
  // interior refined differently from the annulus
  std::vector<double> x{-1.6, -1.0, -0.7, -0.2, 0.1, 0.6, 1.0, 1.25, 1.6};
  std::vector<Point> v;
  std::vector<NodeClass> cls;
  const DomainSpec d{1, 1.0, 1.6};
  for (double t : x) {
    v.push_back(Point{t, 0.0});
    cls.push_back(classify_point(v.back(), d));
  }
  std::vector<std::array<int, 3>> cells;
  for (int i = 0; i + 1 < static_cast<int>(x.size()); ++i) cells.push_back({i, i + 1, -1});
  const Mesh mesh(d, v, cells, cls);
  const DofMap dofs = DofMap::build(mesh);
  const double s = 0.35;
  const Eigen::MatrixXd A = assemble_a(mesh, dofs, s);
  const auto O = oracle::stiffness_1d(x, 1.0, s);
  const int n = static_cast<int>(x.size()) - 2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      EXPECT_NEAR(A(dofs.node_to_dof[i + 1], dofs.node_to_dof[j + 1]), O[i * n + j], 1e-5 * std::abs(O[i * n + j]));
}

TEST(Stiffness1d, EnergyOfInteriorFunctionsMatchesFourierSeminorm) {
  const Mesh mesh = mesh_interval(DomainSpec{1, 1.0, 2.0}, 0.25);
  const DofMap dofs = DofMap::build(mesh);
  const auto order = nodes_by_x(mesh);
  const auto x = xs(mesh, order);
  for (double s : {0.25, 0.5, 0.75}) {
    const Eigen::MatrixXd A = assemble_a(mesh, dofs, s);
    for (int trial = 0; trial < 2; ++trial) {
      std::vector<double> vals(x.size(), 0.0);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(dofs.size());
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (mesh.node_class(order[k]) != NodeClass::kInterior) continue;
        vals[k] = trial == 0 ? 1.0 - x[k] * x[k] : std::sin(3.0 * x[k]) + 0.3;
        v[dofs.node_to_dof[order[k]]] = vals[k];
      }
      const double fourier = oracle::seminorm_fourier_1d(x, vals, s);
      EXPECT_NEAR(v.dot(A * v), fourier, 1e-6 * fourier) << "s=" << s;
    }
  }
}

TEST(Stiffness, SymmetricAsAssembled) {
  const Mesh mesh = build_mesh(DomainSpec{2, 0.5, 1.2}, 0.2);
  const DofMap dofs = DofMap::build(mesh);
  const Eigen::MatrixXd A = assemble_a(mesh, dofs, 0.6);
  EXPECT_EQ((A - A.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Stiffness, InteriorBlockPositiveDefinite) {
  for (double s : {0.1, 0.5, 0.9}) {
    const Mesh mesh = build_mesh(DomainSpec{2, 0.5, 1.1}, 0.2);
    const DofMap dofs = DofMap::build(mesh);
    const Eigen::MatrixXd A = assemble_a(mesh, dofs, s);
    const int nI = dofs.num_interior;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A.topLeftCorner(nI, nI));
    EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0) << "s=" << s;
  }
}

TEST(Stiffness, ScalingLaw) {
  // A(t mesh) = t^{n - 2s} A(mesh)
  for (double s : {0.3, 0.7}) {
    for (double t : {2.0, 10.0}) {
      const Mesh a = mesh_interval(DomainSpec{1, 1.0, 2.0}, 1.0);
      const Mesh b = mesh_interval(DomainSpec{1, t, 2.0 * t}, t);
      ASSERT_EQ(a.num_nodes(), 5u);
      const Eigen::MatrixXd Aa = assemble_a(a, DofMap::build(a), s);
      const Eigen::MatrixXd Ab = assemble_a(b, DofMap::build(b), s);
      EXPECT_LT((Ab - std::pow(t, 1.0 - 2.0 * s) * Aa).cwiseAbs().maxCoeff(), 1e-8 * Ab.cwiseAbs().maxCoeff());
    }
    const Mesh a = build_mesh(DomainSpec{2, 0.5, 1.0}, 0.3);
    const Mesh b = build_mesh(DomainSpec{2, 1.5, 3.0}, 0.9);
    ASSERT_EQ(a.num_nodes(), b.num_nodes());
    const Eigen::MatrixXd Aa = assemble_a(a, DofMap::build(a), s);
    const Eigen::MatrixXd Ab = assemble_a(b, DofMap::build(b), s);
    EXPECT_LT((Ab - std::pow(3.0, 2.0 - 2.0 * s) * Aa).cwiseAbs().maxCoeff(), 1e-8 * Ab.cwiseAbs().maxCoeff());
  }
}

TEST(Stiffness, ThreadCountDoesNotChangeBits) {
  const Mesh mesh = build_mesh(DomainSpec{2, 0.5, 1.2}, 0.15);
  const DofMap dofs = DofMap::build(mesh);
  const Eigen::MatrixXd a = assemble_a(mesh, dofs, 0.45, {}, 1);
  const Eigen::MatrixXd b = assemble_a(mesh, dofs, 0.45, {}, 3);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(std::memcmp(a.data(), b.data(), sizeof(double) * a.size()), 0);
}

double doubling_gate(const Mesh& mesh, double s) {
  const DofMap dofs = DofMap::build(mesh);
  const QuadratureOptions base;
  const Eigen::MatrixXd a = assemble_a(mesh, dofs, s, base);
  const Eigen::MatrixXd b = assemble_a(mesh, dofs, s, base.doubled(mesh.dim()));
  return ((a - b).cwiseAbs().array() / b.cwiseAbs().array()).maxCoeff();
}

TEST(QuadratureGate, DoublingOrdersOn1dMesh) {
  const Mesh mesh = mesh_interval(DomainSpec{1, 1.0, 2.0}, 0.25);
  for (double s : {0.25, 0.5, 0.75}) EXPECT_LT(doubling_gate(mesh, s), 1e-6) << "s=" << s;
}

TEST(QuadratureGate, DoublingOrdersOnCoarse2dMesh) {
  // coarsest rung of the bounded-support ladder
  for (double s : {0.2, 0.5, 0.8}) {
    const double H = truncation_radius(0.2, TruncationRule{0.15, 1.0}, 2, s);
    const Mesh mesh = build_mesh(DomainSpec{2, 0.5, 0.5 + H}, 0.2);
    EXPECT_LT(doubling_gate(mesh, s), 1e-6) << "s=" << s;
  }
}

TEST(Mass, OneDimensionalEntries) {
  const Mesh mesh = mesh_interval(DomainSpec{1, 1.0, 2.0}, 0.5);
  const DofMap dofs = DofMap::build(mesh);
  const Eigen::MatrixXd B = Eigen::MatrixXd(assemble_b(mesh, dofs));
  auto dof_at = [&](double x) {
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i)
      if (std::abs(mesh.vertex(i)[0] - x) < 1e-12) return dofs.node_to_dof[i];
    return -1;
  };
  const int d15 = dof_at(1.5), d10 = dof_at(1.0), d05 = dof_at(0.5), d0 = dof_at(0.0);
  EXPECT_NEAR(B(d15, dofs.lambda_index(d15)), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(B(d10, dofs.lambda_index(d15)), 0.5 / 6.0, 1e-15);
  EXPECT_NEAR(B(d10, dofs.lambda_index(d10)), 0.5 / 3.0, 1e-15);  // one annulus cell only
  EXPECT_EQ(B.row(d05).cwiseAbs().sum(), 0.0);
  EXPECT_EQ(B.row(d0).cwiseAbs().sum(), 0.0);
}

TEST(Mass, ColumnSumsAreHatIntegrals) {
  const Mesh mesh = build_mesh(DomainSpec{2, 0.6, 1.4}, 0.2);
  const DofMap dofs = DofMap::build(mesh);
  const auto B = assemble_b(mesh, dofs);
  Eigen::VectorXd hat_int = Eigen::VectorXd::Zero(dofs.num_exterior);
  double annulus = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (mesh.cell_in_omega(c)) continue;
    annulus += mesh.cell_measure(c);
    // rows only exist for nodes with a dof, so sum_i phi_i drops the outer-boundary hats:
    // int_T mu_j sum_i phi_i = |T| (1 + #dof vertices of T) / 12
    int with_dof = 0;
    for (int k = 0; k < 3; ++k) with_dof += dofs.node_to_dof[mesh.cell(c)[k]] >= 0;
    for (int k = 0; k < 3; ++k) {
      const int d = dofs.node_to_dof[mesh.cell(c)[k]];
      if (d >= dofs.num_interior) hat_int[dofs.lambda_index(d)] += mesh.cell_measure(c) * (1.0 + with_dof) / 12.0;
    }
  }
  const Eigen::VectorXd colsum = Eigen::RowVectorXd::Ones(dofs.size()) * B;
  EXPECT_LT((colsum - hat_int).cwiseAbs().maxCoeff(), 1e-14);
  // interior rows of B only come from nodes on the inner circle, which are exterior
  for (int d = 0; d < dofs.num_interior; ++d) EXPECT_EQ(B.row(d).norm(), 0.0);
  EXPECT_LT(hat_int.sum(), annulus);
}

TEST(Load, ConstantRightHandSide1d) {
  const Mesh mesh = mesh_interval(DomainSpec{1, 1.0, 2.0}, 0.25);
  const DofMap dofs = DofMap::build(mesh);
  const Eigen::VectorXd F = assemble_F(mesh, dofs, [](const Point&) { return 1.0; });
  for (int d = 0; d < dofs.num_interior; ++d) EXPECT_NEAR(F[d], 0.25, 1e-15);
  // x = +-1 gets only its Omega half
  for (int d = dofs.num_interior; d < dofs.size(); ++d)
    EXPECT_NEAR(F[d], std::abs(std::abs(mesh.vertex(dofs.dof_to_node[d])[0]) - 1.0) < 1e-12 ? 0.125 : 0.0, 1e-15);
}

TEST(Load, ZeroDatum) {
  const Mesh mesh = build_mesh(DomainSpec{2, 1.0, 1.5}, 0.25);
  const DofMap dofs = DofMap::build(mesh);
  EXPECT_EQ(assemble_G(mesh, dofs, [](const Point&) { return 0.0; }).norm(), 0.0);
}

TEST(Load, DatumIntegralsMatchAdaptiveQuadrature) {
  namespace bq = boost::math::quadrature;
  const Mesh mesh = build_mesh(DomainSpec{2, 1.0, 2.0}, 0.4);
  const DofMap dofs = DofMap::build(mesh);
  auto g = [](const Point& x) { return std::pow(x[0] * x[0] + x[1] * x[1], -2.0); };
  const Eigen::VectorXd G = assemble_G(mesh, dofs, g);
  Eigen::VectorXd ref = Eigen::VectorXd::Zero(dofs.num_exterior);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (mesh.cell_in_omega(c)) continue;
    const auto& cell = mesh.cell(c);
    const Point &a = mesh.vertex(cell[0]), &b = mesh.vertex(cell[1]), &d = mesh.vertex(cell[2]);
    for (int k = 0; k < 3; ++k) {
      const int dof = dofs.node_to_dof[cell[k]];
      if (dof < dofs.num_interior) continue;
      auto outer = [&](double u) {
        auto inner = [&](double v) {
          const Point x{a[0] + u * (b[0] - a[0]) + v * (d[0] - a[0]), a[1] + u * (b[1] - a[1]) + v * (d[1] - a[1])};
          const double lam = k == 0 ? 1.0 - u - v : k == 1 ? u : v;
          return g(x) * lam;
        };
        return bq::gauss_kronrod<double, 15>::integrate(inner, 0.0, 1.0 - u, 15, 1e-13);
      };
      ref[dofs.lambda_index(dof)] +=
          2.0 * mesh.cell_measure(c) * bq::gauss_kronrod<double, 15>::integrate(outer, 0.0, 1.0, 15, 1e-13);
    }
  }
  for (int j = 0; j < dofs.num_exterior; ++j) EXPECT_NEAR(G[j], ref[j], 1e-6 * std::abs(ref[j])) << j;
}

TEST(Load, NonFiniteDataRejected) {
  const Mesh mesh = mesh_interval(DomainSpec{1, 1.0, 2.0}, 0.5);
  const DofMap dofs = DofMap::build(mesh);
  EXPECT_THROW(assemble_F(mesh, dofs, [](const Point&) { return std::nan(""); }), NumericalError);
  EXPECT_THROW(assemble_G(mesh, dofs, [](const Point&) { return INFINITY; }), NumericalError);
}

TEST(DofMap, InteriorFirstOuterBoundaryExcluded) {
  const Mesh mesh = build_mesh(DomainSpec{2, 0.5, 1.0}, 0.2);
  const DofMap dofs = DofMap::build(mesh);
  EXPECT_EQ(dofs.num_interior, static_cast<int>(mesh.count(NodeClass::kInterior)));
  EXPECT_EQ(dofs.num_exterior, static_cast<int>(mesh.count(NodeClass::kExterior)));
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    const int d = dofs.node_to_dof[i];
    switch (mesh.node_class(i)) {
      case NodeClass::kInterior:
        EXPECT_TRUE(d >= 0 && dofs.is_interior(d));
        break;
      case NodeClass::kExterior:
        EXPECT_TRUE(d >= dofs.num_interior);
        break;
      case NodeClass::kBoundaryOuter:
        EXPECT_EQ(d, -1);
        break;
    }
    if (d >= 0) {
      EXPECT_EQ(dofs.dof_to_node[d], static_cast<int>(i));
    }
  }
}

TEST(WriteMatrix, UpperTriangleTriples) {
  Eigen::MatrixXd A(2, 2);
  A << 2.0, -0.5, -0.5, 1.0;
  std::ostringstream os;
  write_matrix(os, A);
  EXPECT_EQ(os.str(), "0 0 2\n0 1 -0.5\n1 1 1\n");
}

}  // namespace
}  // namespace fracmix
