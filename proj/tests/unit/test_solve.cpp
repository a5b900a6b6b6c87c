// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <sstream>

#include "fracmix/error.hpp"
#include "fracmix/harness.hpp"
#include "fracmix/reference.hpp"
#include "fracmix/solve.hpp"

namespace fracmix {
namespace {

const ScalarField kZero = [](const Point&) { return 0.0; };
const ScalarField kOne = [](const Point&) { return 1.0; };

struct Problem {
  std::shared_ptr<const Mesh> mesh;
  AssembledSystem sys;
};

Problem make(const DomainSpec& d, double h, double s, const ScalarField& f, const ScalarField& g) {
  Problem p;
  p.mesh = std::make_shared<Mesh>(build_mesh(d, h));
  p.sys = assemble(*p.mesh, s, f, g);
  return p;
}

TEST(Mixed, HomogeneousDataGiveZero) {
  const auto p = make(DomainSpec{2, 0.5, 1.0}, 0.2, 0.5, kZero, kZero);
  const auto sol = solve_mixed(p.sys, p.mesh);
  EXPECT_EQ(sol.u.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(sol.lambda.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Mixed, ResidualsAndConstraint) {
  for (double s : {0.2, 0.7}) {
    const auto p = make(DomainSpec{2, 0.5, 1.2}, 0.2, s, kOne,
                        [](const Point& x) { return std::exp(-x[0] * x[0] - 2.0 * x[1] * x[1]); });
    const auto sol = solve_mixed(p.sys, p.mesh);
    const Eigen::VectorXd ra = p.sys.A * sol.u - p.sys.B * sol.lambda - p.sys.F;
    const Eigen::VectorXd rb = p.sys.B.transpose() * sol.u - p.sys.G;
    const double tol = 1e-10 * (1.0 + p.sys.F.cwiseAbs().maxCoeff() + p.sys.G.cwiseAbs().maxCoeff());
    EXPECT_LT(ra.cwiseAbs().maxCoeff(), tol);
    EXPECT_LT(rb.cwiseAbs().maxCoeff(), tol);
    EXPECT_LE(sol.diag.residual_a, sol.diag.tolerance);
    EXPECT_LE(sol.diag.residual_b, sol.diag.tolerance);
    EXPECT_GE(sol.diag.min_pivot, 1e-14);
  }
}

TEST(Mixed, ZeroDatumMatchesDirect) {
  for (int dim : {1, 2}) {
    const auto p = dim == 1 ? make(DomainSpec{1, 1.0, 2.0}, 0.25, 0.4, kOne, kZero)
                            : make(DomainSpec{2, 0.5, 1.1}, 0.2, 0.4, kOne, kZero);
    const auto mixed = solve_mixed(p.sys, p.mesh);
    const auto direct = solve_direct(p.sys, p.mesh, kZero);
    const int nI = p.sys.dofs.num_interior;
    EXPECT_LT(mixed.u.tail(p.sys.dofs.num_exterior).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((mixed.u.head(nI) - direct.u.head(nI)).cwiseAbs().maxCoeff(), 1e-8 * direct.u.cwiseAbs().maxCoeff());
    EXPECT_EQ(direct.lambda.size(), 0);
  }
}

// N_s u ~ -c d^{-s} at distance d from the boundary. Its moments against the
// exterior hats are negative everywhere; the P1 multiplier itself can swing
// positive at the first node past the boundary (the L2 projection of d^{-s}
// does so for s = 3/4), so nodal signs are checked from the second layer on.
TEST(Mixed, MultiplierNegativeForHomogeneousGetoor) {
  for (double s : {0.25, 0.5, 0.75}) {
    const double h = 1.0 / 32;
    ExperimentConfig cfg = ExperimentConfig::defaults(ExperimentId::kGetoor1d);
    const double R = 1.0 + truncation_radius(h, cfg.cal, 1, s);
    const auto p = make(DomainSpec{1, 1.0, R}, h, s, kOne, kZero);
    const auto sol = solve_mixed(p.sys, p.mesh);
    const Eigen::MatrixXd M = Eigen::MatrixXd(p.sys.B).bottomRows(p.sys.dofs.num_exterior);
    const Eigen::VectorXd moments = M * sol.lambda;
    const auto u = [&](const Point& x) { return getoor_solution(1, s, 1.0, 1.0, x); };
    int checked = 0;
    for (int d = p.sys.dofs.num_interior; d < p.sys.dofs.size(); ++d) {
      const Point x = p.mesh->vertex(p.sys.dofs.dof_to_node[d]);
      const double ax = std::abs(x[0]);
      if (ax >= R - h - 1e-12) continue;
      const int k = p.sys.dofs.lambda_index(d);
      EXPECT_LT(moments[k], 0.0) << "s=" << s << " x=" << x[0];
      if (ax > 1.0 + 1.5 * h) {
        EXPECT_LT(sol.lambda[k], 0.0) << "s=" << s << " x=" << x[0];
        EXPECT_LT(nonlocal_derivative(u, x, 1.0, 1, s), 0.0);
      }
      ++checked;
    }
    EXPECT_GT(checked, 20);
  }
}

TEST(Direct, ImposesNodalDatum) {
  const auto g = [](const Point& x) { return 1.0 + 0.1 * x[0]; };
  const auto p = make(DomainSpec{1, 1.0, 2.0}, 0.25, 0.6, kZero, g);
  const auto sol = solve_direct(p.sys, p.mesh, g);
  for (int d = p.sys.dofs.num_interior; d < p.sys.dofs.size(); ++d)
    EXPECT_DOUBLE_EQ(sol.u[d], g(p.mesh->vertex(p.sys.dofs.dof_to_node[d])));
  EXPECT_LE(sol.diag.residual_a, sol.diag.tolerance);
}

TEST(MixedVsDirect, AgreeWithinDiscretizationError) {
  // exact solution kappa (4 - x^2)_+^s with f = 1 in Omega = (-1, 1); it
  // vanishes beyond R = 2, so truncation is exact
  const double s = 0.5, h = 1.0 / 32;
  const auto ref = ReferenceSolution::getoor_trace(1, s, 2.0);
  const ScalarField g = [&](const Point& x) { return ref.value(x); };
  const auto p = make(DomainSpec{1, 1.0, 2.0}, h, s, kOne, g);
  const auto mixed = solve_mixed(p.sys, p.mesh);
  const auto direct = solve_direct(p.sys, p.mesh, g);
  double gap = 0.0, err_m = 0.0, err_d = 0.0;
  for (int d = 0; d < p.sys.dofs.num_interior; ++d) {
    const double exact = ref.value(p.mesh->vertex(p.sys.dofs.dof_to_node[d]));
    gap = std::max(gap, std::abs(mixed.u[d] - direct.u[d]));
    err_m = std::max(err_m, std::abs(mixed.u[d] - exact));
    err_d = std::max(err_d, std::abs(direct.u[d] - exact));
  }
  EXPECT_LE(gap, std::max(err_m, err_d)) << err_m << " " << err_d;
  EXPECT_LT(err_m, 0.05);
}

TEST(ConstantDatum, InteriorTendsToOne) {
  ExperimentConfig cfg = ExperimentConfig::defaults(ExperimentId::kConstantDatumSanity);
  const auto run = run_single(cfg, 0.5, 1.0 / 32, cfg.cal);
  ASSERT_EQ(run.norms.front(), "max_node_dev");
  EXPECT_LE(run.row.values.front(), 0.05);
}

TEST(Evaluate, NodesBarycentersAndOuterSphere) {
  const auto p = make(DomainSpec{2, 0.5, 1.0}, 0.25, 0.5, kOne,
                      [](const Point& x) { return 1.0 - x[0] * x[0] - x[1] * x[1]; });
  const auto sol = solve_mixed(p.sys, p.mesh);
  const Mesh& m = *p.mesh;
  for (std::size_t i = 0; i < m.num_nodes(); i += 7) EXPECT_NEAR(evaluate_solution(sol, m.vertex(i)), sol.nodal(i), 1e-13);
  for (std::size_t c = 0; c < m.num_cells(); c += 5) {
    const auto& cell = m.cell(c);
    const double mean = (sol.nodal(cell[0]) + sol.nodal(cell[1]) + sol.nodal(cell[2])) / 3.0;
    EXPECT_NEAR(evaluate_solution(sol, m.cell_center(c)), mean, 1e-13);
  }
  EXPECT_EQ(evaluate_solution(sol, Point{1.0, 0.0}), 0.0);
  EXPECT_THROW(evaluate_solution(sol, Point{1.2, 0.0}), ValidationError);
}

TEST(SolutionCsv, HeaderAndRows) {
  const auto p = make(DomainSpec{1, 1.0, 2.0}, 0.5, 0.5, kOne, kZero);
  const auto sol = solve_mixed(p.sys, p.mesh);
  std::ostringstream os;
  write_solution_csv(os, sol);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "node_id,x,class,u,lambda");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, static_cast<int>(p.mesh->num_nodes()));
}

}  // namespace
}  // namespace fracmix
