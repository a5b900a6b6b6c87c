// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/solve.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "fracmix/error.hpp"

namespace fracmix {

double DiscreteSolution::nodal(std::size_t node) const {
  const int d = dofs.node_to_dof[node];
  return d < 0 ? 0.0 : u[d];
}

namespace {

constexpr double kPivotTol = 1e-14;

Eigen::VectorXd solve_interior(const Eigen::MatrixXd& AII, const Eigen::VectorXd& rhs, double& min_pivot) {
  if (AII.rows() == 0) {
    min_pivot = 1.0;
    return Eigen::VectorXd();
  }
  Eigen::LLT<Eigen::MatrixXd> llt(AII);
  if (llt.info() != Eigen::Success)
    throw NumericalError("solve: interior stiffness block is not positive definite");
  const Eigen::VectorXd d = llt.matrixLLT().diagonal().array().square();
  min_pivot = d.minCoeff() / d.maxCoeff();
  if (min_pivot < kPivotTol)
    throw NumericalError("solve: pivot below tolerance (relative " + std::to_string(min_pivot) + ")");
  return llt.solve(rhs);
}

Eigen::SparseMatrix<double> exterior_mass(const AssembledSystem& sys) {
  const int nI = sys.dofs.num_interior, nE = sys.dofs.num_exterior;
  Eigen::SparseMatrix<double> M = sys.B.block(nI, 0, nE, nE);
  return M;
}

}  // namespace

DiscreteSolution solve_mixed(const AssembledSystem& sys, std::shared_ptr<const Mesh> mesh) {
  const int nI = sys.dofs.num_interior, nE = sys.dofs.num_exterior, n = nI + nE;
  DiscreteSolution sol;
  sol.mesh = std::move(mesh);
  sol.dofs = sys.dofs;
  sol.u = Eigen::VectorXd::Zero(n);
  sol.lambda = Eigen::VectorXd::Zero(nE);

  Eigen::VectorXd uE = Eigen::VectorXd::Zero(nE);
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> mass;
  if (nE > 0) {
    const Eigen::SparseMatrix<double> M = exterior_mass(sys);
    mass.compute(M);
    if (mass.info() != Eigen::Success) throw NumericalError("solve: annulus mass matrix factorization failed");
    uE = mass.solve(sys.G);
  }
  Eigen::VectorXd rhs = sys.F.head(nI) - sys.A.block(0, nI, nI, nE) * uE;
  const Eigen::VectorXd uI = solve_interior(sys.A.topLeftCorner(nI, nI), rhs, sol.diag.min_pivot);
  sol.u.head(nI) = uI;
  sol.u.tail(nE) = uE;
  if (nE > 0) {
    const Eigen::VectorXd r = sys.A.bottomRows(nE) * sol.u - sys.F.tail(nE);
    sol.lambda = mass.solve(r);
  }

  sol.diag.residual_a = (sys.A * sol.u - sys.B * sol.lambda - sys.F).lpNorm<Eigen::Infinity>();
  sol.diag.residual_b = nE > 0 ? (sys.B.transpose() * sol.u - sys.G).lpNorm<Eigen::Infinity>() : 0.0;
  const double fn = sys.F.size() ? sys.F.lpNorm<Eigen::Infinity>() : 0.0;
  const double gn = sys.G.size() ? sys.G.lpNorm<Eigen::Infinity>() : 0.0;
  sol.diag.tolerance = 1e-10 * (1.0 + fn + gn);
  if (!(sol.diag.residual_a <= sol.diag.tolerance) || !(sol.diag.residual_b <= sol.diag.tolerance))
    throw NumericalError("solve: saddle-system residual above tolerance");
  return sol;
}

DiscreteSolution solve_direct(const AssembledSystem& sys, std::shared_ptr<const Mesh> mesh, const ScalarField& g) {
  const int nI = sys.dofs.num_interior, nE = sys.dofs.num_exterior, n = nI + nE;
  DiscreteSolution sol;
  sol.mesh = std::move(mesh);
  sol.dofs = sys.dofs;
  sol.u = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd uE(nE);
  for (int k = 0; k < nE; ++k) {
    uE[k] = g(sol.mesh->vertex(sys.dofs.dof_to_node[nI + k]));
    if (!std::isfinite(uE[k])) throw NumericalError("solve: exterior datum not finite at a node");
  }
  Eigen::VectorXd rhs = sys.F.head(nI) - sys.A.block(0, nI, nI, nE) * uE;
  sol.u.head(nI) = solve_interior(sys.A.topLeftCorner(nI, nI), rhs, sol.diag.min_pivot);
  sol.u.tail(nE) = uE;
  sol.diag.residual_a =
      nI > 0 ? (sys.A.topRows(nI) * sol.u - sys.F.head(nI)).lpNorm<Eigen::Infinity>() : 0.0;
  const double fn = sys.F.size() ? sys.F.lpNorm<Eigen::Infinity>() : 0.0;
  sol.diag.tolerance = 1e-10 * (1.0 + fn + (uE.size() ? uE.lpNorm<Eigen::Infinity>() : 0.0));
  if (!(sol.diag.residual_a <= sol.diag.tolerance)) throw NumericalError("solve: interior residual above tolerance");
  return sol;
}

double evaluate_solution(const DiscreteSolution& sol, const Point& x) {
  const Mesh& mesh = *sol.mesh;
  const double R = mesh.domain().R;
  const double rad = mesh.dim() == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
  require(rad <= R * (1.0 + 1e-12), "evaluate_solution: point outside the computational domain");
  const double tol = 1e-12;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cell(c);
    double lam[3] = {0.0, 0.0, 0.0};
    if (mesh.dim() == 1) {
      const double a = mesh.vertex(cell[0])[0], b = mesh.vertex(cell[1])[0];
      lam[1] = (x[0] - a) / (b - a);
      lam[0] = 1.0 - lam[1];
    } else {
      const Point& p0 = mesh.vertex(cell[0]);
      const Point& p1 = mesh.vertex(cell[1]);
      const Point& p2 = mesh.vertex(cell[2]);
      const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
      lam[1] = ((x[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (x[1] - p0[1])) / det;
      lam[2] = ((p1[0] - p0[0]) * (x[1] - p0[1]) - (x[0] - p0[0]) * (p1[1] - p0[1])) / det;
      lam[0] = 1.0 - lam[1] - lam[2];
    }
    bool inside = true;
    for (int a = 0; a < mesh.cell_size(); ++a) inside = inside && lam[a] >= -tol;
    if (!inside) continue;
    double v = 0.0;
    for (int a = 0; a < mesh.cell_size(); ++a) v += lam[a] * sol.nodal(cell[a]);
    return v;
  }
  // between the polygonal outer boundary and the sphere of radius R
  return 0.0;
}

void write_solution_csv(std::ostream& os, const DiscreteSolution& sol) {
  const Mesh& mesh = *sol.mesh;
  os << std::setprecision(17);
  os << (mesh.dim() == 1 ? "node_id,x,class,u,lambda\n" : "node_id,x,y,class,u,lambda\n");
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    os << i << ',' << mesh.vertex(i)[0] << ',';
    if (mesh.dim() == 2) os << mesh.vertex(i)[1] << ',';
    os << to_string(mesh.node_class(i)) << ',' << sol.nodal(i) << ',';
    const int d = sol.dofs.node_to_dof[i];
    if (d >= 0 && !sol.dofs.is_interior(d) && sol.lambda.size() > 0) os << sol.lambda[sol.dofs.lambda_index(d)];
    os << '\n';
  }
}

}  // namespace fracmix
