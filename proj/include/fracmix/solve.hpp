// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>

#include "fracmix/assembly.hpp"

namespace fracmix {

struct SolverDiagnostics {
  double residual_a = 0.0;  // ||A u - B lambda - F||_inf (interior rows only for the direct method)
  double residual_b = 0.0;  // ||B^T u - G||_inf
  double tolerance = 0.0;
  double min_pivot = 0.0;   // smallest Cholesky pivot of A_II, relative to the largest
};

struct DiscreteSolution {
  std::shared_ptr<const Mesh> mesh;
  DofMap dofs;
  Eigen::VectorXd u;       // all dofs
  Eigen::VectorXd lambda;  // exterior dofs; empty for the direct method
  SolverDiagnostics diag;

  /// Nodal value (0 on the outer boundary).
  double nodal(std::size_t node) const;
};

/// Saddle system [[A, -B], [B^T, 0]] [u; lambda] = [F; G]. B vanishes on
/// interior rows and its exterior block M is the annulus mass matrix, so the
/// system is solved by block elimination: u_E = M^{-1} G,
/// A_II u_I = F_I - A_IE u_E, lambda = M^{-1} (A_EI u_I + A_EE u_E - F_E).
DiscreteSolution solve_mixed(const AssembledSystem& sys, std::shared_ptr<const Mesh> mesh);

/// Exterior dofs fixed to the nodal values of g; solves the interior block.
DiscreteSolution solve_direct(const AssembledSystem& sys, std::shared_ptr<const Mesh> mesh, const ScalarField& g);

/// P1 interpolant at x; 0 on the outer boundary. Throws for points outside
/// the mesh.
double evaluate_solution(const DiscreteSolution& sol, const Point& x);

/// CSV `node_id,x[,y],class,u,lambda`.
void write_solution_csv(std::ostream& os, const DiscreteSolution& sol);

}  // namespace fracmix
