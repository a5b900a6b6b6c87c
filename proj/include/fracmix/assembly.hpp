// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <iosfwd>
#include <vector>

#include "fracmix/geometry.hpp"
#include "fracmix/kernel.hpp"

namespace fracmix {

using ScalarField = std::function<double(const Point&)>;

/// Node <-> matrix index map. Interior nodes come first, then exterior
/// nodes; outer-boundary nodes have no index (-1).
struct DofMap {
  std::vector<int> node_to_dof;
  std::vector<int> dof_to_node;
  int num_interior = 0;
  int num_exterior = 0;

  static DofMap build(const Mesh& mesh);
  int size() const { return num_interior + num_exterior; }
  bool is_interior(int dof) const { return dof < num_interior; }
  /// Multiplier index of an exterior dof.
  int lambda_index(int dof) const { return dof - num_interior; }
};

/// Quadrature orders for the element-pair integrals. Zero means "default for
/// the dimension".
struct QuadratureOptions {
  int singular_order = 0;  // face rule of the touching-pair cones
  int near_order = 0;      // disjoint pairs with near_eta < eta <= far_eta
  int far_order = 0;       // eta > far_eta; one less per doubling of eta, twice
  int load_order = 0;      // F, G, tail-weight term
  /// eta = center distance / (sum of diameters).
  double far_eta = 2.0;
  double near_eta = 1.0;
  int max_depth = 16;

  static QuadratureOptions defaults(int dim);
  /// Fills zeros with the dimension defaults.
  QuadratureOptions resolved(int dim) const;
  /// Every order doubled; used by the quadrature convergence gate.
  QuadratureOptions doubled(int dim) const;
};

struct AssemblyStats {
  std::size_t singular_pairs = 0;
  std::size_t far_pairs = 0;
  std::size_t near_pairs = 0;
  std::size_t split_pairs = 0;  // disjoint pairs that needed subdivision
};

struct AssembledSystem {
  DofMap dofs;
  KernelParams kernel;
  Eigen::MatrixXd A;                // dofs x dofs, symmetric
  Eigen::SparseMatrix<double> B;    // dofs x exterior
  Eigen::VectorXd F;                // dofs
  Eigen::VectorXd G;                // exterior
  AssemblyStats stats;
};

/// Stiffness matrix of the form a over all dofs. Work is split into fixed
/// chunks of Omega cells and merged in chunk order, so the result does not
/// depend on `threads`.
Eigen::MatrixXd assemble_a(const Mesh& mesh, const DofMap& dofs, double s, const QuadratureOptions& opts = {},
                           int threads = 1, AssemblyStats* stats = nullptr);

/// Annulus mass matrix: rows all dofs, columns exterior dofs.
Eigen::SparseMatrix<double> assemble_b(const Mesh& mesh, const DofMap& dofs);

/// F_i = int_Omega f phi_i over the cells of Omega.
Eigen::VectorXd assemble_F(const Mesh& mesh, const DofMap& dofs, const ScalarField& f, int order = 0);

/// G_j = int over annulus cells of g phi_j, j exterior.
Eigen::VectorXd assemble_G(const Mesh& mesh, const DofMap& dofs, const ScalarField& g, int order = 0);

AssembledSystem assemble(const Mesh& mesh, double s, const ScalarField& f, const ScalarField& g,
                         const QuadratureOptions& opts = {}, int threads = 1);

/// `i j value` triples (dof indices), upper triangle including diagonal.
void write_matrix(std::ostream& os, const Eigen::MatrixXd& A);

}  // namespace fracmix
