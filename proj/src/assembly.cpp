// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <thread>

#include "fracmix/error.hpp"
#include "fracmix/pair_kernel.hpp"
#include "fracmix/quadrature.hpp"
#include "fracmix/singular.hpp"

namespace fracmix {

DofMap DofMap::build(const Mesh& mesh) {
  DofMap m;
  const std::size_t n = mesh.num_nodes();
  m.node_to_dof.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (mesh.node_class(i) == NodeClass::kInterior) {
      m.node_to_dof[i] = static_cast<int>(m.dof_to_node.size());
      m.dof_to_node.push_back(static_cast<int>(i));
    }
  m.num_interior = static_cast<int>(m.dof_to_node.size());
  for (std::size_t i = 0; i < n; ++i)
    if (mesh.node_class(i) == NodeClass::kExterior) {
      m.node_to_dof[i] = static_cast<int>(m.dof_to_node.size());
      m.dof_to_node.push_back(static_cast<int>(i));
    }
  m.num_exterior = static_cast<int>(m.dof_to_node.size()) - m.num_interior;
  return m;
}

QuadratureOptions QuadratureOptions::defaults(int dim) {
  QuadratureOptions o;
  if (dim == 1) {
    o.singular_order = 8;
    o.near_order = 8;
    o.far_order = 6;
    o.load_order = 8;
  } else {
    // lower orders leave ~1e-2 relative error on entries that nearly cancel
    o.singular_order = 12;
    o.near_order = 8;
    o.far_order = 5;
    o.load_order = 6;
  }
  return o;
}

QuadratureOptions QuadratureOptions::resolved(int dim) const {
  const QuadratureOptions d = defaults(dim);
  QuadratureOptions o = *this;
  if (o.singular_order <= 0) o.singular_order = d.singular_order;
  if (o.near_order <= 0) o.near_order = d.near_order;
  if (o.far_order <= 0) o.far_order = d.far_order;
  if (o.load_order <= 0) o.load_order = d.load_order;
  require(o.near_eta > 0.0 && o.far_eta >= o.near_eta, "quadrature: need 0 < near_eta <= far_eta");
  return o;
}

QuadratureOptions QuadratureOptions::doubled(int dim) const {
  QuadratureOptions o = resolved(dim);
  o.singular_order *= 2;
  o.near_order *= 2;
  o.far_order *= 2;
  o.load_order *= 2;
  return o;
}

namespace {

using Bary = std::array<double, 3>;

// Sub-simplex of a mesh cell, vertices carried both physically and in the
// parent's barycentric coordinates.
struct SubCell {
  int nv = 3;
  std::array<Bary, 3> b{};
  std::array<Point, 3> x{};
  Point center{};
  double diam = 0.0;
  double measure = 0.0;
};

double dist(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

void finish(SubCell& sc) {
  sc.center = {0.0, 0.0};
  for (int i = 0; i < sc.nv; ++i) {
    sc.center[0] += sc.x[i][0] / sc.nv;
    sc.center[1] += sc.x[i][1] / sc.nv;
  }
  sc.diam = 0.0;
  for (int i = 0; i < sc.nv; ++i)
    for (int j = i + 1; j < sc.nv; ++j) sc.diam = std::max(sc.diam, dist(sc.x[i], sc.x[j]));
  if (sc.nv == 2) {
    sc.measure = std::abs(sc.x[1][0] - sc.x[0][0]);
  } else {
    sc.measure = 0.5 * std::abs((sc.x[1][0] - sc.x[0][0]) * (sc.x[2][1] - sc.x[0][1]) -
                                (sc.x[2][0] - sc.x[0][0]) * (sc.x[1][1] - sc.x[0][1]));
  }
}

SubCell whole(const Mesh& mesh, std::size_t c) {
  SubCell sc;
  sc.nv = mesh.cell_size();
  for (int i = 0; i < sc.nv; ++i) {
    sc.b[i] = {0.0, 0.0, 0.0};
    sc.b[i][i] = 1.0;
    sc.x[i] = mesh.vertex(mesh.cell(c)[i]);
  }
  finish(sc);
  return sc;
}

SubCell make_sub(const SubCell& p, std::initializer_list<std::pair<int, int>> corners) {
  // each corner is the midpoint of parent vertices (i, j); i == j is a vertex
  SubCell sc;
  sc.nv = p.nv;
  int k = 0;
  for (auto [i, j] : corners) {
    for (int d = 0; d < 3; ++d) sc.b[k][d] = 0.5 * (p.b[i][d] + p.b[j][d]);
    sc.x[k] = {0.5 * (p.x[i][0] + p.x[j][0]), 0.5 * (p.x[i][1] + p.x[j][1])};
    ++k;
  }
  finish(sc);
  return sc;
}

std::vector<SubCell> split(const SubCell& p) {
  if (p.nv == 2) return {make_sub(p, {{0, 0}, {0, 1}}), make_sub(p, {{0, 1}, {1, 1}})};
  return {make_sub(p, {{0, 0}, {0, 1}, {0, 2}}), make_sub(p, {{0, 1}, {1, 1}, {1, 2}}),
          make_sub(p, {{0, 2}, {1, 2}, {2, 2}}), make_sub(p, {{0, 1}, {1, 2}, {0, 2}})};
}

void fill_cloud(const SubCell& sc, int order, simd::Cloud& out) {
  const int dim = sc.nv - 1;
  const auto& rule = quad::collapsed_simplex(dim, order);
  const double scale = dim == 2 ? 2.0 * sc.measure : sc.measure;
  out.clear();
  for (std::size_t q = 0; q < rule.w.size(); ++q) {
    double mu[3] = {1.0, 0.0, 0.0};
    for (int k = 0; k < dim; ++k) {
      mu[k + 1] = rule.x[q][k];
      mu[0] -= rule.x[q][k];
    }
    Bary lam{0.0, 0.0, 0.0};
    Point x{0.0, 0.0};
    for (int k = 0; k < sc.nv; ++k) {
      for (int d = 0; d < 3; ++d) lam[d] += mu[k] * sc.b[k][d];
      x[0] += mu[k] * sc.x[k][0];
      x[1] += mu[k] * sc.x[k][1];
    }
    out.push(x[0], x[1], rule.w[q] * scale, lam[0], lam[1], lam[2]);
  }
  out.pad();
}

double eta(const SubCell& a, const SubCell& b) { return dist(a.center, b.center) / (a.diam + b.diam); }

struct Shared {
  const Mesh& mesh;
  const DofMap& dofs;
  QuadratureOptions opts;
  KernelParams kp;
  double alpha;  // kernel = r2^{-alpha}
  std::vector<SubCell> cells;
  // far_cloud[t]: order far_order - t, used for far_eta 2^t < eta <= far_eta 2^{t+1}
  std::array<std::vector<simd::Cloud>, 3> far_cloud;
  std::vector<simd::Cloud> near_cloud;
  std::vector<std::size_t> omega_cells;
};

// Accumulation buffer for one chunk of Omega cells.
struct Chunk {
  std::vector<int> row_dof;       // dof of each local row
  std::vector<int> row_of_node;   // node -> local row or -1
  std::vector<double> strip;      // rows x ndof
  std::vector<double> blocks;     // per cell, 3x3, entries only among that cell's nodes
  std::vector<char> block_used;
  AssemblyStats stats;
  simd::Cloud scratch_a, scratch_b;
};

void disjoint_moments(const Shared& sh, Chunk& ch, const SubCell& a, const SubCell& b, int depth,
                      simd::PairMoments& mom) {
  const double e = eta(a, b);
  if (e > sh.opts.near_eta) {
    const int order = e > sh.opts.far_eta ? sh.opts.far_order : sh.opts.near_order;
    simd::Cloud ca, cb;
    fill_cloud(a, order, ca);
    fill_cloud(b, order, cb);
    simd::pair_moments(ca, cb, sh.alpha, mom);
    return;
  }
  if (depth >= sh.opts.max_depth)
    throw NumericalError("assembly: disjoint element pair could not be separated by subdivision");
  if (a.diam >= b.diam) {
    for (const auto& child : split(a)) disjoint_moments(sh, ch, child, b, depth + 1, mom);
  } else {
    for (const auto& child : split(b)) disjoint_moments(sh, ch, a, child, depth + 1, mom);
  }
}

class ChunkWorker {
 public:
  ChunkWorker(const Shared& sh, Chunk& ch) : sh_(sh), ch_(ch), ndof_(sh.dofs.size()) {}

  void run(std::size_t begin, std::size_t end) {
    const Mesh& mesh = sh_.mesh;
    const int nv = mesh.cell_size();
    ch_.stats = {};
    // rows: dofs of the chunk's cells
    for (int d : ch_.row_dof) ch_.row_of_node[sh_.dofs.dof_to_node[d]] = -1;
    ch_.row_dof.clear();
    for (std::size_t k = begin; k < end; ++k) {
      const auto& cell = mesh.cell(sh_.omega_cells[k]);
      for (int i = 0; i < nv; ++i) {
        const int node = cell[i];
        const int d = sh_.dofs.node_to_dof[node];
        if (d < 0 || ch_.row_of_node[node] >= 0) continue;
        ch_.row_of_node[node] = static_cast<int>(ch_.row_dof.size());
        ch_.row_dof.push_back(d);
      }
    }
    ch_.strip.assign(ch_.row_dof.size() * static_cast<std::size_t>(ndof_), 0.0);
    std::fill(ch_.blocks.begin(), ch_.blocks.end(), 0.0);
    std::fill(ch_.block_used.begin(), ch_.block_used.end(), 0);

    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t c = sh_.omega_cells[k];
      tail_term(c);
      for (std::size_t c2 = 0; c2 < mesh.num_cells(); ++c2) {
        if (mesh.cell_in_omega(c2) && c2 < c) continue;
        pair(c, c2);
      }
    }
  }

 private:
  // Adds v to entry (node_a, node_b) where node_a belongs to the Omega cell.
  void strip_add(int node_a, int node_b, double v) {
    const int r = ch_.row_of_node[node_a];
    const int d = sh_.dofs.node_to_dof[node_b];
    if (r < 0 || d < 0) return;
    ch_.strip[static_cast<std::size_t>(r) * ndof_ + d] += v;
  }

  // Adds v to entry (la, lb) among the vertices of cell c2.
  void block_add(std::size_t c2, int la, int lb, double v) {
    if (la > lb) std::swap(la, lb);
    ch_.blocks[c2 * 9 + la * 3 + lb] += v;
    ch_.block_used[c2] = 1;
  }

  void tail_term(std::size_t c) {
    const Mesh& mesh = sh_.mesh;
    const int nv = mesh.cell_size();
    simd::Cloud cl;
    fill_cloud(sh_.cells[c], sh_.opts.load_order, cl);
    double m[3][3] = {};
    for (std::size_t q = 0; q < cl.size(); ++q) {
      if (cl.w[q] == 0.0) continue;
      const double t = cl.w[q] * tail_weight_outside_ball({cl.x[q], cl.y[q]}, mesh.domain().R, sh_.kp);
      const double l[3] = {cl.l0[q], cl.l1[q], cl.l2[q]};
      for (int a = 0; a < nv; ++a)
        for (int b = a; b < nv; ++b) m[a][b] += t * l[a] * l[b];
    }
    const auto& cell = mesh.cell(c);
    for (int a = 0; a < nv; ++a)
      for (int b = a; b < nv; ++b) strip_add(cell[a], cell[b], sh_.kp.C * m[a][b]);
  }

  void pair(std::size_t c, std::size_t c2) {
    const Mesh& mesh = sh_.mesh;
    const int nv = mesh.cell_size();
    const auto& T = mesh.cell(c);
    const auto& S = mesh.cell(c2);
    int shared = 0;
    int pos_t[3], pos_s[3];
    bool t_shared[3] = {false, false, false}, s_shared[3] = {false, false, false};
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        if (T[i] == S[j]) {
          pos_t[shared] = i;
          pos_s[shared] = j;
          t_shared[i] = true;
          s_shared[j] = true;
          ++shared;
        }
    if (shared == 0) {
      far_or_near(c, c2);
      return;
    }
    ++ch_.stats.singular_pairs;
    const double ex = sh_.kp.exponent();
    const int ord = sh_.opts.singular_order;
    auto X = [&](int node) { return mesh.vertex(node); };
    // union nodes; for nodes only in S, their local index in S
    int nodes[5];
    int s_local[5] = {-1, -1, -1, -1, -1};
    bool in_t[5] = {false, false, false, false, false};
    singular::LocalMatrix lm;
    double fac = sh_.kp.C;
    if (shared == nv) {
      fac = 0.5 * sh_.kp.C;
      Point v[3];
      for (int i = 0; i < nv; ++i) {
        nodes[i] = T[i];
        in_t[i] = true;
        v[i] = X(T[i]);
      }
      lm = singular::identical(v, mesh.dim(), ex, ord);
    } else {
      int n = 0;
      for (int k = 0; k < shared; ++k) {
        nodes[n] = T[pos_t[k]];
        in_t[n++] = true;
      }
      for (int i = 0; i < nv; ++i)
        if (!t_shared[i]) {
          nodes[n] = T[i];
          in_t[n++] = true;
        }
      for (int j = 0; j < nv; ++j)
        if (!s_shared[j]) {
          nodes[n] = S[j];
          s_local[n++] = j;
        }
      (void)pos_s;
      if (mesh.dim() == 1) {
        lm = singular::common_vertex_1d(X(nodes[0]), X(nodes[1]), X(nodes[2]), ex, ord);
      } else if (shared == 2) {
        lm = singular::common_edge(X(nodes[0]), X(nodes[1]), X(nodes[2]), X(nodes[3]), ex, ord);
      } else {
        lm = singular::common_vertex_2d(X(nodes[0]), X(nodes[1]), X(nodes[2]), X(nodes[3]), X(nodes[4]), ex, ord);
      }
    }
    for (int a = 0; a < lm.size; ++a)
      for (int b = a; b < lm.size; ++b) {
        const double v = fac * lm.m[a][b];
        if (in_t[a]) {
          strip_add(nodes[a], nodes[b], v);
        } else if (in_t[b]) {
          strip_add(nodes[b], nodes[a], v);
        } else {
          block_add(c2, s_local[a], s_local[b], v);
        }
      }
  }

  void far_or_near(std::size_t c, std::size_t c2) {
    const Mesh& mesh = sh_.mesh;
    const int nv = mesh.cell_size();
    const SubCell& a = sh_.cells[c];
    const SubCell& b = sh_.cells[c2];
    simd::PairMoments mom;
    const double e = eta(a, b);
    if (e > sh_.opts.far_eta) {
      ++ch_.stats.far_pairs;
      const int t = e > 4.0 * sh_.opts.far_eta ? 2 : e > 2.0 * sh_.opts.far_eta ? 1 : 0;
      simd::pair_moments(sh_.far_cloud[t][c], sh_.far_cloud[t][c2], sh_.alpha, mom);
    } else if (e > sh_.opts.near_eta) {
      ++ch_.stats.near_pairs;
      simd::pair_moments(sh_.near_cloud[c], sh_.near_cloud[c2], sh_.alpha, mom);
    } else {
      ++ch_.stats.split_pairs;
      disjoint_moments(sh_, ch_, a, b, 0, mom);
    }
    const double C = sh_.kp.C;
    const auto& T = mesh.cell(c);
    const auto& S = mesh.cell(c2);
    for (int i = 0; i < nv; ++i) {
      for (int j = i; j < nv; ++j) {
        strip_add(T[i], T[j], C * mom.xx[i][j]);
        block_add(c2, i, j, C * mom.yy[i][j]);
      }
      for (int j = 0; j < nv; ++j) strip_add(T[i], S[j], -C * mom.xy[i][j]);
    }
  }

  const Shared& sh_;
  Chunk& ch_;
  int ndof_;
};

void merge(const Shared& sh, const Chunk& ch, Eigen::MatrixXd& A, AssemblyStats& stats) {
  const int ndof = sh.dofs.size();
  auto add = [&](int i, int j, double v) {
    if (i > j) std::swap(i, j);
    A(i, j) += v;
  };
  for (std::size_t r = 0; r < ch.row_dof.size(); ++r) {
    const double* row = &ch.strip[r * ndof];
    for (int j = 0; j < ndof; ++j)
      if (row[j] != 0.0) add(ch.row_dof[r], j, row[j]);
  }
  const int nv = sh.mesh.cell_size();
  for (std::size_t c = 0; c < sh.mesh.num_cells(); ++c) {
    if (!ch.block_used[c]) continue;
    const auto& cell = sh.mesh.cell(c);
    for (int a = 0; a < nv; ++a)
      for (int b = a; b < nv; ++b) {
        const double v = ch.blocks[c * 9 + a * 3 + b];
        const int da = sh.dofs.node_to_dof[cell[a]], db = sh.dofs.node_to_dof[cell[b]];
        if (v != 0.0 && da >= 0 && db >= 0) add(da, db, v);
      }
  }
  stats.singular_pairs += ch.stats.singular_pairs;
  stats.far_pairs += ch.stats.far_pairs;
  stats.near_pairs += ch.stats.near_pairs;
  stats.split_pairs += ch.stats.split_pairs;
}

constexpr std::size_t kChunkCells = 16;

}  // namespace

Eigen::MatrixXd assemble_a(const Mesh& mesh, const DofMap& dofs, double s, const QuadratureOptions& opts_in,
                           int threads, AssemblyStats* stats_out) {
  require(mesh.num_cells() > 0, "assembly: empty mesh");
  require(static_cast<std::size_t>(dofs.node_to_dof.size()) == mesh.num_nodes(), "assembly: dof map/mesh mismatch");
  Shared sh{mesh, dofs, opts_in.resolved(mesh.dim()), KernelParams::make(mesh.dim(), s), 0.0, {}, {}, {}, {}};
  sh.alpha = 0.5 * sh.kp.exponent();
  const std::size_t nc = mesh.num_cells();
  sh.cells.resize(nc);
  for (auto& fc : sh.far_cloud) fc.resize(nc);
  sh.near_cloud.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    sh.cells[c] = whole(mesh, c);
    for (int t = 0; t < 3; ++t) fill_cloud(sh.cells[c], std::max(1, sh.opts.far_order - t), sh.far_cloud[t][c]);
    fill_cloud(sh.cells[c], sh.opts.near_order, sh.near_cloud[c]);
    if (mesh.cell_in_omega(c)) sh.omega_cells.push_back(c);
  }

  const int ndof = dofs.size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(ndof, ndof);
  AssemblyStats stats;
  const std::size_t nchunks = (sh.omega_cells.size() + kChunkCells - 1) / kChunkCells;
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(nchunks, 1))));
  std::vector<Chunk> bufs(nt);
  for (auto& b : bufs) {
    b.row_of_node.assign(mesh.num_nodes(), -1);
    b.blocks.assign(nc * 9, 0.0);
    b.block_used.assign(nc, 0);
  }
  for (std::size_t first = 0; first < nchunks; first += nt) {
    const std::size_t batch = std::min<std::size_t>(nt, nchunks - first);
    std::vector<std::exception_ptr> errors(batch);
    auto work = [&](std::size_t t) {
      try {
        const std::size_t k = first + t;
        const std::size_t begin = k * kChunkCells;
        const std::size_t end = std::min(begin + kChunkCells, sh.omega_cells.size());
        ChunkWorker(sh, bufs[t]).run(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    };
    if (batch == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < batch; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (std::size_t t = 0; t < batch; ++t) merge(sh, bufs[t], A, stats);
  }
  for (int j = 0; j < ndof; ++j)
    for (int i = 0; i < j; ++i) A(j, i) = A(i, j);
  if (stats_out) *stats_out = stats;
  return A;
}

Eigen::SparseMatrix<double> assemble_b(const Mesh& mesh, const DofMap& dofs) {
  std::vector<Eigen::Triplet<double>> trip;
  const int nv = mesh.cell_size();
  const double denom = nv == 3 ? 12.0 : 6.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (mesh.cell_in_omega(c)) continue;
    const auto& cell = mesh.cell(c);
    const double m = mesh.cell_measure(c);
    for (int a = 0; a < nv; ++a) {
      const int da = dofs.node_to_dof[cell[a]];
      if (da < 0) continue;
      for (int b = 0; b < nv; ++b) {
        const int db = dofs.node_to_dof[cell[b]];
        if (db < 0 || dofs.is_interior(db)) continue;
        trip.emplace_back(da, dofs.lambda_index(db), m * (a == b ? 2.0 : 1.0) / denom);
      }
    }
  }
  Eigen::SparseMatrix<double> B(dofs.size(), dofs.num_exterior);
  B.setFromTriplets(trip.begin(), trip.end());
  return B;
}

namespace {

// int_T field * lambda_a for each vertex a of T.
std::array<double, 3> load_cell(const Mesh& mesh, std::size_t c, const ScalarField& field, int order) {
  simd::Cloud cl;
  fill_cloud(whole(mesh, c), order, cl);
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (std::size_t q = 0; q < cl.size(); ++q) {
    if (cl.w[q] == 0.0) continue;
    const double v = field({cl.x[q], cl.y[q]});
    if (!std::isfinite(v))
      throw NumericalError("load vector: data not finite at (" + std::to_string(cl.x[q]) + ", " +
                           std::to_string(cl.y[q]) + ")");
    out[0] += cl.w[q] * v * cl.l0[q];
    out[1] += cl.w[q] * v * cl.l1[q];
    out[2] += cl.w[q] * v * cl.l2[q];
  }
  return out;
}

}  // namespace

Eigen::VectorXd assemble_F(const Mesh& mesh, const DofMap& dofs, const ScalarField& f, int order) {
  if (order <= 0) order = QuadratureOptions::defaults(mesh.dim()).load_order;
  Eigen::VectorXd F = Eigen::VectorXd::Zero(dofs.size());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (!mesh.cell_in_omega(c)) continue;
    const auto loc = load_cell(mesh, c, f, order);
    for (int a = 0; a < mesh.cell_size(); ++a) {
      const int d = dofs.node_to_dof[mesh.cell(c)[a]];
      if (d >= 0) F[d] += loc[a];
    }
  }
  return F;
}

Eigen::VectorXd assemble_G(const Mesh& mesh, const DofMap& dofs, const ScalarField& g, int order) {
  if (order <= 0) order = QuadratureOptions::defaults(mesh.dim()).load_order;
  Eigen::VectorXd G = Eigen::VectorXd::Zero(dofs.num_exterior);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (mesh.cell_in_omega(c)) continue;
    const auto loc = load_cell(mesh, c, g, order);
    for (int a = 0; a < mesh.cell_size(); ++a) {
      const int d = dofs.node_to_dof[mesh.cell(c)[a]];
      if (d >= 0 && !dofs.is_interior(d)) G[dofs.lambda_index(d)] += loc[a];
    }
  }
  return G;
}

AssembledSystem assemble(const Mesh& mesh, double s, const ScalarField& f, const ScalarField& g,
                         const QuadratureOptions& opts, int threads) {
  AssembledSystem sys;
  sys.dofs = DofMap::build(mesh);
  sys.kernel = KernelParams::make(mesh.dim(), s);
  const QuadratureOptions o = opts.resolved(mesh.dim());
  sys.A = assemble_a(mesh, sys.dofs, s, o, threads, &sys.stats);
  sys.B = assemble_b(mesh, sys.dofs);
  sys.F = assemble_F(mesh, sys.dofs, f, o.load_order);
  sys.G = assemble_G(mesh, sys.dofs, g, o.load_order);
  return sys;
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& A) {
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = i; j < A.cols(); ++j)
      if (A(i, j) != 0.0) os << i << ' ' << j << ' ' << A(i, j) << '\n';
}

}  // namespace fracmix
