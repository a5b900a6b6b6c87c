// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracmix/error.hpp"

namespace fracmix {

namespace {

double norm(const Point& x) { return std::hypot(x[0], x[1]); }

double dist(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

// Smallest interior angle of a triangle, radians.
double min_angle(const Point& a, const Point& b, const Point& c) {
  const double la = dist(b, c), lb = dist(a, c), lc = dist(a, b);
  auto angle = [](double opp, double s1, double s2) {
    const double cosv = std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2), -1.0, 1.0);
    return std::acos(cosv);
  };
  return std::min({angle(la, lb, lc), angle(lb, la, lc), angle(lc, la, lb)});
}

}  // namespace

void DomainSpec::validate() const {
  require(dim == 1 || dim == 2, "domain dimension must be 1 or 2");
  require(r > 0.0, "inner radius must be positive");
  require(R > r, "outer radius must exceed inner radius (empty annulus)");
}

double truncation_radius(double h, const TruncationRule& rule, int dim, double s) {
  require(h > 0.0, "truncation_radius: mesh size must be positive");
  require(rule.h0 > 0.0 && rule.H0 > 0.0, "truncation_radius: calibration must be positive");
  require(s > 0.0 && s < 1.0, "truncation_radius: s must lie in (0, 1)");
  require(dim == 1 || dim == 2, "truncation_radius: dimension must be 1 or 2");
  return rule.H0 * std::pow(rule.h0 / h, 1.0 / (dim + 4.0 * s));
}

double distance_to_inner_boundary(const Point& x, int dim, double r) {
  const double rad = dim == 1 ? std::abs(x[0]) : norm(x);
  return std::abs(rad - r);
}

std::string_view to_string(NodeClass c) {
  switch (c) {
    case NodeClass::kInterior: return "INTERIOR";
    case NodeClass::kExterior: return "EXTERIOR";
    case NodeClass::kBoundaryOuter: return "BOUNDARY_OUTER";
  }
  return "?";
}

NodeClass node_class_from_string(std::string_view s) {
  if (s == "INTERIOR") return NodeClass::kInterior;
  if (s == "EXTERIOR") return NodeClass::kExterior;
  if (s == "BOUNDARY_OUTER") return NodeClass::kBoundaryOuter;
  throw ValidationError("unknown node class '" + std::string(s) + "'");
}

NodeClass classify_point(const Point& x, const DomainSpec& domain) {
  const double rad = domain.dim == 1 ? std::abs(x[0]) : norm(x);
  const double tol = 1e-10 * domain.R;
  if (rad < domain.r - tol) return NodeClass::kInterior;
  if (rad > domain.R - tol) return NodeClass::kBoundaryOuter;
  return NodeClass::kExterior;
}

Mesh::Mesh(DomainSpec domain, std::vector<Point> vertices, std::vector<std::array<int, 3>> cells,
           std::vector<NodeClass> classes)
    : domain_(domain),
      vertices_(std::move(vertices)),
      cells_(std::move(cells)),
      classes_(std::move(classes)) {
  domain_.validate();
  require(classes_.size() == vertices_.size(), "mesh: one class tag per vertex required");
  require(!cells_.empty(), "mesh: no cells");
  const int nv = cell_size();
  const double tol = 1e-10 * domain_.R;
  in_omega_.resize(cells_.size());
  measure_.resize(cells_.size());
  diameter_.resize(cells_.size());
  h_max_ = 0.0;
  h_min_ = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& cell = cells_[c];
    bool inside = true;
    for (int k = 0; k < nv; ++k) {
      const int v = cell[k];
      require(v >= 0 && static_cast<std::size_t>(v) < vertices_.size(), "mesh: cell vertex out of range");
      const double rad = domain_.dim == 1 ? std::abs(vertices_[v][0]) : norm(vertices_[v]);
      if (rad > domain_.r + tol) inside = false;
    }
    in_omega_[c] = inside ? 1 : 0;
    if (domain_.dim == 1) {
      measure_[c] = std::abs(vertices_[cell[1]][0] - vertices_[cell[0]][0]);
      diameter_[c] = measure_[c];
    } else {
      const Point& a = vertices_[cell[0]];
      const Point& b = vertices_[cell[1]];
      const Point& p = vertices_[cell[2]];
      measure_[c] = 0.5 * std::abs((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]));
      diameter_[c] = std::max({dist(a, b), dist(b, p), dist(a, p)});
    }
    if (!(measure_[c] > 0.0)) {
      std::ostringstream msg;
      msg << "mesh: degenerate cell " << c;
      throw NumericalError(msg.str());
    }
    h_max_ = std::max(h_max_, diameter_[c]);
    h_min_ = std::min(h_min_, diameter_[c]);
  }
}

Point Mesh::cell_center(std::size_t c) const {
  const auto& cell = cells_[c];
  const int nv = cell_size();
  Point p{0.0, 0.0};
  for (int k = 0; k < nv; ++k) {
    p[0] += vertices_[cell[k]][0] / nv;
    p[1] += vertices_[cell[k]][1] / nv;
  }
  return p;
}

double Mesh::min_angle_degrees() const {
  if (dim() == 1) return 180.0;
  double m = std::numbers::pi;
  for (const auto& cell : cells_)
    m = std::min(m, min_angle(vertices_[cell[0]], vertices_[cell[1]], vertices_[cell[2]]));
  return m * 180.0 / std::numbers::pi;
}

std::size_t Mesh::count(NodeClass c) const {
  return static_cast<std::size_t>(std::count(classes_.begin(), classes_.end(), c));
}

Mesh mesh_interval(const DomainSpec& domain, double h) {
  domain.validate();
  require(domain.dim == 1, "mesh_interval: domain must be one-dimensional");
  require(h > 0.0 && h <= domain.r, "mesh_interval: need 0 < h <= r");
  const double r = domain.r, R = domain.R;
  const long n_in = std::lround(std::ceil(2.0 * r / h - 1e-9));
  const long n_out = std::lround(std::ceil((R - r) / h - 1e-9));
  std::vector<double> xs;
  for (long i = 0; i < n_out; ++i) xs.push_back(-R + (R - r) * static_cast<double>(i) / n_out);
  for (long i = 0; i < n_in; ++i) xs.push_back(-r + 2.0 * r * static_cast<double>(i) / n_in);
  for (long i = 0; i <= n_out; ++i) xs.push_back(r + (R - r) * static_cast<double>(i) / n_out);
  std::vector<Point> verts;
  std::vector<NodeClass> classes;
  for (double x : xs) {
    verts.push_back({x, 0.0});
    classes.push_back(classify_point(verts.back(), domain));
  }
  std::vector<std::array<int, 3>> cells;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    cells.push_back({static_cast<int>(i), static_cast<int>(i + 1), -1});
  return Mesh(domain, std::move(verts), std::move(cells), std::move(classes));
}

namespace {

struct Ring {
  int first = 0;  // global index of node 0
  int count = 0;
  double radius = 0.0;
};

// Triangulates the strip between two consecutive rings by merging the two
// angularly sorted node sequences.
void stitch(const Ring& in, const Ring& out, const std::vector<Point>& verts,
            std::vector<std::array<int, 3>>& cells) {
  if (in.count == 1) {
    for (int j = 0; j < out.count; ++j)
      cells.push_back({in.first, out.first + j, out.first + (j + 1) % out.count});
    return;
  }
  auto node_in = [&](int i) { return in.first + i % in.count; };
  auto node_out = [&](int j) { return out.first + j % out.count; };
  auto ang_in = [&](int i) { return 2.0 * std::numbers::pi * i / in.count; };
  auto ang_out = [&](int j) { return 2.0 * std::numbers::pi * j / out.count; };
  int i = 0, j = 0;
  while (i < in.count || j < out.count) {
    bool advance_out;
    if (i == in.count) {
      advance_out = true;
    } else if (j == out.count) {
      advance_out = false;
    } else {
      const double ai = ang_in(i + 1), ao = ang_out(j + 1);
      if (std::abs(ai - ao) < 1e-12) {
        const double q_out = min_angle(verts[node_in(i)], verts[node_out(j)], verts[node_out(j + 1)]);
        const double q_in = min_angle(verts[node_in(i)], verts[node_out(j)], verts[node_in(i + 1)]);
        advance_out = q_out >= q_in;
      } else {
        advance_out = ao < ai;
      }
    }
    if (advance_out) {
      cells.push_back({node_in(i), node_out(j), node_out(j + 1)});
      ++j;
    } else {
      cells.push_back({node_in(i), node_out(j), node_in(i + 1)});
      ++i;
    }
  }
}

Mesh build_rings(const DomainSpec& domain, int K) {
  const double r = domain.r, R = domain.R;
  const double spacing = r / K;
  const int M = std::max(1, static_cast<int>(std::ceil((R - r) / spacing - 1e-9)));
  std::vector<Ring> rings;
  std::vector<Point> verts;
  std::vector<NodeClass> classes;
  auto add_ring = [&](int index, double radius, NodeClass cls) {
    Ring ring;
    ring.first = static_cast<int>(verts.size());
    ring.count = index == 0 ? 1 : 6 * index;
    ring.radius = radius;
    for (int j = 0; j < ring.count; ++j) {
      const double t = 2.0 * std::numbers::pi * j / ring.count;
      verts.push_back({radius * std::cos(t), radius * std::sin(t)});
      classes.push_back(cls);
    }
    rings.push_back(ring);
  };
  add_ring(0, 0.0, NodeClass::kInterior);
  for (int k = 1; k < K; ++k) add_ring(k, k * spacing, NodeClass::kInterior);
  add_ring(K, r, NodeClass::kExterior);
  for (int m = 1; m <= M; ++m) {
    const double radius = m == M ? R : r + (R - r) * m / M;
    add_ring(K + m, radius, m == M ? NodeClass::kBoundaryOuter : NodeClass::kExterior);
  }
  std::vector<std::array<int, 3>> cells;
  for (std::size_t k = 0; k + 1 < rings.size(); ++k) stitch(rings[k], rings[k + 1], verts, cells);
  return Mesh(domain, std::move(verts), std::move(cells), std::move(classes));
}

}  // namespace

Mesh mesh_disc_with_annulus(const DomainSpec& domain, double h) {
  domain.validate();
  require(domain.dim == 2, "mesh_disc_with_annulus: domain must be two-dimensional");
  require(h > 0.0 && h < domain.r, "mesh_disc_with_annulus: need 0 < h < r");
  int K = std::max(2, static_cast<int>(std::ceil(1.25 * domain.r / h)));
  for (int attempt = 0; attempt < 64; ++attempt, ++K) {
    Mesh mesh = build_rings(domain, K);
    if (mesh.h() > h) continue;
    const double angle = mesh.min_angle_degrees();
    if (angle < 20.0) {
      for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const auto& cell = mesh.cell(c);
        if (min_angle(mesh.vertex(cell[0]), mesh.vertex(cell[1]), mesh.vertex(cell[2])) * 180.0 /
                std::numbers::pi <
            20.0) {
          std::ostringstream msg;
          msg << "mesh_disc_with_annulus: cell " << c << " has minimum angle below 20 degrees";
          throw NumericalError(msg.str());
        }
      }
    }
    if (mesh.h() / mesh.h_min() > 4.0)
      throw NumericalError("mesh_disc_with_annulus: quasi-uniformity ratio exceeds 4");
    return mesh;
  }
  throw NumericalError("mesh_disc_with_annulus: could not reach the requested mesh size");
}

Mesh build_mesh(const DomainSpec& domain, double h) {
  return domain.dim == 1 ? mesh_interval(domain, h) : mesh_disc_with_annulus(domain, h);
}

}  // namespace fracmix
