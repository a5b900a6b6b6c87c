// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracmix {

/// A point in R^n for n <= 2; unused coordinates are zero.
using Point = std::array<double, 2>;

/// Omega = B(0, r) (the interval (-r, r) when n = 1) inside Omega_H = B(0, R).
struct DomainSpec {
  int dim = 2;
  double r = 1.0;
  double R = 2.0;

  /// Annulus width H = R - r.
  double width() const { return R - r; }
  void validate() const;
};

/// H(h) = H0 * (h0 / h)^{1 / (n + 4 s)}, so that H(h0) = H0.
struct TruncationRule {
  double h0 = 0.1;
  double H0 = 1.0;
};

/// Width of the truncated exterior annulus for mesh size h.
double truncation_radius(double h, const TruncationRule& rule, int dim, double s);

/// Distance from x to the sphere |x| = r.
double distance_to_inner_boundary(const Point& x, int dim, double r);

enum class NodeClass : std::uint8_t {
  kInterior,       // strictly inside Omega
  kExterior,       // closed annulus minus the outer sphere (includes the sphere |x| = r)
  kBoundaryOuter,  // on the outer sphere; carries no degree of freedom
};

std::string_view to_string(NodeClass c);
NodeClass node_class_from_string(std::string_view s);

/// Conforming simplicial mesh of Omega_H with node classification. Immutable
/// once built.
class Mesh {
 public:
  Mesh() = default;
  Mesh(DomainSpec domain, std::vector<Point> vertices, std::vector<std::array<int, 3>> cells,
       std::vector<NodeClass> classes);

  int dim() const { return domain_.dim; }
  const DomainSpec& domain() const { return domain_; }
  /// Vertices per cell: 2 for segments, 3 for triangles.
  int cell_size() const { return domain_.dim + 1; }

  std::size_t num_nodes() const { return vertices_.size(); }
  std::size_t num_cells() const { return cells_.size(); }

  const Point& vertex(std::size_t i) const { return vertices_[i]; }
  std::span<const Point> vertices() const { return vertices_; }
  /// Cell vertex indices; entry 2 is unused (-1) for segments.
  const std::array<int, 3>& cell(std::size_t c) const { return cells_[c]; }
  NodeClass node_class(std::size_t i) const { return classes_[i]; }

  /// True when every vertex of the cell lies in the closure of Omega.
  bool cell_in_omega(std::size_t c) const { return in_omega_[c] != 0; }

  double cell_measure(std::size_t c) const { return measure_[c]; }
  double cell_diameter(std::size_t c) const { return diameter_[c]; }
  Point cell_center(std::size_t c) const;

  /// Realized mesh size: the maximum cell diameter.
  double h() const { return h_max_; }
  double h_min() const { return h_min_; }
  /// Smallest interior angle over all triangles, in degrees (180 for n = 1).
  double min_angle_degrees() const;

  std::size_t count(NodeClass c) const;

 private:
  DomainSpec domain_;
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<NodeClass> classes_;
  std::vector<char> in_omega_;
  std::vector<double> measure_;
  std::vector<double> diameter_;
  double h_max_ = 0.0;
  double h_min_ = 0.0;
};

/// Classification of a point by radius, with a relative snapping tolerance.
NodeClass classify_point(const Point& x, const DomainSpec& domain);

/// Partition of [-R, R] with nodes at +-r: spacing 2r / ceil(2r / h) inside,
/// (R - r) / ceil((R - r) / h) in each half of the annulus.
Mesh mesh_interval(const DomainSpec& domain, double h);

/// Concentric-ring triangulation of B(0, R) whose vertices on |x| = r
/// resolve the inner circle. All cells have diameter <= h.
Mesh mesh_disc_with_annulus(const DomainSpec& domain, double h);

/// Dispatches on domain.dim.
Mesh build_mesh(const DomainSpec& domain, double h);

/// Plain-text mesh format: header `n h r R`, then `id x [y] CLASS` per
/// vertex, then `id v0 v1 [v2]` per cell.
void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

}  // namespace fracmix
