// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracmix/error.hpp"
#include "fracmix/geometry.hpp"

namespace fracmix {
namespace {

TEST(TruncationRadius, CalibrationPointIsReproduced) {
  EXPECT_NEAR(truncation_radius(0.15, TruncationRule{0.15, 1.0}, 2, 0.5), 1.0, 1e-14);
  EXPECT_NEAR(truncation_radius(0.1, TruncationRule{0.1, 1.0}, 2, 0.25), 1.0, 1e-14);
}

TEST(TruncationRadius, GrowsWithExponentOneOverNPlusFourS) {
  // n + 4s = 4 at s = 1/2
  EXPECT_NEAR(truncation_radius(0.15 / 16, TruncationRule{0.15, 1.0}, 2, 0.5), 2.0, 1e-13);
}

TEST(TruncationRadius, RejectsBadInput) {
  EXPECT_THROW(truncation_radius(0.0, TruncationRule{0.1, 1.0}, 2, 0.5), ValidationError);
  EXPECT_THROW(truncation_radius(0.1, TruncationRule{0.1, 1.0}, 2, 1.5), ValidationError);
}

TEST(DistanceToInnerBoundary, Examples) {
  EXPECT_DOUBLE_EQ(distance_to_inner_boundary(Point{0.0, 0.0}, 2, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_inner_boundary(Point{1.5, 0.0}, 2, 0.5), 1.0);
  EXPECT_NEAR(distance_to_inner_boundary(Point{0.6, 0.8}, 2, 1.0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(distance_to_inner_boundary(Point{-1.0, 0.0}, 1, 1.0), 0.0);
}

std::vector<double> sorted_coords(const Mesh& m, NodeClass c) {
  std::vector<double> out;
  for (std::size_t i = 0; i < m.num_nodes(); ++i)
    if (m.node_class(i) == c) out.push_back(m.vertex(i)[0]);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(MeshInterval, HalfStepClassification) {
  const Mesh m = mesh_interval(DomainSpec{1, 1.0, 2.0}, 0.5);
  EXPECT_EQ(m.num_nodes(), 9u);
  EXPECT_EQ(m.num_cells(), 8u);
  EXPECT_EQ(sorted_coords(m, NodeClass::kInterior), (std::vector<double>{-0.5, 0.0, 0.5}));
  EXPECT_EQ(sorted_coords(m, NodeClass::kExterior), (std::vector<double>{-1.5, -1.0, 1.0, 1.5}));
  EXPECT_EQ(sorted_coords(m, NodeClass::kBoundaryOuter), (std::vector<double>{-2.0, 2.0}));
}

TEST(MeshInterval, UnitStep) {
  const Mesh m = mesh_interval(DomainSpec{1, 1.0, 2.0}, 1.0);
  EXPECT_EQ(sorted_coords(m, NodeClass::kInterior), (std::vector<double>{0.0}));
  EXPECT_EQ(sorted_coords(m, NodeClass::kExterior), (std::vector<double>{-1.0, 1.0}));
}

TEST(MeshInterval, WideAnnulusCounts) {
  const Mesh m = mesh_interval(DomainSpec{1, 1.0, 4.0}, 0.25);
  EXPECT_EQ(m.count(NodeClass::kInterior), 7u);
  EXPECT_EQ(m.count(NodeClass::kExterior), 24u);
  EXPECT_EQ(m.count(NodeClass::kBoundaryOuter), 2u);
}

TEST(MeshDisc, SizeAndQuality) {
  const Mesh m = mesh_disc_with_annulus(DomainSpec{2, 0.5, 1.5}, 0.15);
  EXPECT_LE(m.h(), 0.15 + 1e-12);
  EXPECT_GE(m.min_angle_degrees(), 20.0);
  double area = 0.0;
  for (std::size_t c = 0; c < m.num_cells(); ++c) area += m.cell_measure(c);
  // polygon inscribed in the outer circle
  EXPECT_LT(area, M_PI * 1.5 * 1.5);
  EXPECT_GT(area, 0.99 * M_PI * 1.5 * 1.5);
}

TEST(MeshDisc, InnerCircleIsResolved) {
  const DomainSpec d{2, 1.0, 1.8};
  const Mesh m = mesh_disc_with_annulus(d, 0.2);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    // no cell straddles |x| = r
    bool inside = false, outside = false;
    for (int k = 0; k < 3; ++k) {
      const auto& v = m.vertex(m.cell(c)[k]);
      const double rho = std::hypot(v[0], v[1]);
      inside = inside || rho < d.r - 1e-9;
      outside = outside || rho > d.r + 1e-9;
    }
    EXPECT_FALSE(inside && outside) << "cell " << c;
    EXPECT_EQ(m.cell_in_omega(c), !outside);
  }
}

class MeshClassesProperty : public ::testing::TestWithParam<std::tuple<int, double, double, double>> {};

TEST_P(MeshClassesProperty, ClassesPartitionNodesByRadius) {
  const auto [dim, r, R, h] = GetParam();
  const DomainSpec d{dim, r, R};
  const Mesh m = build_mesh(d, h);
  std::size_t total = 0;
  for (auto c : {NodeClass::kInterior, NodeClass::kExterior, NodeClass::kBoundaryOuter}) total += m.count(c);
  EXPECT_EQ(total, m.num_nodes());
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    EXPECT_EQ(m.node_class(i), classify_point(m.vertex(i), d));
    const double rho = std::hypot(m.vertex(i)[0], m.vertex(i)[1]);
    EXPECT_LE(rho, R * (1 + 1e-12));
  }
  EXPECT_LE(m.h(), h * (1 + 1e-12));
}

INSTANTIATE_TEST_SUITE_P(Meshes, MeshClassesProperty,
                         ::testing::Values(std::make_tuple(1, 1.0, 2.0, 0.3), std::make_tuple(1, 1.0, 2.7, 0.07),
                                           std::make_tuple(2, 0.5, 1.5, 0.2), std::make_tuple(2, 1.0, 2.1, 0.14),
                                           std::make_tuple(2, 0.7, 1.0, 0.09)));

TEST(MeshDomain, EmptyAnnulusRejected) {
  EXPECT_THROW(build_mesh(DomainSpec{2, 0.5, 0.5}, 0.1), ValidationError);
  EXPECT_THROW(build_mesh(DomainSpec{1, 1.0, 0.9}, 0.1), ValidationError);
  EXPECT_THROW(build_mesh(DomainSpec{3, 1.0, 2.0}, 0.1), ValidationError);
}

TEST(MeshIo, RoundTrip) {
  const Mesh m = build_mesh(DomainSpec{2, 0.5, 1.2}, 0.25);
  std::stringstream ss;
  write_mesh(ss, m);
  const Mesh back = read_mesh(ss);
  ASSERT_EQ(back.num_nodes(), m.num_nodes());
  ASSERT_EQ(back.num_cells(), m.num_cells());
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    EXPECT_EQ(back.vertex(i), m.vertex(i));
    EXPECT_EQ(back.node_class(i), m.node_class(i));
  }
  for (std::size_t c = 0; c < m.num_cells(); ++c) EXPECT_EQ(back.cell(c), m.cell(c));
}

TEST(MeshIo, MalformedInputRejected) {
  std::stringstream ss("2 0.1 0.5\n");
  EXPECT_THROW(read_mesh(ss), ValidationError);
}

}  // namespace
}  // namespace fracmix
