#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fluxlag/mesh.hpp"

using fluxlag::MassMesh;
using fluxlag::MeshSpec;

TEST(Mesh, UniformNodesAndSpacing) {
  const MassMesh mesh = MassMesh::uniform(10);
  ASSERT_EQ(mesh.size(), 10u);
  EXPECT_EQ(mesh.node(0), -0.5);
  EXPECT_EQ(mesh.node(9), 0.5);
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) EXPECT_NEAR(mesh.spacing(i), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(mesh.min_spacing(), 1.0 / 9.0, 1e-15);
}

TEST(Mesh, RejectsOddOrTinyCounts) {
  EXPECT_THROW(MassMesh::uniform(7), std::invalid_argument);
  EXPECT_THROW(MassMesh::uniform(2), std::invalid_argument);
  EXPECT_THROW(MassMesh::uniform(0), std::invalid_argument);
}

TEST(Mesh, UniformIsSymmetric) {
  const MassMesh mesh = MassMesh::uniform(200);
  for (std::size_t i = 0; i < mesh.size(); ++i) EXPECT_EQ(mesh.node(i), -mesh.node(mesh.size() - 1 - i));
}

class GradedMesh : public ::testing::TestWithParam<std::size_t> {};

TEST_P(GradedMesh, RefinesTowardFocusAndStaysSymmetric) {
  const std::size_t n = GetParam();
  const MassMesh mesh = MassMesh::graded(n, {-0.5, -0.375, 0.375, 0.5}, 1.02);
  ASSERT_EQ(mesh.size(), n);
  EXPECT_EQ(mesh.node(0), -0.5);
  EXPECT_EQ(mesh.node(n - 1), 0.5);
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(mesh.node(i), -mesh.node(n - 1 - i)) << i;
  for (std::size_t i = 0; i + 1 < n; ++i) EXPECT_GT(mesh.spacing(i), 0.0);

  // The finest cells sit at the ends and around eta = +-3/8; the middle is coarser.
  const double h_end = mesh.spacing(0);
  const auto nodes = mesh.nodes();
  const auto mid = std::lower_bound(nodes.begin(), nodes.end(), 0.0) - nodes.begin();
  EXPECT_GT(mesh.spacing(mid), 1.5 * h_end);
  const auto jump = std::lower_bound(nodes.begin(), nodes.end(), 0.375) - nodes.begin();
  EXPECT_LT(std::min(mesh.spacing(jump - 1), mesh.spacing(jump)), 1.5 * h_end);
  EXPECT_NEAR(mesh.min_spacing(), *std::min_element(mesh.spacings().begin(), mesh.spacings().end()), 0.0);
}

INSTANTIATE_TEST_SUITE_P(Sizes, GradedMesh, ::testing::Values(100u, 200u, 1000u));

TEST(Mesh, GradedNeighbouringRatioIsBounded) {
  const double r = 1.01;
  const MassMesh mesh = MassMesh::graded(400, {-0.5, 0.5}, r);
  for (std::size_t i = 0; i + 2 < mesh.size(); ++i) {
    const double q = mesh.spacing(i + 1) / mesh.spacing(i);
    EXPECT_LT(q, r * (1.0 + 1e-6) + 1.0) << i;  // no abrupt jumps
    EXPECT_GT(q, 1.0 / (r * (1.0 + 1e-6) + 1.0)) << i;
  }
  EXPECT_LT(mesh.spacing(0), mesh.spacing(199));
}

TEST(Mesh, GradedRejectsBadInput) {
  EXPECT_THROW(MassMesh::graded(100, {-0.5, 0.5}, 1.0), std::invalid_argument);
  EXPECT_THROW(MassMesh::graded(100, {-0.5, 0.5}, 0.9), std::invalid_argument);
  EXPECT_THROW(MassMesh::graded(100, {-0.7, 0.7}, 1.01), std::invalid_argument);
  EXPECT_THROW(MassMesh::graded(100, {-0.5, 0.25}, 1.01), std::invalid_argument);
  EXPECT_THROW(MassMesh::graded(101, {-0.5, 0.5}, 1.01), std::invalid_argument);
}

TEST(Mesh, SpecBuildsEitherKind) {
  MeshSpec spec;
  spec.n = 50;
  EXPECT_EQ(spec.build().size(), 50u);
  spec.kind = MeshSpec::Kind::graded;
  spec.focus = {-0.5, 0.5};
  spec.ratio = 1.05;
  const MassMesh mesh = spec.build();
  EXPECT_LT(mesh.spacing(0), mesh.spacing(24));
  EXPECT_EQ(fluxlag::to_string(spec.kind), "graded");
}
