#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "diffkde/mesh.hpp"

using namespace diffkde;

TEST(Mesh, PaperPartition) {
  const Mesh1D mesh = build_mesh(0.0, 10.0, 5000);
  EXPECT_EQ(mesh.num_nodes(), 5001u);
  EXPECT_DOUBLE_EQ(mesh.h(), 0.002);
  EXPECT_EQ(mesh.nodes().front(), 0.0);
  EXPECT_EQ(mesh.nodes().back(), 10.0);
}

TEST(Mesh, SmallMeshes) {
  const Mesh1D one = build_mesh(0.0, 1.0, 1);
  ASSERT_EQ(one.nodes(), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(one.h(), 1.0);

  const Mesh1D two = build_mesh(0.0, 1.0, 2);
  ASSERT_EQ(two.nodes(), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(two.h(), 0.5);
}

TEST(Mesh, RejectsBadInput) {
  EXPECT_THROW(build_mesh(1.0, 1.0, 4), DomainError);
  EXPECT_THROW(build_mesh(2.0, 1.0, 4), DomainError);
  EXPECT_THROW(build_mesh(0.0, 1.0, 0), SizeError);
}

TEST(Mesh, SpacingInvariantOnRandomMeshes) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> left(-100.0, 100.0);
  std::uniform_real_distribution<double> width(1e-3, 1e3);
  std::uniform_int_distribution<std::size_t> count(1, 20000);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = left(rng);
    const double b = a + width(rng);
    const std::size_t m = count(rng);
    const Mesh1D mesh = build_mesh(a, b, m);
    const auto& x = mesh.nodes();
    ASSERT_EQ(x.front(), a);
    ASSERT_EQ(x.back(), b);
    const double ulp = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      ASSERT_LT(x[i], x[i + 1]);
      ASSERT_NEAR(x[i + 1] - x[i], mesh.h(), ulp);
      total += x[i + 1] - x[i];
    }
    EXPECT_NEAR(total, b - a, static_cast<double>(m) * ulp);
  }
}

TEST(NearestNode, DistanceAndTies) {
  const Mesh1D mesh = build_mesh(0.0, 1.0, 2);
  EXPECT_EQ(nearest_node(mesh, 0.74), 1u);
  EXPECT_EQ(nearest_node(mesh, 0.76), 2u);
  EXPECT_EQ(nearest_node(mesh, 0.25), 0u);
  EXPECT_EQ(nearest_node(mesh, 0.75), 1u);
  EXPECT_EQ(nearest_node(mesh, 0.0), 0u);
  EXPECT_EQ(nearest_node(mesh, 1.0), 2u);
  EXPECT_EQ(nearest_node(build_mesh(0.0, 10.0, 5000), 10.0), 5000u);
}

TEST(NearestNode, OutOfDomain) {
  const Mesh1D mesh = build_mesh(0.0, 1.0, 2);
  EXPECT_THROW(nearest_node(mesh, -1e-12), DomainError);
  EXPECT_THROW(nearest_node(mesh, 1.0000001), DomainError);
}

TEST(NearestNode, IdempotentOnNodes) {
  for (std::size_t m : {1u, 3u, 7u, 64u, 5000u, 99991u}) {
    const Mesh1D mesh = build_mesh(-3.7, 10.1, m);
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i) ASSERT_EQ(nearest_node(mesh, mesh.nodes()[i]), i);
  }
}

TEST(NearestNode, MatchesBruteForce) {
  const Mesh1D mesh = build_mesh(0.0, 10.0, 137);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double x = dist(rng);
    std::size_t best = 0;
    for (std::size_t i = 1; i < mesh.num_nodes(); ++i)
      if (std::abs(x - mesh.nodes()[i]) < std::abs(x - mesh.nodes()[best])) best = i;
    ASSERT_EQ(nearest_node(mesh, x), best) << "x=" << x;
  }
}
