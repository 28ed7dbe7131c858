#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <vbdg/errors.hpp>
#include <vbdg/mesh.hpp>

using namespace vbdg;
constexpr double pi = std::numbers::pi;

TEST(Partition, UniformEdges) {
    const auto p = uniform_partition(0.0, 2 * pi, 4, true);
    ASSERT_EQ(p.cells(), 4u);
    const double want[] = {0.0, pi / 2, pi, 3 * pi / 2, 2 * pi};
    for (std::size_t i = 0; i <= 4; ++i) EXPECT_NEAR(p.edge(i), want[i], 1e-15);
    EXPECT_TRUE(p.periodic());
}

TEST(Partition, NonPeriodicSizes) {
    const auto p = uniform_partition(-1.0, 1.0, 2, false);
    EXPECT_DOUBLE_EQ(p.size(0), 1.0);
    EXPECT_DOUBLE_EQ(p.size(1), 1.0);
    EXPECT_FALSE(p.periodic());
}

TEST(Partition, FineSpacing) {
    const auto p = uniform_partition(0.0, 2 * pi, 128, true);
    EXPECT_NEAR(p.max_size(), 2 * pi / 128, 1e-15);
    EXPECT_NEAR(p.max_size(), 0.0491, 1e-4);
}

TEST(Partition, SizesSumToLength) {
    for (std::size_t n : {1u, 3u, 7u, 64u, 1000u}) {
        const auto p = uniform_partition(-5.0, 5.0, n, false);
        double s = 0.0;
        for (double h : p.sizes()) s += h;
        EXPECT_NEAR(s, p.length(), 1e-12);
        EXPECT_NEAR(p.quasi_uniformity(), 1.0, 1e-9);
    }
}

TEST(Partition, RefinementHalvesCells) {
    const auto p = uniform_partition(0.0, 2 * pi, 16, true);
    const auto q = uniform_partition(0.0, 2 * pi, 32, true);
    for (std::size_t i = 0; i < 16; ++i) {
        EXPECT_NEAR(q.size(2 * i), 0.5 * p.size(i), 1e-15);
        EXPECT_NEAR(q.size(2 * i + 1), 0.5 * p.size(i), 1e-15);
    }
}

TEST(Partition, Errors) {
    EXPECT_THROW(uniform_partition(0.0, 1.0, 0, true), InvalidArgument);
    EXPECT_THROW(uniform_partition(0.0, std::numeric_limits<double>::infinity(), 4, true), InvalidArgument);
    EXPECT_THROW(uniform_partition(std::nan(""), 1.0, 4, true), InvalidArgument);
    EXPECT_THROW(uniform_partition(1.0, 1.0, 4, true), InvalidArgument);
    EXPECT_THROW(Partition1D({0.0, 1.0, 0.5}, false), InvalidArgument);
}

TEST(Partition, LocateAndMaps) {
    const auto p = uniform_partition(-1.0, 1.0, 4, false);
    EXPECT_EQ(p.locate(-1.0), 0u);
    EXPECT_EQ(p.locate(-0.6), 0u);
    EXPECT_EQ(p.locate(0.1), 2u);
    EXPECT_EQ(p.locate(1.0), 3u);
    EXPECT_NEAR(p.to_reference(1, -0.25), 0.0, 1e-15);
    EXPECT_NEAR(p.to_physical(1, 1.0), 0.0, 1e-15);
    EXPECT_TRUE(p.has_edge_at(0.0));
    EXPECT_FALSE(p.has_edge_at(0.1));
}

TEST(Mesh, CellsAndSpacing) {
    const auto m = tensor_mesh(uniform_partition(0.0, 2 * pi, 4, true), uniform_partition(-1.0, 1.0, 4, false));
    EXPECT_EQ(m.cells(), 16u);
    EXPECT_NEAR(m.h(), pi / 2, 1e-15);
    EXPECT_DOUBLE_EQ(m.velocity_bound(), 1.0);

    const auto m2 = tensor_mesh(uniform_partition(0.0, 2 * pi, 8, true), uniform_partition(-1.0, 1.0, 16, false));
    EXPECT_EQ(m2.cells(), 128u);
    EXPECT_EQ(m2.nx(), 8u);
    EXPECT_EQ(m2.nv(), 16u);
    EXPECT_DOUBLE_EQ(m2.x().a(), 0.0);
    EXPECT_DOUBLE_EQ(m2.x().b(), 2 * pi);
    EXPECT_DOUBLE_EQ(m2.v().a(), -1.0);
    EXPECT_DOUBLE_EQ(m2.v().b(), 1.0);
}

TEST(Mesh, PeriodicityRequirements) {
    EXPECT_THROW(tensor_mesh(uniform_partition(0, 1, 2, false), uniform_partition(-1, 1, 2, false)), InvalidArgument);
    EXPECT_THROW(tensor_mesh(uniform_partition(0, 1, 2, true), uniform_partition(-1, 1, 2, true)), InvalidArgument);
}
