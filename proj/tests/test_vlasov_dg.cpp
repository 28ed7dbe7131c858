#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <vbdg/errors.hpp>
#include <vbdg/parallel.hpp>
#include <vbdg/projections.hpp>
#include <vbdg/scenarios.hpp>
#include <vbdg/vlasov_dg.hpp>

#include "test_support.hpp"

using namespace vbdg;
using vbdg::testing::RandomFields;
using vbdg::testing::phase_integral;
using vbdg::testing::reference_integral;
using vbdg::testing::value;
using vbdg::testing::dissipation_form;
using vbdg::testing::random_mesh;
constexpr double pi = std::numbers::pi;

TEST(VlasovOperator, ZeroField) {
    const auto m = tensor_mesh(uniform_partition(0, 2 * pi, 4, true), uniform_partition(-1, 1, 4, false));
    RandomFields rnd(1);
    const auto r = vlasov_rhs(PhaseField2D(m, 1, 2), rnd.scalar(m.x(), 1), FluxParams{});
    for (double c : r.data()) EXPECT_EQ(c, 0.0);
}

TEST(VlasovOperator, MismatchThrows) {
    const auto m = tensor_mesh(uniform_partition(0, 2 * pi, 4, true), uniform_partition(-1, 1, 4, false));
    const VlasovOperator op(m, 1, 1, FluxParams{});
    EXPECT_THROW(op.moments(PhaseField2D(m, 2, 1), ScalarField1D(m.x(), 1)), InvalidArgument);
    EXPECT_THROW(op.moments(PhaseField2D(m, 1, 1), ScalarField1D(uniform_partition(0, 2 * pi, 5, true), 1)),
                 InvalidArgument);
    EXPECT_THROW(bilinear_Bh(ScalarField1D(m.x(), 1), PhaseField2D(m, 1, 1), PhaseField2D(m, 1, 2), FluxParams{}),
                 InvalidArgument);
}

TEST(VlasovOperator, MassPairingVanishes) {
    RandomFields rnd(2);
    for (int t = 0; t < 20; ++t) {
        const int kx = 1 + t % 3, kv = t % 3;
        const auto m = random_mesh(rnd, 5, 6, 2.0);
        const auto f = rnd.phase(m, kx, kv), psi = l2_project_2d([](double, double) { return 1.0; }, m, kx, kv);
        const auto u = rnd.scalar(m.x(), kx, 2.0);
        FluxParams p;
        p.lambda1 = rnd.uniform(0.6, 3.0);
        p.lambda2 = rnd.uniform(0.6, 3.0);
        EXPECT_NEAR(bilinear_Bh(u, f, psi, p), 0.0, 1e-12);
        EXPECT_NEAR(integral(vlasov_rhs(f, u, p)), 0.0, 1e-12);
    }
}

TEST(VlasovOperator, MassOfDerivativeEqualsSourceMass) {
    const auto s = scenario("ex1");
    const auto m = tensor_mesh(uniform_partition(0, 2 * pi, 8, true), uniform_partition(-1, 1, 8, false));
    RandomFields rnd(3);
    const auto f = rnd.phase(m, 1, 1);
    const auto u = rnd.scalar(m.x(), 1);
    const double t = 0.03;
    const auto r = vlasov_rhs(f, u, FluxParams{}, s.F, t);
    const double oracle = reference_integral([&](double x) {
        return reference_integral([&](double v) { return s.F(t, x, v); }, -1, 1, 8);
    }, 0, 2 * pi, 16);
    const auto sm = VlasovOperator(m, 1, 1, FluxParams{}).source_moments(s.F, t);
    double discrete = 0.0;
    for (std::size_t i = 0; i < m.nx(); ++i)
        for (std::size_t j = 0; j < m.nv(); ++j) discrete += sm[f.offset(i, j)];
    EXPECT_NEAR(integral(r), discrete, 1e-12);
    EXPECT_NEAR(integral(r), oracle, 1e-6);
}

TEST(VlasovOperator, MomentumPairing) {
    RandomFields rnd(4);
    for (int t = 0; t < 20; ++t) {
        const int kx = 1 + t % 2, kv = 1 + t % 3;
        const auto m = random_mesh(rnd, 4, 6, 3.0);
        const auto f = rnd.phase(m, kx, kv);
        const auto u = rnd.scalar(m.x(), kx, 2.0);
        const auto r = vlasov_rhs(f, u, FluxParams{});
        const auto v = l2_project_2d([](double, double v) { return v; }, m, kx, kv);
        const double lhs = vbdg::testing::inner(r, v);
        const double rhs = phase_integral(f, [&](std::size_t i, std::size_t j, double x, double vv) {
            return (value(u, i, x) - vv) * value(f, i, j, x, vv);
        });
        EXPECT_NEAR(lhs, rhs, 1e-11 * (1 + std::abs(rhs)));
    }
}

TEST(VlasovOperator, EnergyPairing) {
    RandomFields rnd(5);
    for (int t = 0; t < 20; ++t) {
        const int kx = 1 + t % 2, kv = 2 + t % 2;
        const auto m = random_mesh(rnd, 4, 6, 3.0);
        const auto f = rnd.phase(m, kx, kv);
        const auto u = rnd.scalar(m.x(), kx, 2.0);
        const auto psi = l2_project_2d([](double, double v) { return 0.5 * v * v; }, m, kx, kv);
        const double lhs = -bilinear_Bh(u, f, psi, FluxParams{});
        const double rhs = -phase_integral(f, [&](std::size_t i, std::size_t j, double x, double vv) {
            return (vv * vv - value(u, i, x) * vv) * value(f, i, j, x, vv);
        });
        EXPECT_NEAR(lhs, rhs, 1e-11 * (1 + std::abs(rhs)));
    }
}

TEST(VlasovOperator, L2DissipationIdentity) {
    RandomFields rnd(6);
    for (int t = 0; t < 20; ++t) {
        const int kx = 1 + t % 3, kv = 1 + (t / 3) % 3;
        const auto m = random_mesh(rnd, 5, 6, 2.5);
        const auto f = rnd.phase(m, kx, kv);
        const auto u = rnd.scalar(m.x(), kx, 2.0);
        FluxParams p;
        p.lambda1 = rnd.uniform(0.6, 3.0);
        p.lambda2 = rnd.uniform(0.6, 3.0);
        const double b = bilinear_Bh(u, f, f, p);
        EXPECT_NEAR(b, dissipation_form(u, f, p), 1e-11 * (1 + std::abs(b))) << t;
    }
}

TEST(VlasovOperator, DeterministicAcrossThreadCounts) {
    RandomFields rnd(7);
    const auto m = random_mesh(rnd, 64, 8, 1.0);
    const auto f = rnd.phase(m, 2, 2);
    const auto u = rnd.scalar(m.x(), 2);
    const unsigned before = max_threads();
    set_max_threads(1);
    const auto r1 = vlasov_rhs(f, u, FluxParams{});
    set_max_threads(4);
    const auto r4 = vlasov_rhs(f, u, FluxParams{});
    set_max_threads(before);
    EXPECT_EQ(r1.data(), r4.data());
}

// Inputs are Gauss-Radau projections of the exact data; the pointwise residual then
// decays like h^(k+1/2) (h^k with L2-projected inputs).
TEST(VlasovOperator, ConsistencyWithManufacturedSolution) {
    const auto s = scenario("ex1");
    for (int k : {1, 2}) {
        std::vector<double> e, h;
        for (std::size_t n : {8u, 16u, 32u}) {
            const auto m = tensor_mesh(uniform_partition(0, 2 * pi, n, true), uniform_partition(-1, 1, n, false));
            const auto u = gauss_radau_1d(s.u0, m.x(), k, s.defaults.lambda);
            const auto f = pi_2d(s.f0, s.u0, m, k, k, s.defaults.lambda1, s.defaults.lambda2);
            const auto r = vlasov_rhs(f, u, s.defaults, s.F, 0.0, s.f_exact);
            e.push_back(error_l2(r, [](double x, double v) { return -std::cos(x) * std::exp(-v * v); }));
            h.push_back(m.h());
        }
        const double rate = vbdg::testing::slope(h[1], e[1], h[2], e[2]);
        RecordProperty("rate_k" + std::to_string(k), std::to_string(rate));
        EXPECT_GT(rate, k + 0.4) << "k=" << k << " errors " << e[0] << ' ' << e[1] << ' ' << e[2];
    }
}
