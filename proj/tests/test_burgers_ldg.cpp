#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <vbdg/burgers_ldg.hpp>
#include <vbdg/errors.hpp>
#include <vbdg/moments.hpp>
#include <vbdg/projections.hpp>
#include <vbdg/scenarios.hpp>
#include <vbdg/vlasov_dg.hpp>

#include "test_support.hpp"

using namespace vbdg;
using vbdg::testing::inner;
using vbdg::testing::phase_integral;
using vbdg::testing::RandomFields;
using vbdg::testing::reference_integral;
using vbdg::testing::slope;
using vbdg::testing::value;
constexpr double pi = std::numbers::pi;

namespace {
Partition1D periodic(std::size_t n) { return uniform_partition(0.0, 2 * pi, n, true); }
double jump_energy(const ScalarField1D& w) {
    double s = 0.0;
    for (std::size_t e = 0; e < w.cells(); ++e) s += w.jump(e) * w.jump(e);
    return s;
}
ScalarField1D constant(const Partition1D& p, int k, double c) {
    return l2_project_1d([c](double) { return c; }, p, k);
}
} // namespace

TEST(LdgForms, ConstantsGiveZero) {
    RandomFields rnd(1);
    const auto p = rnd.perturbed_partition(0, 1, 7, true);
    const auto phi = rnd.scalar(p, 2);
    for (double w : {0.0, 0.5, 1.0, 1.7}) {
        EXPECT_NEAR(bilinear_bh(constant(p, 2, 1.3), constant(p, 2, -0.4), w), 0.0, 1e-14);
        EXPECT_NEAR(bilinear_bh(constant(p, 2, 1.3), phi, w), 0.0, 1e-13);
    }
    EXPECT_NEAR(bilinear_ah(constant(p, 2, 2.5), phi), 0.0, 1e-13);
}

TEST(LdgForms, Mismatch) {
    const auto a = ScalarField1D(periodic(4), 1), b = ScalarField1D(periodic(4), 2), c = ScalarField1D(periodic(5), 1);
    EXPECT_THROW(bilinear_bh(a, b, 0.5), InvalidArgument);
    EXPECT_THROW(bilinear_ah(a, c), InvalidArgument);
    EXPECT_THROW(burgers_rhs(a, a, c, FluxParams{}), InvalidArgument);
}

TEST(LdgForms, WeightedJumpIdentity) {
    RandomFields rnd(2);
    for (int t = 0; t < 50; ++t) {
        const auto p = rnd.perturbed_partition(0, 2 * pi, 3 + t % 9, true);
        const auto w = rnd.scalar(p, t % 4);
        const double lam = rnd.uniform(0.5, 3.0);
        const double lhs = bilinear_bh(w, w, lam), rhs = (lam - 0.5) * jump_energy(w);
        EXPECT_NEAR(lhs, rhs, 1e-11 * (1 + std::abs(rhs)));
    }
}

TEST(LdgForms, Adjointness) {
    RandomFields rnd(3);
    for (int t = 0; t < 50; ++t) {
        const auto p = rnd.perturbed_partition(0, 2 * pi, 3 + t % 9, true);
        const int k = t % 4;
        const auto u = rnd.scalar(p, k), w = rnd.scalar(p, k);
        const double lam = rnd.uniform(0.5, 3.0);
        const double a = bilinear_bh(u, w, 1.0 - lam), b = bilinear_bh(w, u, lam);
        EXPECT_NEAR(a + b, 0.0, 1e-12 * (1 + std::abs(a)));
    }
}

TEST(LdgForms, ConvectionIsSkew) {
    RandomFields rnd(4);
    for (int t = 0; t < 50; ++t) {
        const auto p = rnd.perturbed_partition(0, 2 * pi, 3 + t % 9, true);
        const auto u = rnd.scalar(p, t % 4, 3.0);
        const double scale = std::pow(norm_l2(u), 3);
        EXPECT_LE(std::abs(bilinear_ah(u, u)), 1e-12 * scale);
    }
}

TEST(LdgForms, ConvectionAgainstQuadrature) {
    const auto p = periodic(8);
    const auto u = l2_project_1d([](double x) { return std::sin(x); }, p, 2);
    for (std::size_t cell : {0u, 3u, 7u})
        for (std::size_t mode : {0u, 1u, 2u}) {
            ScalarField1D phi(p, 2);
            phi(cell, mode) = 1.0;
            // volume term with phi_x = (2/h) P_m'
            double vol = reference_integral(
                [&](double x) {
                    const double uu = value(u, cell, x);
                    return -0.5 * uu * uu * (2.0 / p.size(cell)) * legendre_eval(int(mode), p.to_reference(cell, x)).derivative;
                },
                p.edge(cell), p.edge(cell + 1), 1);
            auto sq = [](double a, double b) { return (a * a + a * b + b * b) / 3.0; };
            const std::size_t left = cell == 0 ? 7 : cell - 1, right = cell == 7 ? 0 : cell + 1;
            const double hat_left = sq(u.right_value(left), u.left_value(cell));
            const double hat_right = sq(u.right_value(cell), u.left_value(right));
            // [[phi]] = phi^+ - phi^-: left edge sees P_m(-1), right edge sees -P_m(1)
            const double edges = -0.5 * hat_left * legendre_left(mode) + 0.5 * hat_right;
            EXPECT_NEAR(bilinear_ah(u, phi), vol + edges, 1e-13);
        }
}

TEST(SolveW, ConstantAndScaling) {
    RandomFields rnd(5);
    const auto p = rnd.perturbed_partition(0, 1, 9, true);
    const auto w0 = solve_w(constant(p, 2, 3.0), FluxParams{});
    for (double c : w0.data()) EXPECT_NEAR(c, 0.0, 1e-12);

    const auto u = rnd.scalar(p, 2);
    FluxParams a, b;
    a.epsilon = 1.0;
    b.epsilon = 4.0;
    const auto wa = solve_w(u, a), wb = solve_w(u, b);
    for (std::size_t k = 0; k < wa.data().size(); ++k) EXPECT_NEAR(wb.data()[k], 2.0 * wa.data()[k], 1e-12);
}

TEST(SolveW, DefiningRelation) {
    RandomFields rnd(6);
    const auto p = rnd.perturbed_partition(0, 2 * pi, 6, true);
    FluxParams params;
    params.epsilon = 0.3;
    params.lambda = 1.2;
    const auto u = rnd.scalar(p, 2);
    const auto w = solve_w(u, params);
    for (std::size_t i = 0; i < p.cells(); ++i)
        for (std::size_t m = 0; m < 3; ++m) {
            ScalarField1D q(p, 2);
            q(i, m) = 1.0;
            EXPECT_NEAR(inner(w, q) + std::sqrt(params.epsilon) * bilinear_bh(u, q, 1.0 - params.lambda), 0.0, 1e-13);
        }
}

// From an L2-projected u the auxiliary variable is only O(h^k) accurate; from the
// Gauss-Radau projection matched to the u-flux it is the L2 projection of u_x.
TEST(SolveW, ApproximatesDerivative) {
    auto sine = [](double x) { return std::sin(x); };
    auto cosine = [](double x) { return std::cos(x); };
    for (int k : {1, 2}) {
        std::vector<double> e_l2, e_gr, h;
        FluxParams params;
        params.epsilon = 1.0;
        for (std::size_t n : {16u, 32u, 64u}) {
            const auto p = periodic(n);
            e_l2.push_back(error_l2(solve_w(l2_project_1d(sine, p, k), params), cosine));
            e_gr.push_back(error_l2(solve_w(gauss_radau_1d(sine, p, k, params.lambda), params), cosine));
            h.push_back(p.max_size());
        }
        EXPECT_GT(slope(h[1], e_l2[1], h[2], e_l2[2]), k - 0.1) << "k=" << k;
        EXPECT_GT(slope(h[1], e_gr[1], h[2], e_gr[2]), k + 0.9) << "k=" << k;
    }
}

TEST(BurgersRhs, ZeroState) {
    const auto p = periodic(6);
    const ScalarField1D z(p, 2);
    RandomFields rnd(7);
    const auto r = burgers_rhs(z, rnd.scalar(p, 2), z, FluxParams{});
    for (double c : r.data()) EXPECT_EQ(c, 0.0);
}

TEST(BurgersRhs, TotalMomentumBalance) {
    RandomFields rnd(8);
    const auto s = scenario("ex2");
    for (int t = 0; t < 20; ++t) {
        const auto p = rnd.perturbed_partition(0, 2 * pi, 5 + t, true);
        const int k = 1 + t % 3;
        const auto u = rnd.scalar(p, k), rho = rnd.scalar(p, k), rv = rnd.scalar(p, k);
        const auto r = burgers_rhs(u, rho, rv, FluxParams{});
        const double drag = integral(rv) - inner(rho, u);
        EXPECT_NEAR(integral(r), drag, 1e-12 * (1 + std::abs(drag)));

        const auto rg = burgers_rhs(u, rho, rv, FluxParams{}, s.G, 0.2);
        const double g_discrete = integral(l2_project_1d([&](double x) { return s.G(0.2, x); }, p, k));
        EXPECT_NEAR(integral(rg), drag + g_discrete, 1e-12 * (1 + std::abs(drag + g_discrete)));
        const double g = reference_integral([&](double x) { return s.G(0.2, x); }, 0, 2 * pi);
        EXPECT_NEAR(integral(rg), drag + g, 1e-3);
    }
}

TEST(BurgersRhs, DiscreteEnergyIdentity) {
    RandomFields rnd(9);
    for (int t = 0; t < 10; ++t) {
        const int kx = 1 + t % 2, kv = 2 + t % 2;
        const auto m = tensor_mesh(rnd.perturbed_partition(0, 2 * pi, 5, true), uniform_partition(-2, 2, 6, false));
        FluxParams params;
        params.epsilon = rnd.uniform(0.01, 1.0);
        params.lambda = rnd.uniform(0.6, 2.5);
        const auto f = rnd.phase(m, kx, kv);
        const auto u = rnd.scalar(m.x(), kx);
        const auto df = vlasov_rhs(f, u, params);
        const auto du = burgers_rhs(u, density(f), momentum(f), params);
        const auto half_v2 = l2_project_2d([](double, double v) { return 0.5 * v * v; }, m, kx, kv);
        const double lhs = inner(df, half_v2) + inner(du, u);
        const auto w = solve_w(u, params);
        const double rhs = -inner(w, w) - phase_integral(f, [&](std::size_t i, std::size_t j, double x, double v) {
            const double d = value(u, i, x) - v;
            return d * d * value(f, i, j, x, v);
        });
        EXPECT_NEAR(lhs, rhs, 1e-10 * (1 + std::abs(rhs)));
    }
}

// The pointwise residual of the LDG operator on projected exact data is O(h^k).
TEST(BurgersRhs, ConsistencyWithManufacturedSolution) {
    const auto s = scenario("ex2", 0.1);
    for (int k : {1, 2}) {
        std::vector<double> e, h;
        for (std::size_t n : {16u, 32u, 64u}) {
            const auto m = tensor_mesh(periodic(n), uniform_partition(-1, 1, n, false));
            const auto u = gauss_radau_1d(s.u0, m.x(), k, s.defaults.lambda);
            const auto f = l2_project_2d(s.f0, m, k, k);
            const auto r = burgers_rhs(u, density(f), momentum(f), s.defaults, s.G, 0.0);
            e.push_back(error_l2(r, [](double x) { return -(std::cos(x) + std::sin(x)); }));
            h.push_back(m.x().max_size());
        }
        const double rate = slope(h[1], e[1], h[2], e[2]);
        EXPECT_GT(rate, k - 0.1) << "k=" << k << " rate " << rate << " errors " << e[0] << ' ' << e[1] << ' ' << e[2];
    }
}
