#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace vbdg {

struct LegendreValue {
    double value;
    double derivative;
};

/// P_n(xi) and P_n'(xi) by the three-term recurrence.
inline LegendreValue legendre_eval(int degree, double xi) {
    if (degree < 0) throw InvalidArgument("legendre_eval: negative degree");
    if (degree == 0) return {1.0, 0.0};
    double p_prev = 1.0, p = xi;
    double d_prev = 0.0, d = 1.0;
    for (int n = 1; n < degree; ++n) {
        const double p_next = ((2.0 * n + 1.0) * xi * p - n * p_prev) / (n + 1.0);
        // P'_{n+1} = P'_{n-1} + (2n+1) P_n
        const double d_next = d_prev + (2.0 * n + 1.0) * p;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    return {p, d};
}

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

namespace detail {

inline QuadRule compute_gauss_rule(int n) {
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre_eval(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double dp = legendre_eval(n, x).derivative;
        // ascending order
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // exact symmetry
    for (int i = 0; i < n / 2; ++i) {
        const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
        const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace detail

inline constexpr int max_gauss_points = 32;

/// n-point Gauss-Legendre rule on [-1, 1], 1 <= n <= 32. Rules are built once.
inline const QuadRule& gauss_rule(int n) {
    if (n < 1 || n > max_gauss_points) throw InvalidArgument("gauss_rule: n must lie in [1, 32]");
    static const std::array<QuadRule, max_gauss_points> table = [] {
        std::array<QuadRule, max_gauss_points> t;
        for (int i = 0; i < max_gauss_points; ++i) t[i] = detail::compute_gauss_rule(i + 1);
        return t;
    }();
    return table[n - 1];
}

/// Points per direction for volume and edge integrals at polynomial degree k:
/// exact for the cubic Burgers term and the rho*u product.
inline int quadrature_points(int k) { return std::max(k + 2, (3 * k + 3) / 2); }

/// Legendre values and derivatives tabulated on the nodes of a quadrature rule.
/// val(q, m) = P_m(xi_q), der(q, m) = P_m'(xi_q).
struct BasisTable {
    int degree = 0;
    QuadRule rule;
    std::vector<double> val;
    std::vector<double> der;

    BasisTable() = default;
    BasisTable(int k, const QuadRule& r) : degree(k), rule(r) {
        const std::size_t nq = rule.size(), nm = static_cast<std::size_t>(k + 1);
        val.resize(nq * nm);
        der.resize(nq * nm);
        for (std::size_t q = 0; q < nq; ++q)
            for (std::size_t m = 0; m < nm; ++m) {
                const auto lv = legendre_eval(static_cast<int>(m), rule.nodes[q]);
                val[q * nm + m] = lv.value;
                der[q * nm + m] = lv.derivative;
            }
    }

    std::size_t modes() const { return static_cast<std::size_t>(degree + 1); }
    std::size_t points() const { return rule.size(); }
    double phi(std::size_t q, std::size_t m) const { return val[q * modes() + m]; }
    double dphi(std::size_t q, std::size_t m) const { return der[q * modes() + m]; }
};

/// P_m(-1) = (-1)^m, P_m(1) = 1.
inline double legendre_left(std::size_t m) { return (m % 2 == 0) ? 1.0 : -1.0; }
inline double legendre_right(std::size_t) { return 1.0; }

/// Integral of P_m^2 over [-1, 1].
inline double legendre_norm2(std::size_t m) { return 2.0 / (2.0 * static_cast<double>(m) + 1.0); }

} // namespace vbdg
