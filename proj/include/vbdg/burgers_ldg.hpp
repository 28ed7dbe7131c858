#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "fluxes.hpp"
#include "quadrature.hpp"

namespace vbdg {

/// A function of (t, x): a fluid source term.
using LineSource = std::function<double(double, double)>;

namespace detail {

inline void require_same(const ScalarField1D& a, const ScalarField1D& b, const char* who) {
    if (!same_discretization(a, b)) throw InvalidArgument(std::string(who) + ": fields differ in partition or degree");
}

/// b_h(w, phi_im; weight) for every basis function phi_im.
inline std::vector<double> bh_moments(const ScalarField1D& w, double weight) {
    const std::size_t n = w.cells(), nm = w.modes();
    const BasisTable tab(w.degree(), gauss_rule(quadrature_points(w.degree())));
    std::vector<double> out(n * nm, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        // int_{I_i} w (2/h) P_m' dx = sum_q w_q w(xi_q) P_m'(xi_q)
        for (std::size_t q = 0; q < tab.points(); ++q) {
            double wq = 0.0;
            for (std::size_t m = 0; m < nm; ++m) wq += w(i, m) * tab.phi(q, m);
            for (std::size_t m = 0; m < nm; ++m) out[i * nm + m] += tab.rule.weights[q] * wq * tab.dphi(q, m);
        }
    }
    // interface e sits between cell e-1 (minus) and cell e (plus); [[phi]] = phi^+ - phi^-
    for (std::size_t e = 0; e < n; ++e) {
        const std::size_t il = (e == 0) ? n - 1 : e - 1;
        const double hat = flux_weighted(w.right_value(il), w.left_value(e), weight);
        for (std::size_t m = 0; m < nm; ++m) {
            out[e * nm + m] += hat * legendre_left(m);
            out[il * nm + m] -= hat;
        }
    }
    return out;
}

/// a_h(u, phi_im) for every basis function.
inline std::vector<double> ah_moments(const ScalarField1D& u) {
    const std::size_t n = u.cells(), nm = u.modes();
    const BasisTable tab(u.degree(), gauss_rule(quadrature_points(u.degree())));
    std::vector<double> out(n * nm, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < tab.points(); ++q) {
            double uq = 0.0;
            for (std::size_t m = 0; m < nm; ++m) uq += u(i, m) * tab.phi(q, m);
            for (std::size_t m = 0; m < nm; ++m) out[i * nm + m] -= tab.rule.weights[q] * 0.5 * uq * uq * tab.dphi(q, m);
        }
    for (std::size_t e = 0; e < n; ++e) {
        const std::size_t il = (e == 0) ? n - 1 : e - 1;
        const double half_hat = 0.5 * flux_burgers_sq(u.right_value(il), u.left_value(e));
        for (std::size_t m = 0; m < nm; ++m) {
            out[e * nm + m] -= half_hat * legendre_left(m);
            out[il * nm + m] += half_hat;
        }
    }
    return out;
}

inline double dot(const std::vector<double>& moments, const ScalarField1D& phi) {
    double s = 0.0;
    for (std::size_t k = 0; k < moments.size(); ++k) s += moments[k] * phi.data()[k];
    return s;
}

inline double mass_entry(const Partition1D& p, std::size_t i, std::size_t m) { return p.size(i) / (2.0 * m + 1.0); }

} // namespace detail

/// b_h(w, phi) = sum_i int w phi_x + sum_e w-hat [[phi]], w-hat = weight w^+ + (1 - weight) w^-.
/// The w-slot of the LDG pair uses weight lambda, the u-slot 1 - lambda.
inline double bilinear_bh(const ScalarField1D& w, const ScalarField1D& phi, double weight) {
    detail::require_same(w, phi, "bilinear_bh");
    return detail::dot(detail::bh_moments(w, weight), phi);
}

/// a_h(u, phi) = -sum_i int (u^2/2) phi_x - sum_e (u^2-hat [[phi]]) / 2 with the central u^2 flux.
inline double bilinear_ah(const ScalarField1D& u, const ScalarField1D& phi) {
    detail::require_same(u, phi, "bilinear_ah");
    return detail::dot(detail::ah_moments(u), phi);
}

/// Auxiliary variable w_h from (w_h, q) + sqrt(eps) b_h(u_h, q; 1 - lambda) = 0.
/// The mass matrix is diagonal, so this is a cell-local division.
inline ScalarField1D solve_w(const ScalarField1D& u, const FluxParams& params) {
    const auto b = detail::bh_moments(u, 1.0 - params.lambda);
    ScalarField1D w(u.partition(), u.degree());
    const double se = std::sqrt(params.epsilon);
    for (std::size_t i = 0; i < u.cells(); ++i)
        for (std::size_t m = 0; m < u.modes(); ++m)
            w(i, m) = -se * b[i * u.modes() + m] / detail::mass_entry(u.partition(), i, m);
    return w;
}

/// Time derivative of u_h:
///   (u_t, phi) = -a_h(u, phi) - sqrt(eps) b_h(w, phi; lambda) - (rho u, phi) + (rho V, phi) + (G, phi).
inline ScalarField1D burgers_rhs(const ScalarField1D& u, const ScalarField1D& rho, const ScalarField1D& rho_v,
                                 const FluxParams& params, const LineSource& source = {}, double t = 0.0) {
    detail::require_same(u, rho, "burgers_rhs");
    detail::require_same(u, rho_v, "burgers_rhs");
    const std::size_t n = u.cells(), nm = u.modes();
    const auto& part = u.partition();
    const ScalarField1D w = solve_w(u, params);
    auto r = detail::ah_moments(u);
    const auto bw = detail::bh_moments(w, params.lambda);
    const double se = std::sqrt(params.epsilon);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = -r[k] - se * bw[k];

    const BasisTable tab(u.degree(), gauss_rule(quadrature_points(u.degree())));
    for (std::size_t i = 0; i < n; ++i) {
        const double jac = 0.5 * part.size(i);
        for (std::size_t q = 0; q < tab.points(); ++q) {
            double uq = 0.0, rq = 0.0, mq = 0.0;
            for (std::size_t m = 0; m < nm; ++m) {
                uq += u(i, m) * tab.phi(q, m);
                rq += rho(i, m) * tab.phi(q, m);
                mq += rho_v(i, m) * tab.phi(q, m);
            }
            double g = mq - rq * uq;
            if (source) g += source(t, part.to_physical(i, tab.rule.nodes[q]));
            for (std::size_t m = 0; m < nm; ++m) r[i * nm + m] += jac * tab.rule.weights[q] * g * tab.phi(q, m);
        }
    }
    ScalarField1D out(part, u.degree());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < nm; ++m) out(i, m) = r[i * nm + m] / detail::mass_entry(part, i, m);
    return out;
}

} // namespace vbdg
