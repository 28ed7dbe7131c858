#pragma once

#include <cmath>
#include <cstddef>

#include "errors.hpp"
#include "fields.hpp"
#include "quadrature.hpp"

namespace vbdg {

namespace detail {

/// Integral of g(v) P_n(eta(v)) over v-cell j, for every n <= kv, using a
/// 16-point rule (exact for polynomial g of degree <= 31 - kv).
template <class G>
std::vector<double> v_weights(const Partition1D& pv, std::size_t j, int kv, G&& g) {
    const QuadRule& r = gauss_rule(16);
    std::vector<double> w(static_cast<std::size_t>(kv + 1), 0.0);
    for (std::size_t q = 0; q < r.size(); ++q) {
        const double v = pv.to_physical(j, r.nodes[q]);
        const double gv = g(v) * r.weights[q] * 0.5 * pv.size(j);
        for (std::size_t n = 0; n < w.size(); ++n) w[n] += gv * legendre_eval(static_cast<int>(n), r.nodes[q]).value;
    }
    return w;
}

template <class G>
ScalarField1D integrate_in_v(const PhaseField2D& f, G&& g) {
    ScalarField1D out(f.mesh().x(), f.kx());
    for (std::size_t j = 0; j < f.nv(); ++j) {
        const auto w = v_weights(f.mesh().v(), j, f.kv(), g);
        for (std::size_t i = 0; i < f.nx(); ++i)
            for (std::size_t m = 0; m < f.mx(); ++m) {
                double s = 0.0;
                for (std::size_t n = 0; n < f.mv(); ++n) s += f(i, j, m, n) * w[n];
                out(i, m) += s;
            }
    }
    return out;
}

} // namespace detail

/// rho_h(x) = sum_j int_{J_j} f_h dv. Only v-mode 0 survives, so the result
/// lies in the x-space of f with no projection error.
inline ScalarField1D density(const PhaseField2D& f) {
    ScalarField1D out(f.mesh().x(), f.kx());
    const auto& pv = f.mesh().v();
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.nv(); ++j)
            for (std::size_t m = 0; m < f.mx(); ++m) out(i, m) += pv.size(j) * f(i, j, m, 0);
    return out;
}

/// (rho V)_h(x) = sum_j int_{J_j} v f_h dv. With v = v_j + (h_j / 2) eta, only
/// v-modes 0 and 1 contribute: h_j (v_j c_0 + h_j c_1 / 6).
inline ScalarField1D momentum(const PhaseField2D& f) {
    ScalarField1D out(f.mesh().x(), f.kx());
    const auto& pv = f.mesh().v();
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.nv(); ++j) {
            const double h = pv.size(j), vc = pv.center(j);
            for (std::size_t m = 0; m < f.mx(); ++m) {
                double s = vc * f(i, j, m, 0);
                if (f.mv() > 1) s += h / 6.0 * f(i, j, m, 1);
                out(i, m) += h * s;
            }
        }
    return out;
}

/// p-th absolute velocity moment int |v|^p f_h dv, p <= 4. Exact on cells that
/// do not straddle v = 0; a quadrature approximation otherwise.
inline ScalarField1D moment_k(const PhaseField2D& f, int p) {
    if (p < 0 || p > 4) throw InvalidArgument("moment_k: order must lie in [0, 4]");
    if (p == 0) return density(f);
    return detail::integrate_in_v(f, [p](double v) { return std::pow(std::abs(v), p); });
}

} // namespace vbdg
