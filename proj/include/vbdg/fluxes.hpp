#pragma once

#include <cmath>
#include <cstddef>

#include "errors.hpp"

namespace vbdg {

/// Weights of the generalized numerical fluxes and the fluid viscosity.
///   lambda  : LDG pair, w-hat = (1 - lambda) w^- + lambda w^+, u-hat = lambda u^- + (1 - lambda) u^+
///   lambda1 : Vlasov flux across x-interfaces
///   lambda2 : Vlasov flux across v-interfaces
struct FluxParams {
    double lambda = 1.5;
    double lambda1 = 1.5;
    double lambda2 = 1.5;
    double epsilon = 0.1;
};

/// Checks the admissible parameter set. lambda = 1/2 (central LDG fluxes) is only
/// well posed for even degree on an odd number of x-cells.
inline void validate(const FluxParams& p, int kx, std::size_t nx) {
    if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon)) throw InvalidArgument("viscosity must be positive");
    if (!(p.lambda1 > 0.5)) throw InvalidArgument("lambda1 must exceed 1/2");
    if (!(p.lambda2 > 0.5)) throw InvalidArgument("lambda2 must exceed 1/2");
    if (!(p.lambda >= 0.5)) throw InvalidArgument("lambda must be at least 1/2");
    if (p.lambda == 0.5 && !(kx % 2 == 0 && nx % 2 == 1))
        throw InvalidArgument("lambda = 1/2 requires even degree and an odd number of x-cells");
}

/// {v f} + ((1 - 2 lambda1) / 2) |v| [[f]], with [[f]] = f^+ - f^-.
inline double flux_vlasov_x(double v, double f_minus, double f_plus, double lambda1) {
    return 0.5 * v * (f_minus + f_plus) + 0.5 * (1.0 - 2.0 * lambda1) * std::abs(v) * (f_plus - f_minus);
}

/// Same form with the v-direction speed a = u_h(x) - v.
inline double flux_vlasov_v(double a, double f_minus, double f_plus, double lambda2) {
    return 0.5 * a * (f_minus + f_plus) + 0.5 * (1.0 - 2.0 * lambda2) * std::abs(a) * (f_plus - f_minus);
}

/// Central flux for u^2; makes a_h(u, u) vanish identically.
inline double flux_burgers_sq(double u_minus, double u_plus) {
    return (u_plus * u_plus + u_plus * u_minus + u_minus * u_minus) / 3.0;
}

/// weight * g^+ + (1 - weight) * g^-.
inline double flux_weighted(double g_minus, double g_plus, double weight) {
    return weight * g_plus + (1.0 - weight) * g_minus;
}

} // namespace vbdg
