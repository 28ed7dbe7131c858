#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fluxes.hpp"

namespace vbdg {

/// One experiment: domain, data, forcing, exact solution (when known) and
/// default discretization settings.
struct Scenario {
    std::string id;
    double x_min = 0.0, x_max = 2.0 * std::numbers::pi;
    double v_min = -1.0, v_max = 1.0;
    double t_final = 0.1;

    std::function<double(double, double)> f0;  // f(0, x, v)
    std::function<double(double)> u0;          // u(0, x)

    std::function<double(double, double, double)> F;  // empty: no kinetic source
    std::function<double(double, double)> G;          // empty: no fluid source

    std::function<double(double, double, double)> f_exact;  // empty: unknown
    std::function<double(double, double)> u_exact;

    FluxParams defaults;
    int kx = 1, kv = 1;
    std::size_t nx = 16, nv = 16;

    bool has_exact() const { return static_cast<bool>(f_exact) && static_cast<bool>(u_exact); }
};

/// int_{-1}^{1} e^{-v^2} dv = sqrt(pi) erf(1); the density factor of the first
/// manufactured problem.
inline constexpr double gaussian_mass_unit = 1.493648265624854;
/// int_{-1}^{1} e^{-v^2/2} (1 + 5 v^2) dv; the density factor of the second.
inline constexpr double weighted_gaussian_mass_unit = 4.202186105579451;

namespace detail {

inline Scenario make_ex1(double epsilon) {
    Scenario s;
    s.id = "ex1";
    s.defaults.epsilon = epsilon;
    s.f_exact = [](double t, double x, double v) { return (1.0 + std::sin(x - t)) * std::exp(-v * v); };
    s.u_exact = [](double t, double x) { return std::sin(x - t); };
    s.f0 = [f = s.f_exact](double x, double v) { return f(0.0, x, v); };
    s.u0 = [u = s.u_exact](double x) { return u(0.0, x); };
    s.F = [](double t, double x, double v) {
        const double sn = std::sin(x - t), cs = std::cos(x - t), g = std::exp(-v * v);
        return (v - 1.0) * cs * g - (2.0 * v * (sn - v) + 1.0) * (1.0 + sn) * g;
    };
    s.G = [eps = epsilon](double t, double x) {
        const double sn = std::sin(x - t), cs = std::cos(x - t);
        return (sn - 1.0) * cs + eps * sn + gaussian_mass_unit * (1.0 + sn) * sn;
    };
    return s;
}

inline Scenario make_ex2(double epsilon) {
    Scenario s;
    s.id = "ex2";
    s.defaults.epsilon = epsilon;
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    s.f_exact = [norm](double t, double x, double v) {
        return norm * std::exp(t) * std::exp(-0.5 * v * v) * (1.0 + std::cos(x)) * (1.0 + 5.0 * v * v);
    };
    s.u_exact = [](double t, double x) { return std::exp(-t) * (std::cos(x) + std::sin(x)); };
    s.f0 = [f = s.f_exact](double x, double v) { return f(0.0, x, v); };
    s.u0 = [u = s.u_exact](double x) { return u(0.0, x); };
    // F = f_t + v f_x + ((u - v) f)_v for the exact pair; the f_t and -f terms cancel.
    s.F = [norm](double t, double x, double v) {
        const double u = std::exp(-t) * (std::cos(x) + std::sin(x));
        return norm * std::exp(t) * std::exp(-0.5 * v * v) *
               ((u - v) * (1.0 + std::cos(x)) * (9.0 * v - 5.0 * v * v * v) - v * std::sin(x) * (1.0 + 5.0 * v * v));
    };
    s.G = [norm, eps = epsilon](double t, double x) {
        const double c = std::cos(x), sn = std::sin(x);
        return (-1.0 + eps) * (c + sn) * std::exp(-t) + std::exp(-2.0 * t) * std::cos(2.0 * x) +
               norm * weighted_gaussian_mass_unit * (1.0 + c) * (c + sn);
    };
    return s;
}

inline void conservation_defaults(Scenario& s) {
    s.v_min = -5.0;
    s.v_max = 5.0;
    s.t_final = 0.5;
    s.kx = 1;
    s.kv = 2;
    s.nx = 128;
    s.nv = 128;
}

inline Scenario make_ex3() {
    Scenario s;
    s.id = "ex3";
    conservation_defaults(s);
    s.f0 = [](double x, double v) { return std::abs(v) <= 1.0 ? (1.0 + std::sin(x)) * std::exp(-v * v) : 0.0; };
    s.u0 = [](double x) { return std::sin(x); };
    return s;
}

inline Scenario make_ex4() {
    Scenario s;
    s.id = "ex4";
    conservation_defaults(s);
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    s.f0 = [norm](double x, double v) {
        return std::abs(v) <= 1.0 ? norm * std::exp(-0.5 * v * v) * (1.0 + std::cos(x)) * (1.0 + 5.0 * v * v) : 0.0;
    };
    s.u0 = [](double x) { return std::sin(x) + std::cos(x); };
    return s;
}

} // namespace detail

inline const std::vector<std::string>& scenario_ids() {
    static const std::vector<std::string> ids{"ex1", "ex2", "ex3", "ex4"};
    return ids;
}

/// Scenario by id: "ex1", "ex2" (manufactured, with exact solutions) or
/// "ex3", "ex4" (unforced, for conservation studies). The fluid source of the
/// manufactured scenarios depends on the viscosity, so it is built for `epsilon`.
inline Scenario scenario(const std::string& id, double epsilon = 0.1) {
    if (id == "ex1") return detail::make_ex1(epsilon);
    if (id == "ex2") return detail::make_ex2(epsilon);
    Scenario s;
    if (id == "ex3") s = detail::make_ex3();
    else if (id == "ex4") s = detail::make_ex4();
    else throw InvalidArgument("unknown scenario '" + id + "'");
    s.defaults.epsilon = epsilon;
    return s;
}

} // namespace vbdg
