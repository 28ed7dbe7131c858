#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "moments.hpp"
#include "time_integration.hpp"

namespace vbdg {

struct Conserved {
    double t = 0.0;
    double mass = 0.0;      // int f_h
    double momentum = 0.0;  // int v f_h + int u_h
    double energy = 0.0;    // (int v^2 f_h + int u_h^2) / 2
    double l2f = 0.0;
    double l2u = 0.0;
};

/// Conserved quantities by exact modal integration.
inline Conserved conserved(const CoupledState& s) {
    Conserved c;
    c.t = s.t;
    c.mass = integral(s.f);
    const ScalarField1D m1 = momentum(s.f);
    const ScalarField1D m2 = moment_k(s.f, 2);
    c.momentum = integral(m1) + integral(s.u);
    c.l2f = norm_l2(s.f);
    c.l2u = norm_l2(s.u);
    c.energy = 0.5 * (integral(m2) + c.l2u * c.l2u);
    return c;
}

struct ErrorPair {
    double l2f = 0.0;
    double l2u = 0.0;
};

inline ErrorPair error_pair(const CoupledState& s, const std::function<double(double, double, double)>& f_exact,
                            const std::function<double(double, double)>& u_exact) {
    const double t = s.t;
    return {error_l2(s.f, [&](double x, double v) { return f_exact(t, x, v); }),
            error_l2(s.u, [&](double x) { return u_exact(t, x); })};
}

/// Observed order between consecutive levels; nullopt where either error is zero.
inline std::vector<std::optional<double>> rates(const std::vector<std::pair<double, double>>& errors) {
    if (errors.size() < 2) throw InvalidArgument("rates: need at least two levels");
    for (std::size_t i = 1; i < errors.size(); ++i)
        if (!(errors[i].first < errors[i - 1].first)) throw InvalidArgument("rates: h must be strictly decreasing");
    std::vector<std::optional<double>> out;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const auto [h0, e0] = errors[i];
        const auto [h1, e1] = errors[i + 1];
        if (e0 == 0.0 || e1 == 0.0)
            out.push_back(std::nullopt);
        else
            out.push_back(std::log(e0 / e1) / std::log(h0 / h1));
    }
    return out;
}

/// ||f_h(t)|| <= 1.05 e^{t/2} ||f_h(0)|| at every recorded time.
inline bool stability_check(const std::vector<std::pair<double, double>>& norm_history) {
    if (norm_history.empty()) return true;
    const double n0 = norm_history.front().second;
    const double t0 = norm_history.front().first;
    for (const auto& [t, n] : norm_history)
        if (n > 1.05 * std::exp(0.5 * (t - t0)) * n0) return false;
    return true;
}

/// Indices k at which energy[k] exceeds energy[k-1] by more than slack * energy[0].
inline std::vector<std::size_t> energy_increases(const std::vector<Conserved>& history, double slack = 1e-8) {
    std::vector<std::size_t> bad;
    if (history.empty()) return bad;
    const double e0 = std::abs(history.front().energy);
    for (std::size_t k = 1; k < history.size(); ++k)
        if (history[k].energy > history[k - 1].energy + slack * e0) bad.push_back(k);
    return bad;
}

inline void write_diagnostics_header(std::ostream& os) { os << "t,mass,momentum,energy,L2f,L2u\n"; }

/// One diagnostics row; error columns are left empty when no exact solution exists.
inline void write_diagnostics_row(std::ostream& os, const Conserved& c, std::optional<ErrorPair> err) {
    const auto old = os.precision(17);
    os << c.t << ',' << c.mass << ',' << c.momentum << ',' << c.energy << ',';
    if (err) os << err->l2f << ',' << err->l2u;
    else os << ',';
    os << '\n';
    os.precision(old);
}

} // namespace vbdg
