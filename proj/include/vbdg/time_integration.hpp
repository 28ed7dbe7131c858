#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "burgers_ldg.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "fluxes.hpp"
#include "moments.hpp"
#include "vlasov_dg.hpp"

namespace vbdg {

/// Discrete state (f_h, u_h) at time t. f and u share the x-partition.
struct CoupledState {
    PhaseField2D f;
    ScalarField1D u;
    double t = 0.0;

    CoupledState& operator+=(const CoupledState& o) {
        f += o.f;
        u += o.u;
        return *this;
    }
    CoupledState& operator*=(double s) {
        f *= s;
        u *= s;
        return *this;
    }
    friend CoupledState operator+(CoupledState l, const CoupledState& r) { return l += r; }
    friend CoupledState operator*(double s, CoupledState c) { return c *= s; }
};

inline bool all_finite(double y) { return std::isfinite(y); }
inline bool all_finite(const CoupledState& s) { return all_finite(s.f.data()) && all_finite(s.u.data()); }

/// Optional forcing and exterior data for a run.
struct Sources {
    PhaseSource F;         // kinetic source F(t, x, v)
    LineSource G;          // fluid source G(t, x)
    PhaseSource exterior;  // f outside the velocity interval; empty means zero flux
};

/// Semi-discrete right-hand side of the coupled system. Both derivatives are
/// evaluated from the same input state.
class CoupledOperator {
public:
    CoupledOperator(const Mesh2D& mesh, int kx, int kv, FluxParams params, Sources sources = {})
        : vlasov_(mesh, kx, kv, params), params_(params), sources_(std::move(sources)) {
        validate(params, kx, mesh.nx());
    }

    const FluxParams& params() const { return params_; }
    const Sources& sources() const { return sources_; }

    CoupledState operator()(const CoupledState& s, double t) const {
        const ScalarField1D rho = density(s.f);
        const ScalarField1D rho_v = momentum(s.f);
        CoupledState d;
        d.f = vlasov_.rhs(s.f, s.u, sources_.F, t, sources_.exterior);
        d.u = burgers_rhs(s.u, rho, rho_v, params_, sources_.G, t);
        d.t = 0.0;
        return d;
    }

private:
    VlasovOperator vlasov_;
    FluxParams params_;
    Sources sources_;
};

inline CoupledState coupled_rhs(const CoupledState& state, const FluxParams& params, const Sources& sources = {}) {
    const CoupledOperator op(state.f.mesh(), state.f.kx(), state.f.kv(), params, sources);
    return op(state, state.t);
}

/// One step of the three-stage third-order TVD Runge-Kutta scheme in Shu-Osher form:
///   s1 = s + dt L(s, t)
///   s2 = 3/4 s + 1/4 (s1 + dt L(s1, t + dt))
///   s+ = 1/3 s + 2/3 (s2 + dt L(s2, t + dt/2))
/// State needs +, scalar *, and an all_finite overload. Throws NumericalFailure with
/// the stage index when a stage produces non-finite values.
template <class State, class Rhs>
State ssp_rk3_step(const State& s, double t, double dt, Rhs&& rhs) {
    if (!(dt > 0.0)) throw InvalidArgument("rk3 step needs dt > 0");
    State s1 = s + dt * rhs(s, t);
    if (!all_finite(s1)) throw NumericalFailure("non-finite values after RK stage 1", 1);
    State s2 = 0.75 * s + 0.25 * (s1 + dt * rhs(s1, t + dt));
    if (!all_finite(s2)) throw NumericalFailure("non-finite values after RK stage 2", 2);
    State out = (1.0 / 3.0) * s + (2.0 / 3.0) * (s2 + dt * rhs(s2, t + 0.5 * dt));
    if (!all_finite(out)) throw NumericalFailure("non-finite values after RK stage 3", 3);
    return out;
}

inline CoupledState rk3_step(const CoupledState& state, double dt, const CoupledOperator& op) {
    CoupledState next = ssp_rk3_step(state, state.t, dt, [&op](const CoupledState& s, double t) { return op(s, t); });
    next.t = state.t + dt;
    return next;
}

/// Default CFL number 0.1 / (2k + 1).
inline double default_cfl(int k) { return 0.1 / (2.0 * k + 1.0); }

/// dt = cfl * min(h_x / L_x, h_v / L_v, h_x^2 / (2 eps)), L_x = max |v| on J,
/// L_v = max over x-quadrature points of |u_h - v| (attained at the ends of J).
/// Both speeds are floored at 1e-12.
inline double compute_dt(const CoupledState& state, const FluxParams& params, double cfl) {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidArgument("cfl must lie in (0, 1]");
    const auto& mesh = state.f.mesh();
    const double hx = mesh.x().min_size(), hv = mesh.v().min_size();
    const double lam_x = std::max(mesh.velocity_bound(), 1e-12);
    const BasisTable tab(state.u.degree(), gauss_rule(quadrature_points(state.u.degree())));
    double umax = -1e300, umin = 1e300;
    for (std::size_t i = 0; i < state.u.cells(); ++i)
        for (std::size_t q = 0; q < tab.points(); ++q) {
            double s = 0.0;
            for (std::size_t m = 0; m < state.u.modes(); ++m) s += state.u(i, m) * tab.phi(q, m);
            umax = std::max(umax, s);
            umin = std::min(umin, s);
        }
    const double va = mesh.v().a(), vb = mesh.v().b();
    const double lam_v = std::max({std::abs(umax - va), std::abs(umin - va), std::abs(umax - vb), std::abs(umin - vb), 1e-12});
    return cfl * std::min({hx / lam_x, hv / lam_v, hx * hx / (2.0 * params.epsilon)});
}

} // namespace vbdg
