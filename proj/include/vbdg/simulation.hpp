#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "mesh.hpp"
#include "projections.hpp"
#include "scenarios.hpp"
#include "time_integration.hpp"

namespace vbdg {

enum class InitMethod { l2, gauss_radau };

/// Treatment of the velocity boundaries. `automatic` feeds the exact solution in as
/// exterior data when the scenario has one and uses zero flux otherwise.
enum class VelocityBoundary { automatic, zero, exact };

struct RunConfig {
    std::string scenario = "ex1";
    int kx = 1;
    int kv = 1;
    std::size_t nx = 16;
    std::size_t nv = 16;
    FluxParams params;
    double t_final = 0.1;
    double cfl = 0.0;  // <= 0 selects default_cfl(max(kx, kv))
    InitMethod init = InitMethod::l2;
    VelocityBoundary v_boundary = VelocityBoundary::automatic;
    std::size_t output_every = 1;
};

/// Config populated with a scenario's defaults.
inline RunConfig default_config(const Scenario& s) {
    RunConfig c;
    c.scenario = s.id;
    c.kx = s.kx;
    c.kv = s.kv;
    c.nx = s.nx;
    c.nv = s.nv;
    c.params = s.defaults;
    c.t_final = s.t_final;
    return c;
}

inline Mesh2D build_mesh(const Scenario& s, const RunConfig& c) {
    return tensor_mesh(uniform_partition(s.x_min, s.x_max, c.nx, true), uniform_partition(s.v_min, s.v_max, c.nv, false));
}

inline CoupledState initial_state(const Scenario& s, const RunConfig& c, const Mesh2D& mesh) {
    CoupledState st;
    st.t = 0.0;
    if (c.init == InitMethod::l2) {
        st.f = l2_project_2d(s.f0, mesh, c.kx, c.kv);
        st.u = l2_project_1d(s.u0, mesh.x(), c.kx);
    } else {
        st.u = gauss_radau_1d(s.u0, mesh.x(), c.kx, c.params.lambda);
        st.f = pi_2d(s.f0, s.u0, mesh, c.kx, c.kv, c.params.lambda1, c.params.lambda2);
    }
    return st;
}

inline Sources build_sources(const Scenario& s, const RunConfig& c) {
    Sources src;
    src.F = s.F;
    src.G = s.G;
    const bool exact = c.v_boundary == VelocityBoundary::exact ||
                       (c.v_boundary == VelocityBoundary::automatic && s.has_exact());
    if (exact) {
        if (!s.f_exact) throw InvalidArgument("exact velocity-boundary data requested but scenario has no exact solution");
        src.exterior = s.f_exact;
    }
    return src;
}

/// Mass carried by the two outermost rows at each end of the velocity interval,
/// relative to the total (absolute values per cell).
inline double boundary_mass_fraction(const PhaseField2D& f) {
    double edge = 0.0, total = 0.0;
    const std::size_t nv = f.nv();
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            const double m = std::abs(f(i, j, 0, 0)) * f.mesh().x().size(i) * f.mesh().v().size(j);
            total += m;
            if (j < 2 || j + 2 >= nv) edge += m;
        }
    return total > 0.0 ? edge / total : 0.0;
}

struct Progress {
    std::size_t step;
    double t;
    double dt;
    Conserved diagnostics;
};

struct RunResult {
    CoupledState final_state;
    std::vector<Conserved> history;
    std::vector<std::optional<ErrorPair>> history_errors;
    std::optional<ErrorPair> errors;
    std::size_t steps = 0;
    std::vector<std::string> warnings;
};

/// Checks a configuration and returns warnings that do not prevent a run.
inline std::vector<std::string> validate_config(const Scenario& s, const RunConfig& c) {
    if (c.kx < 0 || c.kv < 0) throw InvalidArgument("polynomial degrees must be non-negative");
    if (c.nx == 0 || c.nv == 0) throw InvalidArgument("cell counts must be positive");
    if (!(c.t_final > 0.0)) throw InvalidArgument("final time must be positive");
    if (c.output_every == 0) throw InvalidArgument("output interval must be at least one step");
    validate(c.params, c.kx, c.nx);
    std::vector<std::string> warnings;
    const auto pv = uniform_partition(s.v_min, s.v_max, c.nv, false);
    if (s.v_min < 0.0 && s.v_max > 0.0 && !pv.has_edge_at(0.0))
        warnings.push_back("v = 0 lies inside a velocity cell; use an even N_v on a symmetric interval");
    if ((s.id == "ex3" || s.id == "ex4") && !(pv.has_edge_at(-1.0) && pv.has_edge_at(1.0)))
        warnings.push_back("initial data jump at |v| = 1 is not on a cell edge; projection overshoot expected");
    return warnings;
}

using ProgressCallback = std::function<void(const Progress&)>;

/// Advances a scenario to t_final with TVD-RK3, recording diagnostics at step 0,
/// every `output_every` steps and at the final time.
inline RunResult run(const RunConfig& c, const ProgressCallback& progress = {}) {
    const Scenario s = scenario(c.scenario, c.params.epsilon);
    RunResult res;
    res.warnings = validate_config(s, c);
    const Mesh2D mesh = build_mesh(s, c);
    const Sources src = build_sources(s, c);
    const CoupledOperator op(mesh, c.kx, c.kv, c.params, src);
    const double cfl = c.cfl > 0.0 ? c.cfl : default_cfl(std::max(c.kx, c.kv));

    CoupledState st = initial_state(s, c, mesh);
    if (!src.exterior) {
        const double frac = boundary_mass_fraction(st.f);
        if (frac > 1e-8)
            res.warnings.push_back("initial f carries mass fraction " + std::to_string(frac) +
                                   " in the outermost velocity rows; zero-flux boundaries truncate it");
    }

    auto record = [&](const CoupledState& state) {
        res.history.push_back(conserved(state));
        if (s.has_exact()) res.history_errors.push_back(error_pair(state, s.f_exact, s.u_exact));
        else res.history_errors.push_back(std::nullopt);
    };
    record(st);
    if (progress) progress({0, st.t, 0.0, res.history.back()});

    const double t_end = c.t_final;
    std::size_t step = 0;
    while (st.t < t_end * (1.0 - 1e-14)) {
        double dt = compute_dt(st, c.params, cfl);
        bool last = false;
        if (st.t + dt >= t_end * (1.0 - 1e-14)) {
            dt = t_end - st.t;
            last = true;
        }
        st = rk3_step(st, dt, op);
        if (last) st.t = t_end;
        ++step;
        if (step % c.output_every == 0 || last) {
            record(st);
            if (progress) progress({step, st.t, dt, res.history.back()});
        }
    }
    res.steps = step;
    res.final_state = std::move(st);
    if (s.has_exact()) res.errors = error_pair(res.final_state, s.f_exact, s.u_exact);
    return res;
}

struct ConvergenceRow {
    std::size_t n = 0;
    double h = 0.0;
    double l2f = 0.0;
    std::optional<double> rate_f;
    double l2u = 0.0;
    std::optional<double> rate_u;
};

/// Runs the configuration with N_x = N_v = n for each level and returns errors and
/// observed orders (the first level has no rate).
inline std::vector<ConvergenceRow> convergence_study(RunConfig c, const std::vector<std::size_t>& levels) {
    if (levels.size() < 2) throw InvalidArgument("convergence study needs at least two mesh levels");
    const Scenario s = scenario(c.scenario, c.params.epsilon);
    if (!s.has_exact()) throw InvalidArgument("convergence study needs a scenario with an exact solution");
    std::vector<ConvergenceRow> rows;
    std::vector<std::pair<double, double>> ef, eu;
    for (std::size_t n : levels) {
        c.nx = c.nv = n;
        c.output_every = static_cast<std::size_t>(-1);
        const RunResult r = run(c);
        ConvergenceRow row;
        row.n = n;
        row.h = build_mesh(s, c).h();
        row.l2f = r.errors->l2f;
        row.l2u = r.errors->l2u;
        rows.push_back(row);
        ef.emplace_back(row.h, row.l2f);
        eu.emplace_back(row.h, row.l2u);
    }
    const auto rf = rates(ef), ru = rates(eu);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        rows[k].rate_f = rf[k - 1];
        rows[k].rate_u = ru[k - 1];
    }
    return rows;
}

} // namespace vbdg
