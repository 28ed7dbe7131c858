// Command-line driver: single runs, convergence studies and projection-order studies.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <vbdg/diagnostics.hpp>
#include <vbdg/errors.hpp>
#include <vbdg/parallel.hpp>
#include <vbdg/projections.hpp>
#include <vbdg/scenarios.hpp>
#include <vbdg/simulation.hpp>

namespace fs = std::filesystem;
using namespace vbdg;

namespace {

struct Options {
    std::string scenario;
    std::optional<int> k, kx, kv;
    std::optional<std::size_t> nx, nv;
    std::vector<double> eps, lambda;
    std::optional<double> lambda1, lambda2, tfinal, cfl;
    unsigned threads = 0;
    std::string out = ".";
    std::size_t output_every = 1;
    std::string init = "l2";
    std::string vboundary = "auto";
    std::vector<std::size_t> levels;
    bool quiet = false;
};

// Any usage problem found after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string short_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

RunConfig make_config(const Options& o, double eps, std::optional<double> lambda) {
    const Scenario s = scenario(o.scenario, eps);
    RunConfig c = default_config(s);
    c.params.epsilon = eps;
    if (o.k) c.kx = c.kv = *o.k;
    if (o.kx) c.kx = *o.kx;
    if (o.kv) c.kv = *o.kv;
    if (o.nx) c.nx = *o.nx;
    if (o.nv) c.nv = *o.nv;
    if (lambda) c.params.lambda = *lambda;
    if (o.lambda1) c.params.lambda1 = *o.lambda1;
    if (o.lambda2) c.params.lambda2 = *o.lambda2;
    if (o.tfinal) c.t_final = *o.tfinal;
    if (o.cfl) c.cfl = *o.cfl;
    c.output_every = o.output_every;
    c.init = o.init == "gaussradau" ? InitMethod::gauss_radau : InitMethod::l2;
    c.v_boundary = o.vboundary == "zero"    ? VelocityBoundary::zero
                   : o.vboundary == "exact" ? VelocityBoundary::exact
                                            : VelocityBoundary::automatic;
    if (c.nv % 2 != 0) throw UsageError("N_v must be even so that v = 0 is a cell edge");
    return c;
}

double first_or(const std::vector<double>& v, double fallback) { return v.empty() ? fallback : v.front(); }

std::ofstream open_out(const Options& o, const std::string& name) {
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / name);
    if (!f) throw UsageError("cannot write " + (fs::path(o.out) / name).string());
    return f;
}

int cmd_run(const Options& o) {
    if (o.eps.size() > 1 || o.lambda.size() > 1) throw UsageError("run takes a single --eps and --lambda");
    const RunConfig c = make_config(o, first_or(o.eps, 0.1), o.lambda.empty() ? std::nullopt : std::optional(o.lambda[0]));
    auto diag = open_out(o, "diagnostics.csv");
    write_diagnostics_header(diag);
    ProgressCallback progress;
    if (!o.quiet)
        progress = [](const Progress& p) {
            std::cerr << "step " << p.step << "  t=" << p.t << "  mass=" << p.diagnostics.mass
                      << "  energy=" << p.diagnostics.energy << '\n';
        };
    const RunResult r = run(c, progress);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    for (std::size_t k = 0; k < r.history.size(); ++k) write_diagnostics_row(diag, r.history[k], r.history_errors[k]);

    const Conserved& c0 = r.history.front();
    const Conserved& c1 = r.history.back();
    auto summary = open_out(o, "summary.csv");
    const std::string header =
        "scenario,kx,kv,nx,nv,eps,lambda,lambda1,lambda2,t_final,steps,mass0,mass,momentum0,momentum,energy0,energy,L2f,L2u";
    std::ostringstream row;
    row << c.scenario << ',' << c.kx << ',' << c.kv << ',' << c.nx << ',' << c.nv << ',' << num(c.params.epsilon) << ','
        << num(c.params.lambda) << ',' << num(c.params.lambda1) << ',' << num(c.params.lambda2) << ',' << num(c.t_final)
        << ',' << r.steps << ',' << num(c0.mass) << ',' << num(c1.mass) << ',' << num(c0.momentum) << ','
        << num(c1.momentum) << ',' << num(c0.energy) << ',' << num(c1.energy) << ','
        << opt_num(r.errors ? std::optional(r.errors->l2f) : std::nullopt) << ','
        << opt_num(r.errors ? std::optional(r.errors->l2u) : std::nullopt);
    summary << header << '\n' << row.str() << '\n';
    std::cout << header << '\n' << row.str() << '\n';
    return 0;
}

int cmd_converge(const Options& o) {
    std::vector<std::size_t> levels = o.levels.empty() ? std::vector<std::size_t>{8, 16, 32, 64} : o.levels;
    if (levels.size() < 3) throw UsageError("a convergence study needs at least three mesh levels");
    const std::vector<double> eps = o.eps.empty() ? std::vector<double>{0.1} : o.eps;
    const std::vector<double> lam = o.lambda.empty() ? std::vector<double>{1.5} : o.lambda;
    const bool many = eps.size() * lam.size() > 1;
    for (double e : eps)
        for (double l : lam) {
            RunConfig c = make_config(o, e, l);
            for (std::size_t n : levels)
                if (n % 2 != 0) throw UsageError("mesh levels must be even (N_v = N)");
            const auto rows = convergence_study(c, levels);
            const std::string name = many ? "rates_eps" + short_num(e) + "_lambda" + short_num(l) + ".csv" : "rates.csv";
            auto f = open_out(o, name);
            std::ostringstream table;
            table << "N,h,L2f,rate_f,L2u,rate_u\n";
            for (const auto& r : rows)
                table << r.n << ',' << num(r.h) << ',' << num(r.l2f) << ',' << opt_num(r.rate_f) << ',' << num(r.l2u) << ','
                      << opt_num(r.rate_u) << '\n';
            f << table.str();
            std::cout << "# " << c.scenario << " kx=" << c.kx << " kv=" << c.kv << " eps=" << short_num(e)
                      << " lambda=" << short_num(l) << '\n'
                      << table.str();
        }
    return 0;
}

int cmd_project(const Options& o) {
    std::vector<std::size_t> levels = o.levels.empty() ? std::vector<std::size_t>{8, 16, 32, 64} : o.levels;
    if (levels.size() < 2) throw UsageError("a projection study needs at least two mesh levels");
    for (std::size_t n : levels)
        if (n % 2 != 0) throw UsageError("mesh levels must be even (N_v = N)");
    const Scenario s = scenario(o.scenario.empty() ? "ex1" : o.scenario, first_or(o.eps, 0.1));
    const int kx = o.kx.value_or(o.k.value_or(1)), kv = o.kv.value_or(o.k.value_or(kx));
    const double lam = first_or(o.lambda, 1.5), lam1 = o.lambda1.value_or(1.5), lam2 = o.lambda2.value_or(1.5);
    validate(FluxParams{lam, lam1, lam2, 0.1}, kx, levels.front());

    struct Row {
        std::string study;
        std::size_t n;
        double h, e, et;
    };
    std::vector<Row> rows;
    for (std::size_t n : levels) {
        const Mesh2D mesh = tensor_mesh(uniform_partition(s.x_min, s.x_max, n, true), uniform_partition(s.v_min, s.v_max, n, false));
        const auto l2 = l2_project_1d(s.u0, mesh.x(), kx);
        rows.push_back({"l2_1d", n, mesh.x().max_size(), error_l2(l2, s.u0), trace_error_l2(l2, s.u0)});
        const auto q = gauss_radau_1d(s.u0, mesh.x(), kx, lam);
        rows.push_back({"gauss_radau_1d", n, mesh.x().max_size(), error_l2(q, s.u0), trace_error_l2(q, s.u0)});
        const auto p = pi_2d(s.f0, s.u0, mesh, kx, kv, lam1, lam2);
        rows.push_back({"pi_2d", n, mesh.h(), error_l2(p, s.f0), trace_error_l2(p, s.f0)});
    }
    std::ostringstream table;
    table << "study,k,N,h,L2,rate_L2,trace,rate_trace\n";
    for (const char* study : {"l2_1d", "gauss_radau_1d", "pi_2d"}) {
        const Row* prev = nullptr;
        for (const auto& r : rows) {
            if (r.study != study) continue;
            std::optional<double> re, rt;
            if (prev) {
                re = rates({{prev->h, prev->e}, {r.h, r.e}})[0];
                rt = rates({{prev->h, prev->et}, {r.h, r.et}})[0];
            }
            table << study << ',' << (r.study == "pi_2d" ? std::max(kx, kv) : kx) << ',' << r.n << ',' << num(r.h) << ','
                  << num(r.e) << ',' << opt_num(re) << ',' << num(r.et) << ',' << opt_num(rt) << '\n';
            prev = &r;
        }
    }
    auto f = open_out(o, "projection.csv");
    f << table.str();
    std::cout << table.str();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vlasov / viscous Burgers DG solver"};
    app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    const std::vector<std::string> ids = scenario_ids();
    app.add_option("--scenario", o.scenario, "Scenario id")->check(CLI::IsMember(ids));
    app.add_option("--k", o.k, "Polynomial degree in both directions")->check(CLI::Range(0, 8));
    app.add_option("--kx", o.kx, "Polynomial degree in x")->check(CLI::Range(0, 8));
    app.add_option("--kv", o.kv, "Polynomial degree in v")->check(CLI::Range(0, 8));
    app.add_option("--nx", o.nx, "Cells in x")->check(CLI::PositiveNumber);
    app.add_option("--nv", o.nv, "Cells in v (even)")->check(CLI::PositiveNumber);
    app.add_option("--eps", o.eps, "Viscosity (comma-separated list for converge)")->delimiter(',');
    app.add_option("--lambda", o.lambda, "Burgers flux weight (comma-separated list for converge)")->delimiter(',');
    app.add_option("--lambda1", o.lambda1, "Kinetic x-flux weight");
    app.add_option("--lambda2", o.lambda2, "Kinetic v-flux weight");
    app.add_option("--tfinal", o.tfinal, "Final time");
    app.add_option("--cfl", o.cfl, "CFL number (default 0.1/(2k+1))");
    app.add_option("--threads", o.threads, "Worker thread cap (0: hardware)");
    app.add_option("--out", o.out, "Output directory");
    app.add_option("--output-every", o.output_every, "Diagnostics interval in steps")->check(CLI::PositiveNumber);
    app.add_option("--init", o.init, "Initial projection")->check(CLI::IsMember({"l2", "gaussradau"}));
    app.add_option("--vboundary", o.vboundary, "Velocity boundary data")->check(CLI::IsMember({"auto", "zero", "exact"}));
    app.add_option("--levels", o.levels, "Mesh levels N (N_x = N_v = N), comma-separated")->delimiter(',');
    app.add_flag("--quiet", o.quiet, "No progress output");

    auto* run_cmd = app.add_subcommand("run", "Advance a scenario to its final time");
    auto* conv_cmd = app.add_subcommand("converge", "Convergence study over mesh levels");
    auto* proj_cmd = app.add_subcommand("project", "Projection error study");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        if (o.threads > 0) set_max_threads(o.threads);
        if ((run_cmd->parsed() || conv_cmd->parsed()) && o.scenario.empty())
            throw UsageError("--scenario is required");
        if (run_cmd->parsed()) return cmd_run(o);
        if (conv_cmd->parsed()) return cmd_converge(o);
        if (proj_cmd->parsed()) return cmd_project(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure";
        if (e.stage() > 0) std::cerr << " in RK stage " << e.stage();
        std::cerr << ": " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
