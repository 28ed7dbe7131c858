#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "fields.hpp"
#include "mesh.hpp"
#include "quadrature.hpp"

namespace vbdg {

/// Which interface of a cell carries its trace condition, and the weight placed on
/// the minus-side trace there:  omega P^- + (1 - omega) P^+ = omega g^- + (1 - omega) g^+.
struct TraceCondition {
    enum class Edge { right, left };
    Edge edge = Edge::right;
    double omega = 1.0;
};

/// Per-cell data a line projection consumes: the first k Legendre moments
/// int g P_m (m < k) and the one-sided values of g at both cell ends.
struct LineData {
    std::vector<double> moments;  // cells x k
    std::vector<double> left;     // g(x_{i-1/2}^+)
    std::vector<double> right;    // g(x_{i+1/2}^-)
};

/// Generalized Gauss-Radau projection along one line of cells.
///
/// Modes m < k are fixed by the moment conditions (the mass matrix is diagonal).
/// The top mode of every cell is then coupled to its neighbour through that cell's
/// trace condition: a cyclic (periodic) or open bidiagonal system with N unknowns,
/// factorized once and reused for any number of right-hand sides. On an open line a
/// condition that points past the boundary falls back to the cell's own trace.
/// Gauss points used to sample data for a projection of degree k.
inline const QuadRule& sampling_rule(int k) { return gauss_rule(std::max(12, quadrature_points(k) + 3)); }

class LineProjector {
public:
    LineProjector(Partition1D partition, int k, std::vector<TraceCondition> conditions)
        : partition_(std::move(partition)), k_(k), conditions_(std::move(conditions)) {
        const std::size_t n = partition_.cells();
        if (k < 0) throw InvalidArgument("LineProjector: negative degree");
        if (conditions_.size() != n) throw InvalidArgument("LineProjector: one trace condition per cell required");
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        const double top_left = legendre_left(static_cast<std::size_t>(k));
        for (std::size_t c = 0; c < n; ++c) {
            const auto [minus, plus, omega] = edge_cells(c);
            const auto row = static_cast<Eigen::Index>(c);
            if (minus >= 0) a(row, minus) += omega;
            if (plus >= 0) a(row, plus) += (1.0 - omega) * top_left;
        }
        lu_.compute(a);
        if (!lu_.isInvertible())
            throw NumericalFailure("Gauss-Radau projection system is singular for this weight, degree and cell count");
    }

    const Partition1D& partition() const { return partition_; }
    int degree() const { return k_; }

    /// Coefficients (cells x (k+1)) of the projection.
    std::vector<double> apply(const LineData& d) const {
        const std::size_t n = partition_.cells(), km = static_cast<std::size_t>(k_), nm = km + 1;
        std::vector<double> c(n * nm, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t m = 0; m < km; ++m)
                c[i * nm + m] = d.moments[i * km + m] * (2.0 * m + 1.0) / partition_.size(i);

        Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
        for (std::size_t cell = 0; cell < n; ++cell) {
            const auto [minus, plus, omega] = edge_cells(cell);
            double target = 0.0;
            if (minus >= 0) {
                double known = 0.0;
                for (std::size_t m = 0; m < km; ++m) known += c[static_cast<std::size_t>(minus) * nm + m];
                target += omega * (d.right[static_cast<std::size_t>(minus)] - known);
            }
            if (plus >= 0) {
                double known = 0.0;
                for (std::size_t m = 0; m < km; ++m) known += c[static_cast<std::size_t>(plus) * nm + m] * legendre_left(m);
                target += (1.0 - omega) * (d.left[static_cast<std::size_t>(plus)] - known);
            }
            rhs(static_cast<Eigen::Index>(cell)) = target;
        }
        const Eigen::VectorXd top = lu_.solve(rhs);
        for (std::size_t i = 0; i < n; ++i) c[i * nm + km] = top(static_cast<Eigen::Index>(i));
        return c;
    }

    /// Samples a function given in local coordinates, g(cell, xi), into LineData.
    template <class G>
    LineData sample(G&& g) const {
        const std::size_t n = partition_.cells(), km = static_cast<std::size_t>(k_);
        const QuadRule& r = sampling_rule(k_);
        LineData d;
        d.moments.assign(n * km, 0.0);
        d.left.resize(n);
        d.right.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t q = 0; q < r.size(); ++q) {
                const double gq = g(i, r.nodes[q]) * r.weights[q] * 0.5 * partition_.size(i);
                for (std::size_t m = 0; m < km; ++m) d.moments[i * km + m] += gq * legendre_eval(static_cast<int>(m), r.nodes[q]).value;
            }
            d.left[i] = g(i, -1.0);
            d.right[i] = g(i, 1.0);
        }
        return d;
    }

private:
    struct EdgeCells {
        long minus;
        long plus;
        double omega;
    };

    EdgeCells edge_cells(std::size_t c) const {
        const long n = static_cast<long>(partition_.cells());
        const long ci = static_cast<long>(c);
        const auto& tc = conditions_[c];
        long minus, plus;
        if (tc.edge == TraceCondition::Edge::right) {
            minus = ci;
            plus = ci + 1;
        } else {
            minus = ci - 1;
            plus = ci;
        }
        double omega = tc.omega;
        if (partition_.periodic()) {
            minus = (minus + n) % n;
            plus = plus % n;
        } else {
            if (plus >= n) { plus = -1; omega = 1.0; }
            if (minus < 0) { minus = -1; omega = 0.0; }
        }
        return {minus, plus, omega};
    }

    Partition1D partition_;
    int k_;
    std::vector<TraceCondition> conditions_;
    Eigen::FullPivLU<Eigen::MatrixXd> lu_;
};

/// Uniform conditions for a 1D generalized Gauss-Radau projection with flux weight
/// lambda on the minus side: each cell owns its right interface when lambda >= 1/2,
/// its left interface otherwise.
inline std::vector<TraceCondition> uniform_conditions(std::size_t cells, double lambda) {
    TraceCondition tc;
    tc.omega = lambda;
    tc.edge = lambda >= 0.5 ? TraceCondition::Edge::right : TraceCondition::Edge::left;
    return std::vector<TraceCondition>(cells, tc);
}

/// Q_lambda g: moments against P^{k-1} on every cell, and
/// lambda Q^- + (1 - lambda) Q^+ = lambda g^- + (1 - lambda) g^+ on every interface.
inline ScalarField1D gauss_radau_1d(const Function1D& g, const Partition1D& partition, int k, double lambda) {
    if (lambda < 0.5) throw InvalidArgument("gauss_radau_1d: lambda must be at least 1/2");
    if (lambda == 0.5 && !(k % 2 == 0 && partition.cells() % 2 == 1))
        throw InvalidArgument("gauss_radau_1d: lambda = 1/2 requires even degree and an odd number of cells");
    const LineProjector proj(partition, k, uniform_conditions(partition.cells(), lambda));
    const auto data = proj.sample([&](std::size_t i, double xi) { return g(partition.to_physical(i, xi)); });
    ScalarField1D out(partition, k);
    out.data() = proj.apply(data);
    return out;
}

/// Trace conditions of the x-direction projection in row j: weight lambda1 on the
/// right interface where v > 0, weight 1 - lambda1 on the left interface where v < 0.
inline std::vector<TraceCondition> x_conditions(const Mesh2D& mesh, std::size_t j, double lambda1) {
    const double lo = mesh.v().edge(j), hi = mesh.v().edge(j + 1);
    TraceCondition tc;
    if (lo >= 0.0) {
        tc = {TraceCondition::Edge::right, lambda1};
    } else if (hi <= 0.0) {
        tc = {TraceCondition::Edge::left, 1.0 - lambda1};
    } else {
        throw InvalidArgument("pi_2d: v = 0 must lie on a cell boundary");
    }
    return std::vector<TraceCondition>(mesh.nx(), tc);
}

/// Trace conditions of the v-direction projection in column i, classified by the
/// sign of u(x_i) - v_j at the cell centres: top interface with weight lambda2 where
/// positive, bottom interface with weight 1 - lambda2 where negative, top interface
/// with weight 1 (one-sided) on ties.
inline std::vector<TraceCondition> v_conditions(const Mesh2D& mesh, std::size_t i, const Function1D& u, double lambda2) {
    const double ux = u(mesh.x().center(i));
    std::vector<TraceCondition> out(mesh.nv());
    for (std::size_t j = 0; j < mesh.nv(); ++j) {
        const double s = ux - mesh.v().center(j);
        if (s > 1e-13)
            out[j] = {TraceCondition::Edge::right, lambda2};
        else if (s < -1e-13)
            out[j] = {TraceCondition::Edge::left, 1.0 - lambda2};
        else
            out[j] = {TraceCondition::Edge::right, 1.0};
    }
    return out;
}

/// Two-dimensional projection Pi = (Pi_x (x) Pi_v) g. The v-direction projection is
/// applied first, column by column, at every x-sample the x-direction projection
/// needs; the x-direction projection then acts row by row on each v-mode.
/// Cell-local data g(i, j, xi, eta) on T_ij in reference coordinates.
using LocalFunction2D = std::function<double(std::size_t, std::size_t, double, double)>;

/// Pi applied to piecewise data given cell by cell, so one-sided traces on both sides
/// of an interface are respected.
inline PhaseField2D pi_2d_local(const LocalFunction2D& g, const Function1D& u, const Mesh2D& mesh, int kx, int kv,
                                double lambda1, double lambda2) {
    if (!(lambda1 > 0.5) || !(lambda2 > 0.5)) throw InvalidArgument("pi_2d: lambda1 and lambda2 must exceed 1/2");
    const std::size_t nx = mesh.nx(), nv = mesh.nv();
    const std::size_t mx = static_cast<std::size_t>(kx + 1), mv = static_cast<std::size_t>(kv + 1);
    std::vector<LineProjector> rows;
    rows.reserve(nv);
    for (std::size_t j = 0; j < nv; ++j) rows.emplace_back(mesh.x(), kx, x_conditions(mesh, j, lambda1));

    // x-samples per cell: Gauss nodes for the moments, then the two cell ends
    const QuadRule& rx = sampling_rule(kx);
    const std::size_t ns = rx.size() + 2;
    std::vector<double> xi_samples(rx.nodes);
    xi_samples.push_back(-1.0);
    xi_samples.push_back(1.0);

    // vproj[((i * ns + s) * nv + j) * mv + n]
    std::vector<double> vproj(nx * ns * nv * mv);
    for (std::size_t i = 0; i < nx; ++i) {
        const LineProjector col(mesh.v(), kv, v_conditions(mesh, i, u, lambda2));
        for (std::size_t s = 0; s < ns; ++s) {
            const double xi = xi_samples[s];
            const auto d = col.sample([&](std::size_t j, double eta) { return g(i, j, xi, eta); });
            const auto c = col.apply(d);
            std::copy(c.begin(), c.end(), vproj.begin() + static_cast<std::ptrdiff_t>((i * ns + s) * nv * mv));
        }
    }

    PhaseField2D out(mesh, kx, kv);
    const std::size_t kxm = static_cast<std::size_t>(kx);
    for (std::size_t j = 0; j < nv; ++j)
        for (std::size_t n = 0; n < mv; ++n) {
            LineData d;
            d.moments.assign(nx * kxm, 0.0);
            d.left.resize(nx);
            d.right.resize(nx);
            for (std::size_t i = 0; i < nx; ++i) {
                auto at = [&](std::size_t s) { return vproj[((i * ns + s) * nv + j) * mv + n]; };
                for (std::size_t q = 0; q < rx.size(); ++q) {
                    const double gq = at(q) * rx.weights[q] * 0.5 * mesh.x().size(i);
                    for (std::size_t m = 0; m < kxm; ++m) d.moments[i * kxm + m] += gq * legendre_eval(static_cast<int>(m), rx.nodes[q]).value;
                }
                d.left[i] = at(rx.size());
                d.right[i] = at(rx.size() + 1);
            }
            const auto c = rows[j].apply(d);
            for (std::size_t i = 0; i < nx; ++i)
                for (std::size_t m = 0; m < mx; ++m) out(i, j, m, n) = c[i * mx + m];
        }
    return out;
}

inline PhaseField2D pi_2d(const Function2D& g, const Function1D& u, const Mesh2D& mesh, int kx, int kv, double lambda1,
                          double lambda2) {
    return pi_2d_local(
        [&](std::size_t i, std::size_t j, double xi, double eta) {
            return g(mesh.x().to_physical(i, xi), mesh.v().to_physical(j, eta));
        },
        u, mesh, kx, kv, lambda1, lambda2);
}

inline PhaseField2D pi_2d(const Function2D& g, const ScalarField1D& u, const Mesh2D& mesh, int kx, int kv, double lambda1,
                          double lambda2) {
    return pi_2d(g, Function1D([&u](double x) { return u.eval(x); }), mesh, kx, kv, lambda1, lambda2);
}

} // namespace vbdg
