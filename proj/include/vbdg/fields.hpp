#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "errors.hpp"
#include "mesh.hpp"
#include "quadrature.hpp"

namespace vbdg {

using Function1D = std::function<double(double)>;
using Function2D = std::function<double(double, double)>;

/// Side of an interface: minus is the limit from the left (or lower) cell,
/// plus the limit from the right (or upper) cell.
enum class Side { minus, plus };

/// Piecewise P^k function on a 1D partition in modal Legendre form.
/// On cell i it equals sum_m c[i][m] P_m(xi), xi = 2 (x - x_i) / h_i.
class ScalarField1D {
public:
    ScalarField1D() = default;
    ScalarField1D(Partition1D partition, int degree)
        : partition_(std::move(partition)), degree_(degree) {
        if (degree < 0) throw InvalidArgument("ScalarField1D: negative degree");
        coeffs_.assign(partition_.cells() * modes(), 0.0);
    }

    const Partition1D& partition() const { return partition_; }
    int degree() const { return degree_; }
    std::size_t modes() const { return static_cast<std::size_t>(degree_ + 1); }
    std::size_t cells() const { return partition_.cells(); }

    std::vector<double>& data() { return coeffs_; }
    const std::vector<double>& data() const { return coeffs_; }
    std::span<double> cell(std::size_t i) { return {coeffs_.data() + i * modes(), modes()}; }
    std::span<const double> cell(std::size_t i) const { return {coeffs_.data() + i * modes(), modes()}; }
    double& operator()(std::size_t i, std::size_t m) { return coeffs_[i * modes() + m]; }
    double operator()(std::size_t i, std::size_t m) const { return coeffs_[i * modes() + m]; }

    double eval_local(std::size_t i, double xi) const {
        double s = 0.0;
        for (std::size_t m = 0; m < modes(); ++m) s += (*this)(i, m) * legendre_eval(static_cast<int>(m), xi).value;
        return s;
    }
    double eval(double x) const {
        const std::size_t i = partition_.locate(x);
        return eval_local(i, partition_.to_reference(i, x));
    }
    double right_value(std::size_t i) const {
        double s = 0.0;
        for (std::size_t m = 0; m < modes(); ++m) s += (*this)(i, m);
        return s;
    }
    double left_value(std::size_t i) const {
        double s = 0.0;
        for (std::size_t m = 0; m < modes(); ++m) s += (*this)(i, m) * legendre_left(m);
        return s;
    }

    /// One-sided value at interface e (located at edges[e]). On a periodic
    /// partition interface 0 and interface N coincide.
    double trace(std::size_t e, Side side) const {
        const std::size_t n = cells();
        if (e > n) throw InvalidArgument("trace: interface index out of range");
        if (side == Side::minus) {
            if (e == 0) {
                if (!partition_.periodic()) throw InvalidArgument("trace: no cell left of the first interface");
                return right_value(n - 1);
            }
            return right_value(e - 1);
        }
        if (e == n) {
            if (!partition_.periodic()) throw InvalidArgument("trace: no cell right of the last interface");
            return left_value(0);
        }
        return left_value(e);
    }
    double jump(std::size_t e) const { return trace(e, Side::plus) - trace(e, Side::minus); }
    double average(std::size_t e) const { return 0.5 * (trace(e, Side::plus) + trace(e, Side::minus)); }

    ScalarField1D& operator+=(const ScalarField1D& o) {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    ScalarField1D& operator*=(double s) {
        for (double& c : coeffs_) c *= s;
        return *this;
    }
    friend ScalarField1D operator+(ScalarField1D l, const ScalarField1D& r) { return l += r; }
    friend ScalarField1D operator*(double s, ScalarField1D f) { return f *= s; }

private:
    Partition1D partition_;
    int degree_ = 0;
    std::vector<double> coeffs_;
};

/// Piecewise Q^{kx,kv} function on the phase-space mesh. Coefficients are cell-major:
/// cell (i, j) holds (kx+1)(kv+1) values with the v-mode index fastest.
class PhaseField2D {
public:
    PhaseField2D() = default;
    PhaseField2D(Mesh2D mesh, int kx, int kv) : mesh_(std::move(mesh)), kx_(kx), kv_(kv) {
        if (kx < 0 || kv < 0) throw InvalidArgument("PhaseField2D: negative degree");
        coeffs_.assign(mesh_.cells() * modes(), 0.0);
    }

    const Mesh2D& mesh() const { return mesh_; }
    int kx() const { return kx_; }
    int kv() const { return kv_; }
    std::size_t mx() const { return static_cast<std::size_t>(kx_ + 1); }
    std::size_t mv() const { return static_cast<std::size_t>(kv_ + 1); }
    std::size_t modes() const { return mx() * mv(); }
    std::size_t nx() const { return mesh_.nx(); }
    std::size_t nv() const { return mesh_.nv(); }

    std::vector<double>& data() { return coeffs_; }
    const std::vector<double>& data() const { return coeffs_; }
    std::size_t offset(std::size_t i, std::size_t j) const { return (i * nv() + j) * modes(); }
    std::span<double> cell(std::size_t i, std::size_t j) { return {coeffs_.data() + offset(i, j), modes()}; }
    std::span<const double> cell(std::size_t i, std::size_t j) const { return {coeffs_.data() + offset(i, j), modes()}; }
    double& operator()(std::size_t i, std::size_t j, std::size_t m, std::size_t n) {
        return coeffs_[offset(i, j) + m * mv() + n];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t m, std::size_t n) const {
        return coeffs_[offset(i, j) + m * mv() + n];
    }

    double eval_local(std::size_t i, std::size_t j, double xi, double eta) const {
        double s = 0.0;
        for (std::size_t m = 0; m < mx(); ++m) {
            const double px = legendre_eval(static_cast<int>(m), xi).value;
            for (std::size_t n = 0; n < mv(); ++n)
                s += (*this)(i, j, m, n) * px * legendre_eval(static_cast<int>(n), eta).value;
        }
        return s;
    }
    double eval(double x, double v) const {
        const std::size_t i = mesh_.x().locate(x), j = mesh_.v().locate(v);
        return eval_local(i, j, mesh_.x().to_reference(i, x), mesh_.v().to_reference(j, v));
    }

    /// Trace along the vertical interface e (x = x_e) restricted to row j, as
    /// v-modal coefficients of a degree-kv polynomial. Periodic in x.
    std::vector<double> trace_x(std::size_t e, std::size_t j, Side side) const {
        const std::size_t n = nx();
        if (e > n || j >= nv()) throw InvalidArgument("trace_x: index out of range");
        std::size_t cell_i;
        double end_sign;  // P_m(+1) or P_m(-1) pattern selector
        if (side == Side::minus) {
            cell_i = (e == 0) ? n - 1 : e - 1;
            end_sign = 1.0;
        } else {
            cell_i = (e == n) ? 0 : e;
            end_sign = -1.0;
        }
        std::vector<double> out(mv(), 0.0);
        for (std::size_t m = 0; m < mx(); ++m) {
            const double pm = end_sign > 0 ? legendre_right(m) : legendre_left(m);
            for (std::size_t nn = 0; nn < mv(); ++nn) out[nn] += (*this)(cell_i, j, m, nn) * pm;
        }
        return out;
    }

    /// Trace along the horizontal interface e (v = v_e) restricted to column i, as
    /// x-modal coefficients. The v-direction is bounded: no cell lies below e = 0
    /// or above e = N_v.
    std::vector<double> trace_v(std::size_t e, std::size_t i, Side side) const {
        const std::size_t n = nv();
        if (e > n || i >= nx()) throw InvalidArgument("trace_v: index out of range");
        if ((side == Side::minus && e == 0) || (side == Side::plus && e == n))
            throw InvalidArgument("trace_v: no cell on that side of the domain boundary");
        const std::size_t cell_j = side == Side::minus ? e - 1 : e;
        std::vector<double> out(mx(), 0.0);
        for (std::size_t m = 0; m < mx(); ++m)
            for (std::size_t nn = 0; nn < mv(); ++nn) {
                const double pn = side == Side::minus ? legendre_right(nn) : legendre_left(nn);
                out[m] += (*this)(i, cell_j, m, nn) * pn;
            }
        return out;
    }

    PhaseField2D& operator+=(const PhaseField2D& o) {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    PhaseField2D& operator*=(double s) {
        for (double& c : coeffs_) c *= s;
        return *this;
    }
    friend PhaseField2D operator+(PhaseField2D l, const PhaseField2D& r) { return l += r; }
    friend PhaseField2D operator*(double s, PhaseField2D f) { return f *= s; }

private:
    Mesh2D mesh_;
    int kx_ = 0;
    int kv_ = 0;
    std::vector<double> coeffs_;
};

/// Evaluates a modal polynomial sum_m c[m] P_m(xi).
inline double eval_modal(std::span<const double> c, double xi) {
    double s = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) s += c[m] * legendre_eval(static_cast<int>(m), xi).value;
    return s;
}

inline ScalarField1D l2_project_1d(const Function1D& g, const Partition1D& partition, int k) {
    ScalarField1D out(partition, k);
    const BasisTable tab(k, gauss_rule(quadrature_points(k)));
    for (std::size_t i = 0; i < partition.cells(); ++i)
        for (std::size_t m = 0; m < out.modes(); ++m) {
            double s = 0.0;
            for (std::size_t q = 0; q < tab.points(); ++q)
                s += tab.rule.weights[q] * g(partition.to_physical(i, tab.rule.nodes[q])) * tab.phi(q, m);
            out(i, m) = s / legendre_norm2(m);
        }
    return out;
}

inline PhaseField2D l2_project_2d(const Function2D& g, const Mesh2D& mesh, int kx, int kv) {
    PhaseField2D out(mesh, kx, kv);
    const int nq = quadrature_points(std::max(kx, kv));
    const BasisTable tx(kx, gauss_rule(nq)), tv(kv, gauss_rule(nq));
    std::vector<double> samples(static_cast<std::size_t>(nq * nq));
    for (std::size_t i = 0; i < mesh.nx(); ++i)
        for (std::size_t j = 0; j < mesh.nv(); ++j) {
            for (std::size_t a = 0; a < tx.points(); ++a) {
                const double x = mesh.x().to_physical(i, tx.rule.nodes[a]);
                for (std::size_t b = 0; b < tv.points(); ++b)
                    samples[a * tv.points() + b] = g(x, mesh.v().to_physical(j, tv.rule.nodes[b]));
            }
            for (std::size_t m = 0; m < out.mx(); ++m)
                for (std::size_t n = 0; n < out.mv(); ++n) {
                    double s = 0.0;
                    for (std::size_t a = 0; a < tx.points(); ++a)
                        for (std::size_t b = 0; b < tv.points(); ++b)
                            s += tx.rule.weights[a] * tv.rule.weights[b] * samples[a * tv.points() + b] *
                                 tx.phi(a, m) * tv.phi(b, n);
                    out(i, j, m, n) = s / (legendre_norm2(m) * legendre_norm2(n));
                }
        }
    return out;
}

/// L2 norm by Parseval on the orthogonal modal basis.
inline double norm_l2(const ScalarField1D& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i)
        for (std::size_t m = 0; m < f.modes(); ++m)
            s += f(i, m) * f(i, m) * 0.5 * f.partition().size(i) * legendre_norm2(m);
    return std::sqrt(s);
}

inline double norm_l2(const PhaseField2D& f) {
    double s = 0.0;
    const auto& px = f.mesh().x();
    const auto& pv = f.mesh().v();
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.nv(); ++j) {
            const double jac = 0.25 * px.size(i) * pv.size(j);
            for (std::size_t m = 0; m < f.mx(); ++m)
                for (std::size_t n = 0; n < f.mv(); ++n) {
                    const double c = f(i, j, m, n);
                    s += c * c * jac * legendre_norm2(m) * legendre_norm2(n);
                }
        }
    return std::sqrt(s);
}

/// L2 distance to an exact function, by an (n_q + 3)-point rule per cell.
inline double error_l2(const ScalarField1D& f, const Function1D& exact) {
    const BasisTable tab(f.degree(), gauss_rule(quadrature_points(f.degree()) + 3));
    const auto& p = f.partition();
    double s = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i)
        for (std::size_t q = 0; q < tab.points(); ++q) {
            double fh = 0.0;
            for (std::size_t m = 0; m < f.modes(); ++m) fh += f(i, m) * tab.phi(q, m);
            const double d = fh - exact(p.to_physical(i, tab.rule.nodes[q]));
            s += tab.rule.weights[q] * 0.5 * p.size(i) * d * d;
        }
    return std::sqrt(s);
}

inline double error_l2(const PhaseField2D& f, const Function2D& exact) {
    const int nq = quadrature_points(std::max(f.kx(), f.kv())) + 3;
    const BasisTable tx(f.kx(), gauss_rule(nq)), tv(f.kv(), gauss_rule(nq));
    const auto& px = f.mesh().x();
    const auto& pv = f.mesh().v();
    double s = 0.0;
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.nv(); ++j) {
            const double jac = 0.25 * px.size(i) * pv.size(j);
            const auto c = f.cell(i, j);
            for (std::size_t a = 0; a < tx.points(); ++a) {
                const double x = px.to_physical(i, tx.rule.nodes[a]);
                for (std::size_t b = 0; b < tv.points(); ++b) {
                    double fh = 0.0;
                    for (std::size_t m = 0; m < f.mx(); ++m)
                        for (std::size_t n = 0; n < f.mv(); ++n) fh += c[m * f.mv() + n] * tx.phi(a, m) * tv.phi(b, n);
                    const double d = fh - exact(x, pv.to_physical(j, tv.rule.nodes[b]));
                    s += tx.rule.weights[a] * tv.rule.weights[b] * jac * d * d;
                }
            }
        }
    return std::sqrt(s);
}

/// Error on the cell boundaries: one-sided values of every cell at both of its ends.
inline double trace_error_l2(const ScalarField1D& f, const Function1D& exact) {
    const auto& p = f.partition();
    double s = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i) {
        const double l = f.left_value(i) - exact(p.edge(i));
        const double r = f.right_value(i) - exact(p.edge(i + 1));
        s += l * l + r * r;
    }
    return std::sqrt(s);
}

/// L2 error on Gamma_h: the trace of every cell along its four edges.
inline double trace_error_l2(const PhaseField2D& f, const Function2D& exact) {
    const int nq = quadrature_points(std::max(f.kx(), f.kv())) + 3;
    const QuadRule& r = gauss_rule(nq);
    const auto& px = f.mesh().x();
    const auto& pv = f.mesh().v();
    double s = 0.0;
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.nv(); ++j)
            for (std::size_t q = 0; q < r.size(); ++q) {
                const double t = r.nodes[q];
                for (double end : {-1.0, 1.0}) {
                    const double dv = f.eval_local(i, j, end, t) - exact(px.to_physical(i, end), pv.to_physical(j, t));
                    const double dx = f.eval_local(i, j, t, end) - exact(px.to_physical(i, t), pv.to_physical(j, end));
                    s += r.weights[q] * 0.5 * (pv.size(j) * dv * dv + px.size(i) * dx * dx);
                }
            }
    return std::sqrt(s);
}

/// Max |f| sampled on an equispaced 10-point lattice per cell (endpoints included).
/// A lower bound for the true sup norm.
inline double norm_inf_sampled(const ScalarField1D& f) {
    double mx = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i)
        for (int s = 0; s < 10; ++s) mx = std::max(mx, std::abs(f.eval_local(i, -1.0 + 2.0 * s / 9.0)));
    return mx;
}

inline double norm_inf_sampled(const PhaseField2D& f) {
    double mx = 0.0;
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.nv(); ++j)
            for (int a = 0; a < 10; ++a)
                for (int b = 0; b < 10; ++b)
                    mx = std::max(mx, std::abs(f.eval_local(i, j, -1.0 + 2.0 * a / 9.0, -1.0 + 2.0 * b / 9.0)));
    return mx;
}

/// Integral over the partition (only mode 0 contributes).
inline double integral(const ScalarField1D& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i) s += f(i, 0) * f.partition().size(i);
    return s;
}

inline double integral(const PhaseField2D& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.nv(); ++j) s += f(i, j, 0, 0) * f.mesh().x().size(i) * f.mesh().v().size(j);
    return s;
}

inline bool same_discretization(const ScalarField1D& a, const ScalarField1D& b) {
    return a.degree() == b.degree() && a.partition() == b.partition();
}
inline bool same_discretization(const PhaseField2D& a, const PhaseField2D& b) {
    return a.kx() == b.kx() && a.kv() == b.kv() && a.mesh() == b.mesh();
}

inline bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
}
inline bool all_finite(const ScalarField1D& f) { return all_finite(f.data()); }
inline bool all_finite(const PhaseField2D& f) { return all_finite(f.data()); }

// Debug CSV dumps.
inline void write_csv(std::ostream& os, const ScalarField1D& f) {
    os << "cell,mode,coefficient\n";
    os.precision(17);
    for (std::size_t i = 0; i < f.cells(); ++i)
        for (std::size_t m = 0; m < f.modes(); ++m) os << i << ',' << m << ',' << f(i, m) << '\n';
}

inline void write_csv(std::ostream& os, const PhaseField2D& f) {
    os << "i,j,mode_x,mode_v,coefficient\n";
    os.precision(17);
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.nv(); ++j)
            for (std::size_t m = 0; m < f.mx(); ++m)
                for (std::size_t n = 0; n < f.mv(); ++n)
                    os << i << ',' << j << ',' << m << ',' << n << ',' << f(i, j, m, n) << '\n';
}

} // namespace vbdg
