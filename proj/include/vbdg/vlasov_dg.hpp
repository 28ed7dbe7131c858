#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "fluxes.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace vbdg {

/// A function of (t, x, v): a kinetic source term or exterior data.
using PhaseSource = std::function<double(double, double, double)>;

/// DG operator for  f_t + v f_x + ((u - v) f)_v = F  on a periodic-in-x mesh.
///
/// moments() returns R_mn = -B_h(u; f, psi_mn) for every basis function psi_mn of
/// the Q^{kx,kv} space. Edge fluxes are computed once per edge in a first pass and
/// gathered by the two adjacent cells in a second pass, so the result does not
/// depend on the thread count.
///
/// On the v-boundaries the flux is zero unless exterior data are supplied, in which
/// case the exterior trace enters the generalized flux in place of the missing cell.
class VlasovOperator {
public:
    VlasovOperator(Mesh2D mesh, int kx, int kv, FluxParams params)
        : mesh_(std::move(mesh)),
          kx_(kx),
          kv_(kv),
          params_(params),
          tx_(kx, gauss_rule(quadrature_points(std::max(kx, kv)))),
          tv_(kv, gauss_rule(quadrature_points(std::max(kx, kv)))) {}

    const Mesh2D& mesh() const { return mesh_; }
    const FluxParams& params() const { return params_; }

    /// R = -B_h(u; f, .) as a coefficient vector laid out like f.
    std::vector<double> moments(const PhaseField2D& f, const ScalarField1D& u, const PhaseSource& exterior = {},
                                double t = 0.0) const {
        check(f, u);
        const std::size_t nx = mesh_.nx(), nv = mesh_.nv(), nq = tx_.points();
        const std::size_t mx = f.mx(), mv = f.mv();
        const auto& px = mesh_.x();
        const auto& pv = mesh_.v();
        const BasisTable tu(u.degree(), tx_.rule);

        // u_h at the x-quadrature points of every column
        std::vector<double> uq(nx * nq, 0.0);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t a = 0; a < nq; ++a) {
                double s = 0.0;
                for (std::size_t m = 0; m < u.modes(); ++m) s += u(i, m) * tu.phi(a, m);
                uq[i * nq + a] = s;
            }

        // Pass 1: fluxes on vertical edges (interface e between columns e-1 and e, periodic)
        std::vector<double> flux_x(nx * nv * nq);
        parallel_for(0, nx, [&](std::size_t e) {
            const std::size_t il = (e == 0) ? nx - 1 : e - 1;
            for (std::size_t j = 0; j < nv; ++j) {
                const auto cl = f.cell(il, j);
                const auto cr = f.cell(e, j);
                for (std::size_t b = 0; b < nq; ++b) {
                    double fm = 0.0, fp = 0.0;
                    for (std::size_t m = 0; m < mx; ++m)
                        for (std::size_t n = 0; n < mv; ++n) {
                            const double pn = tv_.phi(b, n);
                            fm += cl[m * mv + n] * pn;
                            fp += cr[m * mv + n] * legendre_left(m) * pn;
                        }
                    const double v = pv.to_physical(j, tv_.rule.nodes[b]);
                    flux_x[(e * nv + j) * nq + b] = flux_vlasov_x(v, fm, fp, params_.lambda1);
                }
            }
        });

        // Pass 1: fluxes on horizontal edges (interface e between rows e-1 and e)
        std::vector<double> flux_v(nx * (nv + 1) * nq, 0.0);
        parallel_for(0, nx, [&](std::size_t i) {
            for (std::size_t e = 0; e <= nv; ++e) {
                const bool bottom = (e == 0), top = (e == nv);
                if ((bottom || top) && !exterior) continue;
                const double ve = pv.edge(e);
                for (std::size_t a = 0; a < nq; ++a) {
                    const double x = px.to_physical(i, tx_.rule.nodes[a]);
                    double fm = 0.0, fp = 0.0;
                    if (bottom) {
                        fm = exterior(t, x, ve);
                    } else {
                        const auto c = f.cell(i, e - 1);
                        for (std::size_t m = 0; m < mx; ++m)
                            for (std::size_t n = 0; n < mv; ++n) fm += c[m * mv + n] * tx_.phi(a, m);
                    }
                    if (top) {
                        fp = exterior(t, x, ve);
                    } else {
                        const auto c = f.cell(i, e);
                        for (std::size_t m = 0; m < mx; ++m)
                            for (std::size_t n = 0; n < mv; ++n) fp += c[m * mv + n] * tx_.phi(a, m) * legendre_left(n);
                    }
                    flux_v[(i * (nv + 1) + e) * nq + a] = flux_vlasov_v(uq[i * nq + a] - ve, fm, fp, params_.lambda2);
                }
            }
        });

        // Pass 2: volume terms and gathered edge terms per cell
        std::vector<double> out(f.data().size(), 0.0);
        parallel_for(0, nx, [&](std::size_t i) {
            std::vector<double> fq(nq * nq);
            const double hx = px.size(i);
            const std::size_t ir = (i + 1 == nx) ? 0 : i + 1;
            for (std::size_t j = 0; j < nv; ++j) {
                const double hv = pv.size(j);
                const auto c = f.cell(i, j);
                double* r = out.data() + f.offset(i, j);
                for (std::size_t a = 0; a < nq; ++a)
                    for (std::size_t b = 0; b < nq; ++b) {
                        double s = 0.0;
                        for (std::size_t m = 0; m < mx; ++m)
                            for (std::size_t n = 0; n < mv; ++n) s += c[m * mv + n] * tx_.phi(a, m) * tv_.phi(b, n);
                        fq[a * nq + b] = s;
                    }
                for (std::size_t a = 0; a < nq; ++a) {
                    const double wa = tx_.rule.weights[a];
                    const double ua = uq[i * nq + a];
                    for (std::size_t b = 0; b < nq; ++b) {
                        const double w = wa * tv_.rule.weights[b] * fq[a * nq + b];
                        const double v = pv.to_physical(j, tv_.rule.nodes[b]);
                        const double cx = 0.5 * hv * v * w;
                        const double cv = 0.5 * hx * (ua - v) * w;
                        for (std::size_t m = 0; m < mx; ++m)
                            for (std::size_t n = 0; n < mv; ++n)
                                r[m * mv + n] += cx * tx_.dphi(a, m) * tv_.phi(b, n) + cv * tx_.phi(a, m) * tv_.dphi(b, n);
                    }
                }
                // vertical edges: right edge (cell is the minus side), left edge (plus side)
                const double* fr = flux_x.data() + (ir * nv + j) * nq;
                const double* fl = flux_x.data() + (i * nv + j) * nq;
                for (std::size_t n = 0; n < mv; ++n) {
                    double s_r = 0.0, s_l = 0.0;
                    for (std::size_t b = 0; b < nq; ++b) {
                        s_r += tv_.rule.weights[b] * fr[b] * tv_.phi(b, n);
                        s_l += tv_.rule.weights[b] * fl[b] * tv_.phi(b, n);
                    }
                    for (std::size_t m = 0; m < mx; ++m)
                        r[m * mv + n] += 0.5 * hv * (-s_r + legendre_left(m) * s_l);
                }
                // horizontal edges: top edge (minus side), bottom edge (plus side)
                const double* ft = flux_v.data() + (i * (nv + 1) + j + 1) * nq;
                const double* fb = flux_v.data() + (i * (nv + 1) + j) * nq;
                for (std::size_t m = 0; m < mx; ++m) {
                    double s_t = 0.0, s_b = 0.0;
                    for (std::size_t a = 0; a < nq; ++a) {
                        s_t += tx_.rule.weights[a] * ft[a] * tx_.phi(a, m);
                        s_b += tx_.rule.weights[a] * fb[a] * tx_.phi(a, m);
                    }
                    for (std::size_t n = 0; n < mv; ++n)
                        r[m * mv + n] += 0.5 * hx * (-s_t + legendre_left(n) * s_b);
                }
            }
        });
        return out;
    }

    /// (F(t), psi_mn) for every basis function.
    std::vector<double> source_moments(const PhaseSource& source, double t) const {
        const std::size_t nx = mesh_.nx(), nv = mesh_.nv(), nq = tx_.points();
        const std::size_t mx = static_cast<std::size_t>(kx_ + 1), mv = static_cast<std::size_t>(kv_ + 1);
        std::vector<double> out(mesh_.cells() * mx * mv, 0.0);
        if (!source) return out;
        const auto& px = mesh_.x();
        const auto& pv = mesh_.v();
        parallel_for(0, nx, [&](std::size_t i) {
            for (std::size_t j = 0; j < nv; ++j) {
                const double jac = 0.25 * px.size(i) * pv.size(j);
                double* r = out.data() + (i * nv + j) * mx * mv;
                for (std::size_t a = 0; a < nq; ++a) {
                    const double x = px.to_physical(i, tx_.rule.nodes[a]);
                    for (std::size_t b = 0; b < nq; ++b) {
                        const double v = pv.to_physical(j, tv_.rule.nodes[b]);
                        const double w = jac * tx_.rule.weights[a] * tv_.rule.weights[b] * source(t, x, v);
                        for (std::size_t m = 0; m < mx; ++m)
                            for (std::size_t n = 0; n < mv; ++n) r[m * mv + n] += w * tx_.phi(a, m) * tv_.phi(b, n);
                    }
                }
            }
        });
        return out;
    }

    /// Time derivative of f_h: mass-inverted (-B_h(u; f, .) + (F, .)).
    PhaseField2D rhs(const PhaseField2D& f, const ScalarField1D& u, const PhaseSource& source = {},
                     double t = 0.0, const PhaseSource& exterior = {}) const {
        auto r = moments(f, u, exterior, t);
        if (source) {
            const auto s = source_moments(source, t);
            for (std::size_t k = 0; k < r.size(); ++k) r[k] += s[k];
        }
        PhaseField2D out(mesh_, kx_, kv_);
        const std::size_t mx = out.mx(), mv = out.mv();
        for (std::size_t i = 0; i < mesh_.nx(); ++i)
            for (std::size_t j = 0; j < mesh_.nv(); ++j) {
                const double cell_area = mesh_.x().size(i) * mesh_.v().size(j);
                const std::size_t off = out.offset(i, j);
                for (std::size_t m = 0; m < mx; ++m)
                    for (std::size_t n = 0; n < mv; ++n) {
                        const double mass = cell_area / ((2.0 * m + 1.0) * (2.0 * n + 1.0));
                        out.data()[off + m * mv + n] = r[off + m * mv + n] / mass;
                    }
            }
        return out;
    }

private:
    void check(const PhaseField2D& f, const ScalarField1D& u) const {
        if (!(f.mesh() == mesh_) || f.kx() != kx_ || f.kv() != kv_)
            throw InvalidArgument("VlasovOperator: field does not match the operator's mesh or degree");
        if (!(u.partition() == mesh_.x())) throw InvalidArgument("VlasovOperator: u lives on a different x-partition");
    }

    Mesh2D mesh_;
    int kx_;
    int kv_;
    FluxParams params_;
    BasisTable tx_;
    BasisTable tv_;
};

/// B_h(u; f, psi) with periodic x-fluxes and zero v-boundary fluxes.
inline double bilinear_Bh(const ScalarField1D& u, const PhaseField2D& f, const PhaseField2D& psi,
                          const FluxParams& params) {
    if (!same_discretization(f, psi)) throw InvalidArgument("bilinear_Bh: f and psi differ in mesh or degree");
    const VlasovOperator op(f.mesh(), f.kx(), f.kv(), params);
    const auto r = op.moments(f, u);
    double s = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) s -= r[k] * psi.data()[k];
    return s;
}

inline PhaseField2D vlasov_rhs(const PhaseField2D& f, const ScalarField1D& u, const FluxParams& params,
                               const PhaseSource& source = {}, double t = 0.0, const PhaseSource& exterior = {}) {
    const VlasovOperator op(f.mesh(), f.kx(), f.kv(), params);
    return op.rhs(f, u, source, t, exterior);
}

} // namespace vbdg
