#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace vbdg {

/// A 1D partition a = e_0 < e_1 < ... < e_N = b. Periodic partitions identify
/// e_0 with e_N; interface 0 and interface N are then the same point.
class Partition1D {
public:
    Partition1D() = default;

    Partition1D(std::vector<double> edges, bool periodic) : edges_(std::move(edges)), periodic_(periodic) {
        if (edges_.size() < 2) throw InvalidArgument("partition needs at least one cell");
        for (double e : edges_)
            if (!std::isfinite(e)) throw InvalidArgument("partition edges must be finite");
        sizes_.resize(edges_.size() - 1);
        for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
            sizes_[i] = edges_[i + 1] - edges_[i];
            if (!(sizes_[i] > 0.0)) throw InvalidArgument("partition edges must be strictly increasing");
        }
    }

    double a() const { return edges_.front(); }
    double b() const { return edges_.back(); }
    double length() const { return b() - a(); }
    std::size_t cells() const { return sizes_.size(); }
    bool periodic() const { return periodic_; }

    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& sizes() const { return sizes_; }
    double edge(std::size_t i) const { return edges_[i]; }
    double size(std::size_t i) const { return sizes_[i]; }
    double center(std::size_t i) const { return 0.5 * (edges_[i] + edges_[i + 1]); }

    double max_size() const { return *std::max_element(sizes_.begin(), sizes_.end()); }
    double min_size() const { return *std::min_element(sizes_.begin(), sizes_.end()); }
    double quasi_uniformity() const { return max_size() / min_size(); }

    /// Cell containing x; points on an interior edge belong to the right cell,
    /// x = b belongs to the last cell.
    std::size_t locate(double x) const {
        if (x < a() || x > b()) throw InvalidArgument("point outside partition");
        auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - edges_.begin());
        return i == 0 ? 0 : std::min(i - 1, cells() - 1);
    }

    /// Reference coordinate in [-1, 1] of x inside cell i.
    double to_reference(std::size_t i, double x) const { return 2.0 * (x - center(i)) / sizes_[i]; }
    double to_physical(std::size_t i, double xi) const { return center(i) + 0.5 * sizes_[i] * xi; }

    bool has_edge_at(double x, double tol = 1e-12) const {
        return std::any_of(edges_.begin(), edges_.end(), [&](double e) { return std::abs(e - x) <= tol; });
    }

    friend bool operator==(const Partition1D& l, const Partition1D& r) {
        return l.periodic_ == r.periodic_ && l.edges_ == r.edges_;
    }

private:
    std::vector<double> edges_;
    std::vector<double> sizes_;
    bool periodic_ = false;
};

inline Partition1D uniform_partition(double a, double b, std::size_t n, bool periodic) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("uniform_partition: endpoints must be finite");
    if (n == 0) throw InvalidArgument("uniform_partition: need n >= 1");
    if (!(a < b)) throw InvalidArgument("uniform_partition: need a < b");
    std::vector<double> edges(n + 1);
    const double h = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) edges[i] = a + h * static_cast<double>(i);
    edges[n] = b;
    return Partition1D(std::move(edges), periodic);
}

/// Phase-space mesh T_ij = I_i x J_j: periodic in x, bounded in v.
class Mesh2D {
public:
    Mesh2D() = default;
    Mesh2D(Partition1D px, Partition1D pv) : px_(std::move(px)), pv_(std::move(pv)) {
        if (!px_.periodic()) throw InvalidArgument("tensor_mesh: x-partition must be periodic");
        if (pv_.periodic()) throw InvalidArgument("tensor_mesh: v-partition must not be periodic");
    }

    const Partition1D& x() const { return px_; }
    const Partition1D& v() const { return pv_; }
    std::size_t nx() const { return px_.cells(); }
    std::size_t nv() const { return pv_.cells(); }
    std::size_t cells() const { return nx() * nv(); }
    double h() const { return std::max(px_.max_size(), pv_.max_size()); }
    /// Half-width M of a symmetric velocity interval J = [-M, M].
    double velocity_bound() const { return std::max(std::abs(pv_.a()), std::abs(pv_.b())); }

    friend bool operator==(const Mesh2D& l, const Mesh2D& r) { return l.px_ == r.px_ && l.pv_ == r.pv_; }

private:
    Partition1D px_;
    Partition1D pv_;
};

inline Mesh2D tensor_mesh(Partition1D px, Partition1D pv) { return Mesh2D(std::move(px), std::move(pv)); }

} // namespace vbdg
