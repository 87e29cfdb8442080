#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stokestree/cluster_tree.hpp"
#include "stokestree/multi_index.hpp"
#include "stokestree/particles.hpp"

namespace stokestree {

/// Per-cluster Stokeslet moments M_j^k, layout [entry*3 + j].
struct StokesletMomentsView {
    std::span<const double> m;
};

/// Per-cluster stresslet moments M~_jl^k plus the precomputed contractions
/// m^k = sum_j M~_jj^k and m_ij^k = M~_ij^k + M~_ji^k.
/// Layouts: mt [entry*9 + j*3 + l], trace [entry], sym [entry*6 + sym_index(i,j)].
struct StressletMomentsView {
    std::span<const double> mt;
    std::span<const double> trace;
    std::span<const double> sym;
};

namespace detail {

/// Accumulates the moments of one particle range about `center` into
/// caller-provided flattened arrays (callers pass zeroed buffers).
/// `mono` is scratch of length `count`.
inline void accumulate_cluster_moments(const ParticleSet& src, std::size_t b, std::size_t e,
                                       const Vec3& center, int count, KernelSelection sel,
                                       const MultiIndexTable& table, std::span<double> mono,
                                       std::span<double> stok, std::span<double> str) {
    for (std::size_t n = b; n < e; ++n) {
        const Vec3 d = src.position[n] - center;
        mono[0] = 1.0;
        for (int t = 1; t < count; ++t)
            mono[t] = d[table.mono_axis(t)] * mono[table.mono_parent(t)];
        if (sel.stokeslet_enabled) {
            const Vec3& f = src.force_weight[n];
            for (int t = 0; t < count; ++t) {
                const double s = mono[t];
                stok[3 * t + 0] += s * f[0];
                stok[3 * t + 1] += s * f[1];
                stok[3 * t + 2] += s * f[2];
            }
        }
        if (sel.stresslet_enabled) {
            const Vec3& h = src.dipole_weight[n];
            const Vec3& nu = src.normal[n];
            double outer[9];
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) outer[3 * j + l] = h[j] * nu[l];
            for (int t = 0; t < count; ++t) {
                const double s = mono[t];
                double* row = &str[9 * t];
                for (int q = 0; q < 9; ++q) row[q] += s * outer[q];
            }
        }
    }
}

inline void derive_stresslet_contractions(std::span<const double> str, int count,
                                          std::span<double> trace, std::span<double> sym) {
    for (int t = 0; t < count; ++t) {
        const double* m = &str[9 * t];
        trace[t] = m[0] + m[4] + m[8];
        double* s = &sym[6 * t];
        s[MultiIndexTable::sym_index(0, 0)] = 2.0 * m[0];
        s[MultiIndexTable::sym_index(1, 1)] = 2.0 * m[4];
        s[MultiIndexTable::sym_index(2, 2)] = 2.0 * m[8];
        s[MultiIndexTable::sym_index(0, 1)] = m[1] + m[3];
        s[MultiIndexTable::sym_index(0, 2)] = m[2] + m[6];
        s[MultiIndexTable::sym_index(1, 2)] = m[5] + m[7];
    }
}

}  // namespace detail

/// Flattened moments of every cluster in a tree, computed at one order.
class ClusterMoments {
public:
    ClusterMoments(int order, int count, std::size_t n_clusters, KernelSelection sel)
        : order_(order), count_(count), sel_(sel) {
        if (sel.stokeslet_enabled) stok_.assign(3 * static_cast<std::size_t>(count) * n_clusters, 0.0);
        if (sel.stresslet_enabled) {
            str_.assign(9 * static_cast<std::size_t>(count) * n_clusters, 0.0);
            trace_.assign(static_cast<std::size_t>(count) * n_clusters, 0.0);
            sym_.assign(6 * static_cast<std::size_t>(count) * n_clusters, 0.0);
        }
    }

    int order() const { return order_; }
    int entry_count() const { return count_; }
    KernelSelection selection() const { return sel_; }

    StokesletMomentsView stokeslet_view(std::size_t cluster) const {
        const std::size_t c = static_cast<std::size_t>(count_);
        return {std::span<const double>(stok_).subspan(3 * c * cluster, 3 * c)};
    }
    StressletMomentsView stresslet_view(std::size_t cluster) const {
        const std::size_t c = static_cast<std::size_t>(count_);
        return {std::span<const double>(str_).subspan(9 * c * cluster, 9 * c),
                std::span<const double>(trace_).subspan(c * cluster, c),
                std::span<const double>(sym_).subspan(6 * c * cluster, 6 * c)};
    }

    std::span<double> stokeslet_slot(std::size_t cluster) {
        const std::size_t c = static_cast<std::size_t>(count_);
        return std::span<double>(stok_).subspan(3 * c * cluster, 3 * c);
    }
    std::span<double> stresslet_slot(std::size_t cluster) {
        const std::size_t c = static_cast<std::size_t>(count_);
        return std::span<double>(str_).subspan(9 * c * cluster, 9 * c);
    }
    std::span<double> trace_slot(std::size_t cluster) {
        return std::span<double>(trace_).subspan(static_cast<std::size_t>(count_) * cluster,
                                                 static_cast<std::size_t>(count_));
    }
    std::span<double> sym_slot(std::size_t cluster) {
        const std::size_t c = static_cast<std::size_t>(count_);
        return std::span<double>(sym_).subspan(6 * c * cluster, 6 * c);
    }

private:
    int order_;
    int count_;
    KernelSelection sel_;
    std::vector<double> stok_, str_, trace_, sym_;
};

/// Computes the order-p moments of every cluster directly from its particles.
/// Clusters are independent, so the work may be split across workers; the
/// per-cluster arithmetic (particle order, entry order) is fixed, making the
/// result identical for any worker count.
inline ClusterMoments compute_moments(const ClusterTree& tree, int p, KernelSelection sel,
                                      const MultiIndexTable& table, int workers = 1) {
    if (p < 0 || p > table.pmax())
        throw std::invalid_argument("compute_moments: order outside table range");
    if (workers < 1) throw std::invalid_argument("compute_moments: workers must be >= 1");
    const int count = table.size_at(p);
    const std::size_t n_clusters = tree.clusters.size();
    ClusterMoments moments(p, count, n_clusters, sel);

    auto work = [&](std::size_t c0, std::size_t c1) {
        std::vector<double> mono(static_cast<std::size_t>(count));
        std::span<double> none;
        for (std::size_t c = c0; c < c1; ++c) {
            const Cluster& cl = tree.clusters[c];
            detail::accumulate_cluster_moments(
                tree.particles, cl.begin, cl.end, cl.center, count, sel, table, mono,
                sel.stokeslet_enabled ? moments.stokeslet_slot(c) : none,
                sel.stresslet_enabled ? moments.stresslet_slot(c) : none);
            if (sel.stresslet_enabled)
                detail::derive_stresslet_contractions(moments.stresslet_slot(c), count,
                                                      moments.trace_slot(c), moments.sym_slot(c));
        }
    };

    if (workers == 1 || n_clusters < 2) {
        work(0, n_clusters);
    } else {
        const std::size_t w = std::min<std::size_t>(workers, n_clusters);
        std::vector<std::thread> threads;
        threads.reserve(w);
        for (std::size_t t = 0; t < w; ++t)
            threads.emplace_back(work, n_clusters * t / w, n_clusters * (t + 1) / w);
        for (auto& th : threads) th.join();
    }
    return moments;
}

}  // namespace stokestree
