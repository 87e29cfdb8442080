#pragma once

#include <cassert>
#include <chrono>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "stokestree/cluster_tree.hpp"
#include "stokestree/farfield.hpp"
#include "stokestree/kernels.hpp"
#include "stokestree/moments.hpp"
#include "stokestree/multi_index.hpp"
#include "stokestree/particles.hpp"

namespace stokestree {

struct TreecodeParams {
    static constexpr int kMaxOrder = 16;

    int order = 6;             // p
    double theta = 0.5;        // MAC parameter, in (0,1) strictly
    int leaf_capacity = 2000;  // N0
    bool shrink = true;
    KernelSelection kernels;
    int workers = 1;

    void validate() const {
        if (order < 0 || order > kMaxOrder)
            throw std::invalid_argument("params: order must be in [0, " +
                                        std::to_string(kMaxOrder) + "]");
        if (!(theta > 0.0) || !(theta < 1.0))
            throw std::invalid_argument("params: theta must lie strictly in (0,1)");
        if (leaf_capacity < 1) throw std::invalid_argument("params: leaf capacity must be >= 1");
        if (workers < 1) throw std::invalid_argument("params: workers must be >= 1");
        if (!kernels.stokeslet_enabled && !kernels.stresslet_enabled)
            throw std::invalid_argument("params: at least one kernel must be enabled");
    }
};

struct TraversalStats {
    uint64_t farfield_evals = 0;
    uint64_t direct_pairs = 0;
    uint64_t clusters_visited = 0;

    TraversalStats& operator+=(const TraversalStats& o) {
        farfield_evals += o.farfield_evals;
        direct_pairs += o.direct_pairs;
        clusters_visited += o.clusters_visited;
        return *this;
    }
};

struct VelocityResult {
    std::vector<Vec3> velocity;  // original particle order
    TraversalStats stats;
    double time_build_s = 0.0;
    double time_moments_s = 0.0;
    double time_traverse_s = 0.0;
    double time_total_s = 0.0;
};

namespace detail {

struct TraversalContext {
    const ClusterTree& tree;
    const ClusterMoments& moments;
    const MultiIndexTable& table;
    KernelSelection sel;
    int order;
    double theta;
};

/// Algorithm-1 recursion for one target: admissible clusters contribute the
/// far-field approximation, leaves contribute contracted direct sums, other
/// clusters recurse in fixed child order.
inline void accumulate_velocity(const TraversalContext& ctx, const Vec3& x,
                                std::size_t target_tree_idx, int cluster_id, Vec3& u,
                                FarFieldWorkspace& ws, TraversalStats& stats) {
    const Cluster& c = ctx.tree.clusters[cluster_id];
    ++stats.clusters_visited;
    const Vec3 dx = x - c.center;
    const double dist2 = norm2(dx);
    if (mac(c.radius, dist2, ctx.theta)) {
        assert(!(target_tree_idx >= c.begin && target_tree_idx < c.end) &&
               "MAC accepted a cluster containing the target");
        coulomb_coeffs_into(dx, ctx.table, ws.b);
        if (ctx.sel.stokeslet_enabled)
            u += stokeslet_farfield(dx, ctx.moments.stokeslet_view(cluster_id), ctx.order,
                                    ctx.table, ws);
        if (ctx.sel.stresslet_enabled)
            u += stresslet_farfield(dx, ctx.moments.stresslet_view(cluster_id), ctx.order,
                                    ctx.table, ws);
        ++stats.farfield_evals;
        return;
    }
    if (c.is_leaf) {
        add_direct_contracted(ctx.tree.particles, ctx.sel, x, target_tree_idx, c.begin, c.end, u);
        const bool has_self = target_tree_idx >= c.begin && target_tree_idx < c.end;
        stats.direct_pairs += c.count() - (has_self ? 1 : 0);
        return;
    }
    for (int s = 0; s < c.n_children; ++s)
        accumulate_velocity(ctx, x, target_tree_idx, c.children[s], u, ws, stats);
}

struct SegmentOutcome {
    TraversalStats stats;
    std::exception_ptr error;
};

/// Targets are processed in tree order; each worker owns one contiguous
/// segment and writes to disjoint slots of the output, so results are
/// bit-identical for every worker count.
inline void run_segment(const TraversalContext& ctx, std::size_t t0, std::size_t t1,
                        std::vector<Vec3>& out, SegmentOutcome& outcome) {
    try {
        FarFieldWorkspace ws;
        ws.resize_for(ctx.table);
        for (std::size_t t = t0; t < t1; ++t) {
            Vec3 u;
            accumulate_velocity(ctx, ctx.tree.particles.position[t], t, 0, u, ws, outcome.stats);
            out[ctx.tree.to_original[t]] = u;
        }
    } catch (...) {
        outcome.error = std::current_exception();
    }
}

inline VelocityResult run_treecode(const ParticleSet& ps, const TreecodeParams& params) {
    params.validate();
    validate(ps, params.kernels);
    using clock = std::chrono::steady_clock;
    auto seconds = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double>(b - a).count();
    };

    VelocityResult result;
    const auto t0 = clock::now();
    const ClusterTree tree = build_tree(ps, params.leaf_capacity, params.shrink);
    const auto t1 = clock::now();

    const int pmax = params.order + (params.kernels.stresslet_enabled ? 2 : 1);
    const MultiIndexTable table(pmax);
    const ClusterMoments moments =
        compute_moments(tree, params.order, params.kernels, table, params.workers);
    const auto t2 = clock::now();

    const std::size_t n = ps.size();
    result.velocity.assign(n, Vec3{});
    const TraversalContext ctx{tree,         moments,     table,
                               params.kernels, params.order, params.theta};

    const std::size_t w =
        std::min<std::size_t>(static_cast<std::size_t>(params.workers), n ? n : 1);
    std::vector<SegmentOutcome> outcomes(w);
    if (w == 1) {
        run_segment(ctx, 0, n, result.velocity, outcomes[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(w);
        for (std::size_t t = 0; t < w; ++t)
            threads.emplace_back(run_segment, std::cref(ctx), n * t / w, n * (t + 1) / w,
                                 std::ref(result.velocity), std::ref(outcomes[t]));
        for (auto& th : threads) th.join();
    }
    for (const auto& o : outcomes)
        if (o.error) std::rethrow_exception(o.error);
    for (const auto& o : outcomes) result.stats += o.stats;
    const auto t3 = clock::now();

    result.time_build_s = seconds(t0, t1);
    result.time_moments_s = seconds(t1, t2);
    result.time_traverse_s = seconds(t2, t3);
    result.time_total_s = seconds(t0, t3);
    return result;
}

}  // namespace detail

/// Single-worker treecode: build tree, compute moments, traverse every target.
inline VelocityResult treecode_velocity(const ParticleSet& ps, const TreecodeParams& params) {
    TreecodeParams serial = params;
    serial.workers = 1;
    return detail::run_treecode(ps, serial);
}

/// Replicated-data parallel driver: tree, moments and particles are shared
/// read-only; the target range is split into params.workers contiguous
/// segments. Output is bit-identical to the single-worker run.
inline VelocityResult parallel_velocity(const ParticleSet& ps, const TreecodeParams& params) {
    return detail::run_treecode(ps, params);
}

}  // namespace stokestree
