#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stokestree/particles.hpp"
#include "stokestree/vec3.hpp"

namespace stokestree {

struct Box {
    Vec3 lo, hi;
    Vec3 center() const { return (lo + hi) * 0.5; }
    bool contains(const Vec3& p) const {
        return p[0] >= lo[0] && p[0] <= hi[0] && p[1] >= lo[1] && p[1] <= hi[1] &&
               p[2] >= lo[2] && p[2] <= hi[2];
    }
};

struct Cluster {
    std::size_t begin = 0, end = 0;  // particle range, tree order
    Vec3 center;                     // y_c, midpoint of bbox
    double radius = 0.0;             // max_n |y^n - y_c|
    Box bbox;                        // tightened to the particles iff shrink
    int32_t children[8];             // cluster ids, slot order; first n_children valid
    int n_children = 0;
    bool is_leaf = true;

    std::size_t count() const { return end - begin; }
};

struct ClusterTree {
    ParticleSet particles;               // tree-ordered copy of the input
    std::vector<Cluster> clusters;       // [0] is the root, pre-order
    std::vector<uint32_t> to_original;   // tree index -> original index
    std::vector<uint32_t> to_tree;      // original index -> tree index
    int leaf_capacity = 0;
    bool shrink = false;

    const Cluster& root() const { return clusters.front(); }
};

/// Multipole acceptance criterion r/R <= theta with R^2 precomputed.
/// R = 0 is never accepted (the expansion center coincides with the target).
inline bool mac(double radius, double dist2, double theta) {
    if (dist2 == 0.0) return false;
    return radius * radius <= theta * theta * dist2;
}

inline bool mac(const Vec3& x, const Cluster& c, double theta) {
    return mac(c.radius, norm2(x - c.center), theta);
}

namespace detail {

inline Box tight_box(const std::vector<Vec3>& pos, const uint32_t* idx, std::size_t b,
                     std::size_t e) {
    Box box{pos[idx[b]], pos[idx[b]]};
    for (std::size_t t = b + 1; t < e; ++t) {
        const Vec3& p = pos[idx[t]];
        for (int a = 0; a < 3; ++a) {
            box.lo[a] = std::min(box.lo[a], p[a]);
            box.hi[a] = std::max(box.hi[a], p[a]);
        }
    }
    return box;
}

struct TreeBuilder {
    static constexpr int kMaxDepth = 64;

    const ParticleSet& ps;
    int n0;
    bool shrink;
    std::vector<Cluster>& clusters;
    std::vector<uint32_t>& idx;
    std::vector<uint32_t> scratch;

    int build(std::size_t b, std::size_t e, const Box& geom, int depth) {
        const int id = static_cast<int>(clusters.size());
        clusters.emplace_back();
        {
            Cluster& c = clusters.back();
            c.begin = b;
            c.end = e;
            c.bbox = shrink ? tight_box(ps.position, idx.data(), b, e) : geom;
            c.center = c.bbox.center();
            double max2 = 0.0;
            for (std::size_t t = b; t < e; ++t)
                max2 = std::max(max2, norm2(ps.position[idx[t]] - c.center));
            c.radius = std::sqrt(max2);
        }

        if (e - b <= static_cast<std::size_t>(n0) || depth >= kMaxDepth) return id;

        // Bisect the geometric box; ties go to the upper child.
        const Vec3 mid = geom.center();
        std::size_t counts[8] = {};
        for (std::size_t t = b; t < e; ++t) {
            const Vec3& p = ps.position[idx[t]];
            const int slot = (p[0] >= mid[0] ? 1 : 0) | (p[1] >= mid[1] ? 2 : 0) |
                             (p[2] >= mid[2] ? 4 : 0);
            ++counts[slot];
        }
        std::size_t offset[8];
        std::size_t acc = b;
        for (int s = 0; s < 8; ++s) {
            offset[s] = acc;
            acc += counts[s];
        }
        std::size_t cursor[8];
        std::copy(offset, offset + 8, cursor);
        for (std::size_t t = b; t < e; ++t) {
            const Vec3& p = ps.position[idx[t]];
            const int slot = (p[0] >= mid[0] ? 1 : 0) | (p[1] >= mid[1] ? 2 : 0) |
                             (p[2] >= mid[2] ? 4 : 0);
            scratch[cursor[slot]++] = idx[t];
        }
        std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(b),
                  scratch.begin() + static_cast<std::ptrdiff_t>(e),
                  idx.begin() + static_cast<std::ptrdiff_t>(b));

        int child_ids[8];
        int n_children = 0;
        for (int s = 0; s < 8; ++s) {
            if (counts[s] == 0) continue;
            Box cb;
            for (int a = 0; a < 3; ++a) {
                const bool upper = (s >> a) & 1;
                cb.lo[a] = upper ? mid[a] : geom.lo[a];
                cb.hi[a] = upper ? geom.hi[a] : mid[a];
            }
            child_ids[n_children++] =
                build(offset[s], offset[s] + counts[s], cb, depth + 1);
        }
        Cluster& c = clusters[id];
        c.is_leaf = false;
        c.n_children = n_children;
        std::copy(child_ids, child_ids + n_children, c.children);
        return id;
    }
};

}  // namespace detail

/// Builds the octree. The root is the smallest axis-aligned cube containing
/// all particles, expanded by a 1e-12 relative margin; subdivision stops at
/// leaf_capacity particles. Particles are permuted into tree order so every
/// cluster owns a contiguous range.
inline ClusterTree build_tree(const ParticleSet& ps, int leaf_capacity, bool shrink) {
    const std::size_t n = ps.size();
    if (n == 0) throw std::invalid_argument("build_tree: empty particle set");
    if (leaf_capacity < 1) throw std::invalid_argument("build_tree: leaf capacity must be >= 1");

    ClusterTree tree;
    tree.leaf_capacity = leaf_capacity;
    tree.shrink = shrink;
    tree.to_original.resize(n);
    for (std::size_t i = 0; i < n; ++i) tree.to_original[i] = static_cast<uint32_t>(i);

    Box tight = detail::tight_box(ps.position, tree.to_original.data(), 0, n);
    double side = 0.0;
    for (int a = 0; a < 3; ++a) side = std::max(side, tight.hi[a] - tight.lo[a]);
    side *= 1.0 + 1e-12;
    const Vec3 c = tight.center();
    const Vec3 half{side * 0.5, side * 0.5, side * 0.5};
    const Box root_box{c - half, c + half};

    tree.clusters.reserve(2 * (n / static_cast<std::size_t>(leaf_capacity) + 1));
    detail::TreeBuilder builder{ps, leaf_capacity, shrink, tree.clusters, tree.to_original,
                                std::vector<uint32_t>(n)};
    builder.build(0, n, root_box, 0);

    tree.to_tree.resize(n);
    for (std::size_t t = 0; t < n; ++t) tree.to_tree[tree.to_original[t]] = static_cast<uint32_t>(t);

    auto gather = [&](const std::vector<Vec3>& src) {
        std::vector<Vec3> out;
        if (!src.empty()) {
            out.resize(n);
            for (std::size_t t = 0; t < n; ++t) out[t] = src[tree.to_original[t]];
        }
        return out;
    };
    tree.particles.position = gather(ps.position);
    tree.particles.force_weight = gather(ps.force_weight);
    tree.particles.dipole_weight = gather(ps.dipole_weight);
    tree.particles.normal = gather(ps.normal);
    return tree;
}

}  // namespace stokestree
