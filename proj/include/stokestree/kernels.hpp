#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stokestree/particles.hpp"
#include "stokestree/vec3.hpp"

namespace stokestree {

/// Stokeslet tensor S_ij = delta_ij/|x-y| + (x_i-y_i)(x_j-y_j)/|x-y|^3.
inline Mat3 stokeslet(const Vec3& x, const Vec3& y) {
    const Vec3 d = x - y;
    const double r2 = norm2(d);
    if (r2 == 0.0) throw std::domain_error("stokeslet: coincident points");
    const double rinv = 1.0 / std::sqrt(r2);
    const double r3inv = rinv / r2;
    Mat3 s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s[i][j] = (i == j ? rinv : 0.0) + d[i] * d[j] * r3inv;
    return s;
}

/// Stresslet tensor T_ijl = (x_i-y_i)(x_j-y_j)(x_l-y_l)/|x-y|^5.
inline Ten3 stresslet(const Vec3& x, const Vec3& y) {
    const Vec3 d = x - y;
    const double r2 = norm2(d);
    if (r2 == 0.0) throw std::domain_error("stresslet: coincident points");
    const double r5inv = 1.0 / (r2 * r2 * std::sqrt(r2));
    Ten3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                t[i][j][l] = d[i] * d[j] * d[l] * r5inv;
    return t;
}

namespace detail {

constexpr std::size_t kNoSkip = std::numeric_limits<std::size_t>::max();

template <bool Sto, bool Str>
inline void direct_contracted_impl(const ParticleSet& src, const Vec3& x, std::size_t skip,
                                   std::size_t s0, std::size_t s1, Vec3& u) {
    for (std::size_t n = s0; n < s1; ++n) {
        if (n == skip) continue;
        const Vec3 d = x - src.position[n];
        const double r2 = norm2(d);
        if (r2 == 0.0) throw std::domain_error("direct sum: coincident particles");
        const double rinv = 1.0 / std::sqrt(r2);
        const double r3inv = rinv / r2;
        if constexpr (Sto) {
            const Vec3& f = src.force_weight[n];
            const double s = dot(d, f) * r3inv;  // s^mn
            u[0] += f[0] * rinv + d[0] * s;
            u[1] += f[1] * rinv + d[1] * s;
            u[2] += f[2] * rinv + d[2] * s;
        }
        if constexpr (Str) {
            const double t =
                dot(d, src.dipole_weight[n]) * dot(d, src.normal[n]) * (r3inv / r2);  // t^mn
            u[0] += d[0] * t;
            u[1] += d[1] * t;
            u[2] += d[2] * t;
        }
    }
}

/// Contracted summation over sources [s0,s1) at target x, skipping one index.
/// Source order is ascending, so the result is independent of how callers
/// partition target work.
inline void add_direct_contracted(const ParticleSet& src, KernelSelection sel, const Vec3& x,
                                  std::size_t skip, std::size_t s0, std::size_t s1, Vec3& u) {
    if (sel.stokeslet_enabled && sel.stresslet_enabled)
        direct_contracted_impl<true, true>(src, x, skip, s0, s1, u);
    else if (sel.stokeslet_enabled)
        direct_contracted_impl<true, false>(src, x, skip, s0, s1, u);
    else
        direct_contracted_impl<false, true>(src, x, skip, s0, s1, u);
}

}  // namespace detail

/// O(N^2) reference summation that materializes the kernel tensors per pair.
/// Test oracle; the contracted form below is the production path.
inline std::vector<Vec3> naive_direct_velocity(const ParticleSet& ps, KernelSelection sel) {
    validate(ps, sel);
    const std::size_t n = ps.size();
    std::vector<Vec3> u(n);
    for (std::size_t m = 0; m < n; ++m) {
        Vec3 acc;
        for (std::size_t src = 0; src < n; ++src) {
            if (src == m) continue;
            if (sel.stokeslet_enabled) {
                const Mat3 s = stokeslet(ps.position[m], ps.position[src]);
                const Vec3& f = ps.force_weight[src];
                for (int i = 0; i < 3; ++i)
                    acc[i] += s[i][0] * f[0] + s[i][1] * f[1] + s[i][2] * f[2];
            }
            if (sel.stresslet_enabled) {
                const Ten3 t = stresslet(ps.position[m], ps.position[src]);
                const Vec3& h = ps.dipole_weight[src];
                const Vec3& nu = ps.normal[src];
                for (int i = 0; i < 3; ++i) {
                    double s = 0.0;
                    for (int j = 0; j < 3; ++j)
                        for (int l = 0; l < 3; ++l) s += t[i][j][l] * h[j] * nu[l];
                    acc[i] += s;
                }
            }
        }
        u[m] = acc;
    }
    return u;
}

/// Contracted direct summation for targets [first,last); mathematically
/// identical to naive_direct_velocity restricted to that range but never
/// forms the tensors.
inline std::vector<Vec3> contracted_direct_velocity(const ParticleSet& ps, KernelSelection sel,
                                                    std::size_t first, std::size_t last) {
    validate(ps, sel);
    if (first > last || last > ps.size())
        throw std::invalid_argument("contracted_direct_velocity: bad target range");
    std::vector<Vec3> u(last - first);
    for (std::size_t m = first; m < last; ++m)
        detail::add_direct_contracted(ps, sel, ps.position[m], m, 0, ps.size(), u[m - first]);
    return u;
}

inline std::vector<Vec3> contracted_direct_velocity(const ParticleSet& ps, KernelSelection sel) {
    return contracted_direct_velocity(ps, sel, 0, ps.size());
}

/// Same contracted sum evaluated only at an explicit list of target indices.
inline std::vector<Vec3> contracted_direct_velocity_at(const ParticleSet& ps, KernelSelection sel,
                                                       const std::vector<std::size_t>& targets) {
    validate(ps, sel);
    std::vector<Vec3> u(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const std::size_t m = targets[i];
        if (m >= ps.size())
            throw std::invalid_argument("contracted_direct_velocity_at: target out of range");
        detail::add_direct_contracted(ps, sel, ps.position[m], m, 0, ps.size(), u[i]);
    }
    return u;
}

}  // namespace stokestree
