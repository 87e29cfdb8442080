#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "stokestree/coulomb.hpp"
#include "stokestree/moments.hpp"
#include "stokestree/multi_index.hpp"
#include "stokestree/vec3.hpp"

namespace stokestree {

/// Per-worker scratch: the Coulomb coefficient buffer shared by the Stokeslet
/// and stresslet evaluations of one particle-cluster pair. Contents are
/// undefined between pairs.
struct FarFieldWorkspace {
    std::vector<double> b;

    void resize_for(const MultiIndexTable& table) {
        b.resize(static_cast<std::size_t>(table.size()) + 1);
    }
};

/// Contracted Stokeslet particle-cluster approximation
///   u_i = sum_{||k||<=p} [ 2 b^k M_i^k
///         + (k_i+1) ( b^{k+e_i} sigma^k - sum_j b^{k+e_i-e_j} M_j^k ) ],
/// sigma^k = sum_j dx_j M_j^k. Requires ws.b filled for this dx with
/// table.pmax() >= p+1.
inline Vec3 stokeslet_farfield(const Vec3& dx, const StokesletMomentsView& moments, int p,
                               const MultiIndexTable& table, const FarFieldWorkspace& ws) {
    if (table.pmax() < p + 1)
        throw std::invalid_argument("stokeslet_farfield: table too shallow for order");
    const int count = table.size_at(p);
    if (moments.m.size() != static_cast<std::size_t>(3 * count))
        throw std::invalid_argument("stokeslet_farfield: moment order mismatch");
    const double* b = ws.b.data();
    Vec3 u;
    for (int e = 0; e < count; ++e) {
        const double* m = &moments.m[3 * e];
        const double be = b[e];
        const double sigma = dx[0] * m[0] + dx[1] * m[1] + dx[2] * m[2];
        const MultiIndex& k = table[e];
        for (int i = 0; i < 3; ++i) {
            const double kip1 = k[i] + 1;
            double s = b[table.up(e, i)] * sigma;
            s -= b[table.up_down(e, i, 0)] * m[0] + b[table.up_down(e, i, 1)] * m[1] +
                 b[table.up_down(e, i, 2)] * m[2];
            u[i] += 2.0 * be * m[i] + kip1 * s;
        }
    }
    return u;
}

/// Contracted stresslet particle-cluster approximation
///   u_i = (1/3) sum_{||k||<=p} [ (k_i+1) sum_j (k_j+1+d_ij) b^{k+e_i+e_j} tau_j
///         - (k_i+1) sum_{j,l} (k_j+1+d_ij) b^{k+e_i+e_j-e_l} M~_jl^k
///         + (k_i+1) b^{k+e_i} m^k + sum_j (k_j+1) b^{k+e_j} m_ij^k ],
/// tau_j = sum_l dx_l M~_jl^k. Requires ws.b filled for this dx with
/// table.pmax() >= p+2.
inline Vec3 stresslet_farfield(const Vec3& dx, const StressletMomentsView& moments, int p,
                               const MultiIndexTable& table, const FarFieldWorkspace& ws) {
    if (table.pmax() < p + 2)
        throw std::invalid_argument("stresslet_farfield: table too shallow for order");
    const int count = table.size_at(p);
    if (moments.trace.size() != static_cast<std::size_t>(count))
        throw std::invalid_argument("stresslet_farfield: moment order mismatch");
    const double* b = ws.b.data();
    Vec3 u;
    for (int e = 0; e < count; ++e) {
        const double* mt = &moments.mt[9 * e];
        const double mk = moments.trace[e];
        const double* ms = &moments.sym[6 * e];
        const MultiIndex& k = table[e];
        double tau[3];
        for (int j = 0; j < 3; ++j)
            tau[j] = dx[0] * mt[3 * j + 0] + dx[1] * mt[3 * j + 1] + dx[2] * mt[3 * j + 2];
        for (int i = 0; i < 3; ++i) {
            const double kip1 = k[i] + 1;
            double t1 = 0.0, t2 = 0.0;
            for (int j = 0; j < 3; ++j) {
                const double cj = k[j] + 1 + (i == j ? 1 : 0);
                t1 += cj * b[table.up_up(e, i, j)] * tau[j];
                t2 += cj * (b[table.up_up_down(e, i, j, 0)] * mt[3 * j + 0] +
                            b[table.up_up_down(e, i, j, 1)] * mt[3 * j + 1] +
                            b[table.up_up_down(e, i, j, 2)] * mt[3 * j + 2]);
            }
            const double t3 = b[table.up(e, i)] * mk;
            const double t4 = (k[0] + 1) * b[table.up(e, 0)] * ms[MultiIndexTable::sym_index(i, 0)] +
                              (k[1] + 1) * b[table.up(e, 1)] * ms[MultiIndexTable::sym_index(i, 1)] +
                              (k[2] + 1) * b[table.up(e, 2)] * ms[MultiIndexTable::sym_index(i, 2)];
            u[i] += kip1 * (t1 - t2 + t3) + t4;
        }
    }
    return u * (1.0 / 3.0);
}

}  // namespace stokestree
