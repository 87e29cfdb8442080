#pragma once

#include <stdexcept>

#include "stokestree/coulomb.hpp"
#include "stokestree/multi_index.hpp"

namespace stokestree {

/// Explicit Stokeslet Taylor coefficient
///   a^k_ij = delta_ij b^k + dx_j (k_i+1) b^{k+e_i} - (k_i+1-delta_ij) b^{k+e_i-e_j}.
/// Reference path for the contracted far-field evaluation; not on the hot path.
inline double stokeslet_taylor_coeff(const MultiIndexTable& table, const CoulombCoeffs& coeffs,
                                     int flat_k, int i, int j) {
    if (flat_k < 0 || flat_k >= table.size())
        throw std::invalid_argument("stokeslet_taylor_coeff: multi-index out of table");
    const MultiIndex& k = table[flat_k];
    if (k.norm() + 1 > coeffs.pmax)
        throw std::invalid_argument("stokeslet_taylor_coeff: coefficients not deep enough");
    const double dij = (i == j) ? 1.0 : 0.0;
    const double kip1 = k[i] + 1;
    return dij * coeffs.b[flat_k] + coeffs.dx[j] * kip1 * coeffs.b[table.up(flat_k, i)] -
           (kip1 - dij) * coeffs.b[table.up_down(flat_k, i, j)];
}

/// Explicit stresslet Taylor coefficient, from
///   3 a~^k_ijl = dx_l (k_i+1)(k_j+1+delta_ij) b^{k+e_i+e_j}
///              - (k_i+1-delta_il)(k_j+1+delta_ij-delta_jl) b^{k+e_i+e_j-e_l}
///              + delta_ij (k_l+1) b^{k+e_l}.
inline double stresslet_taylor_coeff(const MultiIndexTable& table, const CoulombCoeffs& coeffs,
                                     int flat_k, int i, int j, int l) {
    if (flat_k < 0 || flat_k >= table.size())
        throw std::invalid_argument("stresslet_taylor_coeff: multi-index out of table");
    const MultiIndex& k = table[flat_k];
    if (k.norm() + 2 > coeffs.pmax)
        throw std::invalid_argument("stresslet_taylor_coeff: coefficients not deep enough");
    const double dij = (i == j) ? 1.0 : 0.0;
    const double dil = (i == l) ? 1.0 : 0.0;
    const double djl = (j == l) ? 1.0 : 0.0;
    const double t1 = coeffs.dx[l] * (k[i] + 1) * (k[j] + 1 + dij) *
                      coeffs.b[table.up_up(flat_k, i, j)];
    const double t2 = (k[i] + 1 - dil) * (k[j] + 1 + dij - djl) *
                      coeffs.b[table.up_up_down(flat_k, i, j, l)];
    const double t3 = dij * (k[l] + 1) * coeffs.b[table.up(flat_k, l)];
    return (t1 - t2 + t3) / 3.0;
}

}  // namespace stokestree
