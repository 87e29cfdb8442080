#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "stokestree/multi_index.hpp"
#include "stokestree/vec3.hpp"

namespace stokestree {

/// Scaled Taylor derivatives b^k = (1/k!) D_y^k (1/|x-y|) evaluated at
/// dx = x - y, flattened in MultiIndexTable order. b[0] = 1/|dx|.
struct CoulombCoeffs {
    std::vector<double> b;  // size table.size()+1, last slot pinned to 0
    Vec3 dx;
    double r2 = 0.0;
    int pmax = 0;

    double at(int flat) const { return flat == MultiIndexTable::kInvalid ? 0.0 : b[flat]; }
};

/// Fills `b` (size table.size()+1) grade by grade via the three-term
/// recurrence
///   ||k|| |dx|^2 b^k = (2||k||-1) sum_i dx_i b^{k-e_i} - (||k||-1) sum_i b^{k-2e_i},
/// with b^k = 0 whenever some k_i < 0. Returns |dx|^2.
inline double coulomb_coeffs_into(const Vec3& dx, const MultiIndexTable& table,
                                  std::span<double> b) {
    if (b.size() != static_cast<std::size_t>(table.size()) + 1)
        throw std::invalid_argument("coulomb_coeffs_into: buffer size mismatch");
    const double r2 = norm2(dx);
    if (!(r2 > 0.0)) throw std::domain_error("coulomb_coeffs: zero displacement");

    b[table.zero_slot()] = 0.0;
    b[0] = 1.0 / std::sqrt(r2);
    for (int s = 1; s <= table.pmax(); ++s) {
        const double c1 = 2.0 * s - 1.0;
        const double c2 = s - 1.0;
        const double inv = 1.0 / (s * r2);
        for (int e = table.grade_begin(s); e < table.grade_end(s); ++e) {
            double acc = c1 * (dx[0] * b[table.down(e, 0)] + dx[1] * b[table.down(e, 1)] +
                               dx[2] * b[table.down(e, 2)]);
            if (s >= 2)
                acc -= c2 * (b[table.down2(e, 0)] + b[table.down2(e, 1)] + b[table.down2(e, 2)]);
            b[e] = acc * inv;
        }
    }
    return r2;
}

inline CoulombCoeffs coulomb_coeffs(const Vec3& dx, const MultiIndexTable& table) {
    CoulombCoeffs c;
    c.b.resize(static_cast<std::size_t>(table.size()) + 1);
    c.dx = dx;
    c.pmax = table.pmax();
    c.r2 = coulomb_coeffs_into(dx, table, c.b);
    return c;
}

}  // namespace stokestree
