#pragma once

// Finite-difference oracles for the Taylor-coefficient identities.
//
// D_y^k of G = 1/|x-y|, of the Stokeslet S_ij and of the stresslet T_ijl are
// approximated by nested central first differences evaluated in long double,
// followed by one Richardson step, (4 L(h/2) - L(h)) / 3, which cancels the
// leading h^2 term of the composite operator.
//
// Step size: h = 2e-3 * max(1, |x-y|). Tuned for ||k|| <= 4 in 80-bit
// arithmetic: the rounding error of an order-m nested difference grows like
// eps/h^m while the (post-Richardson) truncation shrinks like h^4; this h
// keeps both below ~1e-6 relative, comfortably inside the 1e-5/1e-4
// tolerances used by the tests.

#include <algorithm>
#include <array>
#include <cmath>

#include "stokestree/multi_index.hpp"
#include "stokestree/vec3.hpp"

namespace fdtest {

using stokestree::MultiIndex;
using stokestree::Vec3;
using ld = long double;
using V3 = std::array<ld, 3>;

template <class F>
ld nested_central(const F& f, const V3& y, const int k[3], ld h) {
    int axis = -1;
    for (int a = 0; a < 3; ++a)
        if (k[a] > 0) {
            axis = a;
            break;
        }
    if (axis < 0) return f(y);
    int km[3] = {k[0], k[1], k[2]};
    km[axis] -= 1;
    V3 yp = y, ym = y;
    yp[axis] += h;
    ym[axis] -= h;
    return (nested_central(f, yp, km, h) - nested_central(f, ym, km, h)) / (2.0L * h);
}

template <class F>
ld richardson_derivative(const F& f, const V3& y, const int k[3], ld h) {
    const ld coarse = nested_central(f, y, k, h);
    const ld fine = nested_central(f, y, k, h * 0.5L);
    return (4.0L * fine - coarse) / 3.0L;
}

inline ld multi_factorial(const int k[3]) {
    ld r = 1.0L;
    for (int a = 0; a < 3; ++a)
        for (int i = 2; i <= k[a]; ++i) r *= i;
    return r;
}

inline V3 to_v3(const Vec3& v) { return {(ld)v[0], (ld)v[1], (ld)v[2]}; }

inline ld step_for(const Vec3& x, const Vec3& y) {
    const ld dx = (ld)x[0] - (ld)y[0];
    const ld dy = (ld)x[1] - (ld)y[1];
    const ld dz = (ld)x[2] - (ld)y[2];
    const ld r = std::sqrt(dx * dx + dy * dy + dz * dz);
    return 2e-3L * std::max<ld>(1.0L, r);
}

inline ld coulomb_g(const Vec3& x, const V3& y) {
    const ld dx = (ld)x[0] - y[0];
    const ld dy = (ld)x[1] - y[1];
    const ld dz = (ld)x[2] - y[2];
    return 1.0L / std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline ld stokeslet_ld(const Vec3& x, const V3& y, int i, int j) {
    const V3 d{(ld)x[0] - y[0], (ld)x[1] - y[1], (ld)x[2] - y[2]};
    const ld r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    const ld r = std::sqrt(r2);
    return (i == j ? 1.0L / r : 0.0L) + d[i] * d[j] / (r2 * r);
}

inline ld stresslet_ld(const Vec3& x, const V3& y, int i, int j, int l) {
    const V3 d{(ld)x[0] - y[0], (ld)x[1] - y[1], (ld)x[2] - y[2]};
    const ld r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    return d[i] * d[j] * d[l] / (r2 * r2 * std::sqrt(r2));
}

/// b^k = (1/k!) D_y^k G(x,y).
inline double coulomb_b_fd(const Vec3& x, const Vec3& yc, const MultiIndex& k) {
    auto g = [&x](const V3& yy) { return coulomb_g(x, yy); };
    const ld v = richardson_derivative(g, to_v3(yc), k.k, step_for(x, yc));
    return static_cast<double>(v / multi_factorial(k.k));
}

/// a^k_ij = (1/k!) D_y^k S_ij(x,y).
inline double stokeslet_a_fd(const Vec3& x, const Vec3& yc, const MultiIndex& k, int i, int j) {
    auto f = [&x, i, j](const V3& yy) { return stokeslet_ld(x, yy, i, j); };
    const ld v = richardson_derivative(f, to_v3(yc), k.k, step_for(x, yc));
    return static_cast<double>(v / multi_factorial(k.k));
}

/// a~^k_ijl = (1/k!) D_y^k T_ijl(x,y).
inline double stresslet_a_fd(const Vec3& x, const Vec3& yc, const MultiIndex& k, int i, int j,
                             int l) {
    auto f = [&x, i, j, l](const V3& yy) { return stresslet_ld(x, yy, i, j, l); };
    const ld v = richardson_derivative(f, to_v3(yc), k.k, step_for(x, yc));
    return static_cast<double>(v / multi_factorial(k.k));
}

}  // namespace fdtest
