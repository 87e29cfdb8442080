#pragma once

#include <array>
#include <cmath>

namespace stokestree {

/// 3-component double vector used for positions, velocities and weights.
struct Vec3 {
    double c[3]{0.0, 0.0, 0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double x, double y, double z) : c{x, y, z} {}

    constexpr double& operator[](int i) { return c[i]; }
    constexpr const double& operator[](int i) const { return c[i]; }

    constexpr Vec3& operator+=(const Vec3& o) {
        c[0] += o.c[0];
        c[1] += o.c[1];
        c[2] += o.c[2];
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) {
        c[0] -= o.c[0];
        c[1] -= o.c[1];
        c[2] -= o.c[2];
        return *this;
    }
    constexpr Vec3& operator*=(double s) {
        c[0] *= s;
        c[1] *= s;
        c[2] *= s;
        return *this;
    }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.c[0], -a.c[1], -a.c[2]}; }
    friend constexpr bool operator==(const Vec3& a, const Vec3& b) {
        return a.c[0] == b.c[0] && a.c[1] == b.c[1] && a.c[2] == b.c[2];
    }
};

constexpr double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

constexpr double norm2(const Vec3& a) { return dot(a, a); }

inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

inline bool all_finite(const Vec3& a) {
    return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]);
}

/// Rank-2 tensor, indexed [i][j].
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Rank-3 tensor, indexed [i][j][l].
using Ten3 = std::array<Mat3, 3>;

}  // namespace stokestree
