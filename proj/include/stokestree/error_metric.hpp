#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "stokestree/vec3.hpp"

namespace stokestree {

/// Relative L2 error of a test field against a reference field,
///   E = ( sum_n |u_ref - u_test|^2 / sum_n |u_ref|^2 )^(1/2).
inline double relative_error(std::span<const Vec3> u_ref, std::span<const Vec3> u_test) {
    if (u_ref.size() != u_test.size())
        throw std::invalid_argument("relative_error: field lengths differ");
    if (u_ref.empty()) throw std::invalid_argument("relative_error: empty fields");
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < u_ref.size(); ++n) {
        num += norm2(u_ref[n] - u_test[n]);
        den += norm2(u_ref[n]);
    }
    if (den == 0.0) throw std::domain_error("relative_error: reference field is identically zero");
    return std::sqrt(num / den);
}

}  // namespace stokestree
