#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "stokestree/vec3.hpp"

namespace stokestree {

/// Which singularity kernels participate in a summation.
struct KernelSelection {
    bool stokeslet_enabled = true;
    bool stresslet_enabled = true;

    static constexpr KernelSelection stokeslet_only() { return {true, false}; }
    static constexpr KernelSelection stresslet_only() { return {false, true}; }
    static constexpr KernelSelection both() { return {true, true}; }

    friend constexpr bool operator==(KernelSelection a, KernelSelection b) {
        return a.stokeslet_enabled == b.stokeslet_enabled &&
               a.stresslet_enabled == b.stresslet_enabled;
    }
};

/// Structure-of-arrays particle storage. `dipole_weight` and `normal` may be
/// empty when stresslets are disabled; no operation reads them in that case.
struct ParticleSet {
    std::vector<Vec3> position;
    std::vector<Vec3> force_weight;   // f
    std::vector<Vec3> dipole_weight;  // h
    std::vector<Vec3> normal;         // nu, unit length when stresslets are on

    std::size_t size() const { return position.size(); }
};

/// Validates sizes, finiteness and (for stresslets) unit normals.
/// Pairwise distinctness of positions is enforced lazily by the summation
/// kernels, which raise std::domain_error on a coincident pair.
inline void validate(const ParticleSet& ps, KernelSelection sel) {
    if (!sel.stokeslet_enabled && !sel.stresslet_enabled)
        throw std::invalid_argument("kernel selection: at least one kernel must be enabled");
    const std::size_t n = ps.size();
    if (n == 0) throw std::invalid_argument("particle set is empty");

    auto check_array = [n](const std::vector<Vec3>& a, const char* name) {
        if (a.size() != n)
            throw std::invalid_argument(std::string("particle array '") + name +
                                        "' has mismatched length");
        for (const Vec3& v : a)
            if (!all_finite(v))
                throw std::invalid_argument(std::string("particle array '") + name +
                                            "' contains a non-finite value");
    };

    check_array(ps.position, "position");
    if (sel.stokeslet_enabled) check_array(ps.force_weight, "force_weight");
    if (sel.stresslet_enabled) {
        check_array(ps.dipole_weight, "dipole_weight");
        check_array(ps.normal, "normal");
        constexpr double tol = 1e-12;
        for (std::size_t i = 0; i < n; ++i) {
            const double len = norm(ps.normal[i]);
            if (std::abs(len - 1.0) > tol)
                throw std::invalid_argument("normal " + std::to_string(i) +
                                            " is not unit length");
        }
    }
}

}  // namespace stokestree
