#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stokestree/particles.hpp"
#include "stokestree/rng.hpp"
#include "stokestree/vec3.hpp"

namespace stokestree {

/// Stokeslets and stresslets at the face centroids of a geodesically refined
/// icosahedral triangulation of the unit sphere; N = 20 * 4^levels.
struct SphereCaseConfig {
    int levels = 0;
    uint64_t seed = 0;
};

/// Stokeslets uniform in a cube of side (n/density)^(1/3).
struct CubeCaseConfig {
    std::size_t n = 0;
    double density = 2500.0;
    uint64_t seed = 0;

    double side() const { return std::cbrt(static_cast<double>(n) / density); }
};

namespace detail {

struct Triangle {
    Vec3 a, b, c;
};

/// The 20 icosahedron faces for the golden-ratio vertex set (0,±1,±phi) and
/// cyclic permutations, vertices normalized to the unit sphere. Faces are
/// found as vertex triples at mutual edge distance, enumerated in index
/// order, which fixes the output ordering.
inline std::vector<Triangle> icosahedron_faces() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v;
    v.reserve(12);
    for (double s1 : {-1.0, 1.0})
        for (double s2 : {-1.0, 1.0}) {
            v.push_back({0.0, s1, s2 * phi});
            v.push_back({s1, s2 * phi, 0.0});
            v.push_back({s2 * phi, 0.0, s1});
        }
    // Edge length of this embedding is 2; next-larger pair distance is 2*phi.
    const double edge2_cut = 5.0;
    std::vector<Triangle> faces;
    faces.reserve(20);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (norm2(v[i] - v[j]) > edge2_cut) continue;
            for (std::size_t k = j + 1; k < v.size(); ++k) {
                if (norm2(v[i] - v[k]) > edge2_cut || norm2(v[j] - v[k]) > edge2_cut) continue;
                faces.push_back({normalized(v[i]), normalized(v[j]), normalized(v[k])});
            }
        }
    return faces;
}

}  // namespace detail

/// Generates the sphere test geometry: faces are refined `levels` times by
/// connecting edge midpoints (midpoints re-projected to the sphere each
/// level); particles are the planar face centroids projected to the sphere.
/// Normals equal positions; f and h components are i.i.d. uniform in [-1,1]
/// drawn per particle in the order f1 f2 f3 h1 h2 h3.
inline ParticleSet sphere_particles(const SphereCaseConfig& cfg) {
    if (cfg.levels < 0) throw std::invalid_argument("sphere_particles: levels must be >= 0");
    std::vector<detail::Triangle> faces = detail::icosahedron_faces();
    for (int l = 0; l < cfg.levels; ++l) {
        std::vector<detail::Triangle> next;
        next.reserve(faces.size() * 4);
        for (const auto& t : faces) {
            const Vec3 ab = normalized((t.a + t.b) * 0.5);
            const Vec3 bc = normalized((t.b + t.c) * 0.5);
            const Vec3 ca = normalized((t.c + t.a) * 0.5);
            next.push_back({t.a, ab, ca});
            next.push_back({ab, t.b, bc});
            next.push_back({ca, bc, t.c});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    ParticleSet ps;
    const std::size_t n = faces.size();
    ps.position.reserve(n);
    ps.force_weight.resize(n);
    ps.dipole_weight.resize(n);
    ps.normal.reserve(n);
    SplitMix64 rng(cfg.seed);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& t = faces[i];
        const Vec3 centroid = normalized((t.a + t.b + t.c) / 3.0);
        ps.position.push_back(centroid);
        ps.normal.push_back(centroid);
        for (int c = 0; c < 3; ++c) ps.force_weight[i][c] = rng.symmetric();
        for (int c = 0; c < 3; ++c) ps.dipole_weight[i][c] = rng.symmetric();
    }
    return ps;
}

/// Generates the cube test geometry: positions i.i.d. uniform in [0,L)^3 with
/// L = (n/density)^(1/3), Stokeslet weights uniform in [-1,1]; stresslet
/// arrays are absent. Per particle the draw order is x1 x2 x3 f1 f2 f3.
inline ParticleSet cube_particles(const CubeCaseConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("cube_particles: n must be >= 1");
    if (!(cfg.density > 0.0)) throw std::invalid_argument("cube_particles: density must be > 0");
    const double L = cfg.side();
    ParticleSet ps;
    ps.position.resize(cfg.n);
    ps.force_weight.resize(cfg.n);
    SplitMix64 rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        for (int c = 0; c < 3; ++c) ps.position[i][c] = L * rng.uniform01();
        for (int c = 0; c < 3; ++c) ps.force_weight[i][c] = rng.symmetric();
    }
    return ps;
}

}  // namespace stokestree
