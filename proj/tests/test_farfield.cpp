#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "stokestree/cluster_tree.hpp"
#include "stokestree/farfield.hpp"
#include "stokestree/kernels.hpp"
#include "stokestree/moments.hpp"
#include "stokestree/taylor_coeffs.hpp"
#include "support/reference_farfield.hpp"
#include "support/test_helpers.hpp"

using namespace stokestree;
using reftest::direct_at;
using reftest::make_cluster;
using reftest::SingleCluster;
using reftest::stokeslet_farfield_uncontracted;
using reftest::stresslet_farfield_uncontracted;
using testutil::rel_diff;

TEST_CASE("single-particle cluster is reproduced exactly") {
    SplitMix64 rng(3);
    ParticleSet ps;
    ps.position = {testutil::random_box_point(rng, -0.5, 0.5)};
    ps.force_weight = {{0.3, -1.1, 0.7}};
    ps.dipole_weight = {{-0.2, 0.9, 0.4}};
    ps.normal = {testutil::random_unit(rng)};
    const SingleCluster sc = make_cluster(ps);
    REQUIRE(sc.radius == 0.0);
    REQUIRE(sc.center == ps.position[0]);

    const Vec3 x = ps.position[0] + Vec3{1.3, -0.4, 0.8};
    for (int p : {0, 3}) {
        const MultiIndexTable table(p + 2);
        const ClusterMoments moments =
            compute_moments(sc.tree, p, KernelSelection::both(), table);
        FarFieldWorkspace ws;
        ws.resize_for(table);
        const Vec3 dx = x - sc.center;
        coulomb_coeffs_into(dx, table, ws.b);

        const Vec3 u_sto = stokeslet_farfield(dx, moments.stokeslet_view(0), p, table, ws);
        const Vec3 u_str = stresslet_farfield(dx, moments.stresslet_view(0), p, table, ws);
        CHECK(rel_diff(u_sto, direct_at(ps, KernelSelection::stokeslet_only(), x)) < 1e-14);
        CHECK(rel_diff(u_str, direct_at(ps, KernelSelection::stresslet_only(), x)) < 1e-14);
    }
}

TEST_CASE("order zero equals the monopole at the cluster center") {
    const ParticleSet ps = testutil::random_particles(40, 12, false);
    const SingleCluster sc = make_cluster(ps);
    const MultiIndexTable table(1);
    const ClusterMoments moments =
        compute_moments(sc.tree, 0, KernelSelection::stokeslet_only(), table);
    FarFieldWorkspace ws;
    ws.resize_for(table);

    const Vec3 x = sc.center + Vec3{3.0, 1.0, -2.0};
    const Vec3 dx = x - sc.center;
    coulomb_coeffs_into(dx, table, ws.b);
    const Vec3 u = stokeslet_farfield(dx, moments.stokeslet_view(0), 0, table, ws);

    Vec3 fsum;
    for (const Vec3& f : ps.force_weight) fsum += f;
    const Mat3 s = stokeslet(x, sc.center);
    Vec3 expected;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) expected[i] += s[i][j] * fsum[j];
    CHECK(rel_diff(u, expected) < 1e-13);
}

TEST_CASE("contracted far field equals the uncontracted coefficient sums") {
    SplitMix64 rng(2718);
    for (int pair = 0; pair < 12; ++pair) {
        ParticleSet ps = testutil::random_particles(20 + pair * 5, 900 + pair, true);
        const SingleCluster sc = make_cluster(ps);
        const Vec3 dir = testutil::random_unit(rng);
        const double R = sc.radius * (1.5 + 2.5 * rng.uniform01());
        const Vec3 x = sc.center + dir * R;
        for (int p : {0, 2, 5}) {
            const MultiIndexTable table(p + 2);
            const ClusterMoments moments =
                compute_moments(sc.tree, p, KernelSelection::both(), table);
            const Vec3 dx = x - sc.center;
            const CoulombCoeffs c = coulomb_coeffs(dx, table);
            FarFieldWorkspace ws;
            ws.b = c.b;

            const Vec3 sto = stokeslet_farfield(dx, moments.stokeslet_view(0), p, table, ws);
            const Vec3 sto_ref =
                stokeslet_farfield_uncontracted(table, c, moments.stokeslet_view(0), p);
            CHECK(rel_diff(sto, sto_ref) < 1e-12);

            const Vec3 str = stresslet_farfield(dx, moments.stresslet_view(0), p, table, ws);
            const Vec3 str_ref =
                stresslet_farfield_uncontracted(table, c, moments.stresslet_view(0), p);
            CHECK(rel_diff(str, str_ref) < 1e-12);
        }
    }
}

TEST_CASE("high order far field matches the direct sum at small r/R") {
    const ParticleSet ps = testutil::random_particles(50, 314, true);
    const SingleCluster sc = make_cluster(ps);
    const int p = 10;
    const MultiIndexTable table(p + 2);
    const ClusterMoments moments = compute_moments(sc.tree, p, KernelSelection::both(), table);
    FarFieldWorkspace ws;
    ws.resize_for(table);

    SplitMix64 rng(315);
    for (int rep = 0; rep < 5; ++rep) {
        const Vec3 dir = testutil::random_unit(rng);
        const Vec3 x = sc.center + dir * (sc.radius / 0.2);  // r/R = 0.2
        const Vec3 dx = x - sc.center;
        coulomb_coeffs_into(dx, table, ws.b);
        const Vec3 u = stokeslet_farfield(dx, moments.stokeslet_view(0), p, table, ws) +
                       stresslet_farfield(dx, moments.stresslet_view(0), p, table, ws);
        CHECK(rel_diff(u, direct_at(ps, KernelSelection::both(), x)) < 1e-8);
    }
}

TEST_CASE("zero dipole weights give a zero stresslet far field") {
    ParticleSet ps = testutil::random_particles(30, 217, true);
    for (Vec3& h : ps.dipole_weight) h = {0, 0, 0};
    const SingleCluster sc = make_cluster(ps);
    for (int p : {0, 4}) {
        const MultiIndexTable table(p + 2);
        const ClusterMoments moments =
            compute_moments(sc.tree, p, KernelSelection::both(), table);
        FarFieldWorkspace ws;
        ws.resize_for(table);
        const Vec3 dx{2.0, -1.0, 1.5};
        coulomb_coeffs_into(dx, table, ws.b);
        const Vec3 u =
            stresslet_farfield(dx, moments.stresslet_view(0), p, table, ws);
        CHECK(u == Vec3{0, 0, 0});
    }
}

TEST_CASE("far field error decays geometrically in the order") {
    const ParticleSet ps = testutil::random_particles(60, 555, true);
    const SingleCluster sc = make_cluster(ps);
    const Vec3 dir = normalized(Vec3{1.0, 0.7, -0.4});
    const Vec3 x = sc.center + dir * (sc.radius / 0.5);  // r/R = 0.5
    const Vec3 exact_sto = direct_at(ps, KernelSelection::stokeslet_only(), x);
    const Vec3 exact_str = direct_at(ps, KernelSelection::stresslet_only(), x);

    double err_sto[6], err_str[6];
    for (int idx = 0; idx < 6; ++idx) {
        const int p = 2 * idx;
        const MultiIndexTable table(p + 2);
        const ClusterMoments moments =
            compute_moments(sc.tree, p, KernelSelection::both(), table);
        FarFieldWorkspace ws;
        ws.resize_for(table);
        const Vec3 dx = x - sc.center;
        coulomb_coeffs_into(dx, table, ws.b);
        err_sto[idx] =
            norm(stokeslet_farfield(dx, moments.stokeslet_view(0), p, table, ws) - exact_sto);
        err_str[idx] =
            norm(stresslet_farfield(dx, moments.stresslet_view(0), p, table, ws) - exact_str);
    }
    for (int idx = 0; idx + 1 < 6; ++idx) {
        CHECK(err_sto[idx] / err_sto[idx + 1] >= 2.0);
        CHECK(err_str[idx] / err_str[idx + 1] >= 2.0);
    }
}

TEST_CASE("far field order guards") {
    const ParticleSet ps = testutil::random_particles(10, 1, true);
    const SingleCluster sc = make_cluster(ps);
    const MultiIndexTable table(4);
    const ClusterMoments moments = compute_moments(sc.tree, 2, KernelSelection::both(), table);
    FarFieldWorkspace ws;
    ws.resize_for(table);
    const Vec3 dx{3, 0, 0};
    coulomb_coeffs_into(dx, table, ws.b);
    // moments at order 2 presented as order 3
    CHECK_THROWS_AS(stokeslet_farfield(dx, moments.stokeslet_view(0), 3, table, ws),
                    std::invalid_argument);
    CHECK_THROWS_AS(stresslet_farfield(dx, moments.stresslet_view(0), 3, table, ws),
                    std::invalid_argument);
    // table too shallow for the stresslet at order 3 even with fitting moments
    const ClusterMoments m3 = compute_moments(sc.tree, 3, KernelSelection::both(), table);
    CHECK_THROWS_AS(stresslet_farfield(dx, m3.stresslet_view(0), 3, table, ws),
                    std::invalid_argument);
}
