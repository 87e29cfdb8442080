#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stokestree/bench.hpp"
#include "stokestree/error_metric.hpp"
#include "stokestree/particle_io.hpp"
#include "support/test_helpers.hpp"

using namespace stokestree;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const char* name)
        : path(std::filesystem::temp_directory_path() / name) {}
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("relative error hand values") {
    const std::vector<Vec3> ref{{1, 0, 0}, {0, 1, 0}};
    CHECK(relative_error(ref, ref) == 0.0);

    const std::vector<Vec3> zero{{0, 0, 0}, {0, 0, 0}};
    CHECK(relative_error(ref, zero) == 1.0);

    const std::vector<Vec3> test{{1.1, 0, 0}, {0, 1, 0}};
    CHECK(relative_error(ref, test) ==
          Catch::Approx(0.1 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("relative error is scale invariant") {
    SplitMix64 rng(8);
    std::vector<Vec3> ref, test;
    for (int i = 0; i < 50; ++i) {
        ref.push_back(testutil::random_box_point(rng, -1, 1));
        test.push_back(testutil::random_box_point(rng, -1, 1));
    }
    const double e = relative_error(ref, test);
    std::vector<Vec3> ref_s = ref, test_s = test;
    for (auto& v : ref_s) v *= 37.5;
    for (auto& v : test_s) v *= 37.5;
    CHECK(testutil::rel_diff(relative_error(ref_s, test_s), e) < 1e-13);
}

TEST_CASE("relative error input guards") {
    const std::vector<Vec3> a{{1, 0, 0}};
    const std::vector<Vec3> b{{1, 0, 0}, {2, 0, 0}};
    CHECK_THROWS_AS(relative_error(a, b), std::invalid_argument);
    CHECK_THROWS_AS(relative_error(std::vector<Vec3>{}, std::vector<Vec3>{}),
                    std::invalid_argument);
    const std::vector<Vec3> zero{{0, 0, 0}};
    CHECK_THROWS_AS(relative_error(zero, a), std::domain_error);
}

TEST_CASE("particle file round trip is bit exact") {
    const ParticleSet ps = testutil::random_particles(64, 1234, true);
    TempFile f("stokestree_io_roundtrip.txt");
    write_particles(f.path, ps, KernelSelection::both());
    const LoadedParticles back = read_particles(f.path);
    CHECK(back.selection == KernelSelection::both());
    REQUIRE(back.particles.size() == ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(back.particles.position[i] == ps.position[i]);
        CHECK(back.particles.force_weight[i] == ps.force_weight[i]);
        CHECK(back.particles.dipole_weight[i] == ps.dipole_weight[i]);
        CHECK(back.particles.normal[i] == ps.normal[i]);
    }
}

TEST_CASE("stokeslet-only header disables stresslets") {
    const ParticleSet ps = testutil::random_particles(8, 5, false);
    TempFile f("stokestree_io_stokonly.txt");
    write_particles(f.path, ps, KernelSelection::stokeslet_only());
    {
        std::ifstream in(f.path);
        std::string header;
        std::getline(in, header);
        CHECK(header == "x f");
    }
    const LoadedParticles back = read_particles(f.path);
    CHECK(back.selection == KernelSelection::stokeslet_only());
    CHECK(back.particles.dipole_weight.empty());
    CHECK(back.particles.normal.empty());
}

TEST_CASE("malformed particle rows report the line") {
    TempFile f("stokestree_io_bad.txt");
    {
        std::ofstream out(f.path);
        out << "x f\n";
        out << "0 0 0 1 1 1\n";
        out << "1 2 3 4 5\n";  // five fields
    }
    try {
        read_particles(f.path);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(read_particles("/nonexistent/stokestree.txt"), std::runtime_error);
}

TEST_CASE("bad headers are rejected") {
    TempFile f("stokestree_io_badheader.txt");
    {
        std::ofstream out(f.path);
        out << "x h\n";  // h without nu
        out << "0 0 0 1 1 1\n";
    }
    CHECK_THROWS_AS(read_particles(f.path), std::runtime_error);
}

TEST_CASE("bench run on a small cube") {
    RunConfig cfg;
    cfg.mode = RunMode::both;
    cfg.testcase = TestCase::cube;
    cfg.cube = {10000, 2500.0, 31};
    cfg.params.order = 6;
    cfg.params.theta = 0.5;
    const RunResult res = run(cfg);
    REQUIRE(res.report.rows.size() == 1);
    const BenchRow& row = res.report.rows[0];
    CHECK(row.n == 10000);
    REQUIRE(row.error.has_value());
    CHECK(*row.error < 1e-2);
    CHECK(*row.error >= 0.0);
    REQUIRE(row.speedup.has_value());
    CHECK(*row.speedup > 0.0);
    CHECK(*row.time_direct_s > 0.0);
    CHECK(*row.time_tree_s > 0.0);
    CHECK(row.farfield_evals > 0);
}

TEST_CASE("bench direct mode with one particle") {
    RunConfig cfg;
    cfg.mode = RunMode::direct;
    cfg.testcase = TestCase::cube;
    cfg.cube = {1, 2500.0, 7};
    const RunResult res = run(cfg);
    CHECK(res.direct.size() == 1);
    CHECK(res.direct[0] == Vec3{0, 0, 0});
    CHECK_FALSE(res.report.rows[0].error.has_value());
    CHECK_FALSE(res.report.rows[0].time_tree_s.has_value());
}

TEST_CASE("csv output parses back into an equal report") {
    RunConfig cfg;
    cfg.mode = RunMode::both;
    cfg.testcase = TestCase::cube;
    cfg.cube = {2000, 2500.0, 13};
    cfg.params.order = 4;
    const RunResult res = run(cfg);

    std::stringstream s;
    write_csv(s, res.report);
    const BenchReport parsed = read_csv(s);
    CHECK(parsed == res.report);

    std::stringstream s2;
    write_csv(s2, parsed);
    CHECK(s.str() == s2.str());
}

TEST_CASE("csv rejects malformed input") {
    std::stringstream bad1("not,a,header\n");
    CHECK_THROWS_AS(read_csv(bad1), std::runtime_error);
    std::stringstream bad2(std::string(kCsvHeader) + "\n1,2,3\n");
    CHECK_THROWS_AS(read_csv(bad2), std::runtime_error);
}

TEST_CASE("file test case round trips through the harness") {
    const ParticleSet ps = testutil::random_particles(300, 88, true);
    TempFile f("stokestree_harness_file.txt");
    write_particles(f.path, ps, KernelSelection::both());

    RunConfig cfg;
    cfg.mode = RunMode::both;
    cfg.testcase = TestCase::file;
    cfg.input_path = f.path;
    cfg.params.order = 8;
    cfg.params.theta = 0.3;
    cfg.params.leaf_capacity = 32;
    const RunResult res = run(cfg);
    CHECK(res.selection == KernelSelection::both());
    CHECK(res.report.rows[0].n == 300);
    CHECK(*res.report.rows[0].error < 1e-4);
}

TEST_CASE("dump-particles writes a loadable copy") {
    RunConfig cfg;
    cfg.mode = RunMode::tree;
    cfg.testcase = TestCase::cube;
    cfg.cube = {500, 2500.0, 3};
    TempFile f("stokestree_dump.txt");
    cfg.dump_particles_path = f.path;
    run(cfg);
    const LoadedParticles back = read_particles(f.path);
    CHECK(back.particles.size() == 500);
    CHECK(back.selection == KernelSelection::stokeslet_only());
    const ParticleSet regen = cube_particles(cfg.cube);
    for (std::size_t i = 0; i < 500; ++i) CHECK(back.particles.position[i] == regen.position[i]);
}

TEST_CASE("direct sampling extrapolates the timing and samples the error") {
    RunConfig cfg;
    cfg.mode = RunMode::both;
    cfg.testcase = TestCase::cube;
    cfg.cube = {4000, 2500.0, 21};
    cfg.direct_sample = 256;
    const RunResult res = run(cfg);
    CHECK(res.direct_targets.size() == 256);
    CHECK(*res.report.rows[0].error < 1e-2);
    CHECK(*res.report.rows[0].time_direct_s > 0.0);
}
