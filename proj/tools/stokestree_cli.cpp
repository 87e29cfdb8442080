// Benchmark CLI: computes Stokeslet/stresslet velocity sums by treecode
// and/or direct summation and reports timings, interaction counts and the
// relative error between the two.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "stokestree/stokestree.hpp"

namespace st = stokestree;

int main(int argc, char** argv) {
    CLI::App app{
        "stokestree - treecode summation of Stokeslet/stresslet velocities\n"
        "Modes: tree (treecode only), direct (reference sum only), both (adds the\n"
        "relative error E and the speedup of the treecode over the direct sum)."};

    st::RunConfig cfg;
    std::string testcase = "cube";
    std::string mode = "both";
    std::string shrink = "auto";
    std::string kernels = "auto";
    std::string format = "human";
    std::string out_path, input_path, dump_path;
    long long cube_n = -1;
    int levels = -1;
    uint64_t seed = 0;

    app.add_option("--testcase", testcase, "Particle source: sphere, cube, file")
        ->check(CLI::IsMember({"sphere", "cube", "file"}))
        ->capture_default_str();
    app.add_option("--n", cube_n, "Particle count (cube test case)");
    app.add_option("--levels", levels, "Refinement levels (sphere test case, N = 20*4^L)");
    app.add_option("--seed", seed, "Seed for generated weights/positions")->capture_default_str();
    app.add_option("--density", cfg.cube.density, "Cube number density N/L^3")
        ->capture_default_str();
    app.add_option("--input", input_path, "Particle file (file test case)");
    app.add_option("--order", cfg.params.order, "Taylor approximation order p")
        ->capture_default_str();
    app.add_option("--theta", cfg.params.theta, "MAC parameter, in (0,1)")->capture_default_str();
    app.add_option("--n0", cfg.params.leaf_capacity, "Leaf capacity N0")->capture_default_str();
    app.add_option("--shrink", shrink, "Shrink cluster boxes to their particles: auto, on, off")
        ->check(CLI::IsMember({"auto", "on", "off"}))
        ->capture_default_str();
    app.add_option("--mode", mode, "tree, direct, both")
        ->check(CLI::IsMember({"tree", "direct", "both"}))
        ->capture_default_str();
    app.add_option("--workers", cfg.params.workers, "Worker threads for the target loop")
        ->capture_default_str();
    app.add_option("--kernels", kernels, "stokeslet, stresslet, both, auto")
        ->check(CLI::IsMember({"stokeslet", "stresslet", "both", "auto"}))
        ->capture_default_str();
    app.add_option("--direct-sample", cfg.direct_sample,
                   "Time the direct sum on this many evenly spaced targets and extrapolate "
                   "(0 = all targets; E is then computed over the sample)")
        ->capture_default_str();
    app.add_option("--out", out_path, "Write the report here instead of stdout");
    app.add_option("--format", format, "Report format: csv, human")
        ->check(CLI::IsMember({"csv", "human"}))
        ->capture_default_str();
    app.add_option("--dump-particles", dump_path, "Also write the particle set to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (testcase == "sphere") {
            cfg.testcase = st::TestCase::sphere;
            if (levels < 0) throw std::invalid_argument("sphere test case needs --levels");
            cfg.sphere.levels = levels;
            cfg.sphere.seed = seed;
        } else if (testcase == "cube") {
            cfg.testcase = st::TestCase::cube;
            if (cube_n < 1) throw std::invalid_argument("cube test case needs --n");
            cfg.cube.n = static_cast<std::size_t>(cube_n);
            cfg.cube.seed = seed;
        } else {
            cfg.testcase = st::TestCase::file;
            cfg.input_path = input_path;
        }

        cfg.mode = mode == "tree" ? st::RunMode::tree
                 : mode == "direct" ? st::RunMode::direct
                                    : st::RunMode::both;
        if (shrink != "auto") cfg.shrink_override = (shrink == "on");
        if (kernels == "stokeslet") cfg.kernels_override = st::KernelSelection::stokeslet_only();
        if (kernels == "stresslet") cfg.kernels_override = st::KernelSelection::stresslet_only();
        if (kernels == "both") cfg.kernels_override = st::KernelSelection::both();
        cfg.format = format == "csv" ? st::ReportFormat::csv : st::ReportFormat::human;
        cfg.output_path = out_path;
        cfg.dump_particles_path = dump_path;

        const st::RunResult res = st::run(cfg);

        std::ofstream file_out;
        std::ostream* out = &std::cout;
        if (!cfg.output_path.empty()) {
            file_out.open(cfg.output_path);
            if (!file_out) throw std::runtime_error("cannot open " + cfg.output_path.string());
            out = &file_out;
        }
        if (cfg.format == st::ReportFormat::csv)
            st::write_csv(*out, res.report);
        else
            st::write_human(*out, res);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
