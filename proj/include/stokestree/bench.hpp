#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stokestree/engine.hpp"
#include "stokestree/error_metric.hpp"
#include "stokestree/kernels.hpp"
#include "stokestree/particle_io.hpp"
#include "stokestree/testcases.hpp"

namespace stokestree {

enum class RunMode { tree, direct, both };
enum class TestCase { sphere, cube, file };
enum class ReportFormat { csv, human };

struct RunConfig {
    RunMode mode = RunMode::both;
    TestCase testcase = TestCase::cube;
    TreecodeParams params;                  // params.shrink is overridden below unless set
    std::optional<bool> shrink_override;    // unset = auto: sphere on, cube/file off
    std::optional<KernelSelection> kernels_override;  // unset = auto per test case
    SphereCaseConfig sphere;
    CubeCaseConfig cube;
    std::filesystem::path input_path;   // testcase == file
    std::filesystem::path output_path;  // empty = stdout
    std::filesystem::path dump_particles_path;
    ReportFormat format = ReportFormat::human;
    std::size_t direct_sample = 0;  // 0 = direct sum over every target

    void validate() const {
        params.validate();
        switch (testcase) {
            case TestCase::sphere:
                if (sphere.levels < 0)
                    throw std::invalid_argument("config: sphere levels must be >= 0");
                break;
            case TestCase::cube:
                if (cube.n < 1) throw std::invalid_argument("config: cube particle count not set");
                if (!(cube.density > 0.0))
                    throw std::invalid_argument("config: cube density must be > 0");
                break;
            case TestCase::file:
                if (input_path.empty())
                    throw std::invalid_argument("config: file test case needs an input path");
                break;
        }
    }
};

/// One benchmark row; exactly the columns of the CSV contract.
struct BenchRow {
    std::size_t n = 0;
    int p = 0;
    double theta = 0.0;
    int n0 = 0;
    int workers = 0;
    std::optional<double> time_direct_s;  // mode direct/both
    std::optional<double> time_tree_s;    // mode tree/both
    std::optional<double> speedup;        // mode both
    std::optional<double> error;          // mode both
    uint64_t farfield_evals = 0;
    uint64_t direct_evals = 0;

    friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Everything a run produced; the report row is the persisted part.
struct RunResult {
    BenchReport report;
    std::optional<VelocityResult> tree;
    std::vector<Vec3> direct;               // velocities at `direct_targets`
    std::vector<std::size_t> direct_targets;
    KernelSelection selection;
    std::size_t n = 0;
};

inline constexpr const char* kCsvHeader =
    "N,p,theta,n0,workers,time_direct_s,time_tree_s,speedup,error_E,farfield_evals,direct_evals";

inline void write_csv(std::ostream& out, const BenchReport& report) {
    auto opt = [](const std::optional<double>& v) {
        return v ? detail::format_double(*v) : std::string();
    };
    out << kCsvHeader << '\n';
    for (const BenchRow& r : report.rows) {
        out << r.n << ',' << r.p << ',' << detail::format_double(r.theta) << ',' << r.n0 << ','
            << r.workers << ',' << opt(r.time_direct_s) << ',' << opt(r.time_tree_s) << ','
            << opt(r.speedup) << ',' << opt(r.error) << ',' << r.farfield_evals << ','
            << r.direct_evals << '\n';
    }
}

inline BenchReport read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty input");
    if (line != kCsvHeader) throw std::runtime_error("read_csv: unexpected header (line 1)");
    BenchReport report;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string tok;
        std::istringstream ls(line);
        while (std::getline(ls, tok, ',')) fields.push_back(tok);
        // a trailing empty field is not produced by the writer; the last two
        // columns are always populated counters
        if (fields.size() != 11)
            throw std::runtime_error("read_csv: expected 11 fields (line " +
                                     std::to_string(lineno) + ")");
        auto opt = [&](const std::string& s) -> std::optional<double> {
            if (s.empty()) return std::nullopt;
            return std::stod(s);
        };
        try {
            BenchRow r;
            r.n = std::stoull(fields[0]);
            r.p = std::stoi(fields[1]);
            r.theta = std::stod(fields[2]);
            r.n0 = std::stoi(fields[3]);
            r.workers = std::stoi(fields[4]);
            r.time_direct_s = opt(fields[5]);
            r.time_tree_s = opt(fields[6]);
            r.speedup = opt(fields[7]);
            r.error = opt(fields[8]);
            r.farfield_evals = std::stoull(fields[9]);
            r.direct_evals = std::stoull(fields[10]);
            report.rows.push_back(r);
        } catch (const std::logic_error&) {
            throw std::runtime_error("read_csv: malformed numeric field (line " +
                                     std::to_string(lineno) + ")");
        }
    }
    return report;
}

inline void write_human(std::ostream& out, const RunResult& res) {
    const BenchRow& r = res.report.rows.at(0);
    out << "N          " << r.n << '\n'
        << "p          " << r.p << '\n'
        << "theta      " << r.theta << '\n'
        << "N0         " << r.n0 << '\n'
        << "workers    " << r.workers << '\n'
        << "kernels    " << (res.selection.stokeslet_enabled ? "stokeslet " : "")
        << (res.selection.stresslet_enabled ? "stresslet" : "") << '\n';
    if (r.time_direct_s) {
        out << "direct sum " << *r.time_direct_s << " s";
        if (res.direct_targets.size() != res.n)
            out << "  (extrapolated from " << res.direct_targets.size() << " sampled targets)";
        out << '\n';
    }
    if (res.tree) {
        out << "treecode   " << *r.time_tree_s << " s  (build " << res.tree->time_build_s
            << " s, moments " << res.tree->time_moments_s << " s, traverse "
            << res.tree->time_traverse_s << " s)\n"
            << "farfield   " << r.farfield_evals << " cluster interactions\n"
            << "direct     " << r.direct_evals << " pair interactions\n";
    }
    if (r.speedup) out << "speedup    " << *r.speedup << '\n';
    if (r.error) out << "error E    " << *r.error << '\n';
}

namespace detail {

inline std::pair<ParticleSet, KernelSelection> make_particles(const RunConfig& cfg) {
    switch (cfg.testcase) {
        case TestCase::sphere:
            return {sphere_particles(cfg.sphere), KernelSelection::both()};
        case TestCase::cube:
            return {cube_particles(cfg.cube), KernelSelection::stokeslet_only()};
        case TestCase::file: {
            LoadedParticles loaded = read_particles(cfg.input_path);
            return {std::move(loaded.particles), loaded.selection};
        }
    }
    throw std::logic_error("make_particles: unreachable");
}

}  // namespace detail

/// Generates or loads particles, executes the selected mode(s), times the
/// compute (generation and I/O excluded), and assembles the report row.
inline RunResult run(const RunConfig& cfg) {
    cfg.validate();

    RunResult res;
    auto [ps, sel] = detail::make_particles(cfg);
    if (cfg.kernels_override) {
        sel = *cfg.kernels_override;
        if (sel.stresslet_enabled && ps.dipole_weight.empty())
            throw std::invalid_argument(
                "config: stresslets requested but the particle source has no dipole data");
    }
    res.selection = sel;
    res.n = ps.size();

    TreecodeParams params = cfg.params;
    params.kernels = sel;
    params.shrink = cfg.shrink_override.value_or(cfg.testcase == TestCase::sphere);

    if (!cfg.dump_particles_path.empty()) write_particles(cfg.dump_particles_path, ps, sel);

    BenchRow row;
    row.n = ps.size();
    row.p = params.order;
    row.theta = params.theta;
    row.n0 = params.leaf_capacity;
    row.workers = params.workers;

    if (cfg.mode != RunMode::direct) {
        res.tree = parallel_velocity(ps, params);
        row.time_tree_s = res.tree->time_total_s;
        row.farfield_evals = res.tree->stats.farfield_evals;
        row.direct_evals = res.tree->stats.direct_pairs;
    }

    if (cfg.mode != RunMode::tree) {
        const std::size_t n = ps.size();
        res.direct_targets.clear();
        if (cfg.direct_sample == 0 || cfg.direct_sample >= n) {
            res.direct_targets.resize(n);
            for (std::size_t i = 0; i < n; ++i) res.direct_targets[i] = i;
        } else {
            const std::size_t stride = n / cfg.direct_sample;
            for (std::size_t i = 0; i < cfg.direct_sample; ++i)
                res.direct_targets.push_back(i * stride);
        }
        const auto t0 = std::chrono::steady_clock::now();
        res.direct = contracted_direct_velocity_at(ps, sel, res.direct_targets);
        const auto t1 = std::chrono::steady_clock::now();
        const double measured = std::chrono::duration<double>(t1 - t0).count();
        row.time_direct_s =
            measured * (static_cast<double>(n) / static_cast<double>(res.direct_targets.size()));
    }

    if (cfg.mode == RunMode::both) {
        std::vector<Vec3> tree_at_targets;
        tree_at_targets.reserve(res.direct_targets.size());
        for (std::size_t t : res.direct_targets) tree_at_targets.push_back(res.tree->velocity[t]);
        row.error = relative_error(res.direct, tree_at_targets);
        row.speedup = *row.time_direct_s / *row.time_tree_s;
    }

    res.report.rows.push_back(row);
    return res;
}

}  // namespace stokestree
