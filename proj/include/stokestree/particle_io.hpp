#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stokestree/particles.hpp"

namespace stokestree {

struct LoadedParticles {
    ParticleSet particles;
    KernelSelection selection;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Text particle format: one header line naming the present blocks ("x",
/// optionally "f" and/or "h nu"), then one row per particle with three
/// decimal fields per block, written with 17 significant digits so a
/// write/read round trip is bit-exact.
inline void write_particles(const std::filesystem::path& path, const ParticleSet& ps,
                            KernelSelection sel) {
    validate(ps, sel);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_particles: cannot open " + path.string());
    std::string header = "x";
    if (sel.stokeslet_enabled) header += " f";
    if (sel.stresslet_enabled) header += " h nu";
    out << header << '\n';
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::string row = detail::format_double(ps.position[i][0]) + ' ' +
                          detail::format_double(ps.position[i][1]) + ' ' +
                          detail::format_double(ps.position[i][2]);
        auto append = [&row](const Vec3& v) {
            for (int c = 0; c < 3; ++c) row += ' ' + detail::format_double(v[c]);
        };
        if (sel.stokeslet_enabled) append(ps.force_weight[i]);
        if (sel.stresslet_enabled) {
            append(ps.dipole_weight[i]);
            append(ps.normal[i]);
        }
        out << row << '\n';
    }
    if (!out) throw std::runtime_error("write_particles: write failed for " + path.string());
}

inline LoadedParticles read_particles(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_particles: cannot open " + path.string());

    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("read_particles: missing header line in " + path.string());
    std::istringstream hs(header);
    std::vector<std::string> blocks;
    for (std::string tok; hs >> tok;) blocks.push_back(tok);

    bool has_f = false, has_h = false, has_nu = false;
    if (blocks.empty() || blocks[0] != "x")
        throw std::runtime_error("read_particles: header must start with 'x' (line 1)");
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        if (blocks[i] == "f" && !has_f)
            has_f = true;
        else if (blocks[i] == "h" && !has_h)
            has_h = true;
        else if (blocks[i] == "nu" && !has_nu)
            has_nu = true;
        else
            throw std::runtime_error("read_particles: bad header block '" + blocks[i] +
                                     "' (line 1)");
    }
    if (has_h != has_nu)
        throw std::runtime_error("read_particles: blocks 'h' and 'nu' must appear together (line 1)");
    if (!has_f && !has_h)
        throw std::runtime_error("read_particles: header declares no weight blocks (line 1)");

    LoadedParticles loaded;
    loaded.selection = KernelSelection{has_f, has_h};
    const int fields = 3 * (1 + (has_f ? 1 : 0) + (has_h ? 2 : 0));

    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        double v[12];
        for (int c = 0; c < fields; ++c) {
            if (!(ls >> v[c]))
                throw std::runtime_error("read_particles: expected " + std::to_string(fields) +
                                         " fields (line " + std::to_string(lineno) + ")");
        }
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error("read_particles: trailing fields (line " +
                                     std::to_string(lineno) + ")");
        int c = 0;
        loaded.particles.position.push_back({v[c], v[c + 1], v[c + 2]});
        c += 3;
        if (has_f) {
            loaded.particles.force_weight.push_back({v[c], v[c + 1], v[c + 2]});
            c += 3;
        }
        if (has_h) {
            loaded.particles.dipole_weight.push_back({v[c], v[c + 1], v[c + 2]});
            c += 3;
            loaded.particles.normal.push_back({v[c], v[c + 1], v[c + 2]});
        }
    }
    if (loaded.particles.size() == 0)
        throw std::runtime_error("read_particles: no particle rows in " + path.string());
    return loaded;
}

}  // namespace stokestree
