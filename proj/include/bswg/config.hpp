// config.hpp — Run configuration for the command-line tool: JSON parsing with
// strict key checking, figure presets, and grid construction.

#pragma once

#include "bswg/errors.hpp"
#include "bswg/model.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace bswg {

using json = nlohmann::json;

struct RunConfig {
    // model
    double omega0 = 0.0;
    double xi = 1.0;
    int n_cavities = 1702;
    int n_k = 65536;
    std::vector<double> deltas;
    double g = 0.02;
    std::vector<int> positions;

    // evolve
    std::string initial = "0";   // emitter index, "+", "-", or "symmetric3"
    double dt = 0.5;
    double t_max = 400.0;
    bool field = false;
    int field_stride = 4;
    int field_lo = -1;
    int field_hi = -1;
    std::string method = "auto";   // auto | dense | chebyshev
    bool asymptote = false;

    // spectrum
    double e_min = -2.6;
    double e_max = 2.6;
    int e_points = 1601;

    // scan
    int x = 31;
    double delta_min = -1.95;
    double delta_max = 1.95;
    int delta_points = 64;
    double g_min = 1e-4;
    double g_max = 0.5;
    int g_points = 64;
    bool g_log = true;

    // run control
    int workers = 1;
    std::string out_dir;
    std::string preset;
    std::string label;
    std::string traj_path;   // existing trajectory CSV for the asymptote command

    LatticeParams lattice() const { return {omega0, xi, n_cavities, n_k}; }

    EmitterArray emitters() const {
        EmitterArray em;
        em.deltas = deltas;
        em.g = g;
        em.positions = positions;
        return em;
    }

    std::string name(const std::string& command) const {
        if (!label.empty()) return label;
        if (!preset.empty()) return preset;
        return command;
    }
};

// ---------------------------------- JSON ------------------------------------

inline void apply_config_json(RunConfig& cfg, const json& j) {
    static const std::map<std::string, int> keys = {
        {"omega0", 0},  {"xi", 0},          {"n_cavities", 0},  {"n_k", 0},      {"deltas", 0},
        {"g", 0},       {"positions", 0},   {"initial", 0},     {"dt", 0},       {"t_max", 0},
        {"field", 0},   {"field_stride", 0},{"field_lo", 0},    {"field_hi", 0}, {"method", 0},
        {"asymptote", 0},{"e_min", 0},      {"e_max", 0},       {"e_points", 0}, {"x", 0},
        {"delta_min", 0},{"delta_max", 0},  {"delta_points", 0},{"g_min", 0},    {"g_max", 0},
        {"g_points", 0}, {"g_log", 0},      {"workers", 0},     {"out_dir", 0},  {"preset", 0},
        {"label", 0},    {"traj_path", 0}};
    for (const auto& [key, value] : j.items()) {
        if (!keys.count(key)) throw ConfigError("unknown config key: '" + key + "'");
        try {
            if (key == "omega0") cfg.omega0 = value.get<double>();
            else if (key == "xi") cfg.xi = value.get<double>();
            else if (key == "n_cavities") cfg.n_cavities = value.get<int>();
            else if (key == "n_k") cfg.n_k = value.get<int>();
            else if (key == "deltas") cfg.deltas = value.get<std::vector<double>>();
            else if (key == "g") cfg.g = value.get<double>();
            else if (key == "positions") cfg.positions = value.get<std::vector<int>>();
            else if (key == "initial") cfg.initial = value.get<std::string>();
            else if (key == "dt") cfg.dt = value.get<double>();
            else if (key == "t_max") cfg.t_max = value.get<double>();
            else if (key == "field") cfg.field = value.get<bool>();
            else if (key == "field_stride") cfg.field_stride = value.get<int>();
            else if (key == "field_lo") cfg.field_lo = value.get<int>();
            else if (key == "field_hi") cfg.field_hi = value.get<int>();
            else if (key == "method") cfg.method = value.get<std::string>();
            else if (key == "asymptote") cfg.asymptote = value.get<bool>();
            else if (key == "e_min") cfg.e_min = value.get<double>();
            else if (key == "e_max") cfg.e_max = value.get<double>();
            else if (key == "e_points") cfg.e_points = value.get<int>();
            else if (key == "x") cfg.x = value.get<int>();
            else if (key == "delta_min") cfg.delta_min = value.get<double>();
            else if (key == "delta_max") cfg.delta_max = value.get<double>();
            else if (key == "delta_points") cfg.delta_points = value.get<int>();
            else if (key == "g_min") cfg.g_min = value.get<double>();
            else if (key == "g_max") cfg.g_max = value.get<double>();
            else if (key == "g_points") cfg.g_points = value.get<int>();
            else if (key == "g_log") cfg.g_log = value.get<bool>();
            else if (key == "workers") cfg.workers = value.get<int>();
            else if (key == "out_dir") cfg.out_dir = value.get<std::string>();
            else if (key == "preset") cfg.preset = value.get<std::string>();
            else if (key == "label") cfg.label = value.get<std::string>();
            else if (key == "traj_path") cfg.traj_path = value.get<std::string>();
        } catch (const json::exception& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
}

inline json config_to_json(const RunConfig& c) {
    json j;
    j["omega0"] = c.omega0;
    j["xi"] = c.xi;
    j["n_cavities"] = c.n_cavities;
    j["n_k"] = c.n_k;
    j["deltas"] = c.deltas;
    j["g"] = c.g;
    j["positions"] = c.positions;
    j["initial"] = c.initial;
    j["dt"] = c.dt;
    j["t_max"] = c.t_max;
    j["field"] = c.field;
    j["field_stride"] = c.field_stride;
    j["field_lo"] = c.field_lo;
    j["field_hi"] = c.field_hi;
    j["method"] = c.method;
    j["asymptote"] = c.asymptote;
    j["e_min"] = c.e_min;
    j["e_max"] = c.e_max;
    j["e_points"] = c.e_points;
    j["x"] = c.x;
    j["delta_min"] = c.delta_min;
    j["delta_max"] = c.delta_max;
    j["delta_points"] = c.delta_points;
    j["g_min"] = c.g_min;
    j["g_max"] = c.g_max;
    j["g_points"] = c.g_points;
    j["g_log"] = c.g_log;
    j["workers"] = c.workers;
    j["out_dir"] = c.out_dir;
    j["preset"] = c.preset;
    j["label"] = c.label;
    j["traj_path"] = c.traj_path;
    return j;
}

// Reads a config file. A run manifest is accepted too: its embedded resolved
// config is used, which re-executes the original run.
inline void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    if (j.contains("config") && j.contains("tool")) j = j["config"];   // manifest
    apply_config_json(cfg, j);
}

// --------------------------------- Presets ----------------------------------

// Emitter energy used throughout the two-emitter runs: in band, one BIC
// wavevector away from the edge, k(Δ)·x = 30π at x = 31.
inline double preset_delta_x31() { return -2.0 * std::cos(30.0 * pi / 31.0); }

inline RunConfig preset_config(const std::string& name) {
    RunConfig c;
    c.preset = name;
    const double d31 = preset_delta_x31();

    auto two_emitter = [&](double g) {
        c.n_cavities = 1702;
        c.deltas = {d31, d31};
        c.positions = {835, 866};   // centered, mirror-symmetric, separation 31
        c.g = g;
        c.x = 31;
    };

    if (name == "fig3a" || name == "fig3d" || name == "fig3g") {
        two_emitter(name == "fig3a" ? 0.02 : name == "fig3d" ? 0.05 : 0.1);
        return c;
    }
    if (name == "fig3b" || name == "fig3e" || name == "fig3h") {
        two_emitter(name == "fig3b" ? 0.02 : name == "fig3e" ? 0.05 : 0.1);
        c.initial = "0";
        c.dt = 0.5;
        c.t_max = 400.0;
        c.asymptote = true;
        return c;
    }
    if (name == "fig3c" || name == "fig3f" || name == "fig3i") {
        two_emitter(name == "fig3c" ? 0.02 : name == "fig3f" ? 0.05 : 0.1);
        c.initial = "0";
        c.dt = 0.5;
        c.t_max = 400.0;
        c.field = true;
        c.field_lo = 700;
        c.field_hi = 1001;
        c.field_stride = 4;
        return c;
    }
    if (name == "fig4") {
        c.n_cavities = 10083;   // odd: center cavity exists
        c.deltas = {d31, d31, d31};
        c.positions = {5025, 5041, 5057};
        c.g = 0.02;
        c.initial = "symmetric3";
        c.dt = 0.5;
        c.t_max = 2500.0;
        c.field = true;
        c.field_lo = 4891;
        c.field_hi = 5191;
        c.field_stride = 8;
        return c;
    }
    if (name == "fig2a" || name == "fig2b" || name == "fig2c" || name == "fig2d") {
        c.x = name == "fig2a" ? 5 : name == "fig2b" ? 11 : name == "fig2c" ? 21 : 31;
        c.deltas.clear();
        c.positions.clear();
        return c;
    }
    throw ConfigError("unknown preset: '" + name + "'");
}

// ----------------------------------- Grids ----------------------------------

inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw ConfigError("grid needs at least 2 points");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("logspace needs 0 < lo < hi");
    if (n < 2) throw ConfigError("grid needs at least 2 points");
    std::vector<double> v(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) v[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return v;
}

}  // namespace bswg
