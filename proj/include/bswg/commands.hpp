// commands.hpp — Implementations of the CLI subcommands. Each command writes
// CSV artifacts plus a JSON manifest with the resolved configuration, so a
// manifest can be fed back as --config to reproduce a run bit-for-bit.

#pragma once

#include "bswg/analysis.hpp"
#include "bswg/bound_states.hpp"
#include "bswg/config.hpp"
#include "bswg/dynamics.hpp"
#include "bswg/io.hpp"
#include "bswg/version.hpp"

#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace bswg {

namespace fs = std::filesystem;

inline fs::path resolve_out_dir(const RunConfig& cfg) {
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    if (const char* env = std::getenv("BSWG_OUT_DIR"); env && *env) return env;
    return "out";
}

namespace detail {

inline EmitterArray spectrum_emitters(const RunConfig& cfg) {
    EmitterArray em = cfg.emitters();
    if (em.size() != 2) {
        const double d = cfg.deltas.empty() ? preset_delta_x31() : cfg.deltas.front();
        em.deltas = {d, d};
        em.positions = {0, cfg.x};
    }
    return em;
}

inline SingleExcitationState initial_state(const RunConfig& cfg, const EmitterArray& em) {
    const int nc = cfg.n_cavities;
    const int ne = static_cast<int>(em.size());
    if (cfg.initial == "+") {
        if (ne != 2) throw ConfigError("initial '+' requires two emitters");
        return sector_state(Sector::plus, nc);
    }
    if (cfg.initial == "-") {
        if (ne != 2) throw ConfigError("initial '-' requires two emitters");
        return sector_state(Sector::minus, nc);
    }
    if (cfg.initial == "symmetric3") {
        if (ne != 3) throw ConfigError("initial 'symmetric3' requires three emitters");
        return parity_state(ParityState::even1, nc);
    }
    try {
        const int idx = std::stoi(cfg.initial);
        return site_excitation(idx, ne, nc);
    } catch (const std::invalid_argument&) {
        throw ConfigError("initial state must be an emitter index, '+', '-', or 'symmetric3'");
    } catch (const std::out_of_range&) {
        throw ConfigError("initial state index out of range");
    }
}

inline PropagatorMethod parse_method(const std::string& m) {
    if (m == "auto") return PropagatorMethod::automatic;
    if (m == "dense") return PropagatorMethod::dense;
    if (m == "chebyshev") return PropagatorMethod::chebyshev;
    throw ConfigError("method must be auto, dense, or chebyshev");
}

// Bound states with profiles from an auxiliary centered chain; bound-state
// energies and emitter-amplitude overlaps converge exponentially in the chain
// length, so a moderate chain is exact to double precision.
inline std::vector<BoundState> bounds_with_profiles(const EmitterArray& em,
                                                    const LatticeParams& lattice) {
    auto bounds = find_bocs(em, lattice);
    auto bics = find_bics(em, lattice);
    bounds.insert(bounds.end(), bics.begin(), bics.end());
    std::sort(bounds.begin(), bounds.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    const int x = em.separation();
    LatticeParams aux = lattice;
    aux.n_cavities = std::min(lattice.n_cavities, 2002);
    EmitterArray aux_em = em;
    const int n1 = (aux.n_cavities - x) / 2;
    aux_em.positions = {n1, n1 + x};
    attach_profiles(bounds, aux, aux_em);
    return bounds;
}

inline json bounds_to_json(const std::vector<BoundState>& bounds) {
    json arr = json::array();
    for (const auto& b : bounds)
        arr.push_back({{"energy", b.energy},
                       {"sector", sector_name(b.sector)},
                       {"kind", bound_kind_name(b.kind)},
                       {"residue", b.residue}});
    return arr;
}

struct ManifestWriter {
    json manifest;
    fs::path dir;
    std::string run_name;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    ManifestWriter(const std::string& command, const RunConfig& cfg) {
        dir = resolve_out_dir(cfg);
        run_name = cfg.name(command);
        manifest["tool"] = "bswg";
        manifest["version"] = version;
        manifest["command"] = command;
        manifest["preset"] = cfg.preset;
        manifest["config"] = config_to_json(cfg);
        manifest["outputs"] = json::array();
    }

    fs::path file(const std::string& suffix) {
        const fs::path p = dir / (run_name + "_" + suffix);
        manifest["outputs"].push_back(p.string());
        return p;
    }

    void finish() {
        for (const auto& f : manifest["outputs"]) {
            const fs::path p = f.get<std::string>();
            if (!fs::exists(p) || fs::file_size(p) == 0)
                throw NumericError("manifest lists missing or empty output: " + p.string());
        }
        manifest["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        auto out = open_output(dir / (run_name + "_manifest.json"));
        out << manifest.dump(2) << '\n';
    }
};

}  // namespace detail

// F±(E) curves over an energy grid plus the table of bound-state roots.
inline void cmd_spectrum(const RunConfig& cfg) {
    detail::ManifestWriter mw("spectrum", cfg);
    LatticeParams lattice = cfg.lattice();
    const EmitterArray em = detail::spectrum_emitters(cfg);
    lattice.n_cavities = std::max(lattice.n_cavities, em.positions.back() + 2);

    std::vector<double> energies;
    std::vector<complex> f_plus, f_minus;
    for (double e : linspace(cfg.e_min, cfg.e_max, cfg.e_points)) {
        if (std::abs(std::abs(e - lattice.omega0) - 2.0 * lattice.xi) < 1e-12) continue;
        energies.push_back(e);
        f_plus.push_back(pole_function(e, Sector::plus, em, lattice).value);
        f_minus.push_back(pole_function(e, Sector::minus, em, lattice).value);
    }
    write_pole_curve_csv(mw.file("poles.csv"), energies, f_plus, f_minus);

    auto roots = find_bocs(em, lattice);
    auto bics = find_bics(em, lattice);
    roots.insert(roots.end(), bics.begin(), bics.end());
    std::sort(roots.begin(), roots.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    write_roots_csv(mw.file("roots.csv"), roots);

    mw.manifest["bound_states"] = detail::bounds_to_json(roots);
    mw.manifest["convergence"] = {{"n_k", cfg.n_k}};
    mw.finish();
}

// Δ-g phase diagram of the near-side BOC count.
inline void cmd_scan(const RunConfig& cfg) {
    if (cfg.delta_points < 16 || cfg.g_points < 16)
        throw ConfigError("scan: grid resolution must be at least 16x16");
    detail::ManifestWriter mw("scan", cfg);
    const auto deltas = linspace(cfg.delta_min, cfg.delta_max, cfg.delta_points);
    const auto gs = cfg.g_log ? logspace(cfg.g_min, cfg.g_max, cfg.g_points)
                              : linspace(cfg.g_min, cfg.g_max, cfg.g_points);
    LatticeParams lattice = cfg.lattice();
    for (double d : deltas)
        if (!lattice.in_band(d)) throw ConfigError("scan: delta grid extends outside the band");
    const auto scan = region_scan(deltas, gs, cfg.x, lattice, {}, std::max(1, cfg.workers));
    write_scan_csv(mw.file("scan.csv"), scan);

    json summary;
    summary["x"] = cfg.x;
    summary["delta_grid"] = scan.delta_grid;
    summary["g_grid"] = scan.g_grid;
    json curves = json::array();
    for (const auto& b : scan_boundaries(scan)) {
        json row;
        row["delta"] = b.delta;
        row["g_first_one"] = std::isnan(b.g_first_one) ? json() : json(b.g_first_one);
        row["g_first_two"] = std::isnan(b.g_first_two) ? json() : json(b.g_first_two);
        curves.push_back(row);
    }
    summary["boundaries"] = curves;
    {
        auto out = open_output(mw.file("boundaries.json"));
        out << summary.dump(2) << '\n';
    }
    mw.finish();
}

// Spontaneous-emission run: trajectory CSV, optional field map, optional
// bound-mode asymptote overlay.
inline void cmd_evolve(const RunConfig& cfg) {
    detail::ManifestWriter mw("evolve", cfg);
    const LatticeParams lattice = cfg.lattice();
    const EmitterArray em = cfg.emitters();
    lattice.validate();
    em.validate(lattice);
    const auto initial = detail::initial_state(cfg, em);

    EvolveOptions opts;
    opts.want_field = cfg.field;
    opts.field_stride = cfg.field_stride;
    opts.field_lo = cfg.field_lo;
    opts.field_hi = cfg.field_hi;
    opts.method = detail::parse_method(cfg.method);
    const TimeGrid grid{cfg.dt, cfg.t_max};

    const auto traj = evolve(initial, lattice, em, grid, opts);
    write_trajectory_csv(mw.file("trajectory.csv"), traj);
    if (cfg.field) write_fieldmap_csv(mw.file("fieldmap.csv"), traj);

    json bounds_json = json::array();
    if (cfg.asymptote && em.size() == 2) {
        const auto bounds = detail::bounds_with_profiles(em, lattice);
        const auto model = asymptotic_prediction(bounds, initial);
        write_asymptote_csv(mw.file("asymptote.csv"), model, traj.times);
        bounds_json = detail::bounds_to_json(bounds);
    }
    mw.manifest["bound_states"] = bounds_json;
    mw.manifest["convergence"] = {
        {"n_cavities", cfg.n_cavities},
        {"n_k", cfg.n_k},
        {"min_n_cavities_for_t_max", min_cavities_for(cfg.t_max, em.span(), lattice)}};
    mw.finish();
}

namespace detail {

struct LoadedTrajectory {
    Eigen::VectorXd times;
    Eigen::MatrixXd columns;   // P_L, P_R, P_plus, P_minus
};

inline LoadedTrajectory load_two_emitter_trajectory(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read trajectory: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("time,P_L,P_R,P_plus,P_minus", 0) != 0)
        throw ConfigError("not a two-emitter trajectory CSV: " + path.string());
    std::vector<std::array<double, 5>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 5> row{};
        std::stringstream ss(line);
        std::string cell;
        for (int c = 0; c < 5; ++c) {
            if (!std::getline(ss, cell, ',')) throw ConfigError("short row in " + path.string());
            row[c] = std::stod(cell);
        }
        rows.push_back(row);
    }
    LoadedTrajectory lt;
    lt.times.resize(rows.size());
    lt.columns.resize(rows.size(), 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        lt.times(i) = rows[i][0];
        for (int c = 0; c < 4; ++c) lt.columns(i, c) = rows[i][c + 1];
    }
    return lt;
}

}  // namespace detail

// Bound-mode long-time prediction and its deviation from the exact dynamics
// beyond the transient cutoff.
inline void cmd_asymptote(const RunConfig& cfg) {
    detail::ManifestWriter mw("asymptote", cfg);
    const LatticeParams lattice = cfg.lattice();
    const EmitterArray em = cfg.emitters();
    lattice.validate();
    em.validate(lattice);
    if (em.size() != 2) throw ConfigError("asymptote: requires two emitters");
    const auto initial = detail::initial_state(cfg, em);

    detail::LoadedTrajectory exact;
    if (!cfg.traj_path.empty()) {
        exact = detail::load_two_emitter_trajectory(cfg.traj_path);
    } else {
        EvolveOptions opts;
        opts.method = detail::parse_method(cfg.method);
        const auto traj = evolve(initial, lattice, em, TimeGrid{cfg.dt, cfg.t_max}, opts);
        exact.times = traj.times;
        exact.columns.resize(traj.times.size(), 4);
        exact.columns.col(0) = traj.pops_site.col(0);
        exact.columns.col(1) = traj.pops_site.col(1);
        exact.columns.col(2) = traj.pops_sector.col(0);
        exact.columns.col(3) = traj.pops_sector.col(1);
    }

    const auto bounds = detail::bounds_with_profiles(em, lattice);
    const auto model = asymptotic_prediction(bounds, initial);
    const double t_transient = transient_cutoff(em.separation(), lattice);

    std::array<double, 4> max_err{0.0, 0.0, 0.0, 0.0};
    {
        auto out = open_output(mw.file("comparison.csv"));
        out << "time,P_L,P_R,P_plus,P_minus,P_L_pred,P_R_pred,P_plus_pred,P_minus_pred\n";
        for (int i = 0; i < exact.times.size(); ++i) {
            const double t = exact.times(i);
            const std::array<double, 4> pred{
                model.predict_site(0, t), model.predict_site(1, t),
                model.predict_sector(Sector::plus, t), model.predict_sector(Sector::minus, t)};
            out << fmt17(t);
            for (int c = 0; c < 4; ++c) out << ',' << fmt17(exact.columns(i, c));
            for (int c = 0; c < 4; ++c) out << ',' << fmt17(pred[c]);
            out << '\n';
            if (t > t_transient)
                for (int c = 0; c < 4; ++c)
                    max_err[c] = std::max(max_err[c], std::abs(exact.columns(i, c) - pred[c]));
        }
    }

    json report;
    report["t_transient"] = t_transient;
    report["n_bound_states"] = bounds.size();
    if (bounds.empty())
        report["note"] = "no bound states found; the prediction is the zero decay remnant";
    report["max_abs_error"] = {{"P_L", max_err[0]},
                               {"P_R", max_err[1]},
                               {"P_plus", max_err[2]},
                               {"P_minus", max_err[3]}};
    report["bound_states"] = detail::bounds_to_json(bounds);
    {
        auto out = open_output(mw.file("report.json"));
        out << report.dump(2) << '\n';
    }
    mw.manifest["bound_states"] = detail::bounds_to_json(bounds);
    mw.finish();
}

}  // namespace bswg
