// bswg — bound states and spontaneous-emission dynamics of emitters coupled
// to a coupled-cavity-array waveguide.
//
// Subcommands:
//   spectrum   pole-function curves F±(E) and the bound-state root table
//   scan       Δ-g phase diagram of the near-side BOC count
//   evolve     exact single-excitation time evolution on the finite chain
//   asymptote  bound-mode long-time prediction vs the exact dynamics
//
// Exit codes: 0 success, 2 configuration error, 3 numeric non-convergence.

#include "bswg/commands.hpp"
#include "bswg/version.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <string>

namespace {

struct CliOverrides {
    std::string config_path, preset, out_dir, label, initial, method, traj_path;
    double g = -1.0, dt = -1.0, t_max = -1.0;
    int workers = -1, x = -1;
    bool seedless = false;
};

void add_common(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (a run manifest is accepted too)");
    cmd->add_option("--preset", o.preset, "named preset (fig2a-d, fig3a-i, fig4)");
    cmd->add_option("--out", o.out_dir, "output directory (default: $BSWG_OUT_DIR or ./out)");
    cmd->add_option("--workers", o.workers, "worker threads for scans");
    cmd->add_option("--label", o.label, "basename for output files");
    cmd->add_flag("--seedless", o.seedless,
                  "accepted for compatibility; every computation is deterministic");
    cmd->add_option("--g", o.g, "override emitter-waveguide coupling");
    cmd->add_option("--dt", o.dt, "override output time step");
    cmd->add_option("--tmax", o.t_max, "override final time");
    cmd->add_option("--initial", o.initial, "override initial state (index, '+', '-', 'symmetric3')");
    cmd->add_option("--method", o.method, "propagator: auto | dense | chebyshev");
    cmd->add_option("--x", o.x, "override emitter separation (scan/spectrum)");
    cmd->add_option("--traj", o.traj_path, "existing trajectory CSV (asymptote)");
}

// defaults < preset < config file < flags
bswg::RunConfig resolve(const CliOverrides& o) {
    bswg::RunConfig cfg;
    if (!o.preset.empty()) cfg = bswg::preset_config(o.preset);
    if (!o.config_path.empty()) bswg::apply_config_file(cfg, o.config_path);
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (!o.label.empty()) cfg.label = o.label;
    if (!o.initial.empty()) cfg.initial = o.initial;
    if (!o.method.empty()) cfg.method = o.method;
    if (!o.traj_path.empty()) cfg.traj_path = o.traj_path;
    if (o.g >= 0.0) cfg.g = o.g;
    if (o.dt > 0.0) cfg.dt = o.dt;
    if (o.t_max > 0.0) cfg.t_max = o.t_max;
    if (o.workers > 0) cfg.workers = o.workers;
    if (o.x > 0) {
        cfg.x = o.x;
        cfg.positions.clear();   // separation overrides explicit placement
        cfg.deltas.resize(std::min<std::size_t>(cfg.deltas.size(), 1));
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bound states and emission dynamics in a cavity-array waveguide"};
    app.set_version_flag("--version", std::string("bswg ") + bswg::version);
    app.require_subcommand(1);

    CliOverrides o_spectrum, o_scan, o_evolve, o_asymptote;
    auto* c_spectrum = app.add_subcommand("spectrum", "pole-function curves and root table");
    auto* c_scan = app.add_subcommand("scan", "Delta-g bound-state count map");
    auto* c_evolve = app.add_subcommand("evolve", "exact time evolution");
    auto* c_asymptote = app.add_subcommand("asymptote", "bound-mode prediction vs exact dynamics");
    add_common(c_spectrum, o_spectrum);
    add_common(c_scan, o_scan);
    add_common(c_evolve, o_evolve);
    add_common(c_asymptote, o_asymptote);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (c_spectrum->parsed()) bswg::cmd_spectrum(resolve(o_spectrum));
        if (c_scan->parsed()) bswg::cmd_scan(resolve(o_scan));
        if (c_evolve->parsed()) bswg::cmd_evolve(resolve(o_evolve));
        if (c_asymptote->parsed()) bswg::cmd_asymptote(resolve(o_asymptote));
    } catch (const bswg::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const bswg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
