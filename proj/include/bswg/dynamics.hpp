// dynamics.hpp — Exact single-excitation time evolution on the finite chain.
//
// The default propagator is a one-time dense eigendecomposition followed by
// phase resummation, exact at all times. Long chains switch to the Chebyshev
// expansion of exp(−iH dt) (see chebyshev.hpp), which agrees with the
// spectral route to the expansion tolerance. Output times are a uniform grid.

#pragma once

#include "bswg/bound_states.hpp"
#include "bswg/chebyshev.hpp"
#include "bswg/errors.hpp"
#include "bswg/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace bswg {

// ------------------------------- Run windows --------------------------------

// Chain length needed so boundary reflections cannot reach the emitters
// within t_max (group velocity ≤ 2ξ, emitters centered, safety margin 50).
inline int min_cavities_for(double t_max, int span, const LatticeParams& lattice) {
    return static_cast<int>(std::ceil(4.0 * lattice.xi * t_max)) + span + 50;
}

// Transient cutoff for asymptote comparisons: several photon round trips
// between the emitters.
inline double transient_cutoff(int span, const LatticeParams& lattice) {
    return 10.0 * span / (2.0 * lattice.xi);
}

struct TimeGrid {
    double dt{0.5};
    double t_max{400.0};

    std::vector<double> times() const {
        if (!(dt > 0.0) || !(t_max >= 0.0)) throw std::invalid_argument("TimeGrid: dt > 0, t_max >= 0");
        const int n = static_cast<int>(std::floor(t_max / dt + 1e-9)) + 1;
        std::vector<double> t(n);
        for (int i = 0; i < n; ++i) t[i] = i * dt;
        return t;
    }
};

// -------------------------------- Trajectory --------------------------------

struct Trajectory {
    Eigen::VectorXd times;
    Eigen::MatrixXcd emitter_amps;   // n_times × n_emitters
    Eigen::MatrixXd pops_site;       // n_times × n_emitters
    Eigen::MatrixXd pops_sector;     // n_times × 2 (|±⟩) or × 3 (parity states); empty otherwise
    std::vector<std::string> sector_names;
    Eigen::VectorXd norm;            // per-sample ‖ψ‖²; for the spectral route this is
                                     // ‖V†ψ0‖², the eigenbasis-completeness defect

    // photon occupation |ψ_n(t)|², sampled every field_stride output times
    // over the cavity window field_cavity_lo..field_cavity_lo+cols−1
    Eigen::VectorXd field_times;
    int field_cavity_lo{0};
    Eigen::MatrixXd field_map;
};

enum class PropagatorMethod { automatic, dense, chebyshev };

struct EvolveOptions {
    bool want_field = false;
    int field_stride = 1;
    int field_lo = -1;   // inclusive cavity window; -1 = whole chain
    int field_hi = -1;
    PropagatorMethod method = PropagatorMethod::automatic;
    int dense_dim_limit = 2600;
    double cheb_tol = 1e-14;
};

enum class PopulationBasis { site, sector };

namespace detail {

inline void fill_sector_pops(Trajectory& traj) {
    const int ne = static_cast<int>(traj.emitter_amps.cols());
    const int nt = static_cast<int>(traj.emitter_amps.rows());
    if (ne == 2) {
        traj.pops_sector.resize(nt, 2);
        traj.sector_names = {"plus", "minus"};
        const double r = 1.0 / std::sqrt(2.0);
        for (int i = 0; i < nt; ++i) {
            const complex cl = traj.emitter_amps(i, 0), cr = traj.emitter_amps(i, 1);
            traj.pops_sector(i, 0) = std::norm(r * (cl + cr));
            traj.pops_sector(i, 1) = std::norm(r * (cl - cr));
        }
    } else if (ne == 3) {
        traj.pops_sector.resize(nt, 3);
        traj.sector_names = {"even1", "even2", "odd"};
        const double r3 = 1.0 / std::sqrt(3.0), r6 = 1.0 / std::sqrt(6.0), r2 = 1.0 / std::sqrt(2.0);
        for (int i = 0; i < nt; ++i) {
            const complex cl = traj.emitter_amps(i, 0), cc = traj.emitter_amps(i, 1),
                          cr = traj.emitter_amps(i, 2);
            traj.pops_sector(i, 0) = std::norm(r3 * (cl + cc + cr));
            traj.pops_sector(i, 1) = std::norm(r6 * (cl - 2.0 * cc + cr));
            traj.pops_sector(i, 2) = std::norm(r2 * (cl - cr));
        }
    } else {
        traj.pops_sector.resize(nt, 0);
        traj.sector_names.clear();
    }
}

inline void check_run_window(const SingleExcitationState& initial, const LatticeParams& lattice,
                             const EmitterArray& emitters, double t_max) {
    if (std::abs(initial.squared_norm() - 1.0) > 1e-9)
        throw std::invalid_argument("evolve: initial state must be normalized");
    if (initial.photon_amps.size() != lattice.n_cavities ||
        initial.emitter_amps.size() != static_cast<Eigen::Index>(emitters.size()))
        throw std::invalid_argument("evolve: initial state dimensions do not match the model");
    const double reach = 2.0 * lattice.xi * t_max + 25.0;
    for (int p : emitters.positions) {
        const double dist = std::min(p, lattice.n_cavities - 1 - p);
        if (dist < reach)
            throw ConfigError("evolve: light cone reaches the chain boundary before t_max; need "
                              "n_cavities >= " +
                              std::to_string(min_cavities_for(t_max, emitters.span(), lattice)) +
                              " with the emitters centered");
    }
}

}  // namespace detail

// ---------------------------- Spectral propagator ----------------------------

// Holds the dense eigendecomposition of the chain + emitters; reusable across
// initial states and for bound-state profiles.
struct SpectralPropagator {
    LatticeParams lattice;
    EmitterArray emitters;
    Eigensystem es;

    SpectralPropagator(const LatticeParams& lat, const EmitterArray& em)
        : lattice(lat), emitters(em), es(eigensystem(build_hamiltonian(lat, em))) {}
};

inline Trajectory evolve_spectral(const SpectralPropagator& prop, const SingleExcitationState& initial,
                                  const TimeGrid& grid, const EvolveOptions& opts = {}) {
    const auto& lattice = prop.lattice;
    const auto& emitters = prop.emitters;
    detail::check_run_window(initial, lattice, emitters, grid.t_max);
    const int nc = lattice.n_cavities;
    const int ne = static_cast<int>(emitters.size());
    const int dim = nc + ne;

    const Eigen::VectorXcd psi0 = initial.to_full();
    Eigen::VectorXcd w =
        (prop.es.states.transpose() * psi0.real()).cast<complex>() +
        complex(0, 1) * (prop.es.states.transpose() * psi0.imag()).cast<complex>();
    const double wnorm = w.squaredNorm();

    // emitter rows weighted by the expansion coefficients
    Eigen::MatrixXcd emitter_modes(ne, dim);
    for (int e = 0; e < ne; ++e)
        for (int q = 0; q < dim; ++q) emitter_modes(e, q) = prop.es.states(nc + e, q) * w(q);

    const auto tvec = grid.times();
    const int nt = static_cast<int>(tvec.size());
    Trajectory traj;
    traj.times = Eigen::Map<const Eigen::VectorXd>(tvec.data(), nt);
    traj.emitter_amps.resize(nt, ne);
    traj.pops_site.resize(nt, ne);
    traj.norm = Eigen::VectorXd::Constant(nt, wnorm);

    int field_lo = 0, field_hi = -1, n_field_rows = 0;
    if (opts.want_field) {
        field_lo = opts.field_lo < 0 ? 0 : opts.field_lo;
        field_hi = opts.field_hi < 0 ? nc - 1 : opts.field_hi;
        if (field_lo < 0 || field_hi >= nc || field_lo > field_hi)
            throw std::invalid_argument("evolve: invalid field window");
        const int stride = std::max(1, opts.field_stride);
        n_field_rows = (nt + stride - 1) / stride;
        traj.field_cavity_lo = field_lo;
        traj.field_map.resize(n_field_rows, field_hi - field_lo + 1);
        traj.field_times.resize(n_field_rows);
    }

    Eigen::VectorXcd phase(dim), z(dim);
    Eigen::VectorXcd amps(ne);
    int field_row = 0;
    const int stride = std::max(1, opts.field_stride);
    for (int i = 0; i < nt; ++i) {
        const double t = tvec[i];
        for (int q = 0; q < dim; ++q) phase(q) = std::polar(1.0, -prop.es.energies(q) * t);
        amps = emitter_modes * phase;
        for (int e = 0; e < ne; ++e) {
            traj.emitter_amps(i, e) = amps(e);
            traj.pops_site(i, e) = std::norm(amps(e));
        }
        if (opts.want_field && i % stride == 0) {
            z = w.cwiseProduct(phase);
            const auto window = prop.es.states.middleRows(field_lo, field_hi - field_lo + 1);
            const Eigen::VectorXd re = window * z.real();
            const Eigen::VectorXd im = window * z.imag();
            traj.field_times(field_row) = t;
            traj.field_map.row(field_row) = (re.array().square() + im.array().square()).transpose();
            ++field_row;
        }
    }
    detail::fill_sector_pops(traj);
    return traj;
}

inline Trajectory evolve_chebyshev(const SingleExcitationState& initial, const LatticeParams& lattice,
                                   const EmitterArray& emitters, const TimeGrid& grid,
                                   const EvolveOptions& opts = {}) {
    detail::check_run_window(initial, lattice, emitters, grid.t_max);
    const auto h = SparseHamiltonian::from(lattice, emitters);
    const int nc = lattice.n_cavities;
    const int ne = static_cast<int>(emitters.size());

    const auto tvec = grid.times();
    const int nt = static_cast<int>(tvec.size());
    Trajectory traj;
    traj.times = Eigen::Map<const Eigen::VectorXd>(tvec.data(), nt);
    traj.emitter_amps.resize(nt, ne);
    traj.pops_site.resize(nt, ne);
    traj.norm.resize(nt);

    int field_lo = 0, field_hi = -1;
    const int stride = std::max(1, opts.field_stride);
    if (opts.want_field) {
        field_lo = opts.field_lo < 0 ? 0 : opts.field_lo;
        field_hi = opts.field_hi < 0 ? nc - 1 : opts.field_hi;
        if (field_lo < 0 || field_hi >= nc || field_lo > field_hi)
            throw std::invalid_argument("evolve: invalid field window");
        const int n_field_rows = (nt + stride - 1) / stride;
        traj.field_cavity_lo = field_lo;
        traj.field_map.resize(n_field_rows, field_hi - field_lo + 1);
        traj.field_times.resize(n_field_rows);
    }

    Eigen::VectorXcd state = initial.to_full();
    int field_row = 0;
    for (int i = 0; i < nt; ++i) {
        if (i > 0) chebyshev_step(h, state, tvec[i] - tvec[i - 1], opts.cheb_tol);
        for (int e = 0; e < ne; ++e) {
            traj.emitter_amps(i, e) = state(nc + e);
            traj.pops_site(i, e) = std::norm(state(nc + e));
        }
        traj.norm(i) = state.squaredNorm();
        if (opts.want_field && i % stride == 0) {
            traj.field_times(field_row) = tvec[i];
            for (int n = field_lo; n <= field_hi; ++n)
                traj.field_map(field_row, n - field_lo) = std::norm(state(n));
            ++field_row;
        }
    }
    detail::fill_sector_pops(traj);
    return traj;
}

// Main entry point; picks the dense spectral route when the problem is small
// enough and the Chebyshev route otherwise.
inline Trajectory evolve(const SingleExcitationState& initial, const LatticeParams& lattice,
                         const EmitterArray& emitters, const TimeGrid& grid,
                         const EvolveOptions& opts = {}) {
    const int dim = lattice.n_cavities + static_cast<int>(emitters.size());
    PropagatorMethod m = opts.method;
    if (m == PropagatorMethod::automatic)
        m = dim <= opts.dense_dim_limit ? PropagatorMethod::dense : PropagatorMethod::chebyshev;
    if (m == PropagatorMethod::dense) {
        SpectralPropagator prop(lattice, emitters);
        return evolve_spectral(prop, initial, grid, opts);
    }
    return evolve_chebyshev(initial, lattice, emitters, grid, opts);
}

// Population readout in the requested basis (both are precomputed).
inline const Eigen::MatrixXd& sector_projection(const Trajectory& traj, PopulationBasis basis) {
    if (basis == PopulationBasis::site) return traj.pops_site;
    if (traj.pops_sector.cols() == 0)
        throw std::invalid_argument("sector_projection: no sector basis for this emitter count");
    return traj.pops_sector;
}

// ------------------------------ Field helpers -------------------------------

inline const Eigen::MatrixXd& field_occupation(const Trajectory& traj) {
    if (traj.field_map.size() == 0)
        throw std::invalid_argument("field_occupation: trajectory was run without field output");
    return traj.field_map;
}

// Photon weight summed over cavities [lo, hi] for every sampled field time.
inline Eigen::VectorXd field_weight_between(const Trajectory& traj, int lo, int hi) {
    if (traj.field_map.size() == 0)
        throw std::invalid_argument("field_weight_between: no field data");
    const int offset = traj.field_cavity_lo;
    if (lo < offset || hi - offset >= traj.field_map.cols() || lo > hi)
        throw std::invalid_argument("field_weight_between: window outside stored field");
    return traj.field_map.middleCols(lo - offset, hi - lo + 1).rowwise().sum();
}

// --------------------------- Bound-state asymptotics -------------------------

struct AsymptoticMode {
    double energy;
    complex weight;
};

// Long-time model P_sector(t) = |Σ_b w_b e^{−iE_b t}|² built from the bound
// modes only; the number of distinct oscillation frequencies equals the
// number of unordered mode pairs within a sector.
struct AsymptoticModel {
    std::vector<AsymptoticMode> plus, minus;

    const std::vector<AsymptoticMode>& modes(Sector s) const {
        return s == Sector::plus ? plus : minus;
    }

    complex amplitude(Sector s, double t) const {
        complex a(0.0, 0.0);
        for (const auto& m : modes(s)) a += m.weight * std::polar(1.0, -m.energy * t);
        return a;
    }

    double predict_sector(Sector s, double t) const { return std::norm(amplitude(s, t)); }

    // site basis: c_L = (c_+ + c_−)/√2, c_R = (c_+ − c_−)/√2
    double predict_site(int emitter_index, double t) const {
        const complex ap = amplitude(Sector::plus, t);
        const complex am = amplitude(Sector::minus, t);
        const double r = 1.0 / std::sqrt(2.0);
        return std::norm(emitter_index == 0 ? r * (ap + am) : r * (ap - am));
    }
};

// w_b = ⟨sector|b⟩⟨b|ψ0⟩ from the lattice eigenvector profiles. Profiles on
// any chain long enough for the bound tails give identical weights, since
// only emitter amplitudes enter.
inline AsymptoticModel asymptotic_prediction(const std::vector<BoundState>& bounds,
                                             const SingleExcitationState& initial) {
    if (initial.emitter_amps.size() != 2)
        throw std::invalid_argument("asymptotic_prediction: two-emitter initial state required");
    AsymptoticModel model;
    const double r = 1.0 / std::sqrt(2.0);
    for (const auto& b : bounds) {
        if (!b.profile)
            throw std::invalid_argument("asymptotic_prediction: bound state lacks a profile");
        const auto& pe = b.profile->emitter_amps;
        const complex sector_amp = r * (pe(0) + sector_sign(b.sector) * pe(1));   // ⟨sector|b⟩
        const complex overlap = pe.dot(initial.emitter_amps);                     // ⟨b|ψ0⟩ (emitter part)
        AsymptoticMode mode{b.energy, sector_amp * overlap};
        (b.sector == Sector::plus ? model.plus : model.minus).push_back(mode);
    }
    return model;
}

// --------------------------- Three-emitter parity ----------------------------

// Fully symmetric spontaneous-emission run: three identical emitters at
// center + offsets, initial state (|L⟩+|C⟩+|R⟩)/√3. Requires mirror-symmetric
// placement so parity is conserved.
inline Trajectory three_emitter_parity_run(const LatticeParams& lattice, double delta, double g,
                                           const std::array<int, 3>& offsets, const TimeGrid& grid,
                                           const EvolveOptions& opts = {}) {
    lattice.validate();
    if (lattice.n_cavities % 2 == 0)
        throw std::invalid_argument("three_emitter_parity_run: parity bookkeeping refused, "
                                    "n_cavities must be odd so a center cavity exists");
    if (offsets[1] != 0 || offsets[0] != -offsets[2] || offsets[0] >= 0)
        throw std::invalid_argument("three_emitter_parity_run: parity bookkeeping refused, "
                                    "offsets must be mirror-symmetric (-d, 0, +d)");
    const int center = (lattice.n_cavities - 1) / 2;
    EmitterArray em;
    em.deltas = {delta, delta, delta};
    em.g = g;
    em.positions = {center + offsets[0], center + offsets[1], center + offsets[2]};
    const auto initial = parity_state(ParityState::even1, lattice.n_cavities);
    return evolve(initial, lattice, em, grid, opts);
}

}  // namespace bswg
