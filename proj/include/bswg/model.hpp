// model.hpp — Cavity-array lattice, emitter configuration, and the exact
// single-excitation Hamiltonian.
//
// Basis convention for the single-excitation sector: cavity amplitudes
// occupy indices [0, n_cavities), emitter amplitudes follow at
// [n_cavities, n_cavities + n_emitters). The chain has open boundaries.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef BSWG_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace bswg {

using complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

// --------------------------------- Lattice ----------------------------------

struct LatticeParams {
    double omega0{0.0};   // cavity resonance (reference energy)
    double xi{1.0};       // intercavity hopping; sets the energy scale
    int n_cavities{3};    // finite-chain length used for dynamics
    int n_k{4096};        // momentum-grid size for discrete k-sums

    void validate() const {
        if (!(xi > 0.0)) throw std::invalid_argument("LatticeParams: xi must be > 0");
        if (n_cavities < 3) throw std::invalid_argument("LatticeParams: n_cavities must be >= 3");
        if (n_k < 2) throw std::invalid_argument("LatticeParams: n_k must be >= 2");
    }

    double band_min() const { return omega0 - 2.0 * xi; }
    double band_max() const { return omega0 + 2.0 * xi; }
    bool in_band(double energy) const { return std::abs(energy - omega0) < 2.0 * xi; }
};

// ω_k = ω0 − 2ξ cos k, even in k.
inline double dispersion(double k, const LatticeParams& lattice) {
    return lattice.omega0 - 2.0 * lattice.xi * std::cos(k);
}

// Inverse of the dispersion on the principal branch: returns k ∈ [0, π] with
// dispersion(k) = E. Out-of-band energies have no real wavevector; callers
// use the analytic continuation in the self-energy module instead.
inline double wavevector_of_energy(double energy, const LatticeParams& lattice) {
    const double c = (lattice.omega0 - energy) / (2.0 * lattice.xi);
    if (std::abs(c) > 1.0)
        throw std::domain_error("wavevector_of_energy: energy outside the band");
    return std::acos(c);
}

// --------------------------------- Emitters ---------------------------------

struct EmitterArray {
    std::vector<double> deltas;   // transition energies Δ_j
    double g{0.0};                // emitter-cavity coupling, uniform
    std::vector<int> positions;   // cavity indices n_j, strictly increasing

    std::size_t size() const { return deltas.size(); }

    void validate(const LatticeParams& lattice) const {
        if (deltas.size() != positions.size())
            throw std::invalid_argument("EmitterArray: deltas/positions size mismatch");
        if (deltas.empty()) throw std::invalid_argument("EmitterArray: no emitters");
        for (std::size_t j = 0; j < positions.size(); ++j) {
            if (positions[j] < 0 || positions[j] >= lattice.n_cavities)
                throw std::invalid_argument("EmitterArray: position " + std::to_string(positions[j]) +
                                            " outside [0, " + std::to_string(lattice.n_cavities) + ")");
            if (j > 0 && positions[j] <= positions[j - 1])
                throw std::invalid_argument("EmitterArray: positions must be strictly increasing");
        }
    }

    bool identical() const {
        for (std::size_t j = 1; j < deltas.size(); ++j)
            if (deltas[j] != deltas[0]) return false;
        return true;
    }

    // Separation x = n2 − n1 for the two-emitter analytics.
    int separation() const {
        if (positions.size() != 2)
            throw std::invalid_argument("EmitterArray::separation: requires exactly two emitters");
        return positions[1] - positions[0];
    }

    // Largest emitter-emitter distance; equals separation() for two emitters.
    int span() const { return positions.empty() ? 0 : positions.back() - positions.front(); }
};

// ------------------------------ Matter sectors ------------------------------

// Two-emitter entangled basis |±⟩ = (|L⟩ ± |R⟩)/√2.
enum class Sector { plus, minus };

inline double sector_sign(Sector s) { return s == Sector::plus ? 1.0 : -1.0; }
inline const char* sector_name(Sector s) { return s == Sector::plus ? "+" : "-"; }
inline Sector sector_opposite(Sector s) { return s == Sector::plus ? Sector::minus : Sector::plus; }

// Three-emitter parity-adapted collective states (L, C, R at mirror-symmetric
// sites): even1 = (|L⟩+|C⟩+|R⟩)/√3, even2 = (|L⟩−2|C⟩+|R⟩)/√6,
// odd = (|L⟩−|R⟩)/√2.
enum class ParityState { even1, even2, odd };

inline const char* parity_name(ParityState p) {
    switch (p) {
        case ParityState::even1: return "even1";
        case ParityState::even2: return "even2";
        default: return "odd";
    }
}

// ε_sector = ⟨±|H0|±⟩; equals Δ for identical emitters.
inline double sector_energy(const EmitterArray& emitters, Sector /*sector*/) {
    if (emitters.size() != 2)
        throw std::invalid_argument("sector_energy: only the two-emitter sector basis is supported");
    return 0.5 * (emitters.deltas[0] + emitters.deltas[1]);
}

// ------------------------------ State vectors -------------------------------

struct SingleExcitationState {
    Eigen::VectorXcd emitter_amps;
    Eigen::VectorXcd photon_amps;

    double squared_norm() const { return emitter_amps.squaredNorm() + photon_amps.squaredNorm(); }

    SingleExcitationState& normalize() {
        const double n = std::sqrt(squared_norm());
        if (n == 0.0) throw std::invalid_argument("SingleExcitationState: zero state");
        emitter_amps /= n;
        photon_amps /= n;
        return *this;
    }

    Eigen::VectorXcd to_full() const {
        Eigen::VectorXcd full(photon_amps.size() + emitter_amps.size());
        full.head(photon_amps.size()) = photon_amps;
        full.tail(emitter_amps.size()) = emitter_amps;
        return full;
    }

    static SingleExcitationState from_full(const Eigen::VectorXcd& full, int n_cavities) {
        SingleExcitationState s;
        s.photon_amps = full.head(n_cavities);
        s.emitter_amps = full.tail(full.size() - n_cavities);
        return s;
    }
};

// Emitter-only state with amplitudes `amps` and an empty photon field.
inline SingleExcitationState emitter_state(const Eigen::VectorXcd& amps, int n_cavities) {
    SingleExcitationState s;
    s.emitter_amps = amps;
    s.photon_amps = Eigen::VectorXcd::Zero(n_cavities);
    return s;
}

inline SingleExcitationState site_excitation(int emitter_index, int n_emitters, int n_cavities) {
    if (emitter_index < 0 || emitter_index >= n_emitters)
        throw std::invalid_argument("site_excitation: emitter index out of range");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(n_emitters);
    amps(emitter_index) = 1.0;
    return emitter_state(amps, n_cavities);
}

inline SingleExcitationState sector_state(Sector sector, int n_cavities) {
    Eigen::VectorXcd amps(2);
    const double r = 1.0 / std::sqrt(2.0);
    amps << r, sector_sign(sector) * r;
    return emitter_state(amps, n_cavities);
}

inline SingleExcitationState parity_state(ParityState p, int n_cavities) {
    Eigen::VectorXcd amps(3);
    switch (p) {
        case ParityState::even1: amps << 1, 1, 1; amps /= std::sqrt(3.0); break;
        case ParityState::even2: amps << 1, -2, 1; amps /= std::sqrt(6.0); break;
        case ParityState::odd:   amps << 1, 0, -1; amps /= std::sqrt(2.0); break;
    }
    return emitter_state(amps, n_cavities);
}

// ------------------------------- Hamiltonian --------------------------------

// Real-space single-excitation Hamiltonian: open chain with diagonal ω0 and
// nearest-neighbour hopping −ξ; emitter j carries diagonal Δ_j and couples
// with strength g to the cavity at n_j. Real symmetric by construction.
inline Eigen::MatrixXd build_hamiltonian(const LatticeParams& lattice, const EmitterArray& emitters) {
    lattice.validate();
    emitters.validate(lattice);
    const int nc = lattice.n_cavities;
    const int ne = static_cast<int>(emitters.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nc + ne, nc + ne);
    for (int n = 0; n < nc; ++n) {
        h(n, n) = lattice.omega0;
        if (n + 1 < nc) {
            h(n, n + 1) = -lattice.xi;
            h(n + 1, n) = -lattice.xi;
        }
    }
    for (int j = 0; j < ne; ++j) {
        const int row = nc + j;
        h(row, row) = emitters.deltas[j];
        h(row, emitters.positions[j]) = emitters.g;
        h(emitters.positions[j], row) = emitters.g;
    }
    return h;
}

// Cavity-only variant, useful for spectra of the bare chain.
inline Eigen::MatrixXd build_chain_hamiltonian(const LatticeParams& lattice) {
    lattice.validate();
    const int nc = lattice.n_cavities;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nc, nc);
    for (int n = 0; n < nc; ++n) {
        h(n, n) = lattice.omega0;
        if (n + 1 < nc) {
            h(n, n + 1) = -lattice.xi;
            h(n + 1, n) = -lattice.xi;
        }
    }
    return h;
}

// ------------------------------- Eigensystem --------------------------------

struct Eigensystem {
    Eigen::VectorXd energies;   // ascending
    Eigen::MatrixXd states;     // eigenvectors in columns
};

// Dense symmetric eigendecomposition; LAPACKE divide-and-conquer when
// available, Eigen otherwise.
inline Eigensystem eigensystem(const Eigen::MatrixXd& h, bool with_vectors = true) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eigensystem: matrix must be square");
    Eigensystem es;
#ifdef BSWG_HAVE_LAPACKE
    const int n = static_cast<int>(h.rows());
    Eigen::MatrixXd a = h;
    es.energies.resize(n);
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'L', n, a.data(), n,
                                    es.energies.data());
    if (info != 0) throw std::runtime_error("eigensystem: dsyevd failed, info=" + std::to_string(info));
    if (with_vectors) es.states = std::move(a);
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        h, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensystem: decomposition failed");
    es.energies = solver.eigenvalues();
    if (with_vectors) es.states = solver.eigenvectors();
#endif
    return es;
}

}  // namespace bswg
