// bound_states.hpp — Bound states of two emitters on the cavity array:
// out-of-band states (BOCs) from root finding of F±, in-band states (BICs)
// from the interference condition, residues, lattice eigenvector profiles,
// and the Δ-g phase-diagram scan.

#pragma once

#include "bswg/errors.hpp"
#include "bswg/green_function.hpp"
#include "bswg/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace bswg {

enum class BoundKind { bic, boc_below, boc_above };

inline const char* bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::bic: return "BIC";
        case BoundKind::boc_below: return "BOC-below";
        default: return "BOC-above";
    }
}

struct BoundState {
    Sector sector{Sector::minus};
    double energy{0.0};
    BoundKind kind{BoundKind::bic};
    double residue{0.0};                           // 1/F'±(E_b), spectral weight in the matter sector
    std::optional<SingleExcitationState> profile;  // filled by bound_profile
};

struct BocSearchOptions {
    double depth_floor = 1e-9;          // smallest binding depth counted as a root
    double depth_ceiling_factor = 8.0;  // search window extends to this · g² beyond the edge
    int brackets_per_decade = 12;       // log-spaced bracket scan resolution
    int max_steps = 200;                // bisection + polish budget per root
};

namespace detail {

// Σ±(edge ± depth) with the binding depth as the primitive variable, so the
// near-edge κ does not inherit cancellation from |E − ω0| − 2ξ.
inline double sigma_outside_from_depth(double depth, bool below, int x, Sector sector,
                                       const LatticeParams& lattice, double g) {
    const double abs_d = 2.0 * lattice.xi + depth;
    const double two_xi_sinh = std::sqrt(depth * (abs_d + 2.0 * lattice.xi));
    const double kappa = std::asinh(two_xi_sinh / (2.0 * lattice.xi));
    double s = sector_sign(sector);
    if (!below && (x % 2 != 0)) s = -s;
    const double bracket = (s > 0.0) ? 1.0 + std::exp(-kappa * x) : -std::expm1(-kappa * x);
    return (below ? -1.0 : 1.0) * g * g * bracket / two_xi_sinh;
}

// F±(E) at E = edge ± depth, evaluated depth-first for conditioning.
inline double pole_fn_from_depth(double depth, bool below, int x, Sector sector, double eps_sector,
                                 const LatticeParams& lattice, double g) {
    const double edge = below ? lattice.band_min() : lattice.band_max();
    const double energy = below ? edge - depth : edge + depth;
    return (energy - eps_sector) - sigma_outside_from_depth(depth, below, x, sector, lattice, g);
}

inline void require_two_identical_in_band(const EmitterArray& emitters, const LatticeParams& lattice) {
    if (emitters.size() != 2 || !emitters.identical())
        throw std::invalid_argument("bound states: requires two identical emitters");
    if (!lattice.in_band(emitters.deltas[0]))
        throw std::domain_error("bound states: emitter energy must lie inside the band");
}

}  // namespace detail

// Searches one band side for zeros of F± on a log-spaced depth grid
// [depth_floor, max(ceiling_factor·g², 10·depth_floor)], extended upward if
// the pole function has not changed sign yet. F± is strictly monotone in E
// outside the band, so each (sector, side) holds at most one root.
inline std::vector<BoundState> find_bocs_on_side(const EmitterArray& emitters,
                                                 const LatticeParams& lattice, bool below,
                                                 const BocSearchOptions& opts = {}) {
    detail::require_two_identical_in_band(emitters, lattice);
    const int x = emitters.separation();
    const double g = emitters.g;
    std::vector<BoundState> found;
    for (Sector sector : {Sector::plus, Sector::minus}) {
        const double eps = sector_energy(emitters, sector);
        auto f = [&](double depth) {
            return detail::pole_fn_from_depth(depth, below, x, sector, eps, lattice, g);
        };
        double ceiling = std::max(opts.depth_ceiling_factor * g * g, 10.0 * opts.depth_floor);
        // far from the edge F → E − ε± (negative below the band, positive
        // above); extend the window until it ends on that branch
        while (std::signbit(f(ceiling)) != below && ceiling < 64.0 * lattice.xi) ceiling *= 2.0;

        const double ratio = std::pow(10.0, 1.0 / opts.brackets_per_decade);
        double lo = opts.depth_floor;
        double flo = f(lo);
        double hi = lo;
        bool bracketed = false;
        while (hi < ceiling) {
            hi = std::min(hi * ratio, ceiling);
            const double fhi = f(hi);
            if ((flo <= 0.0) != (fhi <= 0.0)) {
                bracketed = true;
                break;
            }
            lo = hi;
            flo = fhi;
        }
        if (!bracketed) continue;

        // bisection in log-depth; uniformly well conditioned down to the floor
        double ulo = std::log(lo), uhi = std::log(hi);
        int steps = 0;
        while (uhi - ulo > 1e-13 && steps < opts.max_steps) {
            const double umid = 0.5 * (ulo + uhi);
            const double fmid = f(std::exp(umid));
            if ((flo <= 0.0) == (fmid <= 0.0)) {
                ulo = umid;
                flo = fmid;
            } else {
                uhi = umid;
            }
            ++steps;
        }
        if (steps >= opts.max_steps)
            throw NumericError("find_bocs: root polishing did not converge in depth bracket [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "], sector " +
                               sector_name(sector));
        const double depth = std::exp(0.5 * (ulo + uhi));
        const double edge = below ? lattice.band_min() : lattice.band_max();
        const double energy = below ? edge - depth : edge + depth;

        BoundState b;
        b.sector = sector;
        b.energy = energy;
        b.kind = below ? BoundKind::boc_below : BoundKind::boc_above;
        const auto pf = pole_function(energy, sector, emitters, lattice, true);
        if (std::abs(pf.value) > 1e-10)
            throw NumericError("find_bocs: root not certified, |F| = " + std::to_string(std::abs(pf.value)));
        b.residue = 1.0 / pf.derivative.real();
        found.push_back(b);
    }
    std::sort(found.begin(), found.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return found;
}

// All BOCs on both band sides, sorted by energy. Note that the sector whose
// self-energy diverges at an edge binds a root of arbitrarily small depth for
// any g > 0; roots shallower than depth_floor are below the search resolution
// and are not reported.
inline std::vector<BoundState> find_bocs(const EmitterArray& emitters, const LatticeParams& lattice,
                                         const BocSearchOptions& opts = {}) {
    auto below = find_bocs_on_side(emitters, lattice, true, opts);
    auto above = find_bocs_on_side(emitters, lattice, false, opts);
    below.insert(below.end(), above.begin(), above.end());
    std::sort(below.begin(), below.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return below;
}

// The band side closest to the emitter energy; counting on this side follows
// the phase-diagram convention.
inline bool near_side_is_below(double delta, const LatticeParams& lattice) {
    return delta < lattice.omega0;
}

inline std::vector<BoundState> find_bocs_near_side(const EmitterArray& emitters,
                                                   const LatticeParams& lattice,
                                                   const BocSearchOptions& opts = {}) {
    return find_bocs_on_side(emitters, lattice, near_side_is_below(emitters.deltas[0], lattice), opts);
}

// BIC condition: Σ_sector(Δ) vanishes iff k(Δ)·x = mπ with m even (− sector)
// or m odd (+ sector). The defect |1 ± e^{−ikx}|/2 is used as the criterion
// so the test is independent of g. Returns at most one state, at E = Δ.
inline std::vector<BoundState> find_bics(const EmitterArray& emitters, const LatticeParams& lattice,
                                         double phase_tolerance = 2e-9) {
    if (emitters.size() != 2 || !emitters.identical())
        throw std::invalid_argument("find_bics: requires two identical emitters");
    const double delta = emitters.deltas[0];
    std::vector<BoundState> out;
    if (!lattice.in_band(delta)) return out;
    const int x = emitters.separation();
    const double k = wavevector_of_energy(delta, lattice);
    const complex phase = std::polar(1.0, -k * x);
    for (Sector sector : {Sector::plus, Sector::minus}) {
        const double defect = 0.5 * std::abs(1.0 + sector_sign(sector) * phase);
        if (defect <= phase_tolerance) {
            BoundState b;
            b.sector = sector;
            b.energy = delta;
            b.kind = BoundKind::bic;
            const auto pf = pole_function(delta, sector, emitters, lattice, true);
            b.residue = (1.0 / pf.derivative).real();
            out.push_back(b);
        }
    }
    return out;
}

// Residue 1/F'±(E_b) of a certified pole; the spectral weight of the bound
// state in the matter sector.
inline double residue(const BoundState& bound, const EmitterArray& emitters,
                      const LatticeParams& lattice) {
    const auto pf = pole_function(bound.energy, bound.sector, emitters, lattice, true);
    if (std::abs(pf.value) > 1e-10)
        throw std::invalid_argument("residue: F(E_b) != 0, pole not certified");
    if (std::abs(pf.derivative) < 1e-8)
        throw NumericError("residue: |F'| < 1e-8, degenerate pole");
    const complex r = 1.0 / pf.derivative;
    return r.real();
}

// ------------------------------ Bound profiles -------------------------------

// Normalized lattice eigenvector at the bound-state energy. Candidates within
// 1e−8 of E_b are ranked by matter weight, which separates a BIC cleanly from
// accidental band neighbours. The chain must be long enough that the photon
// tail has decayed at the boundary, otherwise no eigenvalue matches.
inline SingleExcitationState bound_profile(const BoundState& bound, const Eigensystem& es,
                                           const LatticeParams& lattice, const EmitterArray& emitters) {
    const int ne = static_cast<int>(emitters.size());
    const int nc = lattice.n_cavities;
    const double tol = 1e-8 * std::max(1.0, std::abs(bound.energy));
    int best = -1;
    double best_matter = -1.0;
    for (int q = 0; q < es.energies.size(); ++q) {
        if (std::abs(es.energies(q) - bound.energy) > tol) continue;
        const double matter = es.states.col(q).tail(ne).squaredNorm();
        if (matter > best_matter) {
            best_matter = matter;
            best = q;
        }
    }
    if (best < 0)
        throw NumericError("bound_profile: no eigenvector within 1e-8 of E_b = " +
                           std::to_string(bound.energy) + "; increase n_cavities");
    Eigen::VectorXd v = es.states.col(best);
    // deterministic sign: largest emitter amplitude positive
    int jmax = 0;
    for (int j = 1; j < ne; ++j)
        if (std::abs(v(nc + j)) > std::abs(v(nc + jmax))) jmax = j;
    if (v(nc + jmax) < 0.0) v = -v;
    SingleExcitationState s;
    s.photon_amps = v.head(nc).cast<complex>();
    s.emitter_amps = v.tail(ne).cast<complex>();
    return s;
}

inline SingleExcitationState bound_profile(const BoundState& bound, const LatticeParams& lattice,
                                           const EmitterArray& emitters) {
    const auto es = eigensystem(build_hamiltonian(lattice, emitters));
    return bound_profile(bound, es, lattice, emitters);
}

// Fills profiles for a batch of bound states with a single eigendecomposition.
inline void attach_profiles(std::vector<BoundState>& bounds, const LatticeParams& lattice,
                            const EmitterArray& emitters) {
    if (bounds.empty()) return;
    const auto es = eigensystem(build_hamiltonian(lattice, emitters));
    for (auto& b : bounds) b.profile = bound_profile(b, es, lattice, emitters);
}

// ------------------------------- Region scan --------------------------------

enum ScanFlag : std::uint8_t {
    scan_ok = 0,
    scan_edge = 1,   // Δ within the band-edge margin; count indeterminate
    scan_rwa = 2,    // g beyond the rotating-wave validity range
};

struct RegionScanResult {
    std::vector<double> delta_grid;
    std::vector<double> g_grid;
    std::vector<int> counts;           // row-major, delta index × g index
    std::vector<std::uint8_t> flags;   // ScanFlag bitmask per point
    int x{0};

    int count(std::size_t i_delta, std::size_t i_g) const {
        return counts[i_delta * g_grid.size() + i_g];
    }
    std::uint8_t flag(std::size_t i_delta, std::size_t i_g) const {
        return flags[i_delta * g_grid.size() + i_g];
    }
};

struct ScanBoundary {
    double delta;
    double g_first_one;   // smallest grid g with count >= 1 (NaN if none)
    double g_first_two;   // smallest grid g with count >= 2 (NaN if none)
};

// Near-side BOC count over a Δ-g grid. Pure per-point work, parallelized by
// index, deterministic for any worker count.
inline RegionScanResult region_scan(const std::vector<double>& delta_values,
                                    const std::vector<double>& g_values, int x,
                                    const LatticeParams& lattice_in, const BocSearchOptions& opts = {},
                                    int workers = 1, double edge_margin = 1e-3,
                                    double rwa_limit = 0.1) {
    if (x < 1) throw std::invalid_argument("region_scan: x must be >= 1");
    LatticeParams lattice = lattice_in;
    lattice.n_cavities = std::max(lattice.n_cavities, x + 2);
    for (double d : delta_values)
        if (!lattice.in_band(d))
            throw std::invalid_argument("region_scan: delta grid must lie inside the band");

    RegionScanResult res;
    res.delta_grid = delta_values;
    res.g_grid = g_values;
    res.x = x;
    const std::size_t total = delta_values.size() * g_values.size();
    res.counts.assign(total, 0);
    res.flags.assign(total, scan_ok);

    auto work = [&](std::size_t idx) {
        const std::size_t i = idx / g_values.size();
        const std::size_t j = idx % g_values.size();
        const double delta = delta_values[i];
        const double g = g_values[j];
        EmitterArray em;
        em.deltas = {delta, delta};
        em.g = g;
        em.positions = {0, x};
        res.counts[idx] = static_cast<int>(find_bocs_near_side(em, lattice, opts).size());
        std::uint8_t fl = scan_ok;
        if (2.0 * lattice.xi - std::abs(delta - lattice.omega0) < edge_margin) fl |= scan_edge;
        if (g > rwa_limit) fl |= scan_rwa;
        res.flags[idx] = fl;
    };

    const int nw = std::max(1, workers);
    if (nw == 1) {
        for (std::size_t idx = 0; idx < total; ++idx) work(idx);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int t = 0; t < nw; ++t)
            pool.emplace_back([&] {
                for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) work(idx);
            });
        for (auto& th : pool) th.join();
    }
    return res;
}

// First-transition boundaries along g for every Δ column.
inline std::vector<ScanBoundary> scan_boundaries(const RegionScanResult& scan) {
    std::vector<ScanBoundary> out;
    out.reserve(scan.delta_grid.size());
    for (std::size_t i = 0; i < scan.delta_grid.size(); ++i) {
        ScanBoundary b{scan.delta_grid[i], std::nan(""), std::nan("")};
        for (std::size_t j = 0; j < scan.g_grid.size(); ++j) {
            const int c = scan.count(i, j);
            if (c >= 1 && std::isnan(b.g_first_one)) b.g_first_one = scan.g_grid[j];
            if (c >= 2 && std::isnan(b.g_first_two)) {
                b.g_first_two = scan.g_grid[j];
                break;
            }
        }
        out.push_back(b);
    }
    return out;
}

}  // namespace bswg
