// green_function.hpp — Sector self-energies of two emitters on the cavity
// array, the spectral density, and the pole function F±(E) whose real zeros
// are the bound states.
//
// Conventions. The in-band wavevector is k(E) = acos[(ω0 − E)/2ξ], the
// principal branch of the dispersion, so that ω_{k(E)} = E. The retarded-type
// branch with Im Σ ≥ 0 (the E − i0⁺ prescription in the momentum sum) is used
// throughout:
//
//   Σ±(E)   = i J(E) (1 ± e^{−i k(E) x}),        |E − ω0| < 2ξ,
//   J(E)    = g² / sqrt(4ξ² − (E − ω0)²),
//
// which vanishes exactly at k(E) = mπ/x with m even (− sector) or m odd
// (+ sector). Outside the band the analytic continuation is real,
//
//   Σ±(E)   = −g² (1 ± e^{−κx}) / (2ξ sinh κ),          E < ω0 − 2ξ,
//   Σ±(E)   = +g² (1 ± (−1)^x e^{−κx}) / (2ξ sinh κ),   E > ω0 + 2ξ,
//
// with cosh κ = |E − ω0|/(2ξ). Both branches agree with the momentum sum
//   Σ±(E) = (g²/N_k) Σ_k (1 ± cos kx) / (E − i0⁺ − ω_k)
// in the N_k → ∞ limit; see self_energy_numeric for the discrete form.

#pragma once

#include "bswg/model.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace bswg {

enum class BandRegime { in_band, below_band, above_band };

inline BandRegime regime_of(double energy, const LatticeParams& lattice) {
    const double d = energy - lattice.omega0;
    if (d <= -2.0 * lattice.xi) return BandRegime::below_band;
    if (d >= 2.0 * lattice.xi) return BandRegime::above_band;
    return BandRegime::in_band;
}

// J(E) = g²/√(4ξ² − (E−ω0)²); diverges as an inverse square root at the edges.
inline double spectral_density(double energy, const LatticeParams& lattice, double g) {
    const double d = energy - lattice.omega0;
    const double s = (2.0 * lattice.xi - d) * (2.0 * lattice.xi + d);
    if (s <= 0.0) throw std::domain_error("spectral_density: energy outside the open band");
    return g * g / std::sqrt(s);
}

struct SelfEnergyValue {
    complex value;
    BandRegime regime;
    Sector sector;
};

// Σ±(E) for |E − ω0| < 2ξ, retarded-type branch (Im ≥ 0).
inline SelfEnergyValue self_energy_in_band(double energy, int x, Sector sector,
                                           const LatticeParams& lattice, double g) {
    if (x < 1) throw std::invalid_argument("self_energy_in_band: separation x must be >= 1");
    if (!lattice.in_band(energy))
        throw std::domain_error("self_energy_in_band: energy not strictly inside the band");
    const double j = spectral_density(energy, lattice, g);
    const double k = wavevector_of_energy(energy, lattice);
    const complex phase = std::polar(1.0, -k * x);
    const complex value = complex(0.0, j) * (1.0 + sector_sign(sector) * phase);
    return {value, BandRegime::in_band, sector};
}

// Σ±(E) for |E − ω0| > 2ξ: real analytic continuation. The near-edge
// cancellation in the (1 − e^{−κx}) combination is evaluated with expm1,
// which keeps the value accurate down to |E − ω0| − 2ξ ~ 1e−15.
inline SelfEnergyValue self_energy_outside(double energy, int x, Sector sector,
                                           const LatticeParams& lattice, double g) {
    if (x < 1) throw std::invalid_argument("self_energy_outside: separation x must be >= 1");
    const double d = energy - lattice.omega0;
    const double depth = std::abs(d) - 2.0 * lattice.xi;
    if (depth <= 0.0)
        throw std::domain_error("self_energy_outside: energy not strictly outside the band");
    const bool below = d < 0.0;
    // 2ξ sinh κ = sqrt((|d| − 2ξ)(|d| + 2ξ)), cosh κ = |d|/2ξ
    const double two_xi_sinh = std::sqrt(depth * (std::abs(d) + 2.0 * lattice.xi));
    const double kappa = std::acosh(std::abs(d) / (2.0 * lattice.xi));
    // sign in front of the exponential: ± below, ±(−1)^x above
    double s = sector_sign(sector);
    if (!below && (x % 2 != 0)) s = -s;
    const double bracket = (s > 0.0) ? 1.0 + std::exp(-kappa * x) : -std::expm1(-kappa * x);
    const double value = (below ? -1.0 : 1.0) * g * g * bracket / two_xi_sinh;
    return {complex(value, 0.0), below ? BandRegime::below_band : BandRegime::above_band, sector};
}

// Dispatch on the regime; band-edge energies are a domain error.
inline SelfEnergyValue self_energy(double energy, int x, Sector sector,
                                   const LatticeParams& lattice, double g) {
    if (lattice.in_band(energy)) return self_energy_in_band(energy, x, sector, lattice, g);
    return self_energy_outside(energy, x, sector, lattice, g);
}

// Discrete momentum-sum evaluation on the periodic grid k_m = 2πm/N_k,
// m = −N_k/2+1 .. N_k/2:
//
//   Σ±(E, η) = (g²/N_k) Σ_m (1 ± cos k_m x) / (E − iη − ω_{k_m}).
//
// Converges to the closed forms as N_k → ∞, η → 0⁺; Im Σ ≥ 0 for η > 0.
// η = 0 is permitted outside the band, where the sum is nonsingular.
inline complex self_energy_numeric(double energy, double eta, int x, Sector sector,
                                   const LatticeParams& lattice, double g) {
    if (eta < 0.0) throw std::invalid_argument("self_energy_numeric: eta must be >= 0");
    if (eta == 0.0 && lattice.in_band(energy))
        throw std::domain_error("self_energy_numeric: eta = 0 requires an out-of-band energy");
    const int nk = lattice.n_k;
    const double sgn = sector_sign(sector);
    complex sum(0.0, 0.0);
    for (int m = -nk / 2 + 1; m <= nk / 2; ++m) {
        const double k = 2.0 * pi * m / nk;
        const double wk = lattice.omega0 - 2.0 * lattice.xi * std::cos(k);
        const double numer = 1.0 + sgn * std::cos(k * x);
        sum += numer / complex(energy - wk, -eta);
    }
    return g * g * sum / static_cast<double>(nk);
}

// ------------------------------- Pole function -------------------------------

struct PoleFunctionValue {
    complex value;
    complex derivative;   // dF/dE, filled when requested
};

// F±(E) = E − ε± − Σ±(E). Real outside the band. The derivative is taken by
// central differences with step 1e−6·ξ, shrunk near a band edge so both
// stencil points stay in the same regime.
inline PoleFunctionValue pole_function(double energy, Sector sector, const EmitterArray& emitters,
                                       const LatticeParams& lattice, bool with_derivative = false) {
    if (emitters.size() != 2)
        throw std::invalid_argument("pole_function: requires exactly two emitters");
    const int x = emitters.separation();
    const double eps = sector_energy(emitters, sector);
    const auto sigma = self_energy(energy, x, sector, lattice, emitters.g);
    PoleFunctionValue out;
    out.value = energy - eps - sigma.value;
    out.derivative = complex(0.0, 0.0);
    if (with_derivative) {
        double h = 1e-6 * lattice.xi;
        const double edge_dist =
            std::min(std::abs(std::abs(energy - lattice.omega0) - 2.0 * lattice.xi), 2.0 * lattice.xi);
        if (edge_dist < 2.0 * h) h = std::max(0.25 * edge_dist, 1e-12 * lattice.xi);
        const auto sp = self_energy(energy + h, x, sector, lattice, emitters.g);
        const auto sm = self_energy(energy - h, x, sector, lattice, emitters.g);
        out.derivative = 1.0 - (sp.value - sm.value) / (2.0 * h);
    }
    return out;
}

}  // namespace bswg
