// chebyshev.hpp — Matrix-free application of the single-excitation
// Hamiltonian and a Chebyshev expansion of exp(−iHt). Fast path for chains
// too long to eigendecompose densely; agrees with the spectral propagator to
// the expansion tolerance.

#pragma once

#include "bswg/errors.hpp"
#include "bswg/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace bswg {

// Open chain + point-coupled emitters, applied without forming the matrix.
// Layout matches build_hamiltonian: cavities first, emitters appended.
struct SparseHamiltonian {
    double omega0{0.0};
    double xi{1.0};
    int n_cavities{0};
    std::vector<double> deltas;
    std::vector<int> positions;
    double g{0.0};

    static SparseHamiltonian from(const LatticeParams& lattice, const EmitterArray& emitters) {
        lattice.validate();
        emitters.validate(lattice);
        return {lattice.omega0, lattice.xi, lattice.n_cavities, emitters.deltas, emitters.positions,
                emitters.g};
    }

    int dim() const { return n_cavities + static_cast<int>(deltas.size()); }

    // y = H x
    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
        const int nc = n_cavities;
        y.resize(x.size());
        for (int n = 0; n < nc; ++n) {
            complex acc = omega0 * x(n);
            if (n > 0) acc -= xi * x(n - 1);
            if (n + 1 < nc) acc -= xi * x(n + 1);
            y(n) = acc;
        }
        for (std::size_t j = 0; j < deltas.size(); ++j) {
            const int row = nc + static_cast<int>(j);
            y(row) = deltas[j] * x(row) + g * x(positions[j]);
            y(positions[j]) += g * x(row);
        }
    }

    // Gershgorin bounds; strictly contain the spectrum.
    void spectral_bounds(double& lo, double& hi) const {
        lo = omega0 - 2.0 * xi;
        hi = omega0 + 2.0 * xi;
        for (std::size_t j = 0; j < deltas.size(); ++j) {
            lo = std::min({lo, omega0 - 2.0 * xi - std::abs(g), deltas[j] - std::abs(g)});
            hi = std::max({hi, omega0 + 2.0 * xi + std::abs(g), deltas[j] + std::abs(g)});
        }
    }
};

// One Chebyshev step: state ← exp(−iH·dt)·state.
//
//   exp(−iHt) = e^{−iat} [ J_0(bt) + 2 Σ_{m≥1} (−i)^m J_m(bt) T_m((H−a)/b) ]
//
// with [a−b, a+b] enclosing the spectrum. The Bessel tail is summed until
// its magnitude stays below `tol` for a few consecutive orders, so the
// truncation error per step is bounded by ~tol and the norm drift over a run
// stays at the same scale.
inline void chebyshev_step(const SparseHamiltonian& h, Eigen::VectorXcd& state, double dt,
                           double tol = 1e-14) {
    double lo, hi;
    h.spectral_bounds(lo, hi);
    const double a = 0.5 * (hi + lo);
    const double b = 0.5 * (hi - lo) * (1.0 + 1e-12) + 1e-300;
    const double z = b * dt;

    Eigen::VectorXcd tm_prev = state;                    // T_0 ψ
    Eigen::VectorXcd tm(state.size()), tmp(state.size());
    // T_1 = H̃ ψ
    h.apply(state, tm);
    tm = (tm - a * state) / b;

    Eigen::VectorXcd acc = std::cyl_bessel_j(0, z) * tm_prev;
    complex im_pow(0.0, -1.0);   // (−i)^m
    acc += 2.0 * std::cyl_bessel_j(1, z) * im_pow * tm;

    int quiet = 0;
    const int m_max = static_cast<int>(z) + 200 + static_cast<int>(40.0 * std::log10(1.0 / tol));
    for (int m = 2; m <= m_max; ++m) {
        // T_m = 2 H̃ T_{m−1} − T_{m−2}
        h.apply(tm, tmp);
        tmp = 2.0 * ((tmp - a * tm) / b) - tm_prev;
        tm_prev.swap(tm);
        tm.swap(tmp);
        im_pow *= complex(0.0, -1.0);
        const double coef = 2.0 * std::cyl_bessel_j(m, z);
        acc += coef * im_pow * tm;
        if (std::abs(coef) < tol) {
            if (++quiet >= 4 && m > z) break;
        } else {
            quiet = 0;
        }
    }
    const complex global = std::polar(1.0, -a * dt);
    state = global * acc;
}

}  // namespace bswg
