// oracles.hpp — Independent numerical routes used only by the tests:
// adaptive quadrature of the momentum integral, an η-extrapolated discrete
// sum for in-band self-energies, and the analytic open-chain spectrum.
// Everything here is deliberately written against the definitions, not the
// closed forms under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;
using complexd = std::complex<double>;

// ---------------------------- Adaptive Simpson -------------------------------

namespace detail {

template <typename F>
double simpson(const F& f, double a, double m, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, lm, m, fa, flm, fm);
    const double right = simpson(f, m, rm, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
double integrate(const F& f, double a, double b, double tol = 1e-13, int depth = 60) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return detail::adaptive(f, a, b, fa, fm, fb, detail::simpson(f, a, m, b, fa, fm, fb), tol, depth);
}

// ------------------------- Momentum-integral oracles --------------------------

// Out-of-band self-energy from the definition:
//   Σ±(E) = (g²/2π) ∫_{−π}^{π} (1 ± cos kx) / (E − ω0 + 2ξ cos k) dk
inline double sigma_outside_quadrature(double energy, int x, int sector_sign, double omega0,
                                       double xi, double g, double tol = 1e-13) {
    if (std::abs(energy - omega0) <= 2.0 * xi)
        throw std::invalid_argument("sigma_outside_quadrature: in-band energy");
    auto f = [&](double k) {
        return (1.0 + sector_sign * std::cos(k * x)) / (energy - omega0 + 2.0 * xi * std::cos(k));
    };
    // integrand is even in k
    return g * g / pi * integrate(f, 0.0, pi, tol);
}

// In-band self-energy from the definition, via the broadened discrete sum
//   Σ±(E, η) = (g²/N) Σ_m (1 ± cos k_m x) / (E − iη − ω_{k_m})
// with N large enough that the grid resolves η, Richardson-extrapolated
// η → 0 to remove the linear bias.
inline complexd sigma_in_band_sum(double energy, int x, int sector_sign, double omega0, double xi,
                                  double g, double eta, long n) {
    complexd acc(0.0, 0.0);
    for (long m = -n / 2 + 1; m <= n / 2; ++m) {
        const double k = 2.0 * pi * m / n;
        const double wk = omega0 - 2.0 * xi * std::cos(k);
        acc += (1.0 + sector_sign * std::cos(k * x)) / complexd(energy - wk, -eta);
    }
    return g * g * acc / static_cast<double>(n);
}

inline complexd sigma_in_band_extrapolated(double energy, int x, int sector_sign, double omega0,
                                           double xi, double g) {
    const long n = 1L << 22;
    const double eta = 1e-3;
    const complexd s1 = sigma_in_band_sum(energy, x, sector_sign, omega0, xi, g, eta, n);
    const complexd s2 = sigma_in_band_sum(energy, x, sector_sign, omega0, xi, g, 0.5 * eta, n);
    return 2.0 * s2 - s1;   // removes the O(η) bias
}

// ------------------------------ Chain spectrum -------------------------------

// Open chain of n sites: E_q = ω0 − 2ξ cos(qπ/(n+1)), q = 1..n (ascending in
// energy when sorted).
inline std::vector<double> open_chain_spectrum(int n, double omega0, double xi) {
    std::vector<double> e(n);
    for (int q = 1; q <= n; ++q) e[q - 1] = omega0 - 2.0 * xi * std::cos(q * pi / (n + 1));
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace oracle
