#include "bswg/green_function.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

using namespace bswg;
using Catch::Matchers::WithinAbs;

namespace {

const LatticeParams lat{0.0, 1.0, 64, 1 << 18};

EmitterArray pair_at(double delta, double g, int x) {
    EmitterArray em;
    em.deltas = {delta, delta};
    em.g = g;
    em.positions = {0, x};
    return em;
}

}  // namespace

TEST_CASE("spectral density values and edge law") {
    CHECK_THAT(spectral_density(0.0, lat, 0.1), WithinAbs(0.005, 1e-15));
    CHECK_THAT(spectral_density(0.0, lat, 0.02), WithinAbs(2e-4, 1e-16));
    // inverse-square-root divergence toward the edges
    const double j1 = spectral_density(2.0 - 1e-6, lat, 0.02);
    const double j2 = spectral_density(2.0 - 4e-6, lat, 0.02);
    CHECK_THAT(j1 / j2, WithinAbs(2.0, 1e-3));
    CHECK(spectral_density(-2.0 + 1e-10, lat, 0.02) > 1.0e-4 / 2e-5);
    CHECK_THROWS_AS(spectral_density(2.0, lat, 0.02), std::domain_error);
    CHECK_THROWS_AS(spectral_density(-2.5, lat, 0.02), std::domain_error);
}

TEST_CASE("in-band self-energy against the momentum-sum oracle") {
    struct Case {
        double e;
        int x;
    };
    for (const Case c : {Case{0.0, 4}, Case{0.3, 31}, Case{-1.2, 5}}) {
        for (Sector s : {Sector::plus, Sector::minus}) {
            const double g = 0.02;
            const auto closed = self_energy_in_band(c.e, c.x, s, lat, g);
            const auto sum = oracle::sigma_in_band_extrapolated(c.e, c.x, s == Sector::plus ? 1 : -1,
                                                                0.0, 1.0, g);
            CAPTURE(c.e, c.x, sector_name(s));
            CHECK_THAT(closed.value.real(), WithinAbs(sum.real(), 2e-7));
            CHECK_THAT(closed.value.imag(), WithinAbs(sum.imag(), 2e-7));
            CHECK(closed.value.imag() >= 0.0);
        }
    }
}

TEST_CASE("in-band landmark values at the band center") {
    // E = 0 means k = π/2; for x = 4 the phase e^{-ikx} is 1, so the minus
    // sector decouples and the plus sector carries twice the spectral density.
    const double g = 0.02;
    const auto sp = self_energy_in_band(0.0, 4, Sector::plus, lat, g);
    const auto sm = self_energy_in_band(0.0, 4, Sector::minus, lat, g);
    CHECK_THAT(std::abs(sm.value), WithinAbs(0.0, 1e-18));
    CHECK_THAT(sp.value.imag(), WithinAbs(4e-4, 1e-15));
    CHECK_THAT(sp.value.real(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("sector sum rule: twice the single-emitter self-energy") {
    for (double e : {-1.3, 0.45, 1.9}) {
        for (int x : {3, 4, 31}) {
            const double g = 0.05;
            const auto sp = self_energy_in_band(e, x, Sector::plus, lat, g);
            const auto sm = self_energy_in_band(e, x, Sector::minus, lat, g);
            const complex total = sp.value + sm.value;
            const double j = spectral_density(e, lat, g);
            CHECK_THAT(total.real(), WithinAbs(0.0, 1e-15));
            CHECK_THAT(total.imag(), WithinAbs(2.0 * j, 1e-15));
        }
    }
}

TEST_CASE("interference zeros at k x = m pi with the sector parity rule") {
    const int x = 31;
    for (int m = 1; m < x; ++m) {
        const double e = -2.0 * std::cos(m * pi / x);
        const Sector vanishing = (m % 2 == 0) ? Sector::minus : Sector::plus;
        const auto s = self_energy_in_band(e, x, vanishing, lat, 0.02);
        CAPTURE(m, e);
        CHECK(std::abs(s.value) < 1e-12);
        const auto other = self_energy_in_band(e, x, sector_opposite(vanishing), lat, 0.02);
        CHECK(std::abs(other.value) > 1e-5);
    }
}

TEST_CASE("outside-band self-energy matches adaptive quadrature") {
    const double g = 0.02;
    for (double e : {-2.1, -2.5, 2.1, 2.000001, -4.0}) {
        for (int x : {4, 31}) {
            for (Sector s : {Sector::plus, Sector::minus}) {
                const auto closed = self_energy_outside(e, x, s, lat, g);
                const double exact =
                    oracle::sigma_outside_quadrature(e, x, s == Sector::plus ? 1 : -1, 0.0, 1.0, g);
                CAPTURE(e, x, sector_name(s));
                CHECK_THAT(closed.value.real(), WithinAbs(exact, 1e-10));
                CHECK_THAT(closed.value.imag(), WithinAbs(0.0, 1e-15));
            }
        }
    }
}

TEST_CASE("outside-band asymptotics and signs") {
    const double g = 0.02;
    const auto far_below = self_energy_outside(-1e6, 31, Sector::plus, lat, g);
    CHECK(far_below.value.real() < 0.0);
    CHECK_THAT(far_below.value.real() * 1e6, WithinAbs(-g * g, 1e-8));
    const auto far_above = self_energy_outside(1e6, 31, Sector::plus, lat, g);
    CHECK(far_above.value.real() > 0.0);
    CHECK_THROWS_AS(self_energy_outside(1.5, 31, Sector::plus, lat, g), std::domain_error);
    CHECK_THROWS_AS(self_energy_outside(2.0, 31, Sector::plus, lat, g), std::domain_error);
}

TEST_CASE("odd-x mirror: sigma_pm(-delta) = -sigma_mp(+delta) outside the band") {
    const double g = 0.02, d = 2.5;
    const int x = 31;
    for (Sector s : {Sector::plus, Sector::minus}) {
        const auto below = self_energy_outside(-d, x, s, lat, g);
        const auto above = self_energy_outside(+d, x, sector_opposite(s), lat, g);
        CHECK_THAT(below.value.real(), WithinAbs(-above.value.real(), 1e-10));
        const double quad = oracle::sigma_outside_quadrature(-d, x, s == Sector::plus ? 1 : -1,
                                                             0.0, 1.0, g);
        CHECK_THAT(below.value.real(), WithinAbs(quad, 1e-10));
    }
}

TEST_CASE("band-edge continuity of the non-divergent sector") {
    // For odd x the minus sector stays finite at the lower edge and the plus
    // sector at the upper edge; the continuation must join the in-band limit.
    const double g = 0.02;
    const int x = 31;
    const double in_low = self_energy_in_band(-2.0 + 1e-10, x, Sector::minus, lat, g).value.real();
    const double out_low = self_energy_outside(-2.0 - 1e-10, x, Sector::minus, lat, g).value.real();
    CHECK_THAT(in_low, WithinAbs(out_low, 1e-7));
    CHECK_THAT(out_low, WithinAbs(-g * g * x / 2.0, 2e-4 * g * g * x));

    const double in_high = self_energy_in_band(2.0 - 1e-10, x, Sector::plus, lat, g).value.real();
    const double out_high = self_energy_outside(2.0 + 1e-10, x, Sector::plus, lat, g).value.real();
    CHECK_THAT(in_high, WithinAbs(out_high, 1e-7));
}

TEST_CASE("discrete momentum sum: conventions and limits") {
    const double g = 1e-3;
    const int x = 31;
    CHECK_THROWS_AS(self_energy_numeric(0.3, -1e-6, x, Sector::plus, lat, g), std::invalid_argument);
    CHECK_THROWS_AS(self_energy_numeric(0.3, 0.0, x, Sector::plus, lat, g), std::domain_error);

    // η = 0 is fine outside the band and reproduces the closed form
    const complex out = self_energy_numeric(-2.2, 0.0, x, Sector::minus, lat, g);
    const auto closed_out = self_energy_outside(-2.2, x, Sector::minus, lat, g);
    CHECK_THAT(out.real(), WithinAbs(closed_out.value.real(), 1e-12));
    CHECK_THAT(out.imag(), WithinAbs(0.0, 1e-15));

    // retarded-type branch: nonnegative imaginary part for η > 0
    for (double e : {-2.5, -1.0, 0.0, 1.5, 2.5})
        CHECK(self_energy_numeric(e, 1e-4, x, Sector::plus, lat, g).imag() >= 0.0);

    // in-band match at the pinned oracle parameters
    const complex num = self_energy_numeric(0.3, 1e-5, x, Sector::plus, lat, g);
    const auto closed = self_energy_in_band(0.3, x, Sector::plus, lat, g);
    CHECK_THAT(std::abs(num - closed.value), WithinAbs(0.0, 1e-6));
}

TEST_CASE("pole function basics") {
    const double delta = -2.0 * std::cos(30.0 * pi / 31.0);
    for (double g : {0.01, 0.05, 0.1}) {
        const auto em = pair_at(delta, g, 31);
        const auto f = pole_function(delta, Sector::minus, em, lat);
        CAPTURE(g);
        CHECK(std::abs(f.value) < 1e-12);   // BIC: F_-(Δ) = 0 for any g
    }

    const auto em = pair_at(delta, 0.02, 31);
    // far outside the band F approaches E − ε
    const auto far = pole_function(-60.0, Sector::plus, em, lat);
    CHECK_THAT(far.value.real(), WithinAbs(-60.0 - delta, 1e-3));
    CHECK_THAT(far.value.imag(), WithinAbs(0.0, 1e-15));

    // derivative: central difference consistent under step refinement
    const auto d1 = pole_function(2.05, Sector::minus, em, lat, true);
    const double h = 1e-8;
    const auto fp = pole_function(2.05 + h, Sector::minus, em, lat);
    const auto fm = pole_function(2.05 - h, Sector::minus, em, lat);
    const double ref = (fp.value.real() - fm.value.real()) / (2.0 * h);
    CHECK_THAT(d1.derivative.real(), WithinAbs(ref, 1e-5 * std::abs(ref)));

    // uncoupled emitters: F' = 1, unit residue scale
    const auto em0 = pair_at(delta, 0.0, 31);
    const auto f0 = pole_function(2.3, Sector::plus, em0, lat, true);
    CHECK_THAT(f0.derivative.real(), WithinAbs(1.0, 1e-12));
}
