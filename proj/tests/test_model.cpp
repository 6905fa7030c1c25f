#include "bswg/model.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace bswg;
using Catch::Matchers::WithinAbs;

namespace {
LatticeParams unit_lattice(int n_cavities = 64) { return {0.0, 1.0, n_cavities, 4096}; }
}

TEST_CASE("dispersion at the band landmarks") {
    const auto lat = unit_lattice();
    CHECK_THAT(dispersion(0.0, lat), WithinAbs(-2.0, 1e-15));
    CHECK_THAT(dispersion(pi, lat), WithinAbs(2.0, 1e-15));
    CHECK_THAT(dispersion(pi / 2.0, lat), WithinAbs(0.0, 1e-15));
}

TEST_CASE("dispersion is even in k") {
    const auto lat = LatticeParams{0.3, 1.7, 16, 64};
    for (int i = 0; i <= 40; ++i) {
        const double k = -pi + 2.0 * pi * i / 40.0;
        CHECK(dispersion(k, lat) == dispersion(-k, lat));
    }
}

TEST_CASE("wavevector_of_energy inverts the dispersion on [0, pi]") {
    const auto lat = unit_lattice();
    CHECK_THAT(wavevector_of_energy(0.0, lat), WithinAbs(pi / 2.0, 1e-15));
    CHECK_THAT(wavevector_of_energy(-2.0, lat), WithinAbs(0.0, 1e-7));
    // the emitter energy used throughout the x = 31 runs
    const double delta = -2.0 * std::cos(30.0 * pi / 31.0);
    CHECK_THAT(wavevector_of_energy(delta, lat), WithinAbs(30.0 * pi / 31.0, 1e-12));

    for (double e : {-1.7, -0.4, 0.0, 0.9, 1.99}) {
        const double k = wavevector_of_energy(e, lat);
        CHECK(k >= 0.0);
        CHECK(k <= pi);
        CHECK_THAT(dispersion(k, lat), WithinAbs(e, 1e-12));
    }
    CHECK_THROWS_AS(wavevector_of_energy(2.5, lat), std::domain_error);
    CHECK_THROWS_AS(wavevector_of_energy(-2.0000001, lat), std::domain_error);
}

TEST_CASE("sector energies of identical emitters") {
    EmitterArray em;
    em.deltas = {1.9, 1.9};
    em.g = 0.05;
    em.positions = {10, 41};
    CHECK_THAT(sector_energy(em, Sector::plus), WithinAbs(1.9, 1e-15));
    CHECK_THAT(sector_energy(em, Sector::minus), WithinAbs(1.9, 1e-15));

    EmitterArray three;
    three.deltas = {1.0, 1.0, 1.0};
    three.g = 0.05;
    three.positions = {1, 2, 3};
    CHECK_THROWS_AS(sector_energy(three, Sector::plus), std::invalid_argument);
}

TEST_CASE("three-site chain eigenvalues") {
    const auto lat = LatticeParams{0.0, 1.0, 3, 16};
    const auto es = eigensystem(build_chain_hamiltonian(lat));
    REQUIRE(es.energies.size() == 3);
    CHECK_THAT(es.energies(0), WithinAbs(-std::sqrt(2.0), 1e-12));
    CHECK_THAT(es.energies(1), WithinAbs(0.0, 1e-12));
    CHECK_THAT(es.energies(2), WithinAbs(std::sqrt(2.0), 1e-12));
}

TEST_CASE("open-chain spectrum matches the analytic form") {
    const int n = 57;
    const auto lat = LatticeParams{0.2, 1.3, n, 16};
    const auto es = eigensystem(build_chain_hamiltonian(lat), false);
    const auto exact = oracle::open_chain_spectrum(n, 0.2, 1.3);
    for (int q = 0; q < n; ++q) CHECK_THAT(es.energies(q), WithinAbs(exact[q], 1e-10));
}

TEST_CASE("large chain fills the band") {
    const auto lat = LatticeParams{0.0, 1.0, 800, 16};
    const auto es = eigensystem(build_chain_hamiltonian(lat), false);
    CHECK(es.energies(0) > -2.0);
    CHECK(es.energies(799) < 2.0);
    CHECK_THAT(es.energies(0), WithinAbs(-2.0, 1e-4));
    CHECK_THAT(es.energies(799), WithinAbs(2.0, 1e-4));
}

TEST_CASE("hamiltonian assembly and hermiticity") {
    LatticeParams lat = unit_lattice(40);
    EmitterArray em;
    em.deltas = {1.2, 1.2};
    em.g = 0.07;
    em.positions = {4, 35};
    const auto h = build_hamiltonian(lat, em);
    REQUIRE(h.rows() == 42);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h(40, 4) == 0.07);
    CHECK(h(41, 35) == 0.07);
    CHECK(h(40, 40) == 1.2);
    CHECK(h(3, 4) == -1.0);

    em.positions = {4, 40};
    CHECK_THROWS_AS(build_hamiltonian(lat, em), std::invalid_argument);
    em.positions = {35, 4};
    CHECK_THROWS_AS(build_hamiltonian(lat, em), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(LatticeParams({0.0, -1.0, 10, 16}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LatticeParams({0.0, 1.0, 2, 16}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LatticeParams({0.0, 1.0, 10, 1}).validate(), std::invalid_argument);
}

TEST_CASE("state helpers stay normalized") {
    const auto s = sector_state(Sector::minus, 10);
    CHECK_THAT(s.squared_norm(), WithinAbs(1.0, 1e-12));
    const auto p = parity_state(ParityState::even2, 10);
    CHECK_THAT(p.squared_norm(), WithinAbs(1.0, 1e-12));
    const auto full = p.to_full();
    REQUIRE(full.size() == 13);
    const auto back = SingleExcitationState::from_full(full, 10);
    CHECK(back.emitter_amps.isApprox(p.emitter_amps));
}
