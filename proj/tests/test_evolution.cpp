#include <doctest.h>

#include <cmath>
#include <random>

#include "spin4/evolution.hpp"
#include "spin4/expm.hpp"
#include "spin4/hilbert.hpp"
#include "spin4/model.hpp"
#include "spin4/stabilizer.hpp"

using namespace spin4;

namespace {
const ModelParams kParams = ModelParams::resonant(18.5, 0.8);

QuatroState random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    QuatroState v;
    for (std::size_t i = 0; i < 16; ++i) v[i] = cplx(g(rng), g(rng));
    return normalized(v);
}
}  // namespace

TEST_CASE("evolve at t = 0 is the identity") {
    std::mt19937_64 rng(3u);
    const QuatroState psi = random_state(rng);
    CHECK(max_abs(evolve(psi, 0.0, kParams) - psi) < 1e-15);
}

TEST_CASE("eigenstates pick up pure phases: e2 -> e^{-i omega t} e2") {
    const QuatroState e2 = eigenbasis().column(2);
    const double t = 0.731;
    const QuatroState evolved = evolve(e2, t, kParams);
    const cplx expected_phase = std::polar(1.0, -kParams.omega * t);
    CHECK(max_abs(evolved - expected_phase * e2) < 1e-13);
}

TEST_CASE("the psi- stable state evolves by a global phase only") {
    const QuatroState psi = scenario_state(Scenario::psi_minus);
    for (const double t : {0.3, 2.7, 11.0}) {
        const QuatroState evolved = evolve(psi, t, kParams);
        const cplx overlap = inner(psi, evolved);
        CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-13);  // no leakage out of the ray
    }
}

TEST_CASE("evolve rejects detuned parameters") {
    QuatroState psi;
    psi[0] = 1.0;
    CHECK_THROWS_AS(evolve(psi, 1.0, ModelParams{18.5, 18.0, 0.8}), std::invalid_argument);
    CHECK_THROWS_AS(propagator_matrix(1.0, ModelParams{18.5, 18.0, 0.8}),
                    std::invalid_argument);
}

TEST_CASE("evolution preserves the norm") {
    std::mt19937_64 rng(4u);
    const QuatroState psi = random_state(rng);
    for (const double t : {0.1, 1.0, 7.9, 15.3})
        CHECK(std::abs(norm(evolve(psi, t, kParams)) - 1.0) < 1e-12);
}

TEST_CASE("propagator at t = 0 is the identity, columns stay unit, W symmetric") {
    CHECK(max_abs(propagator_matrix(0.0, kParams).matrix - DenseOperator::identity()) < 1e-15);
    for (const double t : {0.37, 4.1, 9.6}) {
        const DenseOperator u = propagator_matrix(t, kParams).matrix;
        CHECK(max_abs(u - transpose(u)) < 1e-12);
        CHECK(unitarity_defect(u) < 1e-12);
        for (std::size_t c = 0; c < 16; ++c) {
            double n2 = 0.0;
            for (std::size_t r = 0; r < 16; ++r) n2 += std::norm(u(r, c));
            CHECK(std::abs(n2 - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("group law and energy conservation") {
    std::mt19937_64 rng(5u);
    const QuatroState psi = random_state(rng);
    const DenseOperator h = hamiltonian_matrix(kParams);
    const cplx e0 = inner(psi, h * psi);
    std::uniform_real_distribution<double> dist(0.0, revival_time(kParams));
    for (int rep = 0; rep < 20; ++rep) {
        const double t1 = dist(rng), t2 = dist(rng);
        CHECK(max_abs(evolve(evolve(psi, t1, kParams), t2, kParams) -
                      evolve(psi, t1 + t2, kParams)) < 1e-11);
        const QuatroState at = evolve(psi, t1, kParams);
        CHECK(std::abs(inner(at, h * at) - e0) < 1e-11);
    }
}

TEST_CASE("rotating frame at t = 0 is the identity") {
    std::mt19937_64 rng(6u);
    const QuatroState psi = random_state(rng);
    CHECK(max_abs(rotating_frame(psi, 0.0, kParams) - psi) == 0.0);
}

TEST_CASE("rotating frame equalizes the phi- branch weights: chi~+ = chi~-") {
    const CoefficientFunctions f(kParams);
    for (const double t : {0.2, 1.9, 5.5, 11.7}) {
        const cplx chit_p = std::polar(1.0, kParams.omega * t) * f.chi_plus(t);
        const cplx chit_m = std::polar(1.0, -kParams.omega * t) * f.chi_minus(t);
        CHECK(std::abs(chit_p - chit_m) < 1e-12);
        CHECK(std::abs(chit_p.imag()) < 1e-12);  // real in the rotating frame
    }
}

TEST_CASE("phi+ rotating-frame fidelity starts at one") {
    const ScenarioTrace tr = run_scenario(Scenario::phi_plus, TimeGrid{0.0, 1.0, 3},
                                          kParams, Frame::rotating);
    CHECK(tr.fidelity.front() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral propagator agrees with the scaling-and-squaring exponential") {
    std::mt19937_64 rng(8u);
    const DenseOperator h = hamiltonian_matrix(kParams);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * revival_time(kParams));
    for (int rep = 0; rep < 8; ++rep) {
        const double t = dist(rng);
        const DenseOperator u = propagator_matrix(t, kParams).matrix;
        const DenseOperator e = matrix_exponential(cplx(0.0, -t) * h);
        CHECK(max_abs(u - e) < 1e-9);
    }
}

TEST_CASE("matrix exponential basics") {
    CHECK(max_abs(matrix_exponential(CMatrix<4>{}) - CMatrix<4>::identity()) == 0.0);
    CMatrix<4> d;
    d(0, 0) = cplx(0.0, 1.3);
    d(1, 1) = cplx(0.0, -0.4);
    d(2, 2) = cplx(0.0, 2.9);
    d(3, 3) = cplx(0.0, 0.0);
    const CMatrix<4> e = matrix_exponential(d);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(e(i, i) - std::exp(d(i, i))) < 1e-11);
}

TEST_CASE("at t~ every ancilla-diagonal block of the propagator is diagonal") {
    const double tt = revival_time(kParams);
    const DenseOperator u = propagator_matrix(tt, kParams).matrix;
    for (std::size_t n = 0; n < 4; ++n)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t m = 0; m < 4; ++m)
                if (j != m) CHECK(std::abs(u(4 * j + n, 4 * m + n)) < 1e-12);
}

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS((TimeGrid{0.0, 1.0, 1}).points(), std::invalid_argument);
    CHECK_THROWS_AS((TimeGrid{2.0, 1.0, 10}).points(), std::invalid_argument);
    CHECK_THROWS_AS((TimeGrid{-1.0, 1.0, 10}).points(), std::invalid_argument);
    const auto pts = TimeGrid{0.0, 1.0, 5}.points();
    CHECK(pts.size() == 5);
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == doctest::Approx(1.0));
}
