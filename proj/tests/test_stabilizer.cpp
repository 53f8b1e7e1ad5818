#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spin4/evolution.hpp"
#include "spin4/hilbert.hpp"
#include "spin4/measurement.hpp"
#include "spin4/model.hpp"
#include "spin4/stabilizer.hpp"

using namespace spin4;

namespace {
const ModelParams kLow = ModelParams::resonant(18.5, 0.08);
const ModelParams kHigh = ModelParams::resonant(18.5, 0.8);

CVector<16> expansion(Scenario s) { return eigenbasis().expand(scenario_state(s)); }
}  // namespace

TEST_CASE("phi+ stable state expands as (e8, e10, e14, e16) with fixed weights") {
    const CVector<16> c = expansion(Scenario::phi_plus);
    CVector<16> want;
    want[7] = std::sqrt(6.0) / 6.0;
    want[9] = 0.5;
    want[13] = std::sqrt(3.0) / 6.0;
    want[15] = std::sqrt(2.0) / 2.0;
    CHECK(max_abs(c - want) < 1e-15);
}

TEST_CASE("psi+ stable state expands as (e6, e8, e14)") {
    const CVector<16> c = expansion(Scenario::psi_plus);
    CVector<16> want;
    want[5] = -std::sqrt(2.0) / 2.0;
    want[7] = -std::sqrt(6.0) / 6.0;
    want[13] = std::sqrt(3.0) / 3.0;
    CHECK(max_abs(c - want) < 1e-15);
}

TEST_CASE("phi- stable state expands over six levels") {
    const CVector<16> c = expansion(Scenario::phi_minus);
    CVector<16> want;
    want[4] = -0.5;
    want[6] = 0.5;
    want[8] = -std::sqrt(2.0) / 4.0;
    want[10] = -std::sqrt(2.0) / 4.0;
    want[12] = -std::sqrt(2.0) / 4.0;
    want[14] = std::sqrt(2.0) / 4.0;
    CHECK(max_abs(c - want) < 1e-15);
}

TEST_CASE("psi- stable state is -e2") {
    const CVector<16> c = expansion(Scenario::psi_minus);
    CVector<16> want;
    want[1] = -1.0;
    CHECK(max_abs(c - want) < 1e-15);
}

TEST_CASE("stabilizer_state rejects unnormalized amplitudes") {
    StabilizerAmplitudes a;
    a.a_plus = 1.0;
    a.b_minus = 0.5;
    CHECK_THROWS_AS(stabilizer_state(a), std::invalid_argument);
}

TEST_CASE("general stabilizer state mixes the four branches coherently") {
    StabilizerAmplitudes a;
    a.a_plus = 0.5;
    a.b_plus = cplx(0.0, 0.5);
    a.a_minus = -0.5;
    a.b_minus = cplx(0.5, 0.0);
    const QuatroState s = stabilizer_state(a);
    CHECK(std::abs(norm(s) - 1.0) < 1e-12);
    const MeasurementResult r = measure(s);
    for (int l = 1; l <= 4; ++l) CHECK(r.probability(l) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("coefficient functions at t = 0") {
    const CoefficientFunctions f(kHigh);
    CHECK(std::abs(f.alpha(0.0) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(f.beta(0.0)) < 1e-14);
    CHECK(std::abs(f.gamma(0.0) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(f.mu(0.0)) < 1e-14);
    CHECK(std::abs(f.chi_plus(0.0) - cplx(4.0)) < 1e-14);
    CHECK(std::abs(f.chi_minus(0.0) - cplx(4.0)) < 1e-14);
    CHECK(std::abs(f.nu_plus(0.0)) < 1e-14);
    CHECK(std::abs(f.nu_minus(0.0)) < 1e-14);
}

TEST_CASE("phi+ lab-frame error probabilities follow (1 - cos 3Jt)/18") {
    const ScenarioTrace tr =
        run_scenario(Scenario::phi_plus, TimeGrid{0.0, 2.0 * revival_time(kHigh), 301},
                     kHigh, Frame::lab);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double expect =
            (1.0 - std::cos(3.0 * kHigh.coupling * tr.times[i])) / 18.0;
        CHECK(std::abs(tr.prob[1][i] - expect) < 1e-12);
        CHECK(std::abs(tr.prob[2][i] - expect) < 1e-12);
    }
}

TEST_CASE("psi+ collapsed state has fidelity one for every t") {
    const ScenarioTrace tr =
        run_scenario(Scenario::psi_plus, TimeGrid{0.0, 2.0 * revival_time(kHigh), 301},
                     kHigh, Frame::rotating);
    for (const double f : tr.fidelity) CHECK(std::abs(f - 1.0) < 1e-12);
}

TEST_CASE("phi- syndrome probabilities share the 2J gap") {
    const ScenarioTrace tr =
        run_scenario(Scenario::phi_minus, TimeGrid{0.0, 2.0 * revival_time(kHigh), 301},
                     kHigh, Frame::lab);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double expect = (1.0 - std::cos(2.0 * kHigh.coupling * tr.times[i])) / 8.0;
        CHECK(std::abs(tr.prob[0][i] - expect) < 1e-12);
        CHECK(std::abs(tr.prob[3][i] - expect) < 1e-12);
    }
}

TEST_CASE("closed forms: revival, extrema, trivial scenario") {
    SUBCASE("phi+ revives at t~") {
        const auto p = closed_form_probabilities(Scenario::phi_plus, revival_time(kHigh), kHigh);
        CHECK(std::abs(p[0] - 1.0) < 1e-12);
    }
    SUBCASE("psi+ reaches p_dd = p_uu = 2/9 when cos(3Jt) = -1") {
        const double t = std::numbers::pi / (3.0 * kHigh.coupling);
        const auto p = closed_form_probabilities(Scenario::psi_plus, t, kHigh);
        CHECK(std::abs(p[0] - 2.0 / 9.0) < 1e-12);
        CHECK(std::abs(p[3] - 2.0 / 9.0) < 1e-12);
    }
    SUBCASE("psi- is (0, 0, 0, 1) at any t") {
        const auto p = closed_form_probabilities(Scenario::psi_minus, 1.37, kHigh);
        CHECK(p[0] == 0.0);
        CHECK(p[1] == 0.0);
        CHECK(p[2] == 0.0);
        CHECK(p[3] == 1.0);
    }
}

TEST_CASE("closed form matches the generic path on both presets") {
    for (const ModelParams& p : {kLow, kHigh}) {
        const ScenarioTrace traces[] = {
            run_scenario(Scenario::phi_plus, TimeGrid{0.0, 2.0 * revival_time(p), 401}, p,
                         Frame::lab),
            run_scenario(Scenario::psi_plus, TimeGrid{0.0, 2.0 * revival_time(p), 401}, p,
                         Frame::lab),
            run_scenario(Scenario::phi_minus, TimeGrid{0.0, 2.0 * revival_time(p), 401}, p,
                         Frame::lab),
            run_scenario(Scenario::psi_minus, TimeGrid{0.0, 2.0 * revival_time(p), 401}, p,
                         Frame::lab)};
        for (const auto& tr : traces)
            for (std::size_t i = 0; i < tr.times.size(); ++i) {
                const auto cf = closed_form_probabilities(tr.scenario, tr.times[i], p);
                for (std::size_t l = 0; l < 4; ++l)
                    CHECK(std::abs(cf[l] - tr.prob[l][i]) < 1e-12);
            }
    }
}

TEST_CASE("every scenario is stable at t = 0 and revives at t~") {
    for (const Scenario s : {Scenario::phi_plus, Scenario::psi_plus, Scenario::phi_minus,
                             Scenario::psi_minus}) {
        const int l = scenario_correct_outcome(s);
        CHECK(std::abs(measure(scenario_state(s)).probability(l) - 1.0) < 1e-13);
        const QuatroState revived = evolve(scenario_state(s), revival_time(kHigh), kHigh);
        CHECK(std::abs(measure(revived).probability(l) - 1.0) < 1e-9);
    }
}

TEST_CASE("rotating-frame traces scale exactly with the coupling") {
    for (const Scenario s : {Scenario::phi_plus, Scenario::psi_plus, Scenario::phi_minus,
                             Scenario::psi_minus}) {
        const ScenarioTrace a = run_scenario(
            s, TimeGrid{0.0, 2.0 * revival_time(kLow), 251}, kLow, Frame::rotating);
        const ScenarioTrace b = run_scenario(
            s, TimeGrid{0.0, 2.0 * revival_time(kHigh), 251}, kHigh, Frame::rotating);
        for (std::size_t i = 0; i < a.times.size(); ++i) {
            CHECK(std::abs(a.times[i] - 10.0 * b.times[i]) < 1e-9);
            for (std::size_t l = 0; l < 4; ++l)
                CHECK(std::abs(a.prob[l][i] - b.prob[l][i]) < 1e-12);
            CHECK(std::abs(a.fidelity[i] - b.fidelity[i]) < 1e-12);
        }
    }
}

TEST_CASE("phi- rotating-frame fidelity is one everywhere, including the zero-probability instant") {
    for (const ModelParams& p : {kLow, kHigh}) {
        const ScenarioTrace tr = run_scenario(
            Scenario::phi_minus, TimeGrid{0.0, 2.0 * revival_time(p), 2001}, p, Frame::rotating);
        // grid point 500 sits at t~/2 where the correct outcome is impossible
        CHECK(tr.prob[2][500] < collapse_threshold);
        for (const double f : tr.fidelity) {
            REQUIRE(std::isfinite(f));
            CHECK(std::abs(f - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("lab-frame phi- fidelity oscillates while probabilities stay frame-independent") {
    const TimeGrid grid{0.0, 2.0 * revival_time(kHigh), 201};
    const ScenarioTrace lab = run_scenario(Scenario::phi_minus, grid, kHigh, Frame::lab);
    const ScenarioTrace rot = run_scenario(Scenario::phi_minus, grid, kHigh, Frame::rotating);
    for (std::size_t l = 0; l < 4; ++l)
        for (std::size_t i = 0; i < grid.samples; ++i)
            CHECK(lab.prob[l][i] == doctest::Approx(rot.prob[l][i]).epsilon(1e-14));
    double minf = 1.0;
    for (const double f : lab.fidelity) minf = std::min(minf, f);
    CHECK(minf < 0.9);  // the 2 omega beat takes the lab-frame overlap well below one
}

TEST_CASE("scenario names and targets are consistent") {
    CHECK(scenario_name(Scenario::phi_plus) == std::string("phi+"));
    CHECK(scenario_correct_outcome(Scenario::psi_plus) == 2);
    CHECK(std::abs(inner(scenario_target(Scenario::psi_minus), bell_psi_minus()) - cplx(1.0)) <
          1e-15);
}
