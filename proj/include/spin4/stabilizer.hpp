#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "spin4/evolution.hpp"
#include "spin4/hilbert.hpp"
#include "spin4/measurement.hpp"
#include "spin4/model.hpp"

namespace spin4 {

// ---------------------------------------------------------------------------
// Bell states and the stabilizer-circuit output

/// Bell states of the data pair, unit normalized.
inline DataVector bell_phi_plus() {
    DataVector v; v[0] = 1.0 / std::sqrt(2.0); v[3] = 1.0 / std::sqrt(2.0); return v;
}
inline DataVector bell_phi_minus() {
    DataVector v; v[0] = 1.0 / std::sqrt(2.0); v[3] = -1.0 / std::sqrt(2.0); return v;
}
inline DataVector bell_psi_plus() {
    DataVector v; v[1] = 1.0 / std::sqrt(2.0); v[2] = 1.0 / std::sqrt(2.0); return v;
}
inline DataVector bell_psi_minus() {
    DataVector v; v[1] = 1.0 / std::sqrt(2.0); v[2] = -1.0 / std::sqrt(2.0); return v;
}

/// Amplitudes of the four stable branches of the stabilizing circuit's
/// output state: Bell state x ancilla computational state, in the order
/// (Phi+, dd), (Psi+, du), (Phi-, ud), (Psi-, uu).
struct StabilizerAmplitudes {
    cplx a_plus{};
    cplx b_plus{};
    cplx a_minus{};
    cplx b_minus{};

    double norm_squared() const {
        return std::norm(a_plus) + std::norm(b_plus) + std::norm(a_minus) + std::norm(b_minus);
    }
};

/// |psi> = A+ |Phi+>|dd> + B+ |Psi+>|du> + A- |Phi->|ud> + B- |Psi->|uu>.
inline QuatroState stabilizer_state(const StabilizerAmplitudes& amps) {
    if (std::abs(amps.norm_squared() - 1.0) > 1e-12)
        throw std::invalid_argument("stabilizer_state: amplitudes must be normalized");
    QuatroState s;
    const auto add = [&s](cplx w, const DataVector& bell, int l) {
        if (w == cplx{}) return;
        const QuatroState part = tensor_pair_states(bell, pair_computational(l));
        for (std::size_t i = 0; i < 16; ++i) s[i] += w * part[i];
    };
    add(amps.a_plus, bell_phi_plus(), 1);
    add(amps.b_plus, bell_psi_plus(), 2);
    add(amps.a_minus, bell_phi_minus(), 3);
    add(amps.b_minus, bell_psi_minus(), 4);
    return s;
}

// ---------------------------------------------------------------------------
// the four stable scenarios

enum class Scenario { phi_plus, psi_plus, phi_minus, psi_minus };

inline const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::phi_plus: return "phi+";
        case Scenario::psi_plus: return "psi+";
        case Scenario::phi_minus: return "phi-";
        default: return "psi-";
    }
}

inline StabilizerAmplitudes scenario_amplitudes(Scenario s) {
    StabilizerAmplitudes a;
    switch (s) {
        case Scenario::phi_plus: a.a_plus = 1.0; break;
        case Scenario::psi_plus: a.b_plus = 1.0; break;
        case Scenario::phi_minus: a.a_minus = 1.0; break;
        case Scenario::psi_minus: a.b_minus = 1.0; break;
    }
    return a;
}

inline QuatroState scenario_state(Scenario s) { return stabilizer_state(scenario_amplitudes(s)); }

inline DataVector scenario_target(Scenario s) {
    switch (s) {
        case Scenario::phi_plus: return bell_phi_plus();
        case Scenario::psi_plus: return bell_psi_plus();
        case Scenario::phi_minus: return bell_phi_minus();
        default: return bell_psi_minus();
    }
}

/// Ancilla outcome (1..4) whose probability is one before any evolution.
inline int scenario_correct_outcome(Scenario s) {
    switch (s) {
        case Scenario::phi_plus: return 1;
        case Scenario::psi_plus: return 2;
        case Scenario::phi_minus: return 3;
        default: return 4;
    }
}

// ---------------------------------------------------------------------------
// closed-form branch coefficients
//
// The time-dependent weights of the surviving and error branches for each
// scenario, written directly in terms of the resonant eigenenergies. They
// exist for cross-validating the generic evolve-and-project path.

struct CoefficientFunctions {
    ModelParams params;

    explicit CoefficientFunctions(const ModelParams& p) : params(p) {
        if (!p.symmetric())
            throw std::invalid_argument("CoefficientFunctions: resonant case only");
    }

    // Phi+ scenario: correct-branch weight (alpha) and the uu error branch
    // (beta); built from the phases of levels 8, 10, 14.
    cplx alpha(double t) const {
        return ph(8, t) / 3.0 + ph(10, t) / 2.0 + ph(14, t) / 6.0;
    }
    cplx beta(double t) const {
        return (ph(8, t) / 3.0 - ph(10, t) / 2.0 + ph(14, t) / 6.0) / std::sqrt(2.0);
    }

    // Psi+ scenario: correct branch (gamma) and the ud error branch (mu)
    cplx gamma(double t) const { return ph(6, t) / 2.0 + ph(8, t) / 6.0 + ph(14, t) / 3.0; }
    cplx mu(double t) const { return -ph(6, t) / 2.0 + ph(8, t) / 6.0 + ph(14, t) / 3.0; }

    // Phi- scenario: T+/T- weights of the correct branch (chi) and of the
    // du error branch (nu). chi(0) = 4, nu(0) = 0.
    cplx chi_plus(double t) const { return 2.0 * ph(5, t) + ph(9, t) + ph(13, t); }
    cplx chi_minus(double t) const { return 2.0 * ph(7, t) + ph(11, t) + ph(15, t); }
    cplx nu_plus(double t) const { return 2.0 * ph(5, t) - ph(9, t) - ph(13, t); }
    cplx nu_minus(double t) const { return 2.0 * ph(7, t) - ph(11, t) - ph(15, t); }

private:
    cplx ph(int level, double t) const { return level_phase(level, t, params); }
};

/// Outcome probabilities (dd, du, ud, uu) from the closed forms; matches the
/// generic path to ~1e-12 pointwise.
inline std::array<double, 4> closed_form_probabilities(Scenario s, double t,
                                                       const ModelParams& p) {
    const CoefficientFunctions f(p);
    const auto h = analytic_spectrum(p);
    switch (s) {
        case Scenario::phi_plus: {
            const double pa = std::norm(f.alpha(t));
            const double pdu = (1.0 - std::cos((h[13] - h[7]) * t)) / 18.0;  // gap 3J
            return {0.5 * (1.0 + pa), pdu, pdu, std::norm(f.beta(t))};
        }
        case Scenario::psi_plus: {
            const double pdd = (1.0 - std::cos((h[13] - h[7]) * t)) / 9.0;
            return {pdd, std::norm(f.gamma(t)), std::norm(f.mu(t)), pdd};
        }
        case Scenario::phi_minus: {
            const double pdd = (1.0 - std::cos((h[14] - h[10]) * t)) / 8.0;  // gap 2J
            const double puu = (1.0 - std::cos((h[12] - h[8]) * t)) / 8.0;
            const double pud = (std::norm(f.chi_plus(t)) + std::norm(f.chi_minus(t))) / 32.0;
            const double pdu = (std::norm(f.nu_plus(t)) + std::norm(f.nu_minus(t))) / 32.0;
            return {pdd, pdu, pud, puu};
        }
        default:
            return {0.0, 0.0, 0.0, 1.0};
    }
}

/// Corrected closed form of the Phi+ conditional fidelity,
/// F = sqrt( (1 + 2 Re[alpha e^{i E t}] / (1+|alpha|^2)) / 2 ),
/// with E = E_16 in the lab frame and E = J in the rotating frame.
inline double phi_plus_fidelity_closed(double t, const ModelParams& p, Frame frame) {
    const CoefficientFunctions f(p);
    const auto h = analytic_spectrum(p);
    const double e16 = (frame == Frame::lab) ? h[15] : p.coupling;
    const cplx a = f.alpha(t);
    const double f2 =
        0.5 * (1.0 + 2.0 * (a * std::polar(1.0, e16 * t)).real() / (1.0 + std::norm(a)));
    return std::sqrt(std::max(f2, 0.0));
}

// ---------------------------------------------------------------------------
// scenario traces

struct ScenarioTrace {
    Scenario scenario;
    Frame frame;
    std::vector<double> times;                 // ns
    std::array<std::vector<double>, 4> prob;   // outcome l-1 -> p_l(t)
    std::vector<double> fidelity;              // conditional on the correct outcome
};

namespace detail {

/// Direction of the data branch for outcome l, continued through isolated
/// zeros of its probability: the first non-vanishing time derivative of
/// P_l psi(t), computed spectrally, gives the limiting state there.
inline std::optional<DataVector> branch_direction(const CVector<16>& coeff,
                                                  const CVector<16>& phases,
                                                  const std::array<double, 16>& energies,
                                                  int l) {
    const auto& basis = eigenbasis();
    for (int order = 0; order <= 3; ++order) {
        DataVector d;
        double scale = 0.0;
        for (std::size_t k = 0; k < 16; ++k) {
            cplx w = coeff[k] * phases[k];
            for (int r = 0; r < order; ++r) w *= cplx(0.0, -energies[k]);
            scale += std::abs(coeff[k]) * std::pow(std::abs(energies[k]), order);
            for (std::size_t j = 0; j < 4; ++j)
                d[j] += w * basis.columns(4 * j + static_cast<std::size_t>(l - 1), k);
        }
        const double n = norm(d);
        if (order == 0 ? n * n >= collapse_threshold : n > 1e-7 * scale)
            return normalized(d);
    }
    return std::nullopt;
}

}  // namespace detail

/// Evolve the scenario's stable state across the grid and record outcome
/// probabilities plus the fidelity of the correct-outcome branch against
/// the scenario's Bell state. At isolated instants where the correct
/// outcome has zero probability the branch is continued by its limit.
inline ScenarioTrace run_scenario(Scenario s, const TimeGrid& grid, const ModelParams& p,
                                  Frame frame) {
    if (!p.symmetric())
        throw std::invalid_argument("run_scenario: resonant case only");
    const auto times = grid.points();
    const auto& basis = eigenbasis();
    const auto energies = analytic_spectrum(p);
    const CVector<16> coeff = basis.expand(scenario_state(s));
    const DataVector target = scenario_target(s);
    const int correct = scenario_correct_outcome(s);

    ScenarioTrace trace;
    trace.scenario = s;
    trace.frame = frame;
    trace.times = times;
    for (auto& v : trace.prob) v.reserve(times.size());
    trace.fidelity.reserve(times.size());

    for (const double t : times) {
        const CVector<16> phases = detail::phase_factors(t, p);
        CVector<16> ct = coeff;
        for (std::size_t k = 0; k < 16; ++k) ct[k] *= phases[k];
        const QuatroState psi = basis.assemble(ct);

        for (int l = 1; l <= 4; ++l) {
            const DataVector branch = ancilla_branch(psi, l);
            double pr = 0.0;
            for (std::size_t j = 0; j < 4; ++j) pr += std::norm(branch[j]);
            trace.prob[static_cast<std::size_t>(l - 1)].push_back(pr);
        }

        auto dir = detail::branch_direction(coeff, phases, energies, correct);
        double f = std::numeric_limits<double>::quiet_NaN();
        if (dir) {
            DataVector d = *dir;
            if (frame == Frame::rotating) d = rotating_frame_data(d, t, p);
            f = std::abs(inner(target, d));
        }
        trace.fidelity.push_back(f);
    }
    return trace;
}

}  // namespace spin4
