#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "spin4/hilbert.hpp"
#include "spin4/linalg.hpp"

namespace spin4 {

/// Outcomes below this probability are reported as impossible; the collapsed
/// state would be numeric noise.
inline constexpr double collapse_threshold = 1e-14;

/// Projective measurement of the ancilla pair in its computational basis.
/// Outcome l = 1..4 <-> (dd, du, ud, uu).
struct MeasurementResult {
    std::array<double, 4> probabilities{};
    std::array<std::optional<DataVector>, 4> collapsed;  // normalized data states

    double probability(int l) const { return probabilities[static_cast<std::size_t>(l - 1)]; }
    const std::optional<DataVector>& collapsed_state(int l) const {
        return collapsed[static_cast<std::size_t>(l - 1)];
    }
};

/// P_l = I^(12) x |c_l><c_l|: diagonal 0/1 matrices in computational
/// coordinates, idempotent, mutually orthogonal, summing to the identity.
inline std::array<DenseOperator, 4> ancilla_projectors() {
    std::array<DenseOperator, 4> p;
    for (std::size_t l = 0; l < 4; ++l)
        for (std::size_t j = 0; j < 4; ++j) p[l](4 * j + l, 4 * j + l) = 1.0;
    return p;
}

/// Unnormalized data branch for outcome l (1..4): the four amplitudes with
/// ancilla index l-1. ||branch||^2 is the outcome probability.
inline DataVector ancilla_branch(const QuatroState& state, int l) {
    if (l < 1 || l > 4) throw std::invalid_argument("ancilla outcome must be 1..4");
    DataVector d;
    for (std::size_t j = 0; j < 4; ++j)
        d[j] = state[4 * j + static_cast<std::size_t>(l - 1)];
    return d;
}

inline MeasurementResult measure(const QuatroState& state) {
    if (std::abs(norm(state) - 1.0) > 1e-9)
        throw std::invalid_argument("measure: state must be normalized");
    MeasurementResult r;
    for (int l = 1; l <= 4; ++l) {
        const DataVector branch = ancilla_branch(state, l);
        double p = 0.0;
        for (std::size_t j = 0; j < 4; ++j) p += std::norm(branch[j]);
        r.probabilities[static_cast<std::size_t>(l - 1)] = p;
        if (p >= collapse_threshold) {
            DataVector d;
            const double inv = 1.0 / std::sqrt(p);
            for (std::size_t j = 0; j < 4; ++j) d[j] = branch[j] * inv;
            r.collapsed[static_cast<std::size_t>(l - 1)] = d;
        }
    }
    return r;
}

/// Global-phase-invariant overlap |<target|state>| of two normalized states.
inline double fidelity(const DataVector& state, const DataVector& target) {
    if (std::abs(norm(state) - 1.0) > 1e-9 || std::abs(norm(target) - 1.0) > 1e-9)
        throw std::invalid_argument("fidelity: both states must be normalized");
    return std::abs(inner(target, state));
}

}  // namespace spin4
