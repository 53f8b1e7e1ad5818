#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spin4/hilbert.hpp"
#include "spin4/linalg.hpp"

namespace spin4 {

/// Model parameters. All frequencies are angular frequencies in rad/ns and
/// hbar = 1, so a physical exchange strength of 800 MHz enters as 0.8 rad/ns
/// and energies are rad/ns as well.
struct ModelParams {
    double omega;        // data-qubit Zeeman frequency
    double omega_tilde;  // ancilla Zeeman frequency
    double coupling;     // exchange strength J >= 0

    double delta_omega() const { return omega - omega_tilde; }
    bool symmetric() const { return delta_omega() == 0.0; }

    static ModelParams resonant(double omega, double coupling) {
        return ModelParams{omega, omega, coupling};
    }
};

inline void validate(const ModelParams& p) {
    if (!(std::isfinite(p.omega) && std::isfinite(p.omega_tilde) && std::isfinite(p.coupling)))
        throw std::invalid_argument("model parameters must be finite");
    if (p.coupling < 0.0) throw std::invalid_argument("coupling must be non-negative");
}

/// Interval after which every coupling-dependent phase returns to unity.
inline double revival_time(const ModelParams& p) {
    if (p.coupling <= 0.0) throw std::invalid_argument("revival time requires coupling > 0");
    return 2.0 * std::numbers::pi / p.coupling;
}

// ---------------------------------------------------------------------------
// operator construction

/// Spin-1/2 component (axis 0,1,2 = x,y,z) acting on one of the four slots
/// in the order (Q1, Q2, Qa, Qb).
inline DenseOperator spin_component(int slot, int axis) {
    if (slot < 0 || slot > 3 || axis < 0 || axis > 2)
        throw std::invalid_argument("spin_component: slot 0..3, axis 0..2");
    CMatrix<2> s;
    switch (axis) {
        case 0: s(0, 1) = 0.5; s(1, 0) = 0.5; break;
        case 1: s(0, 1) = cplx(0.0, -0.5); s(1, 0) = cplx(0.0, 0.5); break;
        default: s(0, 0) = -0.5; s(1, 1) = 0.5; break;  // |down> has m = -1/2
    }
    const CMatrix<2> id2 = CMatrix<2>::identity();
    const CMatrix<2>& a = (slot == 0) ? s : id2;
    const CMatrix<2>& b = (slot == 1) ? s : id2;
    const CMatrix<2>& c = (slot == 2) ? s : id2;
    const CMatrix<2>& d = (slot == 3) ? s : id2;
    return kron(kron(a, b), kron(c, d));
}

/// z-component of total spin J_z (diagonal: the magnetization).
inline DenseOperator total_sz() {
    DenseOperator m;
    for (std::size_t i = 0; i < 16; ++i) m(i, i) = computational_magnetization(i);
    return m;
}

/// (S^[1]+S^[2])^2 for the data pair or (S^[a]+S^[b])^2 for the ancillas.
inline DenseOperator pair_spin_squared(bool data_pair) {
    const int s0 = data_pair ? 0 : 2;
    const int s1 = data_pair ? 1 : 3;
    DenseOperator r;
    for (int axis = 0; axis < 3; ++axis) {
        const DenseOperator sum = spin_component(s0, axis) + spin_component(s1, axis);
        r = r + sum * sum;
    }
    return r;
}

/// H = omega (Sz1+Sz2) + omega~ (Sza+Szb) + J (S1+S2).(Sa+Sb),
/// in four-qubit computational coordinates. Hermitian, traceless.
inline DenseOperator hamiltonian_matrix(const ModelParams& p) {
    validate(p);
    DenseOperator h = cplx(p.omega) * (spin_component(0, 2) + spin_component(1, 2)) +
                      cplx(p.omega_tilde) * (spin_component(2, 2) + spin_component(3, 2));
    for (int d = 0; d < 2; ++d)
        for (int a = 2; a < 4; ++a)
            for (int axis = 0; axis < 3; ++axis)
                h = h + cplx(p.coupling) * (spin_component(d, axis) * spin_component(a, axis));
    return h;
}

// ---------------------------------------------------------------------------
// analytic spectrum (resonant case)

/// Eigenenergies h_1..h_16 of the symmetric Hamiltonian, ordered by the basis
/// index k of the eigenbasis table (not by energy, so degenerate levels keep
/// a stable order).
inline std::array<double, 16> analytic_spectrum(const ModelParams& p) {
    validate(p);
    if (!p.symmetric())
        throw std::invalid_argument("analytic_spectrum: detuned case has no analytic diagonal");
    const double w = p.omega;
    const double j = p.coupling;
    return {0.0,     w,     0.0,    -w,
            w,       0.0,   -w,     -2.0 * j,
            w - j,   -j,    -w - j, 2.0 * w + j,
            w + j,   j,     -w + j, -2.0 * w + j};
}

/// Every resonant level is E = zeeman * omega + exchange * J with small
/// integer coefficients; keeping them split makes phases like e^{-iEt}
/// computable as exact integer multiples of the rounded products omega*t
/// and J*t, so Zeeman phases cancel exactly within a magnetization sector.
struct EnergySplit {
    int zeeman;    // m_j
    int exchange;  // [ j(j+1) - s12(s12+1) - sab(sab+1) ] / 2, always integer here
};

inline EnergySplit energy_split(const EigenQuantumNumbers& q) {
    const auto casimir = [](int s) { return s * (s + 1); };
    const int twice =
        casimir(q.total_j) - casimir(q.data_pair_spin) - casimir(q.ancilla_pair_spin);
    return {q.total_m, twice / 2};
}

/// Spectrum from total-spin quantum numbers; independent route used to
/// cross-check the table above.
inline double energy_from_quantum_numbers(const EigenQuantumNumbers& q, const ModelParams& p) {
    const EnergySplit s = energy_split(q);
    return p.omega * s.zeeman + p.coupling * s.exchange;
}

// ---------------------------------------------------------------------------
// detuned case, expressed in eigenbasis coordinates

/// H in the e-basis for arbitrary detuning delta = omega - omega~. The
/// diagonal carries the shifted energies; the only non-zero off-diagonal
/// elements couple (8,10), (10,14), (9,13) and (11,15) (1-based indices),
/// so mixing stays inside the blocks {8,10,14}, {9,13}, {11,15}.
inline DenseOperator detuned_hamiltonian_elements(const ModelParams& p) {
    validate(p);
    const double w = p.omega;
    const double j = p.coupling;
    const double dw = p.delta_omega();

    std::array<double, 16> diag = {0.0,
                                   w - dw,
                                   0.0,
                                   -(w - dw),
                                   w,
                                   0.0,
                                   -w,
                                   -2.0 * j,
                                   (w - 0.5 * dw) - j,
                                   -j,
                                   -(w - 0.5 * dw) - j,
                                   2.0 * w - dw + j,
                                   (w - 0.5 * dw) + j,
                                   j,
                                   -(w - 0.5 * dw) + j,
                                   -2.0 * w + dw + j};

    DenseOperator h;
    for (std::size_t k = 0; k < 16; ++k) h(k, k) = diag[k];

    const auto set = [&h](int k1, int k2, double v) {  // 1-based pairs
        h(static_cast<std::size_t>(k1 - 1), static_cast<std::size_t>(k2 - 1)) = v;
        h(static_cast<std::size_t>(k2 - 1), static_cast<std::size_t>(k1 - 1)) = v;
    };
    set(8, 10, std::sqrt(6.0) / 3.0 * dw);
    set(9, 13, 0.5 * dw);
    set(10, 14, std::sqrt(3.0) / 3.0 * dw);
    set(11, 15, 0.5 * dw);
    return h;
}

}  // namespace spin4
