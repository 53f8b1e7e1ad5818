#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spin4/evolution.hpp"
#include "spin4/hilbert.hpp"
#include "spin4/measurement.hpp"
#include "spin4/model.hpp"

namespace spin4 {

// ---------------------------------------------------------------------------
// measurement-probability surfaces for computational ancilla preparations

/// p_l(t) traces for data state alpha and ancilla prepared in c_n: the
/// probability of ancilla outcome l after evolving for t and projecting.
struct GateScan {
    int ancilla_index = 1;  // n
    std::vector<double> times;
    std::array<std::vector<double>, 4> prob;  // outcome l-1
};

inline GateScan probability_surface(const DataVector& alpha, int n, const TimeGrid& grid,
                                    const ModelParams& p) {
    if (n < 1 || n > 4) throw std::invalid_argument("ancilla index must be 1..4");
    if (std::abs(norm(alpha) - 1.0) > 1e-9)
        throw std::invalid_argument("probability_surface: alpha must be normalized");
    if (!p.symmetric())
        throw std::invalid_argument("probability_surface: resonant case only");

    const QuatroState psi0 = tensor_pair_states(alpha, pair_computational(n));
    const auto& basis = eigenbasis();
    const CVector<16> coeff = basis.expand(psi0);

    GateScan scan;
    scan.ancilla_index = n;
    scan.times = grid.points();
    for (auto& v : scan.prob) v.reserve(scan.times.size());

    for (const double t : scan.times) {
        const CVector<16> phases = detail::phase_factors(t, p);
        CVector<16> ct = coeff;
        for (std::size_t k = 0; k < 16; ++k) ct[k] *= phases[k];
        const QuatroState psi = basis.assemble(ct);
        for (int l = 1; l <= 4; ++l) {
            const DataVector branch = ancilla_branch(psi, l);
            double pr = 0.0;
            for (std::size_t j = 0; j < 4; ++j) pr += std::norm(branch[j]);
            scan.prob[static_cast<std::size_t>(l - 1)].push_back(pr);
        }
    }
    return scan;
}

// ---------------------------------------------------------------------------
// unitarity constraint

/// max over (m, m', l) of | sum_j W*_{jl-m'n} W_{jl-mn} - delta_mm' delta_ln |
/// for the propagator at time t. Zero exactly when projecting after t keeps
/// the ancilla-n data map unitary (and confined to l = n).
inline double unitarity_constraint(int n, double t, const ModelParams& p) {
    if (n < 1 || n > 4) throw std::invalid_argument("ancilla index must be 1..4");
    const DenseOperator u = propagator_matrix(t, p).matrix;
    const std::size_t nn = static_cast<std::size_t>(n - 1);
    double worst = 0.0;
    for (std::size_t l = 0; l < 4; ++l)
        for (std::size_t m = 0; m < 4; ++m)
            for (std::size_t mp = 0; mp < 4; ++mp) {
                cplx s = 0.0;
                for (std::size_t j = 0; j < 4; ++j)
                    s += std::conj(u(4 * j + l, 4 * mp + nn)) * u(4 * j + l, 4 * m + nn);
                const double want = (m == mp && l == nn) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(s - want));
            }
    return worst;
}

// ---------------------------------------------------------------------------
// gate extraction at the revival time

/// Two-qubit phase gate certified by the ancilla measurement: the data map
/// U^n_{jm} = W_{jn-mn}(t~) obtained when the ancillas are prepared in c_n
/// and measured as c_n at t~ = 2 pi / J.
struct DataGate {
    CMatrix<4> matrix;
    int ancilla_index = 1;
    double extraction_time = 0.0;  // ns
};

inline DataGate extract_gate(int n, const ModelParams& p) {
    if (n < 1 || n > 4) throw std::invalid_argument("ancilla index must be 1..4");
    const double tt = revival_time(p);
    const double dev = unitarity_constraint(n, tt, p);
    if (dev > 1e-9)
        throw std::runtime_error("extract_gate: unitarity constraint violated at t~ (deviation " +
                                 std::to_string(dev) + ")");
    const DenseOperator u = propagator_matrix(tt, p).matrix;
    const std::size_t nn = static_cast<std::size_t>(n - 1);
    DataGate g;
    g.ancilla_index = n;
    g.extraction_time = tt;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t m = 0; m < 4; ++m) g.matrix(j, m) = u(4 * j + nn, 4 * m + nn);
    return g;
}

/// The closed form the extraction reproduces: at t~ the propagator is
/// exp(-i omega Jz t~), so U^n = diag over data states of
/// e^{-i theta (m_data + m_anc(n))} with theta = 2 pi omega / J.
inline CMatrix<4> expected_gate(int n, const ModelParams& p) {
    const double theta = 2.0 * std::numbers::pi * p.omega / p.coupling;
    CMatrix<4> g;
    for (std::size_t j = 0; j < 4; ++j) {
        const int m = pair_magnetization(j) + pair_magnetization(static_cast<std::size_t>(n - 1));
        g(j, j) = std::polar(1.0, -theta * m);
    }
    return g;
}

// ---------------------------------------------------------------------------
// decomposition identities for U^2 = diag(e^{i theta}, 1, 1, e^{-i theta})

/// NOT on the second qubit conditioned on the first being |down>.
inline CMatrix<4> controlled_not_on_down() {
    CMatrix<4> c;
    c(0, 1) = 1.0;
    c(1, 0) = 1.0;
    c(2, 2) = 1.0;
    c(3, 3) = 1.0;
    return c;
}

/// Rotation of angle theta about z applied to the first qubit conditioned on
/// the second being |up>: diag(1, e^{i theta}, 1, e^{-i theta}).
inline CMatrix<4> controlled_rz(double theta) {
    CMatrix<4> c;
    c(0, 0) = 1.0;
    c(1, 1) = std::polar(1.0, theta);
    c(2, 2) = 1.0;
    c(3, 3) = std::polar(1.0, -theta);
    return c;
}

/// Rz(beta) x Rz(beta) = diag(e^{-i beta}, 1, 1, e^{i beta}).
inline CMatrix<4> rz_product(double beta) {
    CMatrix<2> rz;
    rz(0, 0) = std::polar(1.0, -0.5 * beta);
    rz(1, 1) = std::polar(1.0, 0.5 * beta);
    return kron(rz, rz);
}

struct DecompositionReport {
    double controlled_chain_deviation = 0.0;  // || C0 CU C0 - U2 ||_max
    double rz_product_deviation = 0.0;        // || Rz(b) x Rz(b) - U2 ||_max
    double involution_deviation = 0.0;        // || C0^2 - I ||_max
    bool ok(double tol = 1e-12) const {
        return controlled_chain_deviation < tol && rz_product_deviation < tol &&
               involution_deviation < tol;
    }
};

inline DecompositionReport decomposition_check(const ModelParams& p) {
    const double theta = 2.0 * std::numbers::pi * p.omega / p.coupling;
    const CMatrix<4> u2 = extract_gate(2, p).matrix;
    const CMatrix<4> c0 = controlled_not_on_down();
    DecompositionReport r;
    r.controlled_chain_deviation = max_abs(c0 * controlled_rz(theta) * c0 - u2);
    r.rz_product_deviation = max_abs(rz_product(-theta) - u2);
    r.involution_deviation = max_abs(c0 * c0 - CMatrix<4>::identity());
    return r;
}

// ---------------------------------------------------------------------------
// analytic witness: the worked |dd> x |du> example

/// Checks the hand construction for the initial state |dd> x |du>:
/// eigenbasis expansion -(1/2)(e11 - e15 + sqrt(2) e7), a pure global phase
/// e^{i omega t~} after evolving to t~, certainty of the du outcome there,
/// and the resulting U^2 first row.
struct GateWitnessReport {
    double expansion_deviation = 0.0;
    double global_phase_deviation = 0.0;
    double p_du_deviation = 0.0;
    double u2_first_entry_deviation = 0.0;
    double u2_first_row_offdiag = 0.0;
    bool ok(double tol = 1e-9) const {
        return expansion_deviation < tol && global_phase_deviation < tol &&
               p_du_deviation < tol && u2_first_entry_deviation < tol &&
               u2_first_row_offdiag < tol;
    }
};

inline GateWitnessReport analytic_gate_witness(const ModelParams& p) {
    const auto& basis = eigenbasis();
    const QuatroState psi0 = tensor_pair_states(pair_computational(1), pair_computational(2));

    GateWitnessReport r;

    CVector<16> expected;  // coefficients on e11, e15, e7
    expected[10] = -0.5;
    expected[14] = 0.5;
    expected[6] = -1.0 / std::sqrt(2.0);
    r.expansion_deviation = max_abs(basis.expand(psi0) - expected);

    const double tt = revival_time(p);
    const QuatroState evolved = evolve(psi0, tt, p);
    const cplx phase = std::polar(1.0, p.omega * tt);
    r.global_phase_deviation = max_abs(evolved - phase * psi0);

    const MeasurementResult m = measure(evolved);
    r.p_du_deviation = std::abs(m.probability(2) - 1.0);

    const CMatrix<4> u2 = extract_gate(2, p).matrix;
    r.u2_first_entry_deviation =
        std::abs(u2(0, 0) - std::polar(1.0, 2.0 * std::numbers::pi * p.omega / p.coupling));
    for (std::size_t m2 = 1; m2 < 4; ++m2)
        r.u2_first_row_offdiag = std::max(r.u2_first_row_offdiag, std::abs(u2(0, m2)));
    return r;
}

}  // namespace spin4
