#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spin4/eigensolver.hpp"
#include "spin4/evolution.hpp"
#include "spin4/expm.hpp"
#include "spin4/gates.hpp"
#include "spin4/hilbert.hpp"
#include "spin4/measurement.hpp"
#include "spin4/model.hpp"
#include "spin4/sampling.hpp"
#include "spin4/stabilizer.hpp"

// Executable verification of the simulator: the ten acceptance criteria and
// the per-module invariants, shared between the acceptance runner and the
// CLI selftest command. Every tolerance is pinned here.

namespace spin4::selfcheck {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

inline CheckResult bound(std::string name, double measured, double tolerance,
                         std::string extra = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.pass = measured <= tolerance && std::isfinite(measured);
    r.detail = "max deviation " + fmt(measured) + " (tolerance " + fmt(tolerance) + ")";
    if (!extra.empty()) r.detail += "; " + extra;
    return r;
}

inline const std::array<double, 2> coupling_presets{0.08, 0.8};
inline constexpr double default_omega = 18.5;

inline const std::array<Scenario, 4> all_scenarios{Scenario::phi_plus, Scenario::psi_plus,
                                                   Scenario::phi_minus, Scenario::psi_minus};

/// Index of the first local maximum of a sampled curve.
inline std::size_t first_local_max(const std::vector<double>& y) {
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        if (y[i] > y[i - 1] && y[i] >= y[i + 1]) return i;
    return y.size() - 1;
}

inline std::array<double, 4> generic_probabilities(const QuatroState& psi0, double t,
                                                   const ModelParams& p) {
    const QuatroState psi = evolve(psi0, t, p);
    std::array<double, 4> pr{};
    for (int l = 1; l <= 4; ++l) {
        const DataVector branch = ancilla_branch(psi, l);
        for (std::size_t j = 0; j < 4; ++j)
            pr[static_cast<std::size_t>(l - 1)] += std::norm(branch[j]);
    }
    return pr;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// acceptance criteria

/// 1. Analytic eigenenergies against the Jacobi diagonalization of the full
///    computational-basis Hamiltonian, (omega, J) = (18.5, 0.8) rad/ns.
inline CheckResult criterion_spectrum_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const ModelParams p = ModelParams::resonant(18.5, 0.8);
    auto analytic = analytic_spectrum(p);
    std::sort(analytic.begin(), analytic.end());
    const auto numeric = jacobi_eigh(hamiltonian_matrix(p));
    double worst = 0.0;
    for (std::size_t k = 0; k < 16; ++k)
        worst = std::max(worst, std::abs(analytic[k] - numeric.energies[k]));
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto r = detail::bound("spectrum analytic vs Jacobi oracle", worst, 1e-10,
                           "runtime " + detail::fmt(elapsed) + " s");
    r.pass = r.pass && elapsed < 1.0;
    return r;
}

/// 2. Probability sum rule on 2001-point grids, all scenarios, both presets.
inline CheckResult criterion_sum_rule() {
    double worst = 0.0;
    for (const double j : detail::coupling_presets) {
        const ModelParams p = ModelParams::resonant(detail::default_omega, j);
        for (const Scenario s : detail::all_scenarios) {
            const ScenarioTrace tr = run_scenario(s, default_grid(p), p, Frame::rotating);
            for (std::size_t i = 0; i < tr.times.size(); ++i) {
                const double sum =
                    tr.prob[0][i] + tr.prob[1][i] + tr.prob[2][i] + tr.prob[3][i];
                worst = std::max(worst, std::abs(sum - 1.0));
            }
        }
    }
    return detail::bound("probability sum rule", worst, 1e-12);
}

/// 3. Closed-form scenario probabilities against the evolve-and-project path.
inline CheckResult criterion_closed_vs_generic() {
    double worst = 0.0;
    for (const double j : detail::coupling_presets) {
        const ModelParams p = ModelParams::resonant(detail::default_omega, j);
        for (const Scenario s : detail::all_scenarios) {
            const ScenarioTrace tr = run_scenario(s, default_grid(p), p, Frame::lab);
            for (std::size_t i = 0; i < tr.times.size(); ++i) {
                const auto cf = closed_form_probabilities(s, tr.times[i], p);
                for (std::size_t l = 0; l < 4; ++l)
                    worst = std::max(worst, std::abs(cf[l] - tr.prob[l][i]));
            }
        }
    }
    return detail::bound("closed-form vs generic probabilities", worst, 1e-12);
}

/// 4. Error-syndrome maxima: first local maximum of p_du (Phi+) is 1/9 at
///    t = pi/(3J), and of p_dd (Psi+) is 2/9 there.
inline CheckResult criterion_syndrome_maxima() {
    double worst_value = 0.0;
    double worst_steps = 0.0;
    for (const double j : detail::coupling_presets) {
        const ModelParams p = ModelParams::resonant(detail::default_omega, j);
        const TimeGrid grid = default_grid(p);
        const double tstar = std::numbers::pi / (3.0 * j);

        const struct {
            Scenario s;
            std::size_t outcome;  // 0-based
            double expected;
        } cases[] = {{Scenario::phi_plus, 1, 1.0 / 9.0}, {Scenario::psi_plus, 0, 2.0 / 9.0}};

        for (const auto& c : cases) {
            const ScenarioTrace tr = run_scenario(c.s, grid, p, Frame::lab);
            const std::size_t imax = detail::first_local_max(tr.prob[c.outcome]);
            worst_steps = std::max(worst_steps, std::abs(tr.times[imax] - tstar) / grid.step());
            const auto pr = detail::generic_probabilities(scenario_state(c.s), tstar, p);
            worst_value = std::max(worst_value, std::abs(pr[c.outcome] - c.expected));
        }
    }
    auto r = detail::bound("syndrome probability maxima (1/9, 2/9)", worst_value, 1e-10,
                           "first-peak offset " + detail::fmt(worst_steps) + " grid steps");
    r.pass = r.pass && worst_steps <= 1.0 + 1e-9;
    return r;
}

/// 5. Psi- scenario: p_uu identically one.
inline CheckResult criterion_psi_minus_trivial() {
    double worst = 0.0;
    for (const double j : detail::coupling_presets) {
        const ModelParams p = ModelParams::resonant(detail::default_omega, j);
        const ScenarioTrace tr = run_scenario(Scenario::psi_minus, default_grid(p), p, Frame::lab);
        for (const double puu : tr.prob[3]) worst = std::max(worst, std::abs(puu - 1.0));
    }
    return detail::bound("psi- trivial probabilities", worst, 1e-12);
}

/// 6. Phi- scenario: rotating-frame fidelity one at every grid point.
inline CheckResult criterion_phi_minus_fidelity() {
    double worst = 0.0;
    for (const double j : detail::coupling_presets) {
        const ModelParams p = ModelParams::resonant(detail::default_omega, j);
        const ScenarioTrace tr =
            run_scenario(Scenario::phi_minus, default_grid(p), p, Frame::rotating);
        for (const double f : tr.fidelity)
            worst = std::max(worst, std::isfinite(f) ? std::abs(f - 1.0) : 1.0);
    }
    return detail::bound("phi- rotating-frame fidelity", worst, 1e-10);
}

/// 7. Revival of every correct-outcome probability at t~ = 2 pi / J, and the
///    t~ timescale itself for the strong-coupling preset.
inline CheckResult criterion_revival() {
    double worst = 0.0;
    for (const double j : detail::coupling_presets) {
        const ModelParams p = ModelParams::resonant(detail::default_omega, j);
        const double tt = revival_time(p);
        for (const Scenario s : detail::all_scenarios) {
            const auto pr = detail::generic_probabilities(scenario_state(s), tt, p);
            const std::size_t l = static_cast<std::size_t>(scenario_correct_outcome(s) - 1);
            worst = std::max(worst, std::abs(pr[l] - 1.0));
        }
    }
    const double tt_high = revival_time(ModelParams::resonant(detail::default_omega, 0.8));
    const bool timescale_ok =
        std::abs(tt_high - 7.854) < 5e-4 && std::abs(0.5 * tt_high - 3.93) < 5e-3;
    auto r = detail::bound("revival of correct outcomes at t~", worst, 1e-9,
                           "t~(J=0.8) = " + detail::fmt(tt_high) + " ns, half-cycle " +
                               detail::fmt(0.5 * tt_high) + " ns");
    r.pass = r.pass && timescale_ok;
    return r;
}

/// 8. Gate extraction. Always checked: p_nn(t~) = 1 for 100 Haar states per
///    ancilla preparation, U^1 and U^2 entrywise, both decomposition
///    identities. With `strict_reference_chain` the U^3 and U^4 comparisons
///    use the reference chain U^{n+1} = e^{-i theta} U^n; direct computation
///    gives U^3 = U^2 instead (the two middle ancilla states carry the same
///    magnetization), so the strict variant reports that mismatch rather
///    than hiding it.
inline CheckResult criterion_gates(bool strict_reference_chain) {
    double worst_pnn = 0.0;
    double worst_u12 = 0.0;
    double worst_chain = 0.0;
    double worst_decomp = 0.0;
    std::string measured;

    for (const double j : detail::coupling_presets) {
        const ModelParams p = ModelParams::resonant(detail::default_omega, j);
        const double tt = revival_time(p);
        const double theta = 2.0 * std::numbers::pi * p.omega / p.coupling;

        std::mt19937_64 rng(0xC0FFEEull);
        for (int n = 1; n <= 4; ++n) {
            for (int rep = 0; rep < 100; ++rep) {
                const DataVector alpha = haar_random_data_state(rng);
                const QuatroState psi0 = tensor_pair_states(alpha, pair_computational(n));
                const auto pr = detail::generic_probabilities(psi0, tt, p);
                worst_pnn = std::max(worst_pnn,
                                     std::abs(pr[static_cast<std::size_t>(n - 1)] - 1.0));
            }
        }

        std::array<CMatrix<4>, 4> u;
        for (int n = 1; n <= 4; ++n) u[static_cast<std::size_t>(n - 1)] = extract_gate(n, p).matrix;

        CMatrix<4> u1ref;
        u1ref(0, 0) = std::polar(1.0, 2.0 * theta);
        u1ref(1, 1) = std::polar(1.0, theta);
        u1ref(2, 2) = std::polar(1.0, theta);
        u1ref(3, 3) = 1.0;
        const cplx step = std::polar(1.0, -theta);
        std::array<CMatrix<4>, 4> ref{u1ref, step * u1ref, step * step * u1ref,
                                      step * step * step * u1ref};

        worst_u12 = std::max({worst_u12, max_abs(u[0] - ref[0]), max_abs(u[1] - ref[1])});
        worst_chain = std::max({worst_chain, max_abs(u[2] - ref[2]), max_abs(u[3] - ref[3])});
        if (measured.empty())
            measured = "measured U3 == U2 (dev " + detail::fmt(max_abs(u[2] - u[1])) +
                       "), U4 == e^{-i theta} U3 (dev " +
                       detail::fmt(max_abs(u[3] - step * u[2])) + ")";

        const DecompositionReport d = decomposition_check(p);
        worst_decomp = std::max({worst_decomp, d.controlled_chain_deviation,
                                 d.rz_product_deviation, d.involution_deviation});
    }

    CheckResult r;
    r.name = strict_reference_chain ? "gate extraction (reference chain, strict)"
                                    : "gate extraction";
    const bool base = worst_pnn <= 1e-9 && worst_u12 <= 1e-9 && worst_decomp <= 1e-12;
    const bool chain = worst_chain <= 1e-9;
    r.pass = strict_reference_chain ? (base && chain) : base;
    r.detail = "p_nn dev " + detail::fmt(worst_pnn) + ", U1/U2 dev " + detail::fmt(worst_u12) +
               ", decompositions dev " + detail::fmt(worst_decomp) +
               ", reference-chain U3/U4 dev " + detail::fmt(worst_chain) + "; " + measured;
    return r;
}

/// 9. Detuned case: the full Hamiltonian's spectrum matches the e-basis
///    block matrix, and the conjugated Hamiltonian leaks nothing outside
///    the {8,10,14}, {9,13}, {11,15} blocks.
inline CheckResult criterion_detuned() {
    double worst_spec = 0.0;
    double worst_leak = 0.0;
    const auto& basis = eigenbasis();

    bool mask[16][16] = {};
    for (std::size_t k = 0; k < 16; ++k) mask[k][k] = true;
    const std::vector<std::vector<int>> blocks{{8, 10, 14}, {9, 13}, {11, 15}};
    for (const auto& b : blocks)
        for (const int x : b)
            for (const int y : b) mask[x - 1][y - 1] = true;

    for (const double ratio : {1e-3, 1e-2}) {
        const double w = detail::default_omega;
        const ModelParams p{w, w - w * ratio, 0.8};

        const DenseOperator h = hamiltonian_matrix(p);
        const auto full = jacobi_eigh(h);
        const auto block = jacobi_eigh(detuned_hamiltonian_elements(p));
        for (std::size_t k = 0; k < 16; ++k)
            worst_spec = std::max(worst_spec, std::abs(full.energies[k] - block.energies[k]));

        const CMatrix<16> et = transpose(basis.columns);
        const CMatrix<16> conj = et * h * basis.columns;
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t j = 0; j < 16; ++j)
                if (!mask[i][j]) worst_leak = std::max(worst_leak, std::abs(conj(i, j)));
    }
    auto r = detail::bound("detuned block structure and spectrum", worst_spec, 1e-10,
                           "leakage outside blocks " + detail::fmt(worst_leak));
    r.pass = r.pass && worst_leak <= 1e-12;
    return r;
}

/// 10. Spectral propagator against the eigenbasis-free scaling-and-squaring
///     exponential at 20 random times per preset.
inline CheckResult criterion_propagator_oracle() {
    double worst = 0.0;
    std::mt19937_64 rng(20240810ull);
    for (const double j : detail::coupling_presets) {
        const ModelParams p = ModelParams::resonant(detail::default_omega, j);
        const DenseOperator h = hamiltonian_matrix(p);
        std::uniform_real_distribution<double> dist(0.0, 2.0 * revival_time(p));
        for (int rep = 0; rep < 20; ++rep) {
            const double t = dist(rng);
            const DenseOperator u = propagator_matrix(t, p).matrix;
            const DenseOperator ref = matrix_exponential(cplx(0.0, -t) * h);
            worst = std::max(worst, max_abs(u - ref));
        }
    }
    return detail::bound("spectral propagator vs matrix exponential", worst, 1e-9);
}

inline std::vector<CheckResult> acceptance_criteria(bool strict_reference_chain) {
    return {criterion_spectrum_oracle(),
            criterion_sum_rule(),
            criterion_closed_vs_generic(),
            criterion_syndrome_maxima(),
            criterion_psi_minus_trivial(),
            criterion_phi_minus_fidelity(),
            criterion_revival(),
            criterion_gates(strict_reference_chain),
            criterion_detuned(),
            criterion_propagator_oracle()};
}

// ---------------------------------------------------------------------------
// module invariants

inline CheckResult invariant_basis() {
    const auto& b = eigenbasis();
    const CMatrix<16> gram = transpose(b.columns) * b.columns;
    double worst = max_abs(gram - CMatrix<16>::identity());
    // completeness: E E^T = I as well (square orthogonal)
    worst = std::max(worst, max_abs(b.columns * transpose(b.columns) - CMatrix<16>::identity()));
    double imag = 0.0;
    for (const cplx& x : b.columns.a) imag = std::max(imag, std::abs(x.imag()));
    double e16 = 0.0;
    const QuatroState last = b.column(16);
    for (std::size_t i = 0; i < 16; ++i)
        e16 = std::max(e16, std::abs(last[i] - (i == 0 ? 1.0 : 0.0)));
    const PairBasisChange pc = pair_basis_change();
    const CMatrix<4> m = pc.matrix();
    const double orth = max_abs(transpose(m) * m - CMatrix<4>::identity());
    auto r = detail::bound("basis orthonormality and completeness", worst, 1e-12);
    r.pass = r.pass && imag == 0.0 && e16 == 0.0 && orth <= 1e-14;
    r.detail += "; imag " + detail::fmt(imag) + ", e16 dev " + detail::fmt(e16) +
                ", pair change orthogonality " + detail::fmt(orth);
    return r;
}

inline CheckResult invariant_symmetries() {
    const ModelParams p = ModelParams::resonant(detail::default_omega, 0.8);
    const DenseOperator h = hamiltonian_matrix(p);
    const double c1 = max_abs(commutator(h, total_sz()));
    const double c2 = max_abs(commutator(h, pair_spin_squared(true)));
    const double c3 = max_abs(commutator(h, pair_spin_squared(false)));
    const auto& b = eigenbasis();
    const CMatrix<16> d = transpose(b.columns) * h * b.columns;
    double offdiag = 0.0;
    double diag_dev = 0.0;
    const auto analytic = analytic_spectrum(p);
    for (std::size_t i = 0; i < 16; ++i) {
        diag_dev = std::max(diag_dev, std::abs(d(i, i) - analytic[i]));
        for (std::size_t j = 0; j < 16; ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(d(i, j)));
    }
    const double worst = std::max({c1, c2, c3, offdiag, diag_dev});
    return detail::bound("conserved quantities and diagonalization", worst, 1e-12,
                         "commutators " + detail::fmt(std::max({c1, c2, c3})) +
                             ", e-basis off-diagonal " + detail::fmt(offdiag));
}

inline CheckResult invariant_evolution() {
    const ModelParams p = ModelParams::resonant(detail::default_omega, 0.8);
    std::mt19937_64 rng(7u);
    double worst_group = 0.0, worst_energy = 0.0, worst_sym = 0.0, worst_cols = 0.0;
    const DenseOperator h = hamiltonian_matrix(p);

    QuatroState psi;
    {
        std::normal_distribution<double> g(0.0, 1.0);
        for (std::size_t i = 0; i < 16; ++i) psi[i] = cplx(g(rng), g(rng));
        psi = normalized(psi);
    }
    const cplx e0 = inner(psi, h * psi);
    std::uniform_real_distribution<double> dist(0.0, revival_time(p));
    for (int rep = 0; rep < 10; ++rep) {
        const double t1 = dist(rng), t2 = dist(rng);
        const QuatroState a = evolve(evolve(psi, t1, p), t2, p);
        const QuatroState bb = evolve(psi, t1 + t2, p);
        worst_group = std::max(worst_group, max_abs(a - bb));
        const QuatroState c = evolve(psi, t1, p);
        worst_energy = std::max(worst_energy, std::abs(inner(c, h * c) - e0));
    }
    for (int rep = 0; rep < 5; ++rep) {
        const double t = dist(rng);
        const DenseOperator u = propagator_matrix(t, p).matrix;
        worst_sym = std::max(worst_sym, max_abs(u - transpose(u)));
        for (std::size_t col = 0; col < 16; ++col) {
            double n2 = 0.0;
            for (std::size_t row = 0; row < 16; ++row) n2 += std::norm(u(row, col));
            worst_cols = std::max(worst_cols, std::abs(n2 - 1.0));
        }
    }
    // at t~ every ancilla-diagonal block must be diagonal (phase gate form)
    const DenseOperator ut = propagator_matrix(revival_time(p), p).matrix;
    double worst_block = 0.0;
    for (std::size_t n = 0; n < 4; ++n)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t m = 0; m < 4; ++m)
                if (j != m) worst_block = std::max(worst_block, std::abs(ut(4 * j + n, 4 * m + n)));

    const double worst = std::max({worst_group, worst_energy, worst_sym, worst_cols, worst_block});
    return detail::bound("evolution group law, conservation, symmetry", worst, 1e-11,
                         "group " + detail::fmt(worst_group) + ", energy " +
                             detail::fmt(worst_energy) + ", W symmetry " + detail::fmt(worst_sym) +
                             ", t~ block diagonality " + detail::fmt(worst_block));
}

inline CheckResult invariant_projectors() {
    const auto proj = ancilla_projectors();
    DenseOperator sum;
    double worst = 0.0;
    for (std::size_t l = 0; l < 4; ++l) {
        sum = sum + proj[l];
        for (std::size_t m = 0; m < 4; ++m) {
            const DenseOperator prod = proj[l] * proj[m];
            const DenseOperator want = (l == m) ? proj[l] : DenseOperator{};
            worst = std::max(worst, max_abs(prod - want));
        }
    }
    worst = std::max(worst, max_abs(sum - DenseOperator::identity()));

    // re-measurement stability
    const ModelParams p = ModelParams::resonant(detail::default_omega, 0.8);
    const QuatroState psi = evolve(scenario_state(Scenario::phi_plus), 1.25, p);
    const MeasurementResult m1 = measure(psi);
    double stab = 0.0;
    for (int l = 1; l <= 4; ++l) {
        if (!m1.collapsed_state(l)) continue;
        const QuatroState re = tensor_pair_states(*m1.collapsed_state(l), pair_computational(l));
        stab = std::max(stab, std::abs(measure(re).probability(l) - 1.0));
    }
    auto r = detail::bound("projector algebra and collapse stability", std::max(worst, stab),
                           1e-12, "re-measurement dev " + detail::fmt(stab));
    return r;
}

inline CheckResult invariant_scenarios() {
    double worst_stable = 0.0, worst_scaling = 0.0;
    const double w = detail::default_omega;
    for (const Scenario s : detail::all_scenarios) {
        const ModelParams p = ModelParams::resonant(w, 0.8);
        const auto pr = detail::generic_probabilities(scenario_state(s), 0.0, p);
        worst_stable = std::max(
            worst_stable,
            std::abs(pr[static_cast<std::size_t>(scenario_correct_outcome(s) - 1)] - 1.0));
    }
    // rotating-frame traces depend on J and t only through J t
    const ModelParams pa = ModelParams::resonant(w, 0.08);
    const ModelParams pb = ModelParams::resonant(w, 0.8);
    const TimeGrid ga{0.0, 2.0 * revival_time(pa), 501};
    const TimeGrid gb{0.0, 2.0 * revival_time(pb), 501};
    for (const Scenario s : detail::all_scenarios) {
        const ScenarioTrace ta = run_scenario(s, ga, pa, Frame::rotating);
        const ScenarioTrace tb = run_scenario(s, gb, pb, Frame::rotating);
        for (std::size_t i = 0; i < ta.times.size(); ++i) {
            for (std::size_t l = 0; l < 4; ++l)
                worst_scaling =
                    std::max(worst_scaling, std::abs(ta.prob[l][i] - tb.prob[l][i]));
            worst_scaling =
                std::max(worst_scaling, std::abs(ta.fidelity[i] - tb.fidelity[i]));
        }
    }
    return detail::bound("scenario stability and timescale scaling",
                         std::max(worst_stable, worst_scaling), 1e-12,
                         "scaling dev " + detail::fmt(worst_scaling));
}

inline CheckResult invariant_phi_plus_fidelity_form() {
    double worst = 0.0;
    for (const double j : detail::coupling_presets) {
        const ModelParams p = ModelParams::resonant(detail::default_omega, j);
        for (const Frame frame : {Frame::lab, Frame::rotating}) {
            const TimeGrid grid{0.0, 2.0 * revival_time(p), 401};
            const ScenarioTrace tr = run_scenario(Scenario::phi_plus, grid, p, frame);
            for (std::size_t i = 0; i < tr.times.size(); ++i)
                worst = std::max(worst, std::abs(tr.fidelity[i] -
                                                 phi_plus_fidelity_closed(tr.times[i], p, frame)));
        }
    }
    return detail::bound("phi+ conditional fidelity closed form", worst, 1e-10);
}

inline CheckResult invariant_gate_properties() {
    const ModelParams p = ModelParams::resonant(detail::default_omega, 0.08);
    const double tt = revival_time(p);

    double worst_diag = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const CMatrix<4> u = extract_gate(n, p).matrix;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j) worst_diag = std::max(worst_diag, std::abs(u(i, j)));
    }

    const double c_t0 = unitarity_constraint(1, 0.0, p);
    const double c_tt = unitarity_constraint(1, tt, p);
    const double c_half = unitarity_constraint(1, 0.5 * tt, p);

    // all sixteen (l, n) combinations at t~: certainty only on l = n
    std::mt19937_64 rng(99u);
    const DataVector alpha = haar_random_data_state(rng);
    double worst_ln = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const QuatroState psi0 = tensor_pair_states(alpha, pair_computational(n));
        const auto pr = detail::generic_probabilities(psi0, tt, p);
        for (int l = 1; l <= 4; ++l) {
            const double want = (l == n) ? 1.0 : 0.0;
            worst_ln = std::max(worst_ln,
                                std::abs(pr[static_cast<std::size_t>(l - 1)] - want));
        }
    }

    // superposed ancilla preparation never reaches certainty
    const DataVector anc_sup = normalized(pair_computational(1) + pair_computational(2));
    const QuatroState psi_sup = tensor_pair_states(alpha, anc_sup);
    double best = 0.0;
    const TimeGrid scan{1e-9, 2.0 * tt, 2001};
    for (const double t : scan.points()) {
        const auto pr = detail::generic_probabilities(psi_sup, t, p);
        for (const double v : pr) best = std::max(best, v);
    }

    const GateWitnessReport w = analytic_gate_witness(p);

    CheckResult r;
    r.name = "gate diagonality, constraint, certainty structure";
    r.pass = worst_diag <= 1e-9 && c_t0 <= 1e-14 && c_tt <= 1e-9 && c_half > 0.1 &&
             worst_ln <= 1e-9 && best < 1.0 - 1e-6 && w.ok();
    r.detail = "off-diag " + detail::fmt(worst_diag) + ", constraint(t~) " + detail::fmt(c_tt) +
               ", constraint(t~/2) " + detail::fmt(c_half) + ", l=n certainty dev " +
               detail::fmt(worst_ln) + ", superposed-ancilla max p " + detail::fmt(best);
    return r;
}

inline CheckResult invariant_collapse_nonlinearity() {
    const ModelParams p = ModelParams::resonant(detail::default_omega, 0.08);
    const double tt = revival_time(p);

    const auto collapsed = [&p](const DataVector& alpha, int n, int l,
                                double t) -> std::optional<DataVector> {
        const QuatroState psi = evolve(tensor_pair_states(alpha, pair_computational(n)), t, p);
        return measure(psi).collapsed_state(l);
    };

    // the normalized collapsed state is not additive in the input state
    const DataVector a1 = pair_computational(1);
    const DataVector a2 = pair_computational(4);
    const DataVector a3 = normalized(a1 + a2);

    double mid_dev = 0.0, revival_dev = 1.0;
    const auto d1 = collapsed(a1, 1, 1, 0.5 * tt);
    const auto d2 = collapsed(a2, 1, 1, 0.5 * tt);
    const auto d3 = collapsed(a3, 1, 1, 0.5 * tt);
    if (d1 && d2 && d3) {
        const DataVector mix = normalized(*d1 + *d2);
        mid_dev = 1.0 - std::abs(inner(mix, *d3));
    }
    const auto e1 = collapsed(a1, 1, 1, tt);
    const auto e2 = collapsed(a2, 1, 1, tt);
    const auto e3 = collapsed(a3, 1, 1, tt);
    if (e1 && e2 && e3) {
        const DataVector mix = normalized(*e1 + *e2);
        revival_dev = 1.0 - std::abs(inner(mix, *e3));
    }

    CheckResult r;
    r.name = "mid-scan collapse non-linearity";
    r.pass = mid_dev > 0.05 && revival_dev <= 1e-12;
    r.detail = "superposition defect at t~/2: " + detail::fmt(mid_dev) +
               " (linear again at t~: " + detail::fmt(revival_dev) + ")";
    return r;
}

inline std::vector<CheckResult> module_invariants() {
    return {invariant_basis(),
            invariant_symmetries(),
            invariant_evolution(),
            invariant_projectors(),
            invariant_scenarios(),
            invariant_phi_plus_fidelity_form(),
            invariant_gate_properties(),
            invariant_collapse_nonlinearity()};
}

}  // namespace spin4::selfcheck
