#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spin4/hilbert.hpp"
#include "spin4/linalg.hpp"
#include "spin4/model.hpp"

namespace spin4 {

enum class Frame { lab, rotating };

/// U(t) in computational coordinates. In the lab frame the matrix is
/// symmetric (not merely unitary) because every eigenvector coefficient
/// is real.
struct Propagator {
    double time = 0.0;  // ns
    DenseOperator matrix;
    Frame frame = Frame::lab;
};

/// e^{-i E_k t} for level k = 1..16, evaluated as integer multiples of the
/// rounded products omega*t and J*t (see EnergySplit).
inline cplx level_phase(int k, double t, const ModelParams& p) {
    const EnergySplit s = energy_split(eigenbasis().quantum_numbers[static_cast<std::size_t>(k - 1)]);
    return std::polar(1.0, -(s.zeeman * (p.omega * t) + s.exchange * (p.coupling * t)));
}

namespace detail {

inline CVector<16> phase_factors(double t, const ModelParams& p) {
    const auto& qn = eigenbasis().quantum_numbers;
    const double wt = p.omega * t;
    const double jt = p.coupling * t;
    CVector<16> ph;
    for (std::size_t k = 0; k < 16; ++k) {
        const EnergySplit s = energy_split(qn[k]);
        ph[k] = std::polar(1.0, -(s.zeeman * wt + s.exchange * jt));
    }
    return ph;
}

}  // namespace detail

/// psi(t) = sum_k e^{-i E_k t} <e_k|psi> |e_k>. Resonant case only; the
/// detuned Hamiltonian is not diagonal in the e-basis, use jacobi_eigh on
/// hamiltonian_matrix instead.
inline QuatroState evolve(const QuatroState& state, double t, const ModelParams& p) {
    if (!p.symmetric())
        throw std::invalid_argument("evolve: spectral evolution requires omega == omega_tilde");
    const auto& basis = eigenbasis();
    CVector<16> coeff = basis.expand(state);
    const CVector<16> ph = detail::phase_factors(t, p);
    for (std::size_t k = 0; k < 16; ++k) coeff[k] *= ph[k];
    return basis.assemble(coeff);
}

/// Full propagator matrix; entry (4(j-1)+(l-1), 4(m-1)+(n-1)) is the
/// transition amplitude <c_jl| U(t) |c_mn>.
inline Propagator propagator_matrix(double t, const ModelParams& p) {
    if (!p.symmetric())
        throw std::invalid_argument("propagator_matrix: requires omega == omega_tilde");
    const auto& basis = eigenbasis();
    const CVector<16> ph = detail::phase_factors(t, p);

    Propagator u;
    u.time = t;
    // E diag(ph) E^T with real E
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < 16; ++k)
                s += basis.columns(i, k) * ph[k] * basis.columns(j, k);
            u.matrix(i, j) = s;
        }
    return u;
}

// ---------------------------------------------------------------------------
// rotating frame: conjugation phases e^{+i omega m t} per computational
// amplitude, with m the total magnetization. Removes every Zeeman phase at
// resonance and leaves only coupling-driven dynamics.

inline QuatroState rotating_frame(const QuatroState& state, double t, const ModelParams& p) {
    const double wt = p.omega * t;
    QuatroState r;
    for (std::size_t i = 0; i < 16; ++i)
        r[i] = std::polar(1.0, computational_magnetization(i) * wt) * state[i];
    return r;
}

/// Data-pair version (magnetization -1, 0, 0, +1).
inline DataVector rotating_frame_data(const DataVector& state, double t, const ModelParams& p) {
    const double wt = p.omega * t;
    DataVector r;
    for (std::size_t i = 0; i < 4; ++i)
        r[i] = std::polar(1.0, pair_magnetization(i) * wt) * state[i];
    return r;
}

/// For a propagator the frame change is the left factor e^{+i omega Jz t}.
inline Propagator rotating_frame(const Propagator& u, const ModelParams& p) {
    Propagator r = u;
    r.frame = Frame::rotating;
    const double wt = p.omega * u.time;
    for (std::size_t i = 0; i < 16; ++i) {
        const cplx ph = std::polar(1.0, computational_magnetization(i) * wt);
        for (std::size_t j = 0; j < 16; ++j) r.matrix(i, j) = ph * u.matrix(i, j);
    }
    return r;
}

// ---------------------------------------------------------------------------

/// Evenly spaced sample times, endpoints included.
struct TimeGrid {
    double start = 0.0;
    double stop = 0.0;
    std::size_t samples = 2001;

    std::vector<double> points() const {
        if (samples < 2) throw std::invalid_argument("TimeGrid: samples must be >= 2");
        if (!(stop > start) || start < 0.0)
            throw std::invalid_argument("TimeGrid: need stop > start >= 0");
        std::vector<double> t(samples);
        const double step = (stop - start) / static_cast<double>(samples - 1);
        for (std::size_t i = 0; i < samples; ++i) t[i] = start + step * static_cast<double>(i);
        return t;
    }

    double step() const { return (stop - start) / static_cast<double>(samples - 1); }
};

/// Default trace window [0, 2 t~], fine enough to resolve the fastest
/// coupling beat (3J).
inline TimeGrid default_grid(const ModelParams& p, std::size_t samples = 2001) {
    return TimeGrid{0.0, 2.0 * revival_time(p), samples};
}

}  // namespace spin4
