#pragma once

#include <array>
#include <bit>
#include <cstddef>

#include "spin4/linalg.hpp"

// Basis conventions used throughout:
//
//   single spin      : index 0 = |down>, index 1 = |up>
//   pair (two spins) : computational order (dd, du, ud, uu), i.e. c1..c4
//   four qubits      : slot order (Q1, Q2, Qa, Qb); Q1, Q2 are the data pair,
//                      Qa, Qb the ancilla pair. Full index = 4*(k-1) + (l-1)
//                      with k the data-pair state and l the ancilla-pair state,
//                      which coincides with bit order q1 q2 qa qb (up = 1).
//   singlet-triplet  : order (S, T+, T0, T-) with the sign convention
//                      S = (|ud> - |du>)/sqrt(2). Every signed coefficient in
//                      this library assumes that convention.

namespace spin4 {

using DataVector = CVector<4>;     // two-qubit (pair) amplitudes
using QuatroState = CVector<16>;   // four-qubit register amplitudes
using DenseOperator = CMatrix<16>;

enum class SpinLabel : int { down = 0, up = 1 };

/// Total magnetization of a four-qubit computational state, integer-valued
/// (popcount - 2) because the four half-spins pair up.
inline int computational_magnetization(std::size_t index) {
    return static_cast<int>(std::popcount(index & 0xFu)) - 2;
}

/// Magnetization of a pair computational state (index 0..3).
inline int pair_magnetization(std::size_t index) {
    return static_cast<int>(std::popcount(index & 0x3u)) - 1;
}

// ---------------------------------------------------------------------------
// pair singlet-triplet states in computational coordinates

inline DataVector pair_singlet() {
    const double s = 1.0 / std::sqrt(2.0);
    DataVector v;
    v[1] = -s;  // du
    v[2] = s;   // ud
    return v;
}

inline DataVector pair_triplet_plus() {
    DataVector v;
    v[3] = 1.0;  // uu
    return v;
}

inline DataVector pair_triplet_zero() {
    const double s = 1.0 / std::sqrt(2.0);
    DataVector v;
    v[1] = s;
    v[2] = s;
    return v;
}

inline DataVector pair_triplet_minus() {
    DataVector v;
    v[0] = 1.0;  // dd
    return v;
}

/// Pair computational basis state c_k, k = 1..4.
inline DataVector pair_computational(int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("pair state index must be 1..4");
    DataVector v;
    v[static_cast<std::size_t>(k - 1)] = 1.0;
    return v;
}

// ---------------------------------------------------------------------------
// PairBasisChange

/// Real orthogonal change of basis between the pair computational basis
/// (dd, du, ud, uu) and the singlet-triplet basis (S, T+, T0, T-).
/// Row r holds <st_r|c_c>, so apply() maps computational coordinates to
/// singlet-triplet coordinates and apply_transpose() maps back.
struct PairBasisChange {
    std::array<std::array<double, 4>, 4> m{};

    DataVector apply(const DataVector& computational) const {
        DataVector r;
        for (std::size_t i = 0; i < 4; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < 4; ++j) s += m[i][j] * computational[j];
            r[i] = s;
        }
        return r;
    }

    DataVector apply_transpose(const DataVector& singlet_triplet) const {
        DataVector r;
        for (std::size_t i = 0; i < 4; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < 4; ++j) s += m[j][i] * singlet_triplet[j];
            r[i] = s;
        }
        return r;
    }

    CMatrix<4> matrix() const {
        CMatrix<4> r;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) r(i, j) = m[i][j];
        return r;
    }
};

inline PairBasisChange pair_basis_change() {
    const double s = 1.0 / std::sqrt(2.0);
    PairBasisChange b;
    b.m[0] = {0.0, -s, s, 0.0};  // S
    b.m[1] = {0.0, 0.0, 0.0, 1.0};  // T+
    b.m[2] = {0.0, s, s, 0.0};   // T0
    b.m[3] = {1.0, 0.0, 0.0, 0.0};  // T-
    return b;
}

// ---------------------------------------------------------------------------
// tensor products

/// amplitudes[4(k-1)+(l-1)] = data[k] * ancilla[l]
inline QuatroState tensor_pair_states(const DataVector& data, const DataVector& ancilla) {
    return kron(data, ancilla);
}

// ---------------------------------------------------------------------------
// eigenbasis of the symmetric Hamiltonian

struct EigenQuantumNumbers {
    int total_j;
    int total_m;
    int data_pair_spin;     // s12
    int ancilla_pair_spin;  // sab
};

/// The sixteen orthonormal total-spin states e1..e16 expressed in four-qubit
/// computational coordinates (all coefficients real), column k-1 = |e_k>.
struct EigenBasisTable {
    CMatrix<16> columns;
    std::array<EigenQuantumNumbers, 16> quantum_numbers;

    QuatroState column(int k) const {  // k = 1..16
        QuatroState v;
        for (std::size_t i = 0; i < 16; ++i) v[i] = columns(i, static_cast<std::size_t>(k - 1));
        return v;
    }

    /// Expansion coefficients <e_k|psi>, k = 1..16 at slot k-1.
    CVector<16> expand(const QuatroState& psi) const {
        CVector<16> c;
        for (std::size_t k = 0; k < 16; ++k) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < 16; ++i) s += columns(i, k) * psi[i];  // columns are real
            c[k] = s;
        }
        return c;
    }

    /// Reassemble sum_k c_k |e_k>.
    QuatroState assemble(const CVector<16>& coefficients) const {
        QuatroState v;
        for (std::size_t i = 0; i < 16; ++i) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < 16; ++k) s += columns(i, k) * coefficients[k];
            v[i] = s;
        }
        return v;
    }
};

inline EigenBasisTable build_eigenbasis() {
    const DataVector S = pair_singlet();
    const DataVector Tp = pair_triplet_plus();
    const DataVector T0 = pair_triplet_zero();
    const DataVector Tm = pair_triplet_minus();

    const double r3 = 1.0 / std::sqrt(3.0);
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r6 = 1.0 / std::sqrt(6.0);

    std::array<QuatroState, 16> e;
    std::array<EigenQuantumNumbers, 16> qn;

    // singlet x singlet
    e[0] = kron(S, S);
    qn[0] = {0, 0, 0, 0};
    // singlet-triplet combinations (spin 1)
    e[1] = kron(S, Tp);
    e[2] = kron(S, T0);
    e[3] = kron(S, Tm);
    e[4] = kron(Tp, S);
    e[5] = kron(T0, S);
    e[6] = kron(Tm, S);
    qn[1] = {1, 1, 0, 1};
    qn[2] = {1, 0, 0, 1};
    qn[3] = {1, -1, 0, 1};
    qn[4] = {1, 1, 1, 0};
    qn[5] = {1, 0, 1, 0};
    qn[6] = {1, -1, 1, 0};
    // triplet x triplet: scalar
    e[7] = r3 * (kron(Tp, Tm) - kron(T0, T0) + kron(Tm, Tp));
    qn[7] = {0, 0, 1, 1};
    // triplet x triplet: spin 1
    e[8] = cplx(r2) * (kron(Tp, T0) - kron(T0, Tp));
    e[9] = cplx(r2) * (kron(Tp, Tm) - kron(Tm, Tp));
    e[10] = cplx(r2) * (kron(T0, Tm) - kron(Tm, T0));
    qn[8] = {1, 1, 1, 1};
    qn[9] = {1, 0, 1, 1};
    qn[10] = {1, -1, 1, 1};
    // triplet x triplet: spin 2
    e[11] = kron(Tp, Tp);
    e[12] = cplx(r2) * (kron(Tp, T0) + kron(T0, Tp));
    e[13] = cplx(r6) * (kron(Tp, Tm) + cplx(2.0) * kron(T0, T0) + kron(Tm, Tp));
    e[14] = cplx(r2) * (kron(T0, Tm) + kron(Tm, T0));
    e[15] = kron(Tm, Tm);
    qn[11] = {2, 2, 1, 1};
    qn[12] = {2, 1, 1, 1};
    qn[13] = {2, 0, 1, 1};
    qn[14] = {2, -1, 1, 1};
    qn[15] = {2, -2, 1, 1};

    EigenBasisTable t;
    t.quantum_numbers = qn;
    for (std::size_t k = 0; k < 16; ++k)
        for (std::size_t i = 0; i < 16; ++i) t.columns(i, k) = e[k][i];
    return t;
}

/// Shared immutable instance (thread-safe initialization).
inline const EigenBasisTable& eigenbasis() {
    static const EigenBasisTable table = build_eigenbasis();
    return table;
}

}  // namespace spin4
