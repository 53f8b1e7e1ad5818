#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spin4/linalg.hpp"

namespace spin4 {

template <std::size_t N>
struct SpectralDecomposition {
    std::array<double, N> energies;  // ascending
    CMatrix<N> vectors;              // orthonormal columns, vectors(:,k) <-> energies[k]

    CVector<N> vector(std::size_t k) const {
        CVector<N> v;
        for (std::size_t i = 0; i < N; ++i) v[i] = vectors(i, k);
        return v;
    }
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const CMatrix<N>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Each (p,q) pivot is eliminated by the unitary that first rotates the
/// complex off-diagonal element onto the real axis and then applies the
/// classic symmetric Jacobi rotation. Deterministic: fixed sweep order,
/// no pivot searching. Eigenvalues are returned ascending; ties keep the
/// order in which the sweep left them (stable sort).
///
/// Throws std::invalid_argument for non-Hermitian input and
/// std::runtime_error if the off-diagonal mass has not converged within
/// the sweep budget.
template <std::size_t N>
SpectralDecomposition<N> jacobi_eigh(CMatrix<N> a, int max_sweeps = 64) {
    const double scale = std::max(frobenius_norm(a), 1.0);
    if (hermiticity_defect(a) > 1e-10 * scale)
        throw std::invalid_argument("jacobi_eigh: input is not Hermitian");

    CMatrix<N> v = CMatrix<N>::identity();
    const double tol = 1e-14 * scale;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) <= tol) break;
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cplx phase = apq / r;  // e^{i theta}

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // unitary J: J(p,p)=c, J(p,q)=s, J(q,p)=-s conj(phase), J(q,q)=c conj(phase)
                const cplx jqp = -s * std::conj(phase);
                const cplx jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < N; ++k) {  // A <- A J
                    const cplx x = a(k, p), y = a(k, q);
                    a(k, p) = c * x + jqp * y;
                    a(k, q) = s * x + jqq * y;
                }
                for (std::size_t k = 0; k < N; ++k) {  // A <- J^dagger A
                    const cplx x = a(p, k), y = a(q, k);
                    a(p, k) = c * x + std::conj(jqp) * y;
                    a(q, k) = s * x + std::conj(jqq) * y;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < N; ++k) {  // V <- V J
                    const cplx x = v(k, p), y = v(k, q);
                    v(k, p) = c * x + jqp * y;
                    v(k, q) = s * x + jqq * y;
                }
            }
        }
    }
    if (sweep == max_sweeps && detail::off_diagonal_norm(a) > tol)
        throw std::runtime_error("jacobi_eigh: no convergence within sweep budget");

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.energies[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

/// max_k || H v_k - E_k v_k ||, a direct quality measure for a decomposition.
template <std::size_t N>
double eigenpair_residual(const CMatrix<N>& h, const SpectralDecomposition<N>& d) {
    double worst = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        const CVector<N> vk = d.vector(k);
        worst = std::max(worst, norm(h * vk - cplx(d.energies[k]) * vk));
    }
    return worst;
}

}  // namespace spin4
