#pragma once

#include <cstdlib>

#include "spin4/linalg.hpp"

namespace spin4 {

/// Matrix exponential by scaling-and-squaring with a fixed-order Taylor
/// series: halve the argument until its Frobenius norm drops below
/// `scale_target`, sum `taylor_terms` series terms, square back up.
/// The fixed recipe keeps the result bit-reproducible across runs; intended
/// as an eigenbasis-free cross-check of spectral propagators, where the
/// argument -iHt is skew-Hermitian and the defaults reach ~1e-11 accuracy.
template <std::size_t N>
CMatrix<N> matrix_exponential(CMatrix<N> a, int taylor_terms = 10, double scale_target = 0.5) {
    int doublings = 0;
    double nrm = frobenius_norm(a);
    while (nrm > scale_target && doublings < 64) {
        a = cplx(0.5) * a;
        nrm *= 0.5;
        ++doublings;
    }

    CMatrix<N> result = CMatrix<N>::identity();
    CMatrix<N> term = CMatrix<N>::identity();
    for (int n = 1; n <= taylor_terms; ++n) {
        term = cplx(1.0 / n) * (term * a);
        result = result + term;
    }
    for (int k = 0; k < doublings; ++k) result = result * result;
    return result;
}

}  // namespace spin4
