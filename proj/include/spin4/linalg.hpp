#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace spin4 {

using cplx = std::complex<double>;

/// Fixed-size complex column vector.
template <std::size_t N>
struct CVector {
    std::array<cplx, N> a{};

    cplx& operator[](std::size_t i) { return a[i]; }
    const cplx& operator[](std::size_t i) const { return a[i]; }
    static constexpr std::size_t dim = N;
};

/// Fixed-size dense complex matrix, row-major.
template <std::size_t N>
struct CMatrix {
    std::array<cplx, N * N> a{};

    cplx& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }
    static constexpr std::size_t dim = N;

    static CMatrix identity() {
        CMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }
};

template <std::size_t N>
CVector<N> operator+(const CVector<N>& x, const CVector<N>& y) {
    CVector<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = x[i] + y[i];
    return r;
}

template <std::size_t N>
CVector<N> operator-(const CVector<N>& x, const CVector<N>& y) {
    CVector<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = x[i] - y[i];
    return r;
}

template <std::size_t N>
CVector<N> operator*(cplx s, const CVector<N>& x) {
    CVector<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = s * x[i];
    return r;
}

/// Physics inner product: conjugate-linear in the first argument.
template <std::size_t N>
cplx inner(const CVector<N>& bra, const CVector<N>& ket) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(bra[i]) * ket[i];
    return s;
}

template <std::size_t N>
double norm(const CVector<N>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::norm(v[i]);
    return std::sqrt(s);
}

template <std::size_t N>
CVector<N> normalized(const CVector<N>& v) {
    double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    CVector<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = v[i] / n;
    return r;
}

template <std::size_t N>
CMatrix<N> operator+(const CMatrix<N>& x, const CMatrix<N>& y) {
    CMatrix<N> r;
    for (std::size_t i = 0; i < N * N; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

template <std::size_t N>
CMatrix<N> operator-(const CMatrix<N>& x, const CMatrix<N>& y) {
    CMatrix<N> r;
    for (std::size_t i = 0; i < N * N; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

template <std::size_t N>
CMatrix<N> operator*(cplx s, const CMatrix<N>& x) {
    CMatrix<N> r;
    for (std::size_t i = 0; i < N * N; ++i) r.a[i] = s * x.a[i];
    return r;
}

template <std::size_t N>
CVector<N> operator*(const CMatrix<N>& m, const CVector<N>& v) {
    CVector<N> r;
    for (std::size_t i = 0; i < N; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < N; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

template <std::size_t N>
CMatrix<N> operator*(const CMatrix<N>& x, const CMatrix<N>& y) {
    CMatrix<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx{}) continue;
            for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

template <std::size_t N>
CMatrix<N> transpose(const CMatrix<N>& m) {
    CMatrix<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(j, i) = m(i, j);
    return r;
}

template <std::size_t N>
CMatrix<N> adjoint(const CMatrix<N>& m) {
    CMatrix<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

template <std::size_t N>
cplx trace(const CMatrix<N>& m) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += m(i, i);
    return s;
}

template <std::size_t N>
double max_abs(const CMatrix<N>& m) {
    double r = 0.0;
    for (const cplx& x : m.a) r = std::max(r, std::abs(x));
    return r;
}

template <std::size_t N>
double max_abs(const CVector<N>& v) {
    double r = 0.0;
    for (const cplx& x : v.a) r = std::max(r, std::abs(x));
    return r;
}

template <std::size_t N>
double frobenius_norm(const CMatrix<N>& m) {
    double s = 0.0;
    for (const cplx& x : m.a) s += std::norm(x);
    return std::sqrt(s);
}

/// max |(A - A^dagger)_ij|; zero for an exactly Hermitian matrix.
template <std::size_t N>
double hermiticity_defect(const CMatrix<N>& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j)
            r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
    return r;
}

/// max |(U^dagger U - I)_ij|.
template <std::size_t N>
double unitarity_defect(const CMatrix<N>& m) {
    return max_abs(adjoint(m) * m - CMatrix<N>::identity());
}

template <std::size_t A, std::size_t B>
CMatrix<A * B> kron(const CMatrix<A>& x, const CMatrix<B>& y) {
    CMatrix<A * B> r;
    for (std::size_t i = 0; i < A; ++i)
        for (std::size_t j = 0; j < A; ++j) {
            const cplx xij = x(i, j);
            if (xij == cplx{}) continue;
            for (std::size_t k = 0; k < B; ++k)
                for (std::size_t l = 0; l < B; ++l)
                    r(i * B + k, j * B + l) = xij * y(k, l);
        }
    return r;
}

template <std::size_t A, std::size_t B>
CVector<A * B> kron(const CVector<A>& x, const CVector<B>& y) {
    CVector<A * B> r;
    for (std::size_t i = 0; i < A; ++i)
        for (std::size_t k = 0; k < B; ++k) r[i * B + k] = x[i] * y[k];
    return r;
}

template <std::size_t N>
CMatrix<N> commutator(const CMatrix<N>& x, const CMatrix<N>& y) {
    return x * y - y * x;
}

/// |v><w| outer product.
template <std::size_t N>
CMatrix<N> outer(const CVector<N>& v, const CVector<N>& w) {
    CMatrix<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = v[i] * std::conj(w[j]);
    return r;
}

}  // namespace spin4
