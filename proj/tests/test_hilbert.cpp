#include <doctest.h>

#include <cmath>
#include <random>

#include "spin4/hilbert.hpp"
#include "spin4/model.hpp"

using namespace spin4;

namespace {
const double isq2 = 1.0 / std::sqrt(2.0);
const double isq3 = 1.0 / std::sqrt(3.0);
}  // namespace

TEST_CASE("pair basis change maps |du> onto (T0 - S)/sqrt(2)") {
    const PairBasisChange b = pair_basis_change();
    DataVector du;
    du[1] = 1.0;
    const DataVector st = b.apply(du);
    CHECK(std::abs(st[0] - cplx(-isq2)) < 1e-15);  // S coefficient
    CHECK(std::abs(st[1]) < 1e-15);                // T+
    CHECK(std::abs(st[2] - cplx(isq2)) < 1e-15);   // T0
    CHECK(std::abs(st[3]) < 1e-15);                // T-
}

TEST_CASE("pair basis change maps |dd> onto pure T-") {
    const DataVector st = pair_basis_change().apply(pair_computational(1));
    CHECK(std::abs(st[3] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(st[0]) + std::abs(st[1]) + std::abs(st[2]) < 1e-15);
}

TEST_CASE("pair basis change is orthogonal and an involution through its transpose") {
    const PairBasisChange b = pair_basis_change();
    const CMatrix<4> m = b.matrix();
    CHECK(max_abs(transpose(m) * m - CMatrix<4>::identity()) < 1e-14);

    std::mt19937_64 rng(1u);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        DataVector v;
        for (std::size_t i = 0; i < 4; ++i) v[i] = cplx(g(rng), g(rng));
        const DataVector back = b.apply_transpose(b.apply(v));
        CHECK(max_abs(back - v) < 1e-14);
    }
}

TEST_CASE("tensor_pair_states index layout") {
    const QuatroState a = tensor_pair_states(pair_computational(1), pair_computational(1));
    CHECK(std::abs(a[0] - cplx(1.0)) < 1e-15);
    for (std::size_t i = 1; i < 16; ++i) CHECK(std::abs(a[i]) < 1e-15);

    const QuatroState b = tensor_pair_states(pair_computational(2), pair_computational(4));
    CHECK(std::abs(b[7] - cplx(1.0)) < 1e-15);  // 4*1 + 3
}

TEST_CASE("tensor product norm is multiplicative") {
    std::mt19937_64 rng(2u);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        DataVector x, y;
        for (std::size_t i = 0; i < 4; ++i) {
            x[i] = cplx(g(rng), g(rng));
            y[i] = cplx(g(rng), g(rng));
        }
        CHECK(std::abs(norm(tensor_pair_states(x, y)) - norm(x) * norm(y)) < 1e-12);
        CHECK(std::abs(norm(tensor_pair_states(normalized(x), normalized(y))) - 1.0) < 1e-12);
    }
}

TEST_CASE("eigenbasis columns carry the printed combination coefficients") {
    const auto& b = eigenbasis();
    const QuatroState tp_tm = kron(pair_triplet_plus(), pair_triplet_minus());
    CHECK(std::abs(inner(b.column(8), tp_tm) - cplx(isq3)) < 1e-15);

    const QuatroState t0_t0 = kron(pair_triplet_zero(), pair_triplet_zero());
    CHECK(std::abs(inner(b.column(14), t0_t0) - cplx(2.0 / std::sqrt(6.0))) < 1e-15);
}

TEST_CASE("e16 is exactly the all-down computational state") {
    const QuatroState e16 = eigenbasis().column(16);
    CHECK(e16[0] == cplx(1.0));
    for (std::size_t i = 1; i < 16; ++i) CHECK(e16[i] == cplx(0.0));
}

TEST_CASE("eigenbasis is orthonormal, complete, and real") {
    const auto& b = eigenbasis();
    CHECK(max_abs(transpose(b.columns) * b.columns - CMatrix<16>::identity()) < 1e-12);
    CHECK(max_abs(b.columns * transpose(b.columns) - CMatrix<16>::identity()) < 1e-12);
    for (const cplx& x : b.columns.a) CHECK(x.imag() == 0.0);
}

TEST_CASE("quantum numbers reproduce the analytic spectrum") {
    const auto& b = eigenbasis();
    const ModelParams p = ModelParams::resonant(18.5, 0.8);
    const auto table = analytic_spectrum(p);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK(energy_from_quantum_numbers(b.quantum_numbers[k], p) ==
              doctest::Approx(table[k]).epsilon(1e-14));
    }
}

TEST_CASE("magnetization helpers match bit counting") {
    CHECK(computational_magnetization(0) == -2);
    CHECK(computational_magnetization(15) == 2);
    CHECK(computational_magnetization(5) == 0);
    CHECK(pair_magnetization(0) == -1);
    CHECK(pair_magnetization(1) == 0);
    CHECK(pair_magnetization(2) == 0);
    CHECK(pair_magnetization(3) == 1);
}
