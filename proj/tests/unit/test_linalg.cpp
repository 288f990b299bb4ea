#include <doctest.h>

#include <cmath>
#include <random>

#include "jarlskog/linalg.hpp"
#include "oracles.hpp"

using namespace jarlskog;

TEST_CASE("matrix dimension bounds") {
    CHECK_THROWS_AS(ComplexMatrix(1), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(9), DimensionError);
    CHECK_NOTHROW(ComplexMatrix(2));
    CHECK_NOTHROW(ComplexMatrix(8));
    CHECK_THROWS_AS(ComplexMatrix(3, std::vector<Complex>(8)), DimensionError);
    CHECK_THROWS_AS(matmul(ComplexMatrix(2), ComplexMatrix(3)), DimensionError);
}

TEST_CASE("matmul and adjoint agree with the naive definitions") {
    std::mt19937_64 g(11);
    for (std::size_t n = 2; n <= 8; ++n) {
        const ComplexMatrix x = oracle::random_matrix(n, g);
        const ComplexMatrix y = oracle::random_matrix(n, g);
        CHECK(max_abs_diff(matmul(x, y), oracle::matmul(x, y)) <= 1e-13);
        CHECK(adjoint(x) == oracle::adjoint(x));
        CHECK(adjoint(adjoint(x)) == x);
    }
}

TEST_CASE("det agrees with cofactor expansion") {
    std::mt19937_64 g(12);
    for (std::size_t n = 2; n <= 6; ++n) {
        for (int t = 0; t < 20; ++t) {
            const ComplexMatrix x = oracle::random_matrix(n, g);
            const Complex ref = oracle::det(x);
            CHECK(std::abs(det(x) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("det is multiplicative") {
    std::mt19937_64 g(13);
    for (std::size_t n = 2; n <= 8; ++n) {
        const ComplexMatrix x = oracle::random_matrix(n, g);
        const ComplexMatrix y = oracle::random_matrix(n, g);
        const Complex lhs = det(matmul(x, y));
        const Complex rhs = det(x) * det(y);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("det of special matrices") {
    CHECK(det(ComplexMatrix::identity(5)) == Complex(1.0, 0.0));
    ComplexMatrix z(3);
    z(0, 0) = 1.0;
    z(1, 1) = 2.0;
    CHECK(det(z) == Complex(0.0, 0.0));
    // Row swap needs pivoting.
    const ComplexMatrix p{{0.0, 1.0}, {1.0, 0.0}};
    CHECK(det(p) == Complex(-1.0, 0.0));
}

TEST_CASE("commutator of Hermitian matrices is anti-Hermitian") {
    std::mt19937_64 g(14);
    for (std::size_t n = 3; n <= 4; ++n) {
        const ComplexMatrix x = oracle::random_matrix(n, g);
        const ComplexMatrix y = oracle::random_matrix(n, g);
        const ComplexMatrix h = Complex(0.5) * (x + adjoint(x));
        const ComplexMatrix hp = Complex(0.5) * (y + adjoint(y));
        const ComplexMatrix c = commutator(h, hp);
        CHECK(max_abs_diff(adjoint(c), Complex(-1.0) * c) <= 1e-13);
    }
}

TEST_CASE("spectrum validation") {
    CHECK_THROWS_AS(Spectrum({1.0, 2.0, 1.0}), DegenerateSpectrumError);
    CHECK_THROWS_AS(Spectrum({1.0, NAN, 2.0}), Error);
    CHECK_THROWS_AS(Spectrum({1.0}), DimensionError);
    const Spectrum s{3.0, -1.0, 0.5};
    CHECK(s[0] == 3.0);
    CHECK(s.min_gap() == doctest::Approx(1.5));
    CHECK(s.spread() == doctest::Approx(4.0));
    CHECK(s.shifted(1.0)[1] == 0.0);
}

TEST_CASE("unitary matrix validation") {
    std::mt19937_64 g(15);
    const ComplexMatrix u = oracle::random_unitary(4, g);
    const UnitaryMatrix v(u);
    CHECK(v.unitarity_defect() <= 1e-14);
    CHECK(max_abs_diff(v.adjoint().matrix(), oracle::adjoint(u)) == 0.0);
    ComplexMatrix bad = u;
    bad(0, 0) += 1e-6;
    CHECK_THROWS_AS(UnitaryMatrix{bad}, NotUnitaryError);
    try {
        UnitaryMatrix{bad};
    } catch (const NotUnitaryError& e) {
        CHECK(e.defect() > 1e-7);
    }
    CHECK_THROWS_AS(UnitaryMatrix(Complex(2.0) * ComplexMatrix::identity(3)), NotUnitaryError);
}

TEST_CASE("Jacobi eigensolver round-trip") {
    std::mt19937_64 g(16);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (std::size_t n = 2; n <= 8; ++n) {
        for (int t = 0; t < 25; ++t) {
            const UnitaryMatrix u(oracle::random_unitary(n, g));
            std::vector<double> w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(i) * 0.3 + 0.1 * d(g);
            const Spectrum s(w);
            const ComplexMatrix h = hermitian_from_spectrum(u, s);
            const EigenDecomposition e = jacobi_eig(h);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(e.values[i] - w[i]) <= 1e-10);
            // H U = U diag(values)
            const ComplexMatrix lhs = matmul(h, e.vectors.matrix());
            const ComplexMatrix rhs = matmul(e.vectors.matrix(), ComplexMatrix::diagonal(e.values.values()));
            CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
            CHECK(e.vectors.unitarity_defect() <= 1e-13);
        }
    }
}

TEST_CASE("Jacobi eigensolver on a diagonal matrix sorts ascending") {
    const double d[] = {3.0, 1.0, 2.0};
    const EigenDecomposition e = jacobi_eig(ComplexMatrix::diagonal(d));
    CHECK(e.values[0] == 1.0);
    CHECK(e.values[1] == 2.0);
    CHECK(e.values[2] == 3.0);
    CHECK(std::abs(e.vectors(1, 0)) == 1.0);
    CHECK(std::abs(e.vectors(2, 1)) == 1.0);
    CHECK(std::abs(e.vectors(0, 2)) == 1.0);
}

TEST_CASE("Jacobi eigensolver rejects bad input") {
    CHECK_THROWS_AS(jacobi_eig(ComplexMatrix::identity(3)), DegenerateSpectrumError);
    ComplexMatrix h = ComplexMatrix::identity(3);
    h(0, 1) = Complex(0.0, 1e-3);
    CHECK_THROWS_AS(jacobi_eig(h), NotHermitianError);
}
