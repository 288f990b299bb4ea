#include <doctest.h>

#include <cmath>
#include <random>

#include "jarlskog/determinant.hpp"
#include "jarlskog/sampling.hpp"
#include "oracles.hpp"

using namespace jarlskog;

namespace {

std::vector<double> values(const Spectrum& s) { return {s.values().begin(), s.values().end()}; }

MassPairInput random_input(std::size_t n, SeededRng& rng) {
    UnitaryMatrix v = haar_unitary(n, rng);
    Spectrum a = random_spectrum(n, rng);
    Spectrum b = random_spectrum(n, rng);
    return {std::move(a), std::move(b), std::move(v)};
}

double rel_err(Complex x, Complex ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); }

}  // namespace

TEST_CASE("u_entry matches D V D' V^dagger - V D' V^dagger D") {
    SeededRng rng(1);
    for (std::size_t n = 2; n <= 6; ++n) {
        const MassPairInput in = random_input(n, rng);
        const ComplexMatrix d = ComplexMatrix::diagonal(in.a().values());
        const ComplexMatrix dp = ComplexMatrix::diagonal(in.b().values());
        const ComplexMatrix& v = in.v().matrix();
        const ComplexMatrix w = oracle::matmul(oracle::matmul(v, dp), oracle::adjoint(v));
        const ComplexMatrix ref = oracle::matmul(d, w) - oracle::matmul(w, d);
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j) CHECK(std::abs(u_entry(in, i, j) - ref(i - 1, j - 1)) <= 1e-14);
        CHECK(oracle::max_abs_diff(commutator_matrix(in), ref) <= 1e-14);
    }
}

TEST_CASE("u_entry index checks") {
    SeededRng rng(2);
    const MassPairInput in = random_input(3, rng);
    CHECK_THROWS_AS(u_entry(in, 0, 1), IndexError);
    CHECK_THROWS_AS(u_entry(in, 1, 4), IndexError);
}

TEST_CASE("det_direct matches the full-matrix commutator determinant") {
    SeededRng rng(3);
    for (std::size_t n = 2; n <= 5; ++n) {
        for (int t = 0; t < 20; ++t) {
            const MassPairInput in = random_input(n, rng);
            const Complex ref = oracle::commutator_det(values(in.a()), values(in.b()), in.v().matrix());
            CHECK(rel_err(det_direct(in), ref) <= 1e-12);
        }
    }
}

TEST_CASE("from_hermitian reproduces the determinant of the original pair") {
    std::mt19937_64 g(4);
    for (std::size_t n = 3; n <= 4; ++n) {
        for (int t = 0; t < 10; ++t) {
            const ComplexMatrix x = oracle::random_matrix(n, g);
            const ComplexMatrix y = oracle::random_matrix(n, g);
            const ComplexMatrix h = Complex(0.5) * (x + oracle::adjoint(x));
            const ComplexMatrix hp = Complex(0.5) * (y + oracle::adjoint(y));
            const ComplexMatrix c = oracle::matmul(h, hp) - oracle::matmul(hp, h);
            const Complex ref = oracle::det(c);
            const MassPairInput in = MassPairInput::from_hermitian(h, hp);
            CHECK(rel_err(det_direct(in), ref) <= 1e-10);
            CHECK(rel_err(det_closed(in), ref) <= 1e-9);
        }
    }
}

TEST_CASE("n = 3 closed form equals the direct determinant") {
    SeededRng rng(5);
    for (int t = 0; t < 500; ++t) {
        const MassPairInput in = random_input(3, rng);
        const Complex ref = oracle::commutator_det(values(in.a()), values(in.b()), in.v().matrix());
        CHECK(rel_err(det3_closed(in), ref) <= 1e-10);
        CHECK(det3_closed(in).real() == 0.0);
    }
}

TEST_CASE("n = 4 closed form equals the direct determinant") {
    SeededRng rng(6);
    for (int t = 0; t < 500; ++t) {
        const MassPairInput in = random_input(4, rng);
        const Complex ref = oracle::commutator_det(values(in.a()), values(in.b()), in.v().matrix());
        CHECK(rel_err(det4_closed(in), ref) <= 1e-9);
        CHECK(det4_closed(in).imag() == 0.0);
    }
}

TEST_CASE("closed forms for other dimensions are rejected") {
    SeededRng rng(7);
    CHECK_THROWS_AS(det_closed(random_input(5, rng)), DimensionError);
    CHECK_THROWS_AS(det_closed(random_input(2, rng)), DimensionError);
    CHECK_THROWS_AS(det3_closed(random_input(4, rng)), DimensionError);
    CHECK_THROWS_AS(det4_closed(random_input(3, rng)), DimensionError);
}

TEST_CASE("T factors at a = (0, 1, 2, 3)") {
    const TFactors t = t_factors(Spectrum{0.0, 1.0, 2.0, 3.0});
    CHECK(t[Pairing::p12_34] == 1.0);
    CHECK(t[Pairing::p13_24] == 16.0);
    CHECK(t[Pairing::p14_23] == 9.0);
    CHECK(t[Cycle::c1243] == 4.0);
    CHECK(t[Cycle::c1324] == 12.0);
    CHECK(t[Cycle::c1234] == -3.0);
    CHECK(t.identity_residual() == 0.0);
    CHECK(label(Pairing::p13_24) == "(13)(24)");
    CHECK(label(Cycle::c1234) == "(1234)");
}

TEST_CASE("T factors always satisfy the pairing-cycle identity") {
    SeededRng rng(8);
    for (int t = 0; t < 10000; ++t) CHECK(t_factors(random_spectrum(4, rng)).identity_relative_residual() <= 1e-12);
}

TEST_CASE("every n = 4 term group is its T factor times an a-independent sum") {
    SeededRng rng(9);
    const MassPairInput in = random_input(4, rng);
    const MassPairInput other(random_spectrum(4, rng), in.b(), in.v());
    const Det4Terms x = decompose_det4(in);
    const Det4Terms y = decompose_det4(other);
    const TFactors tx = t_factors(in.a());
    const TFactors ty = t_factors(other.a());
    for (std::size_t p = 0; p < 3; ++p) {
        CHECK(std::abs(x.pair_cubic[p] / tx.pair[p] - y.pair_cubic[p] / ty.pair[p]) <= 1e-12);
        CHECK(std::abs(x.pair_quartic[p] / tx.pair[p] - y.pair_quartic[p] / ty.pair[p]) <= 1e-12);
        CHECK(std::abs(x.cycle_cubic[p] / tx.cycle[p] - y.cycle_cubic[p] / ty.cycle[p]) <= 1e-12);
        CHECK(std::abs(x.cycle_quartic[p] / tx.cycle[p] - y.cycle_quartic[p] / ty.cycle[p]) <= 1e-12);
    }
    CHECK(det4_closed(in).real() == x.total().real());
}

TEST_CASE("determinant is unchanged by a common shift of either spectrum") {
    SeededRng rng(10);
    for (std::size_t n = 3; n <= 4; ++n) {
        const MassPairInput in = random_input(n, rng);
        const MassPairInput moved(in.a().shifted(0.37), in.b().shifted(-1.25), in.v());
        CHECK(rel_err(det_direct(moved), det_direct(in)) <= 1e-12);
        CHECK(rel_err(det_closed(moved), det_closed(in)) <= 1e-12);
    }
}

TEST_CASE("commuting pair has zero determinant") {
    SeededRng rng(11);
    for (std::size_t n = 3; n <= 4; ++n) {
        const MassPairInput in(random_spectrum(n, rng), random_spectrum(n, rng), UnitaryMatrix::identity(n));
        CHECK(det_direct(in) == Complex(0.0, 0.0));
        CHECK(det_closed(in) == Complex(0.0, 0.0));
    }
}

TEST_CASE("exchanging H and H' multiplies the determinant by (-1)^n") {
    SeededRng rng(12);
    for (std::size_t n = 3; n <= 4; ++n) {
        const double sign = n % 2 ? -1.0 : 1.0;
        for (int t = 0; t < 50; ++t) {
            const MassPairInput in = random_input(n, rng);
            const MassPairInput sw = in.swapped();
            CHECK(rel_err(det_direct(sw), sign * det_direct(in)) <= 1e-12);
            CHECK(rel_err(det_closed(sw), sign * det_closed(in)) <= 1e-10);
        }
    }
}

TEST_CASE("parity of the determinant") {
    SeededRng rng(13);
    for (int t = 0; t < 200; ++t) {
        const MassPairInput in3 = random_input(3, rng);
        const MassPairInput in4 = random_input(4, rng);
        const Complex d3 = det_direct(in3);
        const Complex d4 = det_direct(in4);
        CHECK(std::abs(d3.real()) <= 1e-9 * std::abs(d3));
        CHECK(std::abs(d4.imag()) <= 1e-9 * std::abs(d4));
    }
}

TEST_CASE("n = 3 determinant is linear in the cyclic difference product") {
    SeededRng rng(14);
    const MassPairInput in = random_input(3, rng);
    const Complex base = det_direct(in) / cyclic_difference_product(in.a());
    for (double gap : {1e-1, 1e-3, 1e-5}) {
        const Spectrum a{0.2, 0.2 + gap, -0.6};
        const MassPairInput near(a, in.b(), in.v());
        CHECK(std::abs(det_direct(near) / cyclic_difference_product(a) - base) <= 1e-7 * std::abs(base));
        CHECK(rel_err(det3_closed(near), det_direct(near)) <= 1e-10);
    }
}

TEST_CASE("n = 4 closed form stays accurate near a degenerate pair") {
    SeededRng rng(15);
    const MassPairInput in = random_input(4, rng);
    for (double gap : {1e-2, 1e-4, 1e-6}) {
        const MassPairInput near(Spectrum{-0.5, 0.1, 0.1 + gap, 0.8}, in.b(), in.v());
        const Complex ref = oracle::commutator_det(values(near.a()), values(near.b()), near.v().matrix());
        CHECK(rel_err(det4_closed(near), ref) <= 1e-9);
    }
}

TEST_CASE("mass pair construction checks") {
    SeededRng rng(16);
    CHECK_THROWS_AS(MassPairInput(random_spectrum(3, rng), random_spectrum(4, rng), haar_unitary(4, rng)),
                    DimensionError);
    const Spectrum a = random_spectrum(4, rng);
    const Spectrum b = random_spectrum(4, rng);
    const UnitaryMatrix u = haar_unitary(4, rng);
    const UnitaryMatrix up = haar_unitary(4, rng);
    const MassPairInput in = MassPairInput::from_unitaries(a, b, u, up);
    const ComplexMatrix ref = oracle::matmul(oracle::adjoint(u.matrix()), up.matrix());
    CHECK(oracle::max_abs_diff(in.v().matrix(), ref) <= 1e-14);
}
