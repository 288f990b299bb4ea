#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jarlskog/phases.hpp"
#include "jarlskog/sampling.hpp"

using namespace jarlskog;

// Reference outputs from an independent SplitMix64 implementation.
TEST_CASE("SplitMix64 reference vectors") {
    struct Vector {
        std::uint64_t seed;
        std::uint64_t out[4];
    };
    const Vector vectors[] = {
        {0x0, {0xe220a8397b1dcdafULL, 0x6e789e6aa1b965f4ULL, 0x06c45d188009454fULL, 0xf88bb8a8724c81ecULL}},
        {0x2a, {0xbdd732262feb6e95ULL, 0x28efe333b266f103ULL, 0x47526757130f9f52ULL, 0x581ce1ff0e4ae394ULL}},
        {0xffffffffffffffffULL,
         {0xe4d971771b652c20ULL, 0xe99ff867dbf682c9ULL, 0x382ff84cb27281e9ULL, 0x6d1db36ccba982d2ULL}},
    };
    for (const auto& v : vectors) {
        SeededRng rng(v.seed);
        for (std::uint64_t x : v.out) CHECK(rng.next_u64() == x);
    }
}

TEST_CASE("uniform draws lie in [0, 1) and streams are distinct") {
    SeededRng rng(5);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(SeededRng::stream_seed(1, 0) != SeededRng::stream_seed(1, 1));
    CHECK(SeededRng::stream_seed(1, 0) != SeededRng::stream_seed(2, 0));
    CHECK(SeededRng::stream(9, 3).seed() == SeededRng::stream_seed(9, 3));
}

TEST_CASE("complex normals have unit variance") {
    SeededRng rng(6);
    double m2 = 0.0;
    Complex m1 = 0.0;
    const int count = 200000;
    for (int i = 0; i < count; ++i) {
        const Complex z = rng.complex_normal();
        m1 += z;
        m2 += std::norm(z);
    }
    CHECK(std::abs(m1 / double(count)) < 0.01);
    CHECK(std::abs(m2 / count - 1.0) < 0.01);
}

TEST_CASE("haar_unitary is unitary and reproducible") {
    for (std::size_t n = 2; n <= 8; ++n) {
        SeededRng a(42), b(42);
        const UnitaryMatrix u = haar_unitary(n, a);
        CHECK(u.unitarity_defect() <= 1e-13);
        CHECK(u.matrix() == haar_unitary(n, b).matrix());
    }
}

// Haar moments for n = 3: E|V11|^2 = 1/3, E|V11|^4 = 1/6, and every
// phase-sensitive moment vanishes.
TEST_CASE("haar_unitary moments") {
    SeededRng rng(2024);
    const int count = 20000;
    double m2 = 0.0, m4 = 0.0;
    Complex m1 = 0.0, m11 = 0.0, dt = 0.0;
    for (int i = 0; i < count; ++i) {
        const UnitaryMatrix u = haar_unitary(3, rng);
        const Complex z = u(0, 0);
        m1 += z;
        m11 += z * z;
        m2 += std::norm(z);
        m4 += std::norm(z) * std::norm(z);
        dt += det(u.matrix());
    }
    CHECK(std::abs(m2 / count - 1.0 / 3.0) < 0.02);
    CHECK(std::abs(m4 / count - 1.0 / 6.0) < 0.02);
    CHECK(std::abs(m1 / double(count)) < 0.02);
    CHECK(std::abs(m11 / double(count)) < 0.02);
    CHECK(std::abs(dt / double(count)) < 0.03);
}

TEST_CASE("random_spectrum respects the gap and its feasibility bound") {
    SeededRng rng(7);
    for (int t = 0; t < 200; ++t) {
        const Spectrum s = random_spectrum(4, rng, 0.2);
        CHECK(s.min_gap() >= 0.2);
        for (std::size_t i = 0; i + 1 < s.n(); ++i) CHECK(s[i] < s[i + 1]);
        CHECK(s[0] >= -1.0);
        CHECK(s[3] < 1.0);
    }
    CHECK_NOTHROW(random_spectrum(2, rng, 1.9));
    CHECK_THROWS_AS(random_spectrum(3, rng, 1.1), Error);
}

TEST_CASE("rephasing group action") {
    SeededRng rng(8);
    const UnitaryMatrix v = haar_unitary(4, rng);
    CHECK(rephase(v, RephasingAngles::zero(4)).matrix() == v.matrix());

    // A global phase split between rows and columns cancels.
    const double t = 0.7;
    const RephasingAngles global(std::vector<double>(4, t), std::vector<double>(4, -t));
    CHECK(max_abs_diff(rephase(v, global).matrix(), v.matrix()) <= 1e-15);

    const RephasingAngles a = RephasingAngles::random(4, rng);
    const RephasingAngles b = RephasingAngles::random(4, rng);
    const UnitaryMatrix lhs = rephase(rephase(v, a), b);
    const UnitaryMatrix rhs = rephase(v, a + b);
    CHECK(max_abs_diff(lhs.matrix(), rhs.matrix()) <= 1e-13);

    const RephasingAngles sum = a + b;
    for (double x : sum.theta()) {
        CHECK(x >= 0.0);
        CHECK(x < 2.0 * std::numbers::pi);
    }
    CHECK_THROWS_AS(rephase(v, RephasingAngles::zero(3)), DimensionError);
}

TEST_CASE("a fixed rephasing leaves the ensemble mean of (12;12) unchanged") {
    SeededRng rng(9);
    const RephasingAngles fixed = RephasingAngles::random(3, rng);
    const int count = 10000;
    double s = 0.0, s2 = 0.0, shift = 0.0;
    for (int i = 0; i < count; ++i) {
        const UnitaryMatrix v = haar_unitary(3, rng);
        const double x = im_phase(v, {1, 2, 1, 2});
        s += x;
        s2 += x * x;
        shift += im_phase(rephase(v, fixed), {1, 2, 1, 2}) - x;
    }
    const double mean = s / count;
    const double se = std::sqrt((s2 / count - mean * mean) / count);
    CHECK(std::abs(shift / count) < 3.0 * se);
}
