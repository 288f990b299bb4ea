#include "jarlskog/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace jarlskog {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double reduce_angle(double x) {
    if (!std::isfinite(x)) throw Error("rephasing angles must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

}  // namespace

std::uint64_t SeededRng::stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64((index + 1) * kGolden));
}

std::uint64_t SeededRng::next_u64() noexcept {
    state_ += kGolden;
    return mix64(state_);
}

double SeededRng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::pair<double, double> SeededRng::normal_pair() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

Complex SeededRng::complex_normal() noexcept {
    const auto [x, y] = normal_pair();
    return {x * std::numbers::sqrt2 / 2.0, y * std::numbers::sqrt2 / 2.0};
}

UnitaryMatrix haar_unitary(std::size_t n, SeededRng& rng) {
    if (n < ComplexMatrix::kMinDim || n > ComplexMatrix::kMaxDim) {
        throw DimensionError("haar_unitary: unsupported dimension " + std::to_string(n));
    }
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.complex_normal();

    ComplexMatrix q = ComplexMatrix::identity(n);
    std::vector<Complex> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const Complex x0 = a(k, k);
        const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0, 0.0} : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;

        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = a(i, k) - (i == k ? alpha : Complex{});
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (std::size_t i = k; i < n; ++i) v[i] *= inv;

        // a <- (I - 2 v v^dagger) a on rows k.., columns k..
        for (std::size_t j = k; j < n; ++j) {
            Complex s{};
            for (std::size_t i = k; i < n; ++i) s += std::conj(v[i]) * a(i, j);
            for (std::size_t i = k; i < n; ++i) a(i, j) -= 2.0 * v[i] * s;
        }
        // q <- q (I - 2 v v^dagger)
        for (std::size_t i = 0; i < n; ++i) {
            Complex s{};
            for (std::size_t l = k; l < n; ++l) s += q(i, l) * v[l];
            for (std::size_t l = k; l < n; ++l) q(i, l) -= 2.0 * s * std::conj(v[l]);
        }
    }

    // Phase fix: q diag(r_kk / |r_kk|).
    for (std::size_t k = 0; k < n; ++k) {
        const Complex r = a(k, k);
        const double m = std::abs(r);
        if (m == 0.0) continue;
        const Complex ph = r / m;
        for (std::size_t i = 0; i < n; ++i) q(i, k) *= ph;
    }
    return UnitaryMatrix(std::move(q));
}

Spectrum random_spectrum(std::size_t n, SeededRng& rng, double min_gap) {
    if (n < ComplexMatrix::kMinDim || n > ComplexMatrix::kMaxDim) {
        throw DimensionError("random_spectrum: unsupported dimension " + std::to_string(n));
    }
    if (!(min_gap > 0.0)) throw Error("random_spectrum: min_gap must be positive");
    if (min_gap * static_cast<double>(n - 1) >= 2.0) {
        throw Error("random_spectrum: min_gap " + std::to_string(min_gap) + " is infeasible for " +
                    std::to_string(n) + " values in [-1, 1]");
    }
    std::vector<double> v(n);
    for (;;) {
        for (double& x : v) x = rng.uniform(-1.0, 1.0);
        std::sort(v.begin(), v.end());
        bool ok = true;
        for (std::size_t i = 0; i + 1 < n; ++i) ok = ok && (v[i + 1] - v[i] >= min_gap);
        if (ok) return Spectrum(v);
    }
}

RephasingAngles::RephasingAngles(std::vector<double> theta, std::vector<double> theta_prime)
    : theta_(std::move(theta)), theta_prime_(std::move(theta_prime)) {
    if (theta_.size() != theta_prime_.size()) {
        throw DimensionError("rephasing angles: " + std::to_string(theta_.size()) + " row angles vs " +
                             std::to_string(theta_prime_.size()) + " column angles");
    }
    for (double& x : theta_) x = reduce_angle(x);
    for (double& x : theta_prime_) x = reduce_angle(x);
}

RephasingAngles RephasingAngles::zero(std::size_t n) {
    return RephasingAngles(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0));
}

RephasingAngles RephasingAngles::random(std::size_t n, SeededRng& rng) {
    std::vector<double> t(n), tp(n);
    for (double& x : t) x = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (double& x : tp) x = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return RephasingAngles(std::move(t), std::move(tp));
}

RephasingAngles operator+(const RephasingAngles& x, const RephasingAngles& y) {
    if (x.n() != y.n()) throw DimensionError("rephasing angles: dimension mismatch");
    std::vector<double> t(x.n()), tp(x.n());
    for (std::size_t i = 0; i < x.n(); ++i) {
        t[i] = x.theta_[i] + y.theta_[i];
        tp[i] = x.theta_prime_[i] + y.theta_prime_[i];
    }
    return RephasingAngles(std::move(t), std::move(tp));
}

UnitaryMatrix rephase(const UnitaryMatrix& v, const RephasingAngles& angles) {
    if (v.n() != angles.n()) {
        throw DimensionError("rephase: matrix is " + std::to_string(v.n()) + "x" + std::to_string(v.n()) +
                             " but angles have dimension " + std::to_string(angles.n()));
    }
    ComplexMatrix r = v.matrix();
    for (std::size_t i = 0; i < v.n(); ++i)
        for (std::size_t j = 0; j < v.n(); ++j)
            r(i, j) *= std::polar(1.0, angles.theta()[i] + angles.theta_prime()[j]);
    return UnitaryMatrix(std::move(r));
}

}  // namespace jarlskog
