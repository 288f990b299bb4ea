#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "jarlskog/linalg.hpp"

namespace jarlskog {

/// SplitMix64 generator. The raw 64-bit stream depends only on the seed, so
/// it is identical on every platform; see tests/unit/test_sampling.cpp for the
/// frozen reference vectors.
///
/// Independent streams for ensemble trials come from stream(master, index),
/// which makes every trial reproducible on its own and independent of the
/// order in which trials are evaluated.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

    /// Seed of the index-th independent stream under a master seed.
    static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept;
    static SeededRng stream(std::uint64_t master, std::uint64_t index) noexcept {
        return SeededRng(stream_seed(master, index));
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Two independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() noexcept;
    /// Standard complex Gaussian: E|z|^2 = 1.
    Complex complex_normal() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

/// Haar-distributed unitary matrix.
///
/// Draws a complex Ginibre matrix, factors it as Q R with Householder
/// reflections and returns Q diag(r_ii / |r_ii|). The phase correction is
/// required: Q alone is not Haar distributed, because the QR factorization is
/// only unique up to a diagonal unitary and the Householder convention picks
/// one that correlates with the input.
UnitaryMatrix haar_unitary(std::size_t n, SeededRng& rng);

inline constexpr double kDefaultMinGap = 0.05;

/// n values uniform on [-1, 1], redrawn until every pairwise gap is at least
/// min_gap, returned ascending. Throws when min_gap * (n - 1) >= 2.
Spectrum random_spectrum(std::size_t n, SeededRng& rng, double min_gap = kDefaultMinGap);

/// Row phases theta and column phases theta_prime for
/// V -> diag(e^{i theta}) V diag(e^{i theta_prime}). Angles are reduced to [0, 2 pi).
class RephasingAngles {
public:
    RephasingAngles(std::vector<double> theta, std::vector<double> theta_prime);

    static RephasingAngles zero(std::size_t n);
    static RephasingAngles random(std::size_t n, SeededRng& rng);

    std::size_t n() const noexcept { return theta_.size(); }
    const std::vector<double>& theta() const noexcept { return theta_; }
    const std::vector<double>& theta_prime() const noexcept { return theta_prime_; }

    friend RephasingAngles operator+(const RephasingAngles& x, const RephasingAngles& y);

private:
    std::vector<double> theta_;
    std::vector<double> theta_prime_;
};

UnitaryMatrix rephase(const UnitaryMatrix& v, const RephasingAngles& angles);

}  // namespace jarlskog
