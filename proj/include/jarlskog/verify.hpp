#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jarlskog/determinant.hpp"
#include "jarlskog/sampling.hpp"

namespace jarlskog {

inline constexpr const char* kToolVersion = "0.1.0";

/// Allowed error for a residual r measured against a scale s:
/// r <= rel * s + abs.
struct Tolerance {
    double rel = 0.0;
    double abs = 0.0;
    double allowed(double scale) const noexcept { return rel * scale + abs; }
};

/// The random problem drawn from one seed: V first, then a, then b.
/// `jarlskog sample --seed s` and trial streams of `verify` share it.
MassPairInput sample_problem(std::size_t n, std::uint64_t seed, double min_gap = kDefaultMinGap);

struct VerifyOptions {
    std::size_t n = 3;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Replace the rel / abs component of every identity's tolerance.
    std::optional<double> tol_rel;
    std::optional<double> tol_abs;
};

struct IdentityResult {
    std::string name;
    Tolerance tolerance;
    std::size_t evaluated = 0;   // trials on which the identity was checked
    double max_residual = 0.0;
    double mean_residual = 0.0;
    /// max over trials of residual / allowed; pass iff <= 1.
    double max_ratio = 0.0;
    std::size_t worst_trial = 0;
    std::uint64_t worst_seed = 0;
    bool pass = true;
};

struct VerificationReport {
    std::string suite;
    std::string tool_version;
    std::size_t n = 0;
    std::uint64_t master_seed = 0;
    std::size_t trials = 0;
    std::vector<IdentityResult> identities;
    /// Fraction of trials whose reconstruction system passed the
    /// singular-value gate (n = 4 only).
    std::optional<double> reconstruction_gate_pass_rate;
    bool all_pass = true;
    double wall_seconds = 0.0;

    const IdentityResult* find(const std::string& name) const;
};

/// Default tolerance of every identity checked for dimension n.
std::vector<std::pair<std::string, Tolerance>> default_tolerances(std::size_t n);

/// Runs the identity suite over `trials` problems drawn from per-trial
/// streams of the master seed. n must be 3 or 4. Results do not depend on
/// the thread count.
VerificationReport run_verification(const VerifyOptions& opts);

/// JSON text of the report. Wall time is left out unless requested so that
/// equal seeds give byte-identical reports.
std::string to_json(const VerificationReport& report, bool include_timing = false);

}  // namespace jarlskog
