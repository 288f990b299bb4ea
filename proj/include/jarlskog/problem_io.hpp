#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jarlskog/determinant.hpp"

namespace jarlskog {

/// Malformed or invalid problem file. The message names the offending field
/// (or line and column for syntax errors).
class ParseError : public Error {
public:
    using Error::Error;
};

/// On-disk problem description. Exactly one of V or (U, U_prime) is set.
///
///   {
///     "format": "jarlskog-problem",
///     "version": 1,
///     "n": 3,
///     "a": [..n reals..],
///     "b": [..n reals..],
///     "V": [[[re, im], ...], ...]          // or "U" and "U_prime"
///   }
///
/// Numbers are written with 17 significant digits, so a written file reads
/// back to the same binary64 values.
struct ProblemFile {
    std::size_t n = 0;
    std::vector<double> a;
    std::vector<double> b;
    std::optional<ComplexMatrix> v;
    std::optional<ComplexMatrix> u;
    std::optional<ComplexMatrix> u_prime;

    static ProblemFile from_input(const MassPairInput& in);
    /// Validates the spectra and unitarity; V = U^dagger U' when U, U' are given.
    MassPairInput to_input() const;
};

inline constexpr const char* kProblemFormat = "jarlskog-problem";
inline constexpr int kProblemVersion = 1;

ProblemFile parse_problem(std::string_view text);
std::string write_problem(const ProblemFile& p);

/// "%.17g" of x, with negative zero printed as 0.
std::string format_real(double x);
/// "re+imi" / "re-imi".
std::string format_complex(Complex z);

}  // namespace jarlskog
