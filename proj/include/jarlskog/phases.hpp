#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jarlskog/linalg.hpp"

namespace jarlskog {

/// (alpha beta ; j k), all 1-based. alpha, beta index rows of V; j, k columns.
struct PlaquetteIndex {
    std::size_t alpha, beta, j, k;
    friend bool operator==(const PlaquetteIndex&, const PlaquetteIndex&) = default;
};

/// V_alpha,j V_beta,k conj(V_alpha,k) conj(V_beta,j), evaluated as
/// x_j conj(x_k) with x_m = V_alpha,m conj(V_beta,m). Exchanging alpha and
/// beta, or j and k, conjugates the result bit for bit.
Complex plaquette(const UnitaryMatrix& v, PlaquetteIndex idx);
/// (alpha beta ; j k) := Im of the plaquette.
double im_phase(const UnitaryMatrix& v, PlaquetteIndex idx);
/// <alpha beta ; j k> := Re of the plaquette.
double re_phase(const UnitaryMatrix& v, PlaquetteIndex idx);

/// Ordered index pairs (1,2), (1,3), ..., (n-1,n).
std::vector<std::pair<std::size_t, std::size_t>> canonical_pairs(std::size_t n);

struct JRMatrices;

/// All (alpha beta ; j k) and, when available, <alpha beta ; j k> for one V.
/// Only alpha < beta, j < k are evaluated; the rest follow from antisymmetry
/// of the imaginary part and symmetry of the real part under alpha <-> beta
/// and j <-> k. Entries with alpha == beta or j == k have zero imaginary part
/// and are evaluated directly for the real part.
class PhaseTable {
public:
    std::size_t n() const noexcept { return n_; }
    bool has_real() const noexcept { return re_.has_value(); }

    double im(PlaquetteIndex idx) const;
    /// Throws std::logic_error for tables built without real parts.
    double re(PlaquetteIndex idx) const;

    /// Number of alpha < beta, j < k entries: C(n,2)^2.
    std::size_t canonical_count() const noexcept;

private:
    friend PhaseTable phase_table(const UnitaryMatrix& v);
    friend PhaseTable expand_phases(const JRMatrices& jr);

    explicit PhaseTable(std::size_t n, bool with_real);
    std::size_t flat(PlaquetteIndex idx) const;

    std::size_t n_;
    std::vector<double> im_;
    std::optional<std::vector<double>> re_;
};

/// Evaluates the table of V; n must be 3 or 4.
PhaseTable phase_table(const UnitaryMatrix& v);

struct ResidualFamily {
    std::string name;
    double max = 0.0;
    double mean = 0.0;
    std::size_t count = 0;
};

struct ResidualReport {
    std::vector<ResidualFamily> families;
    double max() const noexcept;
};

/// Row and column sums of the invariant phases:
///   sum_alpha (ab;jk) = sum_beta (ab;jk) = sum_j (ab;jk) = sum_k (ab;jk) = 0
///   sum_alpha <ab;jk> = d_jk |V_beta j|^2,  sum_beta <ab;jk> = d_jk |V_alpha j|^2
///   sum_j <ab;jk> = d_ab |V_alpha k|^2,     sum_k <ab;jk> = d_ab |V_alpha j|^2
/// Eight families, absolute residuals over every free index tuple.
ResidualReport unitary_relation_residuals(const UnitaryMatrix& v);

/// n = 3: each of the nine (alpha < beta ; j < k) phases is +-(12;12).
struct N3PhaseEntry {
    PlaquetteIndex index;
    double value;
    int expected_sign;  // the fixed pattern
    int observed_sign;  // sign of value / (12;12); 0 when indeterminate
};

struct N3PhaseReport {
    double base;  // (12;12)
    std::array<N3PhaseEntry, 9> entries;
    /// max |value - expected_sign * base|
    double max_deviation;
    /// |base| at or below the sign threshold: every phase is ~0.
    bool indeterminate;
    bool pattern_matches;  // every observed sign equals the expected one (false when indeterminate)
};

inline constexpr double kSignThreshold = 1e-12;

N3PhaseReport n3_phase_table(const UnitaryMatrix& v);

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// n = 4: J_aj = (a, a+1 ; j, j+1), R_aj = <a, a+1 ; j, j+1>, a, j = 1..3.
struct JRMatrices {
    Matrix3 J{};
    Matrix3 R{};
};

JRMatrices jr_matrices(const UnitaryMatrix& v);

/// [[1,-1,0],[-1,1,-1],[0,-1,1]]
inline constexpr Matrix3 kAMatrix{{{1.0, -1.0, 0.0}, {-1.0, 1.0, -1.0}, {0.0, -1.0, 1.0}}};

Matrix3 mul(const Matrix3& x, const Matrix3& y);

/// Block ordering of index pairs used by the expansion: adjacent pairs
/// (12), (23), (34) map to J's rows/columns 0..2, and non-adjacent pairs are
/// ordered (24), (14), (13). With that ordering the four 3x3 blocks of the
/// 36 phases are J, J A, A J and A J A.
struct PairSlot {
    bool adjacent;
    std::size_t slot;  // 0..2
};
PairSlot pair_slot(std::size_t first, std::size_t second);

/// All 36 imaginary phases of an n = 4 matrix from J alone (no real parts).
PhaseTable expand_phases(const JRMatrices& jr);

/// Nonlinear relations among the phases, over all index tuples:
///   row_linear:    <ab;jk>(ab;kl) + <ab;kl>(ab;jk) = <ab;kk>(ab;jl)
///   column_linear: <ab;jk>(bc;jk) + <bc;jk>(ab;jk) = <bb;jk>(ac;jk)
///   row_quadratic:    <ab;jk><ab;lm> - <ab;jm><ab;kl> = (ab;jl)(ab;km)
///   column_quadratic: <ab;jk><cd;jk> - <ad;jk><bc;jk> = (ac;jk)(bd;jk)
ResidualReport nonlinear_relation_residuals(const UnitaryMatrix& v);

inline constexpr double kReconstructionGate = 1e-8;

/// Recovers J12, J13, J21, J23, J31, J32 from J11, J22, J33 through the
/// 6x6 linear system built from R and |V|^2 products (n = 4).
struct JReconstruction {
    enum class Status { solved, degenerate };

    Status status = Status::degenerate;
    std::array<std::array<double, 6>, 6> coefficients{};
    std::array<double, 6> rhs{};
    std::array<double, 6> singular_values{};  // descending
    /// smallest / largest singular value; 0 when the matrix vanishes.
    double singular_ratio = 0.0;
    Matrix3 direct{};
    /// Diagonal copied from direct; off-diagonal band solved. Zero if degenerate.
    Matrix3 reconstructed{};
    /// max entrywise |reconstructed - direct|; 0 if degenerate.
    double max_error = 0.0;
};

/// Unknown order of the 6x6 system: J12, J13, J21, J23, J31, J32.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kReconstructionUnknowns{
    {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};

JReconstruction reconstruct_J(const UnitaryMatrix& v, double gate = kReconstructionGate);

}  // namespace jarlskog
