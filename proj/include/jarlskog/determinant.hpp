#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "jarlskog/linalg.hpp"

namespace jarlskog {

/// Eigenvalues a of H, b of H', and the mixing matrix V = U^dagger U'.
class MassPairInput {
public:
    MassPairInput(Spectrum a, Spectrum b, UnitaryMatrix v);

    /// Diagonalizes both Hermitian matrices and forms V = U^dagger U'.
    static MassPairInput from_hermitian(const ComplexMatrix& h, const ComplexMatrix& h_prime,
                                        const JacobiOptions& opts = {});
    /// V = U^dagger U' from the two diagonalizing unitaries.
    static MassPairInput from_unitaries(Spectrum a, Spectrum b, const UnitaryMatrix& u, const UnitaryMatrix& u_prime);

    std::size_t n() const noexcept { return v_.n(); }
    const Spectrum& a() const noexcept { return a_; }
    const Spectrum& b() const noexcept { return b_; }
    const UnitaryMatrix& v() const noexcept { return v_; }

    /// (b, a, V^dagger): the same pair with the roles of H and H' exchanged.
    MassPairInput swapped() const;

private:
    Spectrum a_;
    Spectrum b_;
    UnitaryMatrix v_;
};

/// Entry (i, j) of D V D' V^dagger - V D' V^dagger D, i.e.
/// (a_i - a_j) sum_k b_k V_ik conj(V_jk). Indices are 1-based.
Complex u_entry(const MassPairInput& in, std::size_t i, std::size_t j);

/// The commutator matrix assembled from u_entry.
ComplexMatrix commutator_matrix(const MassPairInput& in);

/// det [H, H'] by LU on the commutator matrix. Reference value for both
/// closed forms.
Complex det_direct(const MassPairInput& in);

/// n = 3: 2i T B Im(V11 V22 conj(V12) conj(V21)),
/// T = (a1-a2)(a2-a3)(a3-a1), B likewise in b.
Complex det3_closed(const MassPairInput& in);

/// Product of cyclic differences (x1-x2)(x2-x3)(x3-x1) for n = 3.
double cyclic_difference_product(const Spectrum& s);

enum class Pairing : std::size_t { p12_34 = 0, p13_24 = 1, p14_23 = 2 };
enum class Cycle : std::size_t { c1243 = 0, c1324 = 1, c1234 = 2 };

std::string_view label(Pairing p);
std::string_view label(Cycle c);

/// Eigenvalue-difference weights for n = 4.
///   pair  T_(ij)(kl) = (x_i - x_j)^2 (x_k - x_l)^2
///   cycle T_(ijkl)   = (x_i - x_j)(x_j - x_k)(x_k - x_l)(x_l - x_i)
/// The same struct serves as the B factors when built from b.
struct TFactors {
    std::array<double, 3> pair{};   // indexed by Pairing
    std::array<double, 3> cycle{};  // indexed by Cycle

    double operator[](Pairing p) const noexcept { return pair[static_cast<std::size_t>(p)]; }
    double operator[](Cycle c) const noexcept { return cycle[static_cast<std::size_t>(c)]; }

    /// T_(12)(34) + T_(13)(24) + T_(14)(23) - 2 (T_(1243) + T_(1324) + T_(1234)); zero identically.
    double identity_residual() const noexcept;
    /// identity_residual scaled by the sum of the absolute values of its six terms.
    double identity_relative_residual() const noexcept;
};

TFactors t_factors(const Spectrum& s);

/// The n = 4 closed form split into its twelve T-weighted term groups.
/// Every group holds the complex value it contributes to the bracket
/// (weight and sign included); the determinant is the real part of the sum.
///
/// Group layout, with b~_k = b_k - b_4, k's summed over 1..3, [ab;jk] the
/// plaquette V_aj V_bk conj(V_ak) conj(V_bj) and (abc) the three-cycle
/// V_a,k1 conj(V_b,k1) V_b,k2 conj(V_c,k2) V_c,k3 conj(V_a,k3):
///
///   pair_cubic[p]    +T_p   sum b~1 b~2 b~3^2 [rs;k1k2] |V_t,k3|^2
///   cycle_cubic[c]   -2T_c  sum b~1 b~2 b~3^2 (cycle)
///   pair_quartic[p]  -T_p   sum b~1..b~4 ([..;k1k2][..;k3k4] + [rs;k1k2] |V_t,k3|^2 |V_t,k4|^2)
///   cycle_quartic[c] +2T_c  sum b~1..b~4 (cycle)(|V_x,k4|^2 + |V_y,k4|^2)
///
/// with (rs, t) = (12, 3), (13, 2), (23, 1) for p = (12)(34), (13)(24), (14)(23)
/// and cycles (312), (132), (123) for c = (1243), (1324), (1234).
///
/// Note the bracket [ab;jk] here is the complex plaquette; its imaginary part
/// is the invariant phase (ab;jk) of phases.hpp, and the three-cycle (abc) is
/// unrelated to that phase notation.
struct Det4Terms {
    std::array<Complex, 3> pair_cubic{};
    std::array<Complex, 3> cycle_cubic{};
    std::array<Complex, 3> pair_quartic{};
    std::array<Complex, 3> cycle_quartic{};

    /// Sum in the fixed order pair_cubic, cycle_cubic, pair_quartic,
    /// cycle_quartic, each in Pairing / Cycle order.
    Complex total() const noexcept;
};

Det4Terms decompose_det4(const MassPairInput& in);

/// n = 4 closed form: Re(decompose_det4(in).total()) with zero imaginary part.
Complex det4_closed(const MassPairInput& in);

/// det3_closed or det4_closed by dimension; DimensionError otherwise.
Complex det_closed(const MassPairInput& in);

}  // namespace jarlskog
