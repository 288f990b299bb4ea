#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "jarlskog/errors.hpp"

namespace jarlskog {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Indices are 0-based internally;
/// user-facing output converts to 1-based.
class ComplexMatrix {
public:
    static constexpr std::size_t kMinDim = 2;
    static constexpr std::size_t kMaxDim = 8;

    /// Zero matrix of dimension n.
    explicit ComplexMatrix(std::size_t n);
    /// Takes ownership of n*n row-major entries.
    ComplexMatrix(std::size_t n, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> d);

    std::size_t n() const noexcept { return n_; }

    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
    Complex& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }

    std::span<const Complex> entries() const noexcept { return a_; }

    /// Largest entry modulus.
    double max_abs() const noexcept;
    double frobenius() const noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t n_;
    std::vector<Complex> a_;
};

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(Complex s, const ComplexMatrix& x);

/// Max-norm of x - y.
double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y);

/// Ordered eigenvalues ("masses") with all pairwise differences nonzero.
/// The order is significant: entry i is the i-th diagonal element of D.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> values);
    Spectrum(std::initializer_list<double> values) : Spectrum(std::vector<double>(values)) {}

    std::size_t n() const noexcept { return v_.size(); }
    double operator[](std::size_t i) const noexcept { return v_[i]; }
    std::span<const double> values() const noexcept { return v_; }
    double min_gap() const noexcept { return min_gap_; }
    /// max - min.
    double spread() const noexcept;

    /// The same spectrum with every value shifted by c.
    Spectrum shifted(double c) const;

    friend bool operator==(const Spectrum& x, const Spectrum& y) { return x.v_ == y.v_; }

private:
    std::vector<double> v_;
    double min_gap_;
};

/// A ComplexMatrix that passed the unitarity check at construction.
class UnitaryMatrix {
public:
    static constexpr double kDefaultTolerance = 1e-10;
    static constexpr double kDetTolerance = 1e-9;

    explicit UnitaryMatrix(ComplexMatrix m, double tolerance = kDefaultTolerance);

    static UnitaryMatrix identity(std::size_t n) { return UnitaryMatrix(ComplexMatrix::identity(n)); }

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t n() const noexcept { return m_.n(); }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
    /// max-norm of V V^dagger - I measured at construction.
    double unitarity_defect() const noexcept { return defect_; }

    UnitaryMatrix adjoint() const;

private:
    ComplexMatrix m_;
    double defect_;
};

ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix adjoint(const ComplexMatrix& m);

/// Determinant via LU with partial pivoting on |.|; exactly 0 when a pivot
/// column is entirely zero.
Complex det(const ComplexMatrix& m);

/// x y - y x.
ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);

/// max-norm of V V^dagger - I.
double unitarity_defect(const ComplexMatrix& m);
/// max-norm of M - M^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// U diag(d) U^dagger, symmetrized as (H + H^dagger) / 2.
ComplexMatrix hermitian_from_spectrum(const UnitaryMatrix& u, const Spectrum& d);

struct JacobiOptions {
    double hermitian_tolerance = 1e-10;
    double offdiag_relative = 1e-13;
    int max_sweeps = 100;
    /// Reject spectra whose smallest gap is below this fraction of the spread.
    double min_relative_gap = 1e-8;
};

struct EigenDecomposition {
    UnitaryMatrix vectors;  // columns are eigenvectors
    Spectrum values;        // ascending
    int sweeps;
};

/// Cyclic Jacobi eigendecomposition of a complex Hermitian matrix.
/// Throws NotHermitianError or DegenerateSpectrumError.
EigenDecomposition jacobi_eig(const ComplexMatrix& h, const JacobiOptions& opts = {});

}  // namespace jarlskog
