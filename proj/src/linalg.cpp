#include "jarlskog/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace jarlskog {

namespace {

void check_dim(std::size_t n) {
    if (n < ComplexMatrix::kMinDim || n > ComplexMatrix::kMaxDim) {
        throw DimensionError("unsupported dimension " + std::to_string(n) + " (supported: " +
                             std::to_string(ComplexMatrix::kMinDim) + ".." +
                             std::to_string(ComplexMatrix::kMaxDim) + ")");
    }
}

void check_same(const ComplexMatrix& x, const ComplexMatrix& y, const char* op) {
    if (x.n() != y.n()) {
        throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(x.n()) + "x" +
                             std::to_string(x.n()) + " vs " + std::to_string(y.n()) + "x" +
                             std::to_string(y.n()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_() {
    check_dim(n);
    a_.assign(n * n, Complex{});
}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> entries) : n_(n), a_(std::move(entries)) {
    check_dim(n);
    if (a_.size() != n * n) {
        throw DimensionError("expected " + std::to_string(n * n) + " entries for a " + std::to_string(n) + "x" +
                             std::to_string(n) + " matrix, got " + std::to_string(a_.size()));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
    check_dim(n_);
    a_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_) throw DimensionError("matrix rows must all have length " + std::to_string(n_));
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

double ComplexMatrix::max_abs() const noexcept {
    double r = 0.0;
    for (const auto& z : a_) r = std::max(r, std::abs(z));
    return r;
}

double ComplexMatrix::frobenius() const noexcept {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same(x, y, "add");
    ComplexMatrix r(x.n());
    for (std::size_t i = 0; i < x.n(); ++i)
        for (std::size_t j = 0; j < x.n(); ++j) r(i, j) = x(i, j) + y(i, j);
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same(x, y, "subtract");
    ComplexMatrix r(x.n());
    for (std::size_t i = 0; i < x.n(); ++i)
        for (std::size_t j = 0; j < x.n(); ++j) r(i, j) = x(i, j) - y(i, j);
    return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& x) {
    ComplexMatrix r(x.n());
    for (std::size_t i = 0; i < x.n(); ++i)
        for (std::size_t j = 0; j < x.n(); ++j) r(i, j) = s * x(i, j);
    return r;
}

double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same(x, y, "max_abs_diff");
    double r = 0.0;
    for (std::size_t k = 0; k < x.entries().size(); ++k) r = std::max(r, std::abs(x.entries()[k] - y.entries()[k]));
    return r;
}

// ---------------------------------------------------------------- Spectrum

Spectrum::Spectrum(std::vector<double> values) : v_(std::move(values)), min_gap_(0.0) {
    check_dim(v_.size());
    for (double x : v_) {
        if (!std::isfinite(x)) throw Error("spectrum values must be finite");
    }
    min_gap_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v_.size(); ++i)
        for (std::size_t j = i + 1; j < v_.size(); ++j) min_gap_ = std::min(min_gap_, std::abs(v_[i] - v_[j]));
    if (!(min_gap_ > 0.0)) {
        throw DegenerateSpectrumError("spectrum has a repeated eigenvalue; all multiplicities must be 1");
    }
}

double Spectrum::spread() const noexcept {
    auto [lo, hi] = std::minmax_element(v_.begin(), v_.end());
    return *hi - *lo;
}

Spectrum Spectrum::shifted(double c) const {
    std::vector<double> w(v_);
    for (double& x : w) x += c;
    return Spectrum(std::move(w));
}

// ----------------------------------------------------------- UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance) : m_(std::move(m)), defect_(jarlskog::unitarity_defect(m_)) {
    if (!(defect_ <= tolerance)) {
        throw NotUnitaryError("matrix is not unitary: max|V V^dagger - I| = " + std::to_string(defect_) +
                                  " exceeds " + std::to_string(tolerance),
                              defect_);
    }
    const double d = std::abs(det(m_));
    if (std::abs(d - 1.0) > kDetTolerance) {
        throw NotUnitaryError("matrix is not unitary: |det| = " + std::to_string(d), defect_);
    }
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(jarlskog::adjoint(m_)); }

// --------------------------------------------------------------- products

ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same(x, y, "matmul");
    const std::size_t n = x.n();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex xik = x(i, k);
            for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
        }
    }
    return r;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix r(m.n());
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = 0; j < m.n(); ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

Complex det(const ComplexMatrix& m) {
    const std::size_t n = m.n();
    std::vector<Complex> a(m.entries().begin(), m.entries().end());
    Complex result = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a[i * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return Complex{0.0, 0.0};
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            result = -result;
        }
        const Complex pivot = a[k * n + k];
        result *= pivot;
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a[i * n + k] / pivot;
            if (f == Complex{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
        }
    }
    return result;
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same(x, y, "commutator");
    return matmul(x, y) - matmul(y, x);
}

double unitarity_defect(const ComplexMatrix& m) {
    return max_abs_diff(matmul(m, adjoint(m)), ComplexMatrix::identity(m.n()));
}

double hermiticity_defect(const ComplexMatrix& m) { return max_abs_diff(m, adjoint(m)); }

ComplexMatrix hermitian_from_spectrum(const UnitaryMatrix& u, const Spectrum& d) {
    if (u.n() != d.n()) {
        throw DimensionError("hermitian_from_spectrum: unitary is " + std::to_string(u.n()) + "x" +
                             std::to_string(u.n()) + " but spectrum has " + std::to_string(d.n()) + " values");
    }
    const ComplexMatrix h = matmul(matmul(u.matrix(), ComplexMatrix::diagonal(d.values())), adjoint(u.matrix()));
    return 0.5 * (h + adjoint(h));
}

// ------------------------------------------------------------------ Jacobi

namespace {

double offdiag_frobenius(const ComplexMatrix& h) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.n(); ++i)
        for (std::size_t j = 0; j < h.n(); ++j)
            if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
}

// Zeroes h(p,q) with G = diag-phase * real rotation, h <- G^dagger h G, u <- u G.
// G_pp = c, G_pq = s, G_qp = -s conj(e), G_qq = c conj(e), where e = h_pq / |h_pq|.
void rotate(ComplexMatrix& h, ComplexMatrix& u, std::size_t p, std::size_t q) {
    const Complex hpq = h(p, q);
    const double g = std::abs(hpq);
    if (g == 0.0) return;
    const Complex e = hpq / g;
    const double theta = (h(q, q).real() - h(p, p).real()) / (2.0 * g);
    const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const Complex gpp = c, gpq = s, gqp = -s * std::conj(e), gqq = c * std::conj(e);

    const std::size_t n = h.n();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex hip = h(i, p), hiq = h(i, q);
        h(i, p) = hip * gpp + hiq * gqp;
        h(i, q) = hip * gpq + hiq * gqq;
        const Complex uip = u(i, p), uiq = u(i, q);
        u(i, p) = uip * gpp + uiq * gqp;
        u(i, q) = uip * gpq + uiq * gqq;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Complex hpj = h(p, j), hqj = h(q, j);
        h(p, j) = std::conj(gpp) * hpj + std::conj(gqp) * hqj;
        h(q, j) = std::conj(gpq) * hpj + std::conj(gqq) * hqj;
    }
    h(p, q) = 0.0;
    h(q, p) = 0.0;
    h(p, p) = h(p, p).real();
    h(q, q) = h(q, q).real();
}

}  // namespace

EigenDecomposition jacobi_eig(const ComplexMatrix& input, const JacobiOptions& opts) {
    const double defect = hermiticity_defect(input);
    if (!(defect <= opts.hermitian_tolerance)) {
        throw NotHermitianError("jacobi_eig: input is not Hermitian (max|H - H^dagger| = " + std::to_string(defect) +
                                    ")",
                                defect);
    }
    const std::size_t n = input.n();
    ComplexMatrix h = 0.5 * (input + adjoint(input));
    ComplexMatrix u = ComplexMatrix::identity(n);
    const double target = opts.offdiag_relative * h.frobenius();

    int sweeps = 0;
    while (offdiag_frobenius(h) > target) {
        if (sweeps == opts.max_sweeps) {
            throw Error("jacobi_eig: no convergence after " + std::to_string(opts.max_sweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(h, u, p, q);
        ++sweeps;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return h(x, x).real() < h(y, y).real(); });

    std::vector<double> values(n);
    ComplexMatrix vectors(n);
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = h(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) vectors(i, k) = u(i, order[k]);
    }
    const double spread = values.back() - values.front();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (values[k + 1] - values[k] <= opts.min_relative_gap * spread) {
            throw DegenerateSpectrumError(
                "jacobi_eig: degenerate spectrum (eigenvalue gap below " + std::to_string(opts.min_relative_gap) +
                " x spread); the invariants assume all multiplicities are 1");
        }
    }
    return EigenDecomposition{UnitaryMatrix(std::move(vectors)), Spectrum(std::move(values)), sweeps};
}

}  // namespace jarlskog
