#include "jarlskog/phases.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jarlskog {

namespace {

// u conj(w), spelled out so that swapping the operands flips the imaginary
// part exactly.
Complex mul_conj(Complex u, Complex w) {
    return {u.real() * w.real() + u.imag() * w.imag(), u.imag() * w.real() - u.real() * w.imag()};
}

void check_index(std::size_t n, PlaquetteIndex idx) {
    auto bad = [n](std::size_t x) { return x < 1 || x > n; };
    if (bad(idx.alpha) || bad(idx.beta) || bad(idx.j) || bad(idx.k)) {
        throw IndexError("phase index (" + std::to_string(idx.alpha) + std::to_string(idx.beta) + ";" +
                         std::to_string(idx.j) + std::to_string(idx.k) + ") outside 1.." + std::to_string(n));
    }
}

void require_n(const UnitaryMatrix& v, std::size_t n, const char* op) {
    if (v.n() != n) {
        throw DimensionError(std::string(op) + " requires n = " + std::to_string(n) + ", got n = " +
                             std::to_string(v.n()));
    }
}

void require_3_or_4(const UnitaryMatrix& v, const char* op) {
    if (v.n() != 3 && v.n() != 4) {
        throw DimensionError(std::string(op) + " supports n = 3 or 4, got n = " + std::to_string(v.n()));
    }
}

// Running max/mean of absolute residuals.
class Accumulator {
public:
    explicit Accumulator(std::string name) : f_{std::move(name)} {}
    void add(double r) {
        r = std::abs(r);
        f_.max = std::max(f_.max, r);
        sum_ += r;
        ++f_.count;
    }
    ResidualFamily done() const {
        ResidualFamily f = f_;
        f.mean = f.count ? sum_ / static_cast<double>(f.count) : 0.0;
        return f;
    }

private:
    ResidualFamily f_;
    double sum_ = 0.0;
};

}  // namespace

Complex plaquette(const UnitaryMatrix& v, PlaquetteIndex idx) {
    check_index(v.n(), idx);
    const std::size_t a = idx.alpha - 1, b = idx.beta - 1, j = idx.j - 1, k = idx.k - 1;
    return mul_conj(mul_conj(v(a, j), v(b, j)), mul_conj(v(a, k), v(b, k)));
}

double im_phase(const UnitaryMatrix& v, PlaquetteIndex idx) { return plaquette(v, idx).imag(); }
double re_phase(const UnitaryMatrix& v, PlaquetteIndex idx) { return plaquette(v, idx).real(); }

std::vector<std::pair<std::size_t, std::size_t>> canonical_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 1; x <= n; ++x)
        for (std::size_t y = x + 1; y <= n; ++y) out.emplace_back(x, y);
    return out;
}

// ---------------------------------------------------------------- PhaseTable

PhaseTable::PhaseTable(std::size_t n, bool with_real) : n_(n), im_(n * n * n * n, 0.0) {
    if (with_real) re_.emplace(n * n * n * n, 0.0);
}

std::size_t PhaseTable::flat(PlaquetteIndex idx) const {
    check_index(n_, idx);
    return (((idx.alpha - 1) * n_ + (idx.beta - 1)) * n_ + (idx.j - 1)) * n_ + (idx.k - 1);
}

double PhaseTable::im(PlaquetteIndex idx) const { return im_[flat(idx)]; }

double PhaseTable::re(PlaquetteIndex idx) const {
    if (!re_) throw std::logic_error("phase table has no real parts");
    return (*re_)[flat(idx)];
}

std::size_t PhaseTable::canonical_count() const noexcept {
    const std::size_t p = n_ * (n_ - 1) / 2;
    return p * p;
}

PhaseTable phase_table(const UnitaryMatrix& v) {
    require_3_or_4(v, "phase_table");
    const std::size_t n = v.n();
    PhaseTable t(n, true);
    auto& re = *t.re_;
    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = a; b <= n; ++b)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t k = j; k <= n; ++k) {
                    const Complex p = plaquette(v, {a, b, j, k});
                    const double im = (a == b || j == k) ? 0.0 : p.imag();
                    t.im_[t.flat({a, b, j, k})] = im;
                    t.im_[t.flat({b, a, j, k})] = -im;
                    t.im_[t.flat({a, b, k, j})] = -im;
                    t.im_[t.flat({b, a, k, j})] = im;
                    re[t.flat({a, b, j, k})] = p.real();
                    re[t.flat({b, a, j, k})] = p.real();
                    re[t.flat({a, b, k, j})] = p.real();
                    re[t.flat({b, a, k, j})] = p.real();
                }
    return t;
}

double ResidualReport::max() const noexcept {
    double m = 0.0;
    for (const auto& f : families) m = std::max(m, f.max);
    return m;
}

// ----------------------------------------------------- unitarity relations

ResidualReport unitary_relation_residuals(const UnitaryMatrix& v) {
    const PhaseTable t = phase_table(v);
    const std::size_t n = v.n();
    auto abs2 = [&](std::size_t i, std::size_t j) { return std::norm(v(i - 1, j - 1)); };
    auto delta = [](std::size_t x, std::size_t y) { return x == y ? 1.0 : 0.0; };

    Accumulator im_alpha("im_row_sum_alpha"), im_beta("im_row_sum_beta"), im_j("im_column_sum_j"),
        im_k("im_column_sum_k"), re_alpha("re_row_sum_alpha"), re_beta("re_row_sum_beta"), re_j("re_column_sum_j"),
        re_k("re_column_sum_k");

    // Indices (x, y, z) below are the three free indices of each family.
    for (std::size_t x = 1; x <= n; ++x)
        for (std::size_t y = 1; y <= n; ++y)
            for (std::size_t z = 1; z <= n; ++z) {
                double s_im[4] = {0, 0, 0, 0}, s_re[4] = {0, 0, 0, 0};
                for (std::size_t s = 1; s <= n; ++s) {
                    const PlaquetteIndex over_alpha{s, x, y, z};  // beta=x, j=y, k=z
                    const PlaquetteIndex over_beta{x, s, y, z};   // alpha=x, j=y, k=z
                    const PlaquetteIndex over_j{x, y, s, z};      // alpha=x, beta=y, k=z
                    const PlaquetteIndex over_k{x, y, z, s};      // alpha=x, beta=y, j=z
                    s_im[0] += t.im(over_alpha);
                    s_im[1] += t.im(over_beta);
                    s_im[2] += t.im(over_j);
                    s_im[3] += t.im(over_k);
                    s_re[0] += t.re(over_alpha);
                    s_re[1] += t.re(over_beta);
                    s_re[2] += t.re(over_j);
                    s_re[3] += t.re(over_k);
                }
                im_alpha.add(s_im[0]);
                im_beta.add(s_im[1]);
                im_j.add(s_im[2]);
                im_k.add(s_im[3]);
                re_alpha.add(s_re[0] - delta(y, z) * abs2(x, y));
                re_beta.add(s_re[1] - delta(y, z) * abs2(x, y));
                re_j.add(s_re[2] - delta(x, y) * abs2(x, z));
                re_k.add(s_re[3] - delta(x, y) * abs2(x, z));
            }
    return ResidualReport{{im_alpha.done(), im_beta.done(), im_j.done(), im_k.done(), re_alpha.done(),
                           re_beta.done(), re_j.done(), re_k.done()}};
}

// ------------------------------------------------------------------- n = 3

N3PhaseReport n3_phase_table(const UnitaryMatrix& v) {
    require_n(v, 3, "n3_phase_table");
    struct Expected {
        PlaquetteIndex idx;
        int sign;
    };
    static constexpr std::array<Expected, 9> pattern{{
        {{1, 2, 1, 2}, +1},
        {{1, 2, 1, 3}, -1},
        {{1, 2, 2, 3}, +1},
        {{1, 3, 1, 2}, -1},
        {{1, 3, 1, 3}, +1},
        {{1, 3, 2, 3}, -1},
        {{2, 3, 1, 2}, +1},
        {{2, 3, 1, 3}, -1},
        {{2, 3, 2, 3}, +1},
    }};

    N3PhaseReport r{};
    r.base = im_phase(v, {1, 2, 1, 2});
    r.indeterminate = std::abs(r.base) <= kSignThreshold;
    r.max_deviation = 0.0;
    r.pattern_matches = !r.indeterminate;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const double value = im_phase(v, pattern[i].idx);
        int observed = 0;
        if (!r.indeterminate) observed = (value / r.base) >= 0.0 ? +1 : -1;
        r.entries[i] = {pattern[i].idx, value, pattern[i].sign, observed};
        r.max_deviation = std::max(r.max_deviation, std::abs(value - pattern[i].sign * r.base));
        if (observed != pattern[i].sign) r.pattern_matches = false;
    }
    return r;
}

// ------------------------------------------------------------------- n = 4

JRMatrices jr_matrices(const UnitaryMatrix& v) {
    require_n(v, 4, "jr_matrices");
    JRMatrices out;
    for (std::size_t a = 1; a <= 3; ++a)
        for (std::size_t j = 1; j <= 3; ++j) {
            const Complex p = plaquette(v, {a, a + 1, j, j + 1});
            out.J[a - 1][j - 1] = p.imag();
            out.R[a - 1][j - 1] = p.real();
        }
    return out;
}

Matrix3 mul(const Matrix3& x, const Matrix3& y) {
    Matrix3 r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
    return r;
}

PairSlot pair_slot(std::size_t first, std::size_t second) {
    if (first >= second || first < 1 || second > 4) {
        throw IndexError("pair_slot expects an increasing pair in 1..4, got (" + std::to_string(first) + "," +
                         std::to_string(second) + ")");
    }
    if (second == first + 1) return {true, first - 1};
    if (first == 2 && second == 4) return {false, 0};
    if (first == 1 && second == 4) return {false, 1};
    return {false, 2};  // (1,3)
}

PhaseTable expand_phases(const JRMatrices& jr) {
    const Matrix3& J = jr.J;
    const Matrix3 JA = mul(J, kAMatrix);
    const Matrix3 AJ = mul(kAMatrix, J);
    const Matrix3 AJA = mul(AJ, kAMatrix);

    PhaseTable t(4, false);
    for (const auto& [a, b] : canonical_pairs(4))
        for (const auto& [j, k] : canonical_pairs(4)) {
            const PairSlot rows = pair_slot(a, b);
            const PairSlot cols = pair_slot(j, k);
            const Matrix3& block = rows.adjacent ? (cols.adjacent ? J : JA) : (cols.adjacent ? AJ : AJA);
            const double im = block[rows.slot][cols.slot];
            t.im_[t.flat({a, b, j, k})] = im;
            t.im_[t.flat({b, a, j, k})] = -im;
            t.im_[t.flat({a, b, k, j})] = -im;
            t.im_[t.flat({b, a, k, j})] = im;
        }
    return t;
}

// -------------------------------------------------------- nonlinear relations

ResidualReport nonlinear_relation_residuals(const UnitaryMatrix& v) {
    const PhaseTable t = phase_table(v);
    const std::size_t n = v.n();
    auto R = [&](std::size_t a, std::size_t b, std::size_t j, std::size_t k) { return t.re({a, b, j, k}); };
    auto I = [&](std::size_t a, std::size_t b, std::size_t j, std::size_t k) { return t.im({a, b, j, k}); };

    Accumulator row_linear("row_linear"), column_linear("column_linear"), row_quadratic("row_quadratic"),
        column_quadratic("column_quadratic");

    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = 1; b <= n; ++b)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t k = 1; k <= n; ++k)
                    for (std::size_t l = 1; l <= n; ++l) {
                        row_linear.add(R(a, b, j, k) * I(a, b, k, l) + R(a, b, k, l) * I(a, b, j, k) -
                                       R(a, b, k, k) * I(a, b, j, l));
                        // (a, b, c = l) with columns (j, k)
                        column_linear.add(R(a, b, j, k) * I(b, l, j, k) + R(b, l, j, k) * I(a, b, j, k) -
                                          R(b, b, j, k) * I(a, l, j, k));
                        for (std::size_t m = 1; m <= n; ++m) {
                            row_quadratic.add(R(a, b, j, k) * R(a, b, l, m) - R(a, b, j, m) * R(a, b, k, l) -
                                              I(a, b, j, l) * I(a, b, k, m));
                            // rows (a, b, c = l, d = m), columns (j, k)
                            column_quadratic.add(R(a, b, j, k) * R(l, m, j, k) - R(a, m, j, k) * R(b, l, j, k) -
                                                 I(a, l, j, k) * I(b, m, j, k));
                        }
                    }
    return ResidualReport{{row_linear.done(), column_linear.done(), row_quadratic.done(), column_quadratic.done()}};
}

// ------------------------------------------------------------ reconstruction

JReconstruction reconstruct_J(const UnitaryMatrix& v, double gate) {
    require_n(v, 4, "reconstruct_J");
    const JRMatrices jr = jr_matrices(v);
    const Matrix3& J = jr.J;
    const Matrix3& R = jr.R;
    // |V_ij V_kl|^2 with 1-based indices
    auto w = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return std::norm(v(i - 1, j - 1)) * std::norm(v(k - 1, l - 1));
    };

    JReconstruction out;
    out.direct = J;
    auto& M = out.coefficients;
    // Columns: J12, J13, J21, J23, J31, J32.
    M[0][0] = -(w(1, 2, 2, 2) + R[0][0]);
    M[0][1] = w(1, 2, 2, 2);
    M[1][1] = w(3, 3, 3, 4);
    M[1][3] = -(w(3, 3, 3, 4) + R[2][2]);
    M[2][2] = -(w(2, 1, 2, 2) + R[0][0]);
    M[2][4] = w(2, 1, 2, 2);
    M[3][4] = w(3, 3, 4, 3);
    M[3][5] = -(w(3, 3, 4, 3) + R[2][2]);
    M[4][0] = w(3, 2, 3, 3);
    M[4][5] = -R[1][1];
    M[5][2] = w(2, 3, 3, 3);
    M[5][3] = -R[1][1];
    out.rhs = {R[0][1] * J[0][0],
               R[1][2] * J[2][2],
               R[1][0] * J[0][0],
               R[2][1] * J[2][2],
               (w(3, 2, 3, 3) + R[2][1]) * J[1][1],
               (w(2, 3, 3, 3) + R[1][2]) * J[1][1]};

    Eigen::Matrix<double, 6, 6> m;
    Eigen::Matrix<double, 6, 1> rhs;
    for (int i = 0; i < 6; ++i) {
        rhs(i) = out.rhs[i];
        for (int j = 0; j < 6; ++j) m(i, j) = M[i][j];
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    for (int i = 0; i < 6; ++i) out.singular_values[i] = sv(i);
    out.singular_ratio = sv(0) > 0.0 ? sv(5) / sv(0) : 0.0;
    if (!(out.singular_ratio >= gate)) {
        out.status = JReconstruction::Status::degenerate;
        return out;
    }

    const Eigen::Matrix<double, 6, 1> x = svd.solve(rhs);
    out.status = JReconstruction::Status::solved;
    for (std::size_t i = 0; i < 3; ++i) out.reconstructed[i][i] = J[i][i];
    for (std::size_t u = 0; u < kReconstructionUnknowns.size(); ++u) {
        const auto [r, c] = kReconstructionUnknowns[u];
        out.reconstructed[r][c] = x(static_cast<int>(u));
    }
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            out.max_error = std::max(out.max_error, std::abs(out.reconstructed[r][c] - J[r][c]));
    return out;
}

}  // namespace jarlskog
