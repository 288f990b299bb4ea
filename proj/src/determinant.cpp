#include "jarlskog/determinant.hpp"

#include <cmath>
#include <string>

namespace jarlskog {

namespace {

void require_dim(const MassPairInput& in, std::size_t n, const char* op) {
    if (in.n() != n) {
        throw DimensionError(std::string(op) + " requires n = " + std::to_string(n) + ", got n = " +
                             std::to_string(in.n()));
    }
}

// 0-based views over V used by the closed forms.
struct Mixing {
    const UnitaryMatrix& v;

    Complex operator()(std::size_t i, std::size_t j) const { return v(i, j); }
    Complex bar(std::size_t i, std::size_t j) const { return std::conj(v(i, j)); }
    double abs2(std::size_t i, std::size_t j) const { return std::norm(v(i, j)); }

    // [ab;jk] = V_aj V_bk conj(V_ak) conj(V_bj)
    Complex plaquette(std::size_t a, std::size_t b, std::size_t j, std::size_t k) const {
        return v(a, j) * v(b, k) * bar(a, k) * bar(b, j);
    }
    // (abc; k1 k2 k3) = V_a,k1 conj(V_b,k1) V_b,k2 conj(V_c,k2) V_c,k3 conj(V_a,k3)
    Complex cycle(std::size_t a, std::size_t b, std::size_t c, std::size_t k1, std::size_t k2,
                  std::size_t k3) const {
        return v(a, k1) * bar(b, k1) * v(b, k2) * bar(c, k2) * v(c, k3) * bar(a, k3);
    }
};

constexpr std::size_t K = 3;  // column sums run over k = 1..3 after eliminating column 4

}  // namespace

MassPairInput::MassPairInput(Spectrum a, Spectrum b, UnitaryMatrix v)
    : a_(std::move(a)), b_(std::move(b)), v_(std::move(v)) {
    if (a_.n() != v_.n() || b_.n() != v_.n()) {
        throw DimensionError("mass pair: a has " + std::to_string(a_.n()) + " values, b has " +
                             std::to_string(b_.n()) + ", V is " + std::to_string(v_.n()) + "x" +
                             std::to_string(v_.n()));
    }
}

MassPairInput MassPairInput::from_hermitian(const ComplexMatrix& h, const ComplexMatrix& h_prime,
                                            const JacobiOptions& opts) {
    auto e = jacobi_eig(h, opts);
    auto ep = jacobi_eig(h_prime, opts);
    return from_unitaries(std::move(e.values), std::move(ep.values), e.vectors, ep.vectors);
}

MassPairInput MassPairInput::from_unitaries(Spectrum a, Spectrum b, const UnitaryMatrix& u,
                                            const UnitaryMatrix& u_prime) {
    return MassPairInput(std::move(a), std::move(b), UnitaryMatrix(matmul(adjoint(u.matrix()), u_prime.matrix())));
}

MassPairInput MassPairInput::swapped() const { return MassPairInput(b_, a_, v_.adjoint()); }

Complex u_entry(const MassPairInput& in, std::size_t i, std::size_t j) {
    const std::size_t n = in.n();
    if (i < 1 || i > n || j < 1 || j > n) {
        throw IndexError("u_entry: index (" + std::to_string(i) + ", " + std::to_string(j) + ") outside 1.." +
                         std::to_string(n));
    }
    --i;
    --j;
    if (i == j) return Complex{0.0, 0.0};
    Complex s{};
    for (std::size_t k = 0; k < n; ++k) s += in.b()[k] * in.v()(i, k) * std::conj(in.v()(j, k));
    return (in.a()[i] - in.a()[j]) * s;
}

ComplexMatrix commutator_matrix(const MassPairInput& in) {
    ComplexMatrix x(in.n());
    for (std::size_t i = 0; i < in.n(); ++i)
        for (std::size_t j = 0; j < in.n(); ++j) x(i, j) = u_entry(in, i + 1, j + 1);
    return x;
}

Complex det_direct(const MassPairInput& in) { return det(commutator_matrix(in)); }

double cyclic_difference_product(const Spectrum& s) {
    if (s.n() != 3) throw DimensionError("cyclic difference product requires 3 values");
    return (s[0] - s[1]) * (s[1] - s[2]) * (s[2] - s[0]);
}

Complex det3_closed(const MassPairInput& in) {
    require_dim(in, 3, "det3_closed");
    const Mixing m{in.v()};
    const double im = m.plaquette(0, 1, 0, 1).imag();
    const double tb = cyclic_difference_product(in.a()) * cyclic_difference_product(in.b());
    return Complex{0.0, 2.0 * tb * im};
}

// ---------------------------------------------------------------- TFactors

std::string_view label(Pairing p) {
    switch (p) {
        case Pairing::p12_34: return "(12)(34)";
        case Pairing::p13_24: return "(13)(24)";
        case Pairing::p14_23: return "(14)(23)";
    }
    return "?";
}

std::string_view label(Cycle c) {
    switch (c) {
        case Cycle::c1243: return "(1243)";
        case Cycle::c1324: return "(1324)";
        case Cycle::c1234: return "(1234)";
    }
    return "?";
}

double TFactors::identity_residual() const noexcept {
    return pair[0] + pair[1] + pair[2] - 2.0 * cycle[0] - 2.0 * cycle[1] - 2.0 * cycle[2];
}

double TFactors::identity_relative_residual() const noexcept {
    double scale = 0.0;
    for (double x : pair) scale += std::abs(x);
    for (double x : cycle) scale += 2.0 * std::abs(x);
    return scale == 0.0 ? 0.0 : std::abs(identity_residual()) / scale;
}

TFactors t_factors(const Spectrum& s) {
    if (s.n() != 4) throw DimensionError("t_factors requires n = 4, got n = " + std::to_string(s.n()));
    auto d = [&](int i, int j) { return s[i - 1] - s[j - 1]; };
    auto sq = [](double x) { return x * x; };
    TFactors t;
    t.pair = {sq(d(1, 2)) * sq(d(3, 4)), sq(d(1, 3)) * sq(d(2, 4)), sq(d(1, 4)) * sq(d(2, 3))};
    auto cyc = [&](int i, int j, int k, int l) { return d(i, j) * d(j, k) * d(k, l) * d(l, i); };
    t.cycle = {cyc(1, 2, 4, 3), cyc(1, 3, 2, 4), cyc(1, 2, 3, 4)};
    return t;
}

// ------------------------------------------------------------ n = 4 form

Complex Det4Terms::total() const noexcept {
    Complex s{};
    for (const auto& x : pair_cubic) s += x;
    for (const auto& x : cycle_cubic) s += x;
    for (const auto& x : pair_quartic) s += x;
    for (const auto& x : cycle_quartic) s += x;
    return s;
}

Det4Terms decompose_det4(const MassPairInput& in) {
    require_dim(in, 4, "decompose_det4");
    const Mixing m{in.v()};
    const TFactors t = t_factors(in.a());
    std::array<double, K> bt{};
    for (std::size_t k = 0; k < K; ++k) bt[k] = in.b()[k] - in.b()[3];

    // Row pair (r, s) carrying the plaquette and the spectator row t, per pairing.
    struct PairSpec {
        std::size_t r, s, t;
        // the two plaquettes of the quartic cross term
        std::size_t x1, y1, x2, y2;
    };
    constexpr std::array<PairSpec, 3> pairs{{
        {0, 1, 2, 0, 2, 1, 2},  // (12)(34): [12], |V3|, cross [13][23]
        {0, 2, 1, 0, 1, 1, 2},  // (13)(24): [13], |V2|, cross [12][23]
        {1, 2, 0, 0, 1, 0, 2},  // (14)(23): [23], |V1|, cross [12][13]
    }};
    // Three-cycle (a b c) and the two rows whose |V|^2 multiplies the quartic term.
    struct CycleSpec {
        std::size_t a, b, c, x, y;
    };
    constexpr std::array<CycleSpec, 3> cycles{{
        {2, 0, 1, 1, 2},  // (1243): (312), |V2|^2 + |V3|^2
        {0, 2, 1, 0, 1},  // (1324): (132), |V1|^2 + |V2|^2
        {0, 1, 2, 0, 2},  // (1234): (123), |V1|^2 + |V3|^2
    }};

    Det4Terms out;
    for (std::size_t p = 0; p < 3; ++p) {
        const auto& ps = pairs[p];
        Complex cubic{}, quartic{};
        for (std::size_t k1 = 0; k1 < K; ++k1)
            for (std::size_t k2 = 0; k2 < K; ++k2) {
                const Complex plaq = m.plaquette(ps.r, ps.s, k1, k2);
                for (std::size_t k3 = 0; k3 < K; ++k3) {
                    cubic += bt[k1] * bt[k2] * bt[k3] * bt[k3] * plaq * m.abs2(ps.t, k3);
                    for (std::size_t k4 = 0; k4 < K; ++k4) {
                        const double w = bt[k1] * bt[k2] * bt[k3] * bt[k4];
                        quartic += w * (m.plaquette(ps.x1, ps.y1, k1, k2) * m.plaquette(ps.x2, ps.y2, k3, k4) +
                                        plaq * m.abs2(ps.t, k3) * m.abs2(ps.t, k4));
                    }
                }
            }
        out.pair_cubic[p] = t.pair[p] * cubic;
        out.pair_quartic[p] = -t.pair[p] * quartic;
    }
    for (std::size_t c = 0; c < 3; ++c) {
        const auto& cs = cycles[c];
        Complex cubic{}, quartic{};
        for (std::size_t k1 = 0; k1 < K; ++k1)
            for (std::size_t k2 = 0; k2 < K; ++k2)
                for (std::size_t k3 = 0; k3 < K; ++k3) {
                    const Complex cyc = m.cycle(cs.a, cs.b, cs.c, k1, k2, k3);
                    cubic += bt[k1] * bt[k2] * bt[k3] * bt[k3] * cyc;
                    for (std::size_t k4 = 0; k4 < K; ++k4) {
                        const double w = bt[k1] * bt[k2] * bt[k3] * bt[k4];
                        quartic += w * cyc * (m.abs2(cs.x, k4) + m.abs2(cs.y, k4));
                    }
                }
        out.cycle_cubic[c] = -2.0 * t.cycle[c] * cubic;
        out.cycle_quartic[c] = 2.0 * t.cycle[c] * quartic;
    }
    return out;
}

Complex det4_closed(const MassPairInput& in) { return Complex{decompose_det4(in).total().real(), 0.0}; }

Complex det_closed(const MassPairInput& in) {
    switch (in.n()) {
        case 3: return det3_closed(in);
        case 4: return det4_closed(in);
        default:
            throw DimensionError("no closed form for n = " + std::to_string(in.n()) +
                                 "; closed forms exist only for n = 3 and n = 4");
    }
}

}  // namespace jarlskog
