#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jarlskog/determinant.hpp"
#include "jarlskog/phases.hpp"
#include "jarlskog/problem_io.hpp"
#include "jarlskog/sampling.hpp"
#include "jarlskog/verify.hpp"

namespace py = pybind11;
using namespace jarlskog;
using namespace pybind11::literals;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& x) {
    if (x.ndim() != 2 || x.shape(0) != x.shape(1)) throw DimensionError("expected a square matrix");
    const auto n = static_cast<std::size_t>(x.shape(0));
    return ComplexMatrix(n, std::vector<Complex>(x.data(), x.data() + n * n));
}

CArray to_array(const ComplexMatrix& m) {
    const auto n = static_cast<py::ssize_t>(m.n());
    CArray out({n, n});
    std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
    return out;
}

RArray to_array(const Matrix3& m) {
    RArray out({3, 3});
    auto r = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < 3; ++i)
        for (py::ssize_t j = 0; j < 3; ++j) r(i, j) = m[i][j];
    return out;
}

Matrix3 to_matrix3(const RArray& x) {
    if (x.ndim() != 2 || x.shape(0) != 3 || x.shape(1) != 3) throw DimensionError("expected a 3x3 matrix");
    Matrix3 m{};
    auto r = x.unchecked<2>();
    for (py::ssize_t i = 0; i < 3; ++i)
        for (py::ssize_t j = 0; j < 3; ++j) m[i][j] = r(i, j);
    return m;
}

UnitaryMatrix to_unitary(const CArray& v) { return UnitaryMatrix(to_matrix(v)); }

MassPairInput to_input(const std::vector<double>& a, const std::vector<double>& b, const CArray& v) {
    return MassPairInput(Spectrum(a), Spectrum(b), to_unitary(v));
}

py::dict residuals(const ResidualReport& r) {
    py::dict d;
    for (const auto& f : r.families)
        d[py::str(f.name)] = py::dict("max"_a = f.max, "mean"_a = f.mean, "count"_a = f.count);
    return d;
}

// im (and re) as (n, n, n, n) arrays indexed [alpha-1, beta-1, j-1, k-1].
py::tuple table_arrays(const PhaseTable& t) {
    const auto n = static_cast<py::ssize_t>(t.n());
    RArray im({n, n, n, n});
    RArray re({n, n, n, n});
    auto i4 = im.mutable_unchecked<4>();
    auto r4 = re.mutable_unchecked<4>();
    for (py::ssize_t a = 0; a < n; ++a)
        for (py::ssize_t b = 0; b < n; ++b)
            for (py::ssize_t j = 0; j < n; ++j)
                for (py::ssize_t k = 0; k < n; ++k) {
                    const PlaquetteIndex idx{std::size_t(a + 1), std::size_t(b + 1), std::size_t(j + 1),
                                             std::size_t(k + 1)};
                    i4(a, b, j, k) = t.im(idx);
                    r4(a, b, j, k) = t.has_real() ? t.re(idx) : 0.0;
                }
    if (!t.has_real()) return py::make_tuple(im, py::none());
    return py::make_tuple(im, re);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Commutator determinants and rephasing-invariant phases of mixing matrices";
    m.attr("__version__") = kToolVersion;

    auto base = py::register_exception<Error>(m, "JarlskogError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<IndexError>(m, "IndexOutOfRangeError", base.ptr());
    py::register_exception<NotHermitianError>(m, "NotHermitianError", base.ptr());
    py::register_exception<NotUnitaryError>(m, "NotUnitaryError", base.ptr());
    py::register_exception<DegenerateSpectrumError>(m, "DegenerateSpectrumError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    m.def("haar_unitary", [](std::size_t n, std::uint64_t seed) {
        SeededRng rng(seed);
        return to_array(haar_unitary(n, rng).matrix());
    }, "n"_a, "seed"_a);

    m.def("sample_problem", [](std::size_t n, std::uint64_t seed) {
        const MassPairInput in = sample_problem(n, seed);
        return py::dict("a"_a = std::vector<double>(in.a().values().begin(), in.a().values().end()),
                        "b"_a = std::vector<double>(in.b().values().begin(), in.b().values().end()),
                        "V"_a = to_array(in.v().matrix()));
    }, "n"_a, "seed"_a);

    m.def("rephase", [](const CArray& v, std::vector<double> theta, std::vector<double> theta_prime) {
        return to_array(rephase(to_unitary(v), RephasingAngles(std::move(theta), std::move(theta_prime))).matrix());
    }, "V"_a, "theta"_a, "theta_prime"_a);

    m.def("eigh", [](const CArray& h) {
        const EigenDecomposition e = jacobi_eig(to_matrix(h));
        return py::make_tuple(std::vector<double>(e.values.values().begin(), e.values.values().end()),
                              to_array(e.vectors.matrix()));
    }, "H"_a, "Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.");

    m.def("det_direct", [](const std::vector<double>& a, const std::vector<double>& b, const CArray& v) {
        return det_direct(to_input(a, b, v));
    }, "a"_a, "b"_a, "V"_a);
    m.def("det_closed", [](const std::vector<double>& a, const std::vector<double>& b, const CArray& v) {
        return det_closed(to_input(a, b, v));
    }, "a"_a, "b"_a, "V"_a);
    m.def("det_from_hermitian", [](const CArray& h, const CArray& hp) {
        const MassPairInput in = MassPairInput::from_hermitian(to_matrix(h), to_matrix(hp));
        return det_direct(in);
    }, "H"_a, "H_prime"_a);

    m.def("det4_terms", [](const std::vector<double>& a, const std::vector<double>& b, const CArray& v) {
        const Det4Terms t = decompose_det4(to_input(a, b, v));
        py::dict pc, cc, pq, cq;
        for (std::size_t i = 0; i < 3; ++i) {
            const py::str p(std::string(label(static_cast<Pairing>(i))));
            const py::str c(std::string(label(static_cast<Cycle>(i))));
            pc[p] = t.pair_cubic[i];
            cc[c] = t.cycle_cubic[i];
            pq[p] = t.pair_quartic[i];
            cq[c] = t.cycle_quartic[i];
        }
        return py::dict("pair_cubic"_a = pc, "cycle_cubic"_a = cc, "pair_quartic"_a = pq, "cycle_quartic"_a = cq);
    }, "a"_a, "b"_a, "V"_a);

    m.def("t_factors", [](const std::vector<double>& a) {
        const TFactors t = t_factors(Spectrum(a));
        py::dict d;
        for (std::size_t i = 0; i < 3; ++i) {
            d[py::str(std::string(label(static_cast<Pairing>(i))))] = t.pair[i];
            d[py::str(std::string(label(static_cast<Cycle>(i))))] = t.cycle[i];
        }
        return d;
    }, "a"_a);

    m.def("plaquette", [](const CArray& v, std::size_t alpha, std::size_t beta, std::size_t j, std::size_t k) {
        return plaquette(to_unitary(v), {alpha, beta, j, k});
    }, "V"_a, "alpha"_a, "beta"_a, "j"_a, "k"_a, "V_aj V_bk conj(V_ak) conj(V_bj), 1-based indices.");

    m.def("phase_table", [](const CArray& v) { return table_arrays(phase_table(to_unitary(v))); }, "V"_a,
          "(im, re) arrays of shape (n, n, n, n), indexed [alpha-1, beta-1, j-1, k-1].");

    m.def("jr_matrices", [](const CArray& v) {
        const JRMatrices jr = jr_matrices(to_unitary(v));
        return py::make_tuple(to_array(jr.J), to_array(jr.R));
    }, "V"_a);

    m.def("expand_phases", [](const RArray& j) {
        JRMatrices jr;
        jr.J = to_matrix3(j);
        const py::tuple t = table_arrays(expand_phases(jr));
        return py::object(t[0]);
    }, "J"_a, "All 36 imaginary phases of an n = 4 matrix from J.");

    m.def("unitary_relation_residuals", [](const CArray& v) {
        return residuals(unitary_relation_residuals(to_unitary(v)));
    }, "V"_a);
    m.def("nonlinear_relation_residuals", [](const CArray& v) {
        return residuals(nonlinear_relation_residuals(to_unitary(v)));
    }, "V"_a);

    m.def("n3_phase_table", [](const CArray& v) {
        const N3PhaseReport r = n3_phase_table(to_unitary(v));
        py::list entries;
        for (const auto& e : r.entries) {
            entries.append(py::dict("index"_a = py::make_tuple(e.index.alpha, e.index.beta, e.index.j, e.index.k),
                                    "value"_a = e.value, "expected_sign"_a = e.expected_sign,
                                    "observed_sign"_a = e.observed_sign));
        }
        return py::dict("base"_a = r.base, "entries"_a = entries, "max_deviation"_a = r.max_deviation,
                        "indeterminate"_a = r.indeterminate, "pattern_matches"_a = r.pattern_matches);
    }, "V"_a);

    m.def("reconstruct_J", [](const CArray& v) {
        const JReconstruction r = reconstruct_J(to_unitary(v));
        const bool solved = r.status == JReconstruction::Status::solved;
        return py::dict("status"_a = solved ? "solved" : "degenerate",
                        "singular_values"_a = std::vector<double>(r.singular_values.begin(), r.singular_values.end()),
                        "singular_ratio"_a = r.singular_ratio, "direct"_a = to_array(r.direct),
                        "reconstructed"_a = to_array(r.reconstructed), "max_error"_a = r.max_error);
    }, "V"_a);

    m.def("verify", [](std::size_t n, std::size_t trials, std::uint64_t seed, unsigned threads) {
        VerifyOptions o;
        o.n = n;
        o.trials = trials;
        o.seed = seed;
        o.threads = threads;
        VerificationReport r;
        {
            py::gil_scoped_release release;
            r = run_verification(o);
        }
        return py::module_::import("json").attr("loads")(to_json(r));
    }, "n"_a, "trials"_a = 1000, "seed"_a = 0, "threads"_a = 1, "Run the identity suite; returns the report dict.");

    m.def("parse_problem", [](const std::string& text) {
        const MassPairInput in = parse_problem(text).to_input();
        return py::dict("a"_a = std::vector<double>(in.a().values().begin(), in.a().values().end()),
                        "b"_a = std::vector<double>(in.b().values().begin(), in.b().values().end()),
                        "V"_a = to_array(in.v().matrix()));
    }, "text"_a);
    m.def("write_problem", [](const std::vector<double>& a, const std::vector<double>& b, const CArray& v) {
        return write_problem(ProblemFile::from_input(to_input(a, b, v)));
    }, "a"_a, "b"_a, "V"_a);
}
