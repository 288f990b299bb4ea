#include "jarlskog/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "jarlskog/determinant.hpp"
#include "jarlskog/phases.hpp"
#include "jarlskog/problem_io.hpp"
#include "jarlskog/verify.hpp"

namespace jarlskog::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Thrown for bad input; mapped to kInputError.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// Reports are never overwritten.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    if (std::filesystem::exists(path)) throw InputError("refusing to overwrite existing file '" + path + "'");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
}

MassPairInput load_problem(const std::string& path) {
    try {
        return parse_problem(read_text(path)).to_input();
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string index_label(const PlaquetteIndex& i) {
    return "(" + std::to_string(i.alpha) + std::to_string(i.beta) + ";" + std::to_string(i.j) + std::to_string(i.k) +
           ")";
}

ordered_json matrix3_json(const Matrix3& m) {
    ordered_json j = ordered_json::array();
    for (const auto& row : m) j.push_back(row);
    return j;
}

// ------------------------------------------------------------------- det

struct DetArgs {
    std::string file;
    std::string method = "both";
    std::optional<double> tol_rel;
    std::optional<double> tol_abs;
};

int cmd_det(const DetArgs& args, std::ostream& out) {
    const MassPairInput in = load_problem(args.file);
    const std::size_t n = in.n();
    const bool want_closed = args.method != "direct";
    if (want_closed && n != 3 && n != 4) {
        throw InputError("no closed form for n = " + std::to_string(n) +
                         (n >= 5 ? " (none is known for n >= 5)" : "") + "; use --method direct");
    }
    out << "n = " << n << "\n";
    std::optional<Complex> direct, closed;
    if (args.method != "closed") {
        direct = det_direct(in);
        out << "direct = " << format_complex(*direct) << "\n";
    }
    if (want_closed) {
        closed = det_closed(in);
        out << "closed = " << format_complex(*closed) << "\n";
    }
    if (direct && closed) {
        const Tolerance tol{args.tol_rel.value_or(n == 4 ? 1e-9 : 1e-10), args.tol_abs.value_or(0.0)};
        const double diff = std::abs(*closed - *direct);
        const double allowed = tol.allowed(std::max(1.0, std::abs(*direct)));
        out << "discrepancy = " << format_real(diff) << " (allowed " << format_real(allowed) << ")\n";
        if (!(diff <= allowed)) {
            out << "FAIL: closed form disagrees with the direct determinant\n";
            return kIdentityViolation;
        }
    }
    return kSuccess;
}

// ---------------------------------------------------------------- phases

struct PhasesArgs {
    std::string file;
    std::string out;
    std::optional<double> tol_abs;
};

int cmd_phases(const PhasesArgs& args, std::ostream& out) {
    const MassPairInput in = load_problem(args.file);
    const UnitaryMatrix& v = in.v();
    const std::size_t n = v.n();
    if (n != 3 && n != 4) throw InputError("phase report supports n = 3 or 4, got n = " + std::to_string(n));
    const double tol = args.tol_abs.value_or(1e-12);

    const PhaseTable table = phase_table(v);
    bool pass = true;

    ordered_json j;
    j["format"] = "jarlskog-phases";
    j["version"] = 1;
    j["n"] = n;
    auto& phases = j["phases"] = ordered_json::array();
    for (const auto& [a, b] : canonical_pairs(n))
        for (const auto& [c, d] : canonical_pairs(n)) {
            const PlaquetteIndex idx{a, b, c, d};
            phases.push_back({{"index", index_label(idx)}, {"im", table.im(idx)}, {"re", table.re(idx)}});
        }

    const ResidualReport unitary = unitary_relation_residuals(v);
    auto& uj = j["unitary_relations"] = ordered_json::object();
    for (const auto& f : unitary.families) uj[f.name] = {{"max", f.max}, {"mean", f.mean}};
    const ResidualReport nonlinear = nonlinear_relation_residuals(v);
    auto& nj = j["nonlinear_relations"] = ordered_json::object();
    for (const auto& f : nonlinear.families) nj[f.name] = {{"max", f.max}, {"mean", f.mean}};
    pass = pass && unitary.max() <= args.tol_abs.value_or(1e-13) && nonlinear.max() <= tol;

    if (n == 3) {
        const N3PhaseReport s = n3_phase_table(v);
        auto& sj = j["single_phase"];
        sj["base_12_12"] = s.base;
        sj["indeterminate"] = s.indeterminate;
        auto& signs = sj["signs"] = ordered_json::array();
        for (const auto& e : s.entries) {
            signs.push_back({{"index", index_label(e.index)},
                             {"value", e.value},
                             {"expected_sign", e.expected_sign},
                             {"observed_sign", e.observed_sign}});
        }
        sj["max_deviation"] = s.max_deviation;
        const bool ok = s.max_deviation <= tol * std::max(1.0, std::abs(s.base));
        sj["pass"] = ok;
        pass = pass && ok;
    } else {
        const JRMatrices jr = jr_matrices(v);
        j["J"] = matrix3_json(jr.J);
        j["R"] = matrix3_json(jr.R);
        const PhaseTable expanded = expand_phases(jr);
        double err = 0.0;
        for (const auto& [a, b] : canonical_pairs(4))
            for (const auto& [c, d] : canonical_pairs(4))
                err = std::max(err, std::abs(expanded.im({a, b, c, d}) - table.im({a, b, c, d})));
        const bool exp_ok = err <= tol;
        j["expansion_check"] = {{"max_error", err}, {"tolerance", tol}, {"pass", exp_ok}};
        pass = pass && exp_ok;

        const JReconstruction rec = reconstruct_J(v);
        auto& rj = j["reconstruct_J"];
        const bool solved = rec.status == JReconstruction::Status::solved;
        rj["status"] = solved ? "solved" : "degenerate";
        rj["singular_values"] = rec.singular_values;
        rj["singular_ratio"] = rec.singular_ratio;
        rj["gate"] = kReconstructionGate;
        if (solved) {
            double jmax = 0.0;
            for (const auto& row : rec.direct)
                for (double x : row) jmax = std::max(jmax, std::abs(x));
            const bool ok = rec.max_error <= 1e-9 * std::max(1.0, jmax);
            rj["reconstructed"] = matrix3_json(rec.reconstructed);
            rj["max_error"] = rec.max_error;
            rj["pass"] = ok;
            pass = pass && ok;
        }
    }
    j["pass"] = pass;
    emit(args.out, j.dump(2) + "\n", out);
    return pass ? kSuccess : kIdentityViolation;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    VerifyOptions opts;
    std::string out;
    bool timing = false;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    if (args.opts.n != 3 && args.opts.n != 4) {
        throw InputError("verify supports --n 3 or --n 4, got " + std::to_string(args.opts.n));
    }
    if (args.opts.trials < 1) throw InputError("--trials must be at least 1");
    const VerificationReport rep = run_verification(args.opts);
    emit(args.out, to_json(rep, args.timing), out);
    if (!args.out.empty() && args.out != "-") {
        for (const auto& r : rep.identities)
            err << (r.pass ? "PASS " : "FAIL ") << r.name << "  max residual " << format_real(r.max_residual) << "\n";
    }
    return rep.all_pass ? kSuccess : kIdentityViolation;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
    std::size_t n = 3;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_sample(const SampleArgs& args, std::ostream& out) {
    if (args.n < ComplexMatrix::kMinDim || args.n > ComplexMatrix::kMaxDim) {
        throw InputError("--n must be between 2 and 8, got " + std::to_string(args.n));
    }
    emit(args.out, write_problem(ProblemFile::from_input(sample_problem(args.n, args.seed))), out);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jarlskog commutator determinants and rephasing-invariant phases"};
    app.name("jarlskog");
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    DetArgs det_args;
    auto* det = app.add_subcommand("det", "determinant of [H, H'] for a problem file");
    det->add_option("file", det_args.file, "problem file ('-' for stdin)")->required();
    det->add_option("--method", det_args.method, "direct, closed or both")
        ->check(CLI::IsMember({"direct", "closed", "both"}));
    det->add_option("--tol-rel", det_args.tol_rel, "relative tolerance for --method both");
    det->add_option("--tol-abs", det_args.tol_abs, "absolute tolerance for --method both");

    PhasesArgs phases_args;
    auto* phases = app.add_subcommand("phases", "invariant phase report for a problem file");
    phases->add_option("file", phases_args.file, "problem file ('-' for stdin)")->required();
    phases->add_option("--out", phases_args.out, "report path (default stdout)");
    phases->add_option("--tol-abs", phases_args.tol_abs, "absolute tolerance for the phase identities");

    VerifyArgs verify_args;
    verify_args.opts.trials = 1000;
    auto* verify = app.add_subcommand("verify", "check every identity over a seeded random ensemble");
    verify->add_option("--n", verify_args.opts.n, "dimension (3 or 4)")->required();
    verify->add_option("--trials", verify_args.opts.trials, "number of random trials")->capture_default_str();
    verify->add_option("--seed", verify_args.opts.seed, "master seed")->capture_default_str();
    verify->add_option("--tol-rel", verify_args.opts.tol_rel, "override the relative part of every tolerance");
    verify->add_option("--tol-abs", verify_args.opts.tol_abs, "override the absolute part of every tolerance");
    verify->add_option("--threads", verify_args.opts.threads, "worker threads")->capture_default_str();
    verify->add_option("--out", verify_args.out, "report path (default stdout)");
    verify->add_flag("--timing", verify_args.timing, "include wall time in the report");

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "write a random problem file");
    sample->add_option("--n", sample_args.n, "dimension (2..8)")->required();
    sample->add_option("--seed", sample_args.seed, "seed")->capture_default_str();
    sample->add_option("--out", sample_args.out, "output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kInputError;
    }

    try {
        if (*det) return cmd_det(det_args, out);
        if (*phases) return cmd_phases(phases_args, out);
        if (*verify) return cmd_verify(verify_args, out, err);
        if (*sample) return cmd_sample(sample_args, out);
    } catch (const InputError& e) {
        err << "jarlskog: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "jarlskog: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace jarlskog::cli
