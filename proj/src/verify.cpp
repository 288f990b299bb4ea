#include "jarlskog/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "jarlskog/phases.hpp"

namespace jarlskog {

MassPairInput sample_problem(std::size_t n, std::uint64_t seed, double min_gap) {
    SeededRng rng(seed);
    UnitaryMatrix v = haar_unitary(n, rng);
    Spectrum a = random_spectrum(n, rng, min_gap);
    Spectrum b = random_spectrum(n, rng, min_gap);
    return MassPairInput(std::move(a), std::move(b), std::move(v));
}

const IdentityResult* VerificationReport::find(const std::string& name) const {
    for (const auto& r : identities)
        if (r.name == name) return &r;
    return nullptr;
}

std::vector<std::pair<std::string, Tolerance>> default_tolerances(std::size_t n) {
    std::vector<std::pair<std::string, Tolerance>> t{
        {"closed_form_equivalence", {n == 4 ? 1e-9 : 1e-10, 0.0}},
        {"parity", {1e-9, 1e-12}},
        {"swap_symmetry", {1e-10, 1e-12}},
        {"rephasing_invariance_determinant", {1e-10, 1e-12}},
        {"rephasing_invariance_phases", {0.0, 1e-12}},
        {"haar_unitarity", {0.0, 1e-12}},
        {"eigensolver_roundtrip", {0.0, 1e-10}},
        {"antisymmetry", {0.0, 0.0}},
        {"unitary_relations", {0.0, 1e-13}},
        {"nonlinear_relations", {0.0, 1e-12}},
    };
    if (n == 3) {
        t.push_back({"single_phase_signs", {1e-12, 0.0}});
        t.push_back({"determinant_phase_link", {1e-10, 1e-12}});
    } else {
        t.push_back({"t_sum_identity", {0.0, 1e-12}});
        t.push_back({"phase_expansion", {0.0, 1e-12}});
        t.push_back({"reconstruct_J", {1e-9, 0.0}});
    }
    return t;
}

namespace {

struct Measurement {
    double residual;
    double scale;
};

using TrialResult = std::vector<std::optional<Measurement>>;

double table_max_diff(const PhaseTable& x, const PhaseTable& y) {
    const std::size_t n = x.n();
    double m = 0.0;
    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = 1; b <= n; ++b)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t k = 1; k <= n; ++k) {
                    const PlaquetteIndex i{a, b, j, k};
                    m = std::max(m, std::abs(x.im(i) - y.im(i)));
                    if (x.has_real() && y.has_real()) m = std::max(m, std::abs(x.re(i) - y.re(i)));
                }
    return m;
}

// Table entries against direct evaluation, and the four index orders against
// each other. Exact by construction, so any nonzero value is a defect.
double antisymmetry_defect(const UnitaryMatrix& v, const PhaseTable& t) {
    const std::size_t n = v.n();
    double m = 0.0;
    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = 1; b <= n; ++b)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t k = 1; k <= n; ++k) {
                    const Complex p = plaquette(v, {a, b, j, k});
                    const Complex p_ba = plaquette(v, {b, a, j, k});
                    const Complex p_kj = plaquette(v, {a, b, k, j});
                    const double im = (a == b || j == k) ? 0.0 : p.imag();
                    m = std::max({m, std::abs(t.im({a, b, j, k}) - im), std::abs(t.re({a, b, j, k}) - p.real()),
                                  std::abs(p_ba.imag() + p.imag()), std::abs(p_kj.imag() + p.imag()),
                                  std::abs(p_ba.real() - p.real()), std::abs(p_kj.real() - p.real())});
                }
    return m;
}

TrialResult run_trial(std::size_t n, std::uint64_t trial_seed, const std::vector<std::string>& names) {
    const MassPairInput in = sample_problem(n, trial_seed);
    SeededRng angle_rng(SeededRng::stream_seed(trial_seed, 0));
    const RephasingAngles angles = RephasingAngles::random(n, angle_rng);
    const UnitaryMatrix& v = in.v();
    const UnitaryMatrix vr = rephase(v, angles);
    const MassPairInput in_r(in.a(), in.b(), vr);

    const Complex direct = det_direct(in);
    const Complex closed = det_closed(in);
    const double mag = std::abs(direct);
    const PhaseTable table = phase_table(v);

    TrialResult out(names.size());
    auto set = [&](const std::string& name, double residual, double scale) {
        const auto it = std::find(names.begin(), names.end(), name);
        out[static_cast<std::size_t>(it - names.begin())] = Measurement{residual, scale};
    };

    set("closed_form_equivalence", std::abs(closed - direct), std::max(1.0, mag));
    set("parity", n % 2 == 1 ? std::abs(direct.real()) : std::abs(direct.imag()), mag);
    {
        const Complex sw = det_direct(in.swapped());
        const double sign = n % 2 == 1 ? -1.0 : 1.0;
        set("swap_symmetry", std::abs(sw - sign * direct), mag);
    }
    {
        const double r = std::max(std::abs(det_direct(in_r) - direct), std::abs(det_closed(in_r) - closed));
        set("rephasing_invariance_determinant", r, mag);
    }
    set("rephasing_invariance_phases", table_max_diff(table, phase_table(vr)), 1.0);
    set("haar_unitarity", v.unitarity_defect(), 1.0);
    {
        const ComplexMatrix h = hermitian_from_spectrum(v, in.a());
        const EigenDecomposition e = jacobi_eig(h);
        double r = max_abs_diff(h, hermitian_from_spectrum(e.vectors, e.values));
        for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(e.values[i] - in.a()[i]));
        set("eigensolver_roundtrip", r, 1.0);
    }
    set("antisymmetry", antisymmetry_defect(v, table), 1.0);
    set("unitary_relations", unitary_relation_residuals(v).max(), 1.0);
    set("nonlinear_relations", nonlinear_relation_residuals(v).max(), 1.0);

    if (n == 3) {
        const N3PhaseReport s = n3_phase_table(v);
        set("single_phase_signs", s.max_deviation, std::max(1.0, std::abs(s.base)));
        const double tb = cyclic_difference_product(in.a()) * cyclic_difference_product(in.b());
        set("determinant_phase_link", std::abs(direct - Complex{0.0, 2.0 * tb * s.base}), mag);
    } else {
        set("t_sum_identity",
            std::max(t_factors(in.a()).identity_relative_residual(), t_factors(in.b()).identity_relative_residual()),
            1.0);
        const JRMatrices jr = jr_matrices(v);
        set("phase_expansion", table_max_diff(expand_phases(jr), table), 1.0);
        const JReconstruction rec = reconstruct_J(v);
        if (rec.status == JReconstruction::Status::solved) {
            double jmax = 0.0;
            for (const auto& row : rec.direct)
                for (double x : row) jmax = std::max(jmax, std::abs(x));
            set("reconstruct_J", rec.max_error, std::max(1.0, jmax));
        }
    }
    return out;
}

}  // namespace

VerificationReport run_verification(const VerifyOptions& opts) {
    if (opts.n != 3 && opts.n != 4) {
        throw DimensionError("verify supports n = 3 or 4, got n = " + std::to_string(opts.n));
    }
    if (opts.trials < 1) throw Error("verify needs at least one trial");

    const auto start = std::chrono::steady_clock::now();
    auto tolerances = default_tolerances(opts.n);
    for (auto& [name, tol] : tolerances) {
        if (opts.tol_rel) tol.rel = *opts.tol_rel;
        if (opts.tol_abs) tol.abs = *opts.tol_abs;
    }
    std::vector<std::string> names;
    for (const auto& [name, tol] : tolerances) names.push_back(name);

    std::vector<TrialResult> results(opts.trials);
    std::vector<std::uint64_t> seeds(opts.trials);
    for (std::size_t t = 0; t < opts.trials; ++t) seeds[t] = SeededRng::stream_seed(opts.seed, t);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < opts.trials; t = next++) results[t] = run_trial(opts.n, seeds[t], names);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(opts.trials)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    VerificationReport rep;
    rep.suite = "jarlskog-identities-n" + std::to_string(opts.n);
    rep.tool_version = kToolVersion;
    rep.n = opts.n;
    rep.master_seed = opts.seed;
    rep.trials = opts.trials;

    // Aggregation runs in trial order so sums are reproducible bit for bit.
    for (std::size_t id = 0; id < tolerances.size(); ++id) {
        IdentityResult r;
        r.name = tolerances[id].first;
        r.tolerance = tolerances[id].second;
        double sum = 0.0;
        for (std::size_t t = 0; t < opts.trials; ++t) {
            const auto& m = results[t][id];
            if (!m) continue;
            ++r.evaluated;
            sum += m->residual;
            const double allowed = r.tolerance.allowed(m->scale);
            const double ratio = allowed > 0.0 ? m->residual / allowed
                                 : m->residual == 0.0 ? 0.0
                                                      : std::numeric_limits<double>::infinity();
            if (!(m->residual <= allowed)) r.pass = false;
            if (r.evaluated == 1 || ratio > r.max_ratio) {
                r.max_ratio = ratio;
                r.worst_trial = t;
                r.worst_seed = seeds[t];
            }
            r.max_residual = std::max(r.max_residual, m->residual);
        }
        r.mean_residual = r.evaluated ? sum / static_cast<double>(r.evaluated) : 0.0;
        if (r.name == "reconstruct_J") {
            rep.reconstruction_gate_pass_rate = static_cast<double>(r.evaluated) / static_cast<double>(opts.trials);
        }
        rep.all_pass = rep.all_pass && r.pass;
        rep.identities.push_back(std::move(r));
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string to_json(const VerificationReport& rep, bool include_timing) {
    nlohmann::ordered_json j;
    j["format"] = "jarlskog-verification";
    j["version"] = 1;
    j["suite"] = rep.suite;
    j["tool_version"] = rep.tool_version;
    j["n"] = rep.n;
    j["master_seed"] = rep.master_seed;
    j["trials"] = rep.trials;
    auto& ids = j["identities"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.identities) {
        nlohmann::ordered_json e;
        e["name"] = r.name;
        e["pass"] = r.pass;
        e["evaluated"] = r.evaluated;
        e["max_residual"] = r.max_residual;
        e["mean_residual"] = r.mean_residual;
        e["max_ratio"] = std::isfinite(r.max_ratio) ? nlohmann::ordered_json(r.max_ratio)
                                                    : nlohmann::ordered_json("inf");
        e["tolerance"] = {{"rel", r.tolerance.rel}, {"abs", r.tolerance.abs}};
        e["worst_trial"] = r.worst_trial + 1;
        e["worst_trial_seed"] = r.worst_seed;
        ids.push_back(std::move(e));
    }
    if (rep.reconstruction_gate_pass_rate) j["reconstruction_gate_pass_rate"] = *rep.reconstruction_gate_pass_rate;
    j["all_pass"] = rep.all_pass;
    if (include_timing) j["wall_seconds"] = rep.wall_seconds;
    return j.dump(2) + "\n";
}

}  // namespace jarlskog
