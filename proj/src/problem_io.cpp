#include "jarlskog/problem_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace jarlskog {

using nlohmann::json;

std::string format_real(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(Complex z) {
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    std::string s = format_real(z.real());
    s += std::signbit(im) ? "-" : "+";
    s += format_real(std::abs(im));
    s += "i";
    return s;
}

namespace {

double as_real(const json& j, const std::string& field) {
    if (!j.is_number()) throw ParseError("field '" + field + "': expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ParseError("field '" + field + "': value is not finite");
    return x;
}

std::vector<double> read_reals(const json& doc, const char* key, std::size_t n) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    const json& arr = doc.at(key);
    if (!arr.is_array() || arr.size() != n) {
        throw ParseError(std::string("field '") + key + "': expected an array of " + std::to_string(n) + " numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(as_real(arr[i], std::string(key) + "[" + std::to_string(i) + "]"));
    return out;
}

ComplexMatrix read_matrix(const json& doc, const char* key, std::size_t n) {
    const json& rows = doc.at(key);
    if (!rows.is_array() || rows.size() != n) {
        throw ParseError(std::string("field '") + key + "': expected " + std::to_string(n) + " rows");
    }
    std::vector<Complex> entries;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row_name = std::string(key) + "[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].size() != n) {
            throw ParseError("field '" + row_name + "': expected " + std::to_string(n) + " entries");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const std::string name = row_name + "[" + std::to_string(j) + "]";
            const json& z = rows[i][j];
            if (!z.is_array() || z.size() != 2) throw ParseError("field '" + name + "': expected [re, im]");
            entries.emplace_back(as_real(z[0], name + "[0]"), as_real(z[1], name + "[1]"));
        }
    }
    return ComplexMatrix(n, std::move(entries));
}

void write_reals(std::string& out, const std::vector<double>& xs) {
    out += "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += format_real(xs[i]);
    }
    out += "]";
}

void write_matrix(std::string& out, const ComplexMatrix& m) {
    out += "[\n";
    for (std::size_t i = 0; i < m.n(); ++i) {
        out += "    [";
        for (std::size_t j = 0; j < m.n(); ++j) {
            if (j) out += ", ";
            out += "[" + format_real(m(i, j).real()) + ", " + format_real(m(i, j).imag()) + "]";
        }
        out += i + 1 < m.n() ? "],\n" : "]\n";
    }
    out += "  ]";
}

}  // namespace

ProblemFile ProblemFile::from_input(const MassPairInput& in) {
    ProblemFile p;
    p.n = in.n();
    p.a.assign(in.a().values().begin(), in.a().values().end());
    p.b.assign(in.b().values().begin(), in.b().values().end());
    p.v = in.v().matrix();
    return p;
}

MassPairInput ProblemFile::to_input() const {
    try {
        Spectrum sa(a);
        Spectrum sb(b);
        if (v) return MassPairInput(std::move(sa), std::move(sb), UnitaryMatrix(*v));
        if (u && u_prime) {
            return MassPairInput::from_unitaries(std::move(sa), std::move(sb), UnitaryMatrix(*u),
                                                 UnitaryMatrix(*u_prime));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid problem: ") + e.what());
    }
    throw ParseError("problem needs either 'V' or both 'U' and 'U_prime'");
}

ProblemFile parse_problem(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("syntax error: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("problem file must be a JSON object");
    if (!doc.contains("format") || doc["format"] != kProblemFormat) {
        throw ParseError(std::string("field 'format': expected \"") + kProblemFormat + "\"");
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"] != kProblemVersion) {
        throw ParseError("field 'version': expected " + std::to_string(kProblemVersion));
    }
    if (!doc.contains("n") || !doc["n"].is_number_unsigned()) throw ParseError("field 'n': expected a positive integer");
    ProblemFile p;
    p.n = doc["n"].get<std::size_t>();
    if (p.n < ComplexMatrix::kMinDim || p.n > ComplexMatrix::kMaxDim) {
        throw ParseError("field 'n': unsupported dimension " + std::to_string(p.n));
    }
    p.a = read_reals(doc, "a", p.n);
    p.b = read_reals(doc, "b", p.n);

    const bool has_v = doc.contains("V");
    const bool has_u = doc.contains("U");
    const bool has_up = doc.contains("U_prime");
    if (has_v && (has_u || has_up)) throw ParseError("give either 'V' or 'U' and 'U_prime', not both");
    if (has_v) {
        p.v = read_matrix(doc, "V", p.n);
    } else if (has_u && has_up) {
        p.u = read_matrix(doc, "U", p.n);
        p.u_prime = read_matrix(doc, "U_prime", p.n);
    } else if (has_u || has_up) {
        throw ParseError(std::string("missing field '") + (has_u ? "U_prime" : "U") + "'");
    } else {
        throw ParseError("missing field 'V' (or 'U' and 'U_prime')");
    }
    return p;
}

std::string write_problem(const ProblemFile& p) {
    std::string out = "{\n";
    out += "  \"format\": \"" + std::string(kProblemFormat) + "\",\n";
    out += "  \"version\": " + std::to_string(kProblemVersion) + ",\n";
    out += "  \"n\": " + std::to_string(p.n) + ",\n";
    out += "  \"a\": ";
    write_reals(out, p.a);
    out += ",\n  \"b\": ";
    write_reals(out, p.b);
    if (p.v) {
        out += ",\n  \"V\": ";
        write_matrix(out, *p.v);
    } else {
        out += ",\n  \"U\": ";
        write_matrix(out, *p.u);
        out += ",\n  \"U_prime\": ";
        write_matrix(out, *p.u_prime);
    }
    out += "\n}\n";
    return out;
}

}  // namespace jarlskog
