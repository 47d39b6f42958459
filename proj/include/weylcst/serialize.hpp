#pragma once

// JSON and CSV exchange formats.  JSON uses ordered maps and fixed key order
// so identical data serializes to identical bytes; parse errors name the
// offending field.  CSV lays out one grid point per row: coordinates first,
// then one (re, im) pair per blade in bitmask order; spacetime fields prepend
// the x0 column.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "weylcst/ck_series.hpp"
#include "weylcst/errors.hpp"
#include "weylcst/field.hpp"
#include "weylcst/gaussian_poly.hpp"
#include "weylcst/multivector.hpp"
#include "weylcst/report.hpp"
#include "weylcst/torus.hpp"

namespace weylcst {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& expect_field(const json& j, const char* field, const char* context) {
    if (!j.is_object())
        throw io_error(std::string(context) + ": expected a JSON object");
    auto it = j.find(field);
    if (it == j.end())
        throw io_error(std::string(context) + ": missing field '" + field + "'");
    return *it;
}

inline int expect_int(const json& j, const char* field, const char* context) {
    const json& v = expect_field(j, field, context);
    if (!v.is_number_integer())
        throw io_error(std::string(context) + ": field '" + field + "' must be an integer");
    return v.get<int>();
}

inline double expect_number(const json& j, const char* field, const char* context) {
    const json& v = expect_field(j, field, context);
    if (!v.is_number())
        throw io_error(std::string(context) + ": field '" + field + "' must be a number");
    return v.get<double>();
}

inline const json& expect_array(const json& j, const char* field, const char* context) {
    const json& v = expect_field(j, field, context);
    if (!v.is_array())
        throw io_error(std::string(context) + ": field '" + field + "' must be an array");
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------- Multivector

inline json to_json(const Multivector& u) {
    json coeffs = json::array();
    for (size_t i = 0; i < u.size(); ++i)
        coeffs.push_back(json::array({u[i].real(), u[i].imag()}));
    return json{{"m", u.m()}, {"coeffs", std::move(coeffs)}};
}

inline Multivector multivector_from_json(const json& j) {
    const int m = detail::expect_int(j, "m", "multivector");
    check_m(m);
    const json& coeffs = detail::expect_array(j, "coeffs", "multivector");
    Multivector u(m);
    if (coeffs.size() != u.size())
        throw io_error("multivector: field 'coeffs' must hold exactly 2^m entries");
    for (size_t i = 0; i < u.size(); ++i) {
        const json& pair = coeffs[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw io_error("multivector: field 'coeffs' entries must be [re, im] number pairs");
        u[i] = cplx{pair[0].get<double>(), pair[1].get<double>()};
    }
    return u;
}

// --------------------------------------------------------- GaussianPolynomial

inline json to_json(const GaussianPolynomial& f) {
    json terms = json::array();
    for (const auto& [key, c] : f.terms()) {
        json k = json::array();
        for (int v : detail::unpack_index(key, f.m())) k.push_back(v);
        terms.push_back(json{{"k", std::move(k)}, {"coeff", to_json(c)}});
    }
    return json{{"m", f.m()}, {"alpha", f.alpha()}, {"terms", std::move(terms)}};
}

inline GaussianPolynomial gaussian_poly_from_json(const json& j) {
    const int m = detail::expect_int(j, "m", "gaussian polynomial");
    const double alpha = detail::expect_number(j, "alpha", "gaussian polynomial");
    GaussianPolynomial f(m, alpha);
    for (const json& term : detail::expect_array(j, "terms", "gaussian polynomial")) {
        const json& kj = detail::expect_array(term, "k", "gaussian polynomial term");
        MultiIndex k;
        for (const json& v : kj) {
            if (!v.is_number_integer() || v.get<int>() < 0)
                throw io_error("gaussian polynomial term: field 'k' must hold integers >= 0");
            k.push_back(v.get<int>());
        }
        f.add_term(k, multivector_from_json(
                          detail::expect_field(term, "coeff", "gaussian polynomial term")));
    }
    return f;
}

// ----------------------------------------------------------- TorusCoefficients

inline json to_json(const TorusCoefficients& f) {
    json modes = json::array();
    for (const auto& [key, c] : f.modes()) {
        json k = json::array();
        for (int v : detail::unpack_torus_index(key, f.m())) k.push_back(v);
        modes.push_back(json{{"k", std::move(k)}, {"coeff", to_json(c)}});
    }
    return json{{"m", f.m()}, {"modes", std::move(modes)}};
}

inline TorusCoefficients torus_coefficients_from_json(const json& j) {
    const int m = detail::expect_int(j, "m", "torus coefficients");
    TorusCoefficients f(m);
    for (const json& mode : detail::expect_array(j, "modes", "torus coefficients")) {
        const json& kj = detail::expect_array(mode, "k", "torus mode");
        TorusIndex k;
        for (const json& v : kj) {
            if (!v.is_number_integer())
                throw io_error("torus mode: field 'k' must hold integers");
            k.push_back(v.get<int>());
        }
        f.add_mode(k, multivector_from_json(detail::expect_field(mode, "coeff", "torus mode")));
    }
    return f;
}

// ------------------------------------------------------------- Grid and fields

inline json to_json(const GridSpec& g) {
    return json{{"m", g.m}, {"L", g.L}, {"N", g.N}};
}

inline GridSpec grid_from_json(const json& j) {
    return GridSpec(detail::expect_int(j, "m", "grid"), detail::expect_number(j, "L", "grid"),
                    detail::expect_int(j, "N", "grid"));
}

inline json to_json(const SampledField& f) {
    json values = json::array();
    for (size_t p = 0; p < f.points(); ++p) values.push_back(to_json(f.value(p)));
    return json{{"grid", to_json(f.grid())}, {"values", std::move(values)}};
}

inline SampledField sampled_field_from_json(const json& j) {
    const GridSpec grid = grid_from_json(detail::expect_field(j, "grid", "sampled field"));
    SampledField f(grid);
    const json& values = detail::expect_array(j, "values", "sampled field");
    if (values.size() != f.points())
        throw io_error("sampled field: field 'values' must hold exactly N^m samples");
    for (size_t p = 0; p < f.points(); ++p) {
        Multivector u = multivector_from_json(values[p]);
        if (u.m() != grid.m)
            throw io_error("sampled field: field 'values' sample dimension differs from grid");
        f.set_value(p, u);
    }
    return f;
}

inline json to_json(const SpacetimeField& F) {
    json slices = json::array();
    for (const auto& s : F.slices) slices.push_back(to_json(s));
    json warnings = json::array();
    for (const auto& w : F.warnings) warnings.push_back(w);
    return json{{"x0_values", F.x0_values},
                {"slices", std::move(slices)},
                {"warnings", std::move(warnings)}};
}

inline SpacetimeField spacetime_field_from_json(const json& j) {
    SpacetimeField F;
    for (const json& v : detail::expect_array(j, "x0_values", "spacetime field")) {
        if (!v.is_number()) throw io_error("spacetime field: field 'x0_values' must hold numbers");
        F.x0_values.push_back(v.get<double>());
    }
    for (const json& s : detail::expect_array(j, "slices", "spacetime field"))
        F.slices.push_back(sampled_field_from_json(s));
    if (auto it = j.find("warnings"); it != j.end() && it->is_array())
        for (const json& w : *it) F.warnings.push_back(w.get<std::string>());
    F.validate();
    return F;
}

// ---------------------------------------------------------------------- CKSeries

inline json to_json(const CKSeries& s) {
    json powers = json::array();
    for (const auto& p : s.scaled_powers()) powers.push_back(to_json(p));
    return json{{"base", to_json(s.base())},
                {"powers", std::move(powers)},
                {"powers_scaled_by_inverse_factorial", true},
                {"J", s.order()},
                {"tau", s.tau()},
                {"box", json{{"T", s.box().T}, {"X", s.box().X}}}};
}

inline CKSeries ck_series_from_json(const json& j) {
    std::vector<GaussianPolynomial> powers;
    for (const json& p : detail::expect_array(j, "powers", "ck series"))
        powers.push_back(gaussian_poly_from_json(p));
    const double tau = detail::expect_number(j, "tau", "ck series");
    const json& box = detail::expect_field(j, "box", "ck series");
    SeriesBox b{detail::expect_number(box, "T", "ck series box"),
                detail::expect_number(box, "X", "ck series box")};
    const int J = detail::expect_int(j, "J", "ck series");
    if (J + 1 != static_cast<int>(powers.size()))
        throw io_error("ck series: field 'J' disagrees with the powers list length");
    return ck_series_from_parts(std::move(powers), tau, b);
}

// ---------------------------------------------------------- VerificationReport

inline json to_json(const VerificationReport& r, bool include_timings = false) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back(json{
            {"name", c.name},
            {"computed", c.computed},
            {"reference", c.reference},
            {"tolerance", c.tolerance},
            {"mode", c.mode == ToleranceMode::relative ? "relative" : "absolute"},
            {"pass", c.pass},
            // Timings vary run to run; reports stay byte-stable unless the
            // caller opts in.
            {"runtime_ms", include_timings ? c.runtime_ms : 0.0},
        });
    }
    return json{{"suite", r.suite},
                {"seed", r.seed},
                {"pass", r.all_pass()},
                {"checks", std::move(checks)}};
}

inline VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    const json& suite = detail::expect_field(j, "suite", "report");
    if (!suite.is_string()) throw io_error("report: field 'suite' must be a string");
    r.suite = suite.get<std::string>();
    r.seed = static_cast<uint64_t>(detail::expect_number(j, "seed", "report"));
    for (const json& cj : detail::expect_array(j, "checks", "report")) {
        CheckResult c;
        c.name = detail::expect_field(cj, "name", "report check").get<std::string>();
        c.computed = detail::expect_number(cj, "computed", "report check");
        c.reference = detail::expect_number(cj, "reference", "report check");
        c.tolerance = detail::expect_number(cj, "tolerance", "report check");
        const std::string mode = detail::expect_field(cj, "mode", "report check").get<std::string>();
        if (mode != "absolute" && mode != "relative")
            throw io_error("report check: field 'mode' must be 'absolute' or 'relative'");
        c.mode = (mode == "relative") ? ToleranceMode::relative : ToleranceMode::absolute;
        c.runtime_ms = detail::expect_number(cj, "runtime_ms", "report check");
        const json& pass = detail::expect_field(cj, "pass", "report check");
        if (!pass.is_boolean()) throw io_error("report check: field 'pass' must be a boolean");
        c.pass = pass.get<bool>();
        r.checks.push_back(std::move(c));
    }
    return r;
}

// ------------------------------------------------------------------------ CSV

namespace detail {
inline void csv_number(std::string& line, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    line += buf;
}
}  // namespace detail

inline void write_csv(std::ostream& os, const SampledField& f, const double* x0 = nullptr) {
    const GridSpec& g = f.grid();
    std::string header;
    if (x0) header += "x0,";
    for (int a = 0; a < g.m; ++a) header += "x" + std::to_string(a + 1) + ",";
    for (size_t b = 0; b < f.blades(); ++b) {
        header += "re" + std::to_string(b) + ",im" + std::to_string(b);
        if (b + 1 < f.blades()) header += ",";
    }
    os << header << "\n";

    std::vector<int> digits(g.m);
    std::string line;
    for (size_t flat = 0; flat < f.points(); ++flat) {
        size_t rest = flat;
        for (int a = g.m - 1; a >= 0; --a) {
            digits[a] = static_cast<int>(rest % static_cast<size_t>(g.N));
            rest /= static_cast<size_t>(g.N);
        }
        line.clear();
        if (x0) {
            detail::csv_number(line, *x0);
            line += ",";
        }
        for (int a = 0; a < g.m; ++a) {
            detail::csv_number(line, g.coordinate(digits[a]));
            line += ",";
        }
        for (size_t b = 0; b < f.blades(); ++b) {
            detail::csv_number(line, f.component(b)[flat].real());
            line += ",";
            detail::csv_number(line, f.component(b)[flat].imag());
            if (b + 1 < f.blades()) line += ",";
        }
        os << line << "\n";
    }
}

inline void write_csv(std::ostream& os, const SpacetimeField& F) {
    for (size_t t = 0; t < F.slices.size(); ++t) {
        if (t == 0) {
            write_csv(os, F.slices[t], &F.x0_values[t]);
        } else {
            // Subsequent slices skip the header.
            std::ostringstream buf;
            write_csv(buf, F.slices[t], &F.x0_values[t]);
            const std::string s = buf.str();
            os << s.substr(s.find('\n') + 1);
        }
    }
}

// ------------------------------------------------------------------ file I/O

inline json load_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open '" + path + "' for reading");
    json j = json::parse(is, nullptr, false);
    if (j.is_discarded()) throw io_error("'" + path + "': malformed JSON");
    return j;
}

inline void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << text;
}

}  // namespace weylcst
