// Command-line front door: transforms on R^m and the torus, basis export,
// verification suites, and quadrature self-tests.  Exit codes: 0 success /
// all checks pass, 1 verification failure (report still written), 2 usage or
// I/O error.  Report output is byte-stable for a fixed seed: timings are
// zeroed unless --timings is given and nothing else reaches stdout.
#include <weylcst/weylcst.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace weylcst;

struct GlobalOptions {
    double tol = 0.0;  // 0 = per-suite default
    uint64_t seed = 20240901;
    int threads = 1;
    std::string format = "both";  // csv | json | both
    std::string momentum_sign = "plus";
    bool timings = false;
};

double pick_tol(const GlobalOptions& g, double fallback) {
    return g.tol > 0.0 ? g.tol : fallback;
}

MomentumSign pick_sign(const GlobalOptions& g) {
    return g.momentum_sign == "minus" ? MomentumSign::minus_i : MomentumSign::plus_i;
}

std::vector<double> parse_linspace(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);

    const auto num = [&spec](const std::string& s) -> double {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw io_error("--x0: '" + spec + "' is not of the form a:b:n or a plain number");
        }
        if (pos != s.size())
            throw io_error("--x0: '" + spec + "' is not of the form a:b:n or a plain number");
        return v;
    };

    if (parts.size() == 1) return {num(parts[0])};
    if (parts.size() != 3)
        throw io_error("--x0: '" + spec + "' is not of the form a:b:n or a plain number");
    const double a = num(parts[0]);
    const double b = num(parts[1]);
    const double nd = num(parts[2]);
    const int n = static_cast<int>(nd);
    if (nd != n || n < 1) throw io_error("--x0: the count in a:b:n must be a positive integer");
    if (n == 1) return {a};
    if (!(b > a)) throw io_error("--x0: need b > a when requesting more than one value");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n));
    const double step = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) out.push_back(a + i * step);
    return out;
}

void write_text(const std::string& path, const std::string& text) { save_text_file(path, text); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- transform

struct TransformArgs {
    std::string space;
    int m = 0;
    std::string input;
    std::string x0_spec = "0:0:1";
    int grid = 64;
    std::string out_dir = ".";
};

int run_transform(const TransformArgs& a, const GlobalOptions& g) {
    const std::vector<double> x0s = parse_linspace(a.x0_spec);
    std::filesystem::create_directories(a.out_dir);
    const std::string base = a.out_dir + "/transform";
    const bool want_json = g.format != "csv";
    const bool want_csv = g.format != "json";

    if (a.space == "rm") {
        const SampledField f = sampled_field_from_json(load_json_file(a.input));
        if (a.m != 0 && a.m != f.m())
            throw io_error("--m " + std::to_string(a.m) + " does not match the input field (m = " +
                           std::to_string(f.m()) + ")");
        const SpacetimeField F = cst_spectral(f, x0s);
        for (const std::string& w : F.warnings) std::cerr << "warning: " << w << "\n";
        if (want_json) write_text(base + ".json", dump(to_json(F)));
        if (want_csv) {
            std::ostringstream os;
            write_csv(os, F);
            write_text(base + ".csv", os.str());
        }
        return 0;
    }

    if (a.space == "torus") {
        const TorusCoefficients f = torus_coefficients_from_json(load_json_file(a.input));
        if (a.m != 0 && a.m != f.m())
            throw io_error("--m " + std::to_string(a.m) + " does not match the input modes (m = " +
                           std::to_string(f.m()) + ")");
        if (a.grid < 1) throw io_error("--grid must be at least 1");
        const TorusMonogenicField u = torus_cst(f);

        json slices = json::array();
        std::string csv = "x0,point,blade,re,im\n";
        for (double x0 : x0s) {
            const std::vector<Multivector> vals = u.sample_slice(x0, a.grid);
            json jv = json::array();
            std::string line;
            for (size_t p = 0; p < vals.size(); ++p) {
                jv.push_back(to_json(vals[p]));
                for (size_t b = 0; b < vals[p].size(); ++b) {
                    line.clear();
                    detail::csv_number(line, x0);
                    line += "," + std::to_string(p) + "," + std::to_string(b) + ",";
                    detail::csv_number(line, vals[p][static_cast<uint32_t>(b)].real());
                    line += ",";
                    detail::csv_number(line, vals[p][static_cast<uint32_t>(b)].imag());
                    csv += line + "\n";
                }
            }
            slices.push_back(json{{"x0", x0}, {"values", std::move(jv)}});
        }
        const json out{{"space", "torus"},
                       {"m", f.m()},
                       {"grid", a.grid},
                       {"x0_values", x0s},
                       {"slices", std::move(slices)}};
        if (want_json) write_text(base + ".json", dump(out));
        if (want_csv) write_text(base + ".csv", csv);
        return 0;
    }

    throw io_error("--space must be 'rm' or 'torus'");
}

// -------------------------------------------------------------------- basis

struct BasisArgs {
    int m = 1;
    int kmax = 2;
    std::string out_dir = ".";
    double tau = 1e-10;
    int slice_points = 0;  // 0 = auto
    std::string x0_spec = "-1:1:3";
};

int run_basis(const BasisArgs& a, const GlobalOptions& g) {
    if (a.m < 1) throw io_error("--m must be at least 1");
    if (a.kmax < 0) throw io_error("--kmax must be nonnegative");
    const std::vector<double> x0s = parse_linspace(a.x0_spec);
    double T = 1.0;
    for (double x0 : x0s) T = std::max(T, std::abs(x0));
    const double X = 8.0;
    const int P = a.slice_points > 0 ? a.slice_points : (a.m <= 2 ? 65 : 17);
    std::filesystem::create_directories(a.out_dir);
    const bool want_json = g.format != "csv";
    const bool want_csv = g.format != "json";

    json manifest_entries = json::array();
    for (const MultiIndex& k : detail::multiindices_up_to(a.m, a.kmax)) {
        std::string label = "psi";
        for (int ka : k) label += "_" + std::to_string(ka);
        const CKSeries s = psi_basis(k, a.tau, SeriesBox{T, X});

        if (want_json) write_text(a.out_dir + "/" + label + ".json", dump(to_json(s)));
        if (want_csv) {
            std::string csv = "x0,";
            for (int ax = 0; ax < a.m; ++ax) csv += "x" + std::to_string(ax + 1) + ",";
            csv += "blade,re,im\n";
            std::string line;
            std::vector<double> x(static_cast<size_t>(a.m));
            for (double x0 : x0s) {
                const GaussianPolynomial slice = s.collapse_at(x0);
                std::vector<int> idx(static_cast<size_t>(a.m), 0);
                for (;;) {
                    for (int ax = 0; ax < a.m; ++ax)
                        x[static_cast<size_t>(ax)] = -X + 2.0 * X * idx[static_cast<size_t>(ax)] / (P - 1);
                    const Multivector v = slice.eval(x);
                    for (size_t b = 0; b < v.size(); ++b) {
                        line.clear();
                        detail::csv_number(line, x0);
                        line += ",";
                        for (int ax = 0; ax < a.m; ++ax) {
                            detail::csv_number(line, x[static_cast<size_t>(ax)]);
                            line += ",";
                        }
                        line += std::to_string(b) + ",";
                        detail::csv_number(line, v[static_cast<uint32_t>(b)].real());
                        line += ",";
                        detail::csv_number(line, v[static_cast<uint32_t>(b)].imag());
                        csv += line + "\n";
                    }
                    int ax = a.m - 1;
                    while (ax >= 0 && ++idx[static_cast<size_t>(ax)] == static_cast<size_t>(P))
                        idx[static_cast<size_t>(ax--)] = 0;
                    if (ax < 0) break;
                }
            }
            write_text(a.out_dir + "/" + label + "_slices.csv", csv);
        }

        json kj = json::array();
        for (int ka : k) kj.push_back(ka);
        manifest_entries.push_back(json{{"k", std::move(kj)},
                                        {"series", label + ".json"},
                                        {"slices", label + "_slices.csv"},
                                        {"norm_sq", std::pow(2.0, a.m) * phi_norm_sq(k)}});
    }
    const json manifest{{"m", a.m},
                        {"kmax", a.kmax},
                        {"x0_values", x0s},
                        {"slice_points", P},
                        {"entries", std::move(manifest_entries)}};
    write_text(a.out_dir + "/basis.json", dump(manifest));
    return 0;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite;
    int m = 0;      // 0 = suite default
    int kmax = -1;  // -1 = suite default
    int sets = 100;
    double quad_tol = 1e-8;
    std::string params;
    std::string out;
};

void apply_params_file(VerifyArgs& a, GlobalOptions& g, const CLI::Option* m_opt,
                       const CLI::Option* kmax_opt, const CLI::Option* sets_opt,
                       const CLI::Option* quad_opt, const CLI::Option* tol_opt,
                       const CLI::Option* seed_opt, const CLI::Option* threads_opt,
                       const CLI::Option* sign_opt) {
    if (a.params.empty()) return;
    const json p = load_json_file(a.params);
    if (!p.is_object()) throw io_error("params file: expected a JSON object of flag values");
    const auto want = [&](const char* key, const CLI::Option* opt) {
        return p.contains(key) && (opt == nullptr || opt->count() == 0);
    };
    const auto as_int = [&](const char* key) {
        if (!p[key].is_number_integer()) throw io_error(std::string("params file: field '") + key + "' must be an integer");
        return p[key].get<int>();
    };
    if (want("m", m_opt)) a.m = as_int("m");
    if (want("kmax", kmax_opt)) a.kmax = as_int("kmax");
    if (want("sets", sets_opt)) a.sets = as_int("sets");
    if (want("quad-tol", quad_opt)) {
        if (!p["quad-tol"].is_number()) throw io_error("params file: field 'quad-tol' must be a number");
        a.quad_tol = p["quad-tol"].get<double>();
    }
    if (want("tol", tol_opt)) {
        if (!p["tol"].is_number()) throw io_error("params file: field 'tol' must be a number");
        g.tol = p["tol"].get<double>();
    }
    if (want("seed", seed_opt)) {
        if (!p["seed"].is_number()) throw io_error("params file: field 'seed' must be a number");
        g.seed = p["seed"].get<uint64_t>();
    }
    if (want("threads", threads_opt)) g.threads = as_int("threads");
    if (want("momentum-sign", sign_opt)) {
        if (!p["momentum-sign"].is_string())
            throw io_error("params file: field 'momentum-sign' must be 'plus' or 'minus'");
        const std::string s = p["momentum-sign"].get<std::string>();
        if (s != "plus" && s != "minus")
            throw io_error("params file: field 'momentum-sign' must be 'plus' or 'minus'");
        g.momentum_sign = s;
    }
}

int run_verify(const VerifyArgs& a, const GlobalOptions& g) {
    DmuQuadrature q;
    q.threads = g.threads;

    VerificationReport rep;
    if (a.suite == "isometry") {
        const int m = a.m > 0 ? a.m : 1;
        const int kmax = a.kmax >= 0 ? a.kmax : 2;
        const double tol = pick_tol(g, 1e-6);
        rep = isometry_suite(m, kmax, q, tol, tol);
    } else if (a.suite == "gram") {
        const int m = a.m > 0 ? a.m : 1;
        const int kmax = a.kmax >= 0 ? a.kmax : 3;
        const double tol = pick_tol(g, 1e-6);
        rep = gram_suite(m, kmax, q, tol, tol).report;
    } else if (a.suite == "monogenic") {
        rep = monogenic_suite(pick_tol(g, 1e-5));
    } else if (a.suite == "intertwine") {
        const int m = a.m > 0 ? a.m : 1;
        const int kmax = a.kmax >= 0 ? a.kmax : 2;
        rep = intertwine_suite(m, kmax, pick_tol(g, 1e-8), pick_sign(g));
    } else if (a.suite == "torus-parseval") {
        rep = torus_parseval_suite(g.seed, a.sets, pick_tol(g, 1e-12), a.quad_tol);
    } else if (a.suite == "genhermite") {
        rep = genhermite_suite(pick_tol(g, 1e-8));
    } else {
        throw io_error("unknown verify suite '" + a.suite + "'");
    }

    const std::string text = dump(to_json(rep, g.timings));
    std::cout << text;
    if (!a.out.empty()) write_text(a.out, text);
    return rep.all_pass() ? 0 : 1;
}

// --------------------------------------------------------------- quadrature

int run_quadrature(int nodes, bool selftest, const GlobalOptions& g) {
    const QuadratureRule gh = QuadratureRule::gauss_hermite(nodes);
    if (!selftest) {
        json j{{"kind", "gauss-hermite"}, {"nodes", gh.nodes}, {"weights", gh.weights}};
        std::cout << dump(j);
        return 0;
    }

    // Even moments of e^{-x0^2}: (2j-1)!! sqrt(pi) / 2^j, j <= n-1.
    VerificationReport rep;
    rep.suite = "quadrature";
    const double tol = pick_tol(g, 1e-13);
    double expected = std::sqrt(std::numbers::pi);
    for (int j = 0; j < nodes; ++j) {
        if (j > 0) expected *= (2.0 * j - 1.0) / 2.0;
        double got = 0.0;
        for (size_t i = 0; i < gh.nodes.size(); ++i)
            got += gh.weights[i] * std::pow(gh.nodes[i], 2 * j);
        rep.add(make_check("moment x0^" + std::to_string(2 * j), got, expected, tol,
                           ToleranceMode::relative));
    }
    std::cout << dump(to_json(rep, g.timings));
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherent state transform toolkit for Clifford-algebra-valued fields"};
    app.require_subcommand(1);

    GlobalOptions g;
    auto* tol_opt = app.add_option("--tol", g.tol, "Override the default tolerance of the invoked check");
    auto* seed_opt = app.add_option("--seed", g.seed, "Seed for randomized suites (default 20240901)");
    auto* threads_opt = app.add_option("--threads", g.threads, "Worker threads for quadrature suites")
                            ->check(CLI::Range(1, 64));
    app.add_option("--format", g.format, "Sampled-data output format")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    auto* sign_opt = app.add_option("--momentum-sign", g.momentum_sign,
                                    "Sign convention for the momentum operator (plus: p_j = +i d_j)")
                         ->check(CLI::IsMember({"plus", "minus"}));
    app.add_flag("--timings", g.timings, "Include per-check runtimes in reports (breaks byte-stability)");

    TransformArgs ta;
    CLI::App* t = app.add_subcommand("transform", "Apply the transform to sampled or mode data");
    t->fallthrough();
    t->add_option("--space", ta.space, "rm (sampled field on a box) or torus (Fourier modes)")
        ->required()
        ->check(CLI::IsMember({"rm", "torus"}));
    t->add_option("--m", ta.m, "Expected dimension (validated against the input)");
    t->add_option("--input", ta.input, "Input JSON file")->required();
    t->add_option("--x0", ta.x0_spec, "Time values a:b:n or a single number (default 0:0:1)");
    t->add_option("--grid", ta.grid, "Torus lattice points per axis (default 64)");
    t->add_option("--out", ta.out_dir, "Output directory (default .)");

    BasisArgs ba;
    CLI::App* b = app.add_subcommand("basis", "Export the generalized Hermite basis");
    b->fallthrough();
    b->add_option("--m", ba.m, "Dimension")->required();
    b->add_option("--kmax", ba.kmax, "Maximum total degree (default 2)");
    b->add_option("--out", ba.out_dir, "Output directory (default .)");
    b->add_option("--tau", ba.tau, "Series truncation tolerance (default 1e-10)");
    b->add_option("--slice-points", ba.slice_points, "Sample points per axis (default 65, 17 for m > 2)");
    b->add_option("--x0", ba.x0_spec, "Slice times a:b:n (default -1:1:3)");

    VerifyArgs va;
    CLI::App* v = app.add_subcommand("verify", "Run a verification suite and print its report");
    v->fallthrough();
    v->add_option("suite", va.suite,
                  "isometry | gram | monogenic | intertwine | torus-parseval | genhermite")
        ->required()
        ->check(CLI::IsMember({"isometry", "gram", "monogenic", "intertwine", "torus-parseval",
                               "genhermite"}));
    auto* vm = v->add_option("--m", va.m, "Dimension (suite default if omitted)");
    auto* vk = v->add_option("--kmax", va.kmax, "Maximum degree (suite default if omitted)");
    auto* vs = v->add_option("--sets", va.sets, "Random coefficient sets for torus-parseval (default 100)");
    auto* vq = v->add_option("--quad-tol", va.quad_tol,
                             "Quadrature-path tolerance for torus-parseval (default 1e-8)");
    v->add_option("--params", va.params, "JSON file of flag values (flags given on the command line win)");
    v->add_option("--out", va.out, "Also write the report to this file");

    int qn = 64;
    bool qself = false;
    CLI::App* qc = app.add_subcommand("quadrature", "Inspect or self-test the Gauss-Hermite rule");
    qc->fallthrough();
    qc->add_option("--hermite-nodes", qn, "Node count (default 64)")->check(CLI::Range(1, 256));
    qc->add_flag("--selftest", qself, "Validate moments against the closed form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*t) return run_transform(ta, g);
        if (*b) return run_basis(ba, g);
        if (*v) {
            apply_params_file(va, g, vm, vk, vs, vq, tol_opt, seed_opt, threads_opt, sign_opt);
            return run_verify(va, g);
        }
        if (*qc) return run_quadrature(qn, qself, g);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const truncation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
