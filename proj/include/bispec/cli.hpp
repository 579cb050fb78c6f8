#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bispec/classify.hpp"
#include "bispec/eigen.hpp"
#include "bispec/errors.hpp"
#include "bispec/family.hpp"
#include "bispec/json_io.hpp"
#include "bispec/moments.hpp"
#include "bispec/operator_algebra.hpp"
#include "bispec/realization.hpp"

namespace bispec::cli {

enum class Command { table, poly, verify, realize, algebra, classify_sequences, gauge };
enum class OutputFormat { json_format, csv };

/// Everything a single invocation needs. n_max >= 1; referenced files must
/// exist and parse.
struct RunConfig {
    Command command = Command::table;
    std::string family;  // preset name or path to a spec JSON
    long n_max = 20;
    OutputFormat format = OutputFormat::json_format;
    std::optional<std::string> output_path;

    long degree = 0;                  // poly
    std::string method = "descent";   // poly
    std::string suite = "all";        // verify
    bool check = false;               // realize
    std::optional<std::string> apply_path;  // realize
    std::string algebra_action = "verify";  // algebra
    std::string relation_template = "qjacobi";
    std::string input_path;           // classify
    Rational xi2, eta1, eta2;         // gauge
};

/// Built-in parameter sets reproducing the reference checks with one flag.
inline std::optional<FamilySpec> preset(const std::string& name) {
    if (name == "hermite")
        return make_family(FamilyKind::generalized_laguerre, Rational(0), Rational(0), Rational(-1));
    if (name == "gegenbauer-default")
        return make_family(FamilyKind::generalized_gegenbauer, Rational(0), Rational(3), Rational(1));
    if (name == "qjacobi-default")
        return make_family(FamilyKind::generalized_little_q_jacobi, Rational(1, 2), Rational(2),
                           Rational(1));
    if (name == "qlaguerre-default")
        return make_family(FamilyKind::generalized_q_laguerre, Rational(1, 2), Rational(0),
                           Rational(1));
    return std::nullopt;
}

inline FamilySpec load_family(const std::string& name_or_path) {
    if (auto p = preset(name_or_path)) return *p;
    std::ifstream in(name_or_path);
    if (!in) throw parse_error("cannot open family spec: " + name_or_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error("bad JSON in " + name_or_path + ": " + e.what());
    }
    return family_from_json(j);
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

namespace detail {

inline void emit(const RunConfig& cfg, const std::string& payload, std::ostream& out) {
    if (cfg.output_path) {
        std::ofstream f(*cfg.output_path);
        if (!f) throw parse_error("cannot write output file: " + *cfg.output_path);
        f << payload;
        return;
    }
    out << payload;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Deterministic generator (the stdlib distributions are not pinned across
/// implementations; plain modulo on the raw engine is).
struct DetRng {
    std::mt19937_64 engine{0x5eedULL};
    long below(long n) { return static_cast<long>(engine() % static_cast<unsigned long>(n)); }
    Rational rational(long num_span, long den_max) {
        return Rational(below(2 * num_span + 1) - num_span, 1 + below(den_max));
    }
    Laurent poly(long max_degree) {
        Laurent p;
        for (long k = 0; k <= max_degree; ++k)
            if (below(3) != 0) p.add_term(k, rational(6, 3));
        if (p.is_zero()) p.add_term(0, Rational(1));
        return p;
    }
};

inline json eigen_suite(const FamilySpec& spec, long n_max) {
    const ExpansionTable table(spec);
    CheckReport eig("eigen-equation"), dual("descent-equals-recurrence"), par("parity");
    const RecurrenceCoefficients rc = RecurrenceCoefficients::from_family(spec, n_max);
    for (long n = 0; n <= n_max; ++n) {
        const Laurent p = table.polynomial(n);
        const Laurent lp = apply_abstract(spec, p);
        const Rational lam = lambda_of(spec, n);
        ++eig.checks;
        if (!(lp == lam * p)) eig.fail({n}, lp.coeff(n), lam);
        ++dual.checks;
        if (!(p == eigenpoly_recurrence(rc, n))) dual.fail({n}, p.coeff(0), Rational(0));
        ++par.checks;
        const Laurent want = (n % 2) ? -p : p;
        if (!(p.reflect() == want)) par.fail({n}, Rational(0), Rational(0));
    }
    return json::array({to_json(eig), to_json(dual), to_json(par)});
}

inline json symmetry_suite(const FamilySpec& spec, long pairs, long max_degree) {
    const MomentFunctional sigma = moments_of(spec, 2 * max_degree + 4);
    DetRng rng;
    CheckReport rep("operator-symmetry");
    for (long i = 0; i < pairs; ++i) {
        const Laurent f = rng.poly(max_degree), g = rng.poly(max_degree);
        const CheckReport one = check_operator_symmetry(spec, sigma, f, g);
        ++rep.checks;
        if (!one.passed) {
            rep.fail({i}, *one.failure_lhs, *one.failure_rhs);
            break;
        }
    }
    return json::array({to_json(rep)});
}

inline json realization_suite(const FamilySpec& spec, long n_max) {
    json out = json::array();
    if (spec.kind == FamilyKind::generalized_q_laguerre) {
        out.push_back(json{{"name", "realization"},
                           {"passed", true},
                           {"skipped", true},
                           {"note", "family has no difference/differential realization"}});
        return out;
    }
    const RealizedOperator op = build_realization(spec);
    CheckReport rep("realization-matches-abstract-action");
    for (long n = 0; n <= n_max; ++n) {
        const Laurent got = apply_realized_monomial(op, n);
        const Laurent want = apply_abstract(spec, Laurent::monomial(n));
        ++rep.checks;
        if (!(got == want)) {
            rep.fail({n}, got.coeff(n), want.coeff(n));
            break;
        }
    }
    out.push_back(to_json(rep));
    return out;
}

inline json algebra_suite(const FamilySpec& spec, long n_max) {
    json out = json::array();
    out.push_back(to_json(verify_relation(spec, n_max)));
    if (spec.kind == FamilyKind::generalized_little_q_jacobi)
        out.push_back(to_json(verify_q_onsager(spec, n_max)));
    return out;
}

inline bool all_passed(const json& arr) {
    for (const auto& j : arr)
        if (j.contains("passed") && !j["passed"].get<bool>()) return false;
    return true;
}

inline int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const FamilySpec spec = load_family(cfg.family);
    const auto t0 = std::chrono::steady_clock::now();
    json suites = json::object();
    const auto want = [&](const char* s) { return cfg.suite == "all" || cfg.suite == s; };
    if (want("eigen")) suites["eigen"] = eigen_suite(spec, cfg.n_max);
    if (want("orthogonality"))
        suites["orthogonality"] = json::array({to_json(orthogonality_report(spec, cfg.n_max))});
    if (want("ns")) {
        const MomentFunctional sigma = moments_of(spec, 2 * cfg.n_max);
        suites["ns"] = json::array({to_json(check_ns_condition(spec, sigma, cfg.n_max))});
    }
    if (want("symmetry")) suites["symmetry"] = symmetry_suite(spec, 200, 12);
    if (want("realization")) suites["realization"] = realization_suite(spec, cfg.n_max);
    if (want("algebra")) suites["algebra"] = algebra_suite(spec, cfg.n_max);
    if (suites.empty()) throw parse_error("unknown suite: " + cfg.suite);
    bool passed = true;
    for (const auto& [name, arr] : suites.items()) passed = passed && all_passed(arr);
    json report{{"family", to_json(spec)}, {"n_max", cfg.n_max}, {"passed", passed},
                {"suites", suites}};
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    err << "verify " << cfg.suite << ": " << ms << " ms\n";
    emit(cfg, dump(report), out);
    return passed ? 0 : 1;
}

inline int run_table(const RunConfig& cfg, std::ostream& out) {
    const FamilySpec spec = load_family(cfg.family);
    if (cfg.format == OutputFormat::csv) {
        std::ostringstream os;
        os << "n,lambda,nu,u\n";
        for (long n = 0; n <= cfg.n_max; ++n) {
            const auto [lam, nu] = lambda_nu(spec, n);
            os << n << "," << lam.str() << "," << nu.str() << ","
               << (n >= 1 ? u_closed(spec, n).str() : "") << "\n";
        }
        emit(cfg, os.str(), out);
        return 0;
    }
    json rows = json::array();
    for (long n = 0; n <= cfg.n_max; ++n) {
        const auto [lam, nu] = lambda_nu(spec, n);
        json row{{"n", n}, {"lambda", lam.str()}, {"nu", nu.str()}};
        row["u"] = (n >= 1) ? json(u_closed(spec, n).str()) : json(nullptr);
        rows.push_back(std::move(row));
    }
    emit(cfg, dump(json{{"family", to_json(spec)}, {"rows", rows}}), out);
    return 0;
}

inline int run_poly(const RunConfig& cfg, std::ostream& out) {
    const FamilySpec spec = load_family(cfg.family);
    Laurent p;
    if (cfg.method == "descent")
        p = eigenpoly_descent(spec, cfg.degree);
    else if (cfg.method == "recurrence")
        p = eigenpoly_recurrence(spec, cfg.degree);
    else
        throw parse_error("unknown method: " + cfg.method);
    emit(cfg, dump(to_json(p)), out);
    return 0;
}

inline int run_realize(const RunConfig& cfg, std::ostream& out) {
    const FamilySpec spec = load_family(cfg.family);
    if (cfg.apply_path) {
        const RealizedOperator op = build_realization(spec);
        const Laurent p = laurent_from_json(load_json_file(*cfg.apply_path));
        emit(cfg, dump(to_json(apply_realized(op, p))), out);
        return 0;
    }
    const json rep = realization_suite(spec, cfg.n_max);
    emit(cfg, dump(json{{"family", to_json(spec)}, {"checks", rep}}), out);
    return all_passed(rep) ? 0 : 1;
}

inline int run_algebra(const RunConfig& cfg, std::ostream& out) {
    const FamilySpec spec = load_family(cfg.family);
    if (cfg.algebra_action == "verify") {
        const json rep = algebra_suite(spec, cfg.n_max);
        emit(cfg, dump(json{{"family", to_json(spec)}, {"checks", rep}}), out);
        return all_passed(rep) ? 0 : 1;
    }
    if (cfg.algebra_action == "fit") {
        const auto tmpl = template_from_name(cfg.relation_template);
        if (!tmpl) throw parse_error("unknown template: " + cfg.relation_template);
        const FitResult fit = fit_relation(spec, *tmpl, cfg.n_max);
        emit(cfg, dump(json{{"family", to_json(spec)},
                            {"template", cfg.relation_template},
                            {"fit", to_json(fit)}}),
             out);
        return fit.consistent ? 0 : 1;
    }
    throw parse_error("algebra action must be 'verify' or 'fit'");
}

inline int run_classify(const RunConfig& cfg, std::ostream& out) {
    const auto [lambda, nu] = sequences_from_json(load_json_file(cfg.input_path));
    emit(cfg, dump(to_json(classify(lambda, nu))), out);
    return 0;
}

inline int run_gauge(const RunConfig& cfg, std::ostream& out) {
    const FamilySpec spec = load_family(cfg.family);
    const GaugeTransform g{cfg.xi2, cfg.eta1, cfg.eta2};
    try {
        gauge_eigenvalues(spec, g, cfg.n_max);
    } catch (const degenerate_parameter_error& e) {
        emit(cfg, dump(json{{"admissible", false}, {"detail", e.what()}}), out);
        return 1;
    }
    if (cfg.format == OutputFormat::csv) {
        std::ostringstream os;
        os << "n,lambda,nu\n";
        for (long n = 0; n <= cfg.n_max; ++n) {
            const auto [lam, nu] = gauged_lambda_nu(spec, g, n);
            os << n << "," << lam.str() << "," << nu.str() << "\n";
        }
        emit(cfg, os.str(), out);
        return 0;
    }
    json rows = json::array();
    for (long n = 0; n <= cfg.n_max; ++n) {
        const auto [lam, nu] = gauged_lambda_nu(spec, g, n);
        rows.push_back(json{{"n", n}, {"lambda", lam.str()}, {"nu", nu.str()}});
    }
    emit(cfg, dump(json{{"admissible", true}, {"rows", rows}}), out);
    return 0;
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.n_max < 1) throw parse_error("--n-max must be >= 1");
        switch (cfg.command) {
            case Command::table: return detail::run_table(cfg, out);
            case Command::poly: return detail::run_poly(cfg, out);
            case Command::verify: return detail::run_verify(cfg, out, err);
            case Command::realize: return detail::run_realize(cfg, out);
            case Command::algebra: return detail::run_algebra(cfg, out);
            case Command::classify_sequences: return detail::run_classify(cfg, out);
            case Command::gauge: return detail::run_gauge(cfg, out);
        }
        err << "error: unknown command\n";
        return 2;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

/// Parses argv into a RunConfig and runs it. Exit codes: 0 all requested
/// checks pass, 1 a mathematical check failed, 2 usage or parse problem.
inline int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computations with symmetric orthogonal polynomial families"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string out_format = "json";
    std::string xi2 = "0", eta1 = "0", eta2 = "0";

    const auto add_family = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.family,
                        "family spec JSON path, or a preset: hermite, gegenbauer-default, "
                        "qjacobi-default, qlaguerre-default")
            ->required();
    };
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n-max", cfg.n_max, "largest index to verify/emit");
        sub->add_option("--out", out_format, "output format: json or csv");
        sub->add_option("--output", cfg.output_path, "write output to a file instead of stdout");
    };

    auto* table = app.add_subcommand("table", "emit n, lambda_n, nu_n, u_n");
    add_family(table);
    add_common(table);

    auto* poly = app.add_subcommand("poly", "emit the monic eigenpolynomial P_n");
    add_family(poly);
    add_common(poly);
    poly->add_option("--degree", cfg.degree, "polynomial degree")->required();
    poly->add_option("--method", cfg.method, "construction: descent or recurrence");

    auto* verify = app.add_subcommand("verify", "run exact verification suites");
    add_family(verify);
    add_common(verify);
    verify->add_option("--suite", cfg.suite,
                       "eigen, orthogonality, ns, symmetry, realization, algebra, or all");

    auto* realize = app.add_subcommand("realize", "difference/differential realization checks");
    add_family(realize);
    add_common(realize);
    realize->add_flag("--check", cfg.check, "verify the realization against the monomial action");
    std::string apply_path;
    realize->add_option("--apply", apply_path, "apply the realized operator to a polynomial JSON");

    auto* algebra = app.add_subcommand("algebra", "bispectral algebra relations");
    algebra->require_subcommand(1);
    auto* algebra_verify = algebra->add_subcommand("verify", "verify the defining relations");
    add_family(algebra_verify);
    add_common(algebra_verify);
    auto* algebra_fit = algebra->add_subcommand("fit", "fit relation coefficients exactly");
    add_family(algebra_fit);
    add_common(algebra_fit);
    algebra_fit->add_option("--template", cfg.relation_template,
                            "relation shape: qjacobi, gegenbauer, or sl2");

    auto* classify_cmd = app.add_subcommand("classify", "classify raw (lambda, nu) sequences");
    classify_cmd->add_option("--input", cfg.input_path, "JSON with 'lambda' and 'nu' arrays")
        ->required();
    classify_cmd->add_option("--output", cfg.output_path, "write output to a file");

    auto* gauge = app.add_subcommand("gauge", "eigenvalues of L + xi2*L*R + eta1 + eta2*R");
    add_family(gauge);
    add_common(gauge);
    gauge->add_option("--xi2", xi2, "gauge parameter xi2");
    gauge->add_option("--eta1", eta1, "gauge parameter eta1");
    gauge->add_option("--eta2", eta2, "gauge parameter eta2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    if (table->parsed()) cfg.command = Command::table;
    if (poly->parsed()) cfg.command = Command::poly;
    if (verify->parsed()) cfg.command = Command::verify;
    if (realize->parsed()) {
        cfg.command = Command::realize;
        if (!apply_path.empty()) cfg.apply_path = apply_path;
    }
    if (algebra->parsed()) {
        cfg.command = Command::algebra;
        cfg.algebra_action = algebra_verify->parsed() ? "verify" : "fit";
    }
    if (classify_cmd->parsed()) cfg.command = Command::classify_sequences;
    if (gauge->parsed()) cfg.command = Command::gauge;

    if (out_format == "csv")
        cfg.format = OutputFormat::csv;
    else if (out_format == "json")
        cfg.format = OutputFormat::json_format;
    else {
        err << "error: unknown output format: " << out_format << "\n";
        return 2;
    }
    try {
        cfg.xi2 = Rational::from_string(xi2);
        cfg.eta1 = Rational::from_string(eta1);
        cfg.eta2 = Rational::from_string(eta2);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return run(cfg, out, err);
}

}  // namespace bispec::cli
