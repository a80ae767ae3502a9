#pragma once

// Command-line front end: bound, arg-power, replay, optimize, compare-lmn.
//
// Exit status: 0 verified, 1 parse or internal error, 2 input rejected,
// 3 indeterminate, 4 a hypothesis or replay check failed.

#include "twolog/certificate_io.hpp"
#include "twolog/optimizer.hpp"
#include "twolog/paper_suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>

namespace twolog::cli {

enum ExitCode : int { kVerified = 0, kError = 1, kRejected = 2, kIndeterminate = 3, kFailed = 4 };

struct Request {
    std::string command;
    std::string minpoly;
    std::string root;
    std::string b1;
    std::string b2;
    std::string n;
    unsigned precision_bits = 0;
    std::string format = "text";
    int digits = 15;
    bool trusted = false;
    bool paper_suite = false;
    std::vector<std::string> rho;
    std::vector<std::string> mu;
    std::int64_t L_min = 0;
    std::int64_t L_max = 0;
    std::int64_t R1_min = 3;
    std::int64_t R1_max = 4;
    std::size_t max_candidates = 2000;
};

/// --precision, else TWOLOG_PRECISION_BITS, else 128.
inline Precision resolve_precision(unsigned flag)
{
    if (flag != 0) {
        return Precision(flag);
    }
    if (const char* env = std::getenv("TWOLOG_PRECISION_BITS"); env != nullptr && *env != '\0') {
        const long v = std::strtol(env, nullptr, 10);
        if (v < 64) {
            throw std::invalid_argument("TWOLOG_PRECISION_BITS must be an integer >= 64");
        }
        return Precision(static_cast<unsigned>(v));
    }
    return kDefaultPrecision;
}

inline mpz_class parse_positive(const std::string& text, const char* name)
{
    if (text.empty()) {
        throw std::invalid_argument(std::string("--") + name + " is required");
    }
    mpz_class v;
    if (v.set_str(text, 10) != 0) {
        throw std::invalid_argument(std::string("--") + name + " must be an integer");
    }
    return v;
}

inline AlgebraicNumber read_alpha(const Request& r)
{
    if (r.minpoly.empty()) {
        throw std::invalid_argument("--minpoly is required");
    }
    const IntegerPolynomial f = IntegerPolynomial::parse(r.minpoly);
    if (r.root.empty()) {
        if (f.degree() != 1) {
            throw std::invalid_argument("--root is required for degree above 1");
        }
        return AlgebraicNumber::rational(mpq_class(-f.coefficients()[0], f.coefficients()[1]));
    }
    return AlgebraicNumber::parse(r.minpoly, r.root, r.trusted);
}

/// Rejects alpha before anything else is asked of the request.
inline void check_alpha(const AlgebraicNumber& alpha)
{
    if (!alpha.has_unit_modulus()) {
        throw RejectionError("not unit-modulus: |alpha| != 1");
    }
    if (alpha.is_root_of_unity()) {
        throw RejectionError("alpha is a root of unity");
    }
}

inline int certificate_exit(const BoundCertificate& c)
{
    if (c.bound) {
        return kVerified;
    }
    for (const auto& n : c.report.conditions) {
        if (n.result.status == Status::failed) {
            return kFailed;
        }
    }
    if (c.path == "liouville") {
        const Check* chain = c.find_check("liouville_chain");
        return chain && chain->status == Status::failed ? kFailed : kIndeterminate;
    }
    // Engine ran but its bound falls short of the target.
    return c.path == "main" && c.report.all_verified() ? kFailed : kIndeterminate;
}

inline int checks_exit(const std::vector<Check>& checks)
{
    int code = kVerified;
    for (const auto& c : checks) {
        if (c.status == Status::failed) {
            return kFailed;
        }
        if (c.status == Status::indeterminate) {
            code = kIndeterminate;
        }
    }
    return code;
}

inline void emit(std::ostream& out, const Request& r, const Json& json, const std::string& text)
{
    if (r.format == "json") {
        out << json.dump(2) << "\n";
    } else {
        out << text;
    }
}

inline int run_bound(const Request& r, Precision p, std::ostream& out)
{
    const AlgebraicNumber alpha = read_alpha(r);
    check_alpha(alpha);
    const BoundCertificate c =
        unit_circle_bound(alpha, parse_positive(r.b1, "b1"), parse_positive(r.b2, "b2"), p);
    emit(out, r, certificate_to_json(c, r.digits), certificate_to_text(c, r.digits));
    return certificate_exit(c);
}

inline int run_arg_power(const Request& r, Precision p, std::ostream& out)
{
    const AlgebraicNumber alpha = read_alpha(r);
    check_alpha(alpha);
    const BoundCertificate c = arg_power_bound(alpha, parse_positive(r.n, "n"), p);
    emit(out, r, certificate_to_json(c, r.digits), certificate_to_text(c, r.digits));
    return certificate_exit(c);
}

inline int run_replay(const Request& r, Precision p, std::ostream& out)
{
    if (r.paper_suite) {
        const std::vector<SuiteEntry> suite = run_paper_suite(p);
        Json entries = Json::array();
        std::string text;
        int code = kVerified;
        for (const auto& e : suite) {
            entries.push_back(Json{{"D", e.D},
                                   {"target_h", e.target_h},
                                   {"forced", e.forced},
                                   {"certificate", certificate_to_json(e.certificate, r.digits)}});
            text += "== D = " + std::to_string(e.D) + ", target h = " + std::to_string(e.target_h)
                    + (e.forced ? " (main path forced)" : "") + "\n";
            text += certificate_to_text(e.certificate, r.digits);
            const int c = checks_exit(e.certificate.checks);
            code = std::max(code, c);
        }
        emit(out, r, Json{{"version", kSchemaVersion}, {"suite", std::move(entries)}}, text);
        return code;
    }
    const AlgebraicNumber alpha = read_alpha(r);
    check_alpha(alpha);
    const auto [b1, b2] = gcd_reduce(parse_positive(r.b1, "b1"), parse_positive(r.b2, "b2"));
    const UnitCircleInputs in = compute_inputs(alpha, b1, b2, p);
    const BoundCertificate c = main_path(in, p, true);
    emit(out, r, certificate_to_json(c, r.digits), certificate_to_text(c, r.digits));
    return checks_exit(c.checks);
}

inline int run_optimize(const Request& r, Precision p, std::ostream& out, std::ostream& err)
{
    const AlgebraicNumber alpha = read_alpha(r);
    check_alpha(alpha);
    const auto [b1, b2] = gcd_reduce(parse_positive(r.b1, "b1"), parse_positive(r.b2, "b2"));
    const TwoLogInstance inst = TwoLogInstance::unit_circle_shape(alpha, b1, b2);
    SearchConfig cfg = SearchConfig::standard(p);
    if (!r.rho.empty()) {
        cfg.rho_grid.clear();
        for (const auto& s : r.rho) {
            cfg.rho_grid.push_back(parse_decimal(s));
        }
    }
    if (!r.mu.empty()) {
        cfg.mu_grid.clear();
        for (const auto& s : r.mu) {
            cfg.mu_grid.push_back(parse_decimal(s));
        }
    }
    if (r.L_min > 0 || r.L_max > 0) {
        cfg.L_range = IntegerRange{r.L_min, r.L_max};
    }
    cfg.R1_range = {r.R1_min, r.R1_max};
    cfg.max_candidates = r.max_candidates;
    try {
        const BoundCertificate c = optimize(inst, cfg);
        emit(out, r, certificate_to_json(c, r.digits), certificate_to_text(c, r.digits));
        return kVerified;
    } catch (const NoCertifiedCandidate& e) {
        err << e.what() << "\n";
        for (const auto& f : e.best_failures()) {
            err << "  " << detail::describe(f.params) << ": " << f.condition << " " << to_string(f.status);
            if (f.margin) {
                err << " margin " << f.margin->to_string(r.digits);
            }
            err << "\n";
        }
        return kFailed;
    }
}

inline int run_compare(const Request& r, Precision p, std::ostream& out)
{
    const AlgebraicNumber alpha = read_alpha(r);
    check_alpha(alpha);
    const mpz_class b1 = parse_positive(r.b1, "b1");
    const mpz_class b2 = parse_positive(r.b2, "b2");
    const BoundCertificate c = unit_circle_bound(alpha, b1, b2, p);
    const auto [c1, c2] = gcd_reduce(b1, b2);
    const LmnComparison lmn = lmn_comparison(alpha, c1, c2, p);
    const int d = r.digits;
    Json j{{"version", kSchemaVersion},
           {"bound", io::optional_interval(c.bound, d)},
           {"path", c.path},
           {"a", io::optional_interval(c.a, d)},
           {"h", io::optional_interval(c.h, d)},
           {"lmn", Json{{"label", "as interpreted: log|Lambda| >= -8.87 a h^2"},
                        {"a", io::interval(lmn.a, d)},
                        {"h", io::interval(lmn.h, d)},
                        {"value", io::interval(lmn.value, d)}}}};
    std::string text = "bound (" + c.path + "): " + (c.bound ? c.bound->to_string(d) : std::string("none")) + "\n";
    if (c.a && c.h) {
        text += "  a = " + c.a->to_string(d) + ", h = " + c.h->to_string(d) + "\n";
    }
    text += "earlier formula, as interpreted (log|Lambda| >= -8.87 a h^2): " + lmn.value.to_string(d) + "\n";
    text += "  a = " + lmn.a.to_string(d) + ", h = " + lmn.h.to_string(d) + "\n";
    emit(out, r, j, text);
    return certificate_exit(c);
}

/// Parses argv and runs one command; diagnostics go to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Certified lower bounds for b2 log alpha - b1 pi i/2", "twolog"};
    app.require_subcommand(1);
    Request r;
    auto common = [&r](CLI::App* sub, bool instance) {
        if (instance) {
            sub->add_option("--minpoly", r.minpoly, "minimal polynomial, constant term first: \"5,-6,5\"");
            sub->add_option("--root", r.root, "root hint \"re,im\"");
            sub->add_flag("--trusted", r.trusted, "skip the irreducibility check (recorded in the output)");
        }
        sub->add_option("--precision", r.precision_bits, "working precision in bits")->check(CLI::Range(64u, 1u << 20));
        sub->add_option("--format", r.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--digits", r.digits, "significant digits per endpoint")->check(CLI::Range(1, 200));
    };
    CLI::App* bound = app.add_subcommand("bound", "lower bound for log|b2 log alpha - b1 pi i/2|");
    common(bound, true);
    bound->add_option("--b1", r.b1);
    bound->add_option("--b2", r.b2);
    CLI::App* argp = app.add_subcommand("arg-power", "lower bound for log|arg(alpha^n)|");
    common(argp, true);
    argp->add_option("--n", r.n);
    CLI::App* replay = app.add_subcommand("replay", "replay the numeric chain for an instance or the built-in grid");
    common(replay, true);
    replay->add_option("--b1", r.b1);
    replay->add_option("--b2", r.b2);
    replay->add_flag("--paper-suite", r.paper_suite, "D in {1,2,3} times h in {17, 50, 100, 1000, 10000}");
    CLI::App* opt = app.add_subcommand("optimize", "grid search over rho, mu, L, R1");
    common(opt, true);
    opt->add_option("--b1", r.b1);
    opt->add_option("--b2", r.b2);
    opt->add_option("--rho", r.rho, "rho grid (decimals)")->delimiter(',');
    opt->add_option("--mu", r.mu, "mu grid (decimals)")->delimiter(',');
    opt->add_option("--L-min", r.L_min);
    opt->add_option("--L-max", r.L_max);
    opt->add_option("--R1-min", r.R1_min);
    opt->add_option("--R1-max", r.R1_max);
    opt->add_option("--max-candidates", r.max_candidates);
    CLI::App* cmp = app.add_subcommand("compare-lmn", "bound next to the earlier formula");
    common(cmp, true);
    cmp->add_option("--b1", r.b1);
    cmp->add_option("--b2", r.b2);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kVerified : kError;
    }
    r.command = app.get_subcommands().front()->get_name();
    try {
        const Precision p = resolve_precision(r.precision_bits);
        if (r.command == "bound") {
            return run_bound(r, p, out);
        }
        if (r.command == "arg-power") {
            return run_arg_power(r, p, out);
        }
        if (r.command == "replay") {
            return run_replay(r, p, out);
        }
        if (r.command == "optimize") {
            return run_optimize(r, p, out, err);
        }
        return run_compare(r, p, out);
    } catch (const AmbiguousRootError& e) {
        err << e.what() << "\ncandidates:\n";
        for (const auto& c : e.candidates()) {
            err << "  " << c.re.to_string(r.digits) << " + i " << c.im.to_string(r.digits) << "\n";
        }
        return kRejected;
    } catch (const RejectionError& e) {
        err << e.what() << "\n";
        return kRejected;
    } catch (const ReducibleError& e) {
        err << e.what() << "\n";
        return kRejected;
    } catch (const IndeterminateError& e) {
        err << "indeterminate: " << e.what() << "\n";
        return kIndeterminate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

}  // namespace twolog::cli
