#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "invlag/problem.hpp"
#include "invlag/reconstruct.hpp"
#include "invlag/report.hpp"

using namespace invlag;
using nlohmann::json;

namespace
{

enum Exit { ok = 0, failed = 1, usage = 2, none = 3, inconclusive = 4 };

struct Options {
    std::string command;
    std::string file;
    std::string suite;
    std::string format;
    std::string out;
    bool forward = false;
    std::optional<int> bound;
    std::vector<std::string> instantiate;
};

struct Outcome {
    int code = ok;
    json data = json::object();
    std::string text;
};

class UsageError : public Error
{
public:
    using Error::Error;
};

std::map<std::string, Rational> parse_instantiations(const std::vector<std::string> &items)
{
    std::map<std::string, Rational> out;
    for (const auto &item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--instantiate expects name=p/q, got '" + item + "'");
        out[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    }
    return out;
}

std::string pick_suite(const Options &o, const ProblemFile &p)
{
    if (!o.suite.empty())
        return o.suite;
    if (p.suite)
        return *p.suite;
    throw UsageError("no suite given (use --suite or options.suite)");
}

const TensorField &need_g(const ProblemFile &p)
{
    if (!p.g)
        throw UsageError(p.path + ": missing \"g\" section");
    return *p.g;
}

int check_exit(const ConditionReport &r)
{
    return r.pass && (!r.has_det || r.det_nonzero) ? ok : failed;
}

Outcome report_outcome(const ConditionReport &r)
{
    PointSampler sampler(seed_from_env());
    Outcome o;
    o.code = check_exit(r);
    o.data = report_json(r, sampler);
    PointSampler again(seed_from_env());
    o.text = report_text(r, again);
    return o;
}

Outcome run_analyze(const ProblemFile &p)
{
    SodeGeometry geo(p.sode());
    return {ok, analyze_json(geo), analyze_text(geo)};
}

Outcome run_check(const Options &opt, const ProblemFile &p)
{
    const Suite suite = suite_from_name(pick_suite(opt, p));
    if (suite == Suite::implicit)
        return report_outcome(check_implicit(p.implicit()));
    if (p.mode != Mode::explicit_system)
        throw UsageError(p.path + ": suite " + suite_name(suite) + " needs an explicit system");
    SodeGeometry geo(p.sode());
    const TensorField &g = need_g(p);
    switch (suite) {
    case Suite::classical:
        return report_outcome(check_classical(geo, g));
    case Suite::dissipative:
        if (!p.D)
            throw UsageError(p.path + ": suite dissipative needs a \"D\" section");
        return report_outcome(check_dissipative(geo, g, *p.D));
    case Suite::gyroscopic:
        if (!p.omega)
            throw UsageError(p.path + ": suite gyroscopic needs an \"omega\" section");
        return report_outcome(check_gyroscopic(geo, g, *p.omega));
    case Suite::thm3:
        return report_outcome(check_multiplier_dissipative(geo, g));
    case Suite::thm4:
        return report_outcome(check_multiplier_gyroscopic(geo, g));
    case Suite::prop2a:
        return report_outcome(check_prop2a(geo, g));
    case Suite::rayleigh:
        return report_outcome(check_rayleigh(geo, g));
    default:
        throw UsageError("unsupported suite");
    }
}

Outcome run_solve(const Options &opt, const ProblemFile &p)
{
    if (!p.ansatz)
        throw UsageError(p.path + ": missing \"ansatz\" section");
    SodeGeometry geo(p.sode());
    AnsatzProblem problem = p.ansatz->to_problem(p.n);
    if (!opt.suite.empty()) {
        problem.suite = suite_from_name(opt.suite);
        if (!suite_is_linear(problem.suite))
            throw UsageError("suite " + opt.suite + " cannot be used with solve");
    }
    const int bound = opt.bound.value_or(p.ansatz->bound.value_or(2));
    SolutionSpace space = solve(geo, problem);
    Representative rep = find_nonsingular(space, geo, bound);
    Outcome o;
    o.code = rep.found ? ok : rep.definitive_none ? none : inconclusive;
    o.data = solution_json(space, rep);
    o.text = solution_text(space, rep);
    return o;
}

json certificate_problem(const ProblemFile &p, const Certificate &c)
{
    json doc;
    doc["n"] = p.n;
    doc["parameters"] = p.parameters;
    json f = json::array();
    for (const auto &e : p.f)
        f.push_back(e.to_string());
    doc["f"] = f;
    json g = json::array();
    for (int i = 0; i < p.n; ++i) {
        json row = json::array();
        for (int j = 0; j < p.n; ++j)
            row.push_back((*p.g)(i, j).to_string());
        g.push_back(row);
    }
    doc["g"] = g;
    doc["L"] = c.L.to_string();
    if (c.kind == CertificateKind::dissipative)
        doc["D"] = c.D.to_string();
    else
        doc["omega"] = tensor_json(c.omega);
    doc["description"] = "certificate (" + certificate_kind_name(c.kind) + ")";
    return doc;
}

Outcome run_reconstruct(const Options &opt, const ProblemFile &p)
{
    SodeGeometry geo(p.sode());
    const TensorField &g = need_g(p);
    std::string suite = !opt.suite.empty() ? opt.suite : p.suite.value_or("dissipative");
    bool gyro;
    if (suite == "dissipative" || suite == "thm3")
        gyro = false;
    else if (suite == "gyroscopic" || suite == "thm4")
        gyro = true;
    else
        throw UsageError("reconstruct supports suites dissipative/thm3 and gyroscopic/thm4, not " + suite);

    Outcome o;
    auto refuse = [&o](const std::exception &e) {
        o.code = failed;
        o.data = {{"error", e.what()}};
        o.text = std::string("reconstruction failed: ") + e.what() + "\n";
        return o;
    };
    Certificate c;
    try {
        c = gyro ? reconstruct_gyroscopic(geo, g) : reconstruct_dissipative(geo, g);
    } catch (const ReconstructionError &e) {
        return refuse(e);
    } catch (const BasePointError &e) {
        return refuse(e);
    } catch (const NotPolynomialInV &e) {
        return refuse(e);
    }
    ConditionReport r = gyro ? verify_gyroscopic(geo.sode, c.L, c.omega) : verify_dissipative(geo.sode, c.L, c.D);
    Outcome v = report_outcome(r);
    o.code = v.code;
    o.data = {{"certificate", certificate_json(c)}, {"verify", v.data}};
    o.text = certificate_text(c) + v.text;
    if (!opt.out.empty()) {
        std::ofstream out(opt.out);
        if (!out)
            throw UsageError("cannot write " + opt.out);
        out << certificate_problem(p, c).dump(2) << "\n";
    }
    return o;
}

Outcome run_verify(const Options &opt, const ProblemFile &p)
{
    if (!p.L)
        throw UsageError(p.path + ": missing \"L\" section");
    if (!p.omega && !p.D)
        throw UsageError(p.path + ": verify needs a \"D\" or an \"omega\" section");
    Sode s = p.sode();
    ConditionReport r = p.omega ? verify_gyroscopic(s, *p.L, *p.omega) : verify_dissipative(s, *p.L, *p.D);
    if (opt.forward) {
        try {
            Sode back = p.omega ? forward_sode_gyroscopic(*p.L, *p.omega, p.n, p.parameters)
                                : forward_sode(*p.L, *p.D, p.n, p.parameters);
            for (int i = 0; i < p.n; ++i)
                r.add("Forward[" + std::to_string(i + 1) + "]", p.f[i] - back.f[i]);
        } catch (const PoleError &e) {
            r.notes.push_back(std::string("forward: ") + e.what());
            r.pass = false;
        }
    }
    return report_outcome(r);
}

Outcome dispatch(const Options &opt)
{
    const ProblemFile p = load_problem(opt.file, parse_instantiations(opt.instantiate));
    if (opt.command == "analyze")
        return run_analyze(p);
    if (opt.command == "check")
        return run_check(opt, p);
    if (opt.command == "solve")
        return run_solve(opt, p);
    if (opt.command == "reconstruct")
        return run_reconstruct(opt, p);
    return run_verify(opt, p);
}

std::string resolve_format(const Options &opt)
{
    if (!opt.format.empty())
        return opt.format;
    try {
        // The file may carry a default format; a parse failure is reported later.
        auto p = load_problem(opt.file, parse_instantiations(opt.instantiate));
        if (p.format)
            return *p.format;
    } catch (const std::exception &) {
    }
    return "text";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"invlag: inverse problem of the calculus of variations with dissipative and gyroscopic forces"};
    app.require_subcommand(1);
    Options opt;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"analyze", "print connection, Jacobi endomorphism, curvature and theta"},
        {"check", "check a condition suite for the candidate data in the file"},
        {"solve", "solve for multipliers in the file's ansatz family"},
        {"reconstruct", "reconstruct L and D or omega from a multiplier"},
        {"verify", "verify Lagrange equations for L with D or omega"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("file", opt.file, "problem file (JSON)")->required();
        sub->add_option("--suite", opt.suite, "condition suite")
            ->check(CLI::IsMember({"classical", "dissipative", "gyroscopic", "thm3", "thm4", "prop2a", "rayleigh",
                                   "implicit"}));
        sub->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--forward", opt.forward, "also rebuild f from the certificate (verify)");
        sub->add_option("--bound", opt.bound, "search box for non-singular representatives (solve)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--instantiate", opt.instantiate, "substitute a parameter, name=p/q");
        sub->add_option("--out", opt.out, "write the certificate as a problem file (reconstruct)");
        sub->callback([&opt, name = name] { opt.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    const std::string format = resolve_format(opt);
    Outcome result;
    try {
        result = dispatch(opt);
    } catch (const std::exception &e) {
        if (format == "json") {
            json j{{"command", opt.command}, {"file", opt.file}, {"exit_code", usage}, {"error", e.what()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cerr << "invlag: " << e.what() << "\n";
        }
        return usage;
    }

    if (format == "json") {
        json j{{"command", opt.command}, {"file", opt.file}, {"exit_code", result.code}, {"result", result.data}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << result.text;
    }
    return result.code;
}
