#include "invlag/problem.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace invlag
{

using nlohmann::json;

Rational parse_rational(const std::string &text)
{
    static const std::regex re(R"(\s*(-?\d+)(\s*/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw Error("'" + text + "' is not a rational literal");
    Rational r(mpz_class(m[1].str()), m[3].matched ? mpz_class(m[3].str()) : mpz_class(1));
    if (r.get_den() == 0)
        throw Error("'" + text + "' has a zero denominator");
    r.canonicalize();
    return r;
}

ExprContext ProblemFile::context() const
{
    return mode == Mode::explicit_system ? ExprContext::explicit_system(n, parameters)
                                         : ExprContext::implicit_system(n, parameters);
}

Sode ProblemFile::sode() const
{
    if (mode != Mode::explicit_system)
        throw ProblemError(path + ": this command needs an explicit system (mode \"explicit\")");
    Sode s{context(), f};
    s.validate();
    return s;
}

ImplicitSystem ProblemFile::implicit() const
{
    if (mode != Mode::implicit_system)
        throw ProblemError(path + ": the implicit suite needs mode \"implicit\"");
    ImplicitSystem sys{context(), f};
    sys.validate();
    return sys;
}

AnsatzProblem AnsatzSpec::to_problem(int n) const
{
    AnsatzProblem p = diagonal ? AnsatzProblem::diagonal(suite, n, basis) : AnsatzProblem::full(suite, n, basis);
    for (const auto &[ij, b] : entries)
        p.g_basis[ij] = b;
    if (!omega_basis.empty())
        p.add_omega(omega_basis);
    return p;
}

namespace
{

class Reader
{
public:
    Reader(const std::string &text, std::string path, const std::map<std::string, Rational> &inst)
        : text_(text), path_(std::move(path)), cli_inst_(inst)
    {
    }

    ProblemFile read()
    {
        json doc;
        try {
            doc = json::parse(text_);
        } catch (const json::parse_error &e) {
            fail(line_at(e.byte), std::string("invalid JSON: ") + e.what());
        }
        if (!doc.is_object())
            fail(1, "top level must be a JSON object");
        static const std::vector<std::string> known = {"n", "parameters", "mode", "f", "g", "D", "L",
                                                       "omega", "ansatz", "options", "description"};
        for (const auto &[k, v] : doc.items())
            if (std::find(known.begin(), known.end(), k) == known.end())
                fail(line_of("\"" + k + "\""), "unknown field \"" + k + "\"");

        ProblemFile p;
        p.path = path_;
        if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int>() < 1 || doc["n"].get<int>() > 9)
            fail(line_of("\"n\""), "\"n\" must be an integer between 1 and 9");
        p.n = doc["n"].get<int>();

        std::vector<std::string> declared;
        if (doc.contains("parameters")) {
            if (!doc["parameters"].is_array())
                fail(line_of("\"parameters\""), "\"parameters\" must be an array of names");
            static const std::regex name_re(R"([A-Za-z][A-Za-z0-9_]*)");
            static const std::regex reserved_re(R"(t|[qv][1-9][0-9]*|d[1-9]q[1-9][0-9]*)");
            for (const auto &v : doc["parameters"]) {
                if (!v.is_string() || !std::regex_match(v.get<std::string>(), name_re))
                    fail(line_of("\"parameters\""), "invalid parameter name " + v.dump());
                std::string s = v.get<std::string>();
                if (std::regex_match(s, reserved_re))
                    fail(line_of("\"" + s + "\""), "parameter name '" + s + "' collides with a coordinate name");
                if (std::find(declared.begin(), declared.end(), s) != declared.end())
                    fail(line_of("\"" + s + "\""), "parameter '" + s + "' declared twice");
                declared.push_back(s);
            }
        }

        if (doc.contains("mode")) {
            std::string m = doc["mode"].is_string() ? doc["mode"].get<std::string>() : "";
            if (m == "explicit")
                p.mode = Mode::explicit_system;
            else if (m == "implicit")
                p.mode = Mode::implicit_system;
            else
                fail(line_of("\"mode\""), "\"mode\" must be \"explicit\" or \"implicit\"");
        }

        // Options first: instantiation changes the parsing context.
        std::map<std::string, Rational> inst;
        if (doc.contains("options")) {
            const json &o = doc["options"];
            if (!o.is_object())
                fail(line_of("\"options\""), "\"options\" must be an object");
            for (const auto &[k, v] : o.items()) {
                if (k == "instantiate") {
                    if (!v.is_object())
                        fail(line_of("\"instantiate\""), "\"instantiate\" must map names to rationals");
                    for (const auto &[name, val] : v.items()) {
                        std::string s = val.is_string() ? val.get<std::string>() : val.dump();
                        try {
                            inst[name] = parse_rational(s);
                        } catch (const Error &e) {
                            fail(line_of("\"" + name + "\""), e.what());
                        }
                    }
                } else if (k == "format") {
                    if (!v.is_string() || (v != "text" && v != "json"))
                        fail(line_of("\"format\""), "\"format\" must be \"text\" or \"json\"");
                    p.format = v.get<std::string>();
                } else if (k == "suite") {
                    if (!v.is_string())
                        fail(line_of("\"suite\""), "\"suite\" must be a string");
                    p.suite = v.get<std::string>();
                } else {
                    fail(line_of("\"" + k + "\""), "unknown option \"" + k + "\"");
                }
            }
        }
        for (const auto &[k, v] : cli_inst_)
            inst[k] = v;
        for (const auto &[k, v] : inst)
            if (std::find(declared.begin(), declared.end(), k) == declared.end())
                fail(line_of("\"" + k + "\""), "cannot instantiate undeclared parameter '" + k + "'");
        p.instantiate = inst;
        for (const auto &s : declared)
            if (!inst.count(s))
                p.parameters.push_back(s);

        full_ctx_ = p.mode == Mode::explicit_system ? ExprContext::explicit_system(p.n, declared)
                                                    : ExprContext::implicit_system(p.n, declared);
        for (const auto &[k, v] : inst)
            bindings_[VarId::param(k)] = Expr(v);

        if (!doc.contains("f") || !doc["f"].is_array() || static_cast<int>(doc["f"].size()) != p.n)
            fail(line_of("\"f\""), "\"f\" must be an array of " + std::to_string(p.n) + " expressions");
        for (std::size_t i = 0; i < doc["f"].size(); ++i)
            p.f.push_back(expr(doc["f"][i], "f[" + std::to_string(i + 1) + "]"));

        if (doc.contains("g"))
            p.g = matrix(doc["g"], "g", p.n, false);
        if (doc.contains("omega")) {
            if (p.mode != Mode::explicit_system)
                fail(line_of("\"omega\""), "\"omega\" requires an explicit system");
            p.omega = matrix(doc["omega"], "omega", p.n, true);
        }
        if (doc.contains("D"))
            p.D = expr(doc["D"], "D");
        if (doc.contains("L"))
            p.L = expr(doc["L"], "L");
        if (doc.contains("ansatz"))
            p.ansatz = ansatz(doc["ansatz"], p.n);
        return p;
    }

private:
    const std::string &text_;
    std::string path_;
    const std::map<std::string, Rational> &cli_inst_;
    ExprContext full_ctx_;
    Bindings bindings_;

    [[noreturn]] void fail(std::size_t line, const std::string &msg) const
    {
        throw ProblemError(path_ + ":" + std::to_string(line) + ": " + msg);
    }

    std::size_t line_at(std::size_t byte) const
    {
        std::size_t line = 1;
        for (std::size_t i = 0; i < byte && i < text_.size(); ++i)
            if (text_[i] == '\n')
                ++line;
        return line;
    }

    std::size_t line_of(const std::string &needle) const
    {
        auto at = text_.find(needle);
        return at == std::string::npos ? 1 : line_at(at);
    }

    Expr expr(const json &v, const std::string &where)
    {
        std::string s;
        if (v.is_string())
            s = v.get<std::string>();
        else if (v.is_number_integer())
            s = v.dump();
        else
            fail(line_of(v.dump()), where + " must be an expression string");
        try {
            Expr e = parse(s, full_ctx_);
            return bindings_.empty() ? e : subst(e, bindings_);
        } catch (const ParseError &e) {
            fail(line_of(v.dump()), where + ": " + e.what());
        } catch (const PoleError &e) {
            fail(line_of(v.dump()), where + ": " + e.what());
        }
    }

    std::vector<Expr> expr_list(const json &v, const std::string &where)
    {
        if (!v.is_array())
            fail(line_of(where), where + " must be an array of expressions");
        std::vector<Expr> out;
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(expr(v[i], where + "[" + std::to_string(i + 1) + "]"));
        return out;
    }

    TensorField matrix(const json &v, const std::string &name, int n, bool antisymmetric)
    {
        const std::size_t line = line_of("\"" + name + "\"");
        if (!v.is_array() || static_cast<int>(v.size()) != n)
            fail(line, "\"" + name + "\" must be an " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
        TensorField m = TensorField::matrix02(n, antisymmetric ? Symmetry::antisymmetric : Symmetry::symmetric);
        for (int i = 0; i < n; ++i) {
            if (!v[i].is_array() || static_cast<int>(v[i].size()) != n)
                fail(line, "row " + std::to_string(i + 1) + " of \"" + name + "\" must have " + std::to_string(n) +
                               " entries");
            for (int j = 0; j < n; ++j)
                m(i, j) = expr(v[i][j], cell_label(name, {i, j}));
        }
        if (!m.symmetry_holds())
            fail(line, "\"" + name + "\" is not " + (antisymmetric ? "antisymmetric" : "symmetric") + " as written");
        return m;
    }

    AnsatzSpec ansatz(const json &a, int n)
    {
        const std::size_t line = line_of("\"ansatz\"");
        if (!a.is_object())
            fail(line, "\"ansatz\" must be an object");
        AnsatzSpec spec;
        for (const auto &[k, v] : a.items()) {
            if (k == "suite") {
                try {
                    spec.suite = suite_from_name(v.is_string() ? v.get<std::string>() : v.dump());
                } catch (const Error &e) {
                    fail(line_of("\"suite\""), e.what());
                }
                if (!suite_is_linear(spec.suite))
                    fail(line_of("\"suite\""), "ansatz suite must be one of classical, gyroscopic, thm3, thm4, "
                                               "prop2a, rayleigh");
            } else if (k == "shape") {
                if (v != "full" && v != "diagonal")
                    fail(line_of("\"shape\""), "\"shape\" must be \"full\" or \"diagonal\"");
                spec.diagonal = v == "diagonal";
            } else if (k == "basis") {
                spec.basis = expr_list(v, "ansatz.basis");
            } else if (k == "polynomial") {
                if (!v.is_object() || !v.contains("degree") || !v["degree"].is_number_integer())
                    fail(line_of("\"polynomial\""), "\"polynomial\" needs an integer \"degree\"");
                std::vector<int> pos;
                if (v.contains("positions"))
                    for (const auto &x : v["positions"]) {
                        if (!x.is_number_integer() || x.get<int>() < 1 || x.get<int>() > n)
                            fail(line_of("\"positions\""), "positions must be indices between 1 and n");
                        pos.push_back(x.get<int>());
                    }
                for (auto &e : polynomial_in_q_basis(n, v["degree"].get<int>(), pos))
                    spec.basis.push_back(e);
            } else if (k == "entries") {
                if (!v.is_object())
                    fail(line_of("\"entries\""), "\"entries\" must map \"i,j\" to basis lists");
                static const std::regex key_re(R"(\s*([1-9])\s*,\s*([1-9])\s*)");
                for (const auto &[ij, list] : v.items()) {
                    std::smatch m;
                    if (!std::regex_match(ij, m, key_re))
                        fail(line_of("\"" + ij + "\""), "entry key \"" + ij + "\" must look like \"i,j\"");
                    int i = std::stoi(m[1]) - 1, j = std::stoi(m[2]) - 1;
                    if (i >= n || j >= n)
                        fail(line_of("\"" + ij + "\""), "entry \"" + ij + "\" is out of range");
                    spec.entries[{std::min(i, j), std::max(i, j)}] = expr_list(list, "ansatz.entries." + ij);
                }
            } else if (k == "omega_basis") {
                spec.omega_basis = expr_list(v, "ansatz.omega_basis");
            } else if (k == "bound") {
                if (!v.is_number_integer() || v.get<int>() < 0)
                    fail(line_of("\"bound\""), "\"bound\" must be a non-negative integer");
                spec.bound = v.get<int>();
            } else {
                fail(line_of("\"" + k + "\""), "unknown ansatz field \"" + k + "\"");
            }
        }
        if (!spec.omega_basis.empty() && spec.suite != Suite::gyroscopic)
            fail(line_of("\"omega_basis\""), "\"omega_basis\" requires the gyroscopic suite");
        return spec;
    }
};

} // namespace

ProblemFile parse_problem(const std::string &text, const std::string &path,
                          const std::map<std::string, Rational> &instantiate)
{
    return Reader(text, path, instantiate).read();
}

ProblemFile load_problem(const std::string &path, const std::map<std::string, Rational> &instantiate)
{
    std::ifstream in(path);
    if (!in)
        throw ProblemError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str(), path, instantiate);
}

} // namespace invlag
