#include "invlag/report.hpp"

#include <cstdlib>
#include <functional>
#include <sstream>

namespace invlag
{

using nlohmann::json;

PointSampler::PointSampler(std::uint64_t seed) : rng_(seed) {}

Point PointSampler::sample(const std::vector<VarId> &vars)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    Point p;
    for (const auto &v : vars) {
        int a = num(rng_);
        if (a == 0)
            a = 1;
        p[v] = Rational(a, den(rng_));
        p[v].canonicalize();
    }
    return p;
}

std::optional<Witness> PointSampler::witness(const Expr &e, int attempts)
{
    const auto vars = e.variables();
    for (int k = 0; k < attempts; ++k) {
        Point p = sample(vars);
        try {
            Rational v = eval_num(e, p);
            if (v != 0)
                return Witness{p, v};
        } catch (const PoleError &) {
        }
    }
    return std::nullopt;
}

bool PointSampler::vanishes_numerically(const Expr &e, int count)
{
    const auto vars = e.variables();
    int done = 0;
    for (int k = 0; k < 20 * count && done < count; ++k) {
        Point p = sample(vars);
        try {
            if (eval_num(e, p) != 0)
                return false;
            ++done;
        } catch (const PoleError &) {
        }
    }
    return done == count;
}

std::uint64_t seed_from_env()
{
    const char *s = std::getenv("INVLAG_SEED");
    if (!s || !*s)
        return 20240601;
    return std::strtoull(s, nullptr, 10);
}

std::string truncate(const std::string &s, std::size_t max)
{
    return s.size() <= max ? s : s.substr(0, max) + " ...";
}

json tensor_json(const TensorField &t)
{
    const int n = t.dim();
    std::function<json(std::vector<int> &)> rec = [&](std::vector<int> &idx) -> json {
        if (static_cast<int>(idx.size()) == t.rank()) {
            std::size_t flat = 0;
            for (int i : idx)
                flat = flat * n + i;
            return t.entries()[flat].to_string();
        }
        json arr = json::array();
        for (int i = 0; i < n; ++i) {
            idx.push_back(i);
            arr.push_back(rec(idx));
            idx.pop_back();
        }
        return arr;
    };
    std::vector<int> idx;
    return rec(idx);
}

json analyze_json(const SodeGeometry &geo)
{
    json j;
    j["n"] = geo.dim();
    json f = json::array();
    for (const auto &e : geo.sode.f)
        f.push_back(e.to_string());
    j["f"] = f;
    j["connection"] = tensor_json(geo.gamma);
    j["jacobi"] = tensor_json(geo.phi);
    j["curvature"] = tensor_json(geo.curvature);
    j["theta"] = tensor_json(geo.theta);
    return j;
}

namespace
{

std::string indexed(const std::string &name, const std::vector<int> &idx, int upper)
{
    std::string s = name;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        s += (static_cast<int>(k) < upper ? "^" : "_");
        s += std::to_string(idx[k] + 1);
    }
    return s;
}

void tensor_lines(std::ostringstream &out, const std::string &name, const TensorField &t, bool skip_swapped = false)
{
    bool any = false;
    for (std::size_t f = 0; f < t.entries().size(); ++f) {
        const Expr &e = t.entries()[f];
        if (e.is_zero())
            continue;
        auto idx = t.index_of(f);
        if (skip_swapped && idx[idx.size() - 2] > idx[idx.size() - 1])
            continue;
        out << "  " << indexed(name, idx, t.upper()) << " = " << e.to_string() << "\n";
        any = true;
    }
    if (!any)
        out << "  " << name << " = 0\n";
}

json point_json(const Point &p)
{
    json j = json::object();
    for (const auto &[v, val] : p)
        j[v.to_string()] = val.get_str();
    return j;
}

std::string point_text(const Point &p)
{
    std::string s;
    for (const auto &[v, val] : p) {
        if (!s.empty())
            s += ", ";
        s += v.to_string() + "=" + val.get_str();
    }
    return s;
}

} // namespace

std::string analyze_text(const SodeGeometry &geo)
{
    std::ostringstream out;
    out << "system (n = " << geo.dim() << ")\n";
    for (int i = 0; i < geo.dim(); ++i)
        out << "  d2q" << i + 1 << " = " << geo.sode.f[i].to_string() << "\n";
    out << "connection\n";
    tensor_lines(out, "Gamma", geo.gamma);
    out << "jacobi endomorphism\n";
    tensor_lines(out, "Phi", geo.phi);
    out << "curvature\n";
    tensor_lines(out, "R", geo.curvature, true);
    out << "theta\n";
    tensor_lines(out, "theta", geo.theta, true);
    return out.str();
}

json report_json(const ConditionReport &r, PointSampler &sampler)
{
    json j;
    j["suite"] = r.suite;
    j["pass"] = r.pass;
    json cells = json::array();
    bool numeric_ok = true;
    for (const auto &c : r.cells) {
        json cell{{"label", c.label}, {"pass", c.pass}, {"residual", c.residual.to_string()}};
        if (!c.pass) {
            if (auto w = sampler.witness(c.residual)) {
                cell["witness"] = {{"point", point_json(w->point)}, {"value", w->value.get_str()}};
            } else {
                numeric_ok = false;
            }
        }
        cells.push_back(cell);
    }
    j["cells"] = cells;
    j["numeric_check"] = numeric_ok;
    if (r.has_det) {
        j["det"] = r.det.to_string();
        j["nonsingular"] = r.det_nonzero;
    }
    j["notes"] = r.notes;
    return j;
}

std::string report_text(const ConditionReport &r, PointSampler &sampler)
{
    std::ostringstream out;
    out << "suite " << r.suite << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    std::size_t width = 0;
    for (const auto &c : r.cells)
        width = std::max(width, c.label.size());
    for (const auto &c : r.cells) {
        out << "  " << c.label << std::string(width - c.label.size() + 2, ' ');
        if (c.pass) {
            out << "ok\n";
            continue;
        }
        out << "FAIL  " << truncate(c.residual.to_string());
        if (auto w = sampler.witness(c.residual))
            out << "  [at " << point_text(w->point) << ": " << w->value.get_str() << "]";
        out << "\n";
    }
    if (r.has_det)
        out << "det g = " << truncate(r.det.to_string()) << (r.det_nonzero ? "" : "  (singular)") << "\n";
    for (const auto &n : r.notes)
        out << "note: " << n << "\n";
    return out.str();
}

json solution_json(const SolutionSpace &space, const Representative &rep)
{
    json j;
    j["suite"] = suite_name(space.problem.suite);
    j["unknowns"] = space.unknown_count;
    j["equations"] = space.equation_count;
    j["rank"] = space.rank;
    j["consistent"] = space.consistent;
    if (!space.consistent)
        j["inconsistent_equation"] = space.inconsistent_label;
    j["dimension"] = space.dimension();
    json basis = json::array();
    for (const auto &b : space.basis) {
        json e{{"g", tensor_json(space.g_of(b, false))}};
        if (!space.problem.omega_basis.empty())
            e["omega"] = tensor_json(space.omega_of(b));
        json coeffs = json::array();
        for (const auto &c : b)
            coeffs.push_back(c.get_str());
        e["coefficients"] = coeffs;
        basis.push_back(e);
    }
    j["basis"] = basis;
    json forced = json::array();
    for (auto [i, k] : space.forced_zero_entries())
        forced.push_back("g" + std::to_string(i + 1) + std::to_string(k + 1));
    j["forced_zero"] = forced;
    if (rep.found) {
        json r{{"g", tensor_json(rep.g)}, {"det", rep.det.to_string()}};
        if (!space.problem.omega_basis.empty())
            r["omega"] = tensor_json(rep.omega);
        j["representative"] = r;
    } else {
        j["representative"] = nullptr;
    }
    j["definitive_none"] = rep.definitive_none;
    j["exhausted"] = rep.exhausted;
    j["reason"] = rep.reason;
    return j;
}

std::string solution_text(const SolutionSpace &space, const Representative &rep)
{
    std::ostringstream out;
    out << "suite " << suite_name(space.problem.suite) << ": " << space.unknown_count << " unknowns, "
        << space.equation_count << " equations, rank " << space.rank << "\n";
    if (!space.consistent) {
        out << "inconsistent system (equation " << space.inconsistent_label << ")\n";
        return out.str();
    }
    out << "solution space dimension " << space.dimension() << "\n";
    for (std::size_t k = 0; k < space.basis.size(); ++k) {
        out << "basis " << k + 1 << ":\n";
        TensorField g = space.g_of(space.basis[k], false);
        tensor_lines(out, "g", g, true);
        if (!space.problem.omega_basis.empty())
            tensor_lines(out, "omega", space.omega_of(space.basis[k]), true);
    }
    auto forced = space.forced_zero_entries();
    if (!forced.empty()) {
        out << "forced to zero:";
        for (auto [i, k] : forced)
            out << " g" << i + 1 << k + 1;
        out << "\n";
    }
    if (rep.found) {
        out << "non-singular representative:\n";
        tensor_lines(out, "g", rep.g, true);
        if (!space.problem.omega_basis.empty())
            tensor_lines(out, "omega", rep.omega, true);
        out << "det g = " << rep.det.to_string() << "\n";
    } else {
        out << (rep.definitive_none ? "no non-singular solution: " : "inconclusive: ") << rep.reason << "\n";
    }
    return out.str();
}

json certificate_json(const Certificate &c)
{
    json j{{"kind", certificate_kind_name(c.kind)}, {"L", c.L.to_string()}};
    if (c.kind == CertificateKind::dissipative)
        j["D"] = c.D.to_string();
    else
        j["omega"] = tensor_json(c.omega);
    j["gauge"] = c.gauge;
    return j;
}

std::string certificate_text(const Certificate &c)
{
    std::ostringstream out;
    out << "certificate (" << certificate_kind_name(c.kind) << ")\n";
    out << "  L = " << c.L.to_string() << "\n";
    if (c.kind == CertificateKind::dissipative)
        out << "  D = " << c.D.to_string() << "\n";
    else
        tensor_lines(out, "omega", c.omega, true);
    for (const auto &g : c.gauge)
        out << "  gauge: " << g << "\n";
    return out.str();
}

} // namespace invlag
