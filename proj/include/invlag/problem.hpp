#ifndef INVLAG_PROBLEM_HPP
#define INVLAG_PROBLEM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invlag/conditions.hpp"
#include "invlag/solver.hpp"

namespace invlag
{

/// Malformed problem file; the message carries file and line context.
class ProblemError : public Error
{
public:
    using Error::Error;
};

enum class Mode { explicit_system, implicit_system };

struct AnsatzSpec {
    Suite suite = Suite::thm3;
    bool diagonal = false;
    std::vector<Expr> basis;
    /// Per-entry overrides keyed by 0-based (i, j), i <= j.
    std::map<std::pair<int, int>, std::vector<Expr>> entries;
    std::vector<Expr> omega_basis;
    std::optional<int> bound;

    AnsatzProblem to_problem(int n) const;
};

struct ProblemFile {
    std::string path;
    int n = 0;
    std::vector<std::string> parameters;
    Mode mode = Mode::explicit_system;
    std::vector<Expr> f;
    std::optional<TensorField> g;
    std::optional<Expr> D;
    std::optional<Expr> L;
    std::optional<TensorField> omega;
    std::optional<AnsatzSpec> ansatz;
    std::map<std::string, Rational> instantiate;
    std::optional<std::string> format;
    std::optional<std::string> suite;

    ExprContext context() const;
    Sode sode() const;
    ImplicitSystem implicit() const;
};

/// Parses a problem document. `instantiate` values (from the command line)
/// override the file's options and are substituted into every expression.
ProblemFile parse_problem(const std::string &text, const std::string &path,
                          const std::map<std::string, Rational> &instantiate = {});
ProblemFile load_problem(const std::string &path, const std::map<std::string, Rational> &instantiate = {});

/// Parses "p" or "p/q".
Rational parse_rational(const std::string &text);

} // namespace invlag

#endif // INVLAG_PROBLEM_HPP
