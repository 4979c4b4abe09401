#ifndef INVLAG_REPORT_HPP
#define INVLAG_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include <json.hpp>

#include "invlag/reconstruct.hpp"
#include "invlag/solver.hpp"

namespace invlag
{

/// Point where a failing residual is non-zero, found by random search.
struct Witness {
    Point point;
    Rational value;
};

/// Deterministic random rational points (small numerators/denominators)
/// that avoid the poles of `e`.
class PointSampler
{
public:
    explicit PointSampler(std::uint64_t seed);
    Point sample(const std::vector<VarId> &vars);
    std::optional<Witness> witness(const Expr &e, int attempts = 32);
    /// Evaluates e exactly at `count` non-pole points; true if all are zero.
    bool vanishes_numerically(const Expr &e, int count = 5);

private:
    std::mt19937_64 rng_;
};

/// Seed from INVLAG_SEED, or a fixed default.
std::uint64_t seed_from_env();

std::string truncate(const std::string &s, std::size_t max = 120);

nlohmann::json tensor_json(const TensorField &t);

nlohmann::json analyze_json(const SodeGeometry &geo);
std::string analyze_text(const SodeGeometry &geo);

/// Adds per-cell witnesses and a numeric cross-check of passing cells.
nlohmann::json report_json(const ConditionReport &r, PointSampler &sampler);
std::string report_text(const ConditionReport &r, PointSampler &sampler);

nlohmann::json solution_json(const SolutionSpace &space, const Representative &rep);
std::string solution_text(const SolutionSpace &space, const Representative &rep);

nlohmann::json certificate_json(const Certificate &c);
std::string certificate_text(const Certificate &c);

} // namespace invlag

#endif // INVLAG_REPORT_HPP
