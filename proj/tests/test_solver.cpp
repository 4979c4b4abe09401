#include <algorithm>

#include <gtest/gtest.h>

#include "invlag/solver.hpp"

using namespace invlag;

namespace
{

Sode example1() { return make_sode(2, {"-a*q1 - b*q2 - w*v1", "b*q1 - a*q2 + w*v2"}, {"a", "b", "w"}); }
Sode example2() { return make_sode(3, {"q2*v1*v3", "v3^2", "v1^2 - v2*v3/q2"}); }
Sode example3()
{
    return make_sode(4, {"b*v1*v4", "v2*v4", "(1 - b)*v1*v2 + b*q2*v1*v4 - b*q1*v2*v4 + (b + 1)*v3*v4", "0"}, {"b"});
}

Vector V(std::initializer_list<long> xs)
{
    Vector out;
    for (long x : xs)
        out.push_back(Rational(x));
    return out;
}

} // namespace

TEST(LinearAlgebra, RankAndNullspace)
{
    LinearSystem sys;
    sys.cols = 3;
    sys.add_row(V({1, 2, 3}), 0, "r1");
    sys.add_row(V({2, 4, 6}), 0, "r2");
    sys.add_row(V({0, 1, 1}), 0, "r3");
    auto sol = solve_linear(sys);
    EXPECT_TRUE(sol.consistent);
    EXPECT_EQ(sol.rank, 2u);
    ASSERT_EQ(sol.nullspace.size(), 1u);
    EXPECT_EQ(sol.nullspace[0], V({-1, -1, 1}));
}

TEST(LinearAlgebra, InconsistentSystemNamesRow)
{
    LinearSystem sys;
    sys.cols = 2;
    sys.add_row(V({1, 1}), 1, "first");
    sys.add_row(V({2, 2}), 3, "second");
    auto sol = solve_linear(sys);
    EXPECT_FALSE(sol.consistent);
    EXPECT_EQ(sol.inconsistent_label, "second");
}

TEST(LinearAlgebra, PrimitiveIntegerScaling)
{
    Vector v = {Rational(1, 2), Rational(-3, 4), Rational(0)};
    EXPECT_EQ(primitive_integer(v), V({2, -3, 0}));
}

TEST(Bases, PolynomialBasis)
{
    EXPECT_EQ(constant_basis().size(), 1u);
    EXPECT_EQ(polynomial_in_q_basis(3, 2).size(), 10u);
    EXPECT_EQ(polynomial_in_q_basis(4, 1, {1, 2}).size(), 3u);
}

TEST(Solver, Example1ConstantMultipliers)
{
    SodeGeometry geo(example1());
    auto thm3 = solve(geo, AnsatzProblem::full(Suite::thm3, 2, constant_basis()));
    EXPECT_EQ(thm3.dimension(), 3u);
    auto thm4 = solve(geo, AnsatzProblem::full(Suite::thm4, 2, constant_basis()));
    ASSERT_EQ(thm4.dimension(), 1u);
    TensorField g = thm4.g_of(thm4.basis[0]);
    EXPECT_TRUE(g(0, 0).is_zero());
    EXPECT_TRUE(g(1, 1).is_zero());
    EXPECT_FALSE(g(0, 1).is_zero());
    auto rep = find_nonsingular(thm4, geo, 2);
    EXPECT_TRUE(rep.found);
}

TEST(Solver, Example2DiagonalAnsatz)
{
    SodeGeometry geo(example2());
    auto space = solve(geo, AnsatzProblem::diagonal(Suite::thm3, 3, polynomial_in_q_basis(3, 2)));
    ASSERT_EQ(space.dimension(), 1u);
    TensorField g = space.g_of(space.basis[0]);
    const Expr scale = g(1, 1);
    ASSERT_TRUE(scale.is_constant());
    EXPECT_EQ(g(0, 0), Expr(4) * scale);
    EXPECT_EQ(g(2, 2), Expr(2) * Expr::q(2) * scale);
    auto rep = find_nonsingular(space, geo, 2);
    ASSERT_TRUE(rep.found);
    EXPECT_FALSE(rep.det.is_zero());
}

TEST(Solver, Example3HasNoNonSingularInvariantMultiplier)
{
    SodeGeometry geo(example3());
    const ExprContext &ctx = geo.sode.ctx;
    std::vector<Expr> basis;
    for (const char *m : {"1", "q1", "q2", "v1", "v2", "v3", "v4"})
        basis.push_back(parse(m, ctx));
    auto space = solve(geo, AnsatzProblem::full(Suite::thm3, 4, basis));
    auto forced = space.forced_zero_entries();
    for (auto e : {std::pair{0, 2}, std::pair{1, 2}, std::pair{2, 2}, std::pair{2, 3}})
        EXPECT_NE(std::find(forced.begin(), forced.end(), e), forced.end());
    auto rep = find_nonsingular(space, geo, 2);
    EXPECT_FALSE(rep.found);
    EXPECT_TRUE(rep.definitive_none);
}

TEST(Solver, EmptyAnsatzIsDefinitive)
{
    SodeGeometry geo(make_sode(2, {"0", "0"}));
    auto space = solve(geo, AnsatzProblem::full(Suite::thm3, 2, {}));
    EXPECT_EQ(space.unknown_count, 0u);
    auto rep = find_nonsingular(space, geo, 2);
    EXPECT_TRUE(rep.definitive_none);
}

TEST(Solver, GyroscopicWithOmegaUnknowns)
{
    SodeGeometry geo(example1());
    auto p = AnsatzProblem::full(Suite::gyroscopic, 2, constant_basis());
    p.add_omega(constant_basis());
    auto space = solve(geo, p);
    EXPECT_EQ(space.unknown_count, 4u);
    EXPECT_GE(space.dimension(), 1u);
    for (const auto &b : space.basis)
        EXPECT_TRUE(check_gyroscopic(geo, space.g_of(b), space.omega_of(b)).pass);
}

TEST(Solver, EverySolutionSatisfiesTheSuite)
{
    SodeGeometry geo(example2());
    auto space = solve(geo, AnsatzProblem::full(Suite::thm4, 3, polynomial_in_q_basis(3, 1)));
    for (const auto &b : space.basis)
        EXPECT_TRUE(check_multiplier_gyroscopic(geo, space.g_of(b)).pass);
    EXPECT_FALSE(find_nonsingular(space, geo, 2).found);
}
