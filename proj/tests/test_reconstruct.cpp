#include <gtest/gtest.h>

#include "invlag/reconstruct.hpp"
#include "invlag/report.hpp"
#include "support/random_systems.hpp"

using namespace invlag;
using invlag::testing::Random;

namespace
{

Sode example1() { return make_sode(2, {"-a*q1 - b*q2 - w*v1", "b*q1 - a*q2 + w*v2"}, {"a", "b", "w"}); }
Sode example2() { return make_sode(3, {"q2*v1*v3", "v3^2", "v1^2 - v2*v3/q2"}); }

TensorField diag(const Sode &s, const std::vector<std::string> &d)
{
    TensorField g = TensorField::matrix02(static_cast<int>(d.size()), Symmetry::symmetric);
    for (std::size_t i = 0; i < d.size(); ++i)
        g(i, i) = parse(d[i], s.ctx);
    return g;
}

} // namespace

TEST(Homotopy, VerticalHomotopyRecoversQuadraticLagrangian)
{
    const ExprContext ctx = ExprContext::explicit_system(2);
    Expr L = parse("q2*v1^2 + v1*v2 + 3*v2^2", ctx);
    Expr back = vertical_homotopy2(hessian(L, 2));
    EXPECT_EQ(hessian(back, 2), hessian(L, 2));
}

TEST(Homotopy, VerticalHomotopyRejectsNonHessians)
{
    const ExprContext ctx = ExprContext::explicit_system(2);
    TensorField M = TensorField::matrix02(2, Symmetry::symmetric);
    M(0, 0) = parse("v2", ctx);
    M(1, 1) = Expr(1);
    EXPECT_THROW(vertical_homotopy2(M), Error);
}

TEST(Homotopy, BaseHomotopyOneForms)
{
    const ExprContext ctx = ExprContext::explicit_system(2);
    // a = d(q1^2 q2 + q2^3)
    std::vector<Expr> a = {parse("2*q1*q2", ctx), parse("q1^2 + 3*q2^2", ctx)};
    Expr phi = base_homotopy1(a, 2);
    EXPECT_EQ(diff(phi, VarId::q(1)), a[0]);
    EXPECT_EQ(diff(phi, VarId::q(2)), a[1]);
    std::vector<Expr> notclosed = {parse("q2", ctx), Expr()};
    EXPECT_THROW(base_homotopy1(notclosed, 2), Error);
    std::vector<Expr> pole = {parse("1/q1", ctx), Expr()};
    EXPECT_THROW(base_homotopy1(pole, 2), BasePointError);
}

TEST(Homotopy, BaseHomotopyTwoForms)
{
    const ExprContext ctx = ExprContext::explicit_system(3);
    TensorField Om = TensorField::matrix02(3, Symmetry::antisymmetric);
    Om(0, 1) = parse("q3", ctx);
    Om(1, 0) = -Om(0, 1);
    Om(1, 2) = parse("q1", ctx);
    Om(2, 1) = -Om(1, 2);
    Om(0, 2) = parse("-q2", ctx);
    Om(2, 0) = -Om(0, 2);
    // Not closed: d(q3 dq1^dq2 + q1 dq2^dq3 - q2 dq1^dq3) = 3 dq1^dq2^dq3.
    EXPECT_THROW(base_homotopy2(Om), Error);
    // d(q1 q3 dq2) is closed.
    Om(0, 2) = Om(2, 0) = Expr();
    Om(1, 2) = parse("-q1", ctx);
    Om(2, 1) = -Om(1, 2);
    std::vector<Expr> b = base_homotopy2(Om);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_EQ(diff(b[j], VarId::q(i + 1)) - diff(b[i], VarId::q(j + 1)), Om(i, j));
}

TEST(Reconstruct, Example1Dissipative)
{
    Sode s = example1();
    SodeGeometry geo(s);
    auto c1 = reconstruct_dissipative(geo, diag(s, {"1", "-1"}));
    EXPECT_TRUE(verify_dissipative(s, c1.L, c1.D).pass);
    EXPECT_EQ(hessian(c1.L, 2), diag(s, {"1", "-1"}));

    TensorField g3 = diag(s, {"1", "1"});
    auto c3 = reconstruct_dissipative(geo, g3);
    EXPECT_EQ(c3.L, parse("1/2*(v1^2 + v2^2)", s.ctx));
    EXPECT_EQ(c3.D, parse("-a*(q1*v1 + q2*v2) + b*(q1*v2 - q2*v1) + 1/2*w*(v2^2 - v1^2)", s.ctx));
}

TEST(Reconstruct, Example1Gyroscopic)
{
    Sode s = example1();
    SodeGeometry geo(s);
    TensorField g2 = TensorField::matrix02(2, Symmetry::symmetric);
    g2(0, 1) = g2(1, 0) = Expr(1);
    auto c = reconstruct_gyroscopic(geo, g2);
    EXPECT_EQ(c.omega(0, 1), Expr::param("w"));
    EXPECT_EQ(c.L, parse("v1*v2 - a*q1*q2 - 1/2*b*(q2^2 - q1^2)", s.ctx));
    EXPECT_TRUE(verify_gyroscopic(s, c.L, c.omega).pass);
    EXPECT_FALSE(verify_gyroscopic(s, c.L, c.omega.scaled(Expr(-1))).pass);
    EXPECT_THROW(reconstruct_gyroscopic(geo, diag(s, {"1", "1"})), ReconstructionError);
}

TEST(Reconstruct, Example2)
{
    Sode s = example2();
    SodeGeometry geo(s);
    auto c = reconstruct_dissipative(geo, diag(s, {"4", "1", "2*q2"}));
    EXPECT_EQ(c.L, parse("1/2*(4*v1^2 + v2^2 + 2*q2*v3^2)", s.ctx));
    EXPECT_EQ(c.D, parse("2*q2*v1^2*v3", s.ctx));
    Sode back = forward_sode(c.L, c.D, 3);
    EXPECT_EQ(back.f, s.f);
    EXPECT_THROW(reconstruct_dissipative(geo, TensorField::identity02(3)), ReconstructionError);
}

TEST(Reconstruct, FreeParticle)
{
    Sode s = make_sode(2, {"0", "0"});
    SodeGeometry geo(s);
    auto c = reconstruct_dissipative(geo, TensorField::identity02(2));
    EXPECT_EQ(c.L, parse("1/2*(v1^2 + v2^2)", s.ctx));
    EXPECT_TRUE(c.D.is_zero());
}

TEST(Reconstruct, ForwardRejectsSingularHessian)
{
    const ExprContext ctx = ExprContext::explicit_system(2);
    EXPECT_THROW(forward_sode(parse("v1*q2 + q1^2", ctx), Expr(), 2), PoleError);
}

class RoundTrip : public ::testing::TestWithParam<int>
{
};

TEST_P(RoundTrip, RandomMechanics)
{
    Random rnd(seed_from_env() + 300 + GetParam());
    auto mech = invlag::testing::random_mechanics(rnd, rnd.coin() ? 2 : 3);
    Sode s = forward_sode(mech.L, mech.D, mech.n);
    SodeGeometry geo(s);
    TensorField g = hessian(mech.L, mech.n);
    ASSERT_TRUE(check_dissipative(geo, g, mech.D).pass);
    ASSERT_TRUE(check_multiplier_dissipative(geo, g).pass);
    auto c = reconstruct_dissipative(geo, g);
    EXPECT_TRUE(verify_dissipative(s, c.L, c.D).pass);
    EXPECT_EQ(forward_sode(c.L, c.D, mech.n).f, s.f);
}

INSTANTIATE_TEST_SUITE_P(Reconstruct, RoundTrip, ::testing::Range(0, 10));
