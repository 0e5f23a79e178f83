#include "oracles.hpp"
#include "pgl2reg/products.hpp"

#include <gtest/gtest.h>

using namespace pgl2reg;

TEST(UnitaryPair, FormulaReductionWithZeroMJet)
{
    MScalarJet M;
    M.m = {Cplx(-1), 0, 0, 0};
    LambdaData L = LambdaData::at_zero();
    EXPECT_NEAR(rip_unitary_rhs(M, L).real(), 4 * L.d[2] / L.residue, 1e-14);
    EXPECT_NEAR(rip_unitary_rhs_corrected(M, L).real(), 4 * L.d[2] / L.residue, 1e-14);
}

TEST(UnitaryPair, EngineIsTruncationIndependent)
{
    double a = rip_unitary_lhs(2.0).value.real(), b = rip_unitary_lhs(4.0).value.real();
    EXPECT_NEAR(a, b, 1e-8);
}

TEST(UnitaryPair, EngineAgreesWithCorrectedFormula)
{
    double lhs = rip_unitary_lhs(2.0).value.real();
    EXPECT_NEAR(lhs / rip_unitary_rhs_corrected().real(), 1.0, 1e-3);
}

// The closed form as printed evaluates to about -15.37 while the engine gives +15.99;
// this pins the discrepancy so a change in either side is noticed.
TEST(UnitaryPair, PrintedFormulaDisagreesWithEngine)
{
    double lhs = rip_unitary_lhs(2.0).value.real();
    double printed = rip_unitary_rhs().real();
    EXPECT_NEAR(printed, -15.3718452810, 1e-6);
    EXPECT_GT(std::abs(lhs - printed) / std::abs(printed), 1.0);
}

TEST(UnitaryPair, ProfileAndDegeneratePart)
{
    auto phi = derivative_square_at_zero();
    double t = 8;
    EXPECT_LE(std::abs(kernel_a(phi, t) - phi.profile.f(t)), 1e-6 * t);
    EXPECT_EQ(phi.profile.degenerate_sum(), Cplx(0));
    EXPECT_LT(std::abs(rip_unitary_lhs(2.0).degenerate), 1e-15);
}

TEST(Vanishing, ClosedFormChecks)
{
    auto checks = vanishing_checks(0.07);
    ASSERT_EQ(checks.size(), 3u);
    EXPECT_LT(checks[0].abs_err, 1e-4);
    EXPECT_LT(checks[1].abs_err, 1e-4);
    // closed form from boost: -lambda_F(0.07) / (3/pi)
    double lf = oracle::lambda_real(-0.14) / oracle::lambda_real(2.14);
    EXPECT_NEAR(checks[2].value.real(), -lf / (3 / pi), 1e-5);
}

TEST(Deformation, ApproachesCorrectedValue)
{
    double target = rip_unitary_rhs_corrected().real();
    auto seq = deformation_sequence({0.08, 0.04, 0.02});
    ASSERT_EQ(seq.size(), 3u);
    double e0 = std::abs(seq[0].value.real() - target), e1 = std::abs(seq[1].value.real() - target),
           e2 = std::abs(seq[2].value.real() - target);
    EXPECT_LT(e1, e0);
    EXPECT_LT(e2, e1);
}

TEST(MScalar, ReflectionIdentity)
{
    auto M = MScalarJet::at_zero();
    EXPECT_NEAR(M.m[0].real(), -1.0, 1e-9);
    EXPECT_LT(M.reflection_defect(), 1e-8);
}

TEST(Case1, ZeroAndSymmetricInputs)
{
    LambdaData L = LambdaData::at_zero();
    MScalarJet j;
    j.m = {Cplx(1), Cplx(0.3, 0.1), 0, 0};
    auto z = rip_case1_formula(j, j, 0.0, L);
    EXPECT_EQ(z.first, Cplx(0));
    EXPECT_EQ(z.second, Cplx(0));
    auto v = rip_case1_formula(j, j, Cplx(0.7, -0.2), L);
    EXPECT_LT(std::abs(v.first - v.second), 1e-14);
}
