#include "oracles.hpp"
#include "pgl2reg/complexfn.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace pgl2reg;

namespace {
// sum_{n<N} n^{-s} + Euler-Maclaurin tail, Re s > 1
Cplx zeta_direct(Cplx s, int N = 200000)
{
    Cplx acc = 0;
    for (int n = N - 1; n >= 1; --n) acc += std::exp(-s * std::log(double(n)));
    double dN = N;
    Cplx Ns = std::exp(-s * std::log(dN));
    return acc + dN * Ns / (s - 1.0) + 0.5 * Ns + s * Ns / dN / 12.0;
}
} // namespace

TEST(Gamma, SpecialValues)
{
    EXPECT_NEAR(pgl2reg::gamma(1.0).real(), 1.0, 1e-14);
    EXPECT_NEAR(pgl2reg::gamma(0.5).real(), std::sqrt(pi), 1e-14);
    EXPECT_NEAR(pgl2reg::gamma(5.0).real(), 24.0, 1e-12);
}

TEST(Gamma, ReflectionFormula)
{
    for (Cplx z : {Cplx(0.3, 2.1), Cplx(-1.7, 0.4), Cplx(2.5, -7.0)}) {
        Cplx lhs = pgl2reg::gamma(z) * pgl2reg::gamma(1.0 - z), rhs = pi / std::sin(pi * z);
        EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-12);
    }
}

TEST(Gamma, RealAxisAgainstBoost)
{
    for (double x : {0.1, 1.7, 3.3, 12.5, -2.5})
        EXPECT_NEAR(pgl2reg::gamma(x).real() / boost::math::tgamma(x), 1.0, 1e-13);
}

TEST(Gamma, PoleThrows) { EXPECT_THROW(pgl2reg::gamma(-2.0), pole_error); }

TEST(Zeta, SpecialValues)
{
    EXPECT_NEAR(zeta(2.0).real(), zeta_direct(2.0).real(), 1e-12);
    EXPECT_NEAR(zeta(2.0).real(), pi * pi / 6, 1e-13);
    EXPECT_NEAR(zeta(0.0).real(), -0.5, 1e-13);
    EXPECT_NEAR(zeta(-1.0).real(), -1.0 / 12, 1e-13);
    EXPECT_THROW(zeta(1.0), pole_error);
}

TEST(Zeta, ComplexArgumentAgainstDirectSum)
{
    for (Cplx s : {Cplx(2, 3), Cplx(1.5, -20), Cplx(3.2, 45)})
        EXPECT_LT(std::abs(zeta(s) - zeta_direct(s)), 1e-10);
}

TEST(Zeta, FirstNontrivialZero) { EXPECT_LT(std::abs(zeta(Cplx(0.5, 14.134725141734693))), 1e-10); }

TEST(Lambda, ValueAtTwo) { EXPECT_NEAR(lambda_complete(2.0).real(), pi / 6, 1e-13); }

TEST(Lambda, AgainstBoostOracle)
{
    for (double s : {-3.3, -0.4, 0.3, 2.5, 7.0})
        EXPECT_NEAR(lambda_complete(s).real() / oracle::lambda_real(s), 1.0, 1e-11);
}

TEST(Lambda, FunctionalEquationRandom)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-4, 5), im(-25, 25);
    for (int i = 0; i < 100; ++i) {
        Cplx s(re(rng), im(rng));
        Cplx a = detail::lambda_raw(s), b = detail::lambda_raw(1.0 - s);
        EXPECT_LT(std::abs(a - b) / std::abs(a), 1e-10) << s;
    }
}

TEST(Lambda, JetResidues)
{
    EXPECT_NEAR(lambda_complete_jet(1.0, 2).residue().real(), 1.0, 1e-9);
    EXPECT_NEAR(lambda_complete_jet(0.0, 2).residue().real(), -1.0, 1e-9);
    EXPECT_NEAR(lambda_jet_split(1.0, 2).residue().real(), 1.0, 1e-12);
    EXPECT_NEAR(lambda_jet_split(0.0, 2).residue().real(), -1.0, 1e-12);
}

TEST(Lambda, JetConstantTermSymmetricLimit)
{
    // the residue cancels in (L(1+h) + L(1-h)) / 2 = c0 + O(h^2)
    double h = 1e-4;
    double avg = 0.5 * (oracle::lambda_real(1 + h) + oracle::lambda_real(1 - h));
    EXPECT_NEAR(lambda_jet_split(1.0, 2)[0].real(), avg, 1e-7);
    // and the closed form (gamma - log 4 pi) / 2
    EXPECT_NEAR(lambda_jet_split(1.0, 2)[0].real(), (euler_gamma - std::log(4 * pi)) / 2, 1e-12);
}

TEST(Lambda, JetEvaluatesNearAnchor)
{
    Jet j = lambda_jet_split(0.04, 8);
    EXPECT_LT(std::abs(j.eval(0.001) - lambda_complete(0.041)) / std::abs(lambda_complete(0.041)), 1e-9);
}

TEST(BesselK, HalfOrderClosedForm)
{
    EXPECT_NEAR(bessel_k(0.5, 1.0).real(), std::sqrt(pi / 2) * std::exp(-1.0), 1e-14);
}

TEST(BesselK, SymmetricInOrder)
{
    Cplx a = bessel_k(Cplx(0, 0.3), 2.0), b = bessel_k(Cplx(0, -0.3), 2.0);
    EXPECT_LT(std::abs(a - b), 1e-15);
    EXPECT_LT(std::abs(a.imag()), 1e-15);
}

TEST(BesselK, OrderZeroAgainstQuadrature)
{
    // K_0(10) = int_0^inf exp(-10 cosh t) dt, trapezoid with step 1e-3
    double acc = 0, h = 1e-3;
    for (int k = 1; k < 6000; ++k) acc += std::exp(-10 * std::cosh(k * h));
    double quad = h * (0.5 * std::exp(-10.0) + acc);
    EXPECT_NEAR(bessel_k(0.0, 10.0).real() / quad, 1.0, 1e-12);
}

TEST(BesselK, RealOrdersAgainstBoost)
{
    for (double nu : {0.0, 3.7, 12.5})
        for (double y : {0.001, 0.3, 10.0, 40.0}) {
            double b = boost::math::cyl_bessel_k(nu, y);
            EXPECT_NEAR(bessel_k(nu, y).real() / b, 1.0, 1e-11) << nu << " " << y;
        }
}

TEST(BesselK, FamilyMatchesSingleEvaluations)
{
    Cplx nu(0.3, 0.2);
    double x1 = 2 * pi * 0.9;
    auto fam = bessel_k_family(nu, x1, 2, 10);
    for (int n = 1; n <= 10; n += 3) {
        auto d = bessel_k_derivs(nu, x1 * n, 2);
        for (int k = 0; k <= 2; ++k) EXPECT_LT(std::abs(fam[n - 1][k] - d[k]), 1e-12 * std::abs(d[0]) + 1e-300);
    }
}
