#include "pgl2reg/lattice.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <gtest/gtest.h>

using namespace pgl2reg;

namespace {
// Dirichlet beta by the alternating series, averaged partial sums
double dirichlet_beta(double s)
{
    double prev = 0, acc = 0;
    for (int k = 0; k < 2000000; ++k) {
        prev = acc;
        acc += (k % 2 ? -1.0 : 1.0) * std::pow(2.0 * k + 1, -s);
    }
    return 0.5 * (acc + prev);
}
} // namespace

TEST(LatticeQ, PureTailRegime)
{
    LatticeSpec sp;
    sp.c = 3;
    auto r = lattice_sum(sp, 10.0);
    EXPECT_NEAR(r.value / (2 * boost::math::zeta(3.0) * 1e-3), 1.0, 1e-10);
    EXPECT_NEAR(lattice_sum(sp, 10.0, true).value - r.value, 1.0, 1e-15);
    // ideal (m): lattice (1/m) Z, same as t / m
    sp.m = 4;
    EXPECT_NEAR(lattice_sum(sp, 40.0).value / r.value, 1.0, 1e-12);
}

TEST(LatticeQ, FlatRegionCounted)
{
    LatticeSpec sp;
    sp.c = 3;
    // t = 0.25: n = 1..4 contribute 1 each
    double ref = 0;
    for (int n = 1; n <= 4; ++n) ref += 1;
    ref += std::pow(0.25, -3) * (boost::math::zeta(3.0) - 1 - 1.0 / 8 - 1.0 / 27 - 1.0 / 64);
    EXPECT_NEAR(lattice_sum(sp, 0.25).value / (2 * ref), 1.0, 1e-10);
}

TEST(LatticeQi, IdelicScalingClosedForm)
{
    LatticeSpec sp;
    sp.field = LatticeField::Qi;
    sp.c = 2.5;
    sp.scaling = ComplexScaling::idelic;
    sp.tail_rel_tol = 1e-11;
    auto r = lattice_sum(sp, 4.0);
    double ref = std::pow(4.0, -2.5) * 4 * boost::math::zeta(2.5) * dirichlet_beta(2.5);
    EXPECT_NEAR(r.value / ref, 1.0, 1e-9);
    EXPECT_LE(r.tail_bound, 1e-11 * r.value);
    // the tail correction must agree with an enumeration at twice the radius
    LatticeSpec big = sp;
    big.R = 2 * r.radius;
    EXPECT_NEAR(lattice_sum(big, 4.0).value / r.value, 1.0, 1e-10);
}

TEST(LatticeQi, ClassicalScalingIsSquared)
{
    LatticeSpec a, b;
    a.field = b.field = LatticeField::Qi;
    a.c = b.c = 2.5;
    b.scaling = ComplexScaling::idelic;
    EXPECT_NEAR(lattice_sum(a, 3.0).value / lattice_sum(b, 9.0).value, 1.0, 1e-9);
}

TEST(Lattice, Slopes)
{
    LatticeSpec q;
    q.c = 3;
    auto rq = verify_lattice_bounds(q, {10, 20, 40, 80, 160}, {1, 2, 5}, {0.01, 0.02, 0.04});
    for (auto& s : rq.part1_slopes) EXPECT_NEAR(s.second, -3, 0.05);
    for (auto& s : rq.part2_slopes) EXPECT_NEAR(s.second, -1, 0.05);
    EXPECT_LT(rq.part2_volume_constant, rq.part2_printed_constant);

    LatticeSpec g;
    g.field = LatticeField::Qi;
    g.c = 2.5;
    g.scaling = ComplexScaling::idelic;
    for (int m : {1, 3}) {
        auto rg = verify_lattice_bounds(g, {10.0 * m * m, 40.0 * m * m, 160.0 * m * m}, {m});
        EXPECT_NEAR(rg.part1_slopes[0].second, -2.5, 0.05);
    }
}

TEST(Lattice, Errors)
{
    LatticeSpec sp;
    EXPECT_THROW(lattice_sum(sp, 0.0), std::domain_error);
    sp.c = 1;
    EXPECT_THROW(lattice_sum(sp, 1.0), std::domain_error);
    LatticeSpec r;
    r.R = 2;
    EXPECT_THROW(lattice_sum(r, 1.0), radius_error);
    r.R = 1;
    EXPECT_THROW(lattice_sum(r, 0.01), radius_error);
}
