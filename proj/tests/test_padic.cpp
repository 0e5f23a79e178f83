#include "pgl2reg/padic.hpp"

#include <gtest/gtest.h>

using namespace pgl2reg;

namespace {
// f(p^k u), u an integer (u = 0 allowed meaning x = 0)
Cplx value_at(const PadicSchwartz& f, int k, long long u)
{
    if (f.is_zero()) return 0;
    if (u == 0) return f.at(0);
    if (k < f.D) return 0;
    long long n = f.cells_per_axis();
    long long a = (ipow(f.p, std::min(k - f.D, f.delta - f.D)) % n) * (((u % n) + n) % n) % n;
    return f.at(a);
}

// dim 1, c = 0: sum over cells of vol * f(x) e^{-2 pi i {x xi}}, xi = p^k u, straight from the definition
Cplx fourier_oracle(const PadicSchwartz& f, int k, long long u)
{
    // the character is nontrivial on each cell p^delta Z_p, so every cell integrates to 0
    if (k + f.delta < 0) return 0;
    long long n = f.cells_per_axis();
    Cplx acc = 0;
    for (long long a = 0; a < n; ++a) {
        int m = f.D + k; // x xi = p^m a u
        double frac = 0;
        if (m < 0) {
            long long mod = ipow(f.p, -m);
            frac = double(((a * u) % mod + mod) % mod) / double(mod);
        }
        acc += f.values[a] * std::polar(1.0, -2 * pi * frac);
    }
    return acc * std::pow(double(f.p), -f.delta);
}
} // namespace

TEST(Indices, Examples)
{
    auto I = indices(ball_indicator(3, 1, 0));
    EXPECT_EQ(I.D, 0);
    EXPECT_EQ(I.delta, 0);
    EXPECT_EQ(I.m, 0);
    auto u = make_padic(3, 1, 0, 1, {0, 1, 0});
    auto J = indices(u);
    EXPECT_EQ(J.D, 0);
    EXPECT_EQ(J.delta, 1);
    EXPECT_EQ(J.m, 1);
}

TEST(Canonicalize, CoarsensRedundantGrid)
{
    // constant on cells of Z_2 / 4 Z_2: the indicator of Z_2
    auto f = make_padic(2, 1, 0, 2, {1, 1, 1, 1});
    EXPECT_EQ(f.D, 0);
    EXPECT_EQ(f.delta, 0);
    auto g = make_padic(3, 1, -1, 1, {1, 0, 0, 0, 0, 0, 0, 0, 0});
    EXPECT_EQ(g.D, 1);
    EXPECT_EQ(g.delta, 1);
    EXPECT_THROW(make_padic(3, 1, 1, 0, {1}), std::invalid_argument);
}

TEST(Fourier, BallIndicators)
{
    auto F = fourier(ball_indicator(3, 1, 0));
    EXPECT_EQ(F.D, 0);
    EXPECT_EQ(F.delta, 0);
    EXPECT_NEAR(F.values[0].real(), 1.0, 1e-15);
    auto G = fourier(ball_indicator(3, 1, 2));
    EXPECT_EQ(G.D, -2);
    EXPECT_EQ(G.delta, -2);
    EXPECT_NEAR(G.values[0].real(), 1.0 / 9, 1e-15);
    EXPECT_EQ(2 + G.delta, 0);
}

TEST(Fourier, AgainstDefinition)
{
    std::mt19937_64 rng(5);
    for (int p : {2, 3, 5})
        for (int t = 0; t < 40; ++t) {
            auto f = random_padic(p, 1, rng);
            if (f.is_zero()) continue;
            auto F = fourier(f);
            for (int k = -6; k <= 6; ++k)
                for (long long u : {1LL, 2LL, 7LL, 11LL}) {
                    if (u % p == 0) continue;
                    EXPECT_LT(std::abs(value_at(F, k, u) - fourier_oracle(f, k, u)), 1e-12);
                }
        }
}

TEST(Fourier, DoubleTransformReflects)
{
    std::mt19937_64 rng(6);
    for (int dim : {1, 2})
        for (int c : {-1, 0, 2})
            for (int t = 0; t < 30; ++t) {
                auto f = random_padic(3, dim, rng, c);
                if (f.is_zero()) continue;
                auto h = fourier(fourier(f, c), c);
                ASSERT_EQ(h.D, f.D);
                ASSERT_EQ(h.delta, f.delta);
                long long n = f.cells_per_axis();
                for (long long a = 0; a < n; ++a)
                    for (long long b = 0; b < (dim == 1 ? 1 : n); ++b) EXPECT_LT(std::abs(h.at(a, b) - f.at(-a, -b)), 1e-12);
            }
}

TEST(Fourier, IndexIdentitiesRandom)
{
    std::mt19937_64 rng(7);
    for (int p : {2, 3, 5})
        for (int c : {-1, 0, 1})
            for (int t = 0; t < 60; ++t) {
                auto f = random_padic(p, 2, rng, c);
                if (f.is_zero()) continue;
                auto I = indices(f), J = indices(fourier(f, c));
                EXPECT_EQ(I.D + J.delta, -c);
                EXPECT_EQ(I.delta + J.D, -c);
                EXPECT_LE(I.m, I.delta - I.D);
                for (int ax : {0, 1}) {
                    auto K = indices(fourier_partial(f, {ax}, c));
                    EXPECT_LE(K.delta, std::max(I.delta, -c - I.D));
                    EXPECT_GE(K.D, std::min(I.D, -c - I.delta));
                }
            }
}

TEST(Indices, MIndexInvariantUnderCongruenceSubgroup)
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 40; ++t) {
        auto f = random_padic(3, 2, rng);
        if (f.is_zero()) continue;
        auto I = indices(f);
        for (auto& k : detail::congruence_generators(3, 2, I.m)) {
            auto g = rotate(f, k);
            ASSERT_EQ(g.D, f.D);
            for (std::size_t i = 0; i < f.values.size(); ++i) EXPECT_LT(std::abs(g.values[i] - f.values[i]), 1e-12);
        }
    }
}

TEST(Norms, BallsAndScaling)
{
    auto one = ball_indicator(3, 1, 0);
    EXPECT_NEAR(padic_norm(one, 1), 1.0, 1e-15);
    EXPECT_NEAR(padic_norm(one, INFINITY), 1.0, 1e-15);
    auto b2 = ball_indicator(3, 1, 2);
    EXPECT_NEAR(padic_norm(b2, 1), 1.0 / 9, 1e-15);
    EXPECT_NEAR(padic_norm(b2, 2), 1.0 / 3, 1e-15);
    // sup of |x|^sigma on p^2 Z_p is p^{-2 sigma}
    EXPECT_NEAR(padic_norm(b2, INFINITY, {0.5}), 1.0 / 3, 1e-15);
    EXPECT_THROW(padic_norm(one, 1, {-1}), std::invalid_argument);
}

TEST(DiscreteMellin, Examples)
{
    DiscreteSeq delta{0, {1}};
    EXPECT_NEAR(std::abs(discrete_mellin(delta, 3, Cplx(0.4, 2)) - 1.0), 0, 1e-15);
    for (int n = -3; n <= 3; ++n)
        EXPECT_NEAR(std::abs(discrete_mellin_inverse([](Cplx) { return Cplx(1); }, 3, 0.5, n, 16) - (n == 0 ? 1.0 : 0.0)),
                    0, 1e-14);
    // f = 1_{n >= 0}, truncated where q^{-n Re s} is below rounding
    DiscreteSeq step{0, std::vector<Cplx>(200, 1.0)};
    Cplx s(0.7, 1.3);
    EXPECT_LT(std::abs(discrete_mellin(step, 2, s) - 1.0 / (1.0 - std::pow(2.0, -s))), 1e-13);
}

TEST(DiscreteMellin, RoundTrip)
{
    DiscreteSeq f{-2, {1, 2, Cplx(0, 1), 0.5, -1}};
    for (int q : {2, 3, 5})
        for (int n = -4; n < 6; ++n)
            EXPECT_LT(std::abs(discrete_mellin_inverse([&](Cplx s) { return discrete_mellin(f, q, s); }, q, 0.3, n, 64) -
                               f.at(n)),
                      1e-12);
}

TEST(Whittaker, ClosedFormValues)
{
    for (int q : {2, 3, 5})
        for (Cplx s : {Cplx(0.2, 1.0), Cplx(0), Cplx(0.3)}) {
            auto sp = PadicCharSpec::trivial(q, s);
            EXPECT_EQ(whittaker_na(sp, 0), Cplx(1));
            EXPECT_EQ(whittaker_na(sp, -1), Cplx(0));
            EXPECT_LT(std::abs(whittaker_na(sp, 1) - std::pow(double(q), -0.5) * (sp.alpha + sp.beta)), 1e-14);
        }
}

TEST(Whittaker, IntegralMatchesClosedForm)
{
    for (int q : {2, 3})
        for (Cplx s : {Cplx(0.2, 1.0), Cplx(0, 0.5)}) {
            auto sp = PadicCharSpec::trivial(q, s);
            auto phi = ball_indicator(q, 2, 0);
            EXPECT_LT(std::abs(whittaker_na_integral(phi, sp, 0) - 1.0), 1e-13);
            EXPECT_EQ(whittaker_na_integral(phi, sp, -1), Cplx(0));
            for (int n = 1; n <= 5; ++n)
                EXPECT_LT(std::abs(whittaker_na_integral(phi, sp, n) - whittaker_na(sp, n)), 1e-13);
        }
}

TEST(Whittaker, SmallYBound)
{
    for (int q : {2, 3, 5})
        for (Cplx s : {Cplx(0.2, 1.0), Cplx(0.3), Cplx(0.45)}) {
            auto sp = PadicCharSpec::trivial(q, s);
            for (int n = 1; n <= 60; ++n) EXPECT_LE(std::abs(whittaker_na(sp, n)), whittaker_small_y_bound(q, s, 0.1, n));
        }
}
