#pragma once

#include "complexfn.hpp"
#include "scalars.hpp"

#include <functional>
#include <memory>
#include <utility>

namespace pgl2reg {

struct Point {
    double x = 0, y = 1;
};

struct Mat2 {
    long long a = 1, b = 0, c = 0, d = 1;
    friend Mat2 operator*(const Mat2& m, const Mat2& n)
    {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
                m.c * n.b + m.d * n.d};
    }
};

inline Point act(const Mat2& g, Point z)
{
    Cplx w(z.x, z.y);
    Cplx r = (double(g.a) * w + double(g.b)) / (double(g.c) * w + double(g.d));
    return {r.real(), r.imag()};
}

// Reduce to |x| <= 1/2 (x = 1/2 sent to -1/2), |z| >= 1; returns g with g z = z'.
inline std::pair<Point, Mat2> reduce(Point z)
{
    if (!(z.y > 0)) throw std::domain_error("reduce: point not in the upper half-plane");
    Mat2 g;
    for (int it = 0; it < 10000; ++it) {
        double n = std::floor(z.x + 0.5);
        if (n != 0) {
            z.x -= n;
            g = Mat2{1, -(long long)n, 0, 1} * g;
        }
        double r2 = z.x * z.x + z.y * z.y;
        if (r2 >= 1 - 1e-15) break;
        z = {-z.x / r2, z.y / r2};
        g = Mat2{0, -1, 1, 0} * g;
    }
    return {z, g};
}

enum class Variant { plain, star, reg };

struct EisSpec {
    Cplx s0 = 0;
    int deriv = 0;
    Variant variant = Variant::plain;
    int fourier_terms = 0; // 0: adaptive ceil(10/y) + 20
};

struct EvalResult {
    Cplx value;
    double error_bound;
};

inline int default_fourier_terms(double y) { return int(std::ceil(10.0 / y)) + 20; }

// Everything about E(s) near one anchor s0: Lambda jets, m(s), divisor-sum jets.
// Evaluations return jets in s of order <= kmax.
class EisensteinField {
public:
    EisensteinField(Cplx s0, int kmax, int max_terms = 96)
        : s0_(s0), kmax_(kmax), max_terms_(max_terms)
    {
        L1_ = lambda_affine_jet(1.0, 2.0, s0, kmax + 2);
        L0_ = lambda_affine_jet(0.0, 2.0, s0, kmax + 2);
        invL1_ = L1_.inverse();
        m_ = (L0_ * invL1_).truncated(kmax + 1);
        cn_.assign(max_terms + 1, std::vector<Cplx>(kmax + 1, Cplx(0)));
        for (int n = 1; n <= max_terms; ++n)
            for (int d = 1; d <= n; ++d) {
                if (n % d) continue;
                double L = std::log(double(n) / (double(d) * d));
                Cplx e = std::exp(s0 * L);
                double Lk = 1, fact = 1;
                for (int k = 0; k <= kmax; ++k) {
                    if (k > 0) {
                        Lk *= L;
                        fact *= k;
                    }
                    cn_[n][k] += e * Lk / fact;
                }
            }
    }

    Cplx s0() const { return s0_; }
    int kmax() const { return kmax_; }
    const Jet& m() const { return m_; }
    const Jet& lambda_1p2s() const { return L1_; }
    const Jet& lambda_2s() const { return L0_; }

    // 4 sqrt(y) sum_n c_n(s) K_s(2 pi n y) cos(2 pi n x), at an already reduced point
    Jet star_nonconstant_reduced(Point z, int M = 0) const
    {
        if (M <= 0) M = default_fourier_terms(z.y);
        M = std::min(M, max_terms_);
        auto K = bessel_k_family(s0_, 2 * pi * z.y, kmax_, M);
        std::vector<double> inv_fact(kmax_ + 1, 1.0);
        for (int k = 1; k <= kmax_; ++k) inv_fact[k] = inv_fact[k - 1] / k;
        std::vector<Cplx> acc(kmax_ + 1, Cplx(0));
        double c1 = std::cos(2 * pi * z.x), s1 = std::sin(2 * pi * z.x);
        double cn = 1, sn = 0;
        for (int n = 1; n <= M; ++n) {
            double t = cn * c1 - sn * s1;
            sn = sn * c1 + cn * s1;
            cn = t;
            for (int i = 0; i <= kmax_; ++i) {
                Cplx a = cn_[n][i] * cn;
                for (int j = 0; i + j <= kmax_; ++j) acc[i + j] += a * K[n - 1][j] * inv_fact[j];
            }
        }
        double pre = 4 * std::sqrt(z.y);
        for (auto& v : acc) v *= pre;
        return Jet(s0_, 0, std::move(acc));
    }

    Jet star_nonconstant(Point z, int M = 0) const { return star_nonconstant_reduced(reduce(z).first, M); }

    Jet star_constant(double y) const
    {
        Jet up = Jet::power(s0_, y, 0.5 + s0_, kmax_ + 2);
        Jet dn = Jet::power(s0_, y, 0.5 - s0_, kmax_ + 2).rescaled(s0_, -1.0);
        return (L1_ * up + L0_ * dn).truncated(kmax_);
    }

    Jet plain_constant(double y) const
    {
        Jet up = Jet::power(s0_, y, 0.5 + s0_, kmax_ + 1);
        Jet dn = Jet::power(s0_, y, 0.5 - s0_, kmax_ + 1).rescaled(s0_, -1.0);
        return (up + m_ * dn).truncated(kmax_);
    }

    // E - m(s): y^{1/2+s} + m(s)(y^{1/2-s} - 1) + NC / Lambda(1+2s)
    Jet reg_constant(double y) const
    {
        Jet up = Jet::power(s0_, y, 0.5 + s0_, kmax_ + 1);
        Jet dn = Jet::power(s0_, y, 0.5 - s0_, kmax_ + 1).rescaled(s0_, -1.0);
        return (up + m_ * (dn - 1.0)).truncated(kmax_);
    }

    Jet nonconstant(Variant v, Point z, int M = 0) const
    {
        Jet nc = star_nonconstant(z, M);
        if (v == Variant::star) return nc;
        return (nc * invL1_).truncated(kmax_);
    }

    Jet constant_term(Variant v, double y) const
    {
        switch (v) {
        case Variant::star: return star_constant(y);
        case Variant::plain: return plain_constant(y);
        default: return reg_constant(y);
        }
    }

    Jet jet(Variant v, Point z, int M = 0) const
    {
        Point zr = reduce(z).first;
        Jet nc = star_nonconstant_reduced(zr, M);
        if (v == Variant::star) return star_constant(zr.y) + nc;
        nc = (nc * invL1_).truncated(kmax_);
        return constant_term(v, zr.y) + nc;
    }

    // rough bound for the omitted Fourier modes beyond M at height y
    double tail_bound(double y, int M) const
    {
        double sig = std::abs(s0_.real());
        double x = 2 * pi * (M + 1) * y;
        double kb = std::sqrt(pi / (2 * x)) * std::exp(-x) * std::exp(sig * sig / x);
        double dn = 2 * std::sqrt(double(M + 1)) * std::pow(double(M + 1), sig);
        return 4 * std::sqrt(y) * dn * kb / (1 - std::exp(-2 * pi * y));
    }

private:
    Cplx s0_;
    int kmax_;
    int max_terms_;
    Jet L1_, L0_, invL1_, m_;
    std::vector<std::vector<Cplx>> cn_;
};

namespace detail {
inline Cplx jet_value_checked(const Jet& j, int deriv, const char* what)
{
    double scale = 1 + std::abs(j[0]);
    if (j.kmin() < 0) {
        for (int k = j.kmin(); k < 0; ++k)
            if (std::abs(j[k]) > 1e-8 * scale) throw pole_error(std::string(what) + ": pole at s0");
    }
    return j.derivative(deriv);
}
} // namespace detail

inline EvalResult eval_checked(const EisSpec& spec, Point z)
{
    if (spec.variant == Variant::plain && std::abs(spec.s0 - 0.5) < 1e-12)
        throw pole_error("eisenstein: plain E has a pole at s0 = 1/2");
    EisensteinField F(spec.s0, spec.deriv);
    Point zr = reduce(z).first;
    int M = spec.fourier_terms > 0 ? spec.fourier_terms : default_fourier_terms(zr.y);
    Jet j = F.jet(spec.variant, zr, M);
    return {detail::jet_value_checked(j, spec.deriv, "eisenstein"), F.tail_bound(zr.y, M)};
}

inline Cplx eval(const EisSpec& spec, Point z) { return eval_checked(spec, z).value; }

inline Cplx constant_term(const EisSpec& spec, double y)
{
    if (spec.variant == Variant::plain && std::abs(spec.s0 - 0.5) < 1e-12)
        throw pole_error("eisenstein: plain E has a pole at s0 = 1/2");
    EisensteinField F(spec.s0, spec.deriv);
    return detail::jet_value_checked(F.constant_term(spec.variant, y), spec.deriv, "constant_term");
}

// Lambda^T E at z: the constant term is removed above height T (after reduction).
inline Cplx truncate(const EisSpec& spec, Point z, double T)
{
    if (T < 1) throw std::domain_error("truncate: T must be >= 1");
    Point zr = reduce(z).first;
    if (zr.y <= T) return eval(spec, zr);
    EisensteinField F(spec.s0, spec.deriv);
    return detail::jet_value_checked(F.nonconstant(spec.variant, zr, spec.fourier_terms), spec.deriv,
                                     "truncate");
}

// Sum form of E^reg at 1/2 used by the analysis: lim (E - (3/pi)/(s-1/2)) = E^reg + lambda^{(0)}(0)
inline Cplx eval_reg_classical(Point z)
{
    return eval({0.5, 0, Variant::reg, 0}, z) + lambda_jet(0)[0];
}

// (T(p) phi)(z) = p^{-1/2} (phi(pz) + sum_j phi((z+j)/p)) / (p^{1/2} + p^{-1/2})
template <class Phi>
Cplx hecke_apply(Phi&& phi, int p, Point z)
{
    Cplx acc = phi(Point{p * z.x, p * z.y});
    for (int j = 0; j < p; ++j) acc += phi(Point{(z.x + j) / p, z.y / p});
    double sp = std::sqrt(double(p));
    return acc / sp / (sp + 1.0 / sp);
}

} // namespace pgl2reg
