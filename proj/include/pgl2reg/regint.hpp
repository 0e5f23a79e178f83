#pragma once

#include "eisenstein.hpp"
#include "quadrature.hpp"
#include "scalars.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pgl2reg {

struct profile_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// f(t) = sum_i (c_i / n_i!) t^{1/2 + alpha_i} log^{n_i} t
struct ProfileTerm {
    Cplx c;
    Cplx alpha;
    int n = 0;
};

struct ExponentProfile {
    std::vector<ProfileTerm> terms;

    Cplx f(double t) const
    {
        Cplx acc = 0;
        double L = std::log(t);
        for (const auto& term : terms) {
            double fact = 1;
            for (int i = 2; i <= term.n; ++i) fact *= i;
            acc += term.c / fact * std::exp((0.5 + term.alpha) * L) * std::pow(L, term.n);
        }
        return acc;
    }

    // Kronecker-delta part of the regularized integral: exact comparison on declared data
    Cplx degenerate_sum() const
    {
        Cplx acc = 0;
        for (const auto& term : terms)
            if (term.alpha == Cplx(-0.5, 0.0) && term.n == 0) acc += term.c;
        return acc;
    }

    // merge terms with equal (alpha, n); alpha compared to 1e-13
    ExponentProfile combined() const
    {
        ExponentProfile out;
        for (const auto& t : terms) {
            bool merged = false;
            for (auto& o : out.terms)
                if (o.n == t.n && std::abs(o.alpha - t.alpha) < 1e-13) {
                    o.c += t.c;
                    merged = true;
                    break;
                }
            if (!merged) out.terms.push_back(t);
        }
        return out;
    }
};

struct AutomorphicFn {
    std::function<Cplx(Point)> sampler;
    ExponentProfile profile;
    std::string name;

    Cplx operator()(Point z) const { return sampler(z); }
};

struct QuadratureSpec {
    int x_points = 64;       // periodic trapezoid in x (cusp strip, constant terms)
    int x_order = 30;        // Gauss-Legendre order per half of [-1/2, 1/2] on the truncated domain
    int t_points = 20;       // Gauss-Legendre order per height panel
    double t_min = std::sqrt(3.0) / 2;
    double panel = 1.0;      // height panel length
    double cusp_depth = 7.0; // cusp strip [T, T + cusp_depth]
};

// a(t, phi): mean of phi over a horizontal period
inline Cplx kernel_a(const AutomorphicFn& phi, double t, const QuadratureSpec& q = {})
{
    if (!(t > 0)) throw std::domain_error("kernel_a: t must be positive");
    Cplx acc = 0;
    for (int j = 0; j < q.x_points; ++j) acc += phi(Point{-0.5 + (j + 0.5) / q.x_points, t});
    return acc / double(q.x_points);
}

namespace detail {
// 1/w^k as a jet in u at u0 where w = u + alpha
inline Jet inv_power_jet(Cplx u0, Cplx w0, int k, int kmax)
{
    if (std::abs(w0) < 1e-12) {
        std::vector<Cplx> c(kmax + k + 1, Cplx(0));
        c[0] = 1;
        return Jet(u0, -k, std::move(c));
    }
    std::vector<Cplx> c(kmax + 1);
    double binom = 1;
    for (int j = 0; j <= kmax; ++j) {
        if (j > 0) binom = binom * (k + j - 1) / j;
        c[j] = (j % 2 ? -1.0 : 1.0) * binom * std::pow(w0, -k - j);
    }
    return Jet(u0, 0, std::move(c));
}
} // namespace detail

// h_T(s) = sum_i c_i sum_{m=0}^{n_i} (-1)^{n_i-m}/m! T^{s+alpha_i} log^m T / (s+alpha_i)^{n_i-m+1}
inline Cplx h_T(const ExponentProfile& P, Cplx s, double T)
{
    Cplx acc = 0;
    double L = std::log(T);
    for (const auto& t : P.terms) {
        Cplx w = s + t.alpha;
        if (std::abs(w) < 1e-3) throw pole_error("h_T: s within 1e-3 of a pole; use h_T_jet");
        Cplx Tw = std::exp(w * L);
        double fact = 1;
        for (int m = 0; m <= t.n; ++m) {
            if (m > 0) fact *= m;
            double sgn = ((t.n - m) % 2) ? -1.0 : 1.0;
            acc += t.c * sgn / fact * std::pow(L, m) * Tw / std::pow(w, t.n - m + 1);
        }
    }
    return acc;
}

// jet in s at s0 of h_T(sign * s)
inline Jet h_T_jet(const ExponentProfile& P, Cplx s0, int kmax, double T, int sign = 1)
{
    Cplx u0 = double(sign) * s0;
    double L = std::log(T);
    Jet acc = Jet::zero(u0, 0, kmax);
    for (const auto& t : P.terms) {
        Cplx w0 = u0 + t.alpha;
        int K = kmax + t.n + 2;
        Jet Tw = Jet::exp_linear(u0, w0 * L, L, K);
        double fact = 1;
        for (int m = 0; m <= t.n; ++m) {
            if (m > 0) fact *= m;
            double sgn = ((t.n - m) % 2) ? -1.0 : 1.0;
            Jet term = Tw * detail::inv_power_jet(u0, w0, t.n - m + 1, K);
            acc += (term * (t.c * sgn / fact * std::pow(L, m))).truncated(kmax);
        }
    }
    return acc.rescaled(s0, double(sign));
}

struct FundamentalParts {
    Jet pairing;  // int_D phi Lambda^T E*(s)
    Jet i_plus;   // int_T^inf (a - f) t^{s-1/2} dt/t
    Jet i_minus;  // int_T^inf (a - f) t^{-s-1/2} dt/t
    Jet h_plus;   // h_T(s)
    Jet h_minus;  // h_T(-s)
    Jet L1;       // Lambda(1+2s)
    Jet L0;       // Lambda(1-2s) = Lambda(2s)

    // R* = pairing + L1 (I+ - h+) + L0 (I- - h-)
    Jet r_star() const { return pairing + L1 * (i_plus - h_plus) + L0 * (i_minus - h_minus); }
    // pairing + tails, the side of the identity not involving h_T
    Jet truncated_side() const { return pairing + L1 * i_plus + L0 * i_minus; }
};

// Regularized-integral engine for one phi and one truncation height; immutable after construction.
class RegEngine {
public:
    struct Node {
        Point z;
        double w; // includes dx dy / y^2
        Cplx phi;
    };

    RegEngine(AutomorphicFn phi, double T, QuadratureSpec q = {}) : phi_(std::move(phi)), T_(T), q_(q)
    {
        if (T < 1) throw std::domain_error("RegEngine: T must be >= 1");
        for (const auto& nx : gauss_panels(-0.5, 0.5, 0.5, q.x_order)) {
            double ylo = std::sqrt(1 - nx.x * nx.x);
            for (const auto& ny : gauss_panels(ylo, T, q.panel, q.t_points)) {
                Point z{nx.x, ny.x};
                bulk_.push_back({z, nx.w * ny.w / (z.y * z.y), phi_(z)});
            }
        }
        for (const auto& ny : gauss_panels(T, T + q.cusp_depth, q.panel, q.t_points)) {
            Cplx a = 0;
            for (int j = 0; j < q.x_points; ++j) {
                Point z{-0.5 + (j + 0.5) / q.x_points, ny.x};
                Cplx v = phi_(z);
                a += v;
                cusp_.push_back({z, ny.w / q.x_points / (z.y * z.y), v});
            }
            a /= double(q.x_points);
            tail_t_.push_back(ny.x);
            tail_w_.push_back(ny.w);
            tail_amf_.push_back(a - phi_.profile.f(ny.x));
        }
    }

    const AutomorphicFn& phi() const { return phi_; }
    double T() const { return T_; }
    const QuadratureSpec& quadrature() const { return q_; }
    const std::vector<Node>& bulk_nodes() const { return bulk_; }
    const std::vector<Node>& cusp_nodes() const { return cusp_; }

    // |a(t) - f(t)| / (1 + |f(t)|) at t = T + 4
    double profile_mismatch() const
    {
        double t = T_ + 4;
        Cplx f = phi_.profile.f(t);
        return std::abs(kernel_a(phi_, t, q_) - f) / (1 + std::abs(f));
    }
    void check_profile(double tol = 1e-8) const
    {
        double r = profile_mismatch();
        if (r > tol)
            throw profile_mismatch_error("declared exponent profile of " + phi_.name +
                                         " does not match a(t) (relative gap " + std::to_string(r) + ")");
    }

    FundamentalParts parts(Cplx s0, int kmax) const
    {
        int K = kmax + 6;
        EisensteinField F(s0, K);
        FundamentalParts p;
        Jet pair = Jet::zero(s0, -1, K);
        for (const auto& nd : bulk_) {
            Jet e = F.star_constant(nd.z.y) + F.star_nonconstant_reduced(nd.z);
            pair += e * (nd.w * nd.phi);
        }
        for (const auto& nd : cusp_) pair += F.star_nonconstant_reduced(nd.z) * (nd.w * nd.phi);
        p.pairing = pair;
        Jet ip = Jet::zero(s0, 0, K), im = Jet::zero(s0, 0, K);
        for (std::size_t k = 0; k < tail_t_.size(); ++k) {
            double t = tail_t_[k];
            Cplx wt = tail_w_[k] * tail_amf_[k] / t;
            ip += Jet::power(s0, t, s0 - 0.5, K) * wt;
            im += Jet::power(s0, t, -s0 - 0.5, K).rescaled(s0, -1.0) * wt;
        }
        p.i_plus = ip;
        p.i_minus = im;
        p.h_plus = h_T_jet(phi_.profile, s0, K, T_, 1);
        p.h_minus = h_T_jet(phi_.profile, s0, K, T_, -1);
        p.L1 = lambda_affine_jet(1.0, 2.0, s0, K);
        p.L0 = lambda_affine_jet(0.0, 2.0, s0, K);
        return p;
    }

    Jet R_star(Cplx s0, int kmax) const { return parts(s0, kmax).r_star().truncated(kmax); }

    // R(s) = R*(s) / Lambda(1+2s)
    Jet R(Cplx s0, int kmax) const
    {
        FundamentalParts p = parts(s0, kmax);
        return (p.r_star() * p.L1.inverse()).truncated(kmax);
    }

    // int_D phi E*(s) without truncation (for rapidly decaying phi)
    Jet pairing_untruncated(Cplx s0, int kmax) const
    {
        EisensteinField F(s0, kmax + 2);
        Jet pair = Jet::zero(s0, -1, kmax + 2);
        for (const auto* set : {&bulk_, &cusp_})
            for (const auto& nd : *set) {
                Jet e = F.star_constant(nd.z.y) + F.star_nonconstant_reduced(nd.z);
                pair += e * (nd.w * nd.phi);
            }
        return pair.truncated(kmax);
    }

    // int_{D_T} phi dmu
    Cplx truncated_integral() const
    {
        Cplx acc = 0;
        for (const auto& nd : bulk_) acc += nd.w * nd.phi;
        return acc;
    }

    // int_T^inf (a - f) dt / t^2
    Cplx tail_integral() const
    {
        Cplx acc = 0;
        for (std::size_t k = 0; k < tail_t_.size(); ++k)
            acc += tail_w_[k] * tail_amf_[k] / (tail_t_[k] * tail_t_[k]);
        return acc;
    }

private:
    AutomorphicFn phi_;
    double T_;
    QuadratureSpec q_;
    std::vector<Node> bulk_, cusp_;
    std::vector<double> tail_t_, tail_w_;
    std::vector<Cplx> tail_amf_;
};

struct RegIntResult {
    Cplx principal;  // Res_{s=1/2} R / lambda^{(-1)}(0)
    Cplx degenerate; // sum c_i [alpha_i = -1/2, n_i = 0] / lambda^{(-1)}(0)
    Cplx value;
    Cplx residue;    // Res_{s=1/2} R
};

inline RegIntResult reg_integral(const RegEngine& eng)
{
    double lam = lambda_jet(0).residue().real();
    Jet R = eng.R(0.5, 0);
    RegIntResult r;
    r.residue = R.residue();
    r.principal = r.residue / lam;
    r.degenerate = eng.phi().profile.degenerate_sum() / lam;
    r.value = r.principal + r.degenerate;
    return r;
}

// Plain integral of an integrable phi (all Re alpha < 1/2):
// int_{D_T} phi + int_T^inf (a - f) dt/t^2 + int_T^inf f dt/t^2, the last being -h_T(-1/2).
inline Cplx plain_integral(const RegEngine& eng)
{
    for (const auto& t : eng.phi().profile.terms)
        if (t.alpha.real() >= 0.5) throw std::domain_error("plain_integral: function is not integrable");
    return eng.truncated_integral() + eng.tail_integral() - h_T(eng.phi().profile, -0.5, eng.T());
}

struct FundamentalIdentityRecord {
    Cplx s;
    double T;
    Cplx lhs; // R*_ref + Lambda(1+2s) h_T(s) + Lambda(1-2s) h_T(-s)
    Cplx rhs; // truncated pairing + tails
    Cplx r_star;
    double abs_diff;
};

// Two-sided check of the fundamental identity against an independent R* (reference callback).
inline std::vector<FundamentalIdentityRecord> verify_fundamental_identity(
    const std::vector<const RegEngine*>& engines, const std::vector<Cplx>& s_grid,
    const std::function<Cplx(Cplx)>& r_star_reference)
{
    std::vector<FundamentalIdentityRecord> out;
    for (const RegEngine* eng : engines)
        for (Cplx s : s_grid) {
            FundamentalParts p = eng->parts(s, 0);
            Cplx lhs = r_star_reference(s) + p.L1[0] * p.h_plus[0] + p.L0[0] * p.h_minus[0];
            Cplx rhs = p.truncated_side()[0];
            out.push_back({s, eng->T(), lhs, rhs, p.r_star()[0], std::abs(lhs - rhs)});
        }
    return out;
}

// ---- products of Eisenstein series with analytically derived constant terms ----

// One factor: derivative of order n in s of E(s) (plain) or E^reg(s) at s0.
struct EisFactor {
    Cplx s0;
    int n = 0;
    bool reg = false;
};

namespace detail {
struct Monomial {
    Cplx coef;
    Cplx beta; // exponent of t
    int k;     // power of log t
};

inline double factorial(int n)
{
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
inline double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

inline std::vector<Monomial> factor_constant_term(const EisFactor& fa)
{
    std::vector<Monomial> out;
    out.push_back({1.0, 0.5 + fa.s0, fa.n});
    bool at_pole = std::abs(fa.s0 - 0.5) < 1e-14;
    if (at_pole) {
        if (!fa.reg) throw pole_error("constant term: plain E at s0 = 1/2");
        // d^n/du^n [lambda_F(u) (t^{-u} - 1)] at u = 0
        Jet lam = lambda_F_jet(0.0, fa.n + 1);
        for (int k = 1; k <= fa.n + 1; ++k) {
            Cplx c = factorial(fa.n) * lam[fa.n - k] * ((k % 2) ? -1.0 : 1.0) / factorial(k);
            out.push_back({c, 0.0, k});
        }
        return out;
    }
    Jet m = m_jet(fa.s0, fa.n + 1);
    for (int k = 0; k <= fa.n; ++k) {
        Cplx c = binomial(fa.n, k) * m.derivative(fa.n - k) * ((k % 2) ? -1.0 : 1.0);
        out.push_back({c, 0.5 - fa.s0, k});
    }
    if (fa.reg) out.push_back({-m.derivative(fa.n), 0.0, 0});
    return out;
}
} // namespace detail

// Exponent profile of a product of Eisenstein factors from their constant terms.
inline ExponentProfile product_profile(const std::vector<EisFactor>& factors)
{
    std::vector<detail::Monomial> acc{{1.0, 0.0, 0}};
    for (const auto& f : factors) {
        std::vector<detail::Monomial> next;
        for (const auto& a : acc)
            for (const auto& b : detail::factor_constant_term(f))
                next.push_back({a.coef * b.coef, a.beta + b.beta, a.k + b.k});
        acc = std::move(next);
    }
    ExponentProfile P;
    for (const auto& m : acc) P.terms.push_back({m.coef * detail::factorial(m.k), m.beta - 0.5, m.k});
    P = P.combined();
    std::erase_if(P.terms, [](const ProfileTerm& t) { return t.c == Cplx(0); });
    return P;
}

inline AutomorphicFn eisenstein_product(const std::vector<EisFactor>& factors, std::string name = "")
{
    std::vector<std::shared_ptr<const EisensteinField>> fields;
    for (const auto& f : factors) fields.push_back(std::make_shared<const EisensteinField>(f.s0, f.n));
    auto sampler = [factors, fields](Point z) {
        Point zr = reduce(z).first;
        Cplx v = 1;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            Jet j = fields[i]->jet(factors[i].reg ? Variant::reg : Variant::plain, zr);
            v *= j.derivative(factors[i].n);
        }
        return v;
    };
    return {sampler, product_profile(factors), std::move(name)};
}

// phi - E(phi): subtract (c/n!) d^n E(alpha) (E^reg at alpha = 1/2) for every profile term
// with Re alpha > 0; the remainder keeps only exponents with Re alpha <= 0.
inline AutomorphicFn l2_residue(const AutomorphicFn& phi)
{
    std::vector<EisFactor> subtract;
    std::vector<Cplx> coef;
    ExponentProfile rest;
    for (const auto& t : phi.profile.terms) {
        if (t.alpha.real() <= 0) {
            rest.terms.push_back(t);
            continue;
        }
        bool half = std::abs(t.alpha - 0.5) < 1e-14;
        if (!half && std::abs(t.alpha.real() - 0.5) < 1e-14)
            throw std::domain_error("l2_residue: exponent on Re alpha = 1/2 other than 1/2");
        EisFactor f{half ? Cplx(0.5) : t.alpha, t.n, half};
        subtract.push_back(f);
        coef.push_back(t.c / detail::factorial(t.n));
        for (const auto& m : detail::factor_constant_term(f)) {
            if (m.beta == 0.5 + f.s0 && m.k == t.n && m.coef == Cplx(1.0)) continue; // leading term cancels
            rest.terms.push_back({-coef.back() * m.coef * detail::factorial(m.k), m.beta - 0.5, m.k});
        }
    }
    rest = rest.combined();
    std::vector<std::shared_ptr<const EisensteinField>> fields;
    for (const auto& f : subtract) fields.push_back(std::make_shared<const EisensteinField>(f.s0, f.n));
    auto base = phi.sampler;
    auto sampler = [base, subtract, coef, fields](Point z) {
        Point zr = reduce(z).first;
        Cplx v = base(zr);
        for (std::size_t i = 0; i < subtract.size(); ++i) {
            Jet j = fields[i]->jet(subtract[i].reg ? Variant::reg : Variant::plain, zr);
            v -= coef[i] * j.derivative(subtract[i].n);
        }
        return v;
    };
    return {sampler, rest, phi.name + " - E(" + phi.name + ")"};
}

// ---- a cusp form: |Delta(z)|^2 y^12 ----

// tau(1..N) from q prod (1 - q^n)^24, exact in 128-bit integers
inline std::vector<__int128> ramanujan_tau(int N)
{
    std::vector<__int128> e(N, 0); // prod (1 - q^n) up to q^{N-1}
    e[0] = 1;
    for (int k = 1;; ++k) {
        bool any = false;
        for (int g : {k * (3 * k - 1) / 2, k * (3 * k + 1) / 2})
            if (g < N) {
                e[g] += (k % 2) ? -1 : 1;
                any = true;
            }
        if (!any) break;
    }
    auto mul = [N](const std::vector<__int128>& a, const std::vector<__int128>& b) {
        std::vector<__int128> c(N, 0);
        for (int i = 0; i < N; ++i)
            if (a[i] != 0)
                for (int j = 0; i + j < N; ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    auto e2 = mul(e, e), e4 = mul(e2, e2), e8 = mul(e4, e4), e16 = mul(e8, e8);
    auto e24 = mul(e16, e8);
    std::vector<__int128> tau(N + 1, 0);
    for (int n = 1; n <= N; ++n) tau[n] = e24[n - 1];
    return tau;
}

inline AutomorphicFn delta_square(int terms = 30)
{
    auto t = ramanujan_tau(terms);
    std::vector<double> tau(t.begin(), t.end());
    auto sampler = [tau](Point z) {
        Point zr = reduce(z).first;
        Cplx q = std::exp(Cplx(-2 * pi * zr.y, 2 * pi * zr.x));
        Cplx acc = 0, qn = 1;
        for (std::size_t n = 1; n < tau.size(); ++n) {
            qn *= q;
            acc += tau[n] * qn;
        }
        return Cplx(std::norm(acc) * std::pow(zr.y, 12));
    };
    return {sampler, {}, "|Delta|^2 y^12"};
}

} // namespace pgl2reg
