#pragma once

#include "complexfn.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace pgl2reg {

struct band_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Samples of f on t = e^{kh}, k = -K..K.
struct LogGridFn {
    double h = 0.05;
    int K = 400;
    std::vector<Cplx> v;
    double max_abs = 0;
    // |f| at the two ends relative to the max, recorded at sampling time
    double low_end = 0, high_end = 0;

    double t(int k) const { return std::exp(k * h); }
    Cplx at(int k) const { return v[k + K]; }

    template <class F>
    static LogGridFn sample(F&& f, double h = 0.05, int K = 400)
    {
        LogGridFn g;
        g.h = h;
        g.K = K;
        g.v.resize(2 * K + 1);
        for (int k = -K; k <= K; ++k) g.v[k + K] = Cplx(f(std::exp(k * h)));
        for (auto& x : g.v) g.max_abs = std::max(g.max_abs, std::abs(x));
        double m = g.max_abs > 0 ? g.max_abs : 1;
        g.low_end = std::abs(g.v.front()) / m;
        g.high_end = std::abs(g.v.back()) / m;
        return g;
    }
};

// Mellin transform int f(y) y^s dy/y by the trapezoid rule on the log grid.
// Throws band_error when f(y) y^{Re s} is not negligible at either end of the grid.
inline Cplx mellin(const LogGridFn& f, Cplx s, double band_tol = 1e-8)
{
    double sig = s.real();
    double lo = 0, hi = 0, big = 0;
    for (int k = -f.K; k <= f.K; ++k) {
        double a = std::abs(f.at(k)) * std::exp(k * f.h * sig);
        big = std::max(big, a);
        if (k == -f.K) lo = a;
        if (k == f.K) hi = a;
    }
    if (!(big > 0)) return 0;
    if (lo > band_tol * big || hi > band_tol * big || !std::isfinite(big))
        throw band_error("mellin: Re s = " + std::to_string(sig) + " outside the convergence band of the grid");
    Cplx acc = 0;
    for (int k = -f.K; k <= f.K; ++k) acc += f.at(k) * std::exp(double(k) * f.h * s);
    return acc * f.h;
}

struct InverseMellinSpec {
    double dtau = 0.25;
    double tau_max = 70;
};

// (1/2 pi) int M(sigma + i tau) y^{-sigma - i tau} dtau, trapezoid in tau
inline Cplx inverse_mellin(const std::function<Cplx(Cplx)>& M, double sigma, double y,
                           const InverseMellinSpec& q = {})
{
    if (!(y > 0)) throw std::domain_error("inverse_mellin: y must be positive");
    int n = int(std::round(q.tau_max / q.dtau));
    double ly = std::log(y);
    Cplx acc = 0;
    for (int j = -n; j <= n; ++j) {
        Cplx s(sigma, j * q.dtau);
        acc += M(s) * std::exp(-s * ly);
    }
    return acc * q.dtau / (2 * pi);
}

// Round trip f -> Mf on Re s = sigma -> f, max abs error over the given points
inline double mellin_roundtrip_error(const LogGridFn& f, const std::function<Cplx(double)>& exact, double sigma,
                                     const std::vector<double>& ys, const InverseMellinSpec& q = {})
{
    int n = int(std::round(q.tau_max / q.dtau));
    std::vector<Cplx> Mv(2 * n + 1);
    for (int j = -n; j <= n; ++j) Mv[j + n] = mellin(f, Cplx(sigma, j * q.dtau));
    double worst = 0;
    for (double y : ys) {
        double ly = std::log(y);
        Cplx acc = 0;
        for (int j = -n; j <= n; ++j) acc += Mv[j + n] * std::exp(-Cplx(sigma, j * q.dtau) * ly);
        acc *= q.dtau / (2 * pi);
        worst = std::max(worst, std::abs(acc - exact(y)));
    }
    return worst;
}

// Components along characters of {+-1}: (f(t) + sign f(-t)) / 2
inline LogGridFn f1_decompose_real(const std::function<Cplx(double)>& f, int sign, double h = 0.05, int K = 400)
{
    double sg = sign >= 0 ? 1.0 : -1.0;
    return LogGridFn::sample([&](double t) { return 0.5 * (f(t) + sg * f(-t)); }, h, K);
}

// Angular coefficient int f(t e^{i theta}) e^{i n theta} dtheta / 2 pi
inline LogGridFn f1_decompose_complex(const std::function<Cplx(Cplx)>& f, int n, double h = 0.05, int K = 400,
                                      int ntheta = 64)
{
    return LogGridFn::sample(
        [&](double t) {
            Cplx acc = 0;
            for (int j = 0; j < ntheta; ++j) {
                double th = 2 * pi * j / ntheta;
                acc += f(std::polar(t, th)) * std::polar(1.0, n * th);
            }
            return acc / double(ntheta);
        },
        h, K);
}

// Whittaker function of the standard Gaussian section at a(y).
// The Gaussian is its own partial Fourier transform, so the unfolded integral is
// |y|^{1/2-s} int_{R^x} exp(-pi (t^2 + y^2/t^2)) |t|^{2s} d^x t.
inline Cplx whittaker_arch_direct(Cplx s, double y, double h = 0.02)
{
    if (y == 0) throw std::domain_error("whittaker_arch: y must be nonzero");
    double ay = std::abs(y);
    // u = log t; exponent -pi (e^{2u} + y^2 e^{-2u}) + 2 s u
    auto expo = [&](double u) { return -pi * (std::exp(2 * u) + ay * ay * std::exp(-2 * u)) + 2 * s.real() * u; };
    double u0 = 0.5 * std::log(ay);
    double top = expo(u0);
    // the maximum may sit far from u0 for small |y|; scan for it
    for (double u = u0 - 30; u < u0 + 30; u += 0.25) top = std::max(top, expo(u));
    double lo = u0, hi = u0;
    while (expo(lo) > top - 46 || lo > std::min(u0, 0.0)) lo -= 0.25;
    while (expo(hi) > top - 46 || hi < std::max(u0, 0.0)) hi += 0.25;
    int n = int(std::ceil((hi - lo) / h));
    double hh = (hi - lo) / n;
    Cplx acc = 0;
    for (int j = 0; j <= n; ++j) {
        double u = lo + j * hh;
        acc += std::exp(Cplx(-pi * (std::exp(2 * u) + ay * ay * std::exp(-2 * u)), 0) + 2.0 * s * u);
    }
    // both signs of t contribute equally
    return std::exp((0.5 - s) * std::log(ay)) * 2.0 * acc * hh;
}

namespace detail {
inline Cplx bessel_k_any(Cplx nu, double x)
{
    if (std::abs(nu.imag()) < 1e-300) return boost::math::cyl_bessel_k(nu.real(), x);
    return bessel_k(nu, x);
}
} // namespace detail

// |y|^{1/2} K_s(2 pi |y|) without the constant
inline Cplx whittaker_arch_shape(Cplx s, double y)
{
    double ay = std::abs(y);
    return std::sqrt(ay) * detail::bessel_k_any(s, 2 * pi * ay);
}

// Constant C with path (a) = C |y|^{1/2} K_s(2 pi |y|), fixed once at s = 0.3, y = 1.
inline double whittaker_arch_constant()
{
    static const double C = (whittaker_arch_direct(0.3, 1.0) / whittaker_arch_shape(0.3, 1.0)).real();
    return C;
}

inline Cplx whittaker_arch(Cplx s, double y) { return whittaker_arch_constant() * whittaker_arch_shape(s, y); }

// least-squares slope of log|W| against log y
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& vals)
{
    std::size_t n = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(xs[i]);
        my += std::log(std::abs(vals[i]));
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = std::log(xs[i]) - mx;
        sxy += dx * (std::log(std::abs(vals[i])) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

struct DecaySlopes {
    double large;          // over ys_large, must be <= -N
    double small;          // over ys_small
    double small_expected; // 1/2 - |Re s|
};

inline DecaySlopes whittaker_decay_slopes(Cplx s, const std::vector<double>& ys_large,
                                          const std::vector<double>& ys_small)
{
    std::vector<double> a, b;
    for (double y : ys_large) a.push_back(std::abs(whittaker_arch(s, y)));
    for (double y : ys_small) b.push_back(std::abs(whittaker_arch(s, y)));
    return {loglog_slope(ys_large, a), loglog_slope(ys_small, b), 0.5 - std::abs(s.real())};
}

struct GlobalWhittakerSum {
    double value;
    double tail_bound;
    int terms;
};

// sum over n != 0 of |c_n(s)| 2 sqrt(y) |K_s(2 pi |n| y)|, the Fourier modes of E* at height y
inline GlobalWhittakerSum global_whittaker_sum(Cplx s, double y, double rel_tol = 1e-17)
{
    if (!(y > 0)) throw std::domain_error("global_whittaker_sum: y must be positive");
    double sig = std::abs(s.real());
    // K_s(x) ~ e^{-x}; beyond this everything underflows
    if (2 * pi * y > 740) return {0.0, 0.0, 0};
    double total = 0;
    int n = 1;
    for (;; ++n) {
        Cplx c = 0;
        for (int d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            c += std::exp(s * std::log(double(n) / (double(d) * d)));
            int e = n / d;
            if (e != d) c += std::exp(s * std::log(double(n) / (double(e) * e)));
        }
        double term = 2 * 2 * std::sqrt(y) * std::abs(c) * std::abs(bessel_k(s, 2 * pi * n * y));
        total += term;
        if (term == 0 || term < rel_tol * total || n > 100000) break;
    }
    // |c_m| <= 2 sqrt(m) m^sig, |K_s(x)| <= K_sig(x) <= sqrt(pi/2x) e^{-x} e^{sig^2/x}
    double tail = 0;
    for (int m = n + 1; m < n + 200; ++m) {
        double x = 2 * pi * m * y;
        double t = 4 * std::sqrt(y) * 2 * std::sqrt(double(m)) * std::pow(double(m), sig) * std::sqrt(pi / (2 * x)) *
                   std::exp(-x + sig * sig / x);
        tail += t;
        if (t < 1e-3 * tail || t == 0) break;
    }
    return {total, tail, n};
}

// Norms used by the semi-norm inequalities. Functions on R are given with derivative.
struct RealTestFn {
    std::string name;
    std::function<double(double)> f, df;
};

struct SobolevRow {
    std::string inequality;
    std::string fn;
    double ratio;
};

struct SobolevReport {
    std::vector<SobolevRow> rows;
    // max ratio per inequality
    std::vector<std::pair<std::string, double>> constants;
};

namespace detail {
// integral of |g|^l over [-L, L] by composite trapezoid (g decays smoothly, so this is spectral)
inline double lp_norm_line(const std::function<double(double)>& g, double l, double L, int n)
{
    double h = 2 * L / n, acc = 0, sup = 0;
    for (int j = 0; j <= n; ++j) {
        double v = std::abs(g(-L + j * h));
        sup = std::max(sup, v);
        acc += (j == 0 || j == n ? 0.5 : 1.0) * std::pow(v, l);
    }
    if (std::isinf(l)) return sup;
    return std::pow(acc * h, 1.0 / l);
}

// B_l^{k,sigma} on R_+ with dy/y, for k = 0, 1 given f and f'
inline double b_norm(const RealTestFn& fn, int k, double sigma, double l, double h, int K)
{
    const auto& g = k == 0 ? fn.f : fn.df;
    double acc = 0, sup = 0;
    for (int j = -K; j <= K; ++j) {
        double y = std::exp(j * h);
        double v = std::abs(g(y)) * std::pow(y, sigma + k);
        sup = std::max(sup, v);
        acc += std::pow(v, l);
    }
    if (std::isinf(l)) return sup;
    return std::pow(acc * h, 1.0 / l);
}
} // namespace detail

struct SobolevSpec {
    double l = 2;
    double sigma = 0.5;
    double eps = 0.1;
    double line_half_width = 40;
    int line_points = 16000;
    double log_h = 0.01;
    int log_K = 6000;
};

// Evaluates each inequality over the corpus and records max observed ratio lhs / rhs.
//  sup      : |f|_inf        vs |f|_l + |f'|_l                      (functions on R)
//  moment   : |x^p f|_l      vs |x^p f|_inf + |x^{p+2} f|_inf, p=0  (functions on R)
//  b_lower  : B_l^{0,s}      vs B_inf^{0,s+e} + B_inf^{0,s-e}       (restricted to R_+)
//  b_upper  : B_inf^{0,s}    vs B_l^{0,s} + B_l^{1,s}
//  mellin   : H_inf^{0,s}(Mf) vs B_1^{0,s}(f)                       (constant 1)
inline SobolevReport sobolev_checks(const std::vector<RealTestFn>& corpus, const SobolevSpec& q = {})
{
    SobolevReport rep;
    auto push = [&](const std::string& ineq, const std::string& fn, double r) {
        rep.rows.push_back({ineq, fn, r});
        for (auto& c : rep.constants)
            if (c.first == ineq) {
                c.second = std::max(c.second, r);
                return;
            }
        rep.constants.push_back({ineq, r});
    };
    double inf = std::numeric_limits<double>::infinity();
    for (const auto& fn : corpus) {
        double L = q.line_half_width;
        int n = q.line_points;
        double sup = detail::lp_norm_line(fn.f, inf, L, n);
        double fl = detail::lp_norm_line(fn.f, q.l, L, n);
        double dfl = detail::lp_norm_line(fn.df, q.l, L, n);
        push("sup", fn.name, sup / (fl + dfl));
        auto x2f = [&](double x) { return x * x * fn.f(x); };
        push("moment", fn.name, fl / (sup + detail::lp_norm_line(x2f, inf, L, n)));

        double s = q.sigma, e = q.eps;
        double bl = detail::b_norm(fn, 0, s, q.l, q.log_h, q.log_K);
        double bp = detail::b_norm(fn, 0, s + e, inf, q.log_h, q.log_K);
        double bm = detail::b_norm(fn, 0, s - e, inf, q.log_h, q.log_K);
        push("b_lower", fn.name, bl / (bp + bm));
        double binf = detail::b_norm(fn, 0, s, inf, q.log_h, q.log_K);
        double bl1 = detail::b_norm(fn, 1, s, q.l, q.log_h, q.log_K);
        push("b_upper", fn.name, binf / (bl + bl1));

        LogGridFn g = LogGridFn::sample(fn.f, q.log_h, q.log_K);
        double hsup = 0;
        for (double tau = -40; tau <= 40; tau += 0.5) hsup = std::max(hsup, std::abs(mellin(g, Cplx(s, tau))));
        push("mellin", fn.name, hsup / detail::b_norm(fn, 0, s, 1, q.log_h, q.log_K));
    }
    return rep;
}

} // namespace pgl2reg
