#pragma once

#include "complexfn.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace pgl2reg {

inline long long ipow(long long p, int k)
{
    if (k < 0) throw std::domain_error("ipow: negative exponent");
    long long r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

// sentinels for the zero function
inline constexpr int padic_zero_D = INT_MAX / 2;
inline constexpr int padic_zero_delta = INT_MIN / 2;

// Phi on Q_p^dim, supported on (p^D)^dim and invariant under (p^delta)^dim.
// values are indexed by cells x = p^D a, a in (Z/p^{delta-D})^dim, row-major.
struct PadicSchwartz {
    int p = 2;
    int dim = 1;
    int D = 0;
    int delta = 0;
    std::vector<Cplx> values{Cplx(1)};

    long long cells_per_axis() const { return ipow(p, delta - D); }
    bool is_zero() const { return D == padic_zero_D; }

    // value at the cell with integer coordinates a (in units of p^D)
    Cplx at(long long a1, long long a2 = 0) const
    {
        if (is_zero()) return 0;
        long long n = cells_per_axis();
        a1 = ((a1 % n) + n) % n;
        if (dim == 1) return values[a1];
        a2 = ((a2 % n) + n) % n;
        return values[a1 * n + a2];
    }
};

namespace detail {
inline double max_abs(const std::vector<Cplx>& v)
{
    double m = 0;
    for (auto& x : v) m = std::max(m, std::abs(x));
    return m;
}
inline bool same(Cplx a, Cplx b, double tol) { return std::abs(a - b) <= tol; }

inline long long total_cells(long long n, int dim) { return dim == 1 ? n : n * n; }
} // namespace detail

// Tight D and delta; values compared to 1e-12 of the sup norm.
inline PadicSchwartz canonicalize(PadicSchwartz f, double rel_tol = 1e-12)
{
    if (f.is_zero()) return f;
    double scale = detail::max_abs(f.values);
    double tol = rel_tol * scale;
    if (scale == 0) {
        f.D = padic_zero_D;
        f.delta = padic_zero_delta;
        f.values = {Cplx(0)};
        return f;
    }
    for (auto& v : f.values)
        if (std::abs(v) <= tol) v = 0;
    bool changed = true;
    while (changed && f.delta > f.D) {
        changed = false;
        long long n = f.cells_per_axis(), h = n / f.p;
        // invariance under (p^{delta-1})^dim
        bool inv = true;
        for (long long a = 0; a < n && inv; ++a)
            for (long long b = 0; b < (f.dim == 1 ? 1 : n) && inv; ++b) {
                Cplx v = f.at(a, b);
                if (!detail::same(v, f.at(a + h, b), tol)) inv = false;
                if (f.dim == 2 && !detail::same(v, f.at(a, b + h), tol)) inv = false;
            }
        if (inv) {
            std::vector<Cplx> nv(detail::total_cells(h, f.dim));
            for (long long a = 0; a < h; ++a)
                for (long long b = 0; b < (f.dim == 1 ? 1 : h); ++b)
                    nv[f.dim == 1 ? a : a * h + b] = f.at(a, b);
            f.values = std::move(nv);
            --f.delta;
            changed = true;
            continue;
        }
        // support in (p^{D+1})^dim
        bool sup = true;
        for (long long a = 0; a < n && sup; ++a)
            for (long long b = 0; b < (f.dim == 1 ? 1 : n) && sup; ++b)
                if ((a % f.p != 0 || b % f.p != 0) && f.at(a, b) != Cplx(0)) sup = false;
        if (sup) {
            std::vector<Cplx> nv(detail::total_cells(h, f.dim));
            for (long long a = 0; a < h; ++a)
                for (long long b = 0; b < (f.dim == 1 ? 1 : h); ++b)
                    nv[f.dim == 1 ? a : a * h + b] = f.at(a * f.p, b * f.p);
            f.values = std::move(nv);
            ++f.D;
            changed = true;
        }
    }
    return f;
}

inline PadicSchwartz make_padic(int p, int dim, int D, int delta, std::vector<Cplx> values)
{
    if (delta < D) throw std::invalid_argument("make_padic: need D <= delta");
    if (dim != 1 && dim != 2) throw std::invalid_argument("make_padic: dim must be 1 or 2");
    PadicSchwartz f{p, dim, D, delta, std::move(values)};
    if ((long long)f.values.size() != detail::total_cells(f.cells_per_axis(), dim))
        throw std::invalid_argument("make_padic: wrong number of cells");
    return canonicalize(std::move(f));
}

// indicator of (p^k)^dim
inline PadicSchwartz ball_indicator(int p, int dim, int k) { return make_padic(p, dim, k, k, {Cplx(1)}); }

// same function on a finer grid D' <= D, delta' >= delta
inline PadicSchwartz regrid(const PadicSchwartz& f, int D2, int delta2)
{
    if (f.is_zero()) return make_padic(f.p, f.dim, D2, delta2, std::vector<Cplx>(detail::total_cells(ipow(f.p, delta2 - D2), f.dim)));
    if (D2 > f.D || delta2 < f.delta) throw std::invalid_argument("regrid: target grid is coarser");
    long long n2 = ipow(f.p, delta2 - D2), shift = ipow(f.p, f.D - D2);
    PadicSchwartz g{f.p, f.dim, D2, delta2, std::vector<Cplx>(detail::total_cells(n2, f.dim))};
    for (long long a = 0; a < n2; ++a)
        for (long long b = 0; b < (f.dim == 1 ? 1 : n2); ++b) {
            if (a % shift != 0 || b % shift != 0) continue;
            g.values[f.dim == 1 ? a : a * n2 + b] = f.at(a / shift, b / shift);
        }
    return g;
}

namespace detail {
// DFT along one axis on a grid (D, delta) -> (-c-delta, -c-D), kernel psi(-x xi), mass p^{-delta-c/2}
inline void dft_axis(PadicSchwartz& f, int axis, int c)
{
    long long n = f.cells_per_axis();
    double mass = std::pow(double(f.p), -f.delta - 0.5 * c);
    std::vector<Cplx> root(n);
    for (long long k = 0; k < n; ++k) root[k] = std::polar(1.0, -2 * pi * double(k) / double(n));
    std::vector<Cplx> out(f.values.size());
    long long other = f.dim == 1 ? 1 : n;
    for (long long o = 0; o < other; ++o)
        for (long long b = 0; b < n; ++b) {
            Cplx acc = 0;
            for (long long a = 0; a < n; ++a) {
                Cplx v = f.dim == 1 ? f.values[a] : (axis == 0 ? f.values[a * n + o] : f.values[o * n + a]);
                acc += v * root[(a * b) % n];
            }
            long long idx = f.dim == 1 ? b : (axis == 0 ? b * n + o : o * n + b);
            out[idx] = acc * mass;
        }
    f.values = std::move(out);
}
} // namespace detail

// F Phi(xi) = int Phi(x) psi_c(-x . xi) dx with psi_c(x) = psi_0(p^c x), psi_0(x) = e^{2 pi i {x}_p},
// self-dual Haar measure (vol Z_p = p^{-c/2} per axis)
inline PadicSchwartz fourier(const PadicSchwartz& f, int c = 0)
{
    if (f.is_zero()) return f;
    PadicSchwartz g = f;
    for (int ax = 0; ax < f.dim; ++ax) detail::dft_axis(g, ax, c);
    g.D = -c - f.delta;
    g.delta = -c - f.D;
    return canonicalize(std::move(g));
}

// partial transform in the listed axes (0-based); both axes regridded to a common grid first
inline PadicSchwartz fourier_partial(const PadicSchwartz& f, const std::vector<int>& axes, int c = 0)
{
    for (int ax : axes)
        if (ax < 0 || ax >= f.dim) throw std::invalid_argument("fourier_partial: axis out of range");
    if (f.is_zero()) return f;
    int D2 = std::min(f.D, -c - f.delta), d2 = std::max(f.delta, -c - f.D);
    PadicSchwartz g = regrid(f, D2, d2);
    for (int ax : axes) detail::dft_axis(g, ax, c);
    return canonicalize(std::move(g));
}

// hat Phi(x, y) = F Phi(-y, x)
inline PadicSchwartz fourier_twisted(const PadicSchwartz& f, int c = 0)
{
    if (f.dim != 2) throw std::invalid_argument("fourier_twisted: needs dim 2");
    PadicSchwartz g = fourier(f, c);
    if (g.is_zero()) return g;
    long long n = g.cells_per_axis();
    PadicSchwartz h = g;
    for (long long a = 0; a < n; ++a)
        for (long long b = 0; b < n; ++b) h.values[a * n + b] = g.at(-b, a);
    return h;
}

// Phi(x kappa) for an integral matrix kappa in GL_dim(Z_p) (dim 1: a unit)
inline PadicSchwartz rotate(const PadicSchwartz& f, const std::array<long long, 4>& kappa)
{
    if (f.is_zero()) return f;
    long long n = f.cells_per_axis();
    PadicSchwartz g = f;
    for (long long a = 0; a < n; ++a)
        for (long long b = 0; b < (f.dim == 1 ? 1 : n); ++b) {
            if (f.dim == 1) g.values[a] = f.at((a * (kappa[0] % n)) % n);
            else {
                long long k0 = kappa[0] % n, k1 = kappa[1] % n, k2 = kappa[2] % n, k3 = kappa[3] % n;
                g.values[a * n + b] = f.at((a * k0 + b * k2) % n, (a * k1 + b * k3) % n);
            }
        }
    return canonicalize(std::move(g));
}

namespace detail {
inline bool is_primitive_root_p2(long long g, long long p)
{
    long long m = p * p, order = p * (p - 1), x = 1;
    for (long long k = 1; k <= order; ++k) {
        x = x * g % m;
        if (x == 1) return k == order;
    }
    return false;
}

// generators of {kappa in GL_dim(Z_p) : kappa = 1 mod p^m}
inline std::vector<std::array<long long, 4>> congruence_generators(int p, int dim, int m)
{
    std::vector<long long> units;
    if (m == 0) {
        if (p == 2) units = {-1, 5};
        else
            for (long long g = 2;; ++g)
                if (is_primitive_root_p2(g, p)) {
                    units = {g};
                    break;
                }
    } else {
        units = {1 + ipow(p, m)};
        if (p == 2 && m == 1) units.push_back(-1);
    }
    std::vector<std::array<long long, 4>> gens;
    if (dim == 1) {
        for (long long u : units) gens.push_back({u, 0, 0, 1});
        return gens;
    }
    long long e = ipow(p, m);
    gens.push_back({1, e, 0, 1});
    gens.push_back({1, 0, e, 1});
    for (long long u : units) {
        gens.push_back({u, 0, 0, 1});
        gens.push_back({1, 0, 0, u});
    }
    return gens;
}
} // namespace detail

struct PadicIndices {
    int D, delta, m;
};

inline PadicIndices indices(const PadicSchwartz& f)
{
    if (f.is_zero()) return {padic_zero_D, padic_zero_delta, 0};
    double tol = 1e-12 * detail::max_abs(f.values);
    long long n = f.cells_per_axis();
    auto positive = [&](long long x) { return ((x % n) + n) % n; };
    for (int m = 0; m <= f.delta - f.D; ++m) {
        bool ok = true;
        for (const auto& k : detail::congruence_generators(f.p, f.dim, m)) {
            for (long long a = 0; a < n && ok; ++a)
                for (long long b = 0; b < (f.dim == 1 ? 1 : n) && ok; ++b) {
                    Cplx moved = f.dim == 1 ? f.at(positive(a * positive(k[0])))
                                            : f.at(positive(a * positive(k[0]) + b * positive(k[2])),
                                                   positive(a * positive(k[1]) + b * positive(k[3])));
                    if (!detail::same(moved, f.at(a, b), tol)) ok = false;
                }
            if (!ok) break;
        }
        if (ok) return {f.D, f.delta, m};
    }
    return {f.D, f.delta, f.delta - f.D}; // not reached: level delta - D always fixes f
}

// integral of |x|^e over p^k Z_p (vol Z_p = 1)
inline double padic_power_ball_integral(int p, int k, double e)
{
    double q = p;
    return (1 - 1 / q) * std::pow(q, -k * (e + 1)) / (1 - std::pow(q, -(e + 1)));
}

// S_l^sigma(Phi) = || |x^sigma| Phi ||_l, exact cell sums; l = infinity allowed; vol Z_p = 1
inline double padic_norm(const PadicSchwartz& f, double l, const std::vector<double>& sigma = {})
{
    if (f.is_zero()) return 0;
    std::vector<double> sg = sigma;
    sg.resize(f.dim, 0.0);
    for (double s : sg)
        if (s < 0) throw std::invalid_argument("padic_norm: sigma must be >= 0");
    long long n = f.cells_per_axis();
    double q = f.p;
    bool inf = std::isinf(l);
    // per-axis factor for cell coordinate a: sup or integral of |x|^{sigma l} over the cell
    auto axis_factor = [&](long long a, double s) {
        if (a % n == 0) {
            if (inf) return std::pow(q, -f.delta * s);
            return padic_power_ball_integral(f.p, f.delta, s * l);
        }
        int v = 0;
        while (a % f.p == 0) {
            a /= f.p;
            ++v;
        }
        double absx = std::pow(q, -(f.D + v));
        return inf ? std::pow(absx, s) : std::pow(absx, s * l) * std::pow(q, -f.delta);
    };
    double acc = 0;
    for (long long a = 0; a < n; ++a)
        for (long long b = 0; b < (f.dim == 1 ? 1 : n); ++b) {
            double v = std::abs(f.at(a, b));
            if (v == 0) continue;
            double w = axis_factor(a, sg[0]);
            if (f.dim == 2) w *= axis_factor(b, sg[1]);
            if (inf) acc = std::max(acc, v * w);
            else acc += std::pow(v, l) * w;
        }
    return inf ? acc : std::pow(acc, 1 / l);
}

// random function: random grid near the self-dual position for conductor c (so that partial
// transforms stay small), values from a small palette with zeros
inline PadicSchwartz random_padic(int p, int dim, std::mt19937_64& rng, int c = 0, int max_span = -1)
{
    if (max_span < 0) max_span = p == 2 ? 4 : (p == 3 ? 3 : 2);
    if (dim == 2) max_span = std::max(1, max_span - 1);
    std::uniform_int_distribution<int> span(0, max_span), shift(0, 1), pick(0, 6);
    int L = span(rng);
    int D = int(std::floor((-c - L) / 2.0)) + shift(rng);
    long long n = ipow(p, L);
    const Cplx palette[] = {0.0, 0.0, 1.0, 2.0, Cplx(0, 1), -1.0, Cplx(0.5, -1.5)};
    std::vector<Cplx> v(detail::total_cells(n, dim));
    for (auto& x : v) x = palette[pick(rng)];
    if (pick(rng) % 2) v[0] = 1.0;
    return make_padic(p, dim, D, D + L, std::move(v));
}

// ---- discrete Mellin pair on varpi^Z ----

// f(varpi^n) for n >= n0
struct DiscreteSeq {
    int n0 = 0;
    std::vector<Cplx> v;
    Cplx at(int n) const { return (n < n0 || n >= n0 + int(v.size())) ? Cplx(0) : v[n - n0]; }
};

inline Cplx discrete_mellin(const DiscreteSeq& f, double q, Cplx s)
{
    Cplx acc = 0;
    for (std::size_t i = 0; i < f.v.size(); ++i) acc += f.v[i] * std::exp(-double(f.n0 + int(i)) * s * std::log(q));
    return acc;
}

// f_M(varpi^n) = int_0^{2pi/log q} M(sigma + i tau) q^{n(sigma + i tau)} log q dtau / 2pi, trapezoid on the period
inline Cplx discrete_mellin_inverse(const std::function<Cplx(Cplx)>& M, double q, double sigma, int n, int points = 256)
{
    double L = std::log(q), period = 2 * pi / L;
    Cplx acc = 0;
    for (int j = 0; j < points; ++j) {
        Cplx s(sigma, period * j / points);
        acc += M(s) * std::exp(double(n) * s * L);
    }
    return acc / double(points);
}

inline double B_seminorm(const DiscreteSeq& f, double q, double sigma, double l)
{
    double acc = 0;
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        double t = std::pow(q, -double(f.n0 + int(i)) * sigma) * std::abs(f.v[i]);
        if (std::isinf(l)) acc = std::max(acc, t);
        else acc += std::pow(t, l);
    }
    return std::isinf(l) ? acc : std::pow(acc, 1 / l);
}

inline double H_seminorm(const std::function<Cplx(Cplx)>& M, double q, double sigma, double l, int points = 512)
{
    double period = 2 * pi / std::log(q);
    double acc = 0;
    for (int j = 0; j < points; ++j) {
        double t = std::abs(M(Cplx(sigma, period * j / points)));
        if (std::isinf(l)) acc = std::max(acc, t);
        else acc += std::pow(t, l) / points;
    }
    return std::isinf(l) ? acc : std::pow(acc, 1 / l);
}

// ---- unramified local Whittaker function ----

struct PadicCharSpec {
    int c_psi = 0;
    Cplx alpha; // xi(varpi) q^{-s}
    Cplx beta;  // omega xi^{-1}(varpi) q^{s}
    int q = 2;

    static PadicCharSpec trivial(int q, Cplx s)
    {
        return {0, std::pow(double(q), -s), std::pow(double(q), s), q};
    }
};

// q^{-n/2} (alpha^{n+1} - beta^{n+1}) / (alpha - beta) 1_{n >= 0}
inline Cplx whittaker_na(const PadicCharSpec& sp, int n)
{
    if (n < 0) return 0;
    Cplx val;
    if (std::abs(sp.alpha - sp.beta) < 1e-12 * (std::abs(sp.alpha) + std::abs(sp.beta)))
        val = double(n + 1) * std::pow(sp.alpha, n);
    else {
        val = 0;
        for (int k = 0; k <= n; ++k) val += std::pow(sp.alpha, k) * std::pow(sp.beta, n - k);
    }
    return std::pow(double(sp.q), -0.5 * n) * val;
}

// q^{-n/2} beta^n sum_k (alpha/beta)^k avg_{u in units} F_2 Phi(varpi^k u, varpi^{n-k} u^{-1}), vol(o^x) = 1
inline Cplx whittaker_na_integral(const PadicSchwartz& phi, const PadicCharSpec& sp, int n)
{
    if (phi.dim != 2) throw std::invalid_argument("whittaker_na_integral: needs dim 2");
    if (phi.p != sp.q) throw std::invalid_argument("whittaker_na_integral: residue field mismatch");
    PadicSchwartz G = fourier_partial(phi, {1}, sp.c_psi);
    if (G.is_zero()) return 0;
    int p = G.p;
    long long ncell = G.cells_per_axis();
    Cplx ratio = sp.alpha / sp.beta;
    Cplx acc = 0;
    for (int k = G.D; n - k >= G.D; ++k) {
        int L = std::max({1, G.delta - k, G.delta - (n - k)});
        long long mod = ipow(p, L);
        Cplx s = 0;
        long long count = 0;
        for (long long u = 1; u < mod; ++u) {
            if (u % p == 0) continue;
            // inverse of u mod p^L
            long long inv = 1;
            for (long long t = 1; t < mod; ++t)
                if (u * t % mod == 1) {
                    inv = t;
                    break;
                }
            auto coord = [&](int e, long long w) -> long long {
                if (e >= G.delta) return 0;
                return (ipow(p, e - G.D) * (w % ipow(p, G.delta - e))) % ncell;
            };
            s += G.at(coord(k, u), coord(n - k, inv));
            ++count;
        }
        acc += std::pow(ratio, k) * s / double(count);
    }
    return std::pow(double(sp.q), -0.5 * n) * std::pow(sp.beta, n) * acc;
}

// (2 / (eps log q)) sup_x x e^{-x} q^{-n(1/2 - |Re s| - eps)}
inline double whittaker_small_y_bound(int q, Cplx s, double eps, int n)
{
    double L = std::log(double(q));
    return 2 / (eps * L) * std::exp(-1.0) * std::pow(double(q), -n * (0.5 - std::abs(s.real()) - eps));
}

} // namespace pgl2reg
