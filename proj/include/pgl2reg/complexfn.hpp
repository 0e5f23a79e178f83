#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgl2reg {

using Cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

// B_{2k} / (2k (2k-1)), Stirling series for log Gamma
inline constexpr double stirling_coef[] = {
    1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
    1.0 / 1188, -691.0 / 360360, 1.0 / 156, -3617.0 / 122400};

// B_{2k} / (2k)!, Euler-Maclaurin corrections
inline constexpr double bernoulli_fact[] = {
    1.0 / 12, -1.0 / 720, 1.0 / 30240, -1.0 / 1209600,
    1.0 / 47900160, -691.0 / 1307674368000.0, 1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0};

inline bool near_nonpositive_integer(Cplx s, double tol = 1e-14)
{
    if (std::abs(s.imag()) > tol || s.real() > 0.5) return false;
    return std::abs(s.real() - std::round(s.real())) < tol;
}

inline Cplx lgamma_stirling(Cplx z)
{
    Cplx z2 = 1.0 / (z * z);
    Cplx zk = 1.0 / z;
    Cplx corr = 0;
    for (double c : stirling_coef) {
        corr += c * zk;
        zk *= z2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * pi) + corr;
}

inline void check_finite(Cplx v, const char* what)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::overflow_error(std::string(what) + ": non-finite result");
}

} // namespace detail

// Gamma via Stirling after an upward shift to |z| >= 15, reflection for Re z < 1/2.
inline Cplx gamma(Cplx z)
{
    if (detail::near_nonpositive_integer(z))
        throw pole_error("gamma: pole at non-positive integer");
    if (z.real() < 0.5)
        return pi / (std::sin(pi * z) * gamma(1.0 - z));
    Cplx prod = 1;
    Cplx w = z;
    while (std::abs(w) < 15) {
        prod *= w;
        w += 1.0;
    }
    Cplx v = std::exp(detail::lgamma_stirling(w)) / prod;
    detail::check_finite(v, "gamma");
    return v;
}

// Riemann zeta by Euler-Maclaurin, N = max(20, 2|Im s|), 8 Bernoulli terms;
// functional equation for Re s < 0.
inline Cplx zeta(Cplx s)
{
    if (std::abs(s - 1.0) < 1e-15) throw pole_error("zeta: pole at s = 1");
    if (s.real() < 0) {
        Cplx one_minus = 1.0 - s;
        return std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) *
               gamma(one_minus) * zeta(one_minus);
    }
    int N = std::max(20, static_cast<int>(std::ceil(2 * std::abs(s.imag()))));
    Cplx sum = 0;
    for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(double(n)));
    double dN = N;
    Cplx Ns = std::exp(-s * std::log(dN));
    sum += dN * Ns / (s - 1.0) + 0.5 * Ns;
    Cplx term = s * Ns / dN;
    for (int k = 1; k <= 8; ++k) {
        sum += detail::bernoulli_fact[k - 1] * term;
        term *= (s + double(2 * k - 1)) * (s + double(2 * k)) / (dN * dN);
    }
    return sum;
}

namespace detail {
inline Cplx lambda_raw(Cplx s)
{
    return std::exp(-0.5 * s * std::log(pi)) * gamma(0.5 * s) * zeta(s);
}
} // namespace detail

// Completed zeta pi^{-s/2} Gamma(s/2) zeta(s); evaluated on the right half, reflected otherwise.
inline Cplx lambda_complete(Cplx s)
{
    if (std::abs(s) < 1e-15 || std::abs(s - 1.0) < 1e-15)
        throw pole_error("lambda_complete: pole at s = 0 or 1");
    return s.real() >= 0.5 ? detail::lambda_raw(s) : detail::lambda_raw(1.0 - s);
}

// Truncated Laurent series sum_{k=kmin}^{kmax} c_k (s - anchor)^k.
class Jet {
public:
    Jet() : anchor_(0), kmin_(0), c_(1, Cplx(0)) {}
    Jet(Cplx anchor, int kmin, std::vector<Cplx> coeffs)
        : anchor_(anchor), kmin_(kmin), c_(std::move(coeffs))
    {
        if (c_.empty()) throw std::invalid_argument("Jet: empty coefficient list");
    }

    static Jet constant(Cplx anchor, Cplx v, int kmax)
    {
        std::vector<Cplx> c(kmax + 1, Cplx(0));
        c[0] = v;
        return Jet(anchor, 0, std::move(c));
    }
    static Jet zero(Cplx anchor, int kmin, int kmax)
    {
        return Jet(anchor, kmin, std::vector<Cplx>(kmax - kmin + 1, Cplx(0)));
    }
    // s itself
    static Jet identity(Cplx anchor, int kmax)
    {
        Jet j = constant(anchor, anchor, kmax);
        if (kmax >= 1) j.c_[1] = 1;
        return j;
    }
    // exp(a + b (s - anchor))
    static Jet exp_linear(Cplx anchor, Cplx a, Cplx b, int kmax)
    {
        std::vector<Cplx> c(kmax + 1);
        Cplx e = std::exp(a);
        Cplx bk = 1;
        double fact = 1;
        for (int k = 0; k <= kmax; ++k) {
            if (k > 0) {
                bk *= b;
                fact *= k;
            }
            c[k] = e * bk / fact;
        }
        return Jet(anchor, 0, std::move(c));
    }
    // t^{shift + (s - anchor)} with t > 0
    static Jet power(Cplx anchor, double t, Cplx shift, int kmax)
    {
        double L = std::log(t);
        return exp_linear(anchor, shift * L, L, kmax);
    }

    Cplx anchor() const { return anchor_; }
    int kmin() const { return kmin_; }
    int kmax() const { return kmin_ + int(c_.size()) - 1; }
    const std::vector<Cplx>& coeffs() const { return c_; }

    Cplx operator[](int k) const
    {
        if (k < kmin_) return 0;
        if (k > kmax()) throw std::out_of_range("Jet: order above truncation");
        return c_[k - kmin_];
    }
    Cplx residue() const { return (*this)[-1]; }
    Cplx value() const { return (*this)[0]; }
    // n-th derivative of the regular part at the anchor
    Cplx derivative(int n) const
    {
        double f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f * (*this)[n];
    }
    Cplx eval(Cplx h) const
    {
        Cplx acc = 0;
        for (int k = kmax(); k >= kmin_; --k) acc = acc * h + c_[k - kmin_];
        if (kmin_ < 0) acc *= std::pow(h, kmin_);
        else if (kmin_ > 0) acc *= std::pow(h, kmin_);
        return acc;
    }

    Jet truncated(int kmax_new) const
    {
        kmax_new = std::min(kmax_new, kmax());
        if (kmax_new < kmin_) return Jet(anchor_, kmax_new, {Cplx(0)});
        return Jet(anchor_, kmin_, std::vector<Cplx>(c_.begin(), c_.begin() + (kmax_new - kmin_ + 1)));
    }
    // drop leading coefficients that are exactly zero
    Jet normalized() const
    {
        std::size_t i = 0;
        while (i + 1 < c_.size() && c_[i] == Cplx(0)) ++i;
        return Jet(anchor_, kmin_ + int(i), std::vector<Cplx>(c_.begin() + i, c_.end()));
    }
    // g(s) = f(old_anchor + a (s - new_anchor)); coefficients c_k a^k
    Jet rescaled(Cplx new_anchor, Cplx a) const
    {
        std::vector<Cplx> c(c_);
        for (int k = kmin_; k <= kmax(); ++k) c[k - kmin_] *= std::pow(a, k);
        return Jet(new_anchor, kmin_, std::move(c));
    }
    // same coefficients multiplied by (s - anchor)^shift
    Jet shifted(int shift) const { return Jet(anchor_, kmin_ + shift, c_); }

    Jet& operator*=(Cplx a)
    {
        for (auto& v : c_) v *= a;
        return *this;
    }
    Jet& operator+=(const Jet& o)
    {
        check_anchor(o);
        int lo = std::min(kmin_, o.kmin_);
        int hi = std::min(kmax(), o.kmax());
        if (lo == kmin_ && hi == kmax()) {
            for (int k = std::max(lo, o.kmin_); k <= hi; ++k) c_[k - kmin_] += o.c_[k - o.kmin_];
            return *this;
        }
        std::vector<Cplx> c(hi - lo + 1, Cplx(0));
        for (int k = lo; k <= hi; ++k) c[k - lo] = (*this)[k] + o[k];
        kmin_ = lo;
        c_ = std::move(c);
        return *this;
    }
    Jet& operator-=(const Jet& o) { return *this += (-o); }
    Jet operator-() const
    {
        Jet r(*this);
        r *= -1.0;
        return r;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, Cplx b) { return a *= b; }
    friend Jet operator*(Cplx b, Jet a) { return a *= b; }
    friend Jet operator/(Jet a, Cplx b) { return a *= (1.0 / b); }
    friend Jet operator+(Jet a, Cplx b)
    {
        return a + Jet::constant(a.anchor(), b, std::max(0, a.kmax()));
    }
    friend Jet operator-(Jet a, Cplx b) { return a + (-b); }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        a.check_anchor(b);
        // relative precision: valid orders are kmin + min(len_a, len_b) - 1
        int kmin = a.kmin_ + b.kmin_;
        int len = int(std::min(a.c_.size(), b.c_.size()));
        std::vector<Cplx> c(len, Cplx(0));
        for (int i = 0; i < len; ++i)
            for (int j = 0; i + j < len; ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Jet(a.anchor_, kmin, std::move(c));
    }
    Jet inverse() const
    {
        Jet n = normalized();
        if (n.c_[0] == Cplx(0)) throw std::domain_error("Jet: inverse of zero jet");
        int len = int(n.c_.size());
        std::vector<Cplx> r(len, Cplx(0));
        r[0] = 1.0 / n.c_[0];
        for (int k = 1; k < len; ++k) {
            Cplx acc = 0;
            for (int j = 1; j <= k; ++j) acc += n.c_[j] * r[k - j];
            r[k] = -acc * r[0];
        }
        return Jet(anchor_, -n.kmin_, std::move(r));
    }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }

private:
    void check_anchor(const Jet& o) const
    {
        if (std::abs(anchor_ - o.anchor_) > 1e-13 * (1 + std::abs(anchor_)))
            throw std::invalid_argument("Jet: anchors differ");
    }

    Cplx anchor_;
    int kmin_;
    std::vector<Cplx> c_;
};

// Laurent coefficients kmin..kmax of f at anchor by the trapezoid rule on a circle.
// Throws if any listed singularity other than the anchor lies within 1.5 radius.
template <class F>
Jet contour_jet(F&& f, Cplx anchor, int kmin, int kmax, double radius = 0.05, int npts = 64,
                std::span<const Cplx> singularities = {})
{
    for (Cplx p : singularities) {
        double d = std::abs(p - anchor);
        if (d > 1e-12 * (1 + std::abs(anchor)) && d < 1.5 * radius)
            throw std::domain_error("contour_jet: radius encloses another singularity");
    }
    if (npts < 2 * (kmax - kmin + 1)) npts = 2 * (kmax - kmin + 1);
    std::vector<Cplx> vals(npts);
    for (int j = 0; j < npts; ++j) {
        double th = 2 * pi * (j + 0.5) / npts;
        vals[j] = f(anchor + radius * std::polar(1.0, th));
    }
    std::vector<Cplx> c(kmax - kmin + 1);
    for (int k = kmin; k <= kmax; ++k) {
        Cplx acc = 0;
        for (int j = 0; j < npts; ++j) {
            double th = 2 * pi * (j + 0.5) / npts;
            acc += vals[j] * std::polar(1.0, -k * th);
        }
        c[k - kmin] = acc / double(npts) * std::pow(radius, -k);
    }
    return Jet(anchor, kmin, std::move(c));
}

inline Jet lambda_complete_jet(Cplx s0, int kmax, double radius = 0.05, int npts = 64)
{
    const Cplx poles[] = {Cplx(0), Cplx(1)};
    bool at_pole = std::abs(s0) < 1e-12 || std::abs(s0 - 1.0) < 1e-12;
    return contour_jet([](Cplx s) { return lambda_complete(s); }, s0, at_pole ? -1 : 0, kmax,
                       radius, npts, poles);
}

// Jet of Lambda at any anchor: the polar part 1/(s-1) - 1/s is handled exactly and only
// the entire remainder goes through the contour, so anchors near 0 or 1 stay accurate.
inline Jet lambda_jet_split(Cplx s0, int kmax)
{
    auto entire = [](Cplx s) { return lambda_complete(s) + 1.0 / s - 1.0 / (s - 1.0); };
    double best_r = 0.1, best_gap = -1;
    for (double r : {0.1, 0.07, 0.13, 0.085, 0.115}) {
        double gap = std::min(std::abs(r - std::abs(s0)), std::abs(r - std::abs(s0 - 1.0)));
        if (gap > best_gap) {
            best_gap = gap;
            best_r = r;
        }
    }
    Jet j = contour_jet(entire, s0, 0, kmax, best_r, 64);
    bool at0 = std::abs(s0) < 1e-12, at1 = std::abs(s0 - 1.0) < 1e-12;
    int kmin = (at0 || at1) ? -1 : 0;
    std::vector<Cplx> c(kmax - kmin + 1, Cplx(0));
    for (int k = 0; k <= kmax; ++k) c[k - kmin] = j[k];
    // -1/s: at s0 = 0 a pure pole, otherwise sum_k -(-1)^k s0^{-k-1} h^k
    if (at0) c[0] += -1.0;
    else
        for (int k = 0; k <= kmax; ++k) c[k - kmin] += -std::pow(-1.0, k) * std::pow(s0, -k - 1);
    if (at1) c[0] += 1.0;
    else
        for (int k = 0; k <= kmax; ++k)
            c[k - kmin] += std::pow(-1.0, k) * std::pow(s0 - 1.0, -k - 1);
    return Jet(s0, kmin, std::move(c));
}

namespace detail {

// Trapezoid sums for d^k/dnu^k K_nu(y), k = 0..kmax, scaled by e^{y}; all integrands even in t.
inline std::vector<Cplx> bessel_k_scaled_trap(Cplx nu, double y, int kmax, double h, double tmax)
{
    std::vector<Cplx> acc(kmax + 1, Cplx(0));
    int n = int(std::ceil(tmax / h));
    for (int j = 0; j <= n; ++j) {
        double t = j * h;
        double w = (j == 0) ? 0.5 * h : h;
        double base = std::exp(-y * (std::cosh(t) - 1.0)) * w;
        if (base == 0) break;
        Cplx ch = std::cosh(nu * t), sh = std::sinh(nu * t);
        double tk = 1;
        for (int k = 0; k <= kmax; ++k) {
            acc[k] += base * tk * ((k % 2 == 0) ? ch : sh);
            tk *= t;
        }
    }
    return acc;
}

inline double bessel_tmax(Cplx nu, double y, int kmax)
{
    double a = std::abs(nu.real()) + kmax + 1;
    double t = std::asinh(a / y) + 1;
    while (y * (std::cosh(t) - 1.0) - a * t < 45) t += 0.25;
    return t;
}

} // namespace detail

// K_nu(y) and its first kmax derivatives in nu, by adaptive trapezoid halving.
inline std::vector<Cplx> bessel_k_derivs(Cplx nu, double y, int kmax, double rtol = 1e-13)
{
    if (!(y > 0)) throw std::domain_error("bessel_k: y must be positive");
    double tmax = detail::bessel_tmax(nu, y, kmax);
    double h = 0.5;
    auto prev = detail::bessel_k_scaled_trap(nu, y, kmax, h, tmax);
    for (int level = 0; level < 12; ++level) {
        h *= 0.5;
        auto cur = detail::bessel_k_scaled_trap(nu, y, kmax, h, tmax);
        bool ok = true;
        for (int k = 0; k <= kmax; ++k)
            if (std::abs(cur[k] - prev[k]) > rtol * std::max(std::abs(cur[k]), 1e-300)) ok = false;
        prev = std::move(cur);
        if (ok) break;
    }
    double ey = std::exp(-y);
    for (auto& v : prev) v *= ey;
    return prev;
}

inline Cplx bessel_k(Cplx nu, double y) { return bessel_k_derivs(nu, y, 0)[0]; }

// K_nu(n x1) nu-derivatives for n = 1..M on one shared t-grid (x1 = 2 pi y).
// Absolute accuracy relative to the n = 1 scale; used by Fourier expansions where tiny terms
// only need absolute precision.
inline std::vector<std::vector<Cplx>> bessel_k_family(Cplx nu, double x1, int kmax, int M,
                                                      double h = 0.08)
{
    double tmax = detail::bessel_tmax(nu, x1, kmax);
    int n = int(std::ceil(tmax / h));
    std::vector<double> base(n + 1), w(n + 1);
    std::vector<std::vector<Cplx>> fac(n + 1, std::vector<Cplx>(kmax + 1));
    for (int j = 0; j <= n; ++j) {
        double t = j * h;
        base[j] = std::exp(-x1 * (std::cosh(t) - 1.0));
        w[j] = (j == 0) ? 0.5 * h : h;
        Cplx ch = std::cosh(nu * t), sh = std::sinh(nu * t);
        double tk = 1;
        for (int k = 0; k <= kmax; ++k) {
            fac[j][k] = w[j] * tk * ((k % 2 == 0) ? ch : sh);
            tk *= t;
        }
    }
    std::vector<std::vector<Cplx>> out(M, std::vector<Cplx>(kmax + 1, Cplx(0)));
    std::vector<double> pw(n + 1, 1.0);
    double e1 = std::exp(-x1);
    double en = 1;
    for (int m = 1; m <= M; ++m) {
        en *= e1;
        for (int j = 0; j <= n; ++j) pw[j] *= base[j];
        if (en == 0) break;
        for (int j = 0; j <= n; ++j) {
            if (pw[j] < 1e-300) break;
            for (int k = 0; k <= kmax; ++k) out[m - 1][k] += pw[j] * fac[j][k];
        }
        for (int k = 0; k <= kmax; ++k) out[m - 1][k] *= en;
    }
    return out;
}

} // namespace pgl2reg
