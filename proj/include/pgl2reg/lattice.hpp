#pragma once

#include "complexfn.hpp"

#include <string>
#include <vector>

namespace pgl2reg {

enum class LatticeField { Q, Qi };

// How t acts on a complex slot: classical multiplies the coordinate by t (so f_c decays like t^{-2c}),
// idelic multiplies it by sqrt(t) so that |t|_C = t and the decay is t^{-c}.
enum class ComplexScaling { classical, idelic };

struct radius_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LatticeSpec {
    LatticeField field = LatticeField::Q;
    int m = 1;       // ideal (m), so alpha runs over (1/m) Z or (1/m) Z[i]
    double c = 3;
    int R = 0;       // enumeration radius in lattice units; 0 = choose by doubling
    ComplexScaling scaling = ComplexScaling::classical;
    double tail_rel_tol = 1e-10;

    int degree() const { return field == LatticeField::Q ? 1 : 2; }
    // |o/J|
    double ideal_norm() const { return field == LatticeField::Q ? m : double(m) * m; }
};

struct LatticeSum {
    double value;
    double tail_estimate; // included in value
    double tail_bound;    // bound on |true tail - tail_estimate|
    int radius;
};

namespace detail {

// sum_{n>N} n^{-c} by Euler-Maclaurin; err receives a bound on the omitted remainder
inline double power_tail_em(double c, double N, double& err)
{
    double v = std::pow(N, 1 - c) / (c - 1) - 0.5 * std::pow(N, -c) + c / 12.0 * std::pow(N, -c - 1) -
               c * (c + 1) * (c + 2) / 720.0 * std::pow(N, -c - 3);
    err = 2 * c * (c + 1) * (c + 2) * (c + 3) * (c + 4) / 30240.0 * std::pow(N, -c - 5);
    return v;
}

inline LatticeSum lattice_sum_q(const LatticeSpec& sp, double t, int N)
{
    double head = 0;
    for (int n = 1; n <= N; ++n) head += std::min(1.0, std::pow(t * n / sp.m, -sp.c));
    double err = 0;
    double tail = std::pow(sp.m / t, sp.c) * power_tail_em(sp.c, N, err);
    err *= std::pow(sp.m / t, sp.c);
    return {2 * (head + tail), 2 * tail, 2 * err, N};
}

// Gaussian integers z != 0 with |z| <= R; f = min(1, (tau |z| / m)^{-2c})
inline LatticeSum lattice_sum_qi(const LatticeSpec& sp, double tau, int R)
{
    double c = sp.c, m = sp.m;
    double R2 = double(R) * R;
    double head = 0;
    // one quadrant a >= 1, b >= 0, times 4
    for (int a = 1; a <= R; ++a) {
        double a2 = double(a) * a;
        for (int b = 0; a2 + double(b) * b <= R2; ++b) {
            double r2 = a2 + double(b) * b;
            double u = tau * tau * r2 / (m * m);
            head += u <= 1 ? 1.0 : std::pow(u, -c);
        }
    }
    head *= 4;
    double kappa = std::pow(m / tau, 2 * c);
    double tail = pi * kappa * std::pow(double(R), 2 - 2 * c) / (c - 1);
    // unit squares around lattice points: gradient term plus the boundary annulus
    double Rm = R - 1.0;
    double bound = 0.71 * 4 * pi * c * kappa * std::pow(Rm, 1 - 2 * c) / (2 * c - 1) +
                   2.84 * pi * (R + 1.0) * kappa * std::pow(Rm, -2 * c);
    return {head + tail, tail, bound, R};
}

} // namespace detail

// sum over alpha in J^{-1} - {0} of f_c(t sigma(alpha)), plus 1 if include_zero
inline LatticeSum lattice_sum(const LatticeSpec& sp, double t, bool include_zero = false)
{
    if (!(t > 0) || sp.m < 1 || !(sp.c > 1)) throw std::domain_error("lattice_sum: need t > 0, m >= 1, c > 1");
    double tau = t;
    if (sp.field == LatticeField::Qi && sp.scaling == ComplexScaling::idelic) tau = std::sqrt(t);
    // below this radius f_c is still 1
    int inner = int(std::ceil(sp.m / tau)) + 1;
    auto run = [&](int R) {
        LatticeSum s = sp.field == LatticeField::Q ? detail::lattice_sum_q(sp, tau, R) : detail::lattice_sum_qi(sp, tau, R);
        if (include_zero) s.value += 1;
        return s;
    };
    auto ok = [&](const LatticeSum& s) { return s.tail_bound <= sp.tail_rel_tol * s.value; };
    if (sp.R > 0) {
        if (sp.R < inner) throw radius_error("lattice_sum: radius inside the region where f_c = 1");
        LatticeSum s = run(sp.R);
        if (!ok(s)) throw radius_error("lattice_sum: radius " + std::to_string(sp.R) + " insufficient for the tail budget");
        return s;
    }
    int cap = sp.field == LatticeField::Q ? (1 << 24) : (1 << 13);
    for (int R = std::max(16, 2 * inner); R <= cap; R *= 2) {
        LatticeSum s = run(R);
        if (ok(s)) return s;
    }
    throw radius_error("lattice_sum: no radius up to the cap meets the tail budget");
}

struct LatticeRow {
    int m;
    double t;
    double sum;
    double bound;
    double ratio;
};

struct LatticeBoundReport {
    LatticeSpec spec;
    // part (1): no zero term, bound |o/J|^{3c} t^{-c}
    std::vector<LatticeRow> part1;
    double part1_constant = 0; // max ratio
    std::vector<std::pair<int, double>> part1_slopes; // per m, over the t grid
    // part (2): zero included; bound t^{-r} |o/J|^{e} (1 + t |o/J|^2 / sqrt r)^{rc}
    // as printed e = -1; the volume argument gives e = +1
    std::vector<LatticeRow> part2_printed, part2_volume;
    double part2_printed_constant = 0, part2_volume_constant = 0;
    std::vector<std::pair<int, double>> part2_slopes;
};

namespace detail {
inline double loglog_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    double mx = 0, my = 0;
    std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}
} // namespace detail

// Evaluate both parts of the bound over t_grid (part 1) and t_small (part 2) for each m.
inline LatticeBoundReport verify_lattice_bounds(LatticeSpec sp, const std::vector<double>& t_grid, const std::vector<int>& m_grid,
                                const std::vector<double>& t_small = {})
{
    LatticeBoundReport rep;
    rep.spec = sp;
    int r = sp.degree();
    for (int m : m_grid) {
        sp.m = m;
        double N = sp.ideal_norm();
        std::vector<double> sums;
        for (double t : t_grid) {
            double s = lattice_sum(sp, t, false).value;
            double b = std::pow(N, 3 * sp.c) * std::pow(t, -sp.c);
            rep.part1.push_back({m, t, s, b, s / b});
            rep.part1_constant = std::max(rep.part1_constant, s / b);
            sums.push_back(s);
        }
        if (t_grid.size() >= 2) rep.part1_slopes.push_back({m, detail::loglog_fit(t_grid, sums)});
        if (t_small.empty()) continue;
        sums.clear();
        for (double t : t_small) {
            double s = lattice_sum(sp, t, true).value;
            double common = std::pow(t, -r) * std::pow(1 + t * N * N / std::sqrt(double(r)), r * sp.c);
            double bp = common / N, bv = common * N;
            rep.part2_printed.push_back({m, t, s, bp, s / bp});
            rep.part2_volume.push_back({m, t, s, bv, s / bv});
            rep.part2_printed_constant = std::max(rep.part2_printed_constant, s / bp);
            rep.part2_volume_constant = std::max(rep.part2_volume_constant, s / bv);
            sums.push_back(s);
        }
        if (t_small.size() >= 2) rep.part2_slopes.push_back({m, detail::loglog_fit(t_small, sums)});
    }
    return rep;
}

} // namespace pgl2reg
