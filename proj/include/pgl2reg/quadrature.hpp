#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <vector>

namespace pgl2reg {

struct QuadNode {
    double x, w;
};

namespace detail {
template <unsigned N>
void append_gauss(std::vector<QuadNode>& out, double a, double b)
{
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0) {
            out.push_back({mid, half * ws[i]});
            continue;
        }
        out.push_back({mid - half * xs[i], half * ws[i]});
        out.push_back({mid + half * xs[i], half * ws[i]});
    }
}
} // namespace detail

// Composite Gauss-Legendre on [a, b] with panels of length <= panel (order 20 or 30).
inline std::vector<QuadNode> gauss_panels(double a, double b, double panel, int order = 20)
{
    std::vector<QuadNode> out;
    if (!(b > a)) return out;
    int n = std::max(1, int(std::ceil((b - a) / panel - 1e-12)));
    double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
        double lo = a + i * h, hi = (i + 1 == n) ? b : a + (i + 1) * h;
        if (order >= 30) detail::append_gauss<30>(out, lo, hi);
        else detail::append_gauss<20>(out, lo, hi);
    }
    return out;
}

} // namespace pgl2reg
