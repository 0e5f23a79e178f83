#pragma once

#include "regint.hpp"

#include <array>
#include <string>
#include <vector>

namespace pgl2reg {

// Derivatives m_k = m^{(k)}(0) of m(s) = Lambda(1-2s)/Lambda(1+2s).
struct MScalarJet {
    std::array<Cplx, 4> m{};

    static MScalarJet at_zero()
    {
        Jet j = m_jet(0.0, 3);
        MScalarJet r;
        for (int k = 0; k < 4; ++k) r.m[k] = j.derivative(k);
        return r;
    }

    // max over orders 1..3 of the Taylor coefficients of m(s) m(-s) - 1
    double reflection_defect() const
    {
        std::vector<Cplx> a(4), b(4);
        double fact = 1;
        for (int k = 0; k < 4; ++k) {
            if (k > 0) fact *= k;
            a[k] = m[k] / fact;
            b[k] = (k % 2 ? -1.0 : 1.0) * a[k];
        }
        Jet p = Jet(0.0, 0, a) * Jet(0.0, 0, b);
        double worst = std::abs(p[0] - 1.0);
        for (int k = 1; k < 4; ++k) worst = std::max(worst, std::abs(p[k]));
        return worst;
    }
};

// Laurent data of lambda_F at 0 as derivatives: lambda^{(-1)}(0) (residue) and lambda^{(n)}(0).
struct LambdaData {
    double residue;
    std::array<double, 4> d;

    static LambdaData at_zero()
    {
        Jet j = lambda_jet(3);
        LambdaData r{j.residue().real(), {}};
        for (int n = 0; n < 4; ++n) r.d[n] = j.derivative(n).real();
        return r;
    }
};

// Product of two derivative-of-E(0) series at the unitary point, spherical case, as printed:
// 4 l2/l(1 + m1) + (l0/l) m1^2 - m3/3 - m2 m1
inline Cplx rip_unitary_rhs(const MScalarJet& M, const LambdaData& L)
{
    double a = L.d[2] / L.residue, b = L.d[0] / L.residue;
    return 4.0 * a * (1.0 + M.m[1]) + b * M.m[1] * M.m[1] - M.m[3] / 3.0 - M.m[2] * M.m[1];
}
inline Cplx rip_unitary_rhs() { return rip_unitary_rhs(MScalarJet::at_zero(), LambdaData::at_zero()); }

// Limit of the deformation identity carried out in full:
// 4 l2/l + 4 l1 m1/l + (l0/l) m1^2 - m3/3 - m1 m2/2
inline Cplx rip_unitary_rhs_corrected(const MScalarJet& M, const LambdaData& L)
{
    double l = L.residue;
    return 4.0 * L.d[2] / l + 4.0 * L.d[1] / l * M.m[1] + L.d[0] / l * M.m[1] * M.m[1] - M.m[3] / 3.0 -
           M.m[1] * M.m[2] / 2.0;
}
inline Cplx rip_unitary_rhs_corrected()
{
    return rip_unitary_rhs_corrected(MScalarJet::at_zero(), LambdaData::at_zero());
}

inline AutomorphicFn derivative_square_at_zero()
{
    return eisenstein_product({{0.0, 1, false}, {0.0, 1, false}}, "E'(0)^2");
}

inline RegIntResult rip_unitary_lhs(double T = 2.0, const QuadratureSpec& q = {})
{
    RegEngine eng(derivative_square_at_zero(), T, q);
    eng.check_profile();
    return reg_integral(eng);
}

struct CheckItem {
    std::string name;
    Cplx value;
    Cplx expected;
    double abs_err;
};

inline CheckItem reg_check(const std::string& name, const AutomorphicFn& phi, Cplx expected, double T,
                           const QuadratureSpec& q)
{
    RegEngine eng(phi, T, q);
    eng.check_profile();
    Cplx v = reg_integral(eng).value;
    return {name, v, expected, std::abs(v - expected)};
}

// Vanishing products and the closed form for a single regularizing series, at a small s != 0.
inline std::vector<CheckItem> vanishing_checks(double s = 0.07, double T = 2.0, const QuadratureSpec& q = {})
{
    double lam = lambda_jet(0).residue().real();
    std::vector<CheckItem> out;
    out.push_back(reg_check("E(s) E'(0)", eisenstein_product({{s, 0, false}, {0.0, 1, false}}), 0.0, T, q));
    out.push_back(
        reg_check("Ereg(1/2+s) Ereg(1/2)", eisenstein_product({{0.5 + s, 0, true}, {0.5, 0, true}}), 0.0, T, q));
    out.push_back(reg_check("Ereg(1/2+s)", eisenstein_product({{0.5 + s, 0, true}}),
                            -lambda_F_jet(s, 0)[0] / lam, T, q));
    return out;
}

struct DeformationPoint {
    double s;
    Cplx engine;    // regularized integral of E(s) E'(0)
    Cplx subtract;  // minus the regularized integral of the subtracted E^reg combination
    Cplx value;     // engine / s + subtract
};

// s^{-1} reg(E(s) E'(0)) - reg(E^reg combination), approaching the unitary product as s -> 0
inline std::vector<DeformationPoint> deformation_sequence(const std::vector<double>& svals, double T = 2.0,
                                                          const QuadratureSpec& q = {})
{
    MScalarJet M = MScalarJet::at_zero();
    double lam = lambda_jet(0).residue().real();
    std::vector<DeformationPoint> out;
    for (double s : svals) {
        RegEngine eng(eisenstein_product({{s, 0, false}, {0.0, 1, false}}), T, q);
        Cplx e = reg_integral(eng).value;
        Jet lp = lambda_F_jet(s, 1), lm = lambda_F_jet(-s, 1);
        Cplx ms = m_scalar(s);
        Cplx d = (2.0 * lp.derivative(1) + 2.0 * lm.derivative(1) * ms + lp[0] * M.m[1] + lm[0] * ms * M.m[1]) /
                 (s * lam);
        out.push_back({s, e, d, e / s + d});
    }
    return out;
}

// Case of two distinct characters: P_K pairings factor as P0 times scalar intertwining data,
// P(M^{(a)} f1 . M^{(b)} f2) = j1[a] j2[b] P0.
struct Case1Values {
    Cplx first;  // pi_2 = pi(xi_1^{-1}, xi_2^{-1})
    Cplx second; // pi_2 = pi(xi_2^{-1}, xi_1^{-1})
};

inline Case1Values rip_case1_formula(const MScalarJet& j1, const MScalarJet& j2, Cplx P0, const LambdaData& L)
{
    double r = L.d[0] / L.residue;
    Case1Values v;
    v.first = 2.0 * r * P0 - j1.m[1] * j2.m[0] * P0;
    v.second = r * (j2.m[0] * P0 + j1.m[0] * P0) - j1.m[1] * P0;
    return v;
}

} // namespace pgl2reg
