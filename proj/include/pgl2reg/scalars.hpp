#pragma once

#include "complexfn.hpp"

#include <array>

namespace pgl2reg {

// Lambda(a + b s) as a jet in s at s0.
inline Jet lambda_affine_jet(Cplx a, Cplx b, Cplx s0, int kmax)
{
    return lambda_jet_split(a + b * s0, kmax).rescaled(s0, b);
}

// lambda_F(s) = Lambda(-2s) / Lambda(2+2s)
inline Jet lambda_F_jet(Cplx s0, int kmax)
{
    Jet num = lambda_affine_jet(0.0, -2.0, s0, kmax + 2);
    Jet den = lambda_affine_jet(2.0, 2.0, s0, kmax + 2);
    return (num / den).truncated(kmax);
}

inline Jet lambda_jet(int order_max) { return lambda_F_jet(0.0, order_max); }

// m(s) = Lambda(1-2s)/Lambda(1+2s), written as Lambda(2s)/Lambda(1+2s)
inline Jet m_jet(Cplx s0, int kmax)
{
    Jet num = lambda_affine_jet(0.0, 2.0, s0, kmax + 2);
    Jet den = lambda_affine_jet(1.0, 2.0, s0, kmax + 2);
    return (num / den).truncated(kmax);
}

inline Cplx m_scalar(Cplx s) { return lambda_complete(2.0 * s) / lambda_complete(1.0 + 2.0 * s); }

struct ZetaConstants {
    double zeta_star = 1.0;
    Jet lambda_jet;
    double volume = 0;
    int d_F = 1, r1 = 1, r2 = 0;
};

inline ZetaConstants zeta_constants(int order_max = 3)
{
    ZetaConstants z;
    z.lambda_jet = lambda_jet(order_max);
    z.volume = z.zeta_star / z.lambda_jet.residue().real();
    return z;
}

// lambda^{(-1)}(0) via Lambda^{(-1)}(0) and via Lambda^{(-1)}(1)
struct LambdaResidueForms {
    double via_zero, via_one;
};

inline LambdaResidueForms lambda_residue_forms()
{
    Cplx L2 = lambda_complete(2.0);
    Jet j0 = lambda_jet_split(0.0, 1), j1 = lambda_jet_split(1.0, 1);
    return {(-j0.residue() / (2.0 * L2)).real(), (j1.residue() / (2.0 * L2)).real()};
}

// lambda^{(0)}(0) = Lambda'(2) Lambda^{(-1)}(0) / Lambda(2)^2 + Lambda^{(0)}(0) / Lambda(2)
inline double lambda0_closed_form()
{
    Jet j2 = lambda_jet_split(2.0, 1), j0 = lambda_jet_split(0.0, 1);
    Cplx L2 = j2[0];
    return (j2[1] * j0.residue() / (L2 * L2) + j0[0] / L2).real();
}

struct VolumeForms {
    double closed;     // 2 pi^{-1} zeta(2)
    double via_lambda; // zeta* / lambda^{(-1)}(0)
};

inline VolumeForms volume_pgl2()
{
    double closed = 2.0 / pi * zeta(2.0).real();
    double via = 1.0 / lambda_jet(0).residue().real();
    return {closed, via};
}

struct FunctionalsBC {
    double C, B;
};

inline FunctionalsBC functionals_BC() { return {1.0, lambda_jet_split(0.0, 0)[0].real()}; }

// Eigenvalue of T(p) on E(1/2 + s) in the recentred normalization, as a jet in s.
inline Jet hecke_scalar(int p, Cplx s0, int order_max)
{
    double L = std::log(double(p));
    double S = std::sqrt(double(p)) + 1.0 / std::sqrt(double(p));
    Jet a = Jet::exp_linear(s0, (0.5 + s0) * L, L, order_max);
    Jet b = Jet::exp_linear(s0, -(0.5 + s0) * L, -L, order_max);
    return (a + b) / Cplx(S);
}

inline Cplx hecke_eigenvalue(int p, Cplx s)
{
    double S = std::sqrt(double(p)) + 1.0 / std::sqrt(double(p));
    return (std::pow(double(p), s) + std::pow(double(p), -s)) / S;
}

struct MVScalars {
    Cplx mu1, c0, c1;
};

inline MVScalars mv_scalars(double q, Cplx s)
{
    double S = std::sqrt(q) + 1.0 / std::sqrt(q);
    auto qp = [q](Cplx e) { return std::pow(q, e); };
    Cplx mu1 = qp(-2.0 * s) * (1.0 - qp(-(1.0 - 2.0 * s))) / (1.0 + qp(-(1.0 + 2.0 * s)));
    Cplx c1 = (qp(s + 0.5) - qp(-(s + 0.5))) / S;
    Cplx c0 = (qp(s) + qp(-s)) / S;
    return {mu1, c0, c1};
}

// lambda^{(-1)}(0) c_0'(-1/2)
inline double mv_defect(double q)
{
    double S = std::sqrt(q) + 1.0 / std::sqrt(q);
    double dc0 = std::log(q) * (1.0 / std::sqrt(q) - std::sqrt(q)) / S;
    return lambda_jet(0).residue().real() * dc0;
}

// Principal part at s = 1/2 of the continuous-spectrum contribution, from the two traces.
inline Jet assemble_puzzle(Cplx trace0, Cplx traceM)
{
    const double zs = 1.0;
    FunctionalsBC bc = functionals_BC();
    Cplx pre = -2.0 * trace0 / zs;
    Cplx c2 = pre * (zs * zs * bc.C / 2.0);
    Cplx c1 = pre * (zs * bc.B) + (zs * zs * bc.C / 2.0) * traceM / zs;
    return Jet(0.5, -2, {c2, c1});
}

// Same principal part through the intermediate display in Lambda-data
// (before the B, C simplification); used as a cross-check.
inline Jet assemble_puzzle_unsimplified(Cplx trace0, Cplx traceM)
{
    Jet j0 = lambda_jet_split(0.0, 1), j2 = lambda_jet_split(2.0, 1);
    Cplx L2 = j2[0];
    Cplx lam_m1 = lambda_jet(1).residue(), lam_0 = lambda_jet(1)[0];
    // D = 1, r2 = 0: prefactor Lambda(2)
    Cplx c2 = L2 * trace0 * (j0.residue() / L2);
    Cplx c1 = L2 * (trace0 * (-2.0 * lam_0 + j0.residue() / L2 * (2.0 * j2[1] / L2)) + lam_m1 * traceM);
    return Jet(0.5, -2, {c2, c1});
}

} // namespace pgl2reg
