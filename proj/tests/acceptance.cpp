// One PASS/FAIL line per acceptance criterion. Library suites are combined with checks
// against the independent references in oracles.hpp.

#include "oracles.hpp"
#include "pgl2reg/pgl2reg.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <set>
#include <string>

using namespace pgl2reg;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            note += (note.empty() ? "" : "; ") + what;
        }
    }
};

const SuiteEntry& suite(const std::string& name)
{
    for (const auto& e : suite_registry())
        if (e.name == name) return e;
    throw std::invalid_argument("no suite " + name);
}

void require_suite(Outcome& out, const std::string& name, const SuiteOptions& o)
{
    Report r = run_suite(suite(name), o);
    if (!r.error.empty()) out.require(false, name + " threw: " + r.error);
    for (const auto& rec : r.records) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s:%s computed %.12g expected %.12g", name.c_str(), rec.id.c_str(),
                      rec.computed, rec.expected);
        out.require(rec.pass, buf);
    }
}

// lambda_F(s) = Lambda(1+2s) / Lambda(2+2s) for real s from boost; the even and odd parts
// around 0 give the constant and residue, Richardson removes the eps^2 term
void lambda_F_oracle(double& residue, double& constant)
{
    auto lf = [](double s) { return oracle::lambda_real(1 + 2 * s) / oracle::lambda_real(2 + 2 * s); };
    auto parts = [&](double e, double& odd, double& even) {
        double a = lf(e), b = lf(-e);
        odd = 0.5 * e * (a - b);
        even = 0.5 * (a + b);
    };
    double e = 1e-3, o1, e1, o2, e2;
    parts(e, o1, e1);
    parts(e / 2, o2, e2);
    residue = (4 * o2 - o1) / 3;
    constant = (4 * e2 - e1) / 3;
}

Outcome criterion1(const SuiteOptions& o)
{
    Outcome out;
    Jet L = lambda_jet(1);
    double res, c0;
    lambda_F_oracle(res, c0);
    out.require(std::abs(L.residue().real() - 3 / oracle::pi) <= 1e-9, "residue");
    out.require(std::abs(L[0].real() - lambda0_closed_form()) <= 1e-9, "constant vs closed form");
    out.require(std::abs(res - 3 / oracle::pi) <= 1e-8, "oracle residue");
    out.require(std::abs(c0 - L[0].real()) <= 1e-8, "oracle constant");
    require_suite(out, "constants", o);
    return out;
}

Outcome criterion2(const SuiteOptions& o)
{
    Outcome out;
    auto v = volume_pgl2();
    out.require(std::abs(v.closed - oracle::pi / 3) <= 1e-9, "closed");
    out.require(std::abs(v.via_lambda - oracle::pi / 3) <= 1e-9, "zeta*/lambda");
    // 2 zeta(2) / pi from boost
    out.require(std::abs(2 * boost::math::zeta(2.0) / oracle::pi - oracle::pi / 3) <= 1e-12, "boost closed form");
    AutomorphicFn one{[](Point) { return Cplx(1); }, {{{1.0, -0.5, 0}}}, "1"};
    RegEngine e(one, 2.0);
    out.require(std::abs(reg_integral(e).value.real() - oracle::pi / 3) <= 1e-4, "quadrature");
    (void)o;
    return out;
}

Outcome criterion3(const SuiteOptions& o)
{
    Outcome out;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> re(-3, 4), im(-20, 20);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        Cplx s(re(rng), im(rng));
        Cplx a = lambda_complete(s), b = lambda_complete(1.0 - s);
        worst = std::max(worst, std::abs(a - b) / std::abs(a));
    }
    out.require(worst <= 1e-10, "functional equation " + std::to_string(worst));
    double dev = 0;
    for (double s : {1.5, 2.5, 3.7, -0.6, 0.35}) dev = std::max(dev, std::abs(lambda_complete(s).real() / oracle::lambda_real(s) - 1));
    out.require(dev <= 1e-10, "vs boost " + std::to_string(dev));
    out.require(std::abs(lambda_jet_split(0.0, 1).residue().real() + 1) <= 1e-9, "residue at 0");
    out.require(std::abs(lambda_jet_split(1.0, 1).residue().real() - 1) <= 1e-9, "residue at 1");
    return out;
}

Outcome criterion4(const SuiteOptions& o)
{
    Outcome out;
    const double pts[5][3] = {{1.3, 0.3, 1.1}, {0.8, -0.2, 0.9}, {0.65, 0.45, 1.5}, {1.0, 0.1, 2.5}, {2.0, -0.37, 0.95}};
    double worst = 0;
    for (auto& p : pts) {
        double ref = oracle::epstein_eisenstein(0.5 + p[0], p[1], p[2]);
        double v = eval({p[0], 0, Variant::plain}, Point{p[1], p[2]}).real();
        worst = std::max(worst, std::abs(v - ref) / std::abs(ref));
    }
    out.require(worst <= 1e-8, "Epstein oracle " + std::to_string(worst));
    require_suite(out, "eisenstein", o);
    return out;
}

Outcome criterion6(const SuiteOptions& o)
{
    Outcome out;
    require_suite(out, "fundamental-identity", o);
    RegEngine e(delta_square(), 2.0);
    for (double s : {2.5, 3.0}) {
        double ref = oracle::delta_square_rstar(s);
        double d = std::abs(e.R_star(s, 0)[0].real() / ref - 1);
        out.require(d <= 1e-6, "Delta^2 R* vs Dirichlet series at s=" + std::to_string(s));
    }
    return out;
}

Outcome criterion8(const SuiteOptions& o)
{
    Outcome out;
    for (int N = 2; N <= 12; ++N) {
        auto en = enumerate_cosets_r2(N);
        out.require(en.count == oracle::p1_count(N), "count vs P^1(Z/N) at N=" + std::to_string(N));
    }
    require_suite(out, "coset", o);
    return out;
}

Outcome suite_only(const std::string& name, const SuiteOptions& o)
{
    Outcome out;
    require_suite(out, name, o);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> expected_fail;
    for (int i = 1; i < argc; ++i)
        if (!std::strcmp(argv[i], "--expect-fail") && i + 1 < argc) expected_fail.insert(std::atoi(argv[++i]));

    SuiteOptions o;
    struct Crit {
        int id;
        double budget; // seconds
        std::function<Outcome()> run;
    };
    std::vector<Crit> crits = {
        {1, 2, [&] { return criterion1(o); }},
        {2, 30, [&] { return criterion2(o); }},
        {3, 1e9, [&] { return criterion3(o); }},
        {4, 1e9, [&] { return criterion4(o); }},
        {5, 1e9, [&] { return suite_only("hecke", o); }},
        {6, 300, [&] { return criterion6(o); }},
        {7, 600, [&] { return suite_only("products", o); }},
        {8, 60, [&] { return criterion8(o); }},
        {9, 1e9, [&] { return suite_only("padic", o); }},
        {10, 1e9, [&] { return suite_only("archimedean", o); }},
        {11, 1e9, [&] { return suite_only("lattice", o); }},
    };
    std::set<int> failed;
    for (auto& c : crits) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& ex) {
            out.require(false, std::string("exception: ") + ex.what());
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt > c.budget) out.require(false, "runtime " + std::to_string(dt) + " s over budget");
        if (!out.pass) failed.insert(c.id);
        std::printf("criterion %d: %s (%.2f s)%s%s\n", c.id, out.pass ? "PASS" : "FAIL", dt, out.note.empty() ? "" : " ",
                    out.note.c_str());
        std::fflush(stdout);
    }
    if (!expected_fail.empty()) {
        bool match = failed == expected_fail;
        std::printf("expected failures: %s\n", match ? "match" : "MISMATCH");
        return match ? 0 : 1;
    }
    return failed.empty() ? 0 : 1;
}
