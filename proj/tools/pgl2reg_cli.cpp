#include "pgl2reg/pgl2reg.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

using json = nlohmann::json;
using namespace pgl2reg;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 12 significant digits
double sig12(double x)
{
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

json cjson(Cplx z) { return json{{"re", sig12(z.real())}, {"im", sig12(z.imag())}}; }

// "a", "a+bi", "a-bi", "bi", "re,im"
Cplx parse_complex(std::string s)
{
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw usage_error("empty complex number");
    try {
        if (auto c = s.find(','); c != std::string::npos) return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
        static const std::regex re(R"(^([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)?(?:([+-]?[0-9.]*(?:[eE][+-]?[0-9]+)?)i)?$)");
        std::smatch m;
        if (!std::regex_match(s, m, re) || (!m[1].matched && !m[2].matched)) throw usage_error("");
        double a = m[1].matched ? std::stod(m[1]) : 0, b = 0;
        if (m[2].matched) {
            std::string t = m[2];
            b = (t.empty() || t == "+") ? 1 : (t == "-" ? -1 : std::stod(t));
        }
        return {a, b};
    } catch (const std::exception&) {
        throw usage_error("cannot parse complex number '" + s + "'");
    }
}

Point parse_point(const std::string& s)
{
    Cplx z = parse_complex(s);
    if (!(z.imag() > 0)) throw usage_error("point must lie in the upper half plane");
    return {z.real(), z.imag()};
}

// "1 0; 1 1" or "1,0;1,1"
IntMat parse_matrix(std::string s, int r)
{
    std::replace(s.begin(), s.end(), ',', ' ');
    std::replace(s.begin(), s.end(), ';', ' ');
    std::istringstream in(s);
    std::vector<long long> v;
    long long x;
    while (in >> x) v.push_back(x);
    if (!in.eof() || int(v.size()) != r * r)
        throw usage_error("matrix needs " + std::to_string(r * r) + " integer entries");
    return IntMat(r, v);
}

json mat_json(const IntMat& m)
{
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j).convert_to<long long>());
        rows.push_back(row);
    }
    return rows;
}

json report_json(const Report& r)
{
    json recs = json::array();
    for (const auto& x : r.records)
        recs.push_back({{"id", x.id},
                        {"ref", x.ref},
                        {"computed", sig12(x.computed)},
                        {"expected", sig12(x.expected)},
                        {"tolerance", x.tolerance},
                        {"pass", x.pass}});
    json j{{"suite", r.suite}, {"records", recs}, {"pass", r.pass}, {"wall_time", r.wall_time}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

AutomorphicFn named_phi(const std::string& name)
{
    if (name == "one" || name == "1") return {[](Point) { return Cplx(1); }, {{{1.0, -0.5, 0}}}, "1"};
    if (name == "ee") return eisenstein_product({{0.3, 0, false}, {Cplx(0, 0.17), 0, false}}, "E(0.3)E(0.17i)");
    if (name == "delta2") return delta_square();
    if (name == "dE0sq") return derivative_square_at_zero();
    if (name == "ereg") return eisenstein_product({{0.5, 0, true}}, "Ereg(1/2)");
    throw usage_error("unknown --phi '" + name + "' (one, ee, delta2, dE0sq, ereg)");
}

struct Globals {
    std::string config, out;
    double tol = 1;
    std::uint64_t seed = 20240601;
    int jobs = 1;
    std::vector<std::string> suites;
    std::map<std::string, double> suite_tol;
};

// values given on the command line win over the config file
void load_config(Globals& g, const std::function<bool(const std::string&)>& on_cli)
{
    if (g.config.empty()) return;
    std::ifstream in(g.config);
    if (!in) throw usage_error("cannot open config " + g.config);
    json c;
    try {
        c = json::parse(in);
        if (c.contains("tol") && !on_cli("--tol")) g.tol = c.at("tol").get<double>();
        if (c.contains("seed") && !on_cli("--seed")) g.seed = c.at("seed").get<std::uint64_t>();
        if (c.contains("out") && g.out.empty()) g.out = c.at("out").get<std::string>();
        if (c.contains("jobs") && !on_cli("--jobs")) g.jobs = c.at("jobs").get<int>();
        if (c.contains("suites") && !on_cli("--suite")) g.suites = c.at("suites").get<std::vector<std::string>>();
        if (c.contains("tolerances")) g.suite_tol = c.at("tolerances").get<std::map<std::string, double>>();
    } catch (const json::exception& e) {
        throw usage_error(std::string("config: ") + e.what());
    }
}

void validate(const Globals& g)
{
    if (!(g.tol > 0) || !std::isfinite(g.tol)) throw usage_error("--tol must be a positive number");
    for (auto& [k, v] : g.suite_tol) {
        if (!(v > 0)) throw usage_error("tolerance for suite '" + k + "' must be positive");
        bool known = false;
        for (auto& e : suite_registry()) known = known || e.name == k;
        if (!known) throw usage_error("tolerance given for unknown suite '" + k + "'");
    }
    if (g.jobs < 1) throw usage_error("--jobs must be >= 1");
}

SuiteOptions options_for(const Globals& g, const std::string& suite)
{
    SuiteOptions o;
    o.seed = g.seed;
    o.tol_scale = g.tol;
    if (auto it = g.suite_tol.find(suite); it != g.suite_tol.end()) o.tol_scale *= it->second;
    return o;
}

int emit(const Globals& g, const json& j, bool pass)
{
    std::string text = j.dump(2);
    std::cout << text << "\n";
    if (!g.out.empty()) {
        std::ofstream f(g.out);
        if (!f) throw usage_error("cannot write " + g.out);
        f << text << "\n";
    }
    return pass ? 0 : 1;
}

void write_tables(const Globals& g, const std::vector<Report>& reps)
{
    if (g.out.empty()) return;
    std::string stem = g.out;
    if (auto d = stem.rfind(".json"); d != std::string::npos && d + 5 == stem.size()) stem.resize(d);
    for (const auto& r : reps)
        for (const auto& t : r.tables) {
            std::ofstream f(stem + "_" + t.name + ".csv");
            for (std::size_t i = 0; i < t.columns.size(); ++i) f << (i ? "," : "") << t.columns[i];
            f << "\n";
            char buf[64];
            for (const auto& row : t.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    std::snprintf(buf, sizeof buf, "%.12g", row[i]);
                    f << (i ? "," : "") << buf;
                }
                f << "\n";
            }
        }
}

std::vector<Report> run_suites(const Globals& g, std::vector<std::string> names)
{
    const auto& reg = suite_registry();
    if (names.empty())
        for (auto& e : reg) names.push_back(e.name);
    std::vector<const SuiteEntry*> sel;
    for (auto& n : names) {
        auto it = std::find_if(reg.begin(), reg.end(), [&](const SuiteEntry& e) { return e.name == n; });
        if (it == reg.end()) throw usage_error("unknown suite '" + n + "'");
        sel.push_back(&*it);
    }
    std::vector<Report> out(sel.size());
    if (g.jobs <= 1) {
        for (std::size_t i = 0; i < sel.size(); ++i) out[i] = run_suite(*sel[i], options_for(g, sel[i]->name));
        return out;
    }
    // at most jobs suites in flight; results land in their own slots
    std::size_t next = 0;
    std::vector<std::pair<std::size_t, std::future<Report>>> running;
    while (next < sel.size() || !running.empty()) {
        while (next < sel.size() && int(running.size()) < g.jobs) {
            const SuiteEntry* e = sel[next];
            running.emplace_back(next, std::async(std::launch::async, [e, o = options_for(g, e->name)] {
                                     return run_suite(*e, o);
                                 }));
            ++next;
        }
        out[running.front().first] = running.front().second.get();
        running.erase(running.begin());
    }
    return out;
}

int single_suite(const Globals& g, Report r)
{
    write_tables(g, {r});
    return emit(g, report_json(r), r.pass);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Regularized integrals on PGL2 over Q: evaluation and verification"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "JSON config file");
    app.add_option("--tol", g.tol, "global tolerance scale (multiplies every default tolerance)");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out", g.out, "write the JSON report here (CSV side tables next to it)");
    app.add_option("--jobs", g.jobs, "suites run in parallel");

    auto* c_const = app.add_subcommand("constants", "print the scalar constants");

    auto* c_eis = app.add_subcommand("eisenstein", "Eisenstein series");
    auto* c_eval = c_eis->add_subcommand("eval", "evaluate E at a point");
    c_eis->require_subcommand(1);
    std::string s_str = "0.3", z_str = "0.1+1.2i", variant = "plain";
    int deriv = 0;
    c_eval->add_option("--s", s_str, "spectral parameter (a, a+bi, or re,im)");
    c_eval->add_option("--z", z_str, "point x+yi in the upper half plane");
    c_eval->add_option("--deriv", deriv, "derivative order in s")->check(CLI::Range(0, 8));
    c_eval->add_option("--variant", variant, "plain|star|reg")->check(CLI::IsMember({"plain", "star", "reg"}));

    auto* c_verify = app.add_subcommand("verify", "run one identity check");
    c_verify->require_subcommand(1);
    auto* c_fi = c_verify->add_subcommand("fundamental-identity", "two-sided check of the fundamental identity");
    std::string phi_name = "ee";
    std::vector<std::string> s_list;
    std::vector<double> T_list = {2, 4};
    c_fi->add_option("--phi", phi_name, "one | ee | delta2");
    c_fi->add_option("--s", s_list, "s values");
    c_fi->add_option("--T", T_list, "truncation heights");
    auto* c_hecke = c_verify->add_subcommand("hecke", "Hecke eigenvalue checks");
    auto* c_prod = c_verify->add_subcommand("products", "regularized integrals of products");

    auto* c_reg = app.add_subcommand("reg-int", "regularized integral of a named function");
    std::string reg_phi = "one";
    double reg_T = 2;
    c_reg->add_option("--phi", reg_phi, "one | ee | delta2 | dE0sq | ereg");
    c_reg->add_option("--T", reg_T, "truncation height");

    auto* c_coset = app.add_subcommand("coset", "normal-form coset representative");
    int rank = 2;
    long long N = 2;
    std::string mat;
    c_coset->add_option("--r", rank, "matrix size")->check(CLI::Range(2, 8));
    c_coset->add_option("--N", N, "level")->check(CLI::Range(2LL, 1000000LL));
    c_coset->add_option("--matrix", mat, "rows separated by ';'")->required();
    bool lower = false;
    c_coset->add_flag("--lower", lower, "use the lower-triangular congruence group");

    auto* c_padic = app.add_subcommand("padic", "p-adic Fourier calculus");
    c_padic->require_subcommand(1);
    auto* c_pv = c_padic->add_subcommand("verify", "index identities and Whittaker values");
    int prime = 3, trials = 200;
    c_pv->add_option("--p", prime, "prime")->check(CLI::IsMember({2, 3, 5, 7}));
    c_pv->add_option("--trials", trials, "random functions per shape")->check(CLI::Range(1, 100000));

    auto* c_wh = app.add_subcommand("whittaker", "archimedean Whittaker function, two ways");
    std::string wh_s = "0.3";
    double wh_y = 1;
    c_wh->add_option("--s", wh_s, "spectral parameter");
    c_wh->add_option("--y", wh_y, "nonzero real y");

    auto* c_mel = app.add_subcommand("mellin", "Mellin transform");
    c_mel->require_subcommand(1);
    auto* c_rt = c_mel->add_subcommand("roundtrip", "Mellin / inverse Mellin round trips");

    auto* c_lat = app.add_subcommand("lattice", "lattice sum bounds, CSV t,sum,bound,ratio");
    std::string field = "Q", scaling = "idelic";
    int lat_m = 1;
    double lat_c = 3;
    std::vector<double> t_grid = {10, 20, 40, 80, 160};
    c_lat->add_option("--field", field, "Q | Qi")->check(CLI::IsMember({"Q", "Qi"}));
    c_lat->add_option("--m", lat_m, "ideal generator")->check(CLI::Range(1, 64));
    c_lat->add_option("--c", lat_c, "exponent c > 1");
    c_lat->add_option("--scaling", scaling, "complex slot scaling: idelic | classical")
        ->check(CLI::IsMember({"idelic", "classical"}));
    c_lat->add_option("--t", t_grid, "t values");

    auto* c_run = app.add_subcommand("run", "run verification suites and write one report");
    c_run->add_option("--suite", g.suites, "suite names (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        load_config(g, [&](const std::string& opt) {
            return opt == "--suite" ? c_run->count("--suite") > 0 : app.count(opt) > 0;
        });
        validate(g);

        if (*c_const) {
            auto L = lambda_jet(2);
            auto forms = lambda_residue_forms();
            auto vol = volume_pgl2();
            auto bc = functionals_BC();
            auto M = MScalarJet::at_zero();
            json j{{"lambda_F_residue", sig12(L.residue().real())},
                   {"lambda_F_residue_expected_3_over_pi", sig12(3 / pi)},
                   {"lambda_F_constant", sig12(L[0].real())},
                   {"lambda_F_linear", sig12(L[1].real())},
                   {"lambda_F_constant_closed_form", sig12(lambda0_closed_form())},
                   {"lambda_residue_via_zero", sig12(forms.via_zero)},
                   {"lambda_residue_via_one", sig12(forms.via_one)},
                   {"volume_closed", sig12(vol.closed)},
                   {"volume_via_residue", sig12(vol.via_lambda)},
                   {"volume_expected_pi_over_3", sig12(pi / 3)},
                   {"functional_C", sig12(bc.C)},
                   {"functional_B", sig12(bc.B)},
                   {"m_at_zero", cjson(M.m[0])},
                   {"m_prime_at_zero", cjson(M.m[1])},
                   {"hecke_reg_constant_p2", sig12(std::log(2.0) / pi)},
                   {"unitary_pair_printed", sig12(rip_unitary_rhs().real())},
                   {"unitary_pair_corrected", sig12(rip_unitary_rhs_corrected().real())}};
            return emit(g, j, true);
        }
        if (*c_eval) {
            Variant v = variant == "plain" ? Variant::plain : variant == "star" ? Variant::star : Variant::reg;
            auto r = eval_checked({parse_complex(s_str), deriv, v}, parse_point(z_str));
            return emit(g, json{{"value", cjson(r.value)}, {"error_bound", r.error_bound}}, true);
        }
        if (*c_fi) {
            AutomorphicFn phi = named_phi(phi_name);
            std::vector<Cplx> ss;
            for (auto& s : s_list) ss.push_back(parse_complex(s));
            if (ss.empty()) ss = suites::identity_s_grid();
            std::function<Cplx(Cplx)> ref;
            for (auto& c : suites::identity_cases())
                if (c.name == phi.name || c.phi.name == phi.name) ref = c.reference;
            if (!ref) throw usage_error("no independent R* reference for '" + phi_name + "' (one, ee, delta2)");
            std::vector<std::unique_ptr<RegEngine>> engines;
            std::vector<const RegEngine*> ptrs;
            for (double T : T_list) {
                if (!(T >= 1)) throw usage_error("--T must be >= 1");
                engines.push_back(std::make_unique<RegEngine>(phi, T));
                engines.back()->check_profile();
                ptrs.push_back(engines.back().get());
            }
            double tol = 1e-5 * g.tol;
            bool pass = true;
            json recs = json::array();
            for (auto& rec : verify_fundamental_identity(ptrs, ss, ref)) {
                double scale = std::abs(ref(rec.s));
                double d = scale > 0 ? rec.abs_diff / scale : rec.abs_diff;
                bool ok = d <= tol;
                pass = pass && ok;
                recs.push_back({{"s", cjson(rec.s)},
                                {"T", rec.T},
                                {"lhs", cjson(rec.lhs)},
                                {"rhs", cjson(rec.rhs)},
                                {"r_star", cjson(rec.r_star)},
                                {"diff", d},
                                {"pass", ok}});
            }
            auto ri = reg_integral(*engines.front());
            json j{{"phi", phi.name},
                   {"principal", cjson(ri.principal)},
                   {"degenerate", cjson(ri.degenerate)},
                   {"value", cjson(ri.value)},
                   {"residual_checks", recs},
                   {"tolerance", tol},
                   {"pass", pass}};
            return emit(g, j, pass);
        }
        if (*c_hecke) return single_suite(g, run_suite({"hecke", suites::hecke}, options_for(g, "hecke")));
        if (*c_prod) return single_suite(g, run_suite({"products", suites::products}, options_for(g, "products")));
        if (*c_reg) {
            if (!(reg_T >= 1)) throw usage_error("--T must be >= 1");
            AutomorphicFn phi = named_phi(reg_phi);
            RegEngine e(phi, reg_T), e2(phi, reg_T + 2);
            e.check_profile();
            auto a = reg_integral(e), b = reg_integral(e2);
            double tdiff = std::abs(a.value - b.value);
            bool ok = tdiff <= 1e-6 * g.tol * std::max(1.0, std::abs(a.value));
            json checks{{"T", reg_T},
                        {"T_alt", reg_T + 2},
                        {"T_independence", tdiff},
                        {"profile_mismatch", e.profile_mismatch()},
                        {"pass", ok}};
            json j{{"phi", phi.name},
                   {"principal", cjson(a.principal)},
                   {"degenerate", cjson(a.degenerate)},
                   {"value", cjson(a.value)},
                   {"residual_checks", checks}};
            return emit(g, j, ok);
        }
        if (*c_coset) {
            IntMat A = parse_matrix(mat, rank);
            CosetRep rep;
            try {
                rep = decompose(A, N, lower ? CosetFlavor::gamma0_minus : CosetFlavor::gamma0);
            } catch (const not_unimodular_error& e) {
                throw usage_error(e.what());
            }
            bool ok = verify(A, rep) && within_bound(rep);
            return emit(g, json{{"n_minus", mat_json(rep.n_minus)}, {"n_plus", mat_json(rep.n_plus)}, {"verified", ok}},
                        ok);
        }
        if (*c_pv) {
            auto o = options_for(g, "padic");
            auto r = run_suite({"padic", [&](const SuiteOptions& so) { return suites::padic(so, {prime}, trials); }}, o);
            return single_suite(g, r);
        }
        if (*c_wh) {
            if (wh_y == 0) throw usage_error("--y must be nonzero");
            Cplx s = parse_complex(wh_s);
            Cplx a = whittaker_arch_direct(s, wh_y), b = whittaker_arch(s, wh_y);
            double rel = std::abs(a - b) / std::abs(b);
            bool ok = rel <= 1e-8 * g.tol;
            json j{{"s", cjson(s)},     {"y", wh_y},          {"integral", cjson(a)},
                   {"bessel", cjson(b)}, {"rel_diff", rel},    {"constant", whittaker_arch_constant()},
                   {"pass", ok}};
            return emit(g, j, ok);
        }
        if (*c_rt) {
            struct Case {
                std::string name;
                std::function<double(double)> f;
                double sigma;
            };
            std::vector<Case> cases = {{"exp(-y-1/y)", [](double y) { return std::exp(-y - 1 / y); }, 0.5},
                                       {"exp(-y)", [](double y) { return std::exp(-y); }, 2.0},
                                       {"exp(-pi y^2)", [](double y) { return std::exp(-pi * y * y); }, 1.0}};
            std::vector<double> ys = {0.1, 0.3, 1, 2, 5, 10};
            json arr = json::array();
            bool pass = true;
            for (auto& c : cases) {
                auto grid = LogGridFn::sample(c.f);
                double e = mellin_roundtrip_error(grid, [&](double y) { return Cplx(c.f(y)); }, c.sigma, ys);
                bool ok = e <= 1e-8 * g.tol;
                pass = pass && ok;
                arr.push_back({{"f", c.name}, {"sigma", c.sigma}, {"max_error", e}, {"pass", ok}});
            }
            return emit(g, json{{"roundtrip", arr}, {"pass", pass}}, pass);
        }
        if (*c_lat) {
            if (!(lat_c > 1)) throw usage_error("--c must exceed 1");
            LatticeSpec sp;
            sp.field = field == "Q" ? LatticeField::Q : LatticeField::Qi;
            sp.c = lat_c;
            sp.m = lat_m;
            sp.scaling = scaling == "idelic" ? ComplexScaling::idelic : ComplexScaling::classical;
            for (double t : t_grid)
                if (!(t > 0)) throw usage_error("--t values must be positive");
            auto rep = verify_lattice_bounds(sp, t_grid, {lat_m});
            std::ostringstream os;
            os << "t,sum,bound,ratio\n";
            char buf[160];
            for (auto& row : rep.part1) {
                std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", row.t, row.sum, row.bound, row.ratio);
                os << buf;
            }
            std::cout << os.str();
            if (!g.out.empty()) std::ofstream(g.out) << os.str();
            return 0;
        }
        if (*c_run) {
            auto reps = run_suites(g, g.suites);
            json arr = json::array();
            bool pass = true;
            double wall = 0;
            for (auto& r : reps) {
                arr.push_back(report_json(r));
                pass = pass && r.pass;
                wall += r.wall_time;
            }
            write_tables(g, reps);
            return emit(g, json{{"seed", g.seed}, {"tol", g.tol}, {"suites", arr}, {"pass", pass}, {"wall_time", wall}},
                        pass);
        }
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
