#include "qmf/classify.hpp"
#include "qmf/farey.hpp"
#include "qmf/measures.hpp"
#include "qmf/minkowski.hpp"
#include "qmf/parallel.hpp"
#include "qmf/pressure.hpp"
#include "qmf/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

using json = nlohmann::ordered_json;
using namespace qmf;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Inputs may be rationals ("2/5") or CF specs ("2,2" / "1;tail=const:1").
bool looks_rational(const std::string& s) {
    return s.find(',') == std::string::npos && s.find(';') == std::string::npos;
}

CfSpec parse_point(const std::string& s) {
    if (looks_rational(s)) return CfSpec::from_rational(parse_rational(s));
    return CfSpec::parse(s);
}

int cmd_q_eval(const std::string& input, int enclose, const std::string& format) {
    if (enclose < 0 && looks_rational(input)) {
        const Dyadic v = q_eval(parse_rational(input));
        if (format == "json")
            std::cout << json{{"x", input}, {"q", v.str_fraction()}, {"q_pow2", v.str()}}.dump() << "\n";
        else
            std::cout << v.str_fraction() << "\n";
        return 0;
    }
    const CfSpec x = parse_point(input);
    const int level = enclose < 0 ? 64 : enclose;
    const DyadicEnclosure e = q_enclose(x, level);
    if (format == "json") {
        std::cout << json{{"x", input},
                          {"level", e.level},
                          {"lower", e.lower.str()},
                          {"upper", e.upper.str()},
                          {"lower_double", e.lower.to_double()},
                          {"upper_double", e.upper.to_double()}}
                         .dump()
                  << "\n";
    } else {
        std::cout << e.lower.str() << "\t" << e.upper.str() << "\n";
    }
    return 0;
}

int cmd_q_inv(const std::string& input, const std::string& format) {
    const Rational x = q_inverse(Dyadic::parse(input));
    if (format == "json")
        std::cout << json{{"y", input}, {"x", to_string(x)}}.dump() << "\n";
    else
        std::cout << to_string(x) << "\n";
    return 0;
}

int cmd_sb_tree(int depth, const std::string& format) {
    json rows = json::array();
    for (int n = 0; n <= depth; ++n) {
        const auto seq = sb_sequence(n, depth);
        for (std::size_t k = 0; k < seq.size(); ++k) {
            if (format == "json") {
                rows.push_back({{"n", n}, {"k", k}, {"s", num(seq[k]).str()}, {"t", den(seq[k]).str()}});
            } else {
                std::cout << n << "\t" << k << "\t" << num(seq[k]).str() << "\t" << den(seq[k]).str() << "\n";
            }
        }
    }
    if (format == "json") std::cout << rows.dump() << "\n";
    return 0;
}

int cmd_sb_locate(const std::string& input, int level, const std::string& format) {
    const SbInterval iv = looks_rational(input) ? locate(parse_rational(input), level) : locate(CfSpec::parse(input), level);
    if (format == "json") {
        std::cout << json{{"level", iv.level},
                          {"index", iv.index.str()},
                          {"left", to_string(iv.left)},
                          {"right", to_string(iv.right)}}
                         .dump()
                  << "\n";
    } else {
        std::cout << iv.level << "\t" << iv.index.str() << "\t" << to_string(iv.left) << "\t" << to_string(iv.right)
                  << "\n";
    }
    return 0;
}

int cmd_dyn_orbit(const std::string& map_name, const std::string& input, int steps, const std::string& format) {
    MapKind kind;
    if (map_name == "farey") kind = MapKind::Farey;
    else if (map_name == "tent") kind = MapKind::Tent;
    else if (map_name == "gauss") kind = MapKind::Gauss;
    else throw std::invalid_argument("unknown map '" + map_name + "' (farey|tent|gauss)");
    const Rational x0 = looks_rational(input) ? parse_rational(input) : CfSpec::parse(input).value();
    const auto points = orbit(kind, x0, steps);
    if (format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < points.size(); ++i) arr.push_back({{"k", i}, {"x", to_string(points[i])}});
        std::cout << arr.dump() << "\n";
    } else {
        for (std::size_t i = 0; i < points.size(); ++i) std::cout << i << "\t" << to_string(points[i]) << "\n";
    }
    return 0;
}

int cmd_pressure(double t, int depth, int workers, const std::string& format) {
    FoldOptions fold;
    fold.workers = workers;
    const PressureEstimate est = pressure(t, depth, fold);
    if (format == "tsv") {
        for (const auto& [n, ln] : est.levels) std::cout << n << "\t" << fmt(ln) << "\n";
        std::cout << "estimate\t" << fmt(est.estimate) << "\nerror\t" << fmt(est.error) << "\n";
        return 0;
    }
    json levels = json::array();
    for (const auto& [n, ln] : est.levels) levels.push_back({n, ln});
    std::cout << json{{"t", t},
                      {"depth", depth},
                      {"levels", levels},
                      {"estimate", est.estimate},
                      {"error", est.error},
                      {"exact_zero", est.exact_zero},
                      {"converged", est.converged}}
                     .dump()
              << "\n";
    return 0;
}

std::string point_flags(const SpectrumPoint& p) {
    std::string f;
    if (p.convention) f += "convention,";
    if (p.lower_boundary) f += "tmin,";
    if (p.upper_boundary) f += "tmax,";
    if (f.empty()) return "-";
    f.pop_back();
    return f;
}

int cmd_spectrum(int samples, int depth, double tmin, int workers, const std::string& format) {
    if (samples < 2) throw std::invalid_argument("spectrum: need at least 2 samples");
    FoldOptions fold;
    fold.workers = workers;
    const PressureLadder ladder(std::max(1, depth - 8), depth, fold);
    const auto pressure_fn = ladder.as_function();
    const double upper = constants().two_log_gamma;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) grid.push_back(upper * i / (samples - 1));
    const auto pts = spectrum_table(grid, pressure_fn, tmin);
    json rows = json::array();
    for (const auto& p : pts) {
        const double p_at_tstar = p.convention ? 0.0 : -p.s * p.t_star - p.legendre;
        if (format == "json") {
            rows.push_back({{"s", p.s},
                            {"t_star", p.t_star},
                            {"P", p_at_tstar},
                            {"legendre", p.legendre},
                            {"d", p.d},
                            {"flags", point_flags(p)}});
        } else {
            std::cout << fmt(p.s) << "\t" << fmt(p.t_star) << "\t" << fmt(p_at_tstar) << "\t" << fmt(p.d) << "\t"
                      << point_flags(p) << "\n";
        }
    }
    if (format == "json") std::cout << rows.dump() << "\n";
    return 0;
}

int cmd_integrals(int depth, int workers, const std::string& format) {
    FoldOptions fold;
    fold.workers = workers;
    const QuadratureResult e_nuf = stieltjes_vs_Q([](double x) { return delta_gauss(x); }, depth, fold);
    const QuadratureResult e_mgq = expectation_mG_Q();
    const QuadratureResult chi = chi_nu_F(depth, fold);
    const QuadratureResult dim = dim_nu_F(depth, fold);
    json out{{"E_nuF_deltaG", e_nuf.value},
             {"E_mG_Q", e_mgq.value},
             {"chi", chi.value},
             {"dim_nuF", dim.value},
             {"identity_gap", std::abs(e_mgq.value + e_nuf.value - 1.0)},
             {"error_bounds",
              {{"E_nuF_deltaG", e_nuf.error_bound},
               {"E_mG_Q", e_mgq.error_bound},
               {"chi", chi.error_bound},
               {"dim_nuF", dim.error_bound}}},
             {"depth", depth}};
    if (format == "tsv") {
        std::cout << "E_nuF_deltaG\t" << fmt(e_nuf.value) << "\nE_mG_Q\t" << fmt(e_mgq.value) << "\nchi\t"
                  << fmt(chi.value) << "\ndim_nuF\t" << fmt(dim.value) << "\n";
    } else {
        std::cout << out.dump() << "\n";
    }
    return 0;
}

json report_to_json(const ClassificationReport& rep) {
    return json{{"input", rep.input.size() > 256 ? rep.input.substr(0, 256) + "..." : rep.input},
                {"horizon", rep.horizon},
                {"delta", rep.delta},
                {"verdict", verdict_name(rep.verdict)},
                {"rule", rep.rule},
                {"margin", rep.margin},
                {"r_window_min", rep.diag.r_window_min},
                {"r_window_max", rep.diag.r_window_max},
                {"r_window_mean", rep.diag.r_window_mean},
                {"threshold", 1.0 / std::log(2.0)},
                {"pvb_inf_hint", rep.pvb_inf_hint},
                {"pvb_zero_hint", rep.pvb_zero_hint}};
}

int cmd_classify(const std::string& cf, int horizon, double margin, const std::string& format) {
    const ClassificationReport rep = classify(CfSpec::parse(cf), horizon, margin);
    if (format == "tsv")
        std::cout << verdict_name(rep.verdict) << "\t" << rep.rule << "\t" << fmt(rep.margin) << "\n";
    else
        std::cout << report_to_json(rep).dump() << "\n";
    return 0;
}

int cmd_classify_witness(const std::string& cls) {
    if (cls == "tilde") {
        std::cout << witness_straddle().str() << "\n";
    } else if (cls == "inf") {
        std::cout << CfSpec::constant(1).str() << "\n";
    } else if (cls == "zero") {
        std::cout << CfSpec::constant(6).str() << "\n";
    } else {
        throw std::invalid_argument("unknown witness class '" + cls + "' (tilde|inf|zero)");
    }
    return 0;
}

int cmd_verify(const VerifyOptions& opt, const std::string& format) {
    const auto results = run_verify(opt);
    const bool ok = all_passed(results);
    if (format == "tsv") {
        for (const auto& r : results)
            std::cout << r.name << "\t" << (r.pass ? "pass" : "FAIL") << "\t" << r.checks << "\t" << fmt(r.seconds)
                      << (r.detail.empty() ? "" : "\t" + r.detail) << "\n";
    } else {
        json suites = json::array();
        for (const auto& r : results)
            suites.push_back({{"suite", r.name},
                              {"pass", r.pass},
                              {"checks", r.checks},
                              {"seconds", r.seconds},
                              {"detail", r.detail}});
        std::cout << json{{"pass", ok}, {"suites", suites}}.dump() << "\n";
    }
    if (!ok) {
        for (const auto& r : results)
            if (!r.pass) std::cerr << "FAIL " << r.name << ": " << r.detail << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for the question mark function, Stern-Brocot structure and its multifractal spectrum"};
    app.require_subcommand(1);
    int workers = default_workers();
    app.add_option("--workers", workers, "worker threads for parallel folds");

    // q eval | q inv
    auto* q = app.add_subcommand("q", "question mark function");
    q->require_subcommand(1);
    auto* qe = q->add_subcommand("eval", "evaluate Q at a rational or CF spec");
    std::string qe_input;
    int qe_enclose = -1;
    std::string qe_format = "tsv";
    qe->add_option("input", qe_input, "rational p/q or CF spec")->required();
    qe->add_option("--enclose", qe_enclose, "dyadic enclosure level N");
    qe->add_option("--format", qe_format, "json|tsv");
    auto* qi = q->add_subcommand("inv", "invert Q at a dyadic rational");
    std::string qi_input;
    std::string qi_format = "tsv";
    qi->add_option("input", qi_input, "dyadic m/2^e or m/q with q a power of two")->required();
    qi->add_option("--format", qi_format, "json|tsv");

    // sb tree | sb locate
    auto* sb = app.add_subcommand("sb", "Stern-Brocot sequences and intervals");
    sb->require_subcommand(1);
    auto* sbt = sb->add_subcommand("tree", "emit levels 0..depth as TSV: n k s t");
    int sbt_depth = 6;
    std::string sbt_format = "tsv";
    sbt->add_option("--depth", sbt_depth, "deepest level")->required();
    sbt->add_option("--format", sbt_format, "json|tsv");
    auto* sbl = sb->add_subcommand("locate", "locate T_n(x)");
    std::string sbl_input;
    int sbl_level = 10;
    std::string sbl_format = "tsv";
    sbl->add_option("--x", sbl_input, "rational or CF spec")->required();
    sbl->add_option("--level", sbl_level, "refinement level n")->required();
    sbl->add_option("--format", sbl_format, "json|tsv");

    // dyn orbit
    auto* dyn = app.add_subcommand("dyn", "interval map dynamics");
    dyn->require_subcommand(1);
    auto* orb = dyn->add_subcommand("orbit", "exact orbit of a rational point");
    std::string orb_map = "farey", orb_x, orb_format = "tsv";
    int orb_steps = 10;
    orb->add_option("--map", orb_map, "farey|tent|gauss")->required();
    orb->add_option("--x", orb_x, "rational start point")->required();
    orb->add_option("--steps", orb_steps, "number of iterations")->required();
    orb->add_option("--format", orb_format, "json|tsv");

    // pressure
    auto* pr = app.add_subcommand("pressure", "Stern-Brocot pressure estimate at one t");
    double pr_t = 0.5;
    int pr_depth = 20;
    std::string pr_format = "json";
    pr->add_option("--t", pr_t, "argument of P")->required();
    pr->add_option("--depth", pr_depth, "deepest level of the ladder");
    pr->add_option("--format", pr_format, "json|tsv");

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "dimension spectrum d(s) table");
    int sp_samples = 50, sp_depth = 22;
    double sp_tmin = -40.0;
    std::string sp_format = "tsv";
    sp->add_option("--samples", sp_samples, "grid points on [0, 2 log gamma]");
    sp->add_option("--depth", sp_depth, "pressure ladder depth");
    sp->add_option("--tmin", sp_tmin, "left end of the Legendre search window");
    sp->add_option("--format", sp_format, "json|tsv");

    // integrals
    auto* in = app.add_subcommand("integrals", "expectations, Lyapunov exponent and dimension");
    int in_depth = 22;
    std::string in_format = "json";
    in->add_option("--depth", in_depth, "Stieltjes quadrature depth");
    in->add_option("--format", in_format, "json|tsv");

    // classify (+ witness)
    auto* cl = app.add_subcommand("classify", "derivative classification of a CF point");
    std::string cl_cf, cl_format = "json";
    int cl_horizon = 10000;
    double cl_margin = 0.05;
    cl->add_option("--cf", cl_cf, "CF spec string");
    cl->add_option("--horizon", cl_horizon, "diagnostic horizon");
    cl->add_option("--margin", cl_margin, "decision margin delta");
    cl->add_option("--format", cl_format, "json|tsv");
    auto* wit = cl->add_subcommand("witness", "emit a witness CF spec");
    std::string wit_class = "tilde";
    wit->add_option("--class", wit_class, "tilde|inf|zero")->required();

    // verify
    auto* ver = app.add_subcommand("verify", "run the exact identity and golden suites");
    VerifyOptions vopt;
    std::vector<std::string> ver_suites;
    std::string ver_format = "json";
    ver->add_option("--suite", ver_suites, "run only the named suites");
    ver->add_option("--qmax", vopt.qmax, "conjugacy sweep bound");
    ver->add_option("--depth", vopt.sb_depth, "identity sweep depth");
    ver->add_flag("--inject-fault", vopt.inject_fault, "self-test: force one failure");
    ver->add_option("--format", ver_format, "json|tsv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (qe->parsed()) return cmd_q_eval(qe_input, qe_enclose, qe_format);
        if (qi->parsed()) return cmd_q_inv(qi_input, qi_format);
        if (sbt->parsed()) return cmd_sb_tree(sbt_depth, sbt_format);
        if (sbl->parsed()) return cmd_sb_locate(sbl_input, sbl_level, sbl_format);
        if (orb->parsed()) return cmd_dyn_orbit(orb_map, orb_x, orb_steps, orb_format);
        if (pr->parsed()) return cmd_pressure(pr_t, pr_depth, workers, pr_format);
        if (sp->parsed()) return cmd_spectrum(sp_samples, sp_depth, sp_tmin, workers, sp_format);
        if (in->parsed()) return cmd_integrals(in_depth, workers, in_format);
        if (cl->parsed()) {
            if (wit->parsed()) return cmd_classify_witness(wit_class);
            if (cl_cf.empty()) throw std::invalid_argument("classify: --cf is required (or use 'classify witness')");
            return cmd_classify(cl_cf, cl_horizon, cl_margin, cl_format);
        }
        if (ver->parsed()) {
            vopt.only = ver_suites;
            vopt.fold.workers = workers;
            return cmd_verify(vopt, ver_format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
