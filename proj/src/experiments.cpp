#include "cle/experiments.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "cle/cascade.hpp"
#include "cle/errors.hpp"
#include "cle/exact_formulas.hpp"
#include "cle/exponents.hpp"
#include "cle/levy_verify.hpp"
#include "cle/parallel.hpp"
#include "cle/radial_loewner.hpp"
#include "cle/radii_laws.hpp"

namespace cle {

using nlohmann::json;

namespace {

// Reads parameters with defaults and records the effective values.
class Params {
public:
    explicit Params(const json& in) : in_(in.is_null() ? json::object() : in) {
        if (!in_.is_object()) throw DomainError("parameters must be a JSON object");
    }

    template <class T>
    T get(const std::string& key, T def) {
        T v = def;
        if (in_.contains(key)) {
            try {
                v = in_.at(key).get<T>();
            } catch (const json::exception&) {
                throw DomainError("parameter '" + key + "' has the wrong type");
            }
        }
        echo_[key] = v;
        used_.insert(key);
        return v;
    }

    /// Rejects unused keys and returns the echo.
    json finish() const {
        for (const auto& item : in_.items()) {
            if (!used_.count(item.key())) throw DomainError("unknown parameter '" + item.key() + "'");
        }
        return echo_;
    }

private:
    json in_;
    json echo_ = json::object();
    std::set<std::string> used_;
};

unsigned effective_threads(unsigned t) { return t == 0 ? default_threads() : t; }

json partition(unsigned threads, std::size_t chunk, const char* streams) {
    return {{"threads", effective_threads(threads)},
            {"chunk", chunk},
            {"streams", streams},
            {"generator", "mt19937_64 per stream, key = splitmix64 fold of (seed, counters)"}};
}

json value_or_inf(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

json make_table(std::vector<std::string> columns) { return {{"columns", std::move(columns)}, {"rows", json::array()}}; }

struct Output {
    json params;
    json results = json::object();
    json checks = json::array();
    json warnings = json::array();
    json partition = nullptr;
    json table = nullptr;

    json finish() const {
        json out{{"params", params},   {"results", results},     {"checks", checks},
                 {"warnings", warnings}, {"partition", partition}, {"passed", gate_verdict(checks)}};
        if (!table.is_null()) out["table"] = table;
        return out;
    }
};

CascadeMethod method_from_name(const std::string& m) {
    if (m == "mc") return CascadeMethod::MC;
    if (m == "conv") return CascadeMethod::CONV;
    throw DomainError("method must be mc or conv, got '" + m + "'");
}

// ---- exact formulas ---------------------------------------------------------

json exp_prob(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    Output o{p.finish()};
    const KappaContext c(kappa);
    o.results = {{"value", touching_probability(c)},
                 {"touching_probability", touching_probability(c)},
                 {"nontouching_probability", 1.0 - touching_probability(c)},
                 {"kappa0", kappa0_argmax()},
                 {"provenance", "closed-form"}};
    return o.finish();
}

json exp_exact(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const double lambda = p.get("lambda", 0.0);
    const std::string law = p.get<std::string>("law", "ssw");
    Output o{p.finish()};
    const KappaContext c(kappa);
    const Law l = law_from_name(law);
    const MomentValue m = moment(c, l, lambda);
    o.results = {{"law", law_name(l)},
                 {"value", m.is_finite() ? json(m.value()) : json("inf")},
                 {"threshold", moment_threshold(c, l)},
                 {"mass", law_mass(c, l)},
                 {"provenance", "closed-form"}};
    return o.finish();
}

json exp_root(const json& in) {
    Params p(in);
    const std::string kind = p.get<std::string>("kind", "np");
    const double kappa = p.get("kappa", 6.0);
    const double a = p.get("a", 1.0);
    Output o{p.finish()};
    const KappaContext c(kappa);
    if (kind == "np") {
        const double r = root_np(c, a);
        o.results = {{"value", r}, {"provenance", "closed-form"}};
        if (kappa == 6.0 || std::abs(kappa - 16.0 / 3.0) < 1e-15) o.results["closed_form"] = closed_form_np(kappa, a);
        const DualityResult d = rate_duality_check(c, a);
        o.results["lambda_inverse"] = lambda_inverse(c, -std::log(a * (1.0 - touching_probability(c))));
        o.results["duality_discrepancy"] = d.discrepancy;
        o.results["upper_branch"] = d.upper_branch;
    } else if (kind == "nl") {
        o.results = {{"value", root_nl(c, a)}, {"provenance", "closed-form"}};
    } else {
        throw DomainError("root kind must be np or nl");
    }
    return o.finish();
}

json exp_density(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const std::string law = p.get<std::string>("law", "ssw");
    const int terms = p.get("terms", kDefaultTerms);
    const double s_max = p.get("s_max", 10.0);
    const int points = p.get("points", 200);
    Output o{p.finish()};
    if (points < 2) throw DomainError("points must be >= 2");
    const KappaContext c(kappa);
    const ResidueSeries s = build_series(c, law_from_name(law), terms);
    if (!(s_max > s.s_min())) throw DomainError("s_max must exceed s_min");
    o.results = {{"law", law_name(s.law())},         {"terms", s.terms()},
                 {"mass", s.mass()},                  {"expected_mass", law_mass(c, s.law())},
                 {"s_min", s.s_min()},                {"truncation_bound", s.truncation_bound()},
                 {"residue_check_error", s.residue_check_error()}, {"poles", s.poles()},
                 {"coefficients", s.coefficients()}, {"provenance", "closed-form"}};
    o.table = make_table({"s", "density", "ccdf"});
    for (int i = 0; i < points; ++i) {
        const double x = s.s_min() + (s_max - s.s_min()) * i / (points - 1.0);
        o.table["rows"].push_back({x, s.density(x), s.ccdf(x)});
    }
    return o.finish();
}

// ---- cascade ------------------------------------------------------------------

json exp_cascade(const json& in) {
    Params p(in);
    const std::string functional = p.get<std::string>("functional", "np");
    const double kappa = p.get("kappa", 6.0);
    CascadeConfig cfg;
    cfg.a = p.get("a", 1.0);
    const double eps_max = p.get("eps_max", 0.1);
    const int decades = p.get("eps_decades", 2);
    const int ppd = p.get("points_per_decade", 3);
    cfg.n_samples = p.get<std::size_t>("samples", 1'000'000);
    cfg.seed = p.get<std::uint64_t>("seed", 1);
    cfg.method = method_from_name(p.get<std::string>("method", "mc"));
    cfg.c0 = p.get("c0", 1.0);
    cfg.h = p.get("h", 2e-3);
    cfg.threads = p.get("threads", 0u);
    cfg.chunk = p.get<std::size_t>("chunk", std::size_t{1} << 16);
    const int terms = p.get("terms", kDefaultTerms);
    Output o{p.finish()};
    cfg.eps_grid = make_eps_grid(eps_max, decades, ppd);
    const KappaContext c(kappa);
    const CascadeModel model(c, terms);
    CascadeEstimate e;
    double reference;
    if (functional == "np") {
        e = estimate_functional(model, cfg);
        reference = root_np(c, cfg.a);
    } else if (functional == "nl") {
        e = nl_functional(model, cfg);
        reference = root_nl(c, cfg.a);
    } else {
        throw DomainError("functional must be np or nl");
    }
    const char* prov = cfg.method == CascadeMethod::MC ? "mc" : "renewal";
    o.results = {{"slope", e.fit.slope},
                 {"half_width", e.fit.half_width},
                 {"slope_se", e.fit.slope_se},
                 {"intercept", e.fit.intercept},
                 {"chi2_red", e.fit.chi2_red},
                 {"reference", reference},
                 {"reference_kind", functional == "np" ? "root_np" : "root_nl"},
                 {"slope_minus_reference", e.fit.slope - reference},
                 {"p_touch", model.p_touch()},
                 {"provenance", prov}};
    o.table = make_table({"eps", "level", "estimate", "stderr", "ess", "method"});
    for (const EpsEstimate& pt : e.points) {
        o.table["rows"].push_back(
            {pt.eps, pt.level, pt.value, pt.std_error, value_or_inf(pt.ess), cfg.method == CascadeMethod::MC ? "mc" : "conv"});
    }
    for (const auto& w : e.warnings) o.warnings.push_back(w);
    if (cfg.method == CascadeMethod::MC) o.partition = partition(cfg.threads, cfg.chunk, "stream_seed(seed, {eps index, chunk})");
    return o.finish();
}

// ---- verification ---------------------------------------------------------------

json exp_levy(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const double pp = p.get("p", -0.3);
    const double l1 = p.get("l1", 1.0);
    const double l2 = p.get("l2", 1.0);
    const std::size_t n = p.get<std::size_t>("n", 1'000'000);
    const std::uint64_t seed = p.get<std::uint64_t>("seed", 1);
    const unsigned threads = p.get("threads", 0u);
    const double tol = p.get("tolerance", 0.02);
    Output o{p.finish()};
    const LevyCheck r = lemma_levy_check(KappaContext(kappa), pp, l1, l2, n, seed, threads);
    o.results = {{"mc_value", r.mc_value},         {"mc_std_error", r.mc_std_error}, {"closed_value", r.closed_value},
                 {"closed_imag", r.closed_imag},   {"rel_err", r.rel_err}};
    o.checks.push_back(to_json(rel_check("mc vs closed form", r.mc_value, r.closed_value, tol, "mc")));
    for (const auto& w : r.warnings) o.warnings.push_back(w);
    o.partition = partition(threads, 1u << 16, "stream_seed(seed, {0x4C455659, chunk})");
    return o.finish();
}

json exp_fslen(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const double q = p.get("q", 1.0);
    const double la = p.get("len_a", 1.0);
    const double lb = p.get("len_b", 100.0);
    const std::size_t n = p.get<std::size_t>("n", 4'000'000);
    const std::uint64_t seed = p.get<std::uint64_t>("seed", 1);
    const unsigned threads = p.get("threads", 0u);
    const int bins = p.get("bins", 20);
    const double tol = p.get("tolerance", 0.05);
    Output o{p.finish()};
    const ForestedLengthCheck r = forested_length_law_check(KappaContext(kappa), q, la, lb, n, seed, threads, bins);
    o.results = {{"slope", r.slope}, {"slope_se", r.slope_se}, {"target", r.target}, {"ess", r.ess}};
    o.checks.push_back(to_json(abs_check("fitted power", r.slope, r.target, tol, "mc")));
    o.table = make_table({"length", "density"});
    for (std::size_t i = 0; i < r.bin_centers.size(); ++i) o.table["rows"].push_back({r.bin_centers[i], r.bin_density[i]});
    for (const auto& w : r.warnings) o.warnings.push_back(w);
    o.partition = partition(threads, 1u << 16, "stream_seed(seed, {0x46534C4E, chunk})");
    return o.finish();
}

json integral_json(Output& o, const IntegralCheck& r, double tol) {
    o.results = {{"quadrature_real", r.quadrature.real()}, {"quadrature_imag", r.quadrature.imag()},
                 {"closed_real", r.closed.real()},         {"closed_imag", r.closed.imag()},
                 {"rel_err", r.rel_err},                   {"rel_err_real", r.rel_err_real},
                 {"rel_err_imag", r.rel_err_imag},         {"excision_stability", r.excision_stability},
                 {"converged", r.converged}};
    o.checks.push_back(to_json(bound_check("quadrature vs closed form", r.rel_err, tol, "quadrature")));
    o.table = make_table({"excision_width", "value_real", "value_imag"});
    for (std::size_t i = 0; i < r.excision_widths.size(); ++i) {
        o.table["rows"].push_back({r.excision_widths[i], r.excision_values[i].real(), r.excision_values[i].imag()});
    }
    if (!r.converged) o.warnings.push_back("excision sequence did not settle");
    return o.finish();
}

json exp_integral1(const json& in) {
    Params p(in);
    const double a = p.get("a", -0.25);
    const double b = p.get("b", -0.75);
    const double tol = p.get("tolerance", 1e-5);
    Output o{p.finish()};
    return integral_json(o, integral_identity_1(a, b), tol);
}

json exp_integral2(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const double pp = p.get("p", -0.2);
    const double tol = p.get("tolerance", 1e-5);
    Output o{p.finish()};
    return integral_json(o, integral_identity_2(KappaContext(kappa), pp), tol);
}

json exp_ratio(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const KappaContext c(kappa);
    const double mid = 0.5 * (c.q_coeff() + 4.0 / c.gamma());
    const double alpha = p.get("alpha", mid);
    const double tol = p.get("tolerance", 1e-9);
    Output o{p.finish()};
    const RatioAlgebra r = ratio_algebra_check(c, alpha);
    o.results = {{"assembled", r.assembled}, {"assembled_imag", r.assembled_imag}, {"reference", r.reference},
                 {"discrepancy", r.discrepancy}, {"p", r.p}};
    o.checks.push_back(to_json(bound_check("assembled vs nontouch ratio", r.discrepancy, tol, "closed-form")));
    return o.finish();
}

json criterion_experiment(int id, const json& in) {
    Params p(in);
    AcceptanceOptions opt;
    opt.quick = p.get("quick", false);
    opt.seed = p.get<std::uint64_t>("seed", 1);
    opt.threads = p.get("threads", 0u);
    Output o{p.finish()};
    const CriterionResult r = run_criterion(id, opt);
    o.results = to_json(r);
    o.checks = o.results["checks"];
    return o.finish();
}

json exp_identities(const json& in) { return criterion_experiment(2, in); }

// ---- Loewner ----------------------------------------------------------------------

json exp_drift(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const int states = p.get("states", 1000);
    const std::uint64_t seed = p.get<std::uint64_t>("seed", 1);
    const double tol = p.get("tolerance", 1e-12);
    Output o{p.finish()};
    const DriftCheck d = drift_identity_check(KappaContext(kappa), states, seed);
    o.results = {{"max_phi_error", d.max_phi_error}, {"max_theta_error", d.max_theta_error}, {"states", d.states}};
    o.checks.push_back(to_json(bound_check("force-point drift", d.max_phi_error, tol, "closed-form")));
    o.checks.push_back(to_json(bound_check("driving drift", d.max_theta_error, tol, "closed-form")));
    return o.finish();
}

json exp_flow(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const double psi0 = p.get("psi0", kPi);
    const double t_end = p.get("t_end", 1.0);
    const double dt = p.get("dt", 1e-4);
    const std::uint64_t seed = p.get<std::uint64_t>("seed", 1);
    FlowParams fp;
    fp.substep_factor = p.get("substep_factor", fp.substep_factor);
    fp.swallow_tol = p.get("swallow_tol", fp.swallow_tol);
    fp.stencil_radius = p.get("stencil_radius", fp.stencil_radius);
    fp.stencil_points = p.get("stencil_points", fp.stencil_points);
    const int boundary_points = p.get("boundary_points", 12);
    const double gtol = p.get("gprime_tolerance", 1e-6);
    const double btol = p.get("boundary_tolerance", 1e-8);
    Output o{p.finish()};
    const KappaContext c(kappa);
    const auto theta = sample_driving_path(c, psi0, t_end, dt, seed);
    std::vector<cplx> pts{cplx(0.3, 0.0), cplx(0.0, 0.5), cplx(-0.2, -0.6)};
    for (int j = 1; j <= boundary_points; ++j) pts.push_back(std::polar(1.0, 2.0 * kPi * j / (boundary_points + 1.0)));
    const FlowState f = evolve_flow(theta, dt, pts, fp);
    int swallowed = 0;
    for (bool b : f.swallowed) swallowed += b ? 1 : 0;
    const double expected = std::exp(f.t);
    o.results = {{"t", f.t},
                 {"gprime_estimate", f.gprime_estimate},
                 {"gprime_expected", expected},
                 {"gprime_rel_err", std::abs(f.gprime_estimate - expected) / expected},
                 {"max_boundary_drift", f.max_boundary_drift},
                 {"swallowed", swallowed}};
    o.checks.push_back(to_json(rel_check("g_t'(0) vs e^t", f.gprime_estimate, expected, gtol, "sde")));
    o.checks.push_back(to_json(bound_check("boundary modulus drift", f.max_boundary_drift, btol, "sde")));
    o.table = make_table({"z_real", "z_imag", "g_real", "g_imag", "swallowed", "swallow_time"});
    for (std::size_t i = 0; i < pts.size(); ++i) {
        o.table["rows"].push_back({pts[i].real(), pts[i].imag(), f.points[i].real(), f.points[i].imag(),
                                   f.swallowed[i] ? 1 : 0, f.swallowed[i] ? json(f.swallow_time[i]) : json(nullptr)});
    }
    return o.finish();
}

json exp_passage(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const double psi0 = p.get("psi0", kPi);
    const std::size_t n = p.get<std::size_t>("n", 100'000);
    const std::uint64_t seed = p.get<std::uint64_t>("seed", 1);
    PassageParams pp;
    pp.dt = p.get("dt", pp.dt);
    pp.delta_abs = p.get("delta_abs", pp.delta_abs);
    pp.t_max = p.get("t_max", pp.t_max);
    pp.boundary_scale = p.get("boundary_scale", pp.boundary_scale);
    const unsigned threads = p.get("threads", 0u);
    const double tol = p.get("tolerance", 0.01);
    Output o{p.finish()};
    const KappaContext c(kappa);
    const auto samples = first_passage(c, psi0, n, seed, pp, threads);
    const PassageSummary s = summarize_passage(c, psi0, pp.delta_abs, samples);
    o.results = {{"n", s.n},
                 {"lower", s.lower},
                 {"upper", s.upper},
                 {"censored", s.censored},
                 {"freq_upper", s.freq_upper},
                 {"predicted_upper", s.predicted_upper},
                 {"rel_err_upper", s.rel_err_upper},
                 {"rel_err_lower", s.rel_err_lower},
                 {"mean_tau", s.mean_tau}};
    o.checks.push_back(to_json(bound_check("upper exit frequency", s.rel_err_upper, tol, "sde")));
    o.checks.push_back(to_json(bound_check("lower exit frequency", s.rel_err_lower, tol, "sde")));
    if (s.censored > 0) o.warnings.push_back(std::to_string(s.censored) + " paths censored at t_max");
    o.table = make_table({"tau", "side"});
    for (const auto& x : samples) {
        o.table["rows"].push_back({x.tau, x.side == Side::Lower ? "lower" : x.side == Side::Upper ? "upper" : "censored"});
    }
    o.partition = partition(threads, 1024, "BrownianTree key stream_seed(seed, {0x50415353, path})");
    return o.finish();
}

json exp_weak_order(const json& in) {
    Params p(in);
    const double kappa = p.get("kappa", 6.0);
    const double psi0 = p.get("psi0", 2.0 * kPi / 3.0);
    const double dt0 = p.get("dt0", 0.01);
    const int levels = p.get("levels", 4);
    const std::size_t n = p.get<std::size_t>("n", 4000);
    const std::uint64_t seed = p.get<std::uint64_t>("seed", 1);
    const double delta_abs = p.get("delta_abs", 1e-5);
    const unsigned threads = p.get("threads", 0u);
    Output o{p.finish()};
    const WeakOrderStudy w = weak_order_study(KappaContext(kappa), psi0, dt0, levels, n, seed, delta_abs, threads);
    o.results = {{"observed_order", w.observed_order}, {"dts", w.dts}, {"mean_tau", w.mean_tau},
                 {"diffs", w.diffs}, {"diff_se", w.diff_se}};
    Check c = abs_check("weak order slope", w.observed_order, 1.0, 0.3, "sde");
    c.status = (w.observed_order > 0.7 && w.observed_order < 1.3) ? CheckStatus::Pass : CheckStatus::Fail;
    o.checks.push_back(to_json(c));
    o.table = make_table({"dt", "mean_tau"});
    for (std::size_t i = 0; i < w.dts.size(); ++i) o.table["rows"].push_back({w.dts[i], w.mean_tau[i]});
    o.partition = partition(threads, 256, "BrownianTree key stream_seed(seed, {0x5745414B, path})");
    return o.finish();
}

json exp_acceptance(const json& in) {
    json params = in.is_null() ? json::object() : in;
    if (!params.is_object()) throw DomainError("parameters must be a JSON object");
    const int id = params.value("criterion", 0);
    params.erase("criterion");
    if (id < 1 || id > kCriteriaCount) throw DomainError("criterion must be 1..10");
    json out = criterion_experiment(id, params);
    out["params"]["criterion"] = id;
    return out;
}

using Runner = std::function<json(const json&)>;

const std::map<std::string, Runner>& registry() {
    static const std::map<std::string, Runner> r{
        {"prob", exp_prob},
        {"exact", exp_exact},
        {"root", exp_root},
        {"density", exp_density},
        {"cascade", exp_cascade},
        {"verify.levy", exp_levy},
        {"verify.fslen", exp_fslen},
        {"verify.integral1", exp_integral1},
        {"verify.integral2", exp_integral2},
        {"verify.ratio-algebra", exp_ratio},
        {"verify.identities", exp_identities},
        {"loewner.drift-check", exp_drift},
        {"loewner.flow-check", exp_flow},
        {"loewner.passage", exp_passage},
        {"loewner.weak-order", exp_weak_order},
        {"acceptance", exp_acceptance},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& item : registry()) v.push_back(item.first);
        return v;
    }();
    return names;
}

json run_experiment(const std::string& name, const json& params) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw DomainError("unknown experiment '" + name + "'");
    return it->second(params);
}

json to_json(const Check& c) {
    return {{"name", c.name},         {"value", value_or_inf(c.value)},
            {"reference", c.reference}, {"error", value_or_inf(c.error)},
            {"tolerance", c.tolerance}, {"measure", c.measure},
            {"provenance", c.provenance}, {"status", status_name(c.status)}};
}

json to_json(const CriterionResult& r) {
    json checks = json::array();
    for (const Check& c : r.checks) checks.push_back(to_json(c));
    return {{"criterion", r.id}, {"title", r.title},   {"tolerance", r.tolerance}, {"passed", r.passed()},
            {"quick", r.quick},  {"seconds", r.seconds}, {"checks", checks},      {"notes", r.notes}};
}

json gate_verdict(const json& checks) {
    bool any = false;
    for (const auto& c : checks) {
        const std::string s = c.value("status", "");
        if (s == "fail") return false;
        if (s == "pass") any = true;
    }
    return any ? json(true) : json(nullptr);
}

}  // namespace cle
