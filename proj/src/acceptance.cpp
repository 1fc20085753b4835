#include "cle/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <utility>

#include "cle/cascade.hpp"
#include "cle/errors.hpp"
#include "cle/exact_formulas.hpp"
#include "cle/exponents.hpp"
#include "cle/levy_verify.hpp"
#include "cle/radial_loewner.hpp"
#include "cle/radii_laws.hpp"
#include "cle/rng.hpp"

namespace cle {

namespace {

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string fmt2(const char* f, double x, double y) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, x, y);
    return buf;
}

CheckStatus judge(double error, double tol) { return error < tol ? CheckStatus::Pass : CheckStatus::Fail; }

const std::vector<double>& battery_kappas() {
    static const std::vector<double> k{4.5, 5.0, 16.0 / 3.0, 6.0, 7.0, 7.5};
    return k;
}

// Largest relative error of a closed-form identity over a grid.
struct Worst {
    double err = 0.0;
    std::string where;
    void add(double e, const std::string& w) {
        if (!(e <= err)) {
            err = e;
            where = w;
        }
    }
};

double rel(double v, double r) { return std::abs(v - r) / std::max(std::abs(r), 1e-300); }

// ---- 1: exact values -------------------------------------------------------

void criterion1(CriterionResult& r) {
    r.title = "exact values";
    r.tolerance = "P_T(6) 1e-12, kappa0 1e-4, root_np 1e-10, root_nl 1e-10";
    r.checks.push_back(abs_check("touching_probability(6)", touching_probability(KappaContext(6.0)), 0.5, 1e-12,
                                 "closed-form"));
    r.checks.push_back(abs_check("kappa0", kappa0_argmax(), 6.95061, 1e-4, "closed-form"));
    r.checks.push_back(
        abs_check("root_np(6,1)", root_np(KappaContext(6.0), 1.0), 5.0 / 48.0, 1e-10, "closed-form"));
    r.checks.push_back(
        abs_check("root_np(16/3,1)", root_np(KappaContext(16.0 / 3.0), 1.0), 1.0 / 8.0, 1e-10, "closed-form"));
    for (double k : {4.5, 16.0 / 3.0, 6.0, 7.5}) {
        r.checks.push_back(abs_check(fmt("root_nl(%.4g,1)", k), root_nl(KappaContext(k), 1.0), 0.0, 1e-10,
                                     "closed-form"));
    }
}

// ---- 2: identity battery ----------------------------------------------------

void criterion2(CriterionResult& r) {
    r.title = "identity battery";
    r.tolerance = "relative 1e-9 on 6 kappa x 12 lambda/alpha";
    constexpr int kGrid = 12;
    Worst sum, prod, mass, ratio, root, nl;
    const Law laws[] = {Law::SSW, Law::TOUCH, Law::NONTOUCH, Law::WTD};
    for (double k : battery_kappas()) {
        const KappaContext c(k);
        double lo = -1e300;
        for (Law l : laws) lo = std::max(lo, moment_threshold(c, l));
        const double hi = 2.0;
        for (int j = 0; j < kGrid; ++j) {
            const double lam = lo + (hi - lo) * (j + 0.5) / kGrid;
            const std::string at = fmt2("kappa=%.4g lambda=%.4g", k, lam);
            const double a = cr_moment_touching(c, lam).value();
            const double b = cr_moment_nontouching(c, lam).value();
            const double s = ssw_moment(c, lam).value();
            const double w = wtd_moment(c, lam).value();
            sum.add(rel(a + b, s), at);
            prod.add(rel(w * s, b), at);
        }
        for (Law l : laws) mass.add(rel(moment(c, l, 0.0).value(), law_mass(c, l)), fmt("kappa=%.4g", k));
        mass.add(rel(law_mass(c, Law::TOUCH) + law_mass(c, Law::NONTOUCH), 1.0), fmt("kappa=%.4g", k));
        const double q = c.q_coeff();
        const double top = 4.0 / c.gamma();
        for (int j = 1; j <= kGrid; ++j) {
            const AlphaParam al = make_alpha(c, q + (top - q) * j / (kGrid + 1.0));
            const double lam = al.lambda_equiv;
            const double want = cr_moment_nontouching(c, lam).value() /
                                (ssw_moment(c, lam).value() * cr_moment_touching(c, lam).value());
            ratio.add(rel(nontouch_ratio(c, al), want), fmt2("kappa=%.4g alpha=%.5g", k, al.alpha));
        }
        for (double a : {0.3, 0.7, 1.0, 1.5, 3.0}) {
            const std::string at = fmt2("kappa=%.4g a=%.2g", k, a);
            root.add(rel(wtd_moment(c, -root_np(c, a)).value(), 1.0 / a), at);
            nl.add(rel(ssw_moment(c, -root_nl(c, a)).value(), 1.0 / a), at);
        }
    }
    const std::pair<const char*, Worst*> rows[] = {
        {"A+B = SSW", &sum},       {"wtD*SSW = B", &prod},         {"masses", &mass},
        {"ratio identity", &ratio}, {"wtd(-root_np(a)) = 1/a", &root}, {"ssw(-root_nl(a)) = 1/a", &nl}};
    for (const auto& [name, w] : rows) {
        r.checks.push_back(bound_check(name, w->err, 1e-9, "closed-form"));
        r.notes.push_back(std::string(name) + " worst at " + w->where);
    }
}

// ---- 3: Legendre duality ----------------------------------------------------

void criterion3(CriterionResult& r) {
    r.title = "Legendre duality";
    r.tolerance = "duality 1e-6 on both branches, root_np vs Lambda inverse 1e-8";
    Worst lower, upper, inv;
    int n_lower = 0;
    int n_upper = 0;
    for (double k : {4.5, 16.0 / 3.0, 6.0, 7.0, 7.5}) {
        const KappaContext c(k);
        const double pc = 1.0 - touching_probability(c);
        for (double a : {0.3, 0.7, 1.0, 1.5, 2.5, 4.0}) {
            const std::string at = fmt2("kappa=%.4g a=%.2g", k, a);
            const DualityResult d = rate_duality_check(c, a);
            if (d.upper_branch) {
                upper.add(d.discrepancy, at);
                ++n_upper;
            } else {
                lower.add(d.discrepancy, at);
                ++n_lower;
            }
            inv.add(std::abs(root_np(c, a) - lambda_inverse(c, -std::log(a * pc))), at);
        }
    }
    Check lo = bound_check("duality, a P[T^c] < 1", lower.err, 1e-6, "closed-form");
    Check hi = bound_check("duality, a P[T^c] > 1", upper.err, 1e-6, "closed-form");
    if (n_lower == 0) lo.status = CheckStatus::Fail;
    if (n_upper == 0) hi.status = CheckStatus::Fail;
    r.checks.push_back(lo);
    r.checks.push_back(hi);
    r.checks.push_back(bound_check("root_np = Lambda^-1(-log a P[T^c])", inv.err, 1e-8, "closed-form"));
    r.notes.push_back("grid points per branch: " + std::to_string(n_lower) + " lower, " + std::to_string(n_upper) +
                      " upper");
}

// ---- 4: transform round-trips -------------------------------------------------

void criterion4(CriterionResult& r) {
    r.title = "transform round-trips";
    r.tolerance = "transform relative 1e-6 on 6 lambda points, mass 1e-8";
    for (double k : {16.0 / 3.0, 6.0, 7.0}) {
        const KappaContext c(k);
        for (Law l : {Law::SSW, Law::TOUCH, Law::NONTOUCH, Law::WTD}) {
            const ResidueSeries s = build_series(c, l);
            const double thr = moment_threshold(c, l);
            const std::vector<double> grid{thr + 0.01, thr + 0.5 * (0.0 - thr), 0.0, 0.1, 1.0, 5.0};
            const std::string tag = std::string(law_name(l)) + fmt(" kappa=%.4g", k);
            r.checks.push_back(bound_check("round-trip " + tag, transform_roundtrip(s, grid), 1e-6, "quadrature"));
            r.checks.push_back(abs_check("mass " + tag, s.mass(), law_mass(c, l), 1e-8, "closed-form"));
        }
    }
}

// ---- 5: cascade exponent --------------------------------------------------------

CascadeEstimate run_cascade(const CascadeModel& m, CascadeMethod method, double c0, std::uint64_t seed,
                            unsigned threads) {
    CascadeConfig cfg;
    cfg.a = 1.0;
    cfg.eps_grid = make_eps_grid(0.1, 2, 3);
    cfg.n_samples = 1'000'000;
    cfg.seed = seed;
    cfg.c0 = c0;
    cfg.method = method;
    cfg.threads = threads;
    return estimate_functional(m, cfg);
}

void criterion5(CriterionResult& r, const AcceptanceOptions& opt) {
    r.title = "cascade exponent";
    r.tolerance = "MC 0.01, conv 0.005, c0 sweep < fit half-width";
    const CascadeModel m6(KappaContext(6.0));
    const std::uint64_t s = stream_seed(opt.seed, {5});
    const double t6 = 5.0 / 48.0;
    const CascadeEstimate mc = run_cascade(m6, CascadeMethod::MC, 1.0, s, opt.threads);
    const CascadeEstimate cv = run_cascade(m6, CascadeMethod::CONV, 1.0, s, opt.threads);
    r.checks.push_back(abs_check("MC slope kappa=6", mc.fit.slope, t6, 0.01, "mc"));
    r.checks.push_back(abs_check("conv slope kappa=6", cv.fit.slope, t6, 0.005, "renewal"));
    const CascadeModel m163(KappaContext(16.0 / 3.0));
    const CascadeEstimate mc163 = run_cascade(m163, CascadeMethod::MC, 1.0, stream_seed(opt.seed, {5, 16}),
                                              opt.threads);
    r.checks.push_back(abs_check("MC slope kappa=16/3", mc163.fit.slope, 0.125, 0.01, "mc"));
    for (const auto& [method, base] : {std::pair{CascadeMethod::MC, &mc}, std::pair{CascadeMethod::CONV, &cv}}) {
        const char* tag = method == CascadeMethod::MC ? "MC" : "conv";
        r.notes.push_back(std::string(tag) + fmt2(" c0=1: slope %.6f half-width %.6f", base->fit.slope,
                                                 base->fit.half_width));
        for (double c0 : {0.25, 4.0}) {
            const CascadeEstimate e = run_cascade(m6, method, c0, s, opt.threads);
            r.checks.push_back(abs_check(std::string(tag) + fmt(" c0 sweep %.4g", c0), e.fit.slope, base->fit.slope,
                                         base->fit.half_width, method == CascadeMethod::MC ? "mc" : "renewal"));
            r.notes.push_back(std::string(tag) + fmt2(" c0=%.4g: slope %.6f", c0, e.fit.slope) +
                              fmt(" half-width %.6f", e.fit.half_width));
        }
    }
    for (const auto& w : mc.warnings) r.notes.push_back("warning: " + w);
}

// ---- 6: Levy moment ----------------------------------------------------------------

void criterion6(CriterionResult& r, const AcceptanceOptions& opt) {
    r.title = "Levy moment";
    r.tolerance = "relative 2% at n = 1e7";
    struct Point {
        double kappa, p, l1, l2;
    };
    const Point pts[] = {{6.0, -0.3, 1.0, 1.0}, {6.0, -0.2, 1.0, 2.0}, {16.0 / 3.0, -0.4, 2.0, 1.0},
                         {7.0, -0.25, 0.5, 1.5}};
    const std::size_t n = opt.quick ? 1'000'000 : 10'000'000;
    std::uint64_t i = 0;
    for (const Point& p : pts) {
        const LevyCheck c =
            lemma_levy_check(KappaContext(p.kappa), p.p, p.l1, p.l2, n, stream_seed(opt.seed, {6, i++}), opt.threads);
        char name[96];
        std::snprintf(name, sizeof name, "kappa=%.4g p=%.3g l1=%.3g l2=%.3g", p.kappa, p.p, p.l1, p.l2);
        r.checks.push_back(rel_check(name, c.mc_value, c.closed_value, 0.02, "mc"));
        for (const auto& w : c.warnings) r.notes.push_back(std::string(name) + ": " + w);
    }
    if (opt.quick) r.notes.push_back("quick: n = 1e6 per point");
}

// ---- 7: integral identities -------------------------------------------------------

void criterion7(CriterionResult& r) {
    r.title = "integral identities";
    r.tolerance = "relative 1e-5";
    const double grid[] = {-0.9, -0.7, -0.5, -0.3, -0.1};
    Worst w1;
    for (double a : grid) {
        for (double b : grid) {
            if (a == b) continue;
            w1.add(integral_identity_1(a, b).rel_err, fmt2("a=%.2g b=%.2g", a, b));
        }
    }
    w1.add(integral_identity_1(-0.01, -0.99).rel_err, "a=-0.01 b=-0.99");
    r.checks.push_back(bound_check("integral 1 (21 pairs)", w1.err, 1e-5, "quadrature"));
    r.notes.push_back("integral 1 worst at " + w1.where);
    Worst w2;
    for (double k : {4.5, 16.0 / 3.0, 6.0, 7.0, 7.5}) {
        const KappaContext c(k);
        const double lo = c.gamma2() / 4.0 - 1.0;
        for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double p = lo * (1.0 - f);
            const IntegralCheck ic = integral_identity_2(c, p);
            w2.add(std::max(ic.rel_err_real, ic.rel_err_imag), fmt2("kappa=%.4g p=%.4g", k, p));
        }
    }
    r.checks.push_back(bound_check("integral 2 (5 kappa x 5 p)", w2.err, 1e-5, "quadrature"));
    r.notes.push_back("integral 2 worst at " + w2.where);
}

// ---- 8: ratio algebra ------------------------------------------------------------------

void criterion8(CriterionResult& r) {
    r.title = "ratio algebra";
    r.tolerance = "1e-9 on 5 kappa x 5 alpha";
    Worst w, im;
    for (double k : {4.5, 5.0, 6.0, 7.0, 7.5}) {
        const KappaContext c(k);
        const double q = c.q_coeff();
        const double top = 4.0 / c.gamma();
        for (int i = 1; i <= 5; ++i) {
            const double alpha = q + (top - q) * i / 6.0;
            const RatioAlgebra ra = ratio_algebra_check(c, alpha);
            w.add(ra.discrepancy, fmt2("kappa=%.4g alpha=%.5g", k, alpha));
            im.add(std::abs(ra.assembled_imag), fmt2("kappa=%.4g alpha=%.5g", k, alpha));
        }
    }
    r.checks.push_back(bound_check("assembled vs nontouch ratio", w.err, 1e-9, "closed-form"));
    r.checks.push_back(bound_check("imaginary residue", im.err, 1e-9, "closed-form"));
    r.notes.push_back("worst at " + w.where);
}

// ---- 9: Loewner -----------------------------------------------------------------------

void criterion9(CriterionResult& r, const AcceptanceOptions& opt) {
    r.title = "Loewner";
    r.tolerance = "drift 1e-12, g'(0) 1e-6, boundary 1e-8, side frequency 1% at n = 1e5";
    double drift = 0.0;
    for (double k : {4.5, 6.0, 7.5}) {
        const DriftCheck d = drift_identity_check(KappaContext(k), 1000, stream_seed(opt.seed, {9, 1}));
        drift = std::max({drift, d.max_phi_error, d.max_theta_error});
    }
    r.checks.push_back(bound_check("drift identities (3 x 1000 states)", drift, 1e-12, "closed-form"));

    const KappaContext k6(6.0);
    std::vector<cplx> pts{cplx(0.3, 0.0), cplx(0.0, 0.5), cplx(-0.2, -0.6)};
    for (int j = 1; j <= 12; ++j) pts.push_back(std::polar(1.0, 0.5 * j));
    constexpr double dt = 1e-4;
    double gerr = 0.0;
    double bdrift = 0.0;
    const int paths = opt.quick ? 1 : 3;
    for (int p = 0; p < paths; ++p) {
        const auto theta = sample_driving_path(k6, kPi, 1.0, dt, stream_seed(opt.seed, {9, 2, std::uint64_t(p)}));
        const FlowState f = evolve_flow(theta, dt, pts);
        gerr = std::max(gerr, rel(f.gprime_estimate, std::exp(f.t)));
        bdrift = std::max(bdrift, f.max_boundary_drift);
    }
    r.checks.push_back(bound_check("g_t'(0) vs e^t at t=1", gerr, 1e-6, "sde"));
    r.checks.push_back(bound_check("boundary modulus drift", bdrift, 1e-8, "sde"));

    const PassageParams pp;
    struct Start {
        double psi0;
        const char* tag;
    };
    std::vector<Start> starts{{kPi, "psi0=pi"}};
    if (!opt.quick) starts.push_back({2.0 * kPi / 3.0, "psi0=2pi/3"});
    std::uint64_t i = 0;
    for (const Start& s : starts) {
        const auto samples = first_passage(k6, s.psi0, 100'000, stream_seed(opt.seed, {9, 3, i++}), pp, opt.threads);
        const PassageSummary sm = summarize_passage(k6, s.psi0, pp.delta_abs, samples);
        r.checks.push_back(bound_check(std::string("upper exit frequency ") + s.tag, sm.rel_err_upper, 0.01, "sde"));
        r.checks.push_back(bound_check(std::string("lower exit frequency ") + s.tag, sm.rel_err_lower, 0.01, "sde"));
        r.notes.push_back(std::string(s.tag) + fmt2(": upper frequency %.5f, scale function %.5f", sm.freq_upper,
                                                    sm.predicted_upper) +
                          fmt(", censored %.0f", static_cast<double>(sm.censored)));
    }
    r.notes.push_back(fmt2("passage dt %.3g, boundary scale %.3g", pp.dt, pp.boundary_scale));
}

// ---- 10: forested length ------------------------------------------------------------------

void criterion10(CriterionResult& r, const AcceptanceOptions& opt) {
    r.title = "forested length law";
    r.tolerance = "slope within 0.05 over [1, 100]";
    struct Point {
        double kappa, q;
    };
    const std::size_t n = opt.quick ? 1'000'000 : 4'000'000;
    std::uint64_t i = 0;
    for (const Point& p : {Point{6.0, 0.5}, Point{6.0, 1.0}, Point{16.0 / 3.0, 1.5}}) {
        const ForestedLengthCheck f = forested_length_law_check(KappaContext(p.kappa), p.q, 1.0, 100.0, n,
                                                                stream_seed(opt.seed, {10, i++}), opt.threads);
        r.checks.push_back(abs_check(fmt2("kappa=%.4g q=%.2g", p.kappa, p.q), f.slope, f.target, 0.05, "mc"));
        for (const auto& w : f.warnings) r.notes.push_back(w);
    }
    if (opt.quick) r.notes.push_back("quick: n = 1e6 per point");
}

}  // namespace

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

Check abs_check(std::string name, double value, double reference, double tol, std::string provenance) {
    Check c{std::move(name), value, reference, std::abs(value - reference), tol, "abs", std::move(provenance)};
    c.status = judge(c.error, tol);
    return c;
}

Check rel_check(std::string name, double value, double reference, double tol, std::string provenance) {
    Check c{std::move(name), value, reference, rel(value, reference), tol, "rel", std::move(provenance)};
    c.status = judge(c.error, tol);
    return c;
}

Check bound_check(std::string name, double value, double tol, std::string provenance) {
    Check c{std::move(name), value, 0.0, value, tol, "bound", std::move(provenance)};
    c.status = judge(c.error, tol);
    return c;
}

bool CriterionResult::passed() const {
    bool ran = false;
    for (const Check& c : checks) {
        if (c.status == CheckStatus::Fail) return false;
        if (c.status == CheckStatus::Pass) ran = true;
    }
    return ran;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
    CriterionResult r;
    r.id = id;
    r.quick = opt.quick;
    const auto t0 = std::chrono::steady_clock::now();
    switch (id) {
        case 1: criterion1(r); break;
        case 2: criterion2(r); break;
        case 3: criterion3(r); break;
        case 4: criterion4(r); break;
        case 5: criterion5(r, opt); break;
        case 6: criterion6(r, opt); break;
        case 7: criterion7(r); break;
        case 8: criterion8(r); break;
        case 9: criterion9(r, opt); break;
        case 10: criterion10(r, opt); break;
        default: throw DomainError("acceptance criterion must be 1..10");
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace cle
