#include "cle/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cle/errors.hpp"
#include "cle/parallel.hpp"

namespace cle {

namespace {

void validate(const CascadeConfig& cfg) {
    if (!(cfg.a > 0.0) || !std::isfinite(cfg.a)) throw DomainError("cascade: a must be positive");
    if (!(cfg.c0 > 0.0) || !std::isfinite(cfg.c0)) throw DomainError("cascade: c0 must be positive");
    if (cfg.eps_grid.empty()) throw DomainError("cascade: empty eps grid");
    for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i) {
        const double e = cfg.eps_grid[i];
        if (!(e > 0.0 && e <= 1.0)) throw DomainError("cascade: eps must lie in (0,1]");
        if (i > 0 && !(e < cfg.eps_grid[i - 1])) throw DomainError("cascade: eps grid must be strictly decreasing");
    }
    if (cfg.n_samples < 1) throw DomainError("cascade: n_samples must be >= 1");
    if (!(cfg.h > 0.0)) throw DomainError("cascade: h must be positive");
    if (cfg.chunk < 1) throw DomainError("cascade: chunk must be >= 1");
}

// One draw of the weighted indicator a^{l} 1{S_sigma + F >= u}.
double np_weight(const CascadeModel& m, double a, double u, Engine& eng) {
    const double pt = m.p_touch();
    double s = 0.0;
    double w = 1.0;
    for (;;) {
        if (uniform01(eng) < pt) {
            const double f = m.final_sampler().draw(eng);
            return (s + f >= u) ? w : 0.0;
        }
        s += m.increment_sampler().draw(eng);
        if (s > u) return w;  // every later partial sum is above the level
        w *= a;
    }
}

double nl_weight(const CascadeModel& m, double a, double u, Engine& eng) {
    double s = 0.0;
    double w = 1.0;
    for (;;) {
        s += m.loop_sampler().draw(eng);
        if (s > u) return w;
        w *= a;
    }
}

template <class Draw>
CascadeEstimate run_mc(const CascadeConfig& cfg, CascadeMethod tag, Draw&& draw) {
    validate(cfg);
    CascadeEstimate out;
    out.method = tag;
    const std::size_t n = cfg.n_samples;
    const std::size_t chunks = (n + cfg.chunk - 1) / cfg.chunk;
    for (std::size_t e = 0; e < cfg.eps_grid.size(); ++e) {
        const double eps = cfg.eps_grid[e];
        const double u = std::log(cfg.c0 / eps);
        std::vector<double> s1(chunks), s2(chunks);
        parallel_for(chunks, cfg.threads, [&](std::size_t c) {
            Engine eng = make_engine(cfg.seed, {static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(c)});
            const std::size_t begin = c * cfg.chunk;
            const std::size_t end = std::min(n, begin + cfg.chunk);
            std::vector<double> w(end - begin);
            for (auto& x : w) x = draw(u, eng);
            double a1 = pairwise_sum(w);
            for (auto& x : w) x *= x;
            s1[c] = a1;
            s2[c] = pairwise_sum(w);
        });
        const double sum1 = pairwise_sum(s1);
        const double sum2 = pairwise_sum(s2);
        const double nn = static_cast<double>(n);
        const double mean = sum1 / nn;
        const double var = n > 1 ? std::max(0.0, (sum2 - nn * mean * mean) / (nn - 1.0)) : 0.0;
        const double ess = sum2 > 0.0 ? sum1 * sum1 / sum2 : 0.0;
        out.points.push_back({eps, u, mean, std::sqrt(var / nn), ess});
        if (cfg.a > 1.0 && ess < 100.0) {
            out.warnings.push_back("effective sample size " + std::to_string(ess) + " below 100 at eps = " +
                                   std::to_string(eps));
        }
    }
    if (out.points.size() >= 3) {
        out.fit = fit_exponent(out.points);
    } else {
        out.fit = {std::nan(""), std::nan(""), std::nan(""), std::nan(""), std::nan("")};
    }
    return out;
}

// Normalized law of one series: density f/mass and survival ccdf/mass, cut at s_min.
struct Normalized {
    const ResidueSeries* series;
    double mass;
    double density(double s) const { return s < series->s_min() ? 0.0 : series->density(s) / mass; }
    double survival(double s) const {
        if (s <= series->s_min()) return 1.0;
        return std::clamp(series->ccdf(s) / mass, 0.0, 1.0);
    }
};

// Solves V(u) = g(u) + c int_0^u f(s) V(u-s) ds on the grid u_j = j h (trapezoid).
std::vector<double> solve_renewal(const Normalized& law, double c, const std::vector<double>& g, double h) {
    const std::size_t n = g.size();
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = law.density(static_cast<double>(j) * h);
    std::vector<double> v(n);
    v[0] = g[0];
    for (std::size_t i = 1; i < n; ++i) {
        // j = 0 carries f(0) = 0; the j = i end point gets weight 1/2
        double acc = 0.5 * f[i] * v[0];
        for (std::size_t j = 1; j < i; ++j) acc += f[j] * v[i - j];
        acc += 0.5 * f[0] * v[i];
        v[i] = g[i] + c * h * acc;
    }
    return v;
}

// Four-point Lagrange interpolation on a uniform grid.
double interp(const std::vector<double>& v, double h, double u) {
    const double x = u / h;
    const std::size_t n = v.size();
    std::size_t i = static_cast<std::size_t>(std::floor(x));
    if (i + 1 >= n) return v.back();
    std::size_t b = i == 0 ? 0 : i - 1;
    if (b + 3 >= n) b = n - 4;
    const double t = x - static_cast<double>(b);
    const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
    const double l1 = t * (t - 2) * (t - 3) / 2.0;
    const double l2 = -t * (t - 1) * (t - 3) / 2.0;
    const double l3 = t * (t - 1) * (t - 2) / 6.0;
    return l0 * v[b] + l1 * v[b + 1] + l2 * v[b + 2] + l3 * v[b + 3];
}

template <class Solve>
CascadeEstimate run_renewal(const CascadeConfig& cfg, Solve&& solve) {
    validate(cfg);
    double umax = 0.0;
    for (double e : cfg.eps_grid) umax = std::max(umax, std::log(cfg.c0 / e));
    CascadeEstimate out;
    out.method = CascadeMethod::CONV;
    const double h = cfg.h;
    auto grid = [&](double step) {
        const std::size_t n = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(umax / step)) + 4);
        return solve(step, n);
    };
    const auto coarse = grid(h);
    const auto fine = grid(0.5 * h);
    for (double eps : cfg.eps_grid) {
        const double u = std::log(cfg.c0 / eps);
        double vc, vf;
        if (u <= 0.0) {
            vc = coarse[0];
            vf = fine[0];
        } else {
            vc = interp(coarse, h, u);
            vf = interp(fine, 0.5 * h, u);
        }
        const double v = (4.0 * vf - vc) / 3.0;
        const double err = std::abs(vf - vc) / 3.0;
        out.points.push_back({eps, u, v, err, std::numeric_limits<double>::infinity()});
    }
    if (out.points.size() >= 3) {
        out.fit = fit_exponent(out.points);
    } else {
        out.fit = {std::nan(""), std::nan(""), std::nan(""), std::nan(""), std::nan("")};
    }
    return out;
}

}  // namespace

std::vector<double> make_eps_grid(double eps_max, int decades, int points_per_decade) {
    if (!(eps_max > 0.0 && eps_max <= 1.0)) throw DomainError("eps_max must lie in (0,1]");
    if (decades < 1 || points_per_decade < 1) throw DomainError("eps grid needs decades >= 1 and points >= 1");
    std::vector<double> out;
    const int n = decades * points_per_decade;
    for (int i = 0; i <= n; ++i) out.push_back(eps_max * std::pow(10.0, -static_cast<double>(i) / points_per_decade));
    return out;
}

CascadeModel::CascadeModel(const KappaContext& ctx, int terms)
    : ctx_(ctx),
      p_touch_(touching_probability(ctx)),
      wtd_(build_series(ctx, Law::WTD, terms)),
      touch_(build_series(ctx, Law::TOUCH, terms)),
      ssw_(build_series(ctx, Law::SSW, terms)),
      x_sampler_(wtd_),
      f_sampler_(touch_),
      l_sampler_(ssw_) {}

CascadeSample sample_cascade(const CascadeModel& model, Engine& eng) {
    CascadeSample out;
    double s = 0.0;
    while (!(uniform01(eng) < model.p_touch())) {
        s += model.increment_sampler().draw(eng);
        out.partial_sums.push_back(s);
    }
    out.sigma = static_cast<int>(out.partial_sums.size());
    out.final_excess = model.final_sampler().draw(eng);
    return out;
}

CascadeEstimate estimate_functional_mc(const CascadeModel& model, const CascadeConfig& cfg) {
    if (cfg.method != CascadeMethod::MC) throw DomainError("estimate_functional_mc requires method = mc");
    const double a = cfg.a;
    return run_mc(cfg, CascadeMethod::MC, [&](double u, Engine& eng) { return np_weight(model, a, u, eng); });
}

CascadeEstimate estimate_functional_conv(const CascadeModel& model, const CascadeConfig& cfg) {
    if (cfg.method != CascadeMethod::CONV) throw DomainError("estimate_functional_conv requires method = conv");
    const Normalized x{&model.increment_series(), model.increment_series().mass()};
    const Normalized f{&model.final_series(), model.final_series().mass()};
    const double pt = model.p_touch();
    const double pn = 1.0 - pt;
    return run_renewal(cfg, [&](double step, std::size_t n) {
        std::vector<double> g(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double u = static_cast<double>(j) * step;
            g[j] = pt * f.survival(u) + pn * x.survival(u);
        }
        return solve_renewal(x, pn * cfg.a, g, step);
    });
}

CascadeEstimate estimate_functional(const CascadeModel& model, const CascadeConfig& cfg) {
    return cfg.method == CascadeMethod::MC ? estimate_functional_mc(model, cfg) : estimate_functional_conv(model, cfg);
}

CascadeEstimate nl_functional(const CascadeModel& model, const CascadeConfig& cfg) {
    if (cfg.method == CascadeMethod::MC) {
        const double a = cfg.a;
        return run_mc(cfg, CascadeMethod::MC, [&](double u, Engine& eng) { return nl_weight(model, a, u, eng); });
    }
    const Normalized l{&model.loop_series(), model.loop_series().mass()};
    return run_renewal(cfg, [&](double step, std::size_t n) {
        std::vector<double> g(n);
        for (std::size_t j = 0; j < n; ++j) g[j] = l.survival(static_cast<double>(j) * step);
        return solve_renewal(l, cfg.a, g, step);
    });
}

FitResult fit_exponent(const std::vector<EpsEstimate>& points) {
    if (points.size() < 3) throw DomainError("fit_exponent needs at least 3 points");
    std::vector<double> x, y, w;
    for (const auto& p : points) {
        if (!(p.value > 0.0)) throw DomainError("fit_exponent: estimate <= 0 at eps = " + std::to_string(p.eps));
        if (!std::isfinite(p.std_error)) throw DomainError("fit_exponent: non-finite standard error");
        const double rel = std::max(p.std_error / p.value, 1e-12);
        x.push_back(std::log(p.eps));
        y.push_back(std::log(p.value));
        w.push_back(1.0 / (rel * rel));
    }
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    const double xm = sx / sw;
    const double ym = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - xm) * (x[i] - xm);
        sxy += w[i] * (x[i] - xm) * (y[i] - ym);
    }
    if (!(sxx > 0.0)) throw DomainError("fit_exponent: degenerate eps grid");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = ym - r.slope * xm;
    r.slope_se = std::sqrt(1.0 / sxx);
    double chi2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = y[i] - (r.intercept + r.slope * x[i]);
        chi2 += w[i] * d * d;
    }
    r.chi2_red = chi2 / static_cast<double>(x.size() - 2);
    r.half_width = 1.96 * r.slope_se * std::max(1.0, std::sqrt(r.chi2_red));
    return r;
}

}  // namespace cle
