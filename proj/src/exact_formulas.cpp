#include "cle/exact_formulas.hpp"

#include <array>
#include <string>
#include <vector>

#include "cle/errors.hpp"

namespace cle {

namespace {

constexpr double kThresholdSlack = 1e-14;

bool at_or_below(double lambda, double threshold) { return lambda <= threshold + kThresholdSlack; }

double ssw_threshold(double k) { return 3.0 * k / 32.0 + 2.0 / k - 1.0; }
double touch_threshold(double k) { return k / 8.0 - 1.0; }

// cos(pi (kappa-4)/kappa), positive on (4,8)
double c_ssw(double k) { return std::cos(kPi * (k - 4.0) / k); }

// Pole-free form of the stationarity condition.
double kappa0_smooth(double x) {
    const double a = kPi * (x / 4.0 + 8.0 / x);
    const double b = kPi * (x - 4.0) / 4.0;
    const double da = kPi * (x * x - 32.0) / (4.0 * x * x);
    const double db = kPi / 4.0;
    return da * std::cos(a) * std::sin(b) - db * std::sin(a) * std::cos(b);
}

}  // namespace

std::string_view law_name(Law law) {
    switch (law) {
        case Law::SSW: return "ssw";
        case Law::TOUCH: return "touch";
        case Law::NONTOUCH: return "nontouch";
        case Law::WTD: return "wtd";
    }
    return "?";
}

Law law_from_name(std::string_view name) {
    if (name == "ssw") return Law::SSW;
    if (name == "touch") return Law::TOUCH;
    if (name == "nontouch") return Law::NONTOUCH;
    if (name == "wtd") return Law::WTD;
    throw DomainError("unknown law '" + std::string(name) + "'");
}

double touching_probability(const KappaContext& ctx) {
    const double k = ctx.kappa();
    return 1.0 - std::sin(kPi * (k / 4.0 + 8.0 / k)) / std::sin(kPi * (k - 4.0) / 4.0);
}

double kappa0_equation(double x) {
    return std::tan(kPi * (x / 4.0 + 8.0 / x)) - ((x * x - 32.0) / (x * x)) * std::tan(kPi * x / 4.0);
}

double kappa0_argmax() {
    constexpr double lo = 4.5;
    constexpr double hi = 7.9;
    constexpr int panels = 64;
    std::vector<std::array<double, 2>> brackets;
    double x0 = lo;
    double f0 = kappa0_smooth(x0);
    for (int i = 1; i <= panels; ++i) {
        const double x1 = lo + (hi - lo) * i / panels;
        const double f1 = kappa0_smooth(x1);
        if (f0 == 0.0 || (f0 < 0.0) != (f1 < 0.0)) brackets.push_back({x0, x1});
        x0 = x1;
        f0 = f1;
    }
    if (brackets.size() != 1) {
        throw BracketError("kappa0 scan found " + std::to_string(brackets.size()) + " sign changes");
    }
    double a = brackets[0][0];
    double b = brackets[0][1];
    double fa = kappa0_smooth(a);
    while (b - a > 1e-10) {
        const double m = 0.5 * (a + b);
        const double fm = kappa0_smooth(m);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

MomentValue ssw_moment(const KappaContext& ctx, double lambda) {
    const double k = ctx.kappa();
    if (at_or_below(lambda, ssw_threshold(k))) return MomentValue::infinite();
    const double t = ctx.t_of_lambda(lambda);
    return MomentValue::finite(c_ssw(k) / gcos(kPi / k, t));
}

MomentValue cr_moment_touching(const KappaContext& ctx, double lambda) {
    const double k = ctx.kappa();
    if (at_or_below(lambda, touch_threshold(k))) return MomentValue::infinite();
    const double t = ctx.t_of_lambda(lambda);
    return MomentValue::finite(2.0 * c_ssw(k) * gsin_ratio(kPi * (k - 4.0) / (4.0 * k), kPi / 4.0, t));
}

MomentValue cr_moment_nontouching(const KappaContext& ctx, double lambda) {
    const double k = ctx.kappa();
    if (at_or_below(lambda, ssw_threshold(k))) return MomentValue::infinite();
    const double t = ctx.t_of_lambda(lambda);
    const double r = gsin_ratio(kPi * (8.0 - k) / (4.0 * k), kPi / 4.0, t);
    return MomentValue::finite(c_ssw(k) * r / gcos(kPi / k, t));
}

MomentValue wtd_moment(const KappaContext& ctx, double lambda) {
    const double k = ctx.kappa();
    if (at_or_below(lambda, touch_threshold(k))) return MomentValue::infinite();
    const double t = ctx.t_of_lambda(lambda);
    return MomentValue::finite(gsin_ratio(kPi * (8.0 - k) / (4.0 * k), kPi / 4.0, t));
}

MomentValue moment(const KappaContext& ctx, Law law, double lambda) {
    switch (law) {
        case Law::SSW: return ssw_moment(ctx, lambda);
        case Law::TOUCH: return cr_moment_touching(ctx, lambda);
        case Law::NONTOUCH: return cr_moment_nontouching(ctx, lambda);
        case Law::WTD: return wtd_moment(ctx, lambda);
    }
    throw DomainError("bad law tag");
}

double moment_continued(const KappaContext& ctx, Law law, double lambda) {
    const double k = ctx.kappa();
    const double t = ctx.t_of_lambda(lambda);
    const double b = kPi * (8.0 - k) / (4.0 * k);
    switch (law) {
        case Law::SSW: return c_ssw(k) / gcos(kPi / k, t);
        case Law::TOUCH: return 2.0 * c_ssw(k) * gsin_ratio(kPi * (k - 4.0) / (4.0 * k), kPi / 4.0, t);
        case Law::NONTOUCH: return c_ssw(k) * gsin_ratio(b, kPi / 4.0, t) / gcos(kPi / k, t);
        case Law::WTD: return gsin_ratio(b, kPi / 4.0, t);
    }
    throw DomainError("bad law tag");
}

double moment_threshold(const KappaContext& ctx, Law law) {
    const double k = ctx.kappa();
    switch (law) {
        case Law::SSW:
        case Law::NONTOUCH: return ssw_threshold(k);
        case Law::TOUCH:
        case Law::WTD: return touch_threshold(k);
    }
    throw DomainError("bad law tag");
}

double law_mass(const KappaContext& ctx, Law law) {
    const double p = touching_probability(ctx);
    switch (law) {
        case Law::SSW: return 1.0;
        case Law::TOUCH: return p;
        case Law::NONTOUCH:
        case Law::WTD: return 1.0 - p;
    }
    throw DomainError("bad law tag");
}

AlphaParam make_alpha(const KappaContext& ctx, double alpha) {
    const double q = ctx.q_coeff();
    const double top = 4.0 / ctx.gamma();
    if (!(alpha > q) || alpha > top * (1.0 + 1e-12)) {
        throw DomainError("alpha must lie in (Q, 4/gamma], got " + std::to_string(alpha));
    }
    if (alpha > top) alpha = top;
    const double delta = 0.5 * alpha * (q - 0.5 * alpha);
    return AlphaParam{alpha, delta, 2.0 * delta - 2.0};
}

AlphaParam alpha_from_lambda(const KappaContext& ctx, double lambda) {
    const double q = ctx.q_coeff();
    const double disc = q * q - 2.0 * (lambda + 2.0);
    if (!(disc > 0.0)) {
        throw DomainError("lambda " + std::to_string(lambda) + " above the range attained by alpha > Q");
    }
    const double alpha = q + std::sqrt(disc);
    const double top = 4.0 / ctx.gamma();
    if (alpha > top * (1.0 + 1e-12)) {
        throw DomainError("lambda " + std::to_string(lambda) + " below the range attained by alpha <= 4/gamma");
    }
    return make_alpha(ctx, alpha);
}

double nontouch_ratio(const KappaContext& ctx, const AlphaParam& alpha) {
    const double g = ctx.gamma();
    const double q = ctx.q_coeff();
    const double top = 4.0 / g;
    if (!(alpha.alpha > q) || alpha.alpha > top * (1.0 + 1e-12)) {
        throw DomainError("alpha must lie in (Q, 4/gamma]");
    }
    const double a = g - 2.0 / g;
    const double b = 2.0 / g - g / 2.0;
    const double x = q - alpha.alpha;
    const double c = 2.0 * std::cos(kPi * (1.0 - g * g / 4.0));
    double r;
    if (std::abs(x) < 1e-8) {
        r = (a / b) * (1.0 - kPi * kPi * (a * a - b * b) * x * x / 6.0);
    } else {
        r = std::sin(kPi * a * x) / std::sin(kPi * b * x);
    }
    return r / c;
}

}  // namespace cle
