#include "cle/exponents.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "cle/errors.hpp"
#include "cle/exact_formulas.hpp"

namespace cle {

namespace {

constexpr int kScanPoints = 4096;
constexpr double kBracketCap = 1e6;

// Root of f on (lo, hi] where f(hi) < 0 and f decreases to the left end.
// The left end is pushed out until f > 0; every sign change on a grid is reported.
double solve_decreasing(const std::function<double(double)>& f, double hi, const char* what) {
    double lo = -1.0;
    while (!(f(lo) > 0.0)) {
        lo *= 2.0;
        if (-lo > kBracketCap) {
            throw BracketError(std::string(what) + ": no sign change with |t_left| <= 1e6");
        }
    }
    std::vector<std::pair<double, double>> brackets;
    double x0 = lo;
    double f0 = f(lo);
    for (int i = 1; i <= kScanPoints; ++i) {
        const double x1 = lo + (hi - lo) * i / kScanPoints;
        const double f1 = f(x1);
        if ((f0 > 0.0) != (f1 > 0.0)) brackets.emplace_back(x0, x1);
        x0 = x1;
        f0 = f1;
    }
    auto bisect = [&](double a, double b) {
        double fa = f(a);
        for (int it = 0; it < 400 && b - a > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
            const double m = 0.5 * (a + b);
            const double fm = f(m);
            if ((fm > 0.0) == (fa > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };
    if (brackets.size() != 1) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": expected one sign change, found " << brackets.size();
        if (!brackets.empty()) {
            os << " at t =";
            for (auto [a, b] : brackets) os << ' ' << bisect(a, b);
        }
        throw BracketError(os.str());
    }
    return bisect(brackets[0].first, brackets[0].second);
}

double c_wtd(double k) { return kPi * (8.0 - k) / (4.0 * k); }

}  // namespace

double root_np(const KappaContext& ctx, double a) {
    if (!(a > 0.0)) throw DomainError("root_np requires a > 0");
    const double k = ctx.kappa();
    const double c = c_wtd(k);
    auto f = [&](double t) { return 1.0 / gsin_ratio(c, kPi / 4.0, t) - a; };
    const double t = solve_decreasing(f, 16.0, "root_np");
    return (t - (k - 4.0) * (k - 4.0)) / (8.0 * k);
}

double root_nl(const KappaContext& ctx, double a) {
    if (!(a > 0.0)) throw DomainError("root_nl requires a > 0");
    const double k = ctx.kappa();
    const double rhs = a * std::cos(kPi * (k - 4.0) / k);
    auto f = [&](double t) { return gcos(kPi / k, t) - rhs; };
    const double t = solve_decreasing(f, k * k / 4.0, "root_nl");
    return (t - (k - 4.0) * (k - 4.0)) / (8.0 * k);
}

double closed_form_np(double kappa, double a) {
    if (!(a > 0.0)) throw DomainError("closed_form_np requires a > 0");
    if (std::abs(kappa - 6.0) < 1e-12) {
        const double arg = (a - 1.0) / 2.0;
        if (arg < -1.0 || arg > 1.0) throw DomainError("kappa=6 closed form needs a in (0,3]");
        const double ac = std::acos(arg);
        return 3.0 / (4.0 * kPi * kPi) * ac * ac - 1.0 / 12.0;
    }
    if (std::abs(kappa - 16.0 / 3.0) < 1e-12) {
        const double arg = a / 2.0;
        if (arg > 1.0) throw DomainError("kappa=16/3 closed form needs a in (0,2]");
        const double ac = std::acos(arg);
        return 3.0 / (2.0 * kPi * kPi) * ac * ac - 1.0 / 24.0;
    }
    throw DomainError("closed forms exist only for kappa = 6 and kappa = 16/3");
}

std::optional<double> lambda_value(const KappaContext& ctx, double lam) {
    const double k = ctx.kappa();
    if (lam >= 1.0 - k / 8.0) return std::nullopt;
    const MomentValue m = wtd_moment(ctx, -lam);
    if (m.is_infinite()) return std::nullopt;
    return std::log(m.value() / (1.0 - touching_probability(ctx)));
}

double lambda_derivative(const KappaContext& ctx, double lam) {
    const double k = ctx.kappa();
    if (lam >= 1.0 - k / 8.0) return std::numeric_limits<double>::infinity();
    const double t = ctx.t_of_lambda(-lam);
    return 8.0 * k * dlog_gsin_ratio(c_wtd(k), kPi / 4.0, t);
}

double lambda_prime_zero(const KappaContext& ctx) {
    constexpr double h = 1e-6;
    return (*lambda_value(ctx, h) - *lambda_value(ctx, -h)) / (2.0 * h);
}

double lambda_inverse(const KappaContext& ctx, double y) {
    const double top = 1.0 - ctx.kappa() / 8.0;
    double lo = -1.0;
    while (*lambda_value(ctx, lo) >= y) {
        lo *= 2.0;
        if (-lo > kBracketCap) throw BracketError("lambda_inverse: target below Lambda(-1e6)");
    }
    double hi = top;
    for (int it = 0; it < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double m = 0.5 * (lo + hi);
        const auto v = lambda_value(ctx, m);
        if (v && *v < y) {
            lo = m;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<double> legendre_star(const KappaContext& ctx, double s) {
    if (!(s > 0.0)) return std::nullopt;
    const double top = 1.0 - ctx.kappa() / 8.0;
    // Lambda' increases from 0 to infinity on (-inf, top): solve Lambda'(lam) = s.
    double lo = -1.0;
    while (lambda_derivative(ctx, lo) >= s) {
        lo *= 2.0;
        if (-lo > 1e12) throw BracketError("legendre_star: slope too small to bracket");
    }
    double hi = top;
    double lam = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double d = lambda_derivative(ctx, lam) - s;
        if (std::abs(d) <= 1e-14 * s) break;
        if (d < 0.0) {
            lo = lam;
        } else {
            hi = lam;
        }
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(lam))) break;
        // Newton step on Lambda' using a secant-free second derivative estimate
        const double h = 1e-7 * std::max(1.0, std::abs(lam));
        double next = 0.5 * (lo + hi);
        if (lam + h < top) {
            const double d2 = (lambda_derivative(ctx, lam + h) - lambda_derivative(ctx, lam - h)) / (2.0 * h);
            if (d2 > 0.0) {
                const double cand = lam - d / d2;
                if (cand > lo && cand < hi) next = cand;
            }
        }
        if (next == lam) break;
        lam = next;
    }
    const auto lv = lambda_value(ctx, lam);
    if (!lv) return std::nullopt;
    return lam * s - *lv;
}

DualityResult rate_duality_check(const KappaContext& ctx, double a) {
    if (!(a > 0.0)) throw DomainError("rate_duality_check requires a > 0");
    const double pc = 1.0 - touching_probability(ctx);
    const double L = std::log(a * pc);
    if (std::abs(L) < 1e-12) {
        throw DomainError("boundary case a*P[T^c] = 1: duality check skipped");
    }
    const double c1 = 1.0 / lambda_prime_zero(ctx);
    auto h = [&](double t) {
        const auto ls = legendre_star(ctx, 1.0 / t);
        if (!ls) return -std::numeric_limits<double>::infinity();
        return L * t - t * (*ls);
    };
    auto neg = [&](double t) { return -h(t); };
    const int bits = std::numeric_limits<double>::digits / 2 + 4;
    double lo;
    double hi;
    if (L < 0.0) {
        lo = c1 * 1e-9;
        hi = c1;
    } else {
        lo = c1;
        hi = 2.0 * c1;
        while (h(2.0 * hi) > h(hi)) {
            hi *= 2.0;
            if (hi > 1e12 * c1) throw BracketError("rate_duality_check: supremum not bracketed");
        }
        hi *= 2.0;
    }
    const auto [t_star, negval] = boost::math::tools::brent_find_minima(neg, lo, hi, bits);
    const double sup = -negval;
    const double linv = lambda_inverse(ctx, -L);
    return DualityResult{std::abs(sup + linv), sup, linv, t_star, L > 0.0};
}

}  // namespace cle
