#include "cle/levy_verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>

#include "cle/errors.hpp"
#include "cle/exact_formulas.hpp"
#include "cle/parallel.hpp"

namespace cle {

namespace {

using cd = std::complex<double>;

double cot(double x) { return std::cos(x) / std::sin(x); }

constexpr double kExcisionStart = 0.02;
constexpr int kExcisionLevels = 6;

// Symmetric excision widths d_k = d_0 2^{-k}; the excised value is even in d
// apart from the linear gap term, so two Richardson sweeps (factors 2 and 8) apply.
void excision_extrapolate(const std::function<cd(double)>& excised, IntegralCheck& out) {
    std::vector<cd> r1;
    for (int k = 0; k < kExcisionLevels; ++k) {
        const double d = kExcisionStart * std::ldexp(1.0, -k);
        out.excision_widths.push_back(d);
        out.excision_values.push_back(excised(d));
    }
    for (int k = 0; k + 1 < kExcisionLevels; ++k) r1.push_back(2.0 * out.excision_values[k + 1] - out.excision_values[k]);
    std::vector<cd> r2;
    for (std::size_t k = 0; k + 1 < r1.size(); ++k) r2.push_back((8.0 * r1[k + 1] - r1[k]) / 7.0);
    out.quadrature = r2.back();
    out.excision_stability = std::abs(r2.back() - r2[r2.size() - 2]);
}

void finish(IntegralCheck& out) {
    const cd d = out.quadrature - out.closed;
    const double scale = std::abs(out.closed);
    out.rel_err = scale > 0.0 ? std::abs(d) / scale : std::abs(d);
    out.rel_err_real = std::abs(out.closed.real()) > 0.0 ? std::abs(d.real()) / std::abs(out.closed.real()) : std::abs(d.real());
    out.rel_err_imag = std::abs(out.closed.imag()) > 0.0 ? std::abs(d.imag()) / std::abs(out.closed.imag()) : std::abs(d.imag());
    out.converged = out.excision_stability <= 1e-7 * std::max(1.0, scale);
}

double gk(const std::function<double(double)>& f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13);
}

cd gk_complex(const std::function<cd(double)>& f, double a, double b) {
    const double re = gk([&](double x) { return f(x).real(); }, a, b);
    const double im = gk([&](double x) { return f(x).imag(); }, a, b);
    return {re, im};
}

struct Integrand2 {
    double e0;  // -4p/gamma^2 - 1
    double c;   // 4/gamma^2
    cd A, B, C, D;
    cd operator()(double z) const {
        const double zc = std::pow(z, c);
        const cd bracket = (A * z * z + B + C * z) / (zc - 1.0) + D * std::pow(z, 2.0 - c);
        return std::pow(z, e0) / (z - 1.0) * bracket;
    }
};

}  // namespace

double draw_positive_stable(double beta, Engine& eng) {
    const double u = kPi * uniform_open0(eng);
    const double e = exponential1(eng);
    const double a = std::sin(beta * u) / std::pow(std::sin(u), 1.0 / beta);
    const double b = std::pow(std::sin((1.0 - beta) * u) / e, (1.0 - beta) / beta);
    return a * b;
}

std::vector<double> sample_positive_stable(double beta, std::size_t n, std::uint64_t seed) {
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("positive stable index must lie in (0,1)");
    std::vector<double> out(n);
    Engine eng = make_engine(seed, {0x5354'4142ULL});
    for (auto& v : out) v = draw_positive_stable(beta, eng);
    return out;
}

cd cpow_principal(cd z, double w) {
    if (z == cd(0.0, 0.0)) {
        if (w > 0.0) return 0.0;
        throw DomainError("principal power of zero with non-positive exponent");
    }
    return std::exp(w * std::log(z));
}

cd levy_closed_form(const KappaContext& ctx, double p, double l1, double l2) {
    if (!(p > -1.0 && p < 0.0)) throw DomainError("lemma_levy: p must lie in (-1,0)");
    if (!(l1 > 0.0 && l2 > 0.0)) throw DomainError("lemma_levy: levels must be positive");
    const double g2 = ctx.gamma2();
    const double ex = 4.0 * p / g2;
    const cd base = std::polar(1.0, kPi * g2 / 8.0) * l1 + std::polar(1.0, -kPi * g2 / 8.0) * l2;
    const cd mirror = std::polar(1.0, -kPi * g2 / 8.0) * l1 + std::polar(1.0, kPi * g2 / 8.0) * l2;
    // Re[z] as (z + z*)/2 with z* built from the mirrored base; the imaginary
    // part vanishes only if the principal branch commutes with conjugation
    const cd z1 = std::polar(1.0, kPi * (p + 1.0) / 2.0) * cpow_principal(base, ex);
    const cd z2 = std::polar(1.0, -kPi * (p + 1.0) / 2.0) * cpow_principal(mirror, ex);
    return 4.0 / (kPi * g2) * std::tgamma(-ex) * std::tgamma(p + 1.0) * 0.5 * (z1 + z2);
}

LevyCheck lemma_levy_check(const KappaContext& ctx, double p, double l1, double l2, std::size_t n,
                           std::uint64_t seed, unsigned threads) {
    if (!(p > -1.0 && p <= 0.0)) throw DomainError("lemma_levy: p must lie in (-1,0]");
    if (!(l1 > 0.0 && l2 > 0.0)) throw DomainError("lemma_levy: levels must be positive");
    if (n < 2) throw DomainError("lemma_levy: n must be >= 2");
    const double beta = ctx.stable_index();
    const double s1 = std::pow(l1, 1.0 / beta);
    const double s2 = std::pow(l2, 1.0 / beta);
    constexpr std::size_t chunk = 1u << 16;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<double> m1(chunks), m2(chunks), mx(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        Engine eng = make_engine(seed, {0x4C45'5659ULL, static_cast<std::uint64_t>(c)});
        const std::size_t end = std::min(n, (c + 1) * chunk);
        std::vector<double> w(end - c * chunk);
        double big = 0.0;
        for (auto& x : w) {
            const double d = s1 * draw_positive_stable(beta, eng) - s2 * draw_positive_stable(beta, eng);
            x = d > 0.0 ? (p == 0.0 ? 1.0 : std::pow(d, p)) : 0.0;
            big = std::max(big, x);
        }
        m1[c] = pairwise_sum(w);
        for (auto& x : w) x *= x;
        m2[c] = pairwise_sum(w);
        mx[c] = big;
    });
    const double nn = static_cast<double>(n);
    const double sum1 = pairwise_sum(m1);
    const double sum2 = pairwise_sum(m2);
    const double mean = sum1 / nn;
    const double var = std::max(0.0, (sum2 - nn * mean * mean) / (nn - 1.0));
    LevyCheck out;
    out.mc_value = mean;
    out.mc_std_error = std::sqrt(var / nn);
    if (p == 0.0) {
        // limit p -> 0- of the closed form
        const cd v = levy_closed_form(ctx, -1e-7, l1, l2);
        out.closed_value = v.real();
        out.closed_imag = v.imag();
    } else {
        const cd v = levy_closed_form(ctx, p, l1, l2);
        out.closed_value = v.real();
        out.closed_imag = v.imag();
    }
    out.rel_err = std::abs(out.mc_value - out.closed_value) / std::abs(out.closed_value);
    const double biggest = *std::max_element(mx.begin(), mx.end());
    if (p < -0.8 || biggest > 0.01 * sum1) {
        out.warnings.push_back("estimate dominated by small-difference samples (largest term " +
                               std::to_string(biggest / sum1) + " of the total)");
    }
    return out;
}

ForestedLengthCheck forested_length_law_check(const KappaContext& ctx, double q, double len_a, double len_b,
                                              std::size_t n, std::uint64_t seed, unsigned threads, int bins) {
    if (!(q < 2.0)) throw DomainError("forested length: q >= 2 gives an infinite measure");
    if (!(len_a > 0.0 && len_a < len_b)) throw DomainError("forested length: need 0 < L_a < L_b");
    if (bins < 3 || n < 1) throw DomainError("forested length: need >= 3 bins and n >= 1");
    const double beta = ctx.stable_index();
    // log-uniform proposal for t; the window is reached from t ~ L^beta
    const double t_lo = std::pow(len_a, beta) * 1e-8;
    const double t_hi = std::pow(len_b, beta) * 1e3;
    const double span = std::log(t_hi / t_lo);
    const double la = std::log(len_a);
    const double lb = std::log(len_b);
    const double bw = (lb - la) / bins;
    constexpr std::size_t chunk = 1u << 16;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<std::vector<double>> w1(chunks, std::vector<double>(bins)), w2(chunks, std::vector<double>(bins));
    std::vector<double> all1(chunks), all2(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        Engine eng = make_engine(seed, {0x4653'4C4EULL, static_cast<std::uint64_t>(c)});
        const std::size_t end = std::min(n, (c + 1) * chunk);
        double a1 = 0.0, a2 = 0.0;
        for (std::size_t i = c * chunk; i < end; ++i) {
            const double t = t_lo * std::exp(span * uniform01(eng));
            const double w = std::pow(t, 1.0 - q) * span;
            const double y = std::pow(t, 1.0 / beta) * draw_positive_stable(beta, eng);
            a1 += w;
            a2 += w * w;
            const double ly = std::log(y);
            if (ly < la || ly >= lb) continue;
            const int b = std::min(bins - 1, static_cast<int>((ly - la) / bw));
            w1[c][b] += w;
            w2[c][b] += w * w;
        }
        all1[c] = a1;
        all2[c] = a2;
    });
    ForestedLengthCheck out;
    out.target = -beta * q + beta - 1.0;
    const double s_all1 = pairwise_sum(all1);
    const double s_all2 = pairwise_sum(all2);
    out.ess = s_all1 * s_all1 / s_all2;
    std::vector<double> xs, ys, ws;
    const double nn = static_cast<double>(n);
    for (int b = 0; b < bins; ++b) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t c = 0; c < chunks; ++c) {
            s1 += w1[c][b];
            s2 += w2[c][b];
        }
        const double lo = std::exp(la + b * bw);
        const double hi = std::exp(la + (b + 1) * bw);
        const double width = hi - lo;
        const double dens = s1 / nn / width;
        out.bin_centers.push_back(std::sqrt(lo * hi));
        out.bin_density.push_back(dens);
        if (!(s1 > 0.0)) continue;
        // relative error of the bin mass
        const double rel2 = std::max(s2 / (s1 * s1) - 1.0 / nn, 1e-300);
        xs.push_back(std::log(std::sqrt(lo * hi)));
        // log of the bin average of L^e differs from e log(center) by a constant for log-spaced bins
        ys.push_back(std::log(dens));
        ws.push_back(1.0 / rel2);
    }
    if (xs.size() < 3) throw InvariantError("forested length: fewer than 3 populated bins");
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sw += ws[i];
        sx += ws[i] * xs[i];
        sy += ws[i] * ys[i];
    }
    const double xm = sx / sw, ym = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += ws[i] * (xs[i] - xm) * (xs[i] - xm);
        sxy += ws[i] * (xs[i] - xm) * (ys[i] - ym);
    }
    out.slope = sxy / sxx;
    out.slope_se = std::sqrt(1.0 / sxx);
    if (out.ess < 0.01 * nn) out.warnings.push_back("heavy importance weights: ESS " + std::to_string(out.ess));
    return out;
}

IntegralCheck integral_identity_1(double a, double b) {
    if (!(a > -1.0 && a < 0.0 && b > -1.0 && b < 0.0)) throw DomainError("integral identity 1 needs a, b in (-1,0)");
    IntegralCheck out;
    out.closed = kPi * (cot(kPi * b) - cot(kPi * a));
    if (a == b) {
        out.quadrature = 0.0;
        out.excision_stability = 0.0;
        finish(out);
        out.rel_err = 0.0;
        return out;
    }
    // (0, 1/2]: -(t^a - t^b) sum t^j; t in [1/2, 1 - d] by quadrature;
    // t > 1 through t = 1/s, with s in (0, 1/2] as sum (s^{-a-1+j} - s^{-b-1+j})
    constexpr int terms = 64;
    double near0 = 0.0;
    double far = 0.0;
    for (int j = terms; j-- > 0;) {
        near0 -= std::pow(0.5, a + j + 1.0) / (a + j + 1.0) - std::pow(0.5, b + j + 1.0) / (b + j + 1.0);
        far += std::pow(0.5, -a + j) / (-a + j) - std::pow(0.5, -b + j) / (-b + j);
    }
    auto lower = [&](double t) { return (std::pow(t, a) - std::pow(t, b)) / (t - 1.0); };
    auto upper = [&](double s) { return (std::pow(s, -a) - std::pow(s, -b)) / (s * (1.0 - s)); };
    auto excised = [&](double d) -> cd {
        return near0 + far + gk(lower, 0.5, 1.0 - d) + gk(upper, 0.5, 1.0 / (1.0 + d));
    };
    excision_extrapolate(excised, out);
    finish(out);
    return out;
}

std::complex<double> integral_identity_2_closed(const KappaContext& ctx, double p) {
    const double g2 = ctx.gamma2();
    const double th = kPi * g2 / 4.0;
    const double re = kPi * g2 / 4.0 * std::cos(th) * (cot(kPi * (p - g2 / 4.0)) - cot(kPi * p));
    const double im = kPi * g2 / 4.0 * std::sin(th) *
                      (2.0 * cot(4.0 * kPi * (p + 1.0) / g2) - cot(kPi * p) - cot(kPi * (p - g2 / 4.0)));
    return {re, im};
}

IntegralCheck integral_identity_2(const KappaContext& ctx, double p) {
    const double g2 = ctx.gamma2();
    if (!(p > g2 / 4.0 - 1.0 && p < 0.0)) throw DomainError("integral identity 2 needs p in (gamma^2/4 - 1, 0)");
    const double th = kPi * g2 / 4.0;
    Integrand2 f{-4.0 * p / g2 - 1.0, 4.0 / g2, std::polar(1.0, -th), std::polar(1.0, th), cd(-2.0 * std::cos(th), 0.0),
                 cd(0.0, g2 / 2.0 * std::sin(th))};
    constexpr double r = 0.25;
    constexpr double R = 4.0;
    constexpr int N = 80;
    // (0, r]: 1/((z-1)(z^c-1)) = sum z^{j+ck}, 1/(z-1) = -sum z^j
    cd small = 0.0;
    auto i0 = [&](double s) { return std::pow(r, s + 1.0) / (s + 1.0); };
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            const double s = f.e0 + j + f.c * k;
            small += f.A * i0(s + 2.0) + f.B * i0(s) + f.C * i0(s + 1.0);
        }
        small -= f.D * i0(f.e0 + j + 2.0 - f.c);
    }
    // [R, inf): 1/(z-1) = sum z^{-(j+1)}, 1/(z^c-1) = sum z^{-c(k+1)}
    cd big = 0.0;
    auto iinf = [&](double s) { return -std::pow(R, s + 1.0) / (s + 1.0); };
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            const double s = f.e0 - (j + 1.0) - f.c * (k + 1.0);
            big += f.A * iinf(s + 2.0) + f.B * iinf(s) + f.C * iinf(s + 1.0);
        }
        big += f.D * iinf(f.e0 - (j + 1.0) + 2.0 - f.c);
    }
    const std::function<cd(double)> fz = f;
    const cd outer = gk_complex(fz, r, 0.5) + gk_complex(fz, 0.5, 0.9) + gk_complex(fz, 1.1, 2.0) + gk_complex(fz, 2.0, R);
    auto excised = [&](double d) -> cd {
        return small + big + outer + gk_complex(fz, 0.9, 1.0 - d) + gk_complex(fz, 1.0 + d, 1.1);
    };
    IntegralCheck out;
    out.closed = integral_identity_2_closed(ctx, p);
    excision_extrapolate(excised, out);
    finish(out);
    return out;
}

RatioAlgebra ratio_algebra_check(const KappaContext& ctx, double alpha) {
    const AlphaParam ap = make_alpha(ctx, alpha);
    const double g = ctx.gamma();
    if (!(ap.alpha < 4.0 / g)) throw DomainError("ratio algebra needs alpha in (Q, 4/gamma)");
    const double g2 = ctx.gamma2();
    const double p = g * ap.alpha / 2.0 - 2.0;
    const cd bracket(cot(kPi * (p - g2 / 4.0)) - cot(kPi * p),
                     std::tan(kPi * g2 / 4.0) * (2.0 * cot(4.0 * kPi * (p + 1.0) / g2) - cot(kPi * p) -
                                                 cot(kPi * (p - g2 / 4.0))));
    const cd o1 = std::polar(1.0, kPi * p / 2.0 - kPi * g2 / 4.0) * bracket;
    const cd o2 = std::conj(o1);
    const cd e = std::polar(1.0, kPi * (p + 1.0) / 2.0);
    const cd ratio = (e * o1 + o2 / e) / (e * o2 + o1 / e);
    RatioAlgebra out;
    out.p = p;
    out.assembled = ratio.real();
    out.assembled_imag = ratio.imag();
    out.reference = nontouch_ratio(ctx, ap);
    out.discrepancy = std::abs(ratio - cd(out.reference, 0.0));
    return out;
}

}  // namespace cle
