#include "cle/radii_laws.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "cle/errors.hpp"

namespace cle {

namespace {

struct Candidate {
    double w;
    bool double_zero;
};

// Zeros of the denominator, as w = sqrt(t), in increasing order.
std::vector<Candidate> pole_candidates(const KappaContext& ctx, Law law, int count) {
    const double k = ctx.kappa();
    std::vector<double> ws;
    const bool fam_a = law != Law::SSW;
    const bool fam_b = law == Law::SSW || law == Law::NONTOUCH;
    for (int i = 1; i <= count; ++i) {
        if (fam_a) ws.push_back(4.0 * i);
        if (fam_b) ws.push_back(k * (2.0 * i - 1.0) / 2.0);
    }
    std::sort(ws.begin(), ws.end());
    std::vector<Candidate> out;
    for (double w : ws) {
        if (!out.empty() && std::abs(w - out.back().w) <= 1e-9 * w) {
            out.back().double_zero = true;
            continue;
        }
        out.push_back({w, false});
    }
    if (static_cast<int>(out.size()) > count) out.resize(count);
    return out;
}

// Residue in lambda at the pole with root w0.
double analytic_residue(const KappaContext& ctx, Law law, const Candidate& cand) {
    const double k = ctx.kappa();
    const double w = cand.w;
    const double c = std::cos(kPi * (k - 4.0) / k);
    const double a = kPi * (k - 4.0) / (4.0 * k);
    const double b = kPi * (8.0 - k) / (4.0 * k);
    const double jac = -w / (4.0 * k);  // d lambda / d w
    const double sq = std::sin(kPi * w / 4.0);
    const double cq = std::cos(kPi * w / 4.0);
    const double sk = std::sin(kPi * w / k);
    const double ck = std::cos(kPi * w / k);
    switch (law) {
        case Law::SSW: return jac * c / (-(kPi / k) * sk);
        case Law::TOUCH: return jac * 2.0 * c * std::sin(a * w) / ((kPi / 4.0) * cq);
        case Law::WTD: return jac * std::sin(b * w) / ((kPi / 4.0) * cq);
        case Law::NONTOUCH: {
            const double n = c * std::sin(b * w);
            if (cand.double_zero) {
                if (std::abs(n) > 1e-8) {
                    throw InvariantError("double pole of the non-touching transform at w = " + std::to_string(w));
                }
                const double dn = c * b * std::cos(b * w);
                const double d2 = 2.0 * (-(kPi / k) * sk) * ((kPi / 4.0) * cq);
                return jac * 2.0 * dn / d2;
            }
            const double d1 = -(kPi / k) * sk * sq + (kPi / 4.0) * ck * cq;
            return jac * n / d1;
        }
    }
    throw DomainError("bad law tag");
}

double numerical_residue(const KappaContext& ctx, Law law, double lam0, double delta) {
    const double up = delta * moment_continued(ctx, law, lam0 + delta);
    const double dn = -delta * moment_continued(ctx, law, lam0 - delta);
    return 0.5 * (up + dn);
}

}  // namespace

std::size_t ResidueSeries::active_terms(double s) const {
    // terms with lambda_k s < -60 are below 1e-26 relative to their coefficient
    if (s <= 0.0) return poles_.size();
    const double cut = -60.0 / s;
    auto it = std::upper_bound(poles_.begin(), poles_.end(), cut, std::greater<double>());
    return std::max<std::size_t>(1, static_cast<std::size_t>(it - poles_.begin()));
}

double ResidueSeries::density(double s) const {
    const std::size_t n = active_terms(s);
    double acc = 0.0;
    for (std::size_t i = n; i-- > 0;) acc += coeffs_[i] * std::exp(poles_[i] * s);
    return acc;
}

double ResidueSeries::ccdf(double s) const {
    const std::size_t n = active_terms(s);
    double acc = 0.0;
    for (std::size_t i = n; i-- > 0;) acc += coeffs_[i] * std::exp(poles_[i] * s) / (-poles_[i]);
    return acc;
}

double ResidueSeries::laplace_tail(double lambda, double s0) const {
    if (!(lambda > poles_.front())) throw DomainError("laplace_tail: lambda at or below the leading pole");
    double acc = 0.0;
    for (std::size_t i = poles_.size(); i-- > 0;) {
        acc += coeffs_[i] * std::exp((poles_[i] - lambda) * s0) / (lambda - poles_[i]);
    }
    return acc;
}

ResidueSeries build_series(const KappaContext& ctx, Law law, int K) {
    if (K < 1) throw DomainError("build_series requires K >= 1");
    constexpr int extra = 20;
    const auto cands = pole_candidates(ctx, law, K + extra);
    ResidueSeries out(ctx, law);
    std::vector<double> extra_poles;
    std::vector<double> extra_coeffs;
    double worst = 0.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const double w = cands[i].w;
        const double lam = ctx.lambda_of_t(w * w);
        const double c = analytic_residue(ctx, law, cands[i]);
        if (static_cast<int>(i) < K) {
            double gap = std::numeric_limits<double>::infinity();
            if (i > 0) gap = std::min(gap, ctx.lambda_of_t(cands[i - 1].w * cands[i - 1].w) - lam);
            if (i + 1 < cands.size()) gap = std::min(gap, lam - ctx.lambda_of_t(cands[i + 1].w * cands[i + 1].w));
            const double delta = std::min(1e-6 * std::abs(lam), 1e-4 * gap);
            const double num = numerical_residue(ctx, law, lam, delta);
            const double scale = std::max(std::abs(c), w / (4.0 * ctx.kappa()));
            const double err = std::abs(num - c) / scale;
            worst = std::max(worst, err);
            if (err > 1e-7) {
                throw ResidueMismatch("residue mismatch for law " + std::string(law_name(law)) + " at lambda = " +
                                      std::to_string(lam) + ": analytic " + std::to_string(c) + ", numerical " +
                                      std::to_string(num));
            }
            out.poles_.push_back(lam);
            out.coeffs_.push_back(c);
            out.roots_.push_back(w);
        } else {
            extra_poles.push_back(lam);
            extra_coeffs.push_back(c);
        }
    }
    out.residue_err_ = worst;
    out.s_min_ = 40.0 / std::abs(out.poles_.back());
    double bound = 0.0;
    for (std::size_t i = 0; i < extra_poles.size(); ++i) {
        bound += std::abs(extra_coeffs[i]) * std::exp(extra_poles[i] * out.s_min_) / (-extra_poles[i]);
    }
    out.trunc_bound_ = bound;
    out.mass_ = out.ccdf(out.s_min_);
    return out;
}

double transform_quadrature(const ResidueSeries& series, double lambda) {
    using boost::math::quadrature::gauss_kronrod;
    const double lead = series.poles().front();
    const double s0 = series.s_min();
    const double s1 = std::max(s0 * 2.0, std::min(20.0 / (lambda - lead), 50.0));
    auto f = [&](double s) { return std::exp(-lambda * s) * series.density(s); };
    // geometric panels: the integrand varies on the scale of s itself near s_min
    double body = 0.0;
    double a = s0;
    while (a < s1) {
        const double b = std::min(a * 1.5, s1);
        body += gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0);
        a = b;
    }
    return body + series.laplace_tail(lambda, s1);
}

double transform_roundtrip(const ResidueSeries& series, const std::vector<double>& lambda_grid) {
    double worst = 0.0;
    for (double lam : lambda_grid) {
        const MomentValue m = moment(series.context(), series.law(), lam);
        if (m.is_infinite()) throw DomainError("transform_roundtrip: lambda at or below the threshold");
        const double q = transform_quadrature(series, lam);
        worst = std::max(worst, std::abs(q - m.value()) / std::abs(m.value()));
    }
    return worst;
}

LawSampler::LawSampler(const ResidueSeries& series, int table_points)
    : series_(series), mass_(series.mass()), lead_pole_(series.poles().front()) {
    if (!(mass_ > 0.0)) throw DomainError("sampler needs a series with positive mass");
    if (table_points < 16) throw DomainError("sampler table too small");
    const auto& poles = series.poles();
    const auto& coeffs = series.coefficients();
    std::size_t lead = 0;
    while (lead < coeffs.size() && std::abs(coeffs[lead]) < 1e-14) ++lead;
    if (lead == coeffs.size()) throw DomainError("sampler: all coefficients vanish");
    lead_pole_ = poles[lead];
    const double lead_tail = std::abs(coeffs[lead]) / (-lead_pole_) / mass_;
    const double s_lo = series.s_min();
    const double s_hi = std::max(4.0 * s_lo, std::log(1e-16 / lead_tail) / lead_pole_);
    s_.resize(table_points);
    g_.resize(table_points);
    f_.resize(table_points);
    const double r = std::log(s_hi / s_lo);
    for (int i = 0; i < table_points; ++i) {
        const double s = s_lo * std::exp(r * i / (table_points - 1));
        s_[i] = s;
        g_[i] = series.ccdf(s) / mass_;
        f_[i] = std::max(0.0, series.density(s) / mass_);
    }
    g_[0] = 1.0;
    for (int i = 1; i < table_points; ++i) {
        if (g_[i] > g_[i - 1]) {
            envelope_applied_ = true;
            envelope_max_ = std::max(envelope_max_, g_[i] - g_[i - 1]);
            g_[i] = g_[i - 1];
        }
    }
}

double LawSampler::survival(double s) const {
    if (s <= s_.front()) return 1.0;
    return series_.ccdf(s) / mass_;
}

double LawSampler::invert(double u) const {
    const std::size_t n = g_.size();
    if (u >= g_.front()) return s_.front();
    if (u <= g_.back()) {
        return s_.back() + std::log(u / g_.back()) / lead_pole_;
    }
    // g_ decreasing: find i with g_[i] >= u > g_[i+1]
    std::size_t lo = 0;
    std::size_t hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (g_[mid] >= u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double g0 = g_[lo];
    const double g1 = g_[hi];
    const double s0 = s_[lo];
    const double s1 = s_[hi];
    const double dg = g1 - g0;
    if (dg == 0.0) return s0;
    const double x = (u - g0) / dg;
    const double lin = s0 + x * (s1 - s0);
    if (f_[lo] <= 0.0 || f_[hi] <= 0.0) return lin;
    const double m0 = -1.0 / f_[lo] * dg;
    const double m1 = -1.0 / f_[hi] * dg;
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double s = (2 * x3 - 3 * x2 + 1) * s0 + (x3 - 2 * x2 + x) * m0 + (-2 * x3 + 3 * x2) * s1 + (x3 - x2) * m1;
    if (!(s >= s0 && s <= s1)) return lin;
    return s;
}

double LawSampler::draw(Engine& eng) const { return invert(uniform_open0(eng)); }

std::vector<double> LawSampler::sample(std::size_t n, std::uint64_t seed) const {
    std::vector<double> out(n);
    Engine eng = make_engine(seed, {0x5A4D'504CULL});
    for (auto& v : out) v = draw(eng);
    return out;
}

}  // namespace cle
