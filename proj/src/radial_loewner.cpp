#include "cle/radial_loewner.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "cle/errors.hpp"
#include "cle/parallel.hpp"

namespace cle {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr int kMaxLevel = 40;

double cot(double x) { return 1.0 / std::tan(x); }

double normal(Engine& eng) {
    const double u1 = uniform_open0(eng);
    const double u2 = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

bool inside(double psi) { return psi > 0.0 && psi < kTwoPi; }

// Euler step of size h with Brownian increment db; bridge split on overshoot.
DrivingState bridge_step(const DrivingState& s, const KappaContext& ctx, double h, double db, Engine& eng, int depth,
                         int max_depth) {
    const AngularDrift dr = angular_drift(ctx, s.theta, s.phi);
    DrivingState n = s;
    n.theta += std::sqrt(ctx.kappa()) * db + dr.theta * h;
    n.phi += dr.phi * h;
    n.t += h;
    if (inside(n.psi())) return n;
    if (depth >= max_depth) {
        // pin to the boundary that was crossed
        const double target = n.psi() <= 0.0 ? 0.0 : kTwoPi;
        n.theta = n.phi + target;
        return n;
    }
    const double left = 0.5 * db + 0.5 * std::sqrt(h) * normal(eng);
    DrivingState mid = bridge_step(s, ctx, 0.5 * h, left, eng, depth + 1, max_depth);
    if (!inside(mid.psi())) return mid;
    return bridge_step(mid, ctx, 0.5 * h, db - left, eng, depth + 1, max_depth);
}

// Distance from z to the arc swept by e^{i theta}, theta between a and b.
double arc_distance(cplx z, double a, double b) {
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    double arg = std::arg(z);
    // representative of arg z in [lo, lo + 2 pi)
    arg = lo + std::fmod(std::fmod(arg - lo, kTwoPi) + kTwoPi, kTwoPi);
    const double ends = std::min(std::abs(z - std::polar(1.0, a)), std::abs(z - std::polar(1.0, b)));
    if (hi - lo >= kTwoPi || arg <= hi) return std::min(ends, std::abs(1.0 - std::abs(z)));
    return ends;
}

// Adaptive dyadic Euler steps driven by a Brownian tree; time kept as an
// integer count of dt0 2^{-kMaxLevel} so steps stay aligned.
struct TreeWalker {
    TreeWalker(const KappaContext& c, double psi0, BrownianTree& t, int base, double scale)
        : ctx(c), tree(t), base_level(base), boundary_scale(scale), sk(std::sqrt(c.kappa())) {
        state = initial_state(psi0);
        for (int l = 0; l <= kMaxLevel; ++l) steps[l] = std::ldexp(tree.root_step(), -l);
        unit = steps[kMaxLevel];
    }

    double time() const { return static_cast<double>(tu) * unit; }

    void step() {
        const double psi = state.psi();
        const double d = std::min(psi, kTwoPi - psi) / boundary_scale;
        const double ratio = d * d;
        int m = base_level;
        if (ratio < 1.0) {
            int e;
            std::frexp(ratio, &e);  // ratio in [2^{e-1}, 2^e)
            m = std::min(base_level + 1 - e, kMaxLevel);
        }
        if (tu != 0) m = std::max(m, kMaxLevel - std::countr_zero(tu));
        m = std::min(m, kMaxLevel);
        const AngularDrift dr = angular_drift(ctx, state.theta, state.phi);
        for (;;) {
            const double h = steps[m];
            const double db = tree.increment(m, tu >> (kMaxLevel - m));
            const double th = state.theta + sk * db + dr.theta * h;
            const double ph = state.phi + dr.phi * h;
            if (inside(th - ph) || m == kMaxLevel) {
                state.theta = th;
                state.phi = ph;
                if (!inside(th - ph)) state.theta = state.phi + (th - ph <= 0.0 ? 0.0 : kTwoPi);
                tu += 1ULL << (kMaxLevel - m);
                state.t = time();
                return;
            }
            ++m;
        }
    }

    /// Free Brownian step of the driving angle at the base level.
    void free_step() {
        int m = base_level;
        if (tu != 0) m = std::max(m, kMaxLevel - std::countr_zero(tu));
        state.theta += sk * tree.increment(m, tu >> (kMaxLevel - m));
        tu += 1ULL << (kMaxLevel - m);
        state.t = time();
    }

    const KappaContext& ctx;
    BrownianTree& tree;
    int base_level;
    double boundary_scale;
    double sk;
    DrivingState state;
    std::uint64_t tu = 0;
    double unit = 0.0;
    double steps[kMaxLevel + 1];
};

}  // namespace

cplx phi_field(cplx u, cplx z) {
    const cplx d = u - z;
    if (std::abs(d) == 0.0) throw DomainError("phi_field: singular at z = u");
    return z * (u + z) / d;
}

DrivingState initial_state(double psi0) {
    if (!(psi0 > 0.0 && psi0 < kTwoPi)) throw DomainError("psi0 must lie in (0, 2 pi)");
    return DrivingState{psi0, 0.0, 0.0};
}

AngularDrift angular_drift(const KappaContext& ctx, double theta, double phi) {
    const double c = cot((theta - phi) / 2.0);
    return {0.5 * ctx.rho() * c, -c};
}

DrivingState step_driving(const DrivingState& state, const KappaContext& ctx, double dt, Engine& eng,
                          const StepParams& params) {
    if (!inside(state.psi())) throw DomainError("step_driving: psi outside (0, 2 pi)");
    if (!(dt > 0.0)) throw DomainError("step_driving: dt must be positive");
    const double psi = state.psi();
    const double d = std::min(psi, kTwoPi - psi);
    const double r = d / params.boundary_scale;
    const double h = dt * std::min(1.0, r * r);
    return bridge_step(state, ctx, h, std::sqrt(h) * normal(eng), eng, 0, params.max_halvings);
}

DriftCheck drift_identity_check(const KappaContext& ctx, int states, std::uint64_t seed) {
    Engine eng = make_engine(seed, {0x4452'4946ULL});
    DriftCheck out{0.0, 0.0, states};
    const double k = ctx.kappa();
    for (int i = 0; i < states; ++i) {
        const double theta = kTwoPi * uniform01(eng);
        double phi = kTwoPi * uniform01(eng);
        if (phi == theta) phi += 1e-3;
        const cplx u = std::polar(1.0, theta);
        const cplx x = std::polar(1.0, phi);
        const AngularDrift dr = angular_drift(ctx, theta, phi);
        // force point: g_t(x) = e^{i phi} moves with Phi(U, .)
        const cplx lhs_phi = phi_field(u, x) / (cplx(0.0, 1.0) * x);
        const double e1 = std::abs(lhs_phi - dr.phi) / std::max(1.0, std::abs(dr.phi));
        // driving point: -(kappa/2) U + (rho/2) Phi(g_t(x), U)
        const cplx lhs_u = -0.5 * k * u + 0.5 * ctx.rho() * phi_field(x, u);
        const cplx rhs_u = cplx(0.0, 1.0) * u * dr.theta - 0.5 * k * u;
        const double e2 = std::abs(lhs_u - rhs_u) / std::max(1.0, std::abs(rhs_u));
        out.max_phi_error = std::max(out.max_phi_error, e1);
        out.max_theta_error = std::max(out.max_theta_error, e2);
    }
    return out;
}

FlowState evolve_flow(const std::vector<double>& theta_path, double dt, const std::vector<cplx>& points,
                      const FlowParams& params) {
    if (theta_path.empty()) throw DomainError("evolve_flow: empty driving path");
    if (!(dt > 0.0)) throw DomainError("evolve_flow: dt must be positive");
    const cplx u0 = std::polar(1.0, theta_path.front());
    for (const cplx& z : points) {
        if (std::abs(z) > 1.0 + 1e-12) throw DomainError("evolve_flow: point outside the closed disk");
        if (std::abs(z - u0) < params.swallow_tol) throw DomainError("evolve_flow: point at the driving start");
    }
    const std::size_t user = points.size();
    const int m = params.stencil_points;
    std::vector<cplx> g = points;
    for (int j = 0; j < m; ++j) g.push_back(std::polar(params.stencil_radius, kTwoPi * j / m));
    std::vector<bool> on_circle(g.size(), false);
    for (std::size_t i = 0; i < user; ++i) on_circle[i] = std::abs(std::abs(points[i]) - 1.0) < 1e-12;
    FlowState st;
    st.swallowed.assign(user, false);
    st.swallow_time.assign(user, std::nan(""));
    for (std::size_t k = 0; k + 1 < theta_path.size(); ++k) {
        const double a = theta_path[k];
        const double b = theta_path[k + 1];
        const cplx ub = std::polar(1.0, b);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i < user && st.swallowed[i]) continue;
            // substeps resolve the field near the driving point: h <= c |g - U|^2
            const double dist = arc_distance(g[i], a, b);
            if (i < user && dist < params.swallow_tol) {
                st.swallowed[i] = true;
                st.swallow_time[i] = st.t;
                continue;
            }
            const double cap = params.substep_factor * dist * dist;
            const int nsub = static_cast<int>(std::min(1e6, std::max(1.0, std::ceil(dt / cap))));
            const double h = dt / nsub;
            cplx z = g[i];
            for (int q = 0; q < nsub; ++q) {
                const double s0 = static_cast<double>(q) / nsub;
                const double s1 = static_cast<double>(q + 1) / nsub;
                const cplx u0 = std::polar(1.0, a + (b - a) * s0);
                const cplx um = std::polar(1.0, a + (b - a) * 0.5 * (s0 + s1));
                const cplx u1 = std::polar(1.0, a + (b - a) * s1);
                const cplx k1 = phi_field(u0, z);
                const cplx k2 = phi_field(um, z + 0.5 * h * k1);
                const cplx k3 = phi_field(um, z + 0.5 * h * k2);
                const cplx k4 = phi_field(u1, z + h * k3);
                z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            g[i] = z;
            if (i < user && std::abs(g[i] - ub) < params.swallow_tol) {
                st.swallowed[i] = true;
                st.swallow_time[i] = st.t + dt;
            }
        }
        st.t += dt;
        for (std::size_t i = 0; i < user; ++i) {
            if (on_circle[i] && !st.swallowed[i]) {
                st.max_boundary_drift = std::max(st.max_boundary_drift, std::abs(std::abs(g[i]) - 1.0));
            }
        }
    }
    cplx acc = 0.0;
    for (int j = 0; j < m; ++j) acc += g[user + j] / std::polar(params.stencil_radius, kTwoPi * j / m);
    st.gprime_estimate = (acc / static_cast<double>(m)).real();
    st.points.assign(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(user));
    return st;
}

std::vector<double> sample_driving_path(const KappaContext& ctx, double psi0, double t_end, double dt,
                                        std::uint64_t seed) {
    if (!(t_end > 0.0 && dt > 0.0)) throw DomainError("sample_driving_path: need t_end > 0 and dt > 0");
    if (!(t_end / dt < 0x1.0p22)) throw DomainError("sample_driving_path: more than 2^22 steps");
    BrownianTree tree(stream_seed(seed, {0x5041'5448ULL}), dt);
    TreeWalker w(ctx, psi0, tree, 0, 1.0);
    const std::uint64_t steps = static_cast<std::uint64_t>(std::llround(t_end / dt));
    std::vector<double> out{w.state.theta};
    bool free = false;
    constexpr double absorb = 1e-5;
    for (std::uint64_t k = 1; k <= steps; ++k) {
        const std::uint64_t target = k << kMaxLevel;
        while (w.tu < target) {
            if (free) {
                // after absorption the driving continues as sqrt(kappa) B
                w.free_step();
                continue;
            }
            w.step();
            const double p = w.state.psi();
            if (p <= absorb || p >= kTwoPi - absorb) free = true;
        }
        out.push_back(w.state.theta);
    }
    return out;
}

BrownianTree::BrownianTree(std::uint64_t key, double dt0)
    : key_(key), dt0_(dt0), sqrt_dt0_(std::sqrt(dt0)), cache_(kMaxLevel + 1), pairs_(kMaxLevel + 1) {
    if (!(dt0 > 0.0)) throw DomainError("BrownianTree: dt0 must be positive");
}

double BrownianTree::normal(int level, std::uint64_t index) {
    // Box-Muller pair shared by indices 2m and 2m+1
    const std::uint64_t pair = index >> 1;
    NormalPair& np = pairs_[level];
    if (np.pair != pair) {
        const std::uint64_t h1 = splitmix64(key_ ^ splitmix64((static_cast<std::uint64_t>(level) << 56) ^ pair));
        const std::uint64_t h2 = splitmix64(h1);
        const double u1 = 1.0 - static_cast<double>(h1 >> 11) * 0x1.0p-53;
        const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        np.pair = pair;
        np.z0 = r * std::cos(kTwoPi * u2);
        np.z1 = r * std::sin(kTwoPi * u2);
    }
    return (index & 1) ? np.z1 : np.z0;
}

double BrownianTree::increment(int level, std::uint64_t index) {
    if (level < 0 || level > kMaxLevel) throw DomainError("BrownianTree: level out of range");
    Slot& slot = cache_[level];
    if (slot.index == index) return slot.value;
    double v;
    if (level == 0) {
        v = sqrt_dt0_ * normal(0, index);
    } else {
        const double parent = increment(level - 1, index >> 1);
        const double h_parent = std::ldexp(dt0_, -(level - 1));
        const double left = 0.5 * parent + 0.5 * std::sqrt(h_parent) * normal(level, index >> 1);
        v = (index & 1) ? parent - left : left;
    }
    Slot& s2 = cache_[level];
    s2.index = index;
    s2.value = v;
    return v;
}

FirstPassageSample passage_on_tree(const KappaContext& ctx, double psi0, BrownianTree& tree, int base_level,
                                   const PassageParams& params) {
    if (base_level < 0 || base_level >= kMaxLevel) throw DomainError("passage: base level out of range");
    if (!(params.t_max / tree.root_step() < 0x1.0p22)) throw DomainError("passage: t_max / dt exceeds 2^22 root steps");
    TreeWalker w(ctx, psi0, tree, base_level, params.boundary_scale);
    for (;;) {
        const double psi = w.state.psi();
        const double t = w.time();
        if (psi <= params.delta_abs) return {t, Side::Lower};
        if (psi >= kTwoPi - params.delta_abs) return {t, Side::Upper};
        if (t >= params.t_max) return {t, Side::Censored};
        w.step();
    }
}

std::vector<FirstPassageSample> first_passage(const KappaContext& ctx, double psi0, std::size_t n,
                                              std::uint64_t seed, const PassageParams& params, unsigned threads) {
    if (!(psi0 > params.delta_abs && psi0 < kTwoPi - params.delta_abs)) throw DomainError("psi0 must be interior");
    if (!(params.dt > 0.0 && params.delta_abs > 0.0)) throw DomainError("passage: dt and delta_abs must be positive");
    std::vector<FirstPassageSample> out(n);
    constexpr std::size_t chunk = 1024;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
            BrownianTree tree(stream_seed(seed, {0x5041'5353ULL, i}), params.dt);
            out[i] = passage_on_tree(ctx, psi0, tree, 0, params);
        }
    });
    return out;
}

double scale_function_upper(const KappaContext& ctx, double psi0, double delta_abs) {
    if (!(delta_abs >= 0.0 && psi0 > delta_abs && psi0 < kTwoPi - delta_abs)) {
        throw DomainError("scale function: psi0 must be interior");
    }
    const double e = -2.0 * (ctx.kappa() - 4.0) / ctx.kappa();
    // sin(y/2)^e is symmetric about pi; integrate over (d, x] with the singular end at d
    auto sp = [&](double y) { return std::pow(std::sin(0.5 * y), e); };
    boost::math::quadrature::tanh_sinh<double> ts;
    auto cum = [&](double x) {
        if (x <= kPi) return ts.integrate(sp, delta_abs, x, 1e-14);
        return ts.integrate(sp, delta_abs, kPi, 1e-14) + ts.integrate(sp, kPi, x, 1e-14);
    };
    const double half = ts.integrate(sp, delta_abs, kPi, 1e-14);
    return cum(psi0) / (2.0 * half);
}

PassageSummary summarize_passage(const KappaContext& ctx, double psi0, double delta_abs,
                                 const std::vector<FirstPassageSample>& samples) {
    PassageSummary s{samples.size(), 0, 0, 0, 0.0, 0.0, 0.0, 0.0, 0.0};
    std::vector<double> taus;
    taus.reserve(samples.size());
    for (const auto& x : samples) {
        if (x.side == Side::Lower) ++s.lower;
        if (x.side == Side::Upper) ++s.upper;
        if (x.side == Side::Censored) ++s.censored;
        taus.push_back(x.tau);
    }
    const double done = static_cast<double>(s.lower + s.upper);
    s.freq_upper = done > 0 ? static_cast<double>(s.upper) / done : std::nan("");
    s.predicted_upper = scale_function_upper(ctx, psi0, delta_abs);
    s.rel_err_upper = std::abs(s.freq_upper - s.predicted_upper) / s.predicted_upper;
    s.rel_err_lower = std::abs((1.0 - s.freq_upper) - (1.0 - s.predicted_upper)) / (1.0 - s.predicted_upper);
    s.mean_tau = taus.empty() ? std::nan("") : pairwise_sum(taus) / static_cast<double>(taus.size());
    return s;
}

WeakOrderStudy weak_order_study(const KappaContext& ctx, double psi0, double dt0, int levels, std::size_t n,
                                std::uint64_t seed, double delta_abs, unsigned threads) {
    if (levels < 3) throw DomainError("weak order study needs >= 3 levels");
    if (n < 2) throw DomainError("weak order study needs n >= 2");
    PassageParams pp;
    pp.delta_abs = delta_abs;
    std::vector<std::vector<double>> tau(static_cast<std::size_t>(levels), std::vector<double>(n));
    constexpr std::size_t chunk = 256;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
            BrownianTree tree(stream_seed(seed, {0x5745'414BULL, i}), dt0);
            for (int r = 0; r < levels; ++r) tau[r][i] = passage_on_tree(ctx, psi0, tree, r, pp).tau;
        }
    });
    WeakOrderStudy out;
    const double nn = static_cast<double>(n);
    for (int r = 0; r < levels; ++r) {
        out.dts.push_back(std::ldexp(dt0, -r));
        out.mean_tau.push_back(pairwise_sum(tau[r]) / nn);
    }
    std::vector<double> xs, ys;
    for (int r = 0; r + 1 < levels; ++r) {
        std::vector<double> d(n), d2(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = tau[r][i] - tau[r + 1][i];
            d2[i] = d[i] * d[i];
        }
        const double m = pairwise_sum(d) / nn;
        const double var = std::max(0.0, (pairwise_sum(d2) - nn * m * m) / (nn - 1.0));
        out.diffs.push_back(m);
        out.diff_se.push_back(std::sqrt(var / nn));
        xs.push_back(std::log(out.dts[r]));
        ys.push_back(std::log(std::abs(m)));
    }
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    out.observed_order = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    return out;
}

}  // namespace cle
