#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cle/kappa.hpp"
#include "cle/radii_laws.hpp"
#include "cle/rng.hpp"

namespace cle {

enum class CascadeMethod { MC = 0, CONV = 1 };

struct CascadeConfig {
    double a = 1.0;
    std::vector<double> eps_grid;  ///< strictly decreasing, in (0,1]
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    double c0 = 1.0;
    CascadeMethod method = CascadeMethod::MC;
    double h = 2e-3;  ///< grid step of the renewal solver
    unsigned threads = 0;
    std::size_t chunk = 1u << 16;
};

/// eps_max * 10^{-i/ppd}, i = 0 .. decades*ppd.
std::vector<double> make_eps_grid(double eps_max, int decades, int points_per_decade);

struct CascadeSample {
    int sigma = 0;
    std::vector<double> partial_sums;  ///< S_1 .. S_sigma
    double final_excess = 0.0;         ///< F
};

struct EpsEstimate {
    double eps;
    double level;  ///< u = log(c0/eps)
    double value;
    double std_error;
    double ess;  ///< effective sample size (MC only)
};

struct FitResult {
    double slope;
    double intercept;
    double slope_se;
    double chi2_red;
    double half_width;  ///< 1.96 * slope_se * max(1, sqrt(chi2_red))
};

struct CascadeEstimate {
    CascadeMethod method;
    std::vector<EpsEstimate> points;
    FitResult fit;
    std::vector<std::string> warnings;
};

/// Laws driving the cascade: TOUCH-conditional terminal excess, WTD-conditional
/// increments, and the unconditional SSW law for the nested-loop count.
class CascadeModel {
public:
    explicit CascadeModel(const KappaContext& ctx, int terms = kDefaultTerms);

    const KappaContext& context() const { return ctx_; }
    double p_touch() const { return p_touch_; }
    const ResidueSeries& increment_series() const { return wtd_; }
    const ResidueSeries& final_series() const { return touch_; }
    const ResidueSeries& loop_series() const { return ssw_; }
    const LawSampler& increment_sampler() const { return x_sampler_; }
    const LawSampler& final_sampler() const { return f_sampler_; }
    const LawSampler& loop_sampler() const { return l_sampler_; }

private:
    KappaContext ctx_;
    double p_touch_;
    ResidueSeries wtd_;
    ResidueSeries touch_;
    ResidueSeries ssw_;
    LawSampler x_sampler_;
    LawSampler f_sampler_;
    LawSampler l_sampler_;
};

CascadeSample sample_cascade(const CascadeModel& model, Engine& eng);

CascadeEstimate estimate_functional_mc(const CascadeModel& model, const CascadeConfig& cfg);
CascadeEstimate estimate_functional_conv(const CascadeModel& model, const CascadeConfig& cfg);
CascadeEstimate estimate_functional(const CascadeModel& model, const CascadeConfig& cfg);

/// E[a^{t_eps}] for the nested-loop count, by MC or by the renewal solver.
CascadeEstimate nl_functional(const CascadeModel& model, const CascadeConfig& cfg);

/// Weighted least squares of log(value) against log(eps).
FitResult fit_exponent(const std::vector<EpsEstimate>& points);

}  // namespace cle
