#pragma once

#include <cstdint>
#include <vector>

#include "cle/exact_formulas.hpp"
#include "cle/rng.hpp"

namespace cle {

/// Density of S = -log CR on an event as a sum of exponentials
/// f(s) = sum_k c_k exp(lambda_k s), lambda_1 > lambda_2 > ... (all < 0).
class ResidueSeries {
public:
    Law law() const { return law_; }
    const KappaContext& context() const { return ctx_; }
    int terms() const { return static_cast<int>(poles_.size()); }
    const std::vector<double>& poles() const { return poles_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    /// Square roots w_k = sqrt((kappa-4)^2 - 8 kappa lambda_k).
    const std::vector<double>& pole_roots() const { return roots_; }
    /// Integral of the truncated density over [s_min, inf).
    double mass() const { return mass_; }
    /// Left end of the representable range, 40/|lambda_K|.
    double s_min() const { return s_min_; }
    /// Bound on the omitted terms of the survival function at s_min.
    double truncation_bound() const { return trunc_bound_; }
    /// Largest |analytic - numerical| / scale among the residue cross-checks.
    double residue_check_error() const { return residue_err_; }

    double density(double s) const;
    /// Survival mass int_s^inf f.
    double ccdf(double s) const;
    /// int_{s0}^inf e^{-lambda s} f(s) ds evaluated term by term.
    double laplace_tail(double lambda, double s0) const;

private:
    friend ResidueSeries build_series(const KappaContext&, Law, int);
    std::size_t active_terms(double s) const;
    ResidueSeries(const KappaContext& ctx, Law law) : ctx_(ctx), law_(law) {}

    KappaContext ctx_;
    Law law_;
    std::vector<double> poles_;
    std::vector<double> coeffs_;
    std::vector<double> roots_;
    double mass_ = 0.0;
    double s_min_ = 0.0;
    double trunc_bound_ = 0.0;
    double residue_err_ = 0.0;
};

inline constexpr int kDefaultTerms = 200;

/// Residue expansion with K poles; throws ResidueMismatch if an analytic
/// coefficient disagrees with its numerical limit by more than 1e-7.
ResidueSeries build_series(const KappaContext& ctx, Law law, int K = kDefaultTerms);

/// Quadrature of e^{-lambda s} f(s) against the closed-form moment;
/// returns the largest relative error over the grid.
double transform_roundtrip(const ResidueSeries& series, const std::vector<double>& lambda_grid);

/// Single quadrature evaluation of int e^{-lambda s} f(s) ds.
double transform_quadrature(const ResidueSeries& series, double lambda);

/// Inverse-transform sampler for the normalized law of a series.
class LawSampler {
public:
    explicit LawSampler(const ResidueSeries& series, int table_points = 4096);

    double draw(Engine& eng) const;
    /// n draws from a stream keyed by seed.
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

    /// Normalized survival function from the series.
    double survival(double s) const;

    /// True if the monotone envelope modified the table.
    bool envelope_applied() const { return envelope_applied_; }
    double envelope_max_correction() const { return envelope_max_; }
    double mass() const { return mass_; }
    double leading_pole() const { return lead_pole_; }

private:
    double invert(double u) const;

    ResidueSeries series_;
    double mass_;
    double lead_pole_;
    std::vector<double> s_;
    std::vector<double> g_;  // normalized survival, decreasing
    std::vector<double> f_;  // normalized density
    bool envelope_applied_ = false;
    double envelope_max_ = 0.0;
};

}  // namespace cle
