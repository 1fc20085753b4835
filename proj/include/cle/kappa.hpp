#pragma once

#include <cmath>
#include <numbers>
#include <optional>

namespace cle {

inline constexpr double kPi = std::numbers::pi;

/// Parameter bundle for kappa in (4,8).
class KappaContext {
public:
    explicit KappaContext(double kappa);

    double kappa() const { return kappa_; }
    double gamma() const { return gamma_; }
    double gamma2() const { return gamma_ * gamma_; }
    /// Background charge Q = gamma/2 + 2/gamma.
    double q_coeff() const { return q_; }
    /// gamma^2/4 = 4/kappa.
    double stable_index() const { return beta_; }
    double rho() const { return kappa_ - 6.0; }

    /// Continuation variable t = (kappa-4)^2 - 8 kappa lambda.
    double t_of_lambda(double lambda) const;
    double lambda_of_t(double t) const;

private:
    double kappa_;
    double gamma_;
    double q_;
    double beta_;
};

/// sin(c sqrt t) for t >= 0, sinh(c sqrt(-t)) for t < 0.
double gsin(double c, double t);
/// cos(c sqrt t) for t >= 0, cosh(c sqrt(-t)) for t < 0.
double gcos(double c, double t);
/// gsin(c,t)/gsin(d,t), continuous through t = 0 with limit c/d.
double gsin_ratio(double c, double d, double t);

/// d/dt log(gsin(c,t)/gsin(d,t)), regular at t = 0.
double dlog_gsin_ratio(double c, double d, double t);

inline constexpr double kSeriesThreshold = 1e-10;

/// Finite positive value or the Infinite marker.
class MomentValue {
public:
    static MomentValue finite(double v) { return MomentValue(v); }
    static MomentValue infinite() { return MomentValue(); }

    bool is_infinite() const { return !v_.has_value(); }
    bool is_finite() const { return v_.has_value(); }
    double value() const;

private:
    MomentValue() = default;
    explicit MomentValue(double v) : v_(v) {}
    std::optional<double> v_;
};

}  // namespace cle
