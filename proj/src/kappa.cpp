#include "cle/kappa.hpp"

#include <algorithm>
#include <string>

#include "cle/errors.hpp"

namespace cle {

KappaContext::KappaContext(double kappa) : kappa_(kappa) {
    if (!(kappa > 4.0 && kappa < 8.0)) {
        throw DomainError("kappa must lie in the open interval (4,8), got " + std::to_string(kappa));
    }
    gamma_ = 4.0 / std::sqrt(kappa);
    q_ = gamma_ / 2.0 + 2.0 / gamma_;
    beta_ = 4.0 / kappa;
}

double KappaContext::t_of_lambda(double lambda) const {
    const double d = kappa_ - 4.0;
    return d * d - 8.0 * kappa_ * lambda;
}

double KappaContext::lambda_of_t(double t) const {
    const double d = kappa_ - 4.0;
    return (d * d - t) / (8.0 * kappa_);
}

double gsin(double c, double t) {
    if (t >= 0.0) return std::sin(c * std::sqrt(t));
    return std::sinh(c * std::sqrt(-t));
}

double gcos(double c, double t) {
    if (t >= 0.0) return std::cos(c * std::sqrt(t));
    return std::cosh(c * std::sqrt(-t));
}

double gsin_ratio(double c, double d, double t) {
    if (std::abs(t) < kSeriesThreshold) {
        return (c / d) * (1.0 - (c * c - d * d) * t / 6.0);
    }
    if (t < 0.0) {
        const double v = std::sqrt(-t);
        if (std::max(c, d) * v > 30.0) {
            return std::exp((c - d) * v) * (-std::expm1(-2.0 * c * v)) / (-std::expm1(-2.0 * d * v));
        }
    }
    return gsin(c, t) / gsin(d, t);
}

namespace {

// d/dt log(gsin(c,t)/sqrt|t|)
double regular_dlog(double c, double t) {
    const double x2 = c * c * t;
    if (std::abs(x2) < 1e-3) {
        const double c2 = c * c;
        return -c2 / 6.0 - c2 * c2 * t / 90.0 - c2 * c2 * c2 * t * t / 945.0 -
               c2 * c2 * c2 * c2 * t * t * t / 9450.0;
    }
    if (t > 0.0) {
        const double r = std::sqrt(t);
        return c * std::cos(c * r) / (2.0 * r * std::sin(c * r)) - 1.0 / (2.0 * t);
    }
    const double v = std::sqrt(-t);
    return -c / (2.0 * v * std::tanh(c * v)) - 1.0 / (2.0 * t);
}

}  // namespace

double dlog_gsin_ratio(double c, double d, double t) {
    return regular_dlog(c, t) - regular_dlog(d, t);
}

double MomentValue::value() const {
    if (!v_) throw DomainError("moment is infinite");
    return *v_;
}

}  // namespace cle
