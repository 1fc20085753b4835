#pragma once

#include <optional>
#include <vector>

#include "cle/kappa.hpp"

namespace cle {

/// Nested-path exponent: the root x < 1 - kappa/8 of the wtd moment equation.
double root_np(const KappaContext& ctx, double a);

/// Nested-loop exponent: the root x < 1 - 2/kappa - 3kappa/32.
double root_nl(const KappaContext& ctx, double a);

/// Closed forms available at kappa = 6 and kappa = 16/3.
double closed_form_np(double kappa, double a);

/// Lambda(lam) = log E[CR^{-lam} | T^c]; nullopt stands for +infinity.
std::optional<double> lambda_value(const KappaContext& ctx, double lam);

/// Analytic derivative of Lambda on its finite domain.
double lambda_derivative(const KappaContext& ctx, double lam);

/// Lambda'(0) by central difference, h = 1e-6.
double lambda_prime_zero(const KappaContext& ctx);

/// Inverse of the increasing function Lambda.
double lambda_inverse(const KappaContext& ctx, double y);

/// Legendre transform Lambda*(s); nullopt stands for +infinity.
std::optional<double> legendre_star(const KappaContext& ctx, double s);

struct DualityResult {
    double discrepancy;
    double sup_value;
    double lambda_inverse;
    double t_star;
    bool upper_branch;  ///< true when a P[T^c] > 1, i.e. t in (c1, inf)
};

DualityResult rate_duality_check(const KappaContext& ctx, double a);

}  // namespace cle
