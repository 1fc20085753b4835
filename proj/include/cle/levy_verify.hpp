#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cle/kappa.hpp"
#include "cle/rng.hpp"

namespace cle {

/// One draw of the positive stable law with E[exp(-t S)] = exp(-t^beta).
double draw_positive_stable(double beta, Engine& eng);

std::vector<double> sample_positive_stable(double beta, std::size_t n, std::uint64_t seed);

/// Principal-branch power z^w.
std::complex<double> cpow_principal(std::complex<double> z, double w);

struct LevyCheck {
    double mc_value;
    double mc_std_error;
    double closed_value;
    double closed_imag;  ///< imaginary residue of the closed form
    double rel_err;
    std::vector<std::string> warnings;
};

/// Closed form of E[(Y_l1 - Y'_l2)_+^p].
std::complex<double> levy_closed_form(const KappaContext& ctx, double p, double l1, double l2);

/// MC of E[(Y_l1 - Y'_l2)_+^p] against the closed form; p = 0 gives P[Y_l1 > Y'_l2].
LevyCheck lemma_levy_check(const KappaContext& ctx, double p, double l1, double l2, std::size_t n,
                           std::uint64_t seed, unsigned threads = 0);

struct ForestedLengthCheck {
    double slope;
    double slope_se;
    double target;
    double ess;
    std::vector<double> bin_centers;
    std::vector<double> bin_density;
    std::vector<std::string> warnings;
};

ForestedLengthCheck forested_length_law_check(const KappaContext& ctx, double q, double len_a, double len_b,
                                              std::size_t n, std::uint64_t seed, unsigned threads = 0,
                                              int bins = 20);

struct IntegralCheck {
    std::complex<double> quadrature;
    std::complex<double> closed;
    double rel_err;
    double rel_err_real;
    double rel_err_imag;
    std::vector<double> excision_widths;
    std::vector<std::complex<double>> excision_values;
    double excision_stability;  ///< |change| between the last two extrapolated values
    bool converged;
};

/// int_0^inf (t^a - t^b)/(t-1) dt against pi (cot(pi b) - cot(pi a)).
IntegralCheck integral_identity_1(double a, double b);

/// The contour-integral identity on (0, inf) for p in (gamma^2/4 - 1, 0).
IntegralCheck integral_identity_2(const KappaContext& ctx, double p);
std::complex<double> integral_identity_2_closed(const KappaContext& ctx, double p);

struct RatioAlgebra {
    double assembled;
    double assembled_imag;
    double reference;
    double discrepancy;
    double p;
};

/// Builds O1, O2 from the three-arc closed forms and compares the combined ratio with nontouch_ratio.
RatioAlgebra ratio_algebra_check(const KappaContext& ctx, double alpha);

}  // namespace cle
