#pragma once

#include <string_view>

#include "cle/kappa.hpp"

namespace cle {

/// The four laws of -log CR that carry closed-form moment transforms.
enum class Law { SSW = 0, TOUCH = 1, NONTOUCH = 2, WTD = 3 };

std::string_view law_name(Law law);
Law law_from_name(std::string_view name);

/// alpha together with Delta_alpha and the matching lambda = 2 Delta_alpha - 2.
struct AlphaParam {
    double alpha;
    double delta_alpha;
    double lambda_equiv;
};

/// P[the loop around 0 touches the boundary].
double touching_probability(const KappaContext& ctx);

/// Maximizer of touching_probability over kappa in (4,8).
double kappa0_argmax();

/// Residual of the stationarity equation whose root is kappa0.
double kappa0_equation(double x);

MomentValue ssw_moment(const KappaContext& ctx, double lambda);
MomentValue cr_moment_touching(const KappaContext& ctx, double lambda);
MomentValue cr_moment_nontouching(const KappaContext& ctx, double lambda);
MomentValue wtd_moment(const KappaContext& ctx, double lambda);

MomentValue moment(const KappaContext& ctx, Law law, double lambda);

/// Meromorphic continuation of the moment formula, ignoring the threshold.
/// Used to probe poles; meaningless as an expectation below the threshold.
double moment_continued(const KappaContext& ctx, Law law, double lambda);

/// Divergence threshold: the moment is infinite for lambda at or below it.
double moment_threshold(const KappaContext& ctx, Law law);

/// Total mass of the law (its lambda = 0 moment).
double law_mass(const KappaContext& ctx, Law law);

AlphaParam make_alpha(const KappaContext& ctx, double alpha);
AlphaParam alpha_from_lambda(const KappaContext& ctx, double lambda);

/// Ratio B/(SSW * A) expressed through alpha.
double nontouch_ratio(const KappaContext& ctx, const AlphaParam& alpha);

}  // namespace cle
