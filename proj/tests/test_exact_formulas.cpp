#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cle/errors.hpp"
#include "cle/exact_formulas.hpp"
#include "oracle_values.hpp"

using namespace cle;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

TEST(ExactFormulas, TouchingProbabilityAtSixIsOneHalf) {
    EXPECT_NEAR(touching_probability(KappaContext(6.0)), 0.5, 1e-14);
}

TEST(ExactFormulas, TouchingProbabilityMatchesOracle) {
    for (const auto& o : oracle::kTouch) {
        EXPECT_NEAR(touching_probability(KappaContext(o.kappa)), o.p_touch, 1e-13) << "kappa " << o.kappa;
    }
}

TEST(ExactFormulas, Kappa0MatchesOracleAndIsStationary) {
    const double k0 = kappa0_argmax();
    EXPECT_NEAR(k0, oracle::kKappa0, 1e-9);
    EXPECT_NEAR(kappa0_equation(k0), 0.0, 1e-9);
    const double p0 = touching_probability(KappaContext(k0));
    for (double d : {-0.05, -0.01, 0.01, 0.05}) {
        EXPECT_LT(touching_probability(KappaContext(k0 + d)), p0);
    }
}

TEST(ExactFormulas, MomentsMatchOracle) {
    for (const auto& o : oracle::kMoments) {
        const KappaContext ctx(o.kappa);
        const double expect[] = {o.ssw, o.touch, o.nontouch, o.wtd};
        for (int l = 0; l < 4; ++l) {
            const MomentValue m = moment(ctx, static_cast<Law>(l), o.lambda);
            ASSERT_TRUE(m.is_finite()) << law_name(static_cast<Law>(l)) << " kappa " << o.kappa;
            EXPECT_LT(rel(m.value(), expect[l]), 1e-11)
                << law_name(static_cast<Law>(l)) << " kappa " << o.kappa << " lambda " << o.lambda;
        }
    }
}

TEST(ExactFormulas, NamedAccessorsAgreeWithDispatch) {
    const KappaContext ctx(5.5);
    for (double lam : {-0.02, 0.0, 0.4, 2.0}) {
        EXPECT_EQ(ssw_moment(ctx, lam).value(), moment(ctx, Law::SSW, lam).value());
        EXPECT_EQ(cr_moment_touching(ctx, lam).value(), moment(ctx, Law::TOUCH, lam).value());
        EXPECT_EQ(cr_moment_nontouching(ctx, lam).value(), moment(ctx, Law::NONTOUCH, lam).value());
        EXPECT_EQ(wtd_moment(ctx, lam).value(), moment(ctx, Law::WTD, lam).value());
    }
}

TEST(ExactFormulas, ThresholdsAndDivergence) {
    for (double k : {4.5, 16.0 / 3.0, 6.0, 7.5}) {
        const KappaContext ctx(k);
        EXPECT_NEAR(moment_threshold(ctx, Law::SSW), 3 * k / 32 + 2 / k - 1, 1e-15);
        EXPECT_NEAR(moment_threshold(ctx, Law::NONTOUCH), 3 * k / 32 + 2 / k - 1, 1e-15);
        EXPECT_NEAR(moment_threshold(ctx, Law::TOUCH), k / 8 - 1, 1e-15);
        EXPECT_NEAR(moment_threshold(ctx, Law::WTD), k / 8 - 1, 1e-15);
        for (int l = 0; l < 4; ++l) {
            const Law law = static_cast<Law>(l);
            const double thr = moment_threshold(ctx, law);
            EXPECT_TRUE(moment(ctx, law, thr).is_infinite());
            EXPECT_TRUE(moment(ctx, law, thr - 0.1).is_infinite());
            EXPECT_TRUE(moment(ctx, law, thr + 1e-3).is_finite());
        }
    }
}

TEST(ExactFormulas, MassesAtZero) {
    for (double k : {4.5, 5.0, 6.0, 7.0, 7.9}) {
        const KappaContext ctx(k);
        const double p = touching_probability(ctx);
        EXPECT_NEAR(law_mass(ctx, Law::SSW), 1.0, 1e-14);
        EXPECT_NEAR(law_mass(ctx, Law::TOUCH), p, 1e-14);
        EXPECT_NEAR(law_mass(ctx, Law::NONTOUCH), 1 - p, 1e-14);
        EXPECT_NEAR(law_mass(ctx, Law::WTD), 1 - p, 1e-14);
        for (int l = 0; l < 4; ++l) {
            EXPECT_NEAR(moment(ctx, static_cast<Law>(l), 0.0).value(), law_mass(ctx, static_cast<Law>(l)), 1e-13);
        }
    }
}

// Property: touching and nontouching parts add up to the full moment, and the
// nontouching part factorizes as wtd * ssw.
TEST(ExactFormulas, DecompositionProperty) {
    for (double k = 4.1; k < 8.0; k += 0.3) {
        const KappaContext ctx(k);
        const double lo = moment_threshold(ctx, Law::SSW) > moment_threshold(ctx, Law::TOUCH)
                              ? moment_threshold(ctx, Law::SSW)
                              : moment_threshold(ctx, Law::TOUCH);
        for (int i = 1; i <= 15; ++i) {
            const double lam = lo + (2.0 - lo) * i / 15.0;
            const double s = ssw_moment(ctx, lam).value();
            const double a = cr_moment_touching(ctx, lam).value();
            const double b = cr_moment_nontouching(ctx, lam).value();
            const double w = wtd_moment(ctx, lam).value();
            EXPECT_LT(std::abs(a + b - s) / s, 1e-10) << k << " " << lam;
            EXPECT_LT(std::abs(w * s - b) / b, 1e-10) << k << " " << lam;
        }
    }
}

// Property: each moment is decreasing in lambda.
TEST(ExactFormulas, MomentsDecreaseInLambda) {
    for (double k : {4.3, 5.7, 7.7}) {
        const KappaContext ctx(k);
        for (int l = 0; l < 4; ++l) {
            const Law law = static_cast<Law>(l);
            double prev = std::numeric_limits<double>::infinity();
            for (double lam = moment_threshold(ctx, law) + 1e-3; lam < 4.0; lam += 0.05) {
                const double v = moment(ctx, law, lam).value();
                EXPECT_LT(v, prev);
                prev = v;
            }
        }
    }
}

TEST(ExactFormulas, AlphaParametrization) {
    for (double k : {4.5, 6.0, 7.5}) {
        const KappaContext ctx(k);
        const double q = ctx.q_coeff();
        const double top = 4.0 / ctx.gamma();
        EXPECT_NEAR(make_alpha(ctx, top).lambda_equiv, 0.0, 1e-14);
        for (int i = 1; i <= 8; ++i) {
            const double alpha = q + (top - q) * i / 8.0;
            const AlphaParam a = make_alpha(ctx, alpha);
            EXPECT_NEAR(a.lambda_equiv, 2 * a.delta_alpha - 2, 1e-14);
            EXPECT_NEAR(alpha_from_lambda(ctx, a.lambda_equiv).alpha, alpha, 1e-9);
            const double lam = a.lambda_equiv;
            const double ratio = cr_moment_nontouching(ctx, lam).value() /
                                 (ssw_moment(ctx, lam).value() * cr_moment_touching(ctx, lam).value());
            EXPECT_LT(std::abs(nontouch_ratio(ctx, a) - ratio) / ratio, 1e-9) << k << " " << alpha;
        }
        EXPECT_THROW(make_alpha(ctx, q), DomainError);
        EXPECT_THROW(make_alpha(ctx, top + 0.1), DomainError);
    }
}

TEST(ExactFormulas, LawNamesRoundTrip) {
    for (int l = 0; l < 4; ++l) {
        const Law law = static_cast<Law>(l);
        EXPECT_EQ(law_from_name(law_name(law)), law);
    }
    EXPECT_THROW(law_from_name("loop"), DomainError);
}

TEST(ExactFormulas, DomainIsOpenInterval) {
    EXPECT_THROW(KappaContext(4.0), DomainError);
    EXPECT_THROW(KappaContext(8.0), DomainError);
    EXPECT_THROW(KappaContext(std::nan("")), DomainError);
    EXPECT_NO_THROW(KappaContext(4.0 + 1e-9));
}

TEST(ExactFormulas, ContinuationSeesPoles) {
    const KappaContext ctx(6.0);
    const double thr = moment_threshold(ctx, Law::SSW);
    EXPECT_GT(std::abs(moment_continued(ctx, Law::SSW, thr + 1e-9)), 1e6);
    EXPECT_NEAR(moment_continued(ctx, Law::SSW, 0.7), ssw_moment(ctx, 0.7).value(), 1e-15);
}
