#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cle/errors.hpp"
#include "cle/exact_formulas.hpp"
#include "cle/levy_verify.hpp"
#include "oracle_values.hpp"

using namespace cle;

TEST(LevyVerify, PositiveStableLaplaceTransform) {
    for (double beta : {0.5, 0.75}) {
        const std::vector<double> x = sample_positive_stable(beta, 200000, 9);
        for (double t : {0.5, 1.0, 2.0}) {
            double m = 0.0;
            for (double v : x) m += std::exp(-t * v);
            m /= x.size();
            EXPECT_LT(std::abs(m - std::exp(-std::pow(t, beta))) / std::exp(-std::pow(t, beta)), 5e-3)
                << beta << " " << t;
        }
    }
}

TEST(LevyVerify, PrincipalPower) {
    const std::complex<double> z(-1.0, 1e-300);
    EXPECT_NEAR(cpow_principal(z, 0.5).imag(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(cpow_principal({3.0, 4.0}, 2.0) - std::complex<double>(-7.0, 24.0)), 0.0, 1e-12);
}

TEST(LevyVerify, ClosedFormMatchesOracle) {
    for (const auto& o : oracle::kLevy) {
        const auto v = levy_closed_form(KappaContext(o.kappa), o.p, o.l1, o.l2);
        EXPECT_LT(std::abs(v.real() - o.closed) / std::abs(o.closed), 1e-12) << o.kappa << " " << o.p;
        EXPECT_LT(std::abs(v.imag()), 1e-12);
    }
}

// Property: scaling both lengths by c scales the expectation by c^{p/beta}.
TEST(LevyVerify, ClosedFormHomogeneity) {
    const KappaContext ctx(5.5);
    const double beta = ctx.stable_index();
    for (double c : {0.3, 2.0, 7.0}) {
        const double base = levy_closed_form(ctx, -0.2, 1.0, 1.7).real();
        const double scaled = levy_closed_form(ctx, -0.2, c, 1.7 * c).real();
        EXPECT_NEAR(scaled / base, std::pow(c, -0.2 / beta), 1e-12);
    }
}

TEST(LevyVerify, SmallPGivesExceedanceProbability) {
    const KappaContext ctx(6.0);
    const double p = levy_closed_form(ctx, -1e-7, 1.0, 1.0).real();
    EXPECT_NEAR(p, 0.5, 1e-5);
    const double q = levy_closed_form(ctx, -1e-7, 2.0, 1.0).real();
    const double r = levy_closed_form(ctx, -1e-7, 1.0, 2.0).real();
    EXPECT_NEAR(q + r, 1.0, 1e-5);
    EXPECT_GT(q, 0.5);
}

TEST(LevyVerify, MonteCarloAgreesWithClosedForm) {
    const KappaContext ctx(6.0);
    const LevyCheck c = lemma_levy_check(ctx, -0.3, 1.0, 1.0, 400000, 17);
    EXPECT_LT(std::abs(c.mc_value - c.closed_value), 4 * c.mc_std_error);
    EXPECT_LT(c.rel_err, 0.02);
    const LevyCheck z = lemma_levy_check(ctx, 0.0, 1.0, 2.0, 200000, 17);
    EXPECT_LT(std::abs(z.mc_value - z.closed_value), 4 * z.mc_std_error);
}

TEST(LevyVerify, MonteCarloIndependentOfThreadCount) {
    const KappaContext ctx(16.0 / 3.0);
    const LevyCheck a = lemma_levy_check(ctx, -0.2, 1.0, 1.0, 100000, 3, 1);
    const LevyCheck b = lemma_levy_check(ctx, -0.2, 1.0, 1.0, 100000, 3, 4);
    EXPECT_EQ(a.mc_value, b.mc_value);
    EXPECT_EQ(a.mc_std_error, b.mc_std_error);
}

TEST(LevyVerify, IntegralOneBasics) {
    EXPECT_LT(std::abs(integral_identity_1(-0.4, -0.4).quadrature), 1e-14);
    const IntegralCheck ab = integral_identity_1(-0.25, -0.75);
    const IntegralCheck ba = integral_identity_1(-0.75, -0.25);
    EXPECT_LT(ab.rel_err, 1e-6);
    EXPECT_NEAR(ab.quadrature.real(), -ba.quadrature.real(), 1e-9);
    EXPECT_NEAR(ab.closed.real(), kPi * (1.0 / std::tan(-0.75 * kPi) - 1.0 / std::tan(-0.25 * kPi)), 1e-13);
    EXPECT_LT(integral_identity_1(-0.01, -0.99).rel_err, 1e-4);
    EXPECT_THROW(integral_identity_1(0.2, -0.5), DomainError);
}

TEST(LevyVerify, IntegralTwo) {
    const KappaContext ctx(6.0);
    const IntegralCheck c = integral_identity_2(ctx, -0.2);
    EXPECT_LT(c.rel_err, 1e-5);
    EXPECT_TRUE(c.converged);
    const double lo = ctx.gamma2() / 4 - 1;
    for (double k : {4.5, 7.5}) {
        const KappaContext kc(k);
        const double l = kc.gamma2() / 4 - 1;
        EXPECT_LT(integral_identity_2(kc, 0.5 * l).rel_err, 1e-5) << k;
    }
    EXPECT_THROW(integral_identity_2(ctx, lo - 0.01), DomainError);
    EXPECT_THROW(integral_identity_2(ctx, 0.1), DomainError);
}

TEST(LevyVerify, RatioAlgebra) {
    for (double k : {4.5, 6.0, 7.5}) {
        const KappaContext ctx(k);
        const double q = ctx.q_coeff();
        const double top = 4.0 / ctx.gamma();
        const RatioAlgebra mid = ratio_algebra_check(ctx, 0.5 * (q + top));
        EXPECT_LT(mid.discrepancy, 1e-10) << k;
        EXPECT_LT(std::abs(mid.assembled_imag), 1e-12);
        EXPECT_LT(ratio_algebra_check(ctx, q + 1e-3 * (top - q)).discrepancy, 1e-9) << k;
    }
}

TEST(LevyVerify, ForestedLengthLaw) {
    const KappaContext ctx(6.0);
    const ForestedLengthCheck c = forested_length_law_check(ctx, 1.5, 1.0, 100.0, 1000000, 5);
    EXPECT_NEAR(c.target, -ctx.stable_index() * 1.5 + ctx.stable_index() - 1.0, 1e-15);
    EXPECT_NEAR(c.slope, c.target, 0.05);
    EXPECT_EQ(c.bin_centers.size(), 20u);
    EXPECT_THROW(forested_length_law_check(ctx, 2.1, 1.0, 2.0, 1000, 1), DomainError);
    EXPECT_THROW(forested_length_law_check(ctx, 1.0, 2.0, 1.0, 1000, 1), DomainError);
}
