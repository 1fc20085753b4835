#include <gtest/gtest.h>

#include <cmath>

#include "cle/errors.hpp"
#include "cle/exact_formulas.hpp"
#include "cle/exponents.hpp"
#include "oracle_values.hpp"

using namespace cle;

TEST(Exponents, RootsMatchOracle) {
    for (const auto& o : oracle::kRoots) {
        const KappaContext ctx(o.kappa);
        EXPECT_NEAR(root_np(ctx, o.a), o.np, 1e-11) << "np kappa " << o.kappa << " a " << o.a;
        EXPECT_NEAR(root_nl(ctx, o.a), o.nl, 1e-11) << "nl kappa " << o.kappa << " a " << o.a;
    }
}

TEST(Exponents, KnownValuesAtOne) {
    EXPECT_NEAR(root_np(KappaContext(6.0), 1.0), 5.0 / 48.0, 1e-13);
    EXPECT_NEAR(root_np(KappaContext(16.0 / 3.0), 1.0), 1.0 / 8.0, 1e-13);
    for (double k : {4.2, 4.5, 16.0 / 3.0, 6.0, 7.5, 7.9}) {
        EXPECT_NEAR(root_nl(KappaContext(k), 1.0), 0.0, 1e-13) << k;
    }
}

TEST(Exponents, ClosedFormsAgreeWithRoot) {
    for (double a = 0.1; a <= 2.95; a += 0.1) {
        EXPECT_NEAR(root_np(KappaContext(6.0), a), closed_form_np(6.0, a), 1e-11) << a;
    }
    for (double a = 0.1; a <= 1.95; a += 0.1) {
        EXPECT_NEAR(root_np(KappaContext(16.0 / 3.0), a), closed_form_np(16.0 / 3.0, a), 1e-11) << a;
    }
    EXPECT_THROW(closed_form_np(7.0, 1.0), DomainError);
    EXPECT_THROW(closed_form_np(6.0, 0.0), DomainError);
}

// Property: the root solves the moment equation and sits below the threshold.
TEST(Exponents, RootsSolveTheirEquations) {
    for (double k = 4.2; k < 8.0; k += 0.4) {
        const KappaContext ctx(k);
        for (double a : {0.05, 0.4, 1.0, 2.0, 6.0}) {
            const double x = root_np(ctx, a);
            EXPECT_LT(x, 1 - k / 8);
            EXPECT_NEAR(wtd_moment(ctx, -x).value() * a, 1.0, 1e-10) << k << " " << a;
            const double y = root_nl(ctx, a);
            EXPECT_LT(y, 1 - 2 / k - 3 * k / 32);
            EXPECT_NEAR(ssw_moment(ctx, -y).value() * a, 1.0, 1e-10) << k << " " << a;
        }
    }
}

// Property: both exponents decrease in a.
TEST(Exponents, MonotoneInA) {
    for (double k : {4.5, 6.0, 7.5}) {
        const KappaContext ctx(k);
        double pnp = root_np(ctx, 0.02);
        double pnl = root_nl(ctx, 0.02);
        for (double a = 0.05; a < 10.0; a *= 1.3) {
            const double np = root_np(ctx, a);
            const double nl = root_nl(ctx, a);
            EXPECT_LT(np, pnp);
            EXPECT_LT(nl, pnl);
            pnp = np;
            pnl = nl;
        }
    }
}

TEST(Exponents, RootRejectsNonPositiveA) {
    const KappaContext ctx(6.0);
    EXPECT_THROW(root_np(ctx, 0.0), DomainError);
    EXPECT_THROW(root_nl(ctx, -1.0), DomainError);
}

TEST(Exponents, LambdaInverseMatchesRoot) {
    for (double k : {4.5, 16.0 / 3.0, 6.0, 7.0}) {
        const KappaContext ctx(k);
        const double pc = 1 - touching_probability(ctx);
        for (double a : {0.3, 0.7, 1.5, 4.0}) {
            EXPECT_NEAR(lambda_inverse(ctx, -std::log(a * pc)), root_np(ctx, a), 1e-10) << k << " " << a;
        }
    }
}

TEST(Exponents, LambdaBasics) {
    const KappaContext ctx(6.0);
    EXPECT_NEAR(*lambda_value(ctx, 0.0), 0.0, 1e-14);
    EXPECT_FALSE(lambda_value(ctx, 1 - 6.0 / 8).has_value());
    for (double lam : {-2.0, -0.5, 0.1}) {
        const double h = 1e-6;
        const double fd = (*lambda_value(ctx, lam + h) - *lambda_value(ctx, lam - h)) / (2 * h);
        EXPECT_NEAR(lambda_derivative(ctx, lam), fd, 1e-7);
    }
    EXPECT_NEAR(lambda_prime_zero(ctx), lambda_derivative(ctx, 0.0), 1e-8);
    EXPECT_GT(lambda_prime_zero(ctx), 0.0);
}

// Property: Lambda* is convex and vanishes at the mean slope.
TEST(Exponents, LegendreStar) {
    const KappaContext ctx(6.0);
    const double m = lambda_prime_zero(ctx);
    EXPECT_NEAR(*legendre_star(ctx, m), 0.0, 1e-8);
    EXPECT_FALSE(legendre_star(ctx, 0.0).has_value());
    double prev2 = *legendre_star(ctx, 0.2 * m);
    double prev1 = *legendre_star(ctx, 0.4 * m);
    for (double f = 0.6; f < 4.0; f += 0.2) {
        const double v = *legendre_star(ctx, f * m);
        EXPECT_GE(v, 0.0);
        EXPECT_GT(v - 2 * prev1 + prev2, -1e-9);
        prev2 = prev1;
        prev1 = v;
    }
}

TEST(Exponents, RateDualityBothBranches) {
    for (double k : {4.5, 6.0, 7.5}) {
        const KappaContext ctx(k);
        const double pc = 1 - touching_probability(ctx);
        bool saw_upper = false;
        bool saw_lower = false;
        for (double a : {0.3, 0.7, 1.5, 2.5, 4.0}) {
            if (std::abs(std::log(a * pc)) < 1e-3) continue;
            const DualityResult d = rate_duality_check(ctx, a);
            EXPECT_LT(d.discrepancy, 1e-6) << k << " " << a;
            EXPECT_EQ(d.upper_branch, a * pc > 1.0);
            saw_upper |= d.upper_branch;
            saw_lower |= !d.upper_branch;
        }
        EXPECT_TRUE(saw_upper);
        EXPECT_TRUE(saw_lower);
    }
}
