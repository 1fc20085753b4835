#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "cle/cle.h"

namespace {

struct Context {
    cle_context* p = nullptr;
    explicit Context(double kappa) { EXPECT_EQ(cle_context_create(kappa, &p), CLE_OK); }
    ~Context() { cle_context_destroy(p); }
};

}  // namespace

TEST(CApi, VersionAndNames) {
    EXPECT_STRNE(cle_version(), "");
    EXPECT_STREQ(cle_status_name(CLE_OK), "ok");
    EXPECT_STREQ(cle_status_name(CLE_ERR_BUFFER), "buffer too small");
}

TEST(CApi, ContextLifecycle) {
    Context c(6.0);
    double k = 0, g = 0, b = 0;
    ASSERT_EQ(cle_context_params(c.p, &k, &g, &b), CLE_OK);
    EXPECT_EQ(k, 6.0);
    EXPECT_NEAR(g, 4.0 / std::sqrt(6.0), 1e-15);
    EXPECT_NEAR(b, 4.0 / 6.0, 1e-15);

    cle_context* bad = reinterpret_cast<cle_context*>(0x1);
    EXPECT_EQ(cle_context_create(8.5, &bad), CLE_ERR_ARGUMENT);
    EXPECT_EQ(bad, nullptr);
    EXPECT_NE(std::string(cle_last_error()).find("(4,8)"), std::string::npos);
    EXPECT_EQ(cle_context_create(6.0, nullptr), CLE_ERR_NULL);
    cle_context_destroy(nullptr);
}

TEST(CApi, ScalarQueries) {
    Context c(6.0);
    double v = 0;
    ASSERT_EQ(cle_touching_probability(c.p, &v), CLE_OK);
    EXPECT_NEAR(v, 0.5, 1e-14);
    ASSERT_EQ(cle_root_np(c.p, 1.0, &v), CLE_OK);
    EXPECT_NEAR(v, 5.0 / 48.0, 1e-13);
    ASSERT_EQ(cle_root_nl(c.p, 1.0, &v), CLE_OK);
    EXPECT_NEAR(v, 0.0, 1e-13);
    ASSERT_EQ(cle_kappa0(&v), CLE_OK);
    EXPECT_NEAR(v, 6.9506111457588086646, 1e-9);
    EXPECT_EQ(cle_root_np(c.p, -1.0, &v), CLE_ERR_ARGUMENT);
    EXPECT_EQ(cle_touching_probability(nullptr, &v), CLE_ERR_NULL);
    EXPECT_EQ(cle_touching_probability(c.p, nullptr), CLE_ERR_NULL);
}

TEST(CApi, Moments) {
    Context c(6.0);
    double v = -1;
    int inf = -1;
    ASSERT_EQ(cle_moment(c.p, CLE_LAW_SSW, 0.0, &v, &inf), CLE_OK);
    EXPECT_EQ(inf, 0);
    EXPECT_NEAR(v, 1.0, 1e-14);
    double thr = 0;
    ASSERT_EQ(cle_moment_threshold(c.p, CLE_LAW_TOUCH, &thr), CLE_OK);
    EXPECT_NEAR(thr, -0.25, 1e-15);
    ASSERT_EQ(cle_moment(c.p, CLE_LAW_TOUCH, thr - 1.0, &v, &inf), CLE_OK);
    EXPECT_EQ(inf, 1);
    EXPECT_EQ(v, 0.0);
    EXPECT_EQ(cle_moment(c.p, static_cast<cle_law>(9), 0.0, &v, &inf), CLE_ERR_ARGUMENT);
}

TEST(CApi, SeriesAndSampler) {
    Context c(6.0);
    cle_series* s = nullptr;
    ASSERT_EQ(cle_series_build(c.p, CLE_LAW_WTD, 50, &s), CLE_OK);
    int terms = 0;
    double mass = 0, smin = 0;
    ASSERT_EQ(cle_series_info(s, &terms, &mass, &smin), CLE_OK);
    EXPECT_EQ(terms, 50);
    EXPECT_NEAR(mass, 0.5, 1e-6);
    std::vector<double> poles(50), coeffs(50);
    EXPECT_EQ(cle_series_terms(s, poles.data(), coeffs.data(), 10), CLE_ERR_BUFFER);
    ASSERT_EQ(cle_series_terms(s, poles.data(), coeffs.data(), poles.size()), CLE_OK);
    EXPECT_NEAR(poles[0], -0.25, 1e-12);
    const double xs[] = {0.5, 1.0, 2.0};
    double dens[3], ccdf[3];
    ASSERT_EQ(cle_series_eval(s, xs, 3, dens, ccdf), CLE_OK);
    EXPECT_GT(dens[1], 0.0);
    EXPECT_GT(ccdf[0], ccdf[1]);
    ASSERT_EQ(cle_series_eval(s, xs, 3, nullptr, ccdf), CLE_OK);

    cle_sampler* sm = nullptr;
    ASSERT_EQ(cle_sampler_create(s, 1024, &sm), CLE_OK);
    std::vector<double> a(100), b(100);
    ASSERT_EQ(cle_sampler_draw(sm, a.size(), 5, a.data()), CLE_OK);
    ASSERT_EQ(cle_sampler_draw(sm, b.size(), 5, b.data()), CLE_OK);
    EXPECT_EQ(a, b);
    EXPECT_EQ(cle_sampler_create(s, 4, &sm), CLE_ERR_ARGUMENT);
    EXPECT_EQ(sm, nullptr);
    cle_sampler_destroy(sm);
    cle_series_destroy(s);
}

TEST(CApi, Experiments) {
    ASSERT_GT(cle_experiment_count(), 10u);
    bool has_prob = false;
    for (size_t i = 0; i < cle_experiment_count(); ++i) has_prob |= std::strcmp(cle_experiment_name(i), "prob") == 0;
    EXPECT_TRUE(has_prob);
    EXPECT_EQ(cle_experiment_name(cle_experiment_count()), nullptr);

    cle_report* r = nullptr;
    ASSERT_EQ(cle_experiment_run("prob", "{\"kappa\": 6}", &r), CLE_OK);
    const auto j = nlohmann::json::parse(cle_report_json(r));
    EXPECT_NEAR(j["results"]["value"].get<double>(), 0.5, 1e-14);
    EXPECT_EQ(j["params"]["kappa"].get<double>(), 6.0);
    cle_report_destroy(r);

    ASSERT_EQ(cle_experiment_run("verify.integral1", "{}", &r), CLE_OK);
    EXPECT_EQ(cle_report_passed(r), 1);
    cle_report_destroy(r);

    EXPECT_EQ(cle_experiment_run("nope", "{}", &r), CLE_ERR_ARGUMENT);
    EXPECT_EQ(r, nullptr);
    EXPECT_EQ(cle_experiment_run("prob", "{\"kapa\": 6}", &r), CLE_ERR_ARGUMENT);
    EXPECT_NE(std::string(cle_last_error()).find("kapa"), std::string::npos);
    EXPECT_EQ(cle_experiment_run("prob", "{not json", &r), CLE_ERR_ARGUMENT);
    EXPECT_EQ(cle_report_passed(nullptr), -1);
    EXPECT_EQ(cle_report_json(nullptr), nullptr);
}

TEST(CApi, AcceptanceCriterion) {
    cle_report* r = nullptr;
    ASSERT_EQ(cle_acceptance_run(1, 1, 1, 0, &r), CLE_OK);
    EXPECT_EQ(cle_report_passed(r), 1);
    cle_report_destroy(r);
    EXPECT_EQ(cle_acceptance_run(11, 1, 1, 0, &r), CLE_ERR_ARGUMENT);
}
