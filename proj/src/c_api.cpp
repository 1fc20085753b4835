#include "cle/cle.h"

#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "cle/errors.hpp"
#include "cle/exact_formulas.hpp"
#include "cle/exponents.hpp"
#include "cle/experiments.hpp"
#include "cle/radii_laws.hpp"

#ifndef CLE_VERSION_STRING
#define CLE_VERSION_STRING "0.0.0"
#endif

struct cle_context {
    cle::KappaContext ctx;
};

struct cle_series {
    cle::ResidueSeries series;
};

struct cle_sampler {
    cle::LawSampler sampler;
};

struct cle_report {
    std::string text;
    int passed;
};

namespace {

thread_local std::string tl_error;

cle_status fail(cle_status s, const char* msg) {
    tl_error = msg;
    return s;
}

// Maps the active exception to a status code.
cle_status translate() {
    try {
        throw;
    } catch (const cle::DomainError& e) {
        return fail(CLE_ERR_ARGUMENT, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(CLE_ERR_ARGUMENT, e.what());
    } catch (const cle::BracketError& e) {
        return fail(CLE_ERR_BRACKET, e.what());
    } catch (const cle::ResidueMismatch& e) {
        return fail(CLE_ERR_RESIDUE, e.what());
    } catch (const cle::InvariantError& e) {
        return fail(CLE_ERR_INVARIANT, e.what());
    } catch (const std::exception& e) {
        return fail(CLE_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CLE_ERR_INTERNAL, "unknown exception");
    }
}

template <class Fn>
cle_status guarded(Fn&& fn) {
    try {
        fn();
        tl_error.clear();
        return CLE_OK;
    } catch (...) {
        return translate();
    }
}

#define CLE_REQUIRE(p)                                                   \
    do {                                                                 \
        if (!(p)) return fail(CLE_ERR_NULL, "null pointer: " #p);        \
    } while (0)

cle::Law to_law(cle_law law) {
    switch (law) {
        case CLE_LAW_SSW: return cle::Law::SSW;
        case CLE_LAW_TOUCH: return cle::Law::TOUCH;
        case CLE_LAW_NONTOUCH: return cle::Law::NONTOUCH;
        case CLE_LAW_WTD: return cle::Law::WTD;
    }
    throw cle::DomainError("unknown law tag " + std::to_string(static_cast<int>(law)));
}

cle_report* make_report(const nlohmann::json& j) {
    const nlohmann::json verdict = j.value("passed", nlohmann::json(nullptr));
    const int passed = verdict.is_boolean() ? (verdict.get<bool>() ? 1 : 0) : -1;
    return new cle_report{j.dump(2), passed};
}

}  // namespace

extern "C" {

const char* cle_version(void) { return CLE_VERSION_STRING; }

const char* cle_last_error(void) { return tl_error.c_str(); }

const char* cle_status_name(cle_status status) {
    switch (status) {
        case CLE_OK: return "ok";
        case CLE_ERR_NULL: return "null pointer";
        case CLE_ERR_ARGUMENT: return "invalid argument";
        case CLE_ERR_BRACKET: return "bracketing failed";
        case CLE_ERR_RESIDUE: return "residue mismatch";
        case CLE_ERR_INVARIANT: return "invariant violated";
        case CLE_ERR_BUFFER: return "buffer too small";
        case CLE_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

cle_status cle_context_create(double kappa, cle_context** out) {
    CLE_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new cle_context{cle::KappaContext(kappa)}; });
}

void cle_context_destroy(cle_context* ctx) { delete ctx; }

cle_status cle_context_params(const cle_context* ctx, double* kappa, double* gamma, double* stable_index) {
    CLE_REQUIRE(ctx);
    if (kappa) *kappa = ctx->ctx.kappa();
    if (gamma) *gamma = ctx->ctx.gamma();
    if (stable_index) *stable_index = ctx->ctx.stable_index();
    return CLE_OK;
}

cle_status cle_touching_probability(const cle_context* ctx, double* out) {
    CLE_REQUIRE(ctx);
    CLE_REQUIRE(out);
    return guarded([&] { *out = cle::touching_probability(ctx->ctx); });
}

cle_status cle_kappa0(double* out) {
    CLE_REQUIRE(out);
    return guarded([&] { *out = cle::kappa0_argmax(); });
}

cle_status cle_moment(const cle_context* ctx, cle_law law, double lambda, double* value, int* is_infinite) {
    CLE_REQUIRE(ctx);
    CLE_REQUIRE(value);
    CLE_REQUIRE(is_infinite);
    return guarded([&] {
        const cle::MomentValue m = cle::moment(ctx->ctx, to_law(law), lambda);
        *is_infinite = m.is_infinite() ? 1 : 0;
        *value = m.is_finite() ? m.value() : 0.0;
    });
}

cle_status cle_moment_threshold(const cle_context* ctx, cle_law law, double* out) {
    CLE_REQUIRE(ctx);
    CLE_REQUIRE(out);
    return guarded([&] { *out = cle::moment_threshold(ctx->ctx, to_law(law)); });
}

cle_status cle_root_np(const cle_context* ctx, double a, double* out) {
    CLE_REQUIRE(ctx);
    CLE_REQUIRE(out);
    return guarded([&] { *out = cle::root_np(ctx->ctx, a); });
}

cle_status cle_root_nl(const cle_context* ctx, double a, double* out) {
    CLE_REQUIRE(ctx);
    CLE_REQUIRE(out);
    return guarded([&] { *out = cle::root_nl(ctx->ctx, a); });
}

cle_status cle_series_build(const cle_context* ctx, cle_law law, int terms, cle_series** out) {
    CLE_REQUIRE(ctx);
    CLE_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new cle_series{cle::build_series(ctx->ctx, to_law(law), terms)}; });
}

void cle_series_destroy(cle_series* series) { delete series; }

cle_status cle_series_info(const cle_series* series, int* terms, double* mass, double* s_min) {
    CLE_REQUIRE(series);
    if (terms) *terms = series->series.terms();
    if (mass) *mass = series->series.mass();
    if (s_min) *s_min = series->series.s_min();
    return CLE_OK;
}

cle_status cle_series_terms(const cle_series* series, double* poles, double* coefficients, size_t capacity) {
    CLE_REQUIRE(series);
    CLE_REQUIRE(poles);
    CLE_REQUIRE(coefficients);
    const auto& p = series->series.poles();
    const auto& c = series->series.coefficients();
    if (capacity < p.size()) return fail(CLE_ERR_BUFFER, "capacity below the number of terms");
    std::memcpy(poles, p.data(), p.size() * sizeof(double));
    std::memcpy(coefficients, c.data(), c.size() * sizeof(double));
    return CLE_OK;
}

cle_status cle_series_eval(const cle_series* series, const double* s, size_t n, double* density, double* ccdf) {
    CLE_REQUIRE(series);
    if (n > 0) CLE_REQUIRE(s);
    return guarded([&] {
        for (size_t i = 0; i < n; ++i) {
            if (density) density[i] = series->series.density(s[i]);
            if (ccdf) ccdf[i] = series->series.ccdf(s[i]);
        }
    });
}

cle_status cle_sampler_create(const cle_series* series, int table_points, cle_sampler** out) {
    CLE_REQUIRE(series);
    CLE_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new cle_sampler{cle::LawSampler(series->series, table_points)}; });
}

void cle_sampler_destroy(cle_sampler* sampler) { delete sampler; }

cle_status cle_sampler_draw(const cle_sampler* sampler, size_t n, uint64_t seed, double* out) {
    CLE_REQUIRE(sampler);
    if (n > 0) CLE_REQUIRE(out);
    return guarded([&] {
        const std::vector<double> v = sampler->sampler.sample(n, seed);
        std::memcpy(out, v.data(), n * sizeof(double));
    });
}

cle_status cle_experiment_run(const char* name, const char* params_json, cle_report** out) {
    CLE_REQUIRE(name);
    CLE_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const nlohmann::json params =
            (params_json && *params_json) ? nlohmann::json::parse(params_json) : nlohmann::json::object();
        *out = make_report(cle::run_experiment(name, params));
    });
}

size_t cle_experiment_count(void) { return cle::experiment_names().size(); }

const char* cle_experiment_name(size_t index) {
    const auto& names = cle::experiment_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

cle_status cle_acceptance_run(int criterion, int quick, uint64_t seed, unsigned threads, cle_report** out) {
    CLE_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const nlohmann::json params{
            {"criterion", criterion}, {"quick", quick != 0}, {"seed", seed}, {"threads", threads}};
        *out = make_report(cle::run_experiment("acceptance", params));
    });
}

const char* cle_report_json(const cle_report* report) { return report ? report->text.c_str() : nullptr; }

int cle_report_passed(const cle_report* report) { return report ? report->passed : -1; }

void cle_report_destroy(cle_report* report) { delete report; }

}  // extern "C"
