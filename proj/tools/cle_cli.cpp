// Command-line front end over the C interface.
#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "cle/cle.h"

using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1.0";
constexpr std::size_t kInlineRows = 5000;

enum Exit { kOk = 0, kArgument = 2, kGate = 3, kInternal = 4 };

// Options whose values are forwarded only when given on the command line, so the
// library stays the single source of defaults (echoed back in the report).
class Binder {
public:
    template <class T>
    CLI::Option* add(CLI::App* app, const std::string& flags, const std::string& key, const std::string& help) {
        T& ref = store<T>().emplace_back();
        CLI::Option* o = app->add_option(flags, ref, help);
        bound_.push_back({o, app, key, [&ref] { return json(ref); }});
        return o;
    }

    json collect(const CLI::App* app) const {
        json j = json::object();
        for (const auto& b : bound_) {
            if (b.app == app && b.opt->count() > 0) j[b.key] = b.value();
        }
        return j;
    }

private:
    struct Bound {
        CLI::Option* opt;
        const CLI::App* app;
        std::string key;
        std::function<json()> value;
    };

    template <class T>
    std::deque<T>& store() {
        if constexpr (std::is_same_v<T, double>) return doubles_;
        if constexpr (std::is_same_v<T, std::string>) return strings_;
        if constexpr (std::is_same_v<T, std::uint64_t>) return u64_;
        if constexpr (std::is_same_v<T, int>) return ints_;
    }

    std::vector<Bound> bound_;
    std::deque<double> doubles_;
    std::deque<std::string> strings_;
    std::deque<std::uint64_t> u64_;
    std::deque<int> ints_;
};

struct Global {
    std::string out;
    std::string csv;
    unsigned threads = 0;
    bool threads_set = false;
};

int exit_for(cle_status s) {
    switch (s) {
        case CLE_OK: return kOk;
        case CLE_ERR_NULL:
        case CLE_ERR_ARGUMENT:
        case CLE_ERR_BUFFER: return kArgument;
        default: return kInternal;
    }
}

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    return v.dump();
}

bool write_csv(const std::string& path, const json& table) {
    std::ofstream f(path);
    if (!f) return false;
    const auto& cols = table.at("columns");
    for (std::size_t i = 0; i < cols.size(); ++i) f << (i ? "," : "") << cols[i].get<std::string>();
    f << "\n";
    for (const auto& row : table.at("rows")) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << csv_cell(row[i]);
        f << "\n";
    }
    return static_cast<bool>(f);
}

bool emit(const Global& g, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
        return true;
    }
    std::ofstream f(g.out);
    if (!f) return false;
    f << text;
    return static_cast<bool>(f);
}

json tolerances_of(const json& checks) {
    json t = json::object();
    for (const auto& c : checks) t[c.value("name", "?")] = c.value("tolerance", 0.0);
    return t;
}

// Runs one named experiment through the C API and returns the exit code.
int run_named(const std::string& command, const std::string& experiment, json params, const Global& g,
              const std::vector<std::string>& argv, bool accepts_threads) {
    if (accepts_threads && g.threads_set) params["threads"] = g.threads;
    const auto t0 = std::chrono::steady_clock::now();
    cle_report* rep = nullptr;
    const cle_status st = cle_experiment_run(experiment.c_str(), params.dump().c_str(), &rep);
    if (st != CLE_OK) {
        std::fprintf(stderr, "%s: %s: %s\n", command.c_str(), cle_status_name(st), cle_last_error());
        return exit_for(st);
    }
    const json body = json::parse(cle_report_json(rep));
    const int passed = cle_report_passed(rep);
    cle_report_destroy(rep);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json report{{"schema_version", kSchemaVersion},
                {"artifact_version", cle_version()},
                {"command", command},
                {"argv", argv},
                {"params", body.at("params")},
                {"seed", body.at("params").value("seed", json(nullptr))},
                {"partition", body.at("partition")},
                {"results", body.at("results")},
                {"checks", body.at("checks")},
                {"tolerances", tolerances_of(body.at("checks"))},
                {"passed", body.at("passed")},
                {"warnings", body.at("warnings")},
                {"wall_clock_seconds", wall}};
    if (body.contains("table")) {
        const json& table = body.at("table");
        if (!g.csv.empty()) {
            if (!write_csv(g.csv, table)) {
                std::fprintf(stderr, "%s: cannot write %s\n", command.c_str(), g.csv.c_str());
                return kArgument;
            }
            report["csv"] = {{"path", g.csv}, {"columns", table.at("columns")}, {"rows", table.at("rows").size()}};
        }
        if (table.at("rows").size() <= kInlineRows) {
            report["table"] = table;
        } else {
            report["table_omitted_rows"] = table.at("rows").size();
        }
    }
    if (!emit(g, report)) {
        std::fprintf(stderr, "%s: cannot write %s\n", command.c_str(), g.out.c_str());
        return kArgument;
    }
    return passed == 0 ? kGate : kOk;
}

int run_suite(bool quick, std::uint64_t seed, const Global& g, const std::vector<std::string>& argv) {
    const auto t0 = std::chrono::steady_clock::now();
    json criteria = json::array();
    json checks = json::array();
    json table{{"columns", {"criterion", "check", "status", "value", "reference", "error", "tolerance", "provenance"}},
               {"rows", json::array()}};
    bool all = true;
    for (int id = 1; id <= 10; ++id) {
        cle_report* rep = nullptr;
        const cle_status st = cle_acceptance_run(id, quick ? 1 : 0, seed, g.threads, &rep);
        if (st != CLE_OK) {
            std::fprintf(stderr, "suite: criterion %d: %s: %s\n", id, cle_status_name(st), cle_last_error());
            return exit_for(st) == kArgument ? kArgument : kInternal;
        }
        const json body = json::parse(cle_report_json(rep));
        cle_report_destroy(rep);
        const json& r = body.at("results");
        all = all && r.value("passed", false);
        criteria.push_back(r);
        std::fprintf(stderr, "criterion %2d  %s  %s (%.1f s)\n", id, r.value("passed", false) ? "PASS" : "FAIL",
                     r.value("title", "").c_str(), r.value("seconds", 0.0));
        for (json c : r.at("checks")) {
            table["rows"].push_back({id, c["name"], c["status"], c["value"], c["reference"], c["error"],
                                     c["tolerance"], c["provenance"]});
            c["criterion"] = id;
            checks.push_back(c);
        }
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json report{{"schema_version", kSchemaVersion},
                {"artifact_version", cle_version()},
                {"command", "suite"},
                {"argv", argv},
                {"params", {{"mode", quick ? "quick" : "full"}, {"seed", seed}, {"threads", g.threads}}},
                {"seed", seed},
                {"partition", {{"threads", g.threads}, {"streams", "stream_seed(seed, {criterion, ...})"}}},
                {"results", criteria},
                {"checks", checks},
                {"passed", all},
                {"warnings", json::array()},
                {"wall_clock_seconds", wall},
                {"table", table}};
    if (!g.csv.empty() && !write_csv(g.csv, table)) {
        std::fprintf(stderr, "suite: cannot write %s\n", g.csv.c_str());
        return kArgument;
    }
    if (!emit(g, report)) return kArgument;
    return all ? kOk : kGate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CLE exact formulas, exponents, cascade and Loewner experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--out", g.out, "write the JSON report here instead of stdout");
    app.add_option("--csv", g.csv, "write the result table as CSV");
    CLI::Option* threads = app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
    Binder b;

    CLI::App* prob = app.add_subcommand("prob", "touching probability");
    b.add<double>(prob, "--kappa", "kappa", "kappa in (4,8)");

    CLI::App* exact = app.add_subcommand("exact", "closed-form moment E[CR^{-lambda}; law]");
    b.add<double>(exact, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(exact, "--lambda", "lambda", "moment order");
    b.add<std::string>(exact, "--law", "law", "ssw, touch, nontouch or wtd");

    CLI::App* root = app.add_subcommand("root", "nested-path (np) or nested-loop (nl) exponent");
    b.add<std::string>(root, "kind", "kind", "np or nl")->required()->check(CLI::IsMember({"np", "nl"}));
    b.add<double>(root, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(root, "--a", "a", "weight a > 0");

    CLI::App* density = app.add_subcommand("density", "residue-series density table");
    b.add<double>(density, "--kappa", "kappa", "kappa in (4,8)");
    b.add<std::string>(density, "--law", "law", "ssw, touch, nontouch or wtd");
    b.add<int>(density, "--terms", "terms", "number of poles");
    b.add<double>(density, "--s-max", "s_max", "right end of the table");
    b.add<int>(density, "--points", "points", "table rows");

    CLI::App* cascade = app.add_subcommand("cascade", "nested-circuit cascade functional and exponent fit");
    b.add<double>(cascade, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(cascade, "--a", "a", "weight a > 0");
    b.add<double>(cascade, "--eps-max", "eps_max", "largest epsilon");
    b.add<int>(cascade, "--eps-decades", "eps_decades", "decades below eps-max");
    b.add<int>(cascade, "--points-per-decade", "points_per_decade", "grid density");
    b.add<std::uint64_t>(cascade, "--samples", "samples", "MC samples per epsilon");
    b.add<std::uint64_t>(cascade, "--seed", "seed", "master seed");
    b.add<std::string>(cascade, "--method", "method", "mc or conv")->check(CLI::IsMember({"mc", "conv"}));
    b.add<double>(cascade, "--c0", "c0", "proxy constant");
    b.add<double>(cascade, "--grid-step", "h", "renewal grid step");
    b.add<std::string>(cascade, "--functional", "functional", "np (nested paths) or nl (nested loops)")
        ->check(CLI::IsMember({"np", "nl"}));

    CLI::App* verify = app.add_subcommand("verify", "lemma and identity checks");
    verify->require_subcommand(1);
    CLI::App* levy = verify->add_subcommand("levy", "stable positive-part moment");
    b.add<double>(levy, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(levy, "--p", "p", "p in (-1,0]");
    b.add<double>(levy, "--l1", "l1", "first level");
    b.add<double>(levy, "--l2", "l2", "second level");
    b.add<std::uint64_t>(levy, "--n", "n", "sample pairs");
    b.add<std::uint64_t>(levy, "--seed", "seed", "master seed");
    CLI::App* fslen = verify->add_subcommand("fslen", "forested-length power law");
    b.add<double>(fslen, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(fslen, "--q", "q", "q < 2");
    b.add<double>(fslen, "--len-a", "len_a", "window start");
    b.add<double>(fslen, "--len-b", "len_b", "window end");
    b.add<int>(fslen, "--bins", "bins", "log bins");
    b.add<std::uint64_t>(fslen, "--n", "n", "samples");
    b.add<std::uint64_t>(fslen, "--seed", "seed", "master seed");
    CLI::App* int1 = verify->add_subcommand("integral1", "first integral identity");
    b.add<double>(int1, "--a", "a", "a in (-1,0)");
    b.add<double>(int1, "--b", "b", "b in (-1,0)");
    CLI::App* int2 = verify->add_subcommand("integral2", "contour integral identity");
    b.add<double>(int2, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(int2, "--p", "p", "p in (gamma^2/4 - 1, 0)");
    CLI::App* ratio = verify->add_subcommand("ratio-algebra", "three-arc ratio algebra");
    b.add<double>(ratio, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(ratio, "--alpha", "alpha", "alpha in (Q, 4/gamma)");
    CLI::App* identities = verify->add_subcommand("identities", "closed-form identity battery");

    CLI::App* loewner = app.add_subcommand("loewner", "radial Loewner flow and driving SDE");
    loewner->require_subcommand(1);
    CLI::App* drift = loewner->add_subcommand("drift-check", "angular drift identities");
    b.add<double>(drift, "--kappa", "kappa", "kappa in (4,8)");
    b.add<int>(drift, "--states", "states", "random states");
    b.add<std::uint64_t>(drift, "--seed", "seed", "master seed");
    CLI::App* flow = loewner->add_subcommand("flow-check", "Loewner flow along a sampled driving path");
    b.add<double>(flow, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(flow, "--psi0", "psi0", "initial angular gap");
    b.add<double>(flow, "--t-end", "t_end", "flow time");
    b.add<double>(flow, "--dt", "dt", "driving grid step");
    b.add<double>(flow, "--substep-factor", "substep_factor", "RK4 substep factor");
    b.add<std::uint64_t>(flow, "--seed", "seed", "master seed");
    CLI::App* passage = loewner->add_subcommand("passage", "first passage of the angular gap");
    b.add<double>(passage, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(passage, "--psi0", "psi0", "initial angular gap");
    b.add<std::uint64_t>(passage, "--n", "n", "paths");
    b.add<double>(passage, "--dt", "dt", "base step");
    b.add<double>(passage, "--delta-abs", "delta_abs", "absorption distance");
    b.add<double>(passage, "--t-max", "t_max", "censoring time");
    b.add<double>(passage, "--boundary-scale", "boundary_scale", "step refinement scale");
    b.add<std::uint64_t>(passage, "--seed", "seed", "master seed");
    CLI::App* weak = loewner->add_subcommand("weak-order", "weak-order refinement study of passage times");
    b.add<double>(weak, "--kappa", "kappa", "kappa in (4,8)");
    b.add<double>(weak, "--psi0", "psi0", "initial angular gap");
    b.add<double>(weak, "--dt0", "dt0", "coarsest step");
    b.add<int>(weak, "--levels", "levels", "refinement levels");
    b.add<std::uint64_t>(weak, "--n", "n", "paths");
    b.add<std::uint64_t>(weak, "--seed", "seed", "master seed");

    CLI::App* suite = app.add_subcommand("suite", "all ten acceptance criteria");
    bool quick = false;
    bool full = false;
    std::uint64_t suite_seed = 1;
    auto* q_opt = suite->add_flag("--quick", quick, "reduced sample sizes");
    suite->add_flag("--full", full, "full sample sizes (default)")->excludes(q_opt);
    suite->add_option("--seed", suite_seed, "master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kArgument;
    }
    g.threads_set = threads->count() > 0;
    const std::vector<std::string> args(argv, argv + argc);

    if (prob->parsed()) return run_named("prob", "prob", b.collect(prob), g, args, false);
    if (exact->parsed()) return run_named("exact", "exact", b.collect(exact), g, args, false);
    if (root->parsed()) return run_named("root", "root", b.collect(root), g, args, false);
    if (density->parsed()) return run_named("density", "density", b.collect(density), g, args, false);
    if (cascade->parsed()) return run_named("cascade", "cascade", b.collect(cascade), g, args, true);
    const std::pair<CLI::App*, bool> verifiers[] = {{levy, true},  {fslen, true},  {int1, false},
                                                    {int2, false}, {ratio, false}, {identities, false}};
    for (const auto& [sub, thr] : verifiers) {
        if (sub->parsed()) {
            return run_named("verify " + sub->get_name(), "verify." + sub->get_name(), b.collect(sub), g, args, thr);
        }
    }
    const std::pair<CLI::App*, bool> loewners[] = {{drift, false}, {flow, false}, {passage, true}, {weak, true}};
    for (const auto& [sub, thr] : loewners) {
        if (sub->parsed()) {
            return run_named("loewner " + sub->get_name(), "loewner." + sub->get_name(), b.collect(sub), g, args,
                             thr);
        }
    }
    if (suite->parsed()) return run_suite(quick, suite_seed, g, args);
    return kArgument;
}
