#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cle {

enum class CheckStatus { Pass = 0, Fail = 1, Skipped = 2 };

const char* status_name(CheckStatus s);

/// One numerical gate: |value - reference| (or value alone) against a tolerance.
struct Check {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
    double error = 0.0;
    double tolerance = 0.0;
    std::string measure;     ///< "abs", "rel" or "bound"
    std::string provenance;  ///< closed-form, quadrature, mc, renewal, sde
    CheckStatus status = CheckStatus::Skipped;
};

Check abs_check(std::string name, double value, double reference, double tol, std::string provenance);
Check rel_check(std::string name, double value, double reference, double tol, std::string provenance);
/// Passes when value < tol; value is an error already.
Check bound_check(std::string name, double value, double tol, std::string provenance);

struct CriterionResult {
    int id = 0;
    std::string title;
    std::string tolerance;  ///< pinned tolerance summary
    std::vector<Check> checks;
    std::vector<std::string> notes;
    double seconds = 0.0;
    bool quick = false;
    /// True when no check failed and at least one ran.
    bool passed() const;
};

struct AcceptanceOptions {
    bool quick = false;  ///< reduced sample sizes, same tolerances
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

inline constexpr int kCriteriaCount = 10;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);

}  // namespace cle
