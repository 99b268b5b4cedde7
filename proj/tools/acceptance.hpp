#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hopfcert::acceptance {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool stretch = false;
    bool skipped = false;
    std::uint64_t millis = 0;
    std::uint64_t budget_millis = 0;
    std::vector<Check> checks;

    bool pass() const;
};

struct Options {
    std::uint64_t seed = 0;
    /// Runs the Sz(32) stretch criterion instead of reporting it as skipped.
    bool include_stretch = false;
    std::string cache_dir;
};

inline constexpr int kCriterionCount = 8;

/// Runs one numbered criterion (1..8).
CriterionResult run_criterion(int id, const Options& opts);
std::vector<CriterionResult> run_all(const Options& opts);

/// Seeded property suites: field axioms, Frobenius and theta identities,
/// closure sampling, class-function sampling, the identity criterion for
/// tau u' v tau v' u, and the torus conjugation formula on Klein subgroups.
std::vector<Check> run_property_suites(std::uint64_t seed);

/// "PASS"/"FAIL"/"SKIP" line for a criterion, without timing.
std::string summary_line(const CriterionResult& r);

}  // namespace hopfcert::acceptance
