#pragma once

#include <string>
#include <vector>

namespace idregret::suite {

/// One acceptance criterion: pass/fail, the headline measurement, and a
/// human-readable detail string. Wall time is reported separately so result
/// payloads stay bit-deterministic.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double wall_seconds = 0.0;
};

/// Runs acceptance criteria 1..9 in order. Criterion 10 (wall clock and
/// run-to-run determinism of this very suite) is evaluated by the caller
/// around two invocations of run_all.
std::vector<CriterionResult> run_all();
CriterionResult run_criterion(int id);

/// Deterministic CSV payload (no timings): id,name,passed,detail.
std::string to_csv(const std::vector<CriterionResult>& results);

}  // namespace idregret::suite
