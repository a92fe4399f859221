// Cross-module invariant suite behind the `verify` command.
#pragma once

#include <string>
#include <vector>

namespace ngforge {

enum class VerifyLevel { Fast, Full };

/// Fault injections for testing that the suite actually catches convention
/// mutations; None in normal operation.
enum class VerifyMutation { None, BsSignFlip };

struct CheckResult {
    std::string name;
    bool pass;
    double worst;      // worst observed deviation (check-specific metric)
    double tolerance;  // threshold the deviation is held against
    std::string note;
};

std::vector<CheckResult> run_verification(VerifyLevel level,
                                          VerifyMutation mutation = VerifyMutation::None);

} // namespace ngforge
