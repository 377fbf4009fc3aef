#pragma once

#include <string>
#include <vector>

namespace epicusp {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the end-to-end acceptance criteria in order. Deterministic: seeded
/// inputs, fixed grids, fixed tolerances.
std::vector<CriterionResult> run_acceptance();

}  // namespace epicusp
