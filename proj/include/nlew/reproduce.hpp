#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlew/json_io.hpp"

namespace nlew {

struct CheckResult {
    std::string id;
    bool passed = false;
    bool is_note = false;  // informational notes never fail the run
    std::string detail;
};

struct ReproduceOptions {
    int battery_samples = 10000;   // separable samples per evaluator kind
    int property_samples = 1000;   // samples per inequality battery
    int sepmax_restarts = 64;
    uint64_t seed = 42;
};

// Runs every built-in reference checkpoint and returns one result per check.
// Checks whose criterion number is given run only that criterion (0 = all).
std::vector<CheckResult> run_reproduction(const ReproduceOptions& options,
                                          int criterion = 0);

Json reproduction_json(const std::vector<CheckResult>& results);

// True iff some non-note check failed.
bool reproduction_failed(const std::vector<CheckResult>& results);

}  // namespace nlew
