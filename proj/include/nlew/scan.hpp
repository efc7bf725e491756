#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlew/json_io.hpp"
#include "nlew/nlew_builders.hpp"
#include "nlew/separable_max.hpp"

namespace nlew {

// One sweep parameter: a fixed value or an inclusive start/stop grid.
struct GridAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    bool fixed = false;

    int points() const;
    double at(int i) const;
};

struct SweepConfig {
    std::string state_family;
    std::vector<GridAxis> state_axes;
    std::string witness_family;  // empty when only state-built kinds are swept
    std::vector<GridAxis> witness_axes;
    std::vector<NlewKind> kinds;
    uint64_t seed = 42;
    double bisect_tol = 1e-4;
    int sepmax_restarts = 64;
    std::string sepmax_cache;  // optional sidecar path
    // Fixed sep_max for WNL4 sweeps instead of solving for it; lets a sweep
    // reproduce published thresholds that were computed with a stated constant.
    std::optional<double> sepmax_override;
};

// Throws std::invalid_argument naming the offending field.
SweepConfig parse_sweep_config(const Json& j);

struct DetectionRow {
    std::vector<double> params;  // state axes then witness axes
    std::string ppt_class;
    double min_pt_eigenvalue = 0.0;
    double tr_wl = 0.0;  // NaN when no witness is configured
    std::vector<NlewEvaluation> evals;
    std::vector<bool> eval_ok;
    std::vector<std::string> eval_error;
};

struct DetectionInterval {
    NlewKind kind = NlewKind::FBasic;
    std::string axis;
    double lo = 0.0, hi = 0.0;
    bool lo_at_domain_edge = false, hi_at_domain_edge = false;
    bool verified = false;  // re-evaluated: negative inside, positive outside
    std::vector<double> anchor;  // remaining parameters during refinement
};

struct DetectionReport {
    std::vector<std::string> axis_names;
    std::vector<DetectionRow> rows;
    std::vector<DetectionInterval> intervals;
    std::string state_family;
    std::string witness_family;
    std::vector<NlewKind> kinds;
};

DetectionReport run_detect(const SweepConfig& config);

std::string detection_csv(const DetectionReport& report);
Json detection_json(const DetectionReport& report);

// Detection predicate used for sweeps and interval refinement: negative iff
// the evaluation is negative and, for the state-built chains, the constructed
// linear operator is a valid witness candidate (lmax > 0).
double detection_function(NlewKind kind, const WitnessOperator* w,
                          const DensityMatrix& rho,
                          std::optional<double> sep_max);

// sep_max with a JSON sidecar cache keyed by witness family and parameters.
double cached_sep_max(const WitnessOperator& w, int restarts, uint64_t seed,
                      const std::string& cache_path);

}  // namespace nlew
