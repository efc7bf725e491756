#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nlew/state_zoo.hpp"
#include "nlew/types.hpp"
#include "nlew/witness_core.hpp"

namespace nlew {

struct SepMaxResult {
    double max_value = 0.0;
    Vector argmax_a, argmax_b;
    int restarts_used = 0;
    bool converged = true;
    std::vector<double> restart_values;
};

// Closed form of max Tr((W_L^p)^2 rho_sep): (2 - 2p + p^2)/4 for p in (0, 1].
double closed_form_wlp(double p);

// Maximizes Tr(w_squared * rho_A (x) rho_B) over pure product states by
// alternating top-eigenvector updates. The objective is linear in rho_sep, so
// the separable maximum is attained at a pure product state; each half-step
// is an exact coordinate maximization, making the iteration monotone.
// Restarts are Haar-random; coarse Bloch grid seeds are always included.
SepMaxResult seesaw_max(const Matrix& w_squared, DimPair dims, int restarts,
                        uint64_t seed);

// Deterministic coarse seed pairs. Qubit sides use a resolution^2 sphere
// grid; qutrit sides use axis-aligned Bloch directions scaled into the state
// body.
std::vector<std::pair<BlochVector, BlochVector>> bloch_grid_seed(DimPair dims,
                                                                 int resolution);

// Dispatch: closed form for the wlp family, see-saw otherwise.
double sep_max_for_witness(const WitnessOperator& w, int restarts = 64,
                           uint64_t seed = 42);

}  // namespace nlew
