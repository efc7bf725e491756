#pragma once

#include <json.hpp>

#include "nlew/local_decomposition.hpp"
#include "nlew/nlew_builders.hpp"
#include "nlew/separable_max.hpp"
#include "nlew/state_zoo.hpp"
#include "nlew/witness_core.hpp"

namespace nlew {

using Json = nlohmann::json;

// Matrix schema: {"rows": n, "cols": m, "re": [...], "im": [...]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json state_registry_json();
Json witness_registry_json();

Json evaluation_to_json(const NlewEvaluation& e);
Json certification_to_json(const CertificationReport& r);
Json sepmax_to_json(const SepMaxResult& r);
Json decomposition_to_json(const DecompositionResult& d);
std::string decomposition_to_csv(const DecompositionResult& d);

// Shortest decimal string that parses back to the same double ("nan" for NaN).
std::string format_double(double v);

}  // namespace nlew
