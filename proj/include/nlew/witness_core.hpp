#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlew/state_zoo.hpp"
#include "nlew/types.hpp"

namespace nlew {

// Hermitian operator with at least one negative eigenvalue, nonnegative in
// expectation on every separable state.
struct WitnessOperator {
    std::string family;
    std::vector<double> params;
    DimPair dims;
    Matrix matrix;
};

// Parameterized 4x4 witness, valid for 0 < p <= 1.
WitnessOperator wl_p(double p);

// Partial transpose of a projector onto a normalized state vector.
WitnessOperator wl_projector(const Vector& psi, DimPair dims);

// Fixed nondecomposable 9x9 witness (entries in units of 1/33).
WitnessOperator wl_c();

struct WitnessFamilyInfo {
    std::string id;
    DimPair dims;
    std::vector<ParamRange> params;
    std::string description;
};

const std::vector<WitnessFamilyInfo>& witness_registry();
WitnessOperator make_witness(const std::string& id, const std::vector<double>& params);

// Real expectation Tr(w * rho); throws if the imaginary residue exceeds 1e-10.
double expectation(const Matrix& w, const DensityMatrix& rho);

// k = det(I_d2 + Tr_A(rho)) - det(I_d1d2 + rho); nonpositive on PPT states.
struct KTerm {
    double value = 0.0;
    double det_marginal = 0.0;
    double det_full = 0.0;
};

KTerm k_term(const DensityMatrix& rho);

struct CertifySettings {
    int samples = 10000;
    uint64_t seed = 42;
    bool probe_zoo = true;
};

struct DetectedState {
    std::string family;
    std::vector<double> params;
    double expectation = 0.0;
};

struct CertificationReport {
    std::string family;
    std::vector<double> params;
    int samples = 0;
    uint64_t seed = 0;
    double min_expectation = 0.0;
    double lambda_min = 0.0;
    bool has_negative_eigenvalue = false;
    bool suspect = false;  // some separable sample went below -1e-8
    std::vector<DetectedState> detected;
};

CertificationReport certify_witness(const WitnessOperator& w,
                                    const CertifySettings& settings);

}  // namespace nlew
