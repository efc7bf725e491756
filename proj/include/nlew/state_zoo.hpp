#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nlew/types.hpp"

namespace nlew {

// Unit-trace positive-semidefinite Hermitian matrix on a d1*d2 space.
// The constructor validates all three invariants.
class DensityMatrix {
  public:
    DensityMatrix(DimPair dims, Matrix m);

    const Matrix& matrix() const { return m_; }
    DimPair dims() const { return dims_; }

  private:
    DimPair dims_;
    Matrix m_;
};

struct ParamRange {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    bool lo_exclusive = false;
};

struct StateFamilyInfo {
    std::string id;
    DimPair dims;
    std::vector<ParamRange> params;
    std::string description;
};

const std::vector<StateFamilyInfo>& family_registry();
const StateFamilyInfo& family_info(const std::string& id);

DensityMatrix make_family_state(const std::string& id,
                                const std::vector<double>& params);

struct PptResult {
    bool npt = false;
    double min_pt_eigenvalue = 0.0;  // raw value for boundary reporting
};

// Peres-Horodecki test: NPT iff the partial transpose has an eigenvalue
// below -1e-10.
PptResult ppt_classify(const DensityMatrix& rho);

// Coefficient vector over the unnormalized local operator basis:
// length 3 (qubit, r with |r| <= 1) or 8 (qutrit, b with |b| <= 1 and a
// reconstruction PSD check; the qutrit unit ball is not contained in state
// space, so the PSD check can reject unit vectors).
struct BlochVector {
    int d = 2;
    std::vector<double> coeffs;
};

// Single-party reconstruction (I + sum_i c_i O_i)/d, validated.
Matrix bloch_state(const BlochVector& b);

DensityMatrix product_state_from_bloch(const BlochVector& a, const BlochVector& b);

// Convex mixture of product states; factors are local density matrices.
struct SeparableMixture {
    DimPair dims;
    std::vector<double> weights;
    std::vector<std::pair<Matrix, Matrix>> factors;

    DensityMatrix assemble() const;
};

// k Haar-random pure product components with flat-Dirichlet weights.
SeparableMixture sample_separable(DimPair dims, int k, uint64_t seed);
SeparableMixture sample_separable(DimPair dims, int k, std::mt19937_64& rng);

// Battery helper: component count drawn uniformly from 1..10.
DensityMatrix random_separable_state(DimPair dims, std::mt19937_64& rng);

}  // namespace nlew
