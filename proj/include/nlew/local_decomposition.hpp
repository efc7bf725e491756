#pragma once

#include <string>
#include <vector>

#include "nlew/types.hpp"

namespace nlew {

// Unnormalized local observable basis: {I, X, Y, Z} for d=2 and
// {I, T1..T8} for d=3, pairwise HS-orthogonal with Tr(O_a O_b) = c_a delta_ab.
struct LocalBasis {
    int dimension = 0;
    std::vector<Matrix> ops;
    std::vector<std::string> labels;
};

LocalBasis local_basis(int d);

// Real coefficients c_ab with h = sum c_ab O_a (x) O_b.
struct DecompositionResult {
    DimPair dims;
    RealMatrix coeffs;
    std::vector<std::string> labels_a, labels_b;
    double residual = 0.0;  // max-norm of h - reconstruction
};

// c_ab = Tr(h O_a (x) O_b) / (Tr(O_a^2) Tr(O_b^2)); d1, d2 in {2, 3}.
DecompositionResult decompose(const Matrix& h, DimPair dims);

Matrix reconstruct(const DecompositionResult& d);

}  // namespace nlew
