#pragma once

#include <string>
#include <vector>

#include "nlew/types.hpp"

namespace nlew {

// Eigenvalues and/or singular values of a matrix. hermitian_spectrum fills
// both lists (singular values are the sorted absolute eigenvalues);
// singular_values fills only the singular list.
struct Spectrum {
    std::vector<double> eigenvalues;      // ascending
    std::vector<double> singular_values;  // descending, all >= 0

    double trace_norm() const;
    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

// Hilbert-Schmidt-orthonormal Hermitian operator basis with ops[0] = I/sqrt(d)
// and the remaining d^2-1 operators traceless. Ordering: identity, symmetric
// off-diagonals (lexicographic), antisymmetric off-diagonals (lexicographic),
// diagonals.
struct HermitianBasis {
    int dimension = 0;
    std::vector<Matrix> ops;
};

// Real d1^2 x d2^2 matrix of canonical-basis correlations
// C_ab = Tr(rho G_a (x) G_b).
struct CorrelationMatrix {
    DimPair dims;
    RealMatrix entries;
    std::string basis_convention;
};

Matrix kron(const Matrix& a, const Matrix& b);

// Traces out the selected subsystem: tracing A leaves a d2 x d2 matrix,
// tracing B a d1 x d1 one.
Matrix partial_trace(const Matrix& m, DimPair dims, Subsystem which);

// Transposes the selected tensor factor; involutive and trace-preserving.
Matrix partial_transpose(const Matrix& m, DimPair dims, Subsystem which);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

// Requires Hermitian input (within kHermitianTol); the matrix is symmetrized
// before decomposition.
Spectrum hermitian_spectrum(const Matrix& h);

Spectrum singular_values(const Matrix& m);

Complex determinant(const Matrix& m);

bool is_positive_semidefinite(const Matrix& h, double tol);

HermitianBasis canonical_basis(int d);

CorrelationMatrix correlation_matrix_canonical(const Matrix& rho, DimPair dims);

// Realigned matrix R with R_(ij),(kl) = rho_(ik),(jl). Its trace norm equals
// the trace norm of correlation_matrix_canonical(rho).
Matrix realignment(const Matrix& rho, DimPair dims);

}  // namespace nlew
