#include "nlew/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nlew {

double Spectrum::trace_norm() const {
    return std::accumulate(singular_values.begin(), singular_values.end(), 0.0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

static void check_square(const Matrix& m, DimPair dims) {
    require(dims.d1 >= 2 && dims.d2 >= 2, "subsystem dimensions must be >= 2");
    require(m.rows() == m.cols() && m.rows() == dims.total(),
            "matrix side must equal d1*d2");
}

Matrix partial_trace(const Matrix& m, DimPair dims, Subsystem which) {
    check_square(m, dims);
    const int d1 = dims.d1, d2 = dims.d2;
    if (which == Subsystem::A) {
        Matrix out = Matrix::Zero(d2, d2);
        for (int j = 0; j < d2; ++j)
            for (int l = 0; l < d2; ++l)
                for (int i = 0; i < d1; ++i) out(j, l) += m(i * d2 + j, i * d2 + l);
        return out;
    }
    Matrix out = Matrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
        for (int k = 0; k < d1; ++k)
            for (int j = 0; j < d2; ++j) out(i, k) += m(i * d2 + j, k * d2 + j);
    return out;
}

Matrix partial_transpose(const Matrix& m, DimPair dims, Subsystem which) {
    check_square(m, dims);
    const int d1 = dims.d1, d2 = dims.d2;
    Matrix out(m.rows(), m.cols());
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j)
            for (int k = 0; k < d1; ++k)
                for (int l = 0; l < d2; ++l) {
                    if (which == Subsystem::B)
                        out(i * d2 + l, k * d2 + j) = m(i * d2 + j, k * d2 + l);
                    else
                        out(k * d2 + j, i * d2 + l) = m(i * d2 + j, k * d2 + l);
                }
    return out;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Spectrum hermitian_spectrum(const Matrix& h) {
    require(h.rows() == h.cols(), "hermitian_spectrum: matrix must be square");
    require(is_hermitian(h), "hermitian_spectrum: matrix is not Hermitian");
    Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    require(solver.info() == Eigen::Success, "eigendecomposition failed");
    Spectrum s;
    s.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + h.rows());
    s.singular_values = s.eigenvalues;
    for (double& v : s.singular_values) v = std::abs(v);
    std::sort(s.singular_values.rbegin(), s.singular_values.rend());
    return s;
}

Spectrum singular_values(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    Spectrum s;
    s.singular_values.assign(svd.singularValues().data(),
                             svd.singularValues().data() + svd.singularValues().size());
    return s;
}

Complex determinant(const Matrix& m) {
    require(m.rows() == m.cols(), "determinant: matrix must be square");
    return Eigen::PartialPivLU<Matrix>(m).determinant();
}

bool is_positive_semidefinite(const Matrix& h, double tol) {
    return hermitian_spectrum(h).min() >= -tol;
}

HermitianBasis canonical_basis(int d) {
    require(d >= 2, "canonical_basis: dimension must be >= 2");
    HermitianBasis basis;
    basis.dimension = d;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    basis.ops.push_back(Matrix::Identity(d, d) / std::sqrt(double(d)));
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(j, k) = m(k, j) = inv_sqrt2;
            basis.ops.push_back(m);
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(j, k) = Complex(0, -inv_sqrt2);
            m(k, j) = Complex(0, inv_sqrt2);
            basis.ops.push_back(m);
        }
    for (int l = 1; l < d; ++l) {
        Matrix m = Matrix::Zero(d, d);
        const double scale = std::sqrt(1.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) m(j, j) = scale;
        m(l, l) = -l * scale;
        basis.ops.push_back(m);
    }
    return basis;
}

CorrelationMatrix correlation_matrix_canonical(const Matrix& rho, DimPair dims) {
    check_square(rho, dims);
    const HermitianBasis ga = canonical_basis(dims.d1);
    const HermitianBasis gb = canonical_basis(dims.d2);
    CorrelationMatrix c;
    c.dims = dims;
    c.basis_convention = "gellmann-canonical";
    c.entries.resize(dims.d1 * dims.d1, dims.d2 * dims.d2);
    for (std::size_t a = 0; a < ga.ops.size(); ++a)
        for (std::size_t b = 0; b < gb.ops.size(); ++b) {
            Complex v = (rho * kron(ga.ops[a], gb.ops[b])).trace();
            require(std::abs(v.imag()) < 1e-9,
                    "correlation entry has a non-negligible imaginary part");
            c.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                v.real();
        }
    return c;
}

Matrix realignment(const Matrix& rho, DimPair dims) {
    check_square(rho, dims);
    const int d1 = dims.d1, d2 = dims.d2;
    Matrix r(d1 * d1, d2 * d2);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
            for (int k = 0; k < d2; ++k)
                for (int l = 0; l < d2; ++l)
                    r(i * d1 + j, k * d2 + l) = rho(i * d2 + k, j * d2 + l);
    return r;
}

}  // namespace nlew
