#include "nlew/local_decomposition.hpp"

#include <cmath>

#include "nlew/tensor_algebra.hpp"

namespace nlew {

LocalBasis local_basis(int d) {
    require(d == 2 || d == 3, "local_basis: only d=2 and d=3 supported");
    LocalBasis basis;
    basis.dimension = d;
    basis.ops.push_back(Matrix::Identity(d, d));
    basis.labels.push_back("I");
    int idx = 1;
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(j, k) = m(k, j) = 1.0;
            basis.ops.push_back(m);
            basis.labels.push_back(d == 2 ? "X" : "T" + std::to_string(idx++));
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(j, k) = Complex(0, -1);
            m(k, j) = Complex(0, 1);
            basis.ops.push_back(m);
            basis.labels.push_back(d == 2 ? "Y" : "T" + std::to_string(idx++));
        }
    for (int l = 1; l < d; ++l) {
        Matrix m = Matrix::Zero(d, d);
        const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) m(j, j) = scale;
        m(l, l) = -l * scale;
        basis.ops.push_back(m);
        basis.labels.push_back(d == 2 ? "Z" : "T" + std::to_string(idx++));
    }
    return basis;
}

DecompositionResult decompose(const Matrix& h, DimPair dims) {
    require((dims.d1 == 2 || dims.d1 == 3) && (dims.d2 == 2 || dims.d2 == 3),
            "decompose: subsystem dimensions must be 2 or 3");
    require(h.rows() == dims.total() && h.cols() == dims.total(),
            "decompose: matrix side must equal d1*d2");
    require(is_hermitian(h), "decompose: matrix must be Hermitian");

    const LocalBasis ba = local_basis(dims.d1);
    const LocalBasis bb = local_basis(dims.d2);
    DecompositionResult result;
    result.dims = dims;
    result.labels_a = ba.labels;
    result.labels_b = bb.labels;
    result.coeffs.resize(ba.ops.size(), bb.ops.size());
    for (std::size_t a = 0; a < ba.ops.size(); ++a) {
        const double na = (ba.ops[a] * ba.ops[a]).trace().real();
        for (std::size_t b = 0; b < bb.ops.size(); ++b) {
            const double nb = (bb.ops[b] * bb.ops[b]).trace().real();
            const Complex tr = (h * kron(ba.ops[a], bb.ops[b])).trace();
            require(std::abs(tr.imag()) < 1e-10,
                    "decompose: non-real coefficient for Hermitian input");
            result.coeffs(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                tr.real() / (na * nb);
        }
    }
    result.residual = (h - reconstruct(result)).cwiseAbs().maxCoeff();
    return result;
}

Matrix reconstruct(const DecompositionResult& d) {
    const LocalBasis ba = local_basis(d.dims.d1);
    const LocalBasis bb = local_basis(d.dims.d2);
    Matrix out = Matrix::Zero(d.dims.total(), d.dims.total());
    for (std::size_t a = 0; a < ba.ops.size(); ++a)
        for (std::size_t b = 0; b < bb.ops.size(); ++b)
            out += d.coeffs(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
                   kron(ba.ops[a], bb.ops[b]);
    return out;
}

}  // namespace nlew
