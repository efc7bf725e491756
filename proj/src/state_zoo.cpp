#include "nlew/state_zoo.hpp"

#include <cmath>
#include <sstream>

#include "nlew/rng.hpp"
#include "nlew/tensor_algebra.hpp"

namespace nlew {

DensityMatrix::DensityMatrix(DimPair dims, Matrix m) : dims_(dims), m_(std::move(m)) {
    require(dims.d1 >= 2 && dims.d2 >= 2, "DensityMatrix: dimensions must be >= 2");
    if (m_.rows() != m_.cols() || m_.rows() != dims.total())
        throw std::invalid_argument("DensityMatrix: matrix side must equal d1*d2");
    if (!is_hermitian(m_, kHermitianTol))
        throw std::runtime_error("DensityMatrix: matrix is not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > kHermitianTol ||
        std::abs(m_.trace().imag()) > kHermitianTol)
        throw std::runtime_error("DensityMatrix: trace is not 1");
    if (hermitian_spectrum(m_).min() < -kPsdTol)
        throw std::runtime_error("DensityMatrix: matrix is not positive semidefinite");
}

namespace {

Matrix pure(const Vector& psi) { return psi * psi.adjoint(); }

Vector basis_vec(int dim, int idx) {
    Vector v = Vector::Zero(dim);
    v(idx) = 1.0;
    return v;
}

Matrix isotropic2_matrix(double alpha) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = (1 + alpha) / 4;
    m(1, 1) = m(2, 2) = (1 - alpha) / 4;
    m(0, 3) = m(3, 0) = alpha / 2;
    return m;
}

Matrix bellmix_matrix() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 13.0 / 30;
    m(1, 1) = m(2, 2) = 1.0 / 15;
    m(0, 3) = m(3, 0) = 11.0 / 30;
    return m;
}

Matrix rudolph_matrix(double s, double t) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 5.0 / 8;
    m(2, 2) = 0.5 * (s - 0.25);
    m(3, 3) = 0.5 * (1 - s);
    m(0, 3) = m(3, 0) = 0.5 * t;
    return m;
}

Matrix mems_matrix(double q) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.01 + q / 2;
    m(1, 1) = 0.00003;
    m(2, 2) = 0.97997 - q;
    m(0, 3) = m(3, 0) = 0.01 - q / 2;
    return m;
}

Matrix phiminus_mix_matrix(double a) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = a / 2;
    m(1, 1) = 1 - a;
    m(0, 3) = m(3, 0) = -a / 2;
    return m;
}

Matrix singlet23_matrix() {
    Matrix m = Matrix::Zero(6, 6);
    m(1, 1) = m(3, 3) = 0.5;
    m(1, 3) = m(3, 1) = -0.5;
    return m;
}

Vector ghz3() {
    Vector v = Vector::Zero(9);
    v(0) = v(4) = v(8) = 1.0 / std::sqrt(3.0);
    return v;
}

Matrix isotropic3_matrix(double gamma) {
    return (1 - gamma) / 8 * Matrix::Identity(9, 9) + (9 * gamma - 1) / 8 * pure(ghz3());
}

Matrix npt2x4_matrix(double b) {
    const double n = 6 * b + 1;
    Matrix m = Matrix::Zero(8, 8);
    for (int i : {0, 1, 2, 5, 6}) m(i, i) = b / n;
    m(7, 7) = (b + 1) / n;
    for (auto [i, j] : {std::pair{0, 7}, {1, 6}, {2, 5}}) m(i, j) = m(j, i) = b / n;
    return m;
}

Matrix singlet_mix_matrix(bool exact) {
    const double a = exact ? 21.0 / 79 : 0.265822;
    const double s = exact ? 29.0 / 79 : 0.367089;
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = a;
    m(1, 1) = m(2, 2) = s;
    m(1, 2) = m(2, 1) = -s;
    return m;
}

Matrix rho_beta_matrix(double beta) {
    Vector e1 = basis_vec(9, 1) - beta * basis_vec(9, 3);
    Vector e2 = basis_vec(9, 2) - beta * basis_vec(9, 6);
    Vector e3 = basis_vec(9, 0) + basis_vec(9, 4) + basis_vec(9, 8);
    return (pure(e1) + pure(e2) + pure(e3)) / (5 + 2 * beta * beta);
}

Matrix ppt_x_matrix(double x) {
    const double n = 3 * (1 + x + 1 / x);
    Matrix m = Matrix::Zero(9, 9);
    const double diag[9] = {1, x, 1 / x, 1 / x, 1, x, x, 1 / x, 1};
    for (int i = 0; i < 9; ++i) m(i, i) = diag[i] / n;
    for (auto [i, j] : {std::pair{0, 4}, {0, 8}, {4, 8}}) m(i, j) = m(j, i) = 1 / n;
    return m;
}

Matrix horodecki_matrix(double gamma) {
    Matrix m = 2.0 / 7 * pure(ghz3());
    for (int i : {1, 5, 6}) m(i, i) += gamma / 21;
    for (int i : {3, 7, 2}) m(i, i) += (5 - gamma) / 21;
    return m;
}

constexpr double kRangeSlack = 1e-12;

}  // namespace

const std::vector<StateFamilyInfo>& family_registry() {
    static const std::vector<StateFamilyInfo> registry = {
        {"isotropic2", {2, 2}, {{"alpha", -1.0 / 3, 1.0}},
         "two-qubit isotropic family; separable for alpha <= 1/3, NPT above"},
        {"bellmix", {2, 2}, {},
         "fixed Bell-diagonal mixture detected by the singlet projector witness"},
        {"rudolph", {2, 2}, {{"s", 0.2926, 0.3}, {"t", 0.02, 0.0213}},
         "two-parameter NPT family missed by the singlet witness and its square"},
        {"mems", {2, 2}, {{"q", 0.0, 0.97997}},
         "maximally entangled mixed state mixture with fixed minor weights"},
        {"phiminus_mix", {2, 2}, {{"a", 0.0, 1.0}},
         "mixture of the phi-minus Bell projector with |01><01|"},
        {"singlet23", {2, 3}, {},
         "singlet projector embedded in a 2x3 space"},
        {"isotropic3", {3, 3}, {{"gamma", 0.0, 1.0}},
         "two-qutrit isotropic family; separable for gamma <= 1/3, NPT above"},
        {"npt2x4", {2, 4}, {{"b", 0.0, 1.0}},
         "one-parameter 2x4 NPT family, NPT for b > 0"},
        {"singlet_mix", {2, 2}, {},
         "mixture of |00><00| with the singlet projector (six-digit entries)"},
        {"singlet_mix_exact", {2, 2}, {},
         "mixture of |00><00| with the singlet projector (exact 21/79, 29/79)"},
        {"rho_beta", {3, 3}, {{"beta", 1.0 / std::sqrt(2.0), 1.0}},
         "two-qutrit NPT family built from skewed |0i>-beta|i0> vectors"},
        {"ppt_x", {3, 3}, {{"x", 0.0, 100.0, true}},
         "two-qutrit PPT-entangled family, positive parameter x"},
        {"horodecki", {3, 3}, {{"gamma", 2.0, 5.0}},
         "3x3 family: separable on [2,3], PPT-entangled on (3,4], NPT on (4,5]"},
    };
    return registry;
}

const StateFamilyInfo& family_info(const std::string& id) {
    for (const auto& f : family_registry())
        if (f.id == id) return f;
    throw std::invalid_argument("unknown state family: " + id);
}

DensityMatrix make_family_state(const std::string& id,
                                const std::vector<double>& params) {
    const StateFamilyInfo& info = family_info(id);
    if (params.size() != info.params.size()) {
        std::ostringstream msg;
        msg << "family " << id << " takes " << info.params.size()
            << " parameter(s), got " << params.size();
        throw std::invalid_argument(msg.str());
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        const ParamRange& r = info.params[i];
        const bool below = r.lo_exclusive ? params[i] <= r.lo
                                          : params[i] < r.lo - kRangeSlack;
        if (below || params[i] > r.hi + kRangeSlack || !std::isfinite(params[i])) {
            std::ostringstream msg;
            msg << "parameter " << r.name << "=" << params[i] << " outside "
                << (r.lo_exclusive ? "(" : "[") << r.lo << ", " << r.hi << "]";
            throw std::invalid_argument(msg.str());
        }
    }

    Matrix m;
    if (id == "isotropic2") m = isotropic2_matrix(params[0]);
    else if (id == "bellmix") m = bellmix_matrix();
    else if (id == "rudolph") m = rudolph_matrix(params[0], params[1]);
    else if (id == "mems") m = mems_matrix(params[0]);
    else if (id == "phiminus_mix") m = phiminus_mix_matrix(params[0]);
    else if (id == "singlet23") m = singlet23_matrix();
    else if (id == "isotropic3") m = isotropic3_matrix(params[0]);
    else if (id == "npt2x4") m = npt2x4_matrix(params[0]);
    else if (id == "singlet_mix") m = singlet_mix_matrix(false);
    else if (id == "singlet_mix_exact") m = singlet_mix_matrix(true);
    else if (id == "rho_beta") m = rho_beta_matrix(params[0]);
    else if (id == "ppt_x") m = ppt_x_matrix(params[0]);
    else if (id == "horodecki") m = horodecki_matrix(params[0]);
    else throw std::invalid_argument("unknown state family: " + id);

    return DensityMatrix(info.dims, std::move(m));
}

PptResult ppt_classify(const DensityMatrix& rho) {
    Matrix pt = partial_transpose(rho.matrix(), rho.dims(), Subsystem::B);
    const double lmin = hermitian_spectrum(pt).min();
    return {lmin < -1e-10, lmin};
}

namespace {

// Unnormalized local operator basis used for Bloch coefficients: Pauli for
// d=2, Gell-Mann for d=3, in sym/antisym/diagonal order.
std::vector<Matrix> bloch_ops(int d) {
    std::vector<Matrix> ops;
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(j, k) = m(k, j) = 1.0;
            ops.push_back(m);
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            m(j, k) = Complex(0, -1);
            m(k, j) = Complex(0, 1);
            ops.push_back(m);
        }
    for (int l = 1; l < d; ++l) {
        Matrix m = Matrix::Zero(d, d);
        const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) m(j, j) = scale;
        m(l, l) = -l * scale;
        ops.push_back(m);
    }
    return ops;
}

}  // namespace

Matrix bloch_state(const BlochVector& b) {
    require(b.d == 2 || b.d == 3, "bloch_state: only qubit and qutrit supported");
    const std::size_t want = b.d == 2 ? 3 : 8;
    require(b.coeffs.size() == want, "bloch_state: wrong coefficient count");
    double norm2 = 0;
    for (double c : b.coeffs) norm2 += c * c;
    if (norm2 > 1.0 + 1e-12)
        throw std::invalid_argument("bloch_state: coefficient norm exceeds 1");

    const auto ops = bloch_ops(b.d);
    Matrix m = Matrix::Identity(b.d, b.d);
    for (std::size_t i = 0; i < ops.size(); ++i) m += b.coeffs[i] * ops[i];
    m /= double(b.d);

    const double lmin = hermitian_spectrum(m).min();
    if (lmin < -kPsdTol) {
        std::ostringstream msg;
        msg << "bloch_state: reconstructed matrix is not PSD (lambda_min = "
            << lmin << ")";
        throw std::invalid_argument(msg.str());
    }
    return m;
}

DensityMatrix product_state_from_bloch(const BlochVector& a, const BlochVector& b) {
    Matrix ma = bloch_state(a);
    Matrix mb = bloch_state(b);
    return DensityMatrix({a.d, b.d}, kron(ma, mb));
}

DensityMatrix SeparableMixture::assemble() const {
    Matrix m = Matrix::Zero(dims.total(), dims.total());
    for (std::size_t j = 0; j < weights.size(); ++j)
        m += weights[j] * kron(factors[j].first, factors[j].second);
    return DensityMatrix(dims, std::move(m));
}

SeparableMixture sample_separable(DimPair dims, int k, std::mt19937_64& rng) {
    require(k >= 1, "sample_separable: need at least one component");
    SeparableMixture mix;
    mix.dims = dims;
    mix.weights = dirichlet_weights(k, rng);
    mix.factors.reserve(k);
    for (int j = 0; j < k; ++j) {
        Vector a = haar_random_state(dims.d1, rng);
        Vector b = haar_random_state(dims.d2, rng);
        mix.factors.emplace_back(a * a.adjoint(), b * b.adjoint());
    }
    return mix;
}

SeparableMixture sample_separable(DimPair dims, int k, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_separable(dims, k, rng);
}

DensityMatrix random_separable_state(DimPair dims, std::mt19937_64& rng) {
    const int k = 1 + static_cast<int>(rng() % 10);
    return sample_separable(dims, k, rng).assemble();
}

}  // namespace nlew
