#include "nlew/witness_core.hpp"

#include <cmath>
#include <limits>

#include "nlew/parallel.hpp"
#include "nlew/rng.hpp"
#include "nlew/tensor_algebra.hpp"

namespace nlew {

namespace {

WitnessOperator finish(std::string family, std::vector<double> params, DimPair dims,
                       Matrix m) {
    if (!is_hermitian(m))
        throw std::runtime_error("witness construction produced a non-Hermitian matrix");
    if (hermitian_spectrum(m).min() >= 0)
        throw std::runtime_error("witness has no negative eigenvalue");
    return {std::move(family), std::move(params), dims, std::move(m)};
}

Vector named_vector(const std::string& id) {
    const double s = 1.0 / std::sqrt(2.0);
    if (id == "wpsi_2x2") {
        Vector v = Vector::Zero(4);
        v(1) = s;
        v(2) = -s;
        return v;
    }
    if (id == "wpsi_2x3") {
        Vector v = Vector::Zero(6);
        v(1) = s;
        v(3) = -s;
        return v;
    }
    if (id == "wphi_3x3") {
        Vector v = Vector::Zero(9);
        v(0) = s;
        v(4) = s;
        return v;
    }
    if (id == "wphi_2x4") {
        Vector v = Vector::Zero(8);
        v(0) = s;
        v(5) = s;
        return v;
    }
    throw std::invalid_argument("unknown projector witness: " + id);
}

}  // namespace

WitnessOperator wl_p(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("wl_p: parameter must be in (0, 1]");
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = p / 2;
    m(1, 1) = m(2, 2) = (1 - p) / 2;
    m(1, 2) = m(2, 1) = 0.5;
    return finish("wlp", {p}, {2, 2}, std::move(m));
}

WitnessOperator wl_projector(const Vector& psi, DimPair dims) {
    require(psi.size() == dims.total(), "wl_projector: vector length must be d1*d2");
    if (std::abs(psi.norm() - 1.0) > kHermitianTol)
        throw std::invalid_argument("wl_projector: state vector must be normalized");
    Matrix proj = psi * psi.adjoint();
    return finish("wl_projector", {}, dims,
                  partial_transpose(proj, dims, Subsystem::B));
}

WitnessOperator wl_c() {
    Matrix m = Matrix::Zero(9, 9);
    const double d[9] = {1, 9, 1, 1, 1, 9, 9, 1, 1};
    for (int i = 0; i < 9; ++i) m(i, i) = d[i] / 33;
    for (auto [i, j] : {std::pair{0, 4}, {0, 8}, {4, 8}})
        m(i, j) = m(j, i) = -1.0 / 33;
    return finish("wlc", {}, {3, 3}, std::move(m));
}

const std::vector<WitnessFamilyInfo>& witness_registry() {
    static const std::vector<WitnessFamilyInfo> registry = {
        {"wlp", {2, 2}, {{"p", 0.0, 1.0, true}},
         "parameterized two-qubit witness, negative corner for all p in (0,1]"},
        {"wpsi_2x2", {2, 2}, {}, "partial transpose of the singlet projector"},
        {"wpsi_2x3", {2, 3}, {}, "singlet projector witness embedded in 2x3"},
        {"wphi_3x3", {3, 3}, {}, "phi-plus projector witness embedded in 3x3"},
        {"wphi_2x4", {2, 4}, {}, "phi-plus projector witness embedded in 2x4"},
        {"wlc", {3, 3}, {}, "fixed nondecomposable two-qutrit witness"},
    };
    return registry;
}

WitnessOperator make_witness(const std::string& id, const std::vector<double>& params) {
    for (const auto& info : witness_registry()) {
        if (info.id != id) continue;
        if (params.size() != info.params.size())
            throw std::invalid_argument("witness " + id + ": wrong parameter count");
        if (id == "wlp") return wl_p(params[0]);
        if (id == "wlc") return wl_c();
        WitnessOperator w = wl_projector(named_vector(id), info.dims);
        w.family = id;
        return w;
    }
    throw std::invalid_argument("unknown witness family: " + id);
}

double expectation(const Matrix& w, const DensityMatrix& rho) {
    require(w.rows() == rho.matrix().rows() && w.cols() == rho.matrix().cols(),
            "expectation: dimension mismatch");
    const Complex tr = (w * rho.matrix()).trace();
    if (std::abs(tr.imag()) > kImagTol)
        throw std::runtime_error("expectation: non-real trace");
    return tr.real();
}

KTerm k_term(const DensityMatrix& rho) {
    const DimPair dims = rho.dims();
    const Matrix marginal = partial_trace(rho.matrix(), dims, Subsystem::A);
    const Complex dm = determinant(Matrix::Identity(dims.d2, dims.d2) + marginal);
    const Complex df =
        determinant(Matrix::Identity(dims.total(), dims.total()) + rho.matrix());
    if (std::abs(dm.imag()) > 1e-9 || std::abs(df.imag()) > 1e-9)
        throw std::runtime_error("k_term: non-real determinant");
    return {dm.real() - df.real(), dm.real(), df.real()};
}

CertificationReport certify_witness(const WitnessOperator& w,
                                    const CertifySettings& settings) {
    CertificationReport report;
    report.family = w.family;
    report.params = w.params;
    report.samples = settings.samples;
    report.seed = settings.seed;
    report.lambda_min = hermitian_spectrum(w.matrix).min();
    report.has_negative_eigenvalue = report.lambda_min < 0;

    std::vector<double> values(settings.samples);
    parallel_for(settings.samples, [&](int i) {
        std::mt19937_64 rng(split_seed(settings.seed, i));
        DensityMatrix rho = random_separable_state(w.dims, rng);
        values[i] = expectation(w.matrix, rho);
    });
    report.min_expectation = std::numeric_limits<double>::infinity();
    for (double v : values) report.min_expectation = std::min(report.min_expectation, v);
    report.suspect = report.min_expectation < -1e-8 || !report.has_negative_eigenvalue;

    if (settings.probe_zoo) {
        for (const auto& fam : family_registry()) {
            if (fam.dims != w.dims) continue;
            std::vector<std::vector<double>> probes;
            if (fam.params.empty()) {
                probes.push_back({});
            } else if (fam.params.size() == 1) {
                const auto& r = fam.params[0];
                const double lo = r.lo_exclusive ? r.lo + 1e-3 : r.lo;
                const double hi = std::min(r.hi, 10.0 * std::max(1.0, lo));
                for (double t : {0.0, 0.5, 1.0})
                    probes.push_back({lo + t * (hi - lo)});
            } else {
                std::vector<double> mid;
                for (const auto& r : fam.params) mid.push_back(0.5 * (r.lo + r.hi));
                probes.push_back(mid);
            }
            for (const auto& pr : probes) {
                const double v = expectation(w.matrix, make_family_state(fam.id, pr));
                if (v < -1e-10) report.detected.push_back({fam.id, pr, v});
            }
        }
    }
    return report;
}

}  // namespace nlew
