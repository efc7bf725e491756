#include "nlew/nlew_builders.hpp"

#include <cmath>
#include <limits>

#include "nlew/tensor_algebra.hpp"

namespace nlew {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double real_trace(const Matrix& m, const Matrix& rho) {
    return (m * rho).trace().real();
}

void check_dims(const WitnessOperator& w, const DensityMatrix& rho) {
    require(w.dims == rho.dims(), "witness and state dimensions do not match");
}

// Shared k / determinant / witness traces.
struct Common {
    double k, det_marginal, det_full, tr_wl, tr_wl2;
};

Common common_terms(const WitnessOperator& w, const DensityMatrix& rho) {
    const KTerm kt = k_term(rho);
    return {kt.value, kt.det_marginal, kt.det_full,
            expectation(w.matrix, rho),
            expectation(w.matrix * w.matrix, rho)};
}

NlewEvaluation base_eval(NlewKind kind, const DensityMatrix& rho) {
    NlewEvaluation e;
    e.kind = kind;
    e.dims = rho.dims();
    e.k = e.det_marginal = e.det_full = kNaN;
    e.tr_wl = e.tr_wl2 = kNaN;
    e.lmax_rho = e.lmax_wl = kNaN;
    e.h1 = e.h2 = e.sep_max = kNaN;
    e.psd_term = e.lmin_psd_op = e.asymmetry = kNaN;
    return e;
}

// I (x) Tr_A(rho) - rho, the operator that is PSD for every PPT state.
Matrix marginal_gap_operator(const DensityMatrix& rho) {
    const DimPair dims = rho.dims();
    return kron(Matrix::Identity(dims.d1, dims.d1),
                partial_trace(rho.matrix(), dims, Subsystem::A)) -
           rho.matrix();
}

void fill_marginal_gap(NlewEvaluation& e, const DensityMatrix& rho) {
    const Matrix gap = marginal_gap_operator(rho);
    e.psd_term = real_trace(gap, rho.matrix());
    e.lmin_psd_op = hermitian_spectrum(gap).min();
}

double h2_term(const DensityMatrix& rho) {
    const DimPair dims = rho.dims();
    const double det_rho = determinant(rho.matrix()).real();
    const double det_marg =
        determinant(partial_trace(rho.matrix(), dims, Subsystem::A)).real();
    return det_rho - std::pow(det_marg / dims.d1, dims.d1);
}

struct CcnrParts {
    Matrix wl;          // built linear operator (possibly non-Hermitian)
    double k;
    double lmax_rho;
    double lmax_wl;     // top eigenvalue of the Hermitian part
    double asymmetry;
};

CcnrParts build_ccnr_dv(const DensityMatrix& rho, bool dv) {
    const DimPair dims = rho.dims();
    require(dims.d1 == dims.d2, "CCNR/DV construction requires d1 == d2");
    const int d = dims.d1;
    const KTerm kt = k_term(rho);
    const CorrelationMatrix c = correlation_matrix_canonical(rho.matrix(), dims);
    const double lmax_rho = hermitian_spectrum(rho.matrix()).max();
    const double c0 =
        (dv ? 0.5 * d * (d - 1) : 1.0) - double(d) * d * (d + 1) * (d + 1) * kt.value;
    Matrix wl = c0 * Matrix::Identity(d * d, d * d) -
                c.entries.cast<Complex>() / lmax_rho;
    const double asym = (wl - wl.transpose()).cwiseAbs().maxCoeff();
    const double lmax_wl = hermitian_spectrum(0.5 * (wl + wl.adjoint())).max();
    return {std::move(wl), kt.value, lmax_rho, lmax_wl, asym};
}

NlewEvaluation ccnr_dv_eval(const DensityMatrix& rho, bool dv, bool nonlinear) {
    NlewEvaluation e = base_eval(
        nonlinear ? (dv ? NlewKind::DvNl : NlewKind::CcnrNl)
                  : (dv ? NlewKind::DvL : NlewKind::CcnrL),
        rho);
    const CcnrParts parts = build_ccnr_dv(rho, dv);
    e.k = parts.k;
    e.lmax_rho = parts.lmax_rho;
    e.lmax_wl = parts.lmax_wl;
    e.asymmetry = parts.asymmetry;
    e.witness_valid = parts.lmax_wl > 0;
    e.tr_wl = real_trace(parts.wl, rho.matrix());
    e.tr_wl2 = real_trace(parts.wl * parts.wl, rho.matrix());
    if (!nonlinear) {
        e.value = e.tr_wl;
        return e;
    }
    if (parts.lmax_wl <= 0)
        throw std::runtime_error(
            "nonlinear CCNR/DV construction undefined: lmax(W_L) <= 0");
    e.value = e.tr_wl - e.tr_wl2 / parts.lmax_wl;
    return e;
}

}  // namespace

std::string to_string(NlewKind kind) {
    switch (kind) {
        case NlewKind::FBasic: return "F_BASIC";
        case NlewKind::Wnl1: return "WNL1";
        case NlewKind::Wnl2: return "WNL2";
        case NlewKind::Wnl3: return "WNL3";
        case NlewKind::Wnl4: return "WNL4";
        case NlewKind::CcnrL: return "CCNR_L";
        case NlewKind::CcnrNl: return "CCNR_NL";
        case NlewKind::DvL: return "DV_L";
        case NlewKind::DvNl: return "DV_NL";
    }
    throw std::logic_error("unreachable");
}

NlewKind kind_from_string(const std::string& name) {
    for (NlewKind k : all_kinds())
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown evaluator kind: " + name);
}

const std::vector<NlewKind>& all_kinds() {
    static const std::vector<NlewKind> kinds = {
        NlewKind::FBasic, NlewKind::Wnl1,  NlewKind::Wnl2,
        NlewKind::Wnl3,   NlewKind::Wnl4,  NlewKind::CcnrL,
        NlewKind::CcnrNl, NlewKind::DvL,   NlewKind::DvNl};
    return kinds;
}

bool kind_needs_witness(NlewKind kind) {
    switch (kind) {
        case NlewKind::CcnrL:
        case NlewKind::CcnrNl:
        case NlewKind::DvL:
        case NlewKind::DvNl: return false;
        default: return true;
    }
}

bool kind_needs_sep_max(NlewKind kind) { return kind == NlewKind::Wnl4; }

double NlewEvaluation::recompute() const {
    const double d1d2 = dims.total();
    switch (kind) {
        case NlewKind::FBasic: return tr_wl2 + tr_wl;
        case NlewKind::Wnl1:
            return tr_wl2 / d1d2 + d1d2 / (d1d2 + 1) * tr_wl - k;
        case NlewKind::Wnl2:
            return tr_wl2 + d1d2 * d1d2 * tr_wl - k / dims.d2 + dims.d2 * psd_term;
        case NlewKind::Wnl3:
            return tr_wl2 - k / (d1d2 * d1d2) + d1d2 * d1d2 * psd_term;
        case NlewKind::Wnl4: return sep_max - tr_wl2 + h2 * tr_wl;
        case NlewKind::CcnrL:
        case NlewKind::DvL: return tr_wl;
        case NlewKind::CcnrNl:
        case NlewKind::DvNl: return tr_wl - tr_wl2 / lmax_wl;
    }
    throw std::logic_error("unreachable");
}

Matrix f_basic(const WitnessOperator& w) { return w.matrix * w.matrix + w.matrix; }

NlewEvaluation fbasic_evaluate(const WitnessOperator& w, const DensityMatrix& rho) {
    check_dims(w, rho);
    NlewEvaluation e = base_eval(NlewKind::FBasic, rho);
    e.tr_wl = expectation(w.matrix, rho);
    e.tr_wl2 = expectation(w.matrix * w.matrix, rho);
    e.value = e.tr_wl2 + e.tr_wl;
    return e;
}

NlewEvaluation wnl1_evaluate(const WitnessOperator& w, const DensityMatrix& rho) {
    check_dims(w, rho);
    NlewEvaluation e = base_eval(NlewKind::Wnl1, rho);
    const Common c = common_terms(w, rho);
    e.k = c.k;
    e.det_marginal = c.det_marginal;
    e.det_full = c.det_full;
    e.tr_wl = c.tr_wl;
    e.tr_wl2 = c.tr_wl2;
    const double d1d2 = rho.dims().total();
    e.value = c.tr_wl2 / d1d2 + d1d2 / (d1d2 + 1) * c.tr_wl - c.k;
    return e;
}

NlewEvaluation wnl2_evaluate(const WitnessOperator& w, const DensityMatrix& rho) {
    check_dims(w, rho);
    NlewEvaluation e = base_eval(NlewKind::Wnl2, rho);
    const Common c = common_terms(w, rho);
    e.k = c.k;
    e.det_marginal = c.det_marginal;
    e.det_full = c.det_full;
    e.tr_wl = c.tr_wl;
    e.tr_wl2 = c.tr_wl2;
    fill_marginal_gap(e, rho);
    const double d1d2 = rho.dims().total();
    e.value = c.tr_wl2 + d1d2 * d1d2 * c.tr_wl - c.k / rho.dims().d2 +
              rho.dims().d2 * e.psd_term;
    return e;
}

NlewEvaluation wnl3_evaluate(const WitnessOperator& w, const DensityMatrix& rho) {
    check_dims(w, rho);
    NlewEvaluation e = base_eval(NlewKind::Wnl3, rho);
    const Common c = common_terms(w, rho);
    e.k = c.k;
    e.det_marginal = c.det_marginal;
    e.det_full = c.det_full;
    e.tr_wl = c.tr_wl;
    e.tr_wl2 = c.tr_wl2;
    fill_marginal_gap(e, rho);
    const double d1d2 = rho.dims().total();
    e.value = c.tr_wl2 - c.k / (d1d2 * d1d2) + d1d2 * d1d2 * e.psd_term;
    return e;
}

NlewEvaluation wnl4_evaluate(const WitnessOperator& w, const DensityMatrix& rho,
                             double sep_max) {
    check_dims(w, rho);
    const Matrix w2 = w.matrix * w.matrix;
    if (sep_max < hermitian_spectrum(w2).min() - 1e-12)
        throw std::invalid_argument(
            "wnl4_evaluate: sep_max below the minimum of W^2 is inconsistent");
    NlewEvaluation e = base_eval(NlewKind::Wnl4, rho);
    e.tr_wl = expectation(w.matrix, rho);
    e.tr_wl2 = expectation(w2, rho);
    e.sep_max = sep_max;
    e.h1 = sep_max - e.tr_wl2;
    e.h2 = h2_term(rho);
    e.value = sep_max - e.tr_wl2 + e.h2 * e.tr_wl;
    return e;
}

Matrix wl_ccnr(const DensityMatrix& rho) { return build_ccnr_dv(rho, false).wl; }
Matrix wl_dv(const DensityMatrix& rho) { return build_ccnr_dv(rho, true).wl; }

NlewEvaluation ccnr_l_evaluate(const DensityMatrix& rho) {
    return ccnr_dv_eval(rho, false, false);
}
NlewEvaluation dv_l_evaluate(const DensityMatrix& rho) {
    return ccnr_dv_eval(rho, true, false);
}
NlewEvaluation wnl_ccnr_evaluate(const DensityMatrix& rho) {
    return ccnr_dv_eval(rho, false, true);
}
NlewEvaluation wnl_dv_evaluate(const DensityMatrix& rho) {
    return ccnr_dv_eval(rho, true, true);
}

NlewEvaluation evaluate(NlewKind kind, const WitnessOperator* w,
                        const DensityMatrix& rho, std::optional<double> sep_max) {
    if (kind_needs_witness(kind))
        require(w != nullptr, "this evaluator kind requires a witness");
    switch (kind) {
        case NlewKind::FBasic: return fbasic_evaluate(*w, rho);
        case NlewKind::Wnl1: return wnl1_evaluate(*w, rho);
        case NlewKind::Wnl2: return wnl2_evaluate(*w, rho);
        case NlewKind::Wnl3: return wnl3_evaluate(*w, rho);
        case NlewKind::Wnl4:
            require(sep_max.has_value(), "WNL4 requires sep_max");
            return wnl4_evaluate(*w, rho, *sep_max);
        case NlewKind::CcnrL: return ccnr_l_evaluate(rho);
        case NlewKind::CcnrNl: return wnl_ccnr_evaluate(rho);
        case NlewKind::DvL: return dv_l_evaluate(rho);
        case NlewKind::DvNl: return wnl_dv_evaluate(rho);
    }
    throw std::logic_error("unreachable");
}

Matrix materialize(NlewKind kind, const WitnessOperator* w, const DensityMatrix& rho,
                   std::optional<double> sep_max) {
    if (kind_needs_witness(kind))
        require(w != nullptr, "this evaluator kind requires a witness");
    const double d1d2 = rho.dims().total();
    const Matrix id = Matrix::Identity(rho.dims().total(), rho.dims().total());
    switch (kind) {
        case NlewKind::FBasic: return f_basic(*w);
        case NlewKind::Wnl1:
            return w->matrix * w->matrix / d1d2 +
                   d1d2 / (d1d2 + 1) * w->matrix - k_term(rho).value * id;
        case NlewKind::Wnl2:
            return w->matrix * w->matrix + d1d2 * d1d2 * w->matrix -
                   k_term(rho).value / rho.dims().d2 * id +
                   double(rho.dims().d2) * marginal_gap_operator(rho);
        case NlewKind::Wnl3:
            return w->matrix * w->matrix - k_term(rho).value / (d1d2 * d1d2) * id +
                   d1d2 * d1d2 * marginal_gap_operator(rho);
        case NlewKind::Wnl4: {
            require(sep_max.has_value(), "WNL4 requires sep_max");
            return *sep_max * id - w->matrix * w->matrix + h2_term(rho) * w->matrix;
        }
        case NlewKind::CcnrL: return wl_ccnr(rho);
        case NlewKind::DvL: return wl_dv(rho);
        case NlewKind::CcnrNl:
        case NlewKind::DvNl: {
            const CcnrParts parts = build_ccnr_dv(rho, kind == NlewKind::DvNl);
            if (parts.lmax_wl <= 0)
                throw std::runtime_error(
                    "nonlinear CCNR/DV construction undefined: lmax(W_L) <= 0");
            return parts.wl - parts.wl * parts.wl / parts.lmax_wl;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace nlew
