#pragma once

#include <optional>
#include <string>

#include "nlew/state_zoo.hpp"
#include "nlew/types.hpp"
#include "nlew/witness_core.hpp"

namespace nlew {

enum class NlewKind { FBasic, Wnl1, Wnl2, Wnl3, Wnl4, CcnrL, CcnrNl, DvL, DvNl };

std::string to_string(NlewKind kind);
NlewKind kind_from_string(const std::string& name);
const std::vector<NlewKind>& all_kinds();

// FBasic..Wnl4 evaluate a witness against the probe; the CCNR/DV chains are
// built from the probe state alone.
bool kind_needs_witness(NlewKind kind);
bool kind_needs_sep_max(NlewKind kind);

// Audited evaluation record. Fields that do not apply to a kind are NaN.
struct NlewEvaluation {
    NlewKind kind = NlewKind::FBasic;
    DimPair dims;
    double value = 0.0;

    double k = 0.0;             // det(I+Tr_A rho) - det(I+rho)
    double det_marginal = 0.0;
    double det_full = 0.0;
    double tr_wl = 0.0;         // Tr(W_L rho)
    double tr_wl2 = 0.0;        // Tr(W_L^2 rho)
    double lmax_rho = 0.0;
    double lmax_wl = 0.0;       // CCNR/DV: top eigenvalue of the built operator
    double h1 = 0.0;
    double h2 = 0.0;
    double sep_max = 0.0;
    double psd_term = 0.0;      // Tr[(I (x) Tr_A(rho) - rho) rho]
    double lmin_psd_op = 0.0;   // bottom eigenvalue of I (x) Tr_A(rho) - rho
    double asymmetry = 0.0;     // max-norm of W_L - W_L^T for CCNR/DV
    bool witness_valid = true;  // CCNR/DV linear: lmax_wl > 0

    // Re-derives value from the logged intermediates (self-audit).
    double recompute() const;
};

// W^2 + W.
Matrix f_basic(const WitnessOperator& w);

NlewEvaluation fbasic_evaluate(const WitnessOperator& w, const DensityMatrix& rho);
NlewEvaluation wnl1_evaluate(const WitnessOperator& w, const DensityMatrix& rho);
NlewEvaluation wnl2_evaluate(const WitnessOperator& w, const DensityMatrix& rho);
NlewEvaluation wnl3_evaluate(const WitnessOperator& w, const DensityMatrix& rho);

// sep_max must be the maximum of Tr(W^2 rho_sep) over separable states.
NlewEvaluation wnl4_evaluate(const WitnessOperator& w, const DensityMatrix& rho,
                             double sep_max);

// State-built linear operators (d (x) d only). The correlation block need not
// be symmetric, so these matrices may be non-Hermitian; evaluations take the
// real part of the trace and log the asymmetry norm.
Matrix wl_ccnr(const DensityMatrix& rho);
Matrix wl_dv(const DensityMatrix& rho);

NlewEvaluation ccnr_l_evaluate(const DensityMatrix& rho);
NlewEvaluation dv_l_evaluate(const DensityMatrix& rho);

// Nonlinear chains W_L - W_L^2 / lmax(W_L); lmax(W_L) <= 0 is an error.
NlewEvaluation wnl_ccnr_evaluate(const DensityMatrix& rho);
NlewEvaluation wnl_dv_evaluate(const DensityMatrix& rho);

// Uniform entry point. w may be null for the CCNR/DV kinds; sep_max is
// required for Wnl4.
NlewEvaluation evaluate(NlewKind kind, const WitnessOperator* w,
                        const DensityMatrix& rho,
                        std::optional<double> sep_max = std::nullopt);

// Explicit matrix of the (probe-tailored) operator; Tr(materialize * rho)
// reproduces evaluate(...).value.
Matrix materialize(NlewKind kind, const WitnessOperator* w, const DensityMatrix& rho,
                   std::optional<double> sep_max = std::nullopt);

}  // namespace nlew
