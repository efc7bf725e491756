#include "nlew/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "nlew/bisect.hpp"
#include "nlew/local_decomposition.hpp"
#include "nlew/parallel.hpp"
#include "nlew/rng.hpp"
#include "nlew/scan.hpp"
#include "nlew/tensor_algebra.hpp"

namespace nlew {

namespace {

std::string num(double v) { return format_double(v); }

struct Suite {
    std::vector<CheckResult>& out;
    int criterion;  // 0 = run everything

    bool active(int c) const { return criterion == 0 || criterion == c; }

    void check(int /*criterion*/, std::string id, bool passed, std::string detail) {
        out.push_back({std::move(id), passed, false, std::move(detail)});
    }
    void note(std::string id, std::string detail) {
        out.push_back({std::move(id), true, true, std::move(detail)});
    }
};

DensityMatrix bell_phi_plus() { return make_family_state("isotropic2", {1.0}); }

double wnl1_bell(double p) {
    return wnl1_evaluate(wl_p(p), bell_phi_plus()).value;
}

// --- criterion batteries -------------------------------------------------

void criterion1(Suite& s) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0;
    for (int i = 1; i <= 50; ++i) {
        const double p = i / 50.0;
        const double poly = (-20 + p * (32 + 5 * p)) / 80;
        worst = std::max(worst, std::abs(wnl1_bell(p) - poly));
    }
    s.check(1, "c1.bell-polynomial", worst <= 1e-12,
            "max |value - (-20+p(32+5p))/80| = " + num(worst) + " on a 50-point grid");

    const double root = bisect_root(wnl1_bell, 0.4, 0.7, 1e-9);
    const double gap = std::abs(root - 0.573);
    s.check(1, "c1.bell-root", gap <= 5e-4,
            "bisected root p* = " + num(root) +
                " vs reference 0.573 +- 5e-4 (|diff| = " + num(gap) +
                "); exact root (-16+2*sqrt(89))/5 = 0.5735924...; the reference "
                "value is a truncated threshold, so the stated band excludes the "
                "true root by 9.2e-5");
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    s.check(1, "c1.runtime", elapsed < 1.0, num(elapsed) + " s (budget 1 s)");
}

void criterion2(Suite& s) {
    const DensityMatrix phi = bell_phi_plus();
    const KTerm kt = k_term(phi);
    double worst = std::max(std::abs(kt.det_full - 2.0),
                            std::abs(kt.det_marginal - 2.25));
    for (double p : {0.25, 0.5, 0.9, 1.0}) {
        const WitnessOperator w = wl_p(p);
        worst = std::max(worst, std::abs(expectation(w.matrix, phi) - p / 2));
        worst = std::max(worst,
                         std::abs(expectation(w.matrix * w.matrix, phi) - p * p / 4));
    }
    s.check(2, "c2.bell-quartet", worst <= 1e-12,
            "max deviation from {p^2/4, p/2, 2, 9/4} = " + num(worst));
}

void criterion3(Suite& s) {
    const auto value_a = [](double a) {
        return wnl2_evaluate(wl_p(0.01044), make_family_state("phiminus_mix", {a})).value;
    };
    const double a_star = bisect_root(value_a, 0.85, 0.99, 1e-6);
    s.check(3, "c3.a-threshold", std::abs(a_star - 0.917) <= 1e-3,
            "a* = " + num(a_star) + " at p = 0.01044 (reference 0.917)");

    const auto value_p = [](double p) {
        return wnl2_evaluate(wl_p(p), make_family_state("phiminus_mix", {0.917})).value;
    };
    const double p_star = bisect_root(value_p, 1e-4, 0.05, 1e-7);
    s.check(3, "c3.p-threshold", std::abs(p_star - 0.01044) <= 1e-3,
            "p* = " + num(p_star) + " at a = 0.917 (reference 0.01044)");
}

void criterion4(Suite& s) {
    const auto value = [](double alpha, double p) {
        return wnl1_evaluate(wl_p(p), make_family_state("isotropic2", {alpha})).value;
    };
    bool ok = true;
    std::ostringstream detail;
    for (double p : {0.5210, 0.5213}) {
        const double a_star =
            bisect_root([&](double a) { return value(a, p); }, 0.9, 0.99, 1e-6);
        ok = ok && std::abs(a_star - 0.968) <= 1e-3;
        detail << "alpha*(p=" << num(p) << ") = " << num(a_star) << "; ";
    }
    s.check(4, "c4.alpha-threshold", ok, detail.str() + "reference 0.968 +- 1e-3");

    const double p_star =
        bisect_root([&](double p) { return value(0.968, p); }, 0.4, 0.6, 1e-6);
    s.check(4, "c4.p-threshold", std::abs(p_star - 0.5213) <= 1e-3,
            "p* = " + num(p_star) + " at alpha = 0.968 (reference 0.5213)");

    bool cell = true;
    for (double a : {0.968, 1.0})
        for (double p : {0.5210, 0.5213}) cell = cell && value(a, p) < 0;
    s.check(4, "c4.cell-negative", cell,
            "evaluation negative at all corners of [0.968,1] x [0.5210,0.5213]");

    double lin_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 50; ++i)
        for (int j = 1; j <= 50; ++j) {
            const double alpha = -1.0 / 3 + i * (4.0 / 3) / 50;
            const double p = j / 50.0;
            lin_min = std::min(lin_min, expectation(wl_p(p).matrix,
                                                    make_family_state("isotropic2", {alpha})));
        }
    s.check(4, "c4.linear-nondetect", lin_min >= -1e-12,
            "min Tr(W_L rho) over the alpha,p grid = " + num(lin_min));
}

void criterion5(Suite& s) {
    const auto value = [](double q, double p) {
        return wnl1_evaluate(wl_p(p), make_family_state("mems", {q})).value;
    };
    bool ok = true;
    std::ostringstream detail;
    for (double p : {0.2450, 0.2475}) {
        const double q_star =
            bisect_root([&](double q) { return value(q, p); }, 0.8, 0.9, 1e-6);
        ok = ok && std::abs(q_star - 0.875) <= 1e-3;
        detail << "q*(p=" << num(p) << ") = " << num(q_star) << "; ";
    }
    s.check(5, "c5.q-threshold", ok, detail.str() + "reference 0.875 +- 1e-3");

    bool cell = true;
    for (double p : {0.2450, 0.2475})
        for (double q : {0.876, 0.97997}) cell = cell && value(q, p) < 0;
    s.check(5, "c5.cell-negative", cell,
            "evaluation negative on [0.2450,0.2475] x [0.876,0.97997] corners");
}

void criterion6(Suite& s) {
    const WitnessOperator w33 = make_witness("wphi_3x3", {});
    const double g1 = bisect_root(
        [&](double g) {
            return wnl1_evaluate(w33, make_family_state("isotropic3", {g})).value;
        },
        0.9, 0.99, 1e-6);
    s.check(6, "c6.wnl1-threshold", std::abs(g1 - 0.932) <= 1e-3,
            "gamma* = " + num(g1) + " (reference 0.932 +- 1e-3)");

    const WitnessOperator wc = wl_c();
    double worst = 0;
    for (int i = 0; i <= 40; ++i) {
        const double g = i / 40.0;
        const double lin = expectation(wc.matrix, make_family_state("isotropic3", {g}));
        worst = std::max(worst, std::abs(lin - (17 - 21 * g) / 132));
    }
    const double g_lin = bisect_root(
        [&](double g) {
            return expectation(wc.matrix, make_family_state("isotropic3", {g}));
        },
        0.7, 0.9, 1e-7);
    s.check(6, "c6.linear-threshold",
            worst <= 1e-12 && std::abs(g_lin - 17.0 / 21) <= 1e-3,
            "identity residual " + num(worst) + "; gamma* = " + num(g_lin) +
                " vs 17/21 = " + num(17.0 / 21) + " (rounded elsewhere to 0.81)");

    const double g2 = bisect_root(
        [&](double g) {
            return wnl2_evaluate(wc, make_family_state("isotropic3", {g})).value;
        },
        0.7, 0.8, 1e-6);
    s.check(6, "c6.wnl2-threshold", std::abs(g2 - 0.752) <= 1e-3,
            "gamma* = " + num(g2) + " (reference 0.752 +- 1e-3)");
}

void criterion7(Suite& s) {
    const WitnessOperator w = make_witness("wphi_2x4", {});
    const auto rational = [](double b) {
        const double n = 1 + 6 * b;
        return (48 * b - 7329 * b * b - 93136 * b * b * b - 284608 * b * b * b * b) /
               (64 * n * n * n * n);
    };
    const auto value = [&](double b) {
        return wnl3_evaluate(w, make_family_state("npt2x4", {b})).value;
    };
    double worst = 0;
    bool negative = true;
    for (int i = 0; i <= 50; ++i) {
        const double b = 0.01 + i * (0.99 / 50);
        const double v = value(b);
        worst = std::max(worst, std::abs(v - rational(b)));
        negative = negative && v < 0;
    }
    s.check(7, "c7.rational-identity", worst <= 1e-12,
            "max |value - displayed rational| = " + num(worst) + " on b in [0.01,1]");
    s.check(7, "c7.negativity", negative, "evaluation negative on b in [0.01, 1]");

    const double b_star = bisect_root(value, 1e-4, 0.01, 1e-7);
    s.note("c7.positive-region",
           "evaluation is positive for b below b* = " + num(b_star) +
               " (bisected root); the reference claims negativity for all b in "
               "(0,1], which fails below b*");
}

void criterion8(Suite& s) {
    const DensityMatrix dec = make_family_state("singlet_mix", {});
    const DensityMatrix exa = make_family_state("singlet_mix_exact", {});
    const NlewEvaluation lin_dec = ccnr_l_evaluate(dec);
    const NlewEvaluation lin_exa = ccnr_l_evaluate(exa);
    s.check(8, "c8.linear-value",
            std::abs(lin_dec.value + 0.152209) <= 2e-3 &&
                std::abs(lin_exa.value + 0.152209) <= 2e-5,
            "Tr(W_L rho) = " + num(lin_dec.value) + " (six-digit state), " +
                num(lin_exa.value) + " (exact state); reference -0.152209");
    s.check(8, "c8.w2-value", std::abs(lin_dec.tr_wl2 - 0.304097) <= 5e-3,
            "Tr(W_L^2 rho) = " + num(lin_dec.tr_wl2) + " (reference 0.304097)");
    s.check(8, "c8.lmax", std::abs(lin_dec.lmax_wl - 0.161736) <= 2e-4,
            "lmax(W_L) = " + num(lin_dec.lmax_wl) + " (reference 0.161736)");
    const NlewEvaluation nl = wnl_ccnr_evaluate(dec);
    s.check(8, "c8.nonlinear-value", std::abs(nl.value + 2.0317) <= 1e-2,
            "nonlinear value = " + num(nl.value) + " (reference -2.0317)");
}

void criterion9(Suite& s) {
    const double b0 = 1.0 / std::sqrt(2.0);
    double ccnr_min = std::numeric_limits<double>::infinity();
    double dv_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 40; ++i) {
        const double beta = b0 + i * (1 - b0) / 40;
        const DensityMatrix rho = make_family_state("rho_beta", {beta});
        const double norm =
            singular_values(correlation_matrix_canonical(rho.matrix(), rho.dims())
                                .entries.cast<Complex>())
                .trace_norm();
        ccnr_min = std::min(ccnr_min, norm);
        dv_max = std::max(dv_max, norm);
    }
    s.check(9, "c9.dv-criterion-silent", dv_max <= 3.0 + 1e-12,
            "max ||C||_1 = " + num(dv_max) + " <= 3, so the norm test alone "
            "detects nothing");
    s.check(9, "c9.ccnr-criterion-detects", ccnr_min > 1.0,
            "min ||C||_1 = " + num(ccnr_min) + " > 1 across the whole range");

    // Detection intervals through the sweep machinery.
    SweepConfig config;
    config.state_family = "rho_beta";
    config.state_axes = {{"beta", b0, 1.0, 0.005, false}};
    config.kinds = {NlewKind::DvL, NlewKind::DvNl};
    config.bisect_tol = 1e-6;
    const DetectionReport report = run_detect(config);
    double lin_lo = 0, lin_hi = 0, nl_lo = 0, nl_hi = 0;
    int lin_count = 0, nl_count = 0;
    for (const auto& iv : report.intervals) {
        if (iv.kind == NlewKind::DvL) {
            lin_lo = iv.lo;
            lin_hi = iv.hi;
            ++lin_count;
        } else {
            nl_lo = iv.lo;
            nl_hi = iv.hi;
            ++nl_count;
        }
    }
    s.check(9, "c9.wldv-interval",
            lin_count == 1 && std::abs(lin_lo - 0.7308) <= 1e-3 &&
                std::abs(lin_hi - 0.7889) <= 1e-3,
            "linear detection interval [" + num(lin_lo) + ", " + num(lin_hi) +
                "] (reference [0.7308, 0.7889]; the lower endpoint is the "
                "witness-validity boundary lmax(W_L) = 0)");
    s.check(9, "c9.wnldv-interval",
            nl_count == 1 && std::abs(nl_lo - 0.7308) <= 1e-3 &&
                std::abs(nl_hi - 0.8096) <= 1e-3,
            "nonlinear detection interval [" + num(nl_lo) + ", " + num(nl_hi) +
                "] (reference [0.7308, 0.8096])");
}

void criterion10(Suite& s) {
    // Exact fraction recheck of h2 for the fixed Bell mixture. All entries
    // are thirtieths, so det(rho)*30^4 = (13^2-11^2)*(2*2) = 192, i.e.
    // det(rho) = 4/16875, and the marginal is I/2, so (det/2)^2 = 1/64.
    const std::int64_t h2_num = 4 * 64 - 16875;   // over 16875*64
    const std::int64_t h2_den = 16875 * 64;
    const double h2_reference = double(h2_num) / double(h2_den);
    const DensityMatrix rho_ent = make_family_state("bellmix", {});
    const double det_rho = determinant(rho_ent.matrix()).real();
    const double det_marg =
        determinant(partial_trace(rho_ent.matrix(), {2, 2}, Subsystem::A)).real();
    const NlewEvaluation e = wnl4_evaluate(wl_p(0.5), rho_ent, closed_form_wlp(0.5));
    const bool ok = h2_num == -16619 && h2_den == 1080000 &&
                    std::abs(det_rho - 4.0 / 16875) <= 1e-15 &&
                    std::abs(det_marg - 0.25) <= 1e-15 &&
                    std::abs(e.h2 - h2_reference) <= 1e-12;
    s.check(10, "c10.h2-rational", ok,
            "h2 = " + num(e.h2) + "; exact fraction -16619/1080000 = " +
                num(h2_reference));

    const double sep_max_ref = 0.040155;
    const WitnessOperator wc = wl_c();
    const double x_star = bisect_root(
        [&](double x) {
            return wnl4_evaluate(wc, make_family_state("ppt_x", {x}), sep_max_ref).value;
        },
        1.0, 3.0, 1e-6);
    bool ppt_ok = true;
    for (double x : {0.25, 0.5, 1.0, 1.79, 2.0, 5.0})
        ppt_ok = ppt_ok && !ppt_classify(make_family_state("ppt_x", {x})).npt;
    s.check(10, "c10.pptx-threshold",
            std::abs(x_star - 1.79) <= 1e-2 && ppt_ok,
            "x* = " + num(x_star) + " (reference 1.79 +- 1e-2); family PPT at all "
            "tested x: " + (ppt_ok ? std::string("yes") : std::string("no")));

    const double g_star = bisect_root(
        [&](double g) {
            return wnl4_evaluate(wc, make_family_state("horodecki", {g}), sep_max_ref)
                .value;
        },
        3.0, 5.0, 1e-6);
    bool band_ok = true;
    for (double g : {3.1, 3.5, 3.9, 4.0})
        band_ok = band_ok && !ppt_classify(make_family_state("horodecki", {g})).npt;
    const double v5 =
        wnl4_evaluate(wc, make_family_state("horodecki", {5.0}), sep_max_ref).value;
    s.check(10, "c10.horodecki-threshold",
            std::abs(g_star - 3.74) <= 1e-2 && band_ok && v5 < 0,
            "gamma* = " + num(g_star) + " (reference 3.74 +- 1e-2); PPT on (3,4]: " +
                (band_ok ? "yes" : "no") + "; value(5) = " + num(v5));
}

void criterion11(Suite& s, const ReproduceOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0;
    for (int i = 1; i <= 10; ++i) {
        const double p = i / 10.0;
        const SepMaxResult r =
            seesaw_max(wl_p(p).matrix * wl_p(p).matrix, {2, 2}, opt.sepmax_restarts,
                       opt.seed);
        worst = std::max(worst, std::abs(r.max_value - closed_form_wlp(p)));
    }
    s.check(11, "c11.seesaw-wlp", worst <= 1e-6,
            "max |seesaw - (2-2p+p^2)/4| = " + num(worst) + " over the p-grid");

    const WitnessOperator wc = wl_c();
    const SepMaxResult r =
        seesaw_max(wc.matrix * wc.matrix, {3, 3}, opt.sepmax_restarts, opt.seed);
    const double reference = 0.0401555;
    const double direct = ((wc.matrix * wc.matrix)(1, 1)).real();
    s.check(11, "c11.seesaw-wlc", std::abs(r.max_value - reference) <= 1e-4,
            "seesaw max = " + num(r.max_value) + " vs reference " + num(reference) +
                " = (255+80*sqrt(3))/9801; the reference is not the product-state "
                "maximum: the product basis state |0>|1> already gives Tr(W^2 rho) "
                "= " + num(direct) + " = (9/33)^2. The reference constant is kept "
                "as the sep_max input of the c10 checks");
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    s.check(11, "c11.runtime", elapsed < 30.0, num(elapsed) + " s (budget 30 s)");
}

void criterion12(Suite& s, const ReproduceOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    double worst = 0;
    for (DimPair dims : {DimPair{2, 2}, {3, 3}, {2, 3}}) {
        for (int i = 0; i < 100; ++i) {
            const Matrix h = random_hermitian(dims.total(), rng);
            worst = std::max(worst, decompose(h, dims).residual);
        }
    }
    s.check(12, "c12.roundtrip", worst <= 1e-10,
            "max reconstruction residual = " + num(worst) +
                " over 100 random Hermitian matrices per dimension pair");

    bool coeffs_ok = true;
    std::ostringstream detail;
    for (double p : {0.2, 0.3, 0.7, 1.0}) {
        const DecompositionResult d = decompose(wl_p(p).matrix, {2, 2});
        int nonzero = 0;
        for (Eigen::Index a = 0; a < d.coeffs.rows(); ++a)
            for (Eigen::Index b = 0; b < d.coeffs.cols(); ++b)
                if (std::abs(d.coeffs(a, b)) > 1e-12) ++nonzero;
        coeffs_ok = coeffs_ok && nonzero == 4 &&
                    std::abs(d.coeffs(0, 0) - 0.25) <= 1e-12 &&
                    std::abs(d.coeffs(1, 1) - 0.25) <= 1e-12 &&
                    std::abs(d.coeffs(2, 2) - 0.25) <= 1e-12 &&
                    std::abs(d.coeffs(3, 3) - (2 * p - 1) / 4) <= 1e-12;
    }
    s.check(12, "c12.wlp-coefficients", coeffs_ok,
            "coefficients are {II: 1/4, XX: 1/4, YY: 1/4, ZZ: (2p-1)/4} with "
            "exactly 4 nonzero entries");

    bool sq_ok = true;
    for (double p : {0.2, 0.5, 0.8}) {
        const Matrix w = wl_p(p).matrix;
        const DecompositionResult d = decompose(w * w, {2, 2});
        sq_ok = sq_ok && std::abs(d.coeffs(1, 1) - (1 - p) / 4) <= 1e-12 &&
                std::abs(d.coeffs(2, 2) - (1 - p) / 4) <= 1e-12;
    }
    s.check(12, "c12.square-xx", sq_ok,
            "recomputed XX/YY coefficient of W^2 equals (1-p)/4");
    s.note("c12.erratum",
           "the reference expansion of W^2 lists the XX/YY coefficient as "
           "2(1-p)/4, twice the recomputed (1-p)/4; suspected erratum (a phi+ "
           "expectation spot check cannot see it: the XX and YY contributions "
           "cancel there)");
}

void criterion13(Suite& s, const ReproduceOptions& opt) {
    const int n = opt.property_samples;

    // Result-1 and Result-6.
    {
        double slack1 = 0, slack6 = 0;
        std::mt19937_64 rng(split_seed(opt.seed, 1));
        const int dims[4] = {2, 3, 4, 6};
        for (int i = 0; i < n; ++i) {
            const int d = dims[i % 4];
            const Matrix a = random_hermitian(d, rng);
            const Matrix b = random_psd(d, rng);
            const Spectrum sa = hermitian_spectrum(a);
            const double trb = b.trace().real();
            const double trab = (a * b).trace().real();
            slack1 = std::max(slack1, sa.min() * trb - trab);
            slack1 = std::max(slack1, trab - sa.max() * trb);
            const Matrix c = random_complex(d, d, rng);
            slack6 = std::max(slack6,
                              std::abs(c.trace()) - singular_values(c).trace_norm());
        }
        s.check(13, "c13.result1-result6", slack1 <= 1e-10 && slack6 <= 1e-10,
                "worst bound violations: " + num(slack1) + " (eigenvalue bound), " +
                    num(slack6) + " (trace vs trace norm)");
    }

    // Result-2/3 on separable samples; Result-4 on random densities;
    // Result-5 on PSD pairs.
    {
        double s2 = 0, s3 = 0, s4 = 0, s5 = 0;
        std::mt19937_64 rng(split_seed(opt.seed, 2));
        const DimPair pairs[3] = {{2, 2}, {2, 3}, {3, 3}};
        for (int i = 0; i < n; ++i) {
            const DimPair dims = pairs[i % 3];
            const DensityMatrix rho = random_separable_state(dims, rng);
            const Matrix id = Matrix::Identity(dims.total(), dims.total());
            const double df = determinant(id + rho.matrix()).real();
            const Matrix ma = partial_trace(rho.matrix(), dims, Subsystem::A);
            const Matrix mb = partial_trace(rho.matrix(), dims, Subsystem::B);
            s2 = std::max(s2, determinant(Matrix::Identity(dims.d2, dims.d2) + ma)
                                      .real() - df);
            s2 = std::max(s2, determinant(Matrix::Identity(dims.d1, dims.d1) + mb)
                                      .real() - df);
            const Matrix gap_b = kron(mb, Matrix::Identity(dims.d2, dims.d2)) -
                                 rho.matrix();
            const Matrix gap_a = kron(Matrix::Identity(dims.d1, dims.d1), ma) -
                                 rho.matrix();
            s3 = std::max(s3, -hermitian_spectrum(gap_b).min());
            s3 = std::max(s3, -hermitian_spectrum(gap_a).min());

            std::mt19937_64 rng4(split_seed(opt.seed, 5000 + i));
            const Matrix psd = random_density(dims.total(), rng4);
            const double det_rho = determinant(psd).real();
            const double det_marg =
                determinant(partial_trace(psd, dims, Subsystem::A)).real();
            s4 = std::max(s4, det_rho - std::pow(det_marg / dims.d1, dims.d1));

            const int d5 = 2 + (i % 3);
            const Matrix pa = random_psd(d5, rng4);
            const Matrix pb = random_psd(d5, rng4);
            Eigen::SelfAdjointEigenSolver<Matrix> es(pa);
            const Matrix sqrt_a =
                es.eigenvectors() *
                es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                es.eigenvectors().adjoint();
            s5 = std::max(s5, -hermitian_spectrum(sqrt_a * pb * sqrt_a).min());
        }
        s.check(13, "c13.result2-result5",
                s2 <= 1e-10 && s3 <= 1e-10 && s4 <= 1e-10 && s5 <= 1e-10,
                "worst violations: det " + num(s2) + ", marginal-gap PSD " + num(s3) +
                    ", det power bound " + num(s4) + ", PSD-product spectrum " +
                    num(s5));
    }

    // Positivity of every evaluator kind on separable samples.
    {
        struct Combo {
            NlewKind kind;
            const char* witness;
            double wp;
            DimPair dims;
        };
        const std::vector<Combo> combos = {
            {NlewKind::FBasic, "wlp", 0.5, {2, 2}},
            {NlewKind::Wnl1, "wlp", 0.5, {2, 2}},
            {NlewKind::Wnl2, "wlp", 0.5, {2, 2}},
            {NlewKind::Wnl3, "wlp", 0.5, {2, 2}},
            {NlewKind::Wnl4, "wlp", 0.5, {2, 2}},
            {NlewKind::Wnl1, "wpsi_2x3", 0, {2, 3}},
            {NlewKind::Wnl2, "wpsi_2x3", 0, {2, 3}},
            {NlewKind::Wnl3, "wpsi_2x3", 0, {2, 3}},
            {NlewKind::Wnl3, "wphi_2x4", 0, {2, 4}},
            {NlewKind::Wnl1, "wlc", 0, {3, 3}},
            {NlewKind::Wnl2, "wlc", 0, {3, 3}},
            {NlewKind::Wnl4, "wlc", 0, {3, 3}},
            {NlewKind::CcnrL, nullptr, 0, {2, 2}},
            {NlewKind::CcnrNl, nullptr, 0, {2, 2}},
            {NlewKind::DvL, nullptr, 0, {2, 2}},
            {NlewKind::DvNl, nullptr, 0, {2, 2}},
            {NlewKind::CcnrL, nullptr, 0, {3, 3}},
            {NlewKind::CcnrNl, nullptr, 0, {3, 3}},
            {NlewKind::DvL, nullptr, 0, {3, 3}},
            {NlewKind::DvNl, nullptr, 0, {3, 3}},
        };
        double sound_min = std::numeric_limits<double>::infinity();
        double wnl4_min = std::numeric_limits<double>::infinity();
        std::string sound_worst, wnl4_worst;
        bool errors = false;
        for (const auto& combo : combos) {
            std::optional<WitnessOperator> w;
            std::optional<double> sep_max;
            if (combo.witness) {
                w = make_witness(combo.witness,
                                 combo.wp > 0 ? std::vector<double>{combo.wp}
                                              : std::vector<double>{});
                if (kind_needs_sep_max(combo.kind))
                    sep_max = sep_max_for_witness(*w, opt.sepmax_restarts, opt.seed);
            }
            std::vector<double> vals(opt.battery_samples);
            std::vector<char> fail(opt.battery_samples, 0);
            parallel_for(opt.battery_samples, [&](int i) {
                std::mt19937_64 rng(split_seed(opt.seed ^ 0xb417e521u, i));
                const DensityMatrix rho = random_separable_state(combo.dims, rng);
                try {
                    vals[i] = evaluate(combo.kind, w ? &*w : nullptr, rho, sep_max).value;
                } catch (const std::exception&) {
                    fail[i] = 1;
                    vals[i] = 0;
                }
            });
            const std::string tag = to_string(combo.kind) + "/" +
                                    std::to_string(combo.dims.d1) + "x" +
                                    std::to_string(combo.dims.d2);
            for (int i = 0; i < opt.battery_samples; ++i) {
                errors = errors || fail[i];
                if (combo.kind == NlewKind::Wnl4) {
                    if (vals[i] < wnl4_min) {
                        wnl4_min = vals[i];
                        wnl4_worst = tag;
                    }
                } else if (vals[i] < sound_min) {
                    sound_min = vals[i];
                    sound_worst = tag;
                }
            }
        }
        s.check(13, "c13.nlew-positivity", !errors && sound_min >= -1e-8,
                "min evaluation over " + std::to_string(opt.battery_samples) +
                    " separable samples per kind (WNL4 reported separately) = " +
                    num(sound_min) + " (" + sound_worst + ")" +
                    (errors ? "; construction errors occurred" : ""));
        s.check(13, "c13.wnl4-positivity", wnl4_min >= -1e-8,
                "min WNL4 evaluation over separable samples = " + num(wnl4_min) +
                    " (" + wnl4_worst + "). Mixed product states near the "
                    "Tr(W^2 rho) maximizer drive h1 to zero while h2 stays "
                    "negative and Tr(W rho) positive, so the construction goes "
                    "negative on manifestly separable inputs; the claimed bound "
                    "h1 + h2*lmin(W) has the wrong eigenvalue for h2 < 0");
    }

    // Every registry witness stays nonnegative on its separable battery.
    {
        bool ok = true;
        std::ostringstream detail;
        for (const auto& info : witness_registry()) {
            const WitnessOperator w = make_witness(
                info.id, info.params.empty() ? std::vector<double>{}
                                             : std::vector<double>{0.5});
            CertifySettings settings;
            settings.samples = opt.battery_samples;
            settings.seed = opt.seed;
            settings.probe_zoo = false;
            const CertificationReport report = certify_witness(w, settings);
            ok = ok && !report.suspect;
            detail << info.id << ": " << num(report.min_expectation) << "; ";
        }
        s.check(13, "c13.witness-certification", ok,
                "min separable expectation per witness — " + detail.str());
    }

    // Realignment vs canonical correlation trace norm.
    {
        double worst = 0;
        std::mt19937_64 rng(split_seed(opt.seed, 3));
        for (DimPair dims : {DimPair{2, 2}, {2, 3}, {3, 3}}) {
            for (int i = 0; i < 100; ++i) {
                const Matrix rho = random_density(dims.total(), rng);
                const double tn_r = singular_values(realignment(rho, dims)).trace_norm();
                const double tn_c =
                    singular_values(
                        correlation_matrix_canonical(rho, dims).entries.cast<Complex>())
                        .trace_norm();
                worst = std::max(worst, std::abs(tn_r - tn_c));
            }
        }
        s.check(13, "c13.realignment-equality", worst <= 1e-9,
                "max |  ||R||_1 - ||C||_1  | = " + num(worst) +
                    " over random states on (2,2), (2,3), (3,3)");
    }
}

}  // namespace

std::vector<CheckResult> run_reproduction(const ReproduceOptions& options,
                                          int criterion) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    Suite suite{results, criterion};

    if (suite.active(1)) criterion1(suite);
    if (suite.active(2)) criterion2(suite);
    if (suite.active(3)) criterion3(suite);
    if (suite.active(4)) criterion4(suite);
    if (suite.active(5)) criterion5(suite);
    if (suite.active(6)) criterion6(suite);
    if (suite.active(7)) criterion7(suite);
    if (suite.active(8)) criterion8(suite);
    if (suite.active(9)) criterion9(suite);
    if (suite.active(10)) criterion10(suite);
    if (suite.active(11)) criterion11(suite, options);
    if (suite.active(12)) criterion12(suite, options);
    if (suite.active(13)) criterion13(suite, options);

    if (criterion == 0) {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        suite.check(13, "c13.runtime", elapsed < 300.0,
                    "full run took " + num(elapsed) + " s (budget 300 s)");
    }
    return results;
}

Json reproduction_json(const std::vector<CheckResult>& results) {
    Json arr = Json::array();
    for (const auto& r : results)
        arr.push_back({{"id", r.id},
                       {"passed", r.passed},
                       {"note", r.is_note},
                       {"detail", r.detail}});
    return {{"checks", arr}, {"failed", reproduction_failed(results)}};
}

bool reproduction_failed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.is_note && !r.passed) return true;
    return false;
}

}  // namespace nlew
