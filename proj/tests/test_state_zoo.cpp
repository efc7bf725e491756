#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlew/rng.hpp"
#include "nlew/state_zoo.hpp"
#include "nlew/tensor_algebra.hpp"

using namespace nlew;

TEST_CASE("registry lookups") {
    CHECK(family_registry().size() == 13);
    CHECK(family_info("isotropic2").dims == DimPair{2, 2});
    CHECK(family_info("npt2x4").dims == DimPair{2, 4});
    CHECK_THROWS_AS(family_info("nope"), std::invalid_argument);
    CHECK_THROWS_AS(make_family_state("isotropic2", {}), std::invalid_argument);
    CHECK_THROWS_AS(make_family_state("bellmix", {0.1}), std::invalid_argument);
}

TEST_CASE("every family accepts its whole parameter range") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& fam : family_registry()) {
        if (fam.params.empty()) {
            CHECK_NOTHROW(make_family_state(fam.id, {}));
            continue;
        }
        for (int i = 0; i < 100; ++i) {
            std::vector<double> params;
            for (const auto& r : fam.params) {
                const double hi = std::min(r.hi, 10.0);  // keep ppt_x desk-scale
                const double lo = r.lo_exclusive ? r.lo + 1e-3 : r.lo;
                params.push_back(lo + unit(rng) * (hi - lo));
            }
            CHECK_NOTHROW(make_family_state(fam.id, params));
        }
    }
}

TEST_CASE("out-of-range parameters are rejected") {
    CHECK_THROWS_AS(make_family_state("isotropic2", {1.1}), std::invalid_argument);
    CHECK_THROWS_AS(make_family_state("isotropic2", {-0.4}), std::invalid_argument);
    CHECK_THROWS_AS(make_family_state("mems", {-0.01}), std::invalid_argument);
    CHECK_THROWS_AS(make_family_state("mems", {0.98}), std::invalid_argument);
    CHECK_THROWS_AS(make_family_state("ppt_x", {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_family_state("horodecki", {1.9}), std::invalid_argument);
    CHECK_THROWS_AS(make_family_state("rho_beta", {0.5}), std::invalid_argument);
}

TEST_CASE("explicit matrix values") {
    // isotropic at alpha = 1 is the phi+ projector
    const Matrix phi = make_family_state("isotropic2", {1.0}).matrix();
    CHECK(phi(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(phi(0, 3).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(phi(1, 1)) <= 1e-15);

    // x = 1 gives uniform 1/9 diagonal
    const Matrix px = make_family_state("ppt_x", {1.0}).matrix();
    for (int i = 0; i < 9; ++i)
        CHECK(px(i, i).real() == doctest::Approx(1.0 / 9).epsilon(1e-14));

    const Matrix bm = make_family_state("bellmix", {}).matrix();
    CHECK(bm(0, 3).real() == doctest::Approx(11.0 / 30).epsilon(1e-15));
    CHECK(bm(1, 1).real() == doctest::Approx(1.0 / 15).epsilon(1e-15));

    // the mems mixture weights sum to one, so the trace is exactly 1
    for (double q : {0.0, 0.3, 0.97997}) {
        const Matrix m = make_family_state("mems", {q}).matrix();
        CHECK(std::abs(m.trace().real() - 1.0) <= 1e-13);
    }

    // the two-parameter family has unit trace across its whole window
    for (double ss : {0.2926, 0.2963, 0.3}) {
        for (double t : {0.02, 0.0213}) {
            const Matrix m = make_family_state("rudolph", {ss, t}).matrix();
            CHECK(std::abs(m.trace().real() - 1.0) <= 1e-15);
        }
    }
}

TEST_CASE("ppt classification") {
    // isotropic families flip sign at alpha (gamma) = 1/3
    CHECK_FALSE(ppt_classify(make_family_state("isotropic2", {1.0 / 3 - 1e-5})).npt);
    CHECK(ppt_classify(make_family_state("isotropic2", {1.0 / 3 + 1e-5})).npt);
    CHECK_FALSE(ppt_classify(make_family_state("isotropic3", {1.0 / 3 - 1e-5})).npt);
    CHECK(ppt_classify(make_family_state("isotropic3", {1.0 / 3 + 1e-5})).npt);

    for (double x : {0.5, 1.0, 2.0, 5.0})
        CHECK_FALSE(ppt_classify(make_family_state("ppt_x", {x})).npt);

    // horodecki family: PPT through gamma = 4, NPT beyond
    for (double g : {2.0, 3.0, 3.5, 4.0})
        CHECK_FALSE(ppt_classify(make_family_state("horodecki", {g})).npt);
    for (double g : {4.1, 4.5, 5.0})
        CHECK(ppt_classify(make_family_state("horodecki", {g})).npt);

    for (double b : {0.01, 0.3, 1.0})
        CHECK(ppt_classify(make_family_state("npt2x4", {b})).npt);

    const double b0 = 1 / std::sqrt(2.0);
    for (double beta : {b0, 0.8, 0.9, 1.0})
        CHECK(ppt_classify(make_family_state("rho_beta", {beta})).npt);

    for (double q : {0.0, 0.5, 0.97997})
        CHECK(ppt_classify(make_family_state("mems", {q})).npt);

    CHECK(ppt_classify(make_family_state("singlet_mix", {})).npt);
    CHECK(ppt_classify(make_family_state("bellmix", {})).npt);

    // the rudolph window is NPT everywhere
    for (double ss : {0.2926, 0.3})
        for (double t : {0.02, 0.0213})
            CHECK(ppt_classify(make_family_state("rudolph", {ss, t})).npt);

    std::mt19937_64 rng(5);
    const DensityMatrix prod = sample_separable({2, 2}, 1, rng).assemble();
    const PptResult r = ppt_classify(prod);
    CHECK_FALSE(r.npt);
    CHECK(r.min_pt_eigenvalue >= -1e-10);
}

TEST_CASE("bloch vectors") {
    const DensityMatrix mixed =
        product_state_from_bloch({2, {0, 0, 0}}, {2, {0, 0, 0}});
    CHECK((mixed.matrix() - Matrix::Identity(4, 4) / 4).cwiseAbs().maxCoeff() <= 1e-15);

    const DensityMatrix zz = product_state_from_bloch({2, {0, 0, 1}}, {2, {0, 0, 1}});
    CHECK(zz.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));

    // the qutrit unit ball is larger than state space: one pole of the last
    // diagonal axis reconstructs to a non-PSD matrix
    BlochVector pole{3, {0, 0, 0, 0, 0, 0, 0, 1}};
    CHECK_THROWS_WITH_AS(bloch_state(pole),
                         doctest::Contains("lambda_min"), std::invalid_argument);
    pole.coeffs[7] = -1;
    CHECK_NOTHROW(bloch_state(pole));

    CHECK_THROWS_AS(bloch_state({2, {0.8, 0.8, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(bloch_state({2, {0.1, 0.1}}), std::invalid_argument);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.33, 0.33);
    for (int i = 0; i < 25; ++i) {
        BlochVector a{3, {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)}};
        BlochVector b{2, {u(rng), u(rng), u(rng)}};
        const DensityMatrix rho = product_state_from_bloch(b, a);
        CHECK(rho.dims() == DimPair{2, 3});
    }
}

TEST_CASE("separable sampler") {
    std::mt19937_64 rng(11);
    const SeparableMixture single = sample_separable({2, 3}, 1, rng);
    CHECK(single.weights.size() == 1);
    CHECK(single.weights[0] == doctest::Approx(1.0));
    CHECK_NOTHROW(single.assemble());

    const SeparableMixture mix = sample_separable({3, 3}, 7, uint64_t{99});
    double wsum = 0;
    for (double w : mix.weights) {
        CHECK(w >= 0);
        wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(mix.assemble().matrix().trace().real() - 1.0) <= 1e-12);

    // seeded reproducibility
    const Matrix m1 = sample_separable({2, 2}, 4, uint64_t{7}).assemble().matrix();
    const Matrix m2 = sample_separable({2, 2}, 4, uint64_t{7}).assemble().matrix();
    CHECK((m1 - m2).cwiseAbs().maxCoeff() == 0.0);

    for (int i = 0; i < 50; ++i)
        CHECK_FALSE(ppt_classify(random_separable_state({2, 2}, rng)).npt);

    CHECK_THROWS_AS(sample_separable({2, 2}, 0, uint64_t{1}), std::invalid_argument);
}

TEST_CASE("density matrix invariants are enforced") {
    Matrix not_unit = Matrix::Identity(4, 4);
    CHECK_THROWS_AS(DensityMatrix({2, 2}, not_unit), std::runtime_error);

    Matrix negative = Matrix::Zero(4, 4);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix({2, 2}, negative), std::runtime_error);

    Matrix nonherm = Matrix::Identity(4, 4) / 4;
    nonherm(0, 1) = Complex(0.1, 0.0);
    CHECK_THROWS_AS(DensityMatrix({2, 2}, nonherm), std::runtime_error);

    CHECK_THROWS_AS(DensityMatrix({2, 2}, Matrix::Identity(6, 6) / 6),
                    std::invalid_argument);
}
