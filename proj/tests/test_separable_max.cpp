#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlew/separable_max.hpp"
#include "nlew/state_zoo.hpp"
#include "nlew/tensor_algebra.hpp"

using namespace nlew;

namespace {

// Brute-force oracle: exhaustive sphere-angle grid over pure qubit pairs.
double grid_search_2x2(const Matrix& w2, int resolution) {
    double best = -1e300;
    for (int ia = 0; ia < resolution; ++ia)
        for (int ja = 0; ja < resolution; ++ja)
            for (int ib = 0; ib < resolution; ++ib)
                for (int jb = 0; jb < resolution; ++jb) {
                    const double ta = M_PI * (ia + 0.5) / resolution;
                    const double pa = 2 * M_PI * ja / resolution;
                    const double tb = M_PI * (ib + 0.5) / resolution;
                    const double pb = 2 * M_PI * jb / resolution;
                    Vector a(2), b(2);
                    a << std::cos(ta / 2),
                        Complex(std::cos(pa), std::sin(pa)) * std::sin(ta / 2);
                    b << std::cos(tb / 2),
                        Complex(std::cos(pb), std::sin(pb)) * std::sin(tb / 2);
                    Vector ab(4);
                    ab << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
                    best = std::max(best, (ab.adjoint() * w2 * ab)(0, 0).real());
                }
    return best;
}

}  // namespace

TEST_CASE("closed form for the wlp family") {
    CHECK(closed_form_wlp(1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(closed_form_wlp(0.5) == doctest::Approx(0.3125).epsilon(1e-15));
    CHECK(closed_form_wlp(1e-9) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(closed_form_wlp(0.0), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_wlp(1.1), std::invalid_argument);
}

TEST_CASE("seesaw matches the closed form on the wlp grid") {
    for (int i = 1; i <= 10; ++i) {
        const double p = i / 10.0;
        const Matrix w2 = wl_p(p).matrix * wl_p(p).matrix;
        const SepMaxResult r = seesaw_max(w2, {2, 2}, 16, 42);
        CHECK(r.max_value == doctest::Approx(closed_form_wlp(p)).epsilon(1e-10));
        CHECK(r.converged);
        for (double v : r.restart_values) CHECK(v <= r.max_value + 1e-12);
    }
}

TEST_CASE("identity input maximizes at one") {
    const SepMaxResult r = seesaw_max(Matrix::Identity(6, 6), {2, 3}, 4, 1);
    CHECK(r.max_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximally mixed value is always a lower bound") {
    const Matrix w2 = wl_c().matrix * wl_c().matrix;
    const SepMaxResult r = seesaw_max(w2, {3, 3}, 8, 3);
    CHECK(r.max_value >= (w2.trace().real() / 9) - 1e-12);
}

TEST_CASE("agrees with the brute-force sphere grid") {
    for (double p : {0.3, 0.8}) {
        const Matrix w2 = wl_p(p).matrix * wl_p(p).matrix;
        const double brute = grid_search_2x2(w2, 50);
        const double seesaw = seesaw_max(w2, {2, 2}, 16, 42).max_value;
        CHECK(seesaw >= brute - 1e-12);
        CHECK(std::abs(seesaw - brute) <= 1e-3);
    }
    const Matrix wpsi = make_witness("wpsi_2x2", {}).matrix;
    const Matrix w2 = wpsi * wpsi;
    CHECK(std::abs(seesaw_max(w2, {2, 2}, 16, 42).max_value -
                   grid_search_2x2(w2, 50)) <= 1e-3);
}

TEST_CASE("wlc separable maximum is reached at a product basis state") {
    const Matrix w2 = wl_c().matrix * wl_c().matrix;
    const SepMaxResult r = seesaw_max(w2, {3, 3}, 32, 42);
    // |0>|1> gives Tr(W^2 rho) = (9/33)^2 directly
    CHECK(r.max_value == doctest::Approx(81.0 / 1089).epsilon(1e-12));
}

TEST_CASE("argmax vectors reproduce the maximum") {
    const Matrix w2 = wl_p(0.4).matrix * wl_p(0.4).matrix;
    const SepMaxResult r = seesaw_max(w2, {2, 2}, 16, 7);
    Vector ab(4);
    ab << r.argmax_a(0) * r.argmax_b(0), r.argmax_a(0) * r.argmax_b(1),
        r.argmax_a(1) * r.argmax_b(0), r.argmax_a(1) * r.argmax_b(1);
    CHECK((ab.adjoint() * w2 * ab)(0, 0).real() ==
          doctest::Approx(r.max_value).epsilon(1e-9));

    // zoo separable states never exceed the maximum
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix rho = random_separable_state({2, 2}, rng);
        CHECK((w2 * rho.matrix()).trace().real() <= r.max_value + 1e-8);
    }
}

TEST_CASE("bloch grid seeds") {
    const auto pairs = bloch_grid_seed({2, 2}, 6);
    CHECK(pairs.size() == 36 * 36);
    for (std::size_t i = 0; i < pairs.size(); i += 97) {
        CHECK_NOTHROW(bloch_state(pairs[i].first));
        CHECK_NOTHROW(bloch_state(pairs[i].second));
    }

    const auto qutrit_pairs = bloch_grid_seed({3, 3}, 2);
    CHECK(!qutrit_pairs.empty());
    for (const auto& [a, b] : qutrit_pairs) {
        CHECK_NOTHROW(bloch_state(a));
        CHECK_NOTHROW(bloch_state(b));
    }
    CHECK_THROWS_AS(bloch_grid_seed({2, 2}, 1), std::invalid_argument);
}

TEST_CASE("rejects non-psd input") {
    CHECK_THROWS_AS(seesaw_max(wl_p(0.5).matrix, {2, 2}, 4, 1), std::invalid_argument);
}

TEST_CASE("witness dispatch") {
    CHECK(sep_max_for_witness(wl_p(0.3)) == doctest::Approx(0.3725).epsilon(1e-14));
    CHECK(sep_max_for_witness(wl_c(), 16, 42) ==
          doctest::Approx(81.0 / 1089).epsilon(1e-10));
}
