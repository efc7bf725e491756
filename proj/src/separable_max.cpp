#include "nlew/separable_max.hpp"

#include <cmath>

#include "nlew/parallel.hpp"
#include "nlew/rng.hpp"
#include "nlew/tensor_algebra.hpp"

namespace nlew {

namespace {

constexpr double kImproveTol = 1e-12;
constexpr int kMaxIters = 500;

// <a (x) b | W2 | a (x) b>
double objective(const Matrix& w2, const Vector& a, const Vector& b) {
    Vector prod(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        prod.segment(i * b.size(), b.size()) = a(i) * b;
    return (prod.adjoint() * w2 * prod)(0, 0).real();
}

// Conditional operator on B for fixed |a>: (<a| (x) I) W2 (|a> (x) I).
Matrix conditional_b(const Matrix& w2, DimPair dims, const Vector& a) {
    Matrix kb = Matrix::Zero(dims.d2, dims.d2);
    for (int i = 0; i < dims.d1; ++i)
        for (int j = 0; j < dims.d1; ++j)
            kb += std::conj(a(i)) * a(j) *
                  w2.block(i * dims.d2, j * dims.d2, dims.d2, dims.d2);
    return kb;
}

Matrix conditional_a(const Matrix& w2, DimPair dims, const Vector& b) {
    Matrix ka = Matrix::Zero(dims.d1, dims.d1);
    for (int i = 0; i < dims.d1; ++i)
        for (int j = 0; j < dims.d1; ++j)
            ka(i, j) = (b.adjoint() *
                        w2.block(i * dims.d2, j * dims.d2, dims.d2, dims.d2) * b)(0, 0);
    return ka;
}

Vector top_eigenvector(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
    return solver.eigenvectors().col(h.rows() - 1);
}

struct RunResult {
    double value = 0.0;
    Vector a, b;
    bool converged = false;
};

RunResult run_from(const Matrix& w2, DimPair dims, Vector a, Vector b) {
    double prev = objective(w2, a, b);
    for (int it = 0; it < kMaxIters; ++it) {
        b = top_eigenvector(conditional_b(w2, dims, a));
        a = top_eigenvector(conditional_a(w2, dims, b));
        const double val = objective(w2, a, b);
        if (val < prev - 1e-10)
            throw std::runtime_error("seesaw_max: objective decreased");
        if (val - prev < kImproveTol) return {val, a, b, true};
        prev = val;
    }
    return {prev, a, b, false};
}

Vector seed_vector_from_bloch(const BlochVector& b) {
    // Seeds start the pure-state iteration from the dominant eigenvector of
    // the reconstructed Bloch state.
    return top_eigenvector(bloch_state(b));
}

std::vector<BlochVector> side_seeds(int d, int resolution) {
    std::vector<BlochVector> out;
    if (d == 2) {
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j) {
                const double theta = M_PI * (i + 0.5) / resolution;
                const double phi = 2 * M_PI * j / resolution;
                out.push_back({2,
                               {std::sin(theta) * std::cos(phi),
                                std::sin(theta) * std::sin(phi), std::cos(theta)}});
            }
        return out;
    }
    if (d == 3) {
        // Axis directions scaled to 0.85, inside the inscribed ball radius
        // sqrt(3)/2, so every seed reconstructs to a valid state.
        const double r = 0.85;
        for (int i = 0; i < 8; ++i)
            for (double sign : {1.0, -1.0}) {
                std::vector<double> c(8, 0.0);
                c[i] = sign * r;
                out.push_back({3, std::move(c)});
            }
        return out;
    }
    return out;
}

}  // namespace

double closed_form_wlp(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("closed_form_wlp: parameter must be in (0, 1]");
    return (2 - 2 * p + p * p) / 4;
}

std::vector<std::pair<BlochVector, BlochVector>> bloch_grid_seed(DimPair dims,
                                                                 int resolution) {
    require(resolution >= 2, "bloch_grid_seed: resolution must be >= 2");
    const auto sa = side_seeds(dims.d1, resolution);
    const auto sb = side_seeds(dims.d2, resolution);
    std::vector<std::pair<BlochVector, BlochVector>> out;
    out.reserve(sa.size() * sb.size());
    for (const auto& a : sa)
        for (const auto& b : sb) out.emplace_back(a, b);
    return out;
}

SepMaxResult seesaw_max(const Matrix& w_squared, DimPair dims, int restarts,
                        uint64_t seed) {
    require(restarts >= 1, "seesaw_max: need at least one restart");
    require(w_squared.rows() == dims.total() && w_squared.cols() == dims.total(),
            "seesaw_max: matrix side must equal d1*d2");
    if (!is_hermitian(w_squared) || hermitian_spectrum(w_squared).min() < -kPsdTol)
        throw std::invalid_argument("seesaw_max: input must be PSD");

    std::vector<std::pair<Vector, Vector>> starts;
    if (dims.d1 <= 3 && dims.d2 <= 3) {
        for (const auto& [ba, bb] : bloch_grid_seed(dims, 4))
            starts.emplace_back(seed_vector_from_bloch(ba), seed_vector_from_bloch(bb));
    }
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(split_seed(seed, r));
        starts.emplace_back(haar_random_state(dims.d1, rng),
                            haar_random_state(dims.d2, rng));
    }

    std::vector<RunResult> runs(starts.size());
    parallel_for(static_cast<int>(starts.size()), [&](int i) {
        runs[i] = run_from(w_squared, dims, starts[i].first, starts[i].second);
    });

    SepMaxResult result;
    result.restarts_used = static_cast<int>(starts.size());
    result.max_value = -std::numeric_limits<double>::infinity();
    for (const auto& run : runs) {
        result.restart_values.push_back(run.value);
        result.converged = result.converged && run.converged;
        if (run.value > result.max_value) {
            result.max_value = run.value;
            result.argmax_a = run.a;
            result.argmax_b = run.b;
        }
    }
    return result;
}

double sep_max_for_witness(const WitnessOperator& w, int restarts, uint64_t seed) {
    if (w.family == "wlp") return closed_form_wlp(w.params.at(0));
    return seesaw_max(w.matrix * w.matrix, w.dims, restarts, seed).max_value;
}

}  // namespace nlew
