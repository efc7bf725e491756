#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nlew/types.hpp"

namespace nlew {

// Derives an independent stream seed from a master seed and an index, so
// batched sampling stays reproducible regardless of evaluation order.
inline uint64_t split_seed(uint64_t master, uint64_t index) {
    uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Vector haar_random_state(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v /= v.norm();
    return v;
}

// Uniform sample from the probability simplex (flat Dirichlet).
inline std::vector<double> dirichlet_weights(int k, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        w[i] = expo(rng);
        sum += w[i];
    }
    for (double& x : w) x /= sum;
    return w;
}

inline Matrix random_complex(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline Matrix random_hermitian(int d, std::mt19937_64& rng) {
    Matrix g = random_complex(d, d, rng);
    return 0.5 * (g + g.adjoint());
}

inline Matrix random_psd(int d, std::mt19937_64& rng) {
    Matrix g = random_complex(d, d, rng);
    return g * g.adjoint();
}

// Random density matrix (PSD, unit trace).
inline Matrix random_density(int d, std::mt19937_64& rng) {
    Matrix p = random_psd(d, rng);
    return p / p.trace().real();
}

}  // namespace nlew
