#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace nlew {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

// Bipartite factor dimensions; every matrix paired with a DimPair acts on a
// (d1*d2)-dimensional space.
struct DimPair {
    int d1 = 0;
    int d2 = 0;

    int total() const { return d1 * d2; }
    bool operator==(const DimPair&) const = default;
};

enum class Subsystem { A, B };

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kImagTol = 1e-10;

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace nlew
