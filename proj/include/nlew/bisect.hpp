#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace nlew {

// Root of f on [lo, hi]; f(lo) and f(hi) must have opposite signs. Refines
// until the bracket is narrower than tol.
inline double bisect_root(const std::function<double(double)>& f, double lo,
                          double hi, double tol = 1e-6, int max_iters = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo < 0) == (fhi < 0))
        throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    for (int i = 0; i < max_iters && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace nlew
