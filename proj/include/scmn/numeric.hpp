#ifndef SCMN_NUMERIC_HPP
#define SCMN_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace scmn {

// x^n for integer n >= 0 by squaring; reproducible across platforms,
// unlike std::pow whose last-ulp behaviour is libm-dependent.
inline double powi(double x, int n) {
    double r = 1.0;
    double b = x;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

// 1 - base^expo for base in [0,1], accurate when base is close to 1.
inline double one_minus_pow(double base, double expo) {
    if (base <= 0.0) return 1.0;
    return -std::expm1(expo * std::log(base));
}

// Adaptive Simpson quadrature on [a,b] with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, int max_depth = 40);

// Root of a continuous monotone function on [lo,hi] by bisection.
// Requires f(lo) and f(hi) of opposite sign (or zero); returns the midpoint
// of the final bracket once its width is below tol_x.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol_x = 1e-10, int max_iter = 200);

// Parallel index sweep: calls body(i) for i in [0,n). Serial when the range
// is small or when SCMN_THREADS=1. Deterministic: workers write disjoint
// indices, never shared accumulators.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Worker cap from SCMN_THREADS (0 or unset = hardware concurrency).
unsigned thread_cap();

}  // namespace scmn

#endif
