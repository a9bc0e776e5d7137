#include "scmn/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace scmn {

namespace {

double simpson_panel(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b,
             double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_panel(f, a, fa, m, fm, lm, flm);
    const double right = simpson_panel(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson_panel(f, a, fa, b, fb, m, fm);
    return adapt(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol_x, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    }
    for (int it = 0; it < max_iter && (hi - lo) > tol_x; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at double resolution
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

unsigned thread_cap() {
    if (const char* env = std::getenv("SCMN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned cap = thread_cap();
    constexpr std::size_t kMinPerWorker = 256;
    const std::size_t workers =
        std::min<std::size_t>(cap, std::max<std::size_t>(1, n / kMinPerWorker));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t i0 = w * chunk;
        const std::size_t i1 = std::min(n, i0 + chunk);
        if (i0 >= i1) break;
        pool.emplace_back([&body, i0, i1] {
            for (std::size_t i = i0; i < i1; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace scmn
