#pragma once

#include <cmath>
#include <utility>

namespace netadopt::detail {

// Golden-section maximization on [lo, hi].  The objective may return -inf
// for infeasible points; endpoints are included in the final comparison.
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double xtol,
                                     int max_iter = 200) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && b - a > xtol; ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    double best_x = x1, best_f = f1;
    if (f2 > best_f) { best_x = x2; best_f = f2; }
    const double flo = f(lo);
    if (flo > best_f) { best_x = lo; best_f = flo; }
    const double fhi = f(hi);
    if (fhi > best_f) { best_x = hi; best_f = fhi; }
    return {best_x, best_f};
}

}  // namespace netadopt::detail
