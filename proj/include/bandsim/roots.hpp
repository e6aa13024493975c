#pragma once

#include "bandsim/errors.hpp"

#include <cmath>
#include <string>

namespace bandsim {

/// Safeguarded Newton within a bracketing interval. `fdf` must return a
/// pair {f(x), f'(x)}. The bracket [lo, hi] must straddle a sign change or
/// BracketFailure is thrown. Every fourth iteration forces a bisection step,
/// and Newton steps that leave the bracket fall back to bisection, so the
/// interval shrinks unconditionally. Stops when the interval width drops
/// below xtol (relative to |x|, with an absolute floor).
template <typename FDF>
double find_root(FDF&& fdf, double lo, double hi, double xtol = 1e-13,
                 const char* what = "find_root") {
    auto [flo, dlo] = fdf(lo);
    (void)dlo;
    auto [fhi, dhi] = fdf(hi);
    (void)dhi;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw BracketFailure(std::string(what) + ": no sign change on [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "], f = " + std::to_string(flo) + " and " +
                             std::to_string(fhi));
    }
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        auto [fx, dfx] = fdf(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        double width = hi - lo;
        if (width <= xtol * std::max(1.0, std::min(std::abs(lo), std::abs(hi)))) {
            return 0.5 * (lo + hi);
        }
        double next;
        bool force_bisect = (iter % 4 == 3);
        if (!force_bisect && dfx != 0.0 && std::isfinite(dfx)) {
            next = x - fx / dfx;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        } else {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    return 0.5 * (lo + hi);
}

} // namespace bandsim
