#pragma once

// Independent reference computations used only by tests. Everything here is
// deliberately naive: quadratic or cubic loops in long double.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "ppgeo/grid.hpp"

namespace oracle {

inline std::vector<double> conjugate(std::span<const double> nodes, std::span<const double> values,
                                     std::span<const double> slopes) {
    std::vector<double> out(slopes.size());
    for (std::size_t q = 0; q < slopes.size(); ++q) {
        long double best = -std::numeric_limits<long double>::infinity();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (values[i] == std::numeric_limits<double>::infinity()) continue;
            best = std::max(best, static_cast<long double>(slopes[q]) * nodes[i] - values[i]);
        }
        out[q] = static_cast<double>(best);
    }
    return out;
}

/// 2-D conjugate by direct maximization over all nodes (x-fastest layout).
inline std::vector<double> conjugate_2d(std::span<const double> xs, std::span<const double> ys,
                                        std::span<const double> values, std::span<const double> sx,
                                        std::span<const double> sy) {
    std::vector<double> out(sx.size() * sy.size());
    for (std::size_t b = 0; b < sy.size(); ++b)
        for (std::size_t a = 0; a < sx.size(); ++a) {
            long double best = -std::numeric_limits<long double>::infinity();
            for (std::size_t j = 0; j < ys.size(); ++j)
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const double v = values[j * xs.size() + i];
                    if (v == std::numeric_limits<double>::infinity()) continue;
                    best = std::max(best, static_cast<long double>(sx[a]) * xs[i] +
                                              static_cast<long double>(sy[b]) * ys[j] - v);
                }
            out[b * sx.size() + a] = static_cast<double>(best);
        }
    return out;
}

/// Lower convex hull at each node: min over chords spanning it.
inline std::vector<double> lower_hull(std::span<const double> nodes, std::span<const double> values) {
    const std::size_t n = nodes.size();
    std::vector<double> out(values.begin(), values.end());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a <= i; ++a)
            for (std::size_t b = i; b < n; ++b) {
                if (a == b) continue;
                const long double t = (static_cast<long double>(nodes[i]) - nodes[a]) / (nodes[b] - nodes[a]);
                const long double v = values[a] + t * (static_cast<long double>(values[b]) - values[a]);
                out[i] = std::min(out[i], static_cast<double>(v));
            }
    return out;
}

/// Simpson's rule on [a, b] with 2m panels.
template <class F>
double simpson(F&& f, double a, double b, int m = 20000) {
    const int n = 2 * m;
    const long double h = (static_cast<long double>(b) - a) / n;
    long double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(static_cast<double>(a + i * h));
    return static_cast<double>(s * h / 3.0L);
}

} // namespace oracle
