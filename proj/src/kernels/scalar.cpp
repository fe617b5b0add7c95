#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace ppgeo::kernels::scalar_impl {

double max_affine(const double* px, const double* py, const double* g, std::size_t n, double x, double y,
                  std::size_t* argmax) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t idx = 0;
    if (py == nullptr) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = px[j] * x - g[j];
            if (v > best) {
                best = v;
                idx = j;
            }
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = (px[j] * x + py[j] * y) - g[j];
            if (v > best) {
                best = v;
                idx = j;
            }
        }
    }
    if (argmax) *argmax = idx;
    return best;
}

double weighted_abs_pow_sum(const double* w, const double* a, const double* b, std::size_t n, double p) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = std::abs(b ? a[j] - b[j] : a[j]);
        double term;
        if (p == 1.0)
            term = d;
        else if (p == 2.0)
            term = d * d;
        else
            term = std::pow(d, p);
        sum += w[j] * term;
    }
    return sum;
}

void lerp(const double* a, const double* b, std::size_t n, double t, double* out) {
    if (t == 0.0) {
        for (std::size_t j = 0; j < n; ++j) out[j] = a[j];
        return;
    }
    if (t == 1.0) {
        for (std::size_t j = 0; j < n; ++j) out[j] = b[j];
        return;
    }
    const double s = 1.0 - t;
    for (std::size_t j = 0; j < n; ++j) out[j] = s * a[j] + t * b[j];
}

void pointwise_max(const double* a, const double* b, std::size_t n, double* out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = a[j] < b[j] ? b[j] : a[j];
}

} // namespace ppgeo::kernels::scalar_impl
