// Compiled with -mavx2 (and without -mfma) so that products and sums round
// exactly like the scalar reference.
#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace ppgeo::kernels::avx2_impl {

namespace {

inline double reduce_argmax(__m256d best, __m256d bidx, std::size_t* argmax) {
    alignas(32) double vals[4];
    alignas(32) double idxs[4];
    _mm256_store_pd(vals, best);
    _mm256_store_pd(idxs, bidx);
    double b = vals[0];
    double i = idxs[0];
    for (int l = 1; l < 4; ++l) {
        if (vals[l] > b || (vals[l] == b && idxs[l] < i)) {
            b = vals[l];
            i = idxs[l];
        }
    }
    if (argmax) *argmax = static_cast<std::size_t>(i);
    return b;
}

} // namespace

double max_affine(const double* px, const double* py, const double* g, std::size_t n, double x, double y,
                  std::size_t* argmax) {
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d vy = _mm256_set1_pd(y);
    const __m256d four = _mm256_set1_pd(4.0);
    __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    __m256d bidx = _mm256_setzero_pd();
    __m256d cur = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    if (py == nullptr) {
        for (std::size_t j = 0; j < n4; j += 4) {
            const __m256d v = _mm256_sub_pd(_mm256_mul_pd(_mm256_loadu_pd(px + j), vx), _mm256_loadu_pd(g + j));
            const __m256d m = _mm256_cmp_pd(v, best, _CMP_GT_OQ);
            best = _mm256_blendv_pd(best, v, m);
            bidx = _mm256_blendv_pd(bidx, cur, m);
            cur = _mm256_add_pd(cur, four);
        }
    } else {
        for (std::size_t j = 0; j < n4; j += 4) {
            const __m256d lin = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(px + j), vx),
                                              _mm256_mul_pd(_mm256_loadu_pd(py + j), vy));
            const __m256d v = _mm256_sub_pd(lin, _mm256_loadu_pd(g + j));
            const __m256d m = _mm256_cmp_pd(v, best, _CMP_GT_OQ);
            best = _mm256_blendv_pd(best, v, m);
            bidx = _mm256_blendv_pd(bidx, cur, m);
            cur = _mm256_add_pd(cur, four);
        }
    }
    std::size_t idx = 0;
    double b = reduce_argmax(best, bidx, &idx);
    for (std::size_t j = n4; j < n; ++j) {
        const double v = py == nullptr ? px[j] * x - g[j] : (px[j] * x + py[j] * y) - g[j];
        if (v > b) {
            b = v;
            idx = j;
        }
    }
    if (argmax) *argmax = idx;
    return b;
}

double weighted_abs_pow_sum(const double* w, const double* a, const double* b, std::size_t n, double p) {
    if (p != 1.0 && p != 2.0) return scalar_impl::weighted_abs_pow_sum(w, a, b, n, p);
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < n4; j += 4) {
        __m256d d = _mm256_loadu_pd(a + j);
        if (b) d = _mm256_sub_pd(d, _mm256_loadu_pd(b + j));
        d = _mm256_andnot_pd(sign, d);
        const __m256d term = p == 1.0 ? d : _mm256_mul_pd(d, d);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + j), term));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (std::size_t j = n4; j < n; ++j) {
        const double d = std::abs(b ? a[j] - b[j] : a[j]);
        sum += w[j] * (p == 1.0 ? d : d * d);
    }
    return sum;
}

void lerp(const double* a, const double* b, std::size_t n, double t, double* out) {
    if (t == 0.0 || t == 1.0) {
        scalar_impl::lerp(a, b, n, t, out);
        return;
    }
    const std::size_t n4 = n & ~std::size_t{3};
    const double s = 1.0 - t;
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d vt = _mm256_set1_pd(t);
    for (std::size_t j = 0; j < n4; j += 4) {
        const __m256d r =
            _mm256_add_pd(_mm256_mul_pd(vs, _mm256_loadu_pd(a + j)), _mm256_mul_pd(vt, _mm256_loadu_pd(b + j)));
        _mm256_storeu_pd(out + j, r);
    }
    for (std::size_t j = n4; j < n; ++j) out[j] = s * a[j] + t * b[j];
}

void pointwise_max(const double* a, const double* b, std::size_t n, double* out) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t j = 0; j < n4; j += 4)
        _mm256_storeu_pd(out + j, _mm256_max_pd(_mm256_loadu_pd(b + j), _mm256_loadu_pd(a + j)));
    for (std::size_t j = n4; j < n; ++j) out[j] = a[j] < b[j] ? b[j] : a[j];
}

} // namespace ppgeo::kernels::avx2_impl
