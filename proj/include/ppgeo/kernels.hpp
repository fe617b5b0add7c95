#pragma once

#include <cstddef>

namespace ppgeo::kernels {

// Data-parallel inner loops. Every entry has a scalar reference version and,
// on x86-64, an AVX2 version picked at runtime. max_affine, lerp and
// pointwise_max are bit-identical across variants (no FMA contraction, same
// operation order, first-index tie break). weighted_abs_pow_sum reorders
// the summation and agrees to rounding.
struct KernelTable {
    const char* name;

    // max_j (px[j] * x + py[j] * y - g[j]); py == nullptr selects the 1-D form
    // px[j] * x - g[j]. g[j] = +inf contributes -inf. Writes the first index
    // attaining the maximum to *argmax when non-null.
    double (*max_affine)(const double* px, const double* py, const double* g, std::size_t n, double x, double y,
                         std::size_t* argmax);

    // sum_j w[j] * |a[j] - b[j]|^p; b == nullptr means b = 0.
    double (*weighted_abs_pow_sum)(const double* w, const double* a, const double* b, std::size_t n, double p);

    // out[j] = (1 - t) a[j] + t b[j]; t == 0 and t == 1 copy a and b exactly.
    void (*lerp)(const double* a, const double* b, std::size_t n, double t, double* out);

    void (*pointwise_max)(const double* a, const double* b, std::size_t n, double* out);
};

const KernelTable& scalar();

/// AVX2 table, or nullptr when not compiled in or the CPU lacks AVX2.
const KernelTable* avx2();

/// Table used by the library. Honors PPGEO_SIMD=scalar|avx2|auto (default auto).
const KernelTable& active();

} // namespace ppgeo::kernels
