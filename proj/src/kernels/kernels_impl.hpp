#pragma once

#include <cstddef>

namespace ppgeo::kernels {

namespace scalar_impl {
double max_affine(const double* px, const double* py, const double* g, std::size_t n, double x, double y,
                  std::size_t* argmax);
double weighted_abs_pow_sum(const double* w, const double* a, const double* b, std::size_t n, double p);
void lerp(const double* a, const double* b, std::size_t n, double t, double* out);
void pointwise_max(const double* a, const double* b, std::size_t n, double* out);
} // namespace scalar_impl

#if defined(PPGEO_HAVE_AVX2)
namespace avx2_impl {
double max_affine(const double* px, const double* py, const double* g, std::size_t n, double x, double y,
                  std::size_t* argmax);
double weighted_abs_pow_sum(const double* w, const double* a, const double* b, std::size_t n, double p);
void lerp(const double* a, const double* b, std::size_t n, double t, double* out);
void pointwise_max(const double* a, const double* b, std::size_t n, double* out);
} // namespace avx2_impl
#endif

} // namespace ppgeo::kernels
