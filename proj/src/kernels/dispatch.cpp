#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "ppgeo/kernels.hpp"

namespace ppgeo::kernels {

namespace {

constexpr KernelTable kScalar{
    "scalar",
    &scalar_impl::max_affine,
    &scalar_impl::weighted_abs_pow_sum,
    &scalar_impl::lerp,
    &scalar_impl::pointwise_max,
};

#if defined(PPGEO_HAVE_AVX2)
constexpr KernelTable kAvx2{
    "avx2",
    &avx2_impl::max_affine,
    &avx2_impl::weighted_abs_pow_sum,
    &avx2_impl::lerp,
    &avx2_impl::pointwise_max,
};
#endif

const KernelTable& select() {
    const char* env = std::getenv("PPGEO_SIMD");
    const std::string_view want = env ? env : "auto";
    if (want == "scalar") return kScalar;
    if (const KernelTable* t = avx2()) return *t;
    return kScalar;
}

} // namespace

const KernelTable& scalar() { return kScalar; }

const KernelTable* avx2() {
#if defined(PPGEO_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

} // namespace ppgeo::kernels
