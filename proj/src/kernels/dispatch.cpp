#include <cstdlib>
#include <cstring>

#include "rqi/kernels.hpp"

namespace rqi::kernels {

const char* to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(RQI_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() {
  static const Backend backend = [] {
    const char* forced = std::getenv("RQI_KERNELS");
    if (forced && std::strcmp(forced, "scalar") == 0) return Backend::scalar;
    return avx2_available() ? Backend::avx2 : Backend::scalar;
  }();
  return backend;
}

void hermitian_gram(std::span<const Complex* const> planes, const double* weights, std::size_t n,
                    double scale, Complex* out) {
#if defined(RQI_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::hermitian_gram(planes, weights, n, scale, out);
#endif
  scalar::hermitian_gram(planes, weights, n, scale, out);
}

void apply_2x2(const Complex* mats, std::size_t mat_stride, Complex* x0, Complex* x1,
               std::size_t n) {
#if defined(RQI_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::apply_2x2(mats, mat_stride, x0, x1, n);
#endif
  scalar::apply_2x2(mats, mat_stride, x0, x1, n);
}

}  // namespace rqi::kernels
