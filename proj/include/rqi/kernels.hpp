// kernels.hpp
// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant; the variant is chosen
// once at runtime from CPUID. Setting RQI_KERNELS=scalar forces the reference
// path. Both paths reduce in a fixed order, so results are reproducible run to
// run (but differ between backends at the rounding level).

#pragma once

#include <cstddef>
#include <span>

#include "rqi/types.hpp"

namespace rqi::kernels {

enum class Backend { scalar, avx2 };

const char* to_string(Backend b);
bool avx2_available();
Backend active_backend();

/// out[a*K + b] += scale * Σ_l w[l] x_a[l] conj(x_b[l]) for K = planes.size().
/// `weights` may be null (all ones). `out` holds K*K values, row-major.
void hermitian_gram(std::span<const Complex* const> planes, const double* weights, std::size_t n,
                    double scale, Complex* out);

/// (x0[l], x1[l]) ← M_l (x0[l], x1[l]) where M_l is the row-major 2x2 complex
/// matrix at mats + 4*l*mat_stride (mat_stride = 0 applies one matrix to all).
void apply_2x2(const Complex* mats, std::size_t mat_stride, Complex* x0, Complex* x1,
               std::size_t n);

namespace scalar {
void hermitian_gram(std::span<const Complex* const> planes, const double* weights, std::size_t n,
                    double scale, Complex* out);
void apply_2x2(const Complex* mats, std::size_t mat_stride, Complex* x0, Complex* x1,
               std::size_t n);
}  // namespace scalar

#if defined(RQI_HAVE_AVX2)
namespace avx2 {
void hermitian_gram(std::span<const Complex* const> planes, const double* weights, std::size_t n,
                    double scale, Complex* out);
void apply_2x2(const Complex* mats, std::size_t mat_stride, Complex* x0, Complex* x1,
               std::size_t n);
}  // namespace avx2
#endif

}  // namespace rqi::kernels
