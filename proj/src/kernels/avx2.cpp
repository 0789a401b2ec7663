// AVX2+FMA kernels. Complex values are processed interleaved, two per
// 256-bit register: [re0, im0, re1, im1].

#include <immintrin.h>

#include "rqi/kernels.hpp"

namespace rqi::kernels::avx2 {

namespace {

inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// [w0, w0, w1, w1]
inline __m256d load_weights(const double* w) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w)), 0x50);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// a * b for two interleaved complex numbers.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

inline __m256d load_pair(const Complex* first, const Complex* second) {
  const __m128d lo = _mm_loadu_pd(reinterpret_cast<const double*>(first));
  const __m128d hi = _mm_loadu_pd(reinterpret_cast<const double*>(second));
  return _mm256_insertf128_pd(_mm256_castpd128_pd256(lo), hi, 1);
}

}  // namespace

void hermitian_gram(std::span<const Complex* const> planes, const double* weights, std::size_t n,
                    double scale, Complex* out) {
  const std::size_t k = planes.size();
  const std::size_t n2 = n & ~std::size_t(1);
  const __m256d ones = _mm256_set1_pd(1.0);
  for (std::size_t a = 0; a < k; ++a) {
    const Complex* xa = planes[a];
    for (std::size_t b = a; b < k; ++b) {
      const Complex* xb = planes[b];
      __m256d p = _mm256_setzero_pd();
      __m256d q = _mm256_setzero_pd();
      for (std::size_t l = 0; l < n2; l += 2) {
        const __m256d w = weights ? load_weights(weights + l) : ones;
        const __m256d va = _mm256_mul_pd(load2(xa + l), w);
        const __m256d vb = load2(xb + l);
        p = _mm256_fmadd_pd(va, vb, p);
        q = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), q);
      }
      alignas(32) double qs[4];
      _mm256_store_pd(qs, q);
      double re = hsum(p);
      double im = (qs[1] - qs[0]) + (qs[3] - qs[2]);
      if (n2 < n) {
        const double w = weights ? weights[n2] : 1.0;
        const double ar = xa[n2].real(), ai = xa[n2].imag();
        const double br = xb[n2].real(), bi = xb[n2].imag();
        re += w * (ar * br + ai * bi);
        im += w * (ai * br - ar * bi);
      }
      if (a == b) {
        out[a * k + a] += scale * re;
      } else {
        out[a * k + b] += Complex(scale * re, scale * im);
        out[b * k + a] += Complex(scale * re, -scale * im);
      }
    }
  }
}

void apply_2x2(const Complex* mats, std::size_t mat_stride, Complex* x0, Complex* x1,
               std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t l = 0; l < n2; l += 2) {
    const Complex* m0 = mats + 4 * l * mat_stride;
    const Complex* m1 = mats + 4 * (l + 1) * mat_stride;
    const __m256d a = load2(x0 + l);
    const __m256d b = load2(x1 + l);
    const __m256d y0 = _mm256_add_pd(cmul(load_pair(m0 + 0, m1 + 0), a), cmul(load_pair(m0 + 1, m1 + 1), b));
    const __m256d y1 = _mm256_add_pd(cmul(load_pair(m0 + 2, m1 + 2), a), cmul(load_pair(m0 + 3, m1 + 3), b));
    store2(x0 + l, y0);
    store2(x1 + l, y1);
  }
  if (n2 < n) scalar::apply_2x2(mats + 4 * n2 * mat_stride, mat_stride, x0 + n2, x1 + n2, n - n2);
}

}  // namespace rqi::kernels::avx2
