// Reference kernels. Complex products are written out by hand so the
// compiler does not route them through the NaN-checking library multiply.

#include "rqi/kernels.hpp"

namespace rqi::kernels::scalar {

void hermitian_gram(std::span<const Complex* const> planes, const double* weights, std::size_t n,
                    double scale, Complex* out) {
  const std::size_t k = planes.size();
  for (std::size_t a = 0; a < k; ++a) {
    const Complex* xa = planes[a];
    {
      double acc = 0;
      for (std::size_t l = 0; l < n; ++l) {
        const double w = weights ? weights[l] : 1.0;
        acc += w * (xa[l].real() * xa[l].real() + xa[l].imag() * xa[l].imag());
      }
      out[a * k + a] += scale * acc;
    }
    for (std::size_t b = a + 1; b < k; ++b) {
      const Complex* xb = planes[b];
      double re = 0, im = 0;
      for (std::size_t l = 0; l < n; ++l) {
        const double w = weights ? weights[l] : 1.0;
        const double ar = xa[l].real(), ai = xa[l].imag();
        const double br = xb[l].real(), bi = xb[l].imag();
        re += w * (ar * br + ai * bi);
        im += w * (ai * br - ar * bi);
      }
      out[a * k + b] += Complex(scale * re, scale * im);
      out[b * k + a] += Complex(scale * re, -scale * im);
    }
  }
}

void apply_2x2(const Complex* mats, std::size_t mat_stride, Complex* x0, Complex* x1,
               std::size_t n) {
  auto mul = [](Complex p, Complex q) {
    return Complex(p.real() * q.real() - p.imag() * q.imag(),
                   p.real() * q.imag() + p.imag() * q.real());
  };
  for (std::size_t l = 0; l < n; ++l) {
    const Complex* m = mats + 4 * l * mat_stride;
    const Complex a = x0[l], b = x1[l];
    x0[l] = mul(m[0], a) + mul(m[1], b);
    x1[l] = mul(m[2], a) + mul(m[3], b);
  }
}

}  // namespace rqi::kernels::scalar
