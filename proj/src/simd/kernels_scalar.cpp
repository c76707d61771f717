#include "symtomo/simd/kernels.hpp"

namespace symtomo::simd::scalar {

// Four interleaved partial sums, reduced in the same order as the AVX2 lanes.
ComplexSum complex_dot(const double* ar, const double* ai, const double* br, const double* bi,
                       std::size_t n) {
  double re[4] = {0, 0, 0, 0};
  double im[4] = {0, 0, 0, 0};
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      re[l] += ar[k + l] * br[k + l] - ai[k + l] * bi[k + l];
      im[l] += ar[k + l] * bi[k + l] + ai[k + l] * br[k + l];
    }
  }
  ComplexSum s{(re[0] + re[2]) + (re[1] + re[3]), (im[0] + im[2]) + (im[1] + im[3])};
  for (; k < n; ++k) {
    s.re += ar[k] * br[k] - ai[k] * bi[k];
    s.im += ar[k] * bi[k] + ai[k] * br[k];
  }
  return s;
}

ComplexSum real_complex_dot(const double* a, const double* br, const double* bi, std::size_t n) {
  double re[4] = {0, 0, 0, 0};
  double im[4] = {0, 0, 0, 0};
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      re[l] += a[k + l] * br[k + l];
      im[l] += a[k + l] * bi[k + l];
    }
  }
  ComplexSum s{(re[0] + re[2]) + (re[1] + re[3]), (im[0] + im[2]) + (im[1] + im[3])};
  for (; k < n; ++k) {
    s.re += a[k] * br[k];
    s.im += a[k] * bi[k];
  }
  return s;
}

}  // namespace symtomo::simd::scalar
