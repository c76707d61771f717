// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime CPU check.

#include "symtomo/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace symtomo::simd::avx2 {

namespace {
// Lane order matches the scalar reference: (l0 + l2) + (l1 + l3).
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d pair = _mm_add_pd(lo, hi);  // (l0+l2, l1+l3)
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}
}  // namespace

ComplexSum complex_dot(const double* ar, const double* ai, const double* br, const double* bi,
                       std::size_t n) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d xr = _mm256_loadu_pd(ar + k);
    const __m256d xi = _mm256_loadu_pd(ai + k);
    const __m256d yr = _mm256_loadu_pd(br + k);
    const __m256d yi = _mm256_loadu_pd(bi + k);
    re = _mm256_add_pd(re, _mm256_fmsub_pd(xr, yr, _mm256_mul_pd(xi, yi)));
    im = _mm256_add_pd(im, _mm256_fmadd_pd(xr, yi, _mm256_mul_pd(xi, yr)));
  }
  ComplexSum s{hsum(re), hsum(im)};
  for (; k < n; ++k) {
    s.re += ar[k] * br[k] - ai[k] * bi[k];
    s.im += ar[k] * bi[k] + ai[k] * br[k];
  }
  return s;
}

ComplexSum real_complex_dot(const double* a, const double* br, const double* bi, std::size_t n) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_loadu_pd(a + k);
    re = _mm256_fmadd_pd(x, _mm256_loadu_pd(br + k), re);
    im = _mm256_fmadd_pd(x, _mm256_loadu_pd(bi + k), im);
  }
  ComplexSum s{hsum(re), hsum(im)};
  for (; k < n; ++k) {
    s.re += a[k] * br[k];
    s.im += a[k] * bi[k];
  }
  return s;
}

}  // namespace symtomo::simd::avx2

#else

namespace symtomo::simd::avx2 {
ComplexSum complex_dot(const double* ar, const double* ai, const double* br, const double* bi,
                       std::size_t n) {
  return scalar::complex_dot(ar, ai, br, bi, n);
}
ComplexSum real_complex_dot(const double* a, const double* br, const double* bi, std::size_t n) {
  return scalar::real_complex_dot(a, br, bi, n);
}
}  // namespace symtomo::simd::avx2

#endif
