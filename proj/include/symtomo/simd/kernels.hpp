#pragma once

// Complex dot products in split (re/im array) layout. These are the inner
// loops of the Wigner transform, the characteristic-function integrals and the
// tomographic inversion. Each has a scalar reference and an AVX2+FMA variant;
// the public entry points dispatch at runtime.

#include <span>
#include <string_view>

namespace symtomo::simd {

struct ComplexSum {
  double re = 0.0;
  double im = 0.0;
};

enum class Backend { scalar, avx2 };

/// sum_k (ar[k] + i ai[k]) * (br[k] + i bi[k]). All spans must have equal size.
ComplexSum complex_dot(std::span<const double> ar, std::span<const double> ai,
                       std::span<const double> br, std::span<const double> bi);

/// sum_k a[k] * (br[k] + i bi[k]).
ComplexSum real_complex_dot(std::span<const double> a, std::span<const double> br,
                            std::span<const double> bi);

/// Backend used by the dispatching entry points. Defaults to the best one the
/// CPU supports; SYMTOMO_SIMD=scalar in the environment forces the reference.
Backend active_backend();
/// Override the dispatch choice (tests). Requesting avx2 on a CPU without it
/// falls back to scalar; the return value is the backend actually selected.
Backend set_backend(Backend b);
bool avx2_supported();
std::string_view backend_name(Backend b);

namespace scalar {
ComplexSum complex_dot(const double* ar, const double* ai, const double* br, const double* bi,
                       std::size_t n);
ComplexSum real_complex_dot(const double* a, const double* br, const double* bi, std::size_t n);
}  // namespace scalar

namespace avx2 {
ComplexSum complex_dot(const double* ar, const double* ai, const double* br, const double* bi,
                       std::size_t n);
ComplexSum real_complex_dot(const double* a, const double* br, const double* bi, std::size_t n);
}  // namespace avx2

}  // namespace symtomo::simd
