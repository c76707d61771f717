#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "symtomo/simd/kernels.hpp"

namespace symtomo::simd {

namespace {

Backend detect() {
  if (const char* env = std::getenv("SYMTOMO_SIMD"); env && std::string_view(env) == "scalar") {
    return Backend::scalar;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

void check_sizes(std::size_t n, std::initializer_list<std::size_t> others) {
  for (auto m : others) {
    if (m != n) throw std::invalid_argument("simd kernel: span sizes differ");
  }
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

Backend set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported()) b = Backend::scalar;
  current().store(b, std::memory_order_relaxed);
  return b;
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

ComplexSum complex_dot(std::span<const double> ar, std::span<const double> ai,
                       std::span<const double> br, std::span<const double> bi) {
  check_sizes(ar.size(), {ai.size(), br.size(), bi.size()});
  if (active_backend() == Backend::avx2) {
    return avx2::complex_dot(ar.data(), ai.data(), br.data(), bi.data(), ar.size());
  }
  return scalar::complex_dot(ar.data(), ai.data(), br.data(), bi.data(), ar.size());
}

ComplexSum real_complex_dot(std::span<const double> a, std::span<const double> br,
                            std::span<const double> bi) {
  check_sizes(a.size(), {br.size(), bi.size()});
  if (active_backend() == Backend::avx2) {
    return avx2::real_complex_dot(a.data(), br.data(), bi.data(), a.size());
  }
  return scalar::real_complex_dot(a.data(), br.data(), bi.data(), a.size());
}

}  // namespace symtomo::simd
