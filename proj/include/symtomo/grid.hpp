#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "symtomo/error.hpp"

namespace symtomo {

/// Uniform grid of `n` points spanning [min, max] inclusive.
struct UniformGrid {
  double min = 0.0;
  double max = 1.0;
  std::size_t n = 2;

  UniformGrid() = default;
  UniformGrid(double lo, double hi, std::size_t count) : min(lo), max(hi), n(count) {
    if (!(hi > lo) || count < 2 || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw ValidationError("grid requires max > min and n >= 2");
    }
  }

  double spacing() const { return (max - min) / static_cast<double>(n - 1); }
  double operator[](std::size_t i) const { return min + spacing() * static_cast<double>(i); }
  std::size_t size() const { return n; }
  std::vector<double> points() const {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (*this)[i];
    return v;
  }

  /// Grid with spacing close to `step` (never coarser) covering [lo, hi].
  static UniformGrid with_step(double lo, double hi, double step) {
    auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
    return UniformGrid(lo, hi, count < 2 ? 2 : count);
  }
  /// Grid centred on zero with exact spacing `step` and at least `half_width` on each side.
  static UniformGrid symmetric(double half_width, double step) {
    auto half = static_cast<std::size_t>(std::ceil(half_width / step));
    return UniformGrid(-step * static_cast<double>(half), step * static_cast<double>(half), 2 * half + 1);
  }
};

}  // namespace symtomo
