#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size real systems.
//
// Besides the embedded error estimate, every accepted step is checked against
// the cubic Hermite interpolant built from the endpoint values and slopes: the
// interpolant's midpoint must agree with an independent half step to within
// the same tolerance. Callers can therefore interpolate the returned samples
// with `hermite` and stay within tolerance everywhere, not only at nodes.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "symtomo/error.hpp"

namespace symtomo::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Tolerances {
  double rtol = 1e-9;
  double atol = 1e-12;
};

template <std::size_t N>
struct Sample {
  double t;
  State<N> y;
  State<N> dy;
};

/// Cubic Hermite interpolation between two samples at time `t`.
template <std::size_t N>
State<N> hermite(const Sample<N>& a, const Sample<N>& b, double t) {
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  State<N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = h00 * a.y[i] + h10 * h * a.dy[i] + h01 * b.y[i] + h11 * h * b.dy[i];
  }
  return out;
}

/// Derivative of the Hermite interpolant at `t`.
template <std::size_t N>
State<N> hermite_derivative(const Sample<N>& a, const Sample<N>& b, double t) {
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double s2 = s * s;
  const double d00 = (6 * s2 - 6 * s) / h;
  const double d10 = 3 * s2 - 4 * s + 1;
  const double d01 = (-6 * s2 + 6 * s) / h;
  const double d11 = 3 * s2 - 2 * s;
  State<N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = d00 * a.y[i] + d10 * a.dy[i] + d01 * b.y[i] + d11 * b.dy[i];
  }
  return out;
}

namespace detail {

template <std::size_t N>
struct StepResult {
  State<N> y;
  State<N> err;
  State<N> dy_end;
};

template <std::size_t N, class Rhs>
StepResult<N> dopri_step(Rhs& f, double t, const State<N>& y, const State<N>& k1, double h) {
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  State<N> tmp{};
  auto stage = [&](auto&& combine) {
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * combine(i);
    return tmp;
  };
  const State<N> k2 = f(t + h / 5, stage([&](std::size_t i) { return a21 * k1[i]; }));
  const State<N> k3 =
      f(t + 3 * h / 10, stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; }));
  const State<N> k4 = f(t + 4 * h / 5, stage([&](std::size_t i) {
                          return a41 * k1[i] + a42 * k2[i] + a43 * k3[i];
                        }));
  const State<N> k5 = f(t + 8 * h / 9, stage([&](std::size_t i) {
                          return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
                        }));
  const State<N> k6 = f(t + h, stage([&](std::size_t i) {
                          return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                 a65 * k5[i];
                        }));
  StepResult<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    r.y[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  }
  r.dy_end = f(t + h, r.y);
  for (std::size_t i = 0; i < N; ++i) {
    r.err[i] =
        h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * r.dy_end[i]);
  }
  return r;
}

template <std::size_t N>
double scaled_norm(const State<N>& e, const State<N>& y0, const State<N>& y1,
                   const Tolerances& tol) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sc = tol.atol + tol.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    m = std::max(m, std::abs(e[i]) / sc);
  }
  return m;
}

template <std::size_t N>
bool finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace detail

/// Integrates y' = f(t, y) from t0 to t_end (> t0). `stops` lists interior
/// times (ascending) that must appear exactly as sample times.
template <std::size_t N, class Rhs>
std::vector<Sample<N>> integrate(Rhs f, double t0, const State<N>& y0, double t_end,
                                 const Tolerances& tol, std::span<const double> stops = {}) {
  if (!(t_end > t0)) throw ValidationError("integration interval must have t_end > t0");
  if (!(tol.rtol > 0) || !(tol.atol > 0)) throw ValidationError("tolerances must be positive");

  std::vector<Sample<N>> out;
  out.push_back({t0, y0, f(t0, y0)});
  if (!detail::finite(out.back().dy)) throw IntegrationError("non-finite initial state", t0);

  std::size_t next_stop = 0;
  while (next_stop < stops.size() && stops[next_stop] <= t0) ++next_stop;

  double h = std::min(0.01, t_end - t0);
  constexpr std::size_t max_steps = 50'000'000;
  for (std::size_t steps = 0; out.back().t < t_end; ++steps) {
    if (steps > max_steps) throw IntegrationError("step budget exhausted", out.back().t);
    const Sample<N>& cur = out.back();
    double target = t_end;
    if (next_stop < stops.size() && stops[next_stop] < t_end) target = stops[next_stop];
    const bool clipped = cur.t + h >= target;
    const double step = clipped ? target - cur.t : h;
    const double min_step = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(cur.t));
    if (step < min_step) {
      throw IntegrationError("step size underflow at t=" + std::to_string(cur.t), cur.t);
    }

    auto full = detail::dopri_step<N>(f, cur.t, cur.y, cur.dy, step);
    if (!detail::finite(full.y) || !detail::finite(full.dy_end)) {
      throw IntegrationError("non-finite state at t=" + std::to_string(cur.t), cur.t);
    }
    const double err = detail::scaled_norm<N>(full.err, cur.y, full.y, tol);

    double interp_err = 0.0;
    if (err <= 1.0) {
      // Hermite midpoint against an independent half step.
      auto half = detail::dopri_step<N>(f, cur.t, cur.y, cur.dy, step / 2);
      const Sample<N> end{cur.t + step, full.y, full.dy_end};
      const State<N> mid = hermite<N>(cur, end, cur.t + step / 2);
      State<N> diff{};
      for (std::size_t i = 0; i < N; ++i) diff[i] = mid[i] - half.y[i];
      interp_err = detail::scaled_norm<N>(diff, cur.y, full.y, tol);
    }

    double factor_err = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    double factor_interp = interp_err > 0 ? 0.9 * std::pow(interp_err, -0.25) : 5.0;
    double factor = std::clamp(std::min(factor_err, factor_interp), 0.2, 5.0);

    if (err <= 1.0 && interp_err <= 1.0) {
      const double t_new = clipped ? target : cur.t + step;
      out.push_back({t_new, full.y, full.dy_end});
      if (clipped && target < t_end) ++next_stop;
      // A clipped step says nothing about the controller's preferred size.
      if (!clipped) h = step * factor;
      else h = std::max(h, step * factor);
    } else {
      h = step * std::min(factor, 0.9);
    }
  }
  return out;
}

}  // namespace symtomo::ode
