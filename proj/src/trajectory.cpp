#include "symtomo/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace symtomo {

void TrapParams::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be >= 0");
  if (!(omega_mod > 0.0) || !std::isfinite(omega_mod)) throw ValidationError("omega_mod must be > 0");
}

double frequency_squared(const TrapParams& params, double t) {
  const double s = std::sin(params.omega_mod * t);
  return 1.0 + params.kappa * params.kappa * s * s;
}

TrajectoryPoint TrajectoryPoint::from_values(cplx eps, cplx eps_dot, double t) {
  return {t, eps, eps_dot, std::arg(eps)};
}

TrajectoryPoint TrajectoryPoint::harmonic(double t) {
  const cplx e = std::polar(1.0, t);
  return {t, e, cplx(0.0, 1.0) * e, t};
}

double ComplexTrajectory::max_wronskian_residual() const {
  double m = 0.0;
  for (std::size_t i = 0; i < eps_.size(); ++i) {
    m = std::max(m, std::abs(std::imag(eps_[i] * std::conj(eps_dot_[i])) + 1.0));
  }
  return m;
}

ComplexTrajectory solve_epsilon(const TrapParams& params, double t_end, double tol,
                                std::span<const double> stops) {
  params.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ValidationError("t_end must be > 0");
  if (!(tol > 0.0)) throw ValidationError("tol must be > 0");

  // State: (Re eps, Im eps, Re eps', Im eps').
  auto rhs = [params](double t, const ode::State<4>& y) {
    const double w2 = frequency_squared(params, t);
    return ode::State<4>{y[2], y[3], -w2 * y[0], -w2 * y[1]};
  };
  const ode::State<4> y0{1.0, 0.0, 0.0, 1.0};
  const auto samples = ode::integrate<4>(rhs, 0.0, y0, t_end, {tol, tol * 1e-3}, stops);

  ComplexTrajectory traj;
  traj.params_ = params;
  traj.tol_ = tol;
  traj.times_.reserve(samples.size());
  double phase = 0.0;
  cplx prev(1.0, 0.0);
  for (const auto& s : samples) {
    const cplx e(s.y[0], s.y[1]);
    if (std::abs(e) == 0.0) throw IntegrationError("eps vanished", s.t);
    // Per-step phase increments are far below pi for the accepted step sizes.
    phase += std::arg(e / prev);
    prev = e;
    traj.times_.push_back(s.t);
    traj.eps_.push_back(e);
    traj.eps_dot_.emplace_back(s.y[2], s.y[3]);
    traj.eps_ddot_.emplace_back(s.dy[2], s.dy[3]);
    traj.phase_.push_back(phase);
  }
  return traj;
}

TrajectoryPoint epsilon_at(const ComplexTrajectory& traj, double t) {
  const auto& ts = traj.times_;
  if (!(t >= ts.front()) || !(t <= ts.back())) {
    throw ValidationError("time " + std::to_string(t) + " outside trajectory range [0, " +
                          std::to_string(ts.back()) + "]");
  }
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  auto i = static_cast<std::size_t>(it - ts.begin());
  if (i < ts.size() && ts[i] == t) return traj.sample(i);
  const std::size_t a = i - 1;
  auto make = [&](std::size_t k) {
    return ode::Sample<4>{ts[k],
                          {traj.eps_[k].real(), traj.eps_[k].imag(), traj.eps_dot_[k].real(),
                           traj.eps_dot_[k].imag()},
                          {traj.eps_dot_[k].real(), traj.eps_dot_[k].imag(),
                           traj.eps_ddot_[k].real(), traj.eps_ddot_[k].imag()}};
  };
  const auto y = ode::hermite<4>(make(a), make(i), t);
  TrajectoryPoint p;
  p.t = t;
  p.eps = cplx(y[0], y[1]);
  p.eps_dot = cplx(y[2], y[3]);
  p.phase = traj.phase_[a] + std::arg(p.eps / traj.eps_[a]);
  return p;
}

double floquet_half_trace(const TrapParams& params, double tol) {
  // eps = y1 + i y2 with y1, y2 the fundamental solutions, so the trace is
  // y1(T) + y2'(T).
  const double period = std::numbers::pi / params.omega_mod;
  const auto traj = solve_epsilon(params, period, tol);
  const auto end = traj.sample(traj.size() - 1);
  return 0.5 * (end.eps.real() + end.eps_dot.imag());
}

}  // namespace symtomo
