#pragma once

#include <complex>
#include <span>
#include <vector>

#include "symtomo/ode.hpp"

namespace symtomo {

using cplx = std::complex<double>;

/// Paul-trap frequency law omega^2(t) = 1 + kappa^2 sin^2(Omega t), in units
/// where the unmodulated frequency, hbar and the mass are 1.
struct TrapParams {
  double kappa = 0.0;
  double omega_mod = 1.0;

  /// Throws ValidationError unless kappa >= 0 and omega_mod > 0.
  void validate() const;
};

double frequency_squared(const TrapParams& params, double t);

/// The classical complex trajectory and its velocity at a single time, with
/// the continuously unwrapped phase of eps (used for the eps^{-1/2} branch).
struct TrajectoryPoint {
  double t = 0.0;
  cplx eps{1.0, 0.0};
  cplx eps_dot{0.0, 1.0};
  double phase = 0.0;

  /// Point from raw values; phase taken on the principal branch.
  static TrajectoryPoint from_values(cplx eps, cplx eps_dot, double t = 0.0);
  /// eps(0) = 1, eps_dot(0) = i.
  static TrajectoryPoint initial() { return {}; }
  /// Closed form e^{it} of the unmodulated oscillator.
  static TrajectoryPoint harmonic(double t);

  /// Im(eps * conj(eps_dot)); equals -1 on every valid trajectory.
  double wronskian() const { return std::imag(eps * std::conj(eps_dot)); }
};

/// Solution of eps'' + omega^2(t) eps = 0, eps(0)=1, eps'(0)=i, sampled on the
/// integrator's accepted steps. Immutable after construction.
class ComplexTrajectory {
 public:
  const TrapParams& params() const { return params_; }
  double tolerance() const { return tol_; }
  std::span<const double> times() const { return times_; }
  std::span<const cplx> eps() const { return eps_; }
  std::span<const cplx> eps_dot() const { return eps_dot_; }
  std::span<const double> phases() const { return phase_; }
  double t_end() const { return times_.back(); }
  std::size_t size() const { return times_.size(); }

  /// Largest |Im(eps conj(eps_dot)) + 1| over the samples.
  double max_wronskian_residual() const;

  TrajectoryPoint sample(std::size_t i) const { return {times_[i], eps_[i], eps_dot_[i], phase_[i]}; }

 private:
  friend ComplexTrajectory solve_epsilon(const TrapParams&, double, double, std::span<const double>);
  TrapParams params_;
  double tol_ = 0.0;
  std::vector<double> times_;
  std::vector<cplx> eps_;
  std::vector<cplx> eps_dot_;
  std::vector<cplx> eps_ddot_;
  std::vector<double> phase_;

  friend TrajectoryPoint epsilon_at(const ComplexTrajectory&, double);
};

inline constexpr double kDefaultTrajectoryTol = 1e-9;

/// Adaptive integration on [0, t_end]; relative tolerance `tol`, absolute
/// tolerance tol * 1e-3. Times in `stops` become exact sample points.
/// Parametric resonance is not treated as a failure: |eps| may grow.
ComplexTrajectory solve_epsilon(const TrapParams& params, double t_end,
                                double tol = kDefaultTrajectoryTol,
                                std::span<const double> stops = {});

/// (eps, eps_dot, phase) at time t by cubic Hermite interpolation; exact at
/// sample times. Throws ValidationError outside [0, t_end].
TrajectoryPoint epsilon_at(const ComplexTrajectory& traj, double t);

/// Half trace of the monodromy matrix over one modulation period pi/Omega.
/// The motion is parametrically unstable when its magnitude exceeds 1.
double floquet_half_trace(const TrapParams& params, double tol = 1e-11);

}  // namespace symtomo
