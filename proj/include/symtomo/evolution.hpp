#pragma once

#include <functional>
#include <span>
#include <vector>

#include "symtomo/tomograms.hpp"
#include "symtomo/trajectory.hpp"

namespace symtomo {

/// w(X, mu, nu, delta) at time t.
using TomogramEvaluator = std::function<double(double x, const ReferenceFrame& frame, double t)>;

/// Tomogram values on a regular (t, mu, nu) grid at fixed delta and a fixed set
/// of X points. values[((it * n_mu + imu) * n_nu + inu) * n_x + ix].
struct TomogramField {
  std::vector<double> x_values;
  UniformGrid mu_grid;
  UniformGrid nu_grid;
  UniformGrid t_grid;
  double delta = 0.0;
  TrapParams params;
  std::vector<double> values;

  double at(std::size_t it, std::size_t imu, std::size_t inu, std::size_t ix) const {
    return values[((it * mu_grid.size() + imu) * nu_grid.size() + inu) * x_values.size() + ix];
  }
};

/// Radius of the excluded neighbourhood of the degenerate frame (0, 0).
inline constexpr double kDegenerateFrameRadius = 0.05;

TomogramField sample_field(const TomogramEvaluator& w, const TrapParams& params,
                           std::span<const double> x_values, const UniformGrid& mu_grid,
                           const UniformGrid& nu_grid, const UniformGrid& t_grid, double delta);

/// Analytic tomogram of `spec` along the solved trajectory.
TomogramEvaluator analytic_evaluator(const StateSpec& spec, const ComplexTrajectory& traj,
                                     FormulaVariant variant = {});

/// max over interior samples of |dw/dt - mu dw/dnu + omega^2(t) nu dw/dmu|,
/// central differences in all three directions.
double evolution_residual(const TomogramField& field);

struct ResidualStudy {
  double residual_h = 0.0;
  double residual_half = 0.0;
  /// residual_h / residual_half; about 4 when truncation error dominates.
  double ratio = 0.0;
};

/// Residual on 3x3x3 stencils around each (centre, t) pair at spacing h and
/// again at h/2 (same h for t, mu and nu).
ResidualStudy richardson_residual(const TomogramEvaluator& w, const TrapParams& params,
                                  std::span<const double> x_values,
                                  std::span<const ReferenceFrame> centres,
                                  std::span<const double> times, double h);

/// Frame at t0 whose characteristic reaches `frame` at t1 (dmu/ds = omega^2 nu,
/// dnu/ds = -mu). delta is carried unchanged.
ReferenceFrame characteristic_origin(const ReferenceFrame& frame, double t0, double t1,
                                     const TrapParams& params, double tol = kDefaultTrajectoryTol);

/// Determinant of d(mu0, nu0)/d(mu, nu) for the map above, by central differences.
double flow_jacobian_determinant(const ReferenceFrame& frame, double t0, double t1,
                                 const TrapParams& params, double tol = kDefaultTrajectoryTol,
                                 double h = 1e-4);

struct Propagated {
  ReferenceFrame source;
  Tomogram tomogram;
};

/// w(X, frame, t1) = w0(X, source) where source is the characteristic origin.
Propagated propagate(const std::function<double(double x, const ReferenceFrame&)>& w0,
                     const ReferenceFrame& frame, double t0, double t1, const TrapParams& params,
                     const UniformGrid& x_grid, double tol = kDefaultTrajectoryTol);

}  // namespace symtomo
