#pragma once

#include <span>
#include <vector>

#include "symtomo/grid.hpp"
#include "symtomo/states.hpp"

namespace symtomo {

/// Reference frame of the observable X = mu q + nu p + delta.
struct ReferenceFrame {
  double mu = 1.0;
  double nu = 0.0;
  double delta = 0.0;

  double radius() const;
  /// Throws ValidationError when (mu, nu) = (0, 0) or a value is not finite.
  void validate() const;
};

/// Marginal distribution of X in one frame. Values are a probability density
/// in X.
struct Tomogram {
  ReferenceFrame frame;
  UniformGrid x_grid;
  std::vector<double> values;
  double time = 0.0;
  StateSpec spec;

  /// sum w dX.
  double normalization() const;
};

/// Selects the literal printed formulas instead of the validated ones; only
/// used to reproduce the discrepancies (CLI diagnostic flags).
struct FormulaVariant {
  /// Variance cross term 2 mu nu sqrt(|eps eps'|^2 + 1) instead of 2 mu nu Re(eps conj(eps')).
  bool printed_cross_term = false;
  /// Cat-tomogram shift coefficient 2 sqrt2 instead of sqrt2.
  bool printed_cat_shift = false;
};

enum class Coverage { enforce, allow_truncation };

struct GaussianMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean sqrt2 Re(a (mu conj(eps) + nu conj(eps'))) + delta and variance
/// (mu^2 |eps|^2 + nu^2 |eps'|^2)/2 + mu nu Re(eps conj(eps')).
GaussianMoments gaussian_moments(cplx alpha, const TrajectoryPoint& point, const ReferenceFrame& frame,
                                 FormulaVariant variant = {});

double marginal_gaussian_value(cplx alpha, const TrajectoryPoint& point, const ReferenceFrame& frame,
                               double x, FormulaVariant variant = {});
double marginal_cat_value(Parity parity, cplx alpha, const TrajectoryPoint& point,
                          const ReferenceFrame& frame, double x, FormulaVariant variant = {});
/// Analytic tomogram value for any supported state.
double marginal_value(const StateSpec& spec, const TrajectoryPoint& point, const ReferenceFrame& frame,
                      double x, FormulaVariant variant = {});

/// X interval [lo, hi] that holds the tomogram to six standard deviations
/// beyond its outermost peaks.
struct Interval {
  double lo;
  double hi;
};
Interval tomogram_support(const StateSpec& spec, const TrajectoryPoint& point, const ReferenceFrame& frame);
/// Grid of `n` points over the support widened to eight standard deviations.
UniformGrid covering_x_grid(const StateSpec& spec, const TrajectoryPoint& point,
                            const ReferenceFrame& frame, std::size_t n = 801);

Tomogram marginal_gaussian(cplx alpha, const TrajectoryPoint& point, const ReferenceFrame& frame,
                           const UniformGrid& x_grid, FormulaVariant variant = {},
                           Coverage coverage = Coverage::enforce);
Tomogram marginal_cat(Parity parity, cplx alpha, const TrajectoryPoint& point,
                      const ReferenceFrame& frame, const UniformGrid& x_grid,
                      FormulaVariant variant = {}, Coverage coverage = Coverage::enforce);
Tomogram marginal(const StateSpec& spec, const TrajectoryPoint& point, const ReferenceFrame& frame,
                  const UniformGrid& x_grid, FormulaVariant variant = {},
                  Coverage coverage = Coverage::enforce);

/// Homodyne specialization: frame (cos phi, sin phi, 0).
Tomogram optical_slice(const StateSpec& spec, const TrajectoryPoint& point, double phi,
                       const UniformGrid& x_grid, FormulaVariant variant = {});

/// w(X) = (1/2pi) * integral of W along the line mu q + nu p = X - delta,
/// sampled by bilinear interpolation at half the finer map spacing. Throws
/// CoverageError when a line leaves the map where |W| > 1e-10.
Tomogram forward_transform(const WignerMap& wigner, const ReferenceFrame& frame, const UniformGrid& x_grid);

/// Density of X computed straight from the wavefunction: projection onto the
/// eigenfunctions of mu q + nu p, in position representation when |nu| >= |mu|
/// and in momentum representation otherwise.
Tomogram frame_quadrature(const WaveFunction& psi, const ReferenceFrame& frame, const UniformGrid& x_grid);

/// Symmetric X grid with spacing `step` that covers every member of the
/// (mu, nu) box [-half_width, half_width]^2 at delta = 0.
UniformGrid family_x_grid(const StateSpec& spec, const TrajectoryPoint& point, double half_width,
                          double step);

/// Tomograms at delta = 0 on the (mu, nu) lattice spacing*(i, j), |i|,|j| <= M/spacing,
/// excluding the degenerate origin. All members share `x_grid`.
std::vector<Tomogram> tomogram_family(const StateSpec& spec, const TrajectoryPoint& point,
                                      double half_width, double spacing, const UniformGrid& x_grid,
                                      Coverage coverage = Coverage::enforce,
                                      FormulaVariant variant = {});

struct Reconstruction {
  WignerMap map;
  /// sum W dq dp / (2 pi) before renormalization.
  double raw_norm_constant = 0.0;
  /// Largest member value at either end of the shared X grid, relative to
  /// that member's peak. Large values mean the members were truncated.
  double max_edge_fraction = 0.0;
};

/// W(q,p) = (1/2pi) int w(X, mu, nu) e^{i(X - mu q - nu p)} dX dmu dnu by
/// trapezoidal quadrature over the family's (X, mu, nu) box. The (0,0) node may
/// be absent; its X-integral is 1 by normalization.
Reconstruction inverse_transform(std::span<const Tomogram> family, const UniformGrid& q_grid,
                                 const UniformGrid& p_grid);

}  // namespace symtomo
