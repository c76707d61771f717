#pragma once

#include <complex>
#include <string>
#include <vector>

#include "symtomo/grid.hpp"
#include "symtomo/trajectory.hpp"

namespace symtomo {

enum class StateKind { coherent, even_cat, odd_cat };
enum class Parity { even, odd };

std::string to_string(StateKind kind);
/// Parses "coherent", "even_cat", "odd_cat".
StateKind parse_state_kind(const std::string& name);

struct StateSpec {
  StateKind kind = StateKind::coherent;
  cplx alpha{0.0, 0.0};

  /// Throws DegenerateNormalizationError for odd cats with |alpha| <= 1e-6.
  void validate() const;
};

inline constexpr double kMinOddAlpha = 1e-6;

/// N^(+) = e^{|a|^2/2} / (2 sqrt(cosh|a|^2)), N^(-) likewise with sinh,
/// evaluated in the overflow-free form 1 / sqrt(2 (1 +- e^{-2|a|^2})).
double cat_normalization(Parity parity, cplx alpha);

struct WaveFunction {
  UniformGrid x_grid;
  std::vector<cplx> values;
  double time = 0.0;
  StateSpec spec;

  /// Discrete L2 norm sum |psi|^2 dx.
  double norm() const;
};

/// Wigner quasi-distribution on a (q, p) grid, stored q-major. Normalized so
/// that sum W dq dp / (2 pi) = 1, i.e. W(0,0) = 2 for the ground packet.
struct WignerMap {
  UniformGrid q_grid;
  UniformGrid p_grid;
  std::vector<double> values;
  double time = 0.0;
  StateSpec spec;
  /// Global factor applied after evaluation to meet the normalization (1 for
  /// the numeric transform).
  double norm_constant = 1.0;
  /// Largest |Im W| seen before discarding the imaginary part.
  double imag_residue = 0.0;

  double at(std::size_t iq, std::size_t ip) const { return values[iq * p_grid.size() + ip]; }
  /// sum W dq dp / (2 pi).
  double normalization() const;
};

/// Throws CoverageError unless `x_grid` extends at least six position standard
/// deviations past each density peak of the state.
void check_position_coverage(const StateSpec& spec, const TrajectoryPoint& point,
                             const UniformGrid& x_grid);

/// Single amplitude of the time-dependent coherent packet.
cplx coherent_amplitude(cplx alpha, const TrajectoryPoint& point, double x);
/// Single amplitude of the squeezed even/odd coherent state.
cplx cat_amplitude(Parity parity, cplx alpha, const TrajectoryPoint& point, double x);

WaveFunction eval_coherent(cplx alpha, const TrajectoryPoint& point, const UniformGrid& x_grid);
WaveFunction eval_cat(Parity parity, cplx alpha, const TrajectoryPoint& point,
                      const UniformGrid& x_grid);
WaveFunction eval_state(const StateSpec& spec, const TrajectoryPoint& point,
                        const UniformGrid& x_grid);

struct WignerOptions {
  double norm_tol = 1e-6;
  double imag_tol = 1e-8;
};

/// W(q,p) = int conj(psi(q+u/2)) psi(q-u/2) e^{ipu} du by the trapezoidal rule
/// on the wavefunction's own samples (u step 2 dx). Every q must be a node or a
/// midpoint of psi's grid. Throws ConventionError when the normalization or
/// the imaginary residue exceeds the options' tolerances.
WignerMap wigner_numeric(const WaveFunction& psi, const UniformGrid& q_grid,
                         const UniformGrid& p_grid, const WignerOptions& opts = {});

/// Closed-form Wigner function of the even/odd states, as a raw value before
/// the global normalization rescale.
double wigner_cat_value(Parity parity, cplx alpha, const TrajectoryPoint& point, double q, double p);
/// Closed-form Wigner function of the coherent packet (W = 2 at its centre).
double wigner_coherent_value(cplx alpha, const TrajectoryPoint& point, double q, double p);

WignerMap wigner_cat_analytic(Parity parity, cplx alpha, const TrajectoryPoint& point,
                              const UniformGrid& q_grid, const UniformGrid& p_grid);
WignerMap wigner_coherent_analytic(cplx alpha, const TrajectoryPoint& point,
                                   const UniformGrid& q_grid, const UniformGrid& p_grid);
WignerMap wigner_analytic(const StateSpec& spec, const TrajectoryPoint& point,
                          const UniformGrid& q_grid, const UniformGrid& p_grid);

}  // namespace symtomo
