#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symtomo/tomograms.hpp"
#include "symtomo/trajectory.hpp"

namespace symtomo::app {

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  std::size_t n = 16;

  UniformGrid grid() const { return UniformGrid(min, max, n); }
};

/// (mu, nu) lattice spacing*(i, j) inside [-half_width, half_width]^2.
struct FamilySpec {
  double half_width = 6.0;
  double spacing = 0.1;
  double delta = 0.0;
};

struct RunConfig {
  TrapParams trap{0.2, 2.0};
  StateSpec state{StateKind::coherent, 1.0};
  std::vector<double> times{1.5};

  /// Unset means the command's own default frames.
  std::optional<std::vector<ReferenceFrame>> frame_list;
  std::optional<FamilySpec> family;

  /// Tomogram X grid; unset means a covering grid per frame.
  std::optional<GridSpec> x;
  GridSpec q{-5.0, 5.0, 201};
  GridSpec p{-5.0, 5.0, 201};
  /// Wavefunction position grid; q must lie on its nodes or midpoints.
  GridSpec psi{-12.0, 12.0, 961};
  /// Box of the analytic Wigner map fed to the forward transform.
  GridSpec transform{-7.0, 7.0, 2801};
  /// X step of the reconstruction family grid when x is unset.
  double family_x_step = 0.02;

  double ode_tol = kDefaultTrajectoryTol;
  double quadrature_tol = 1e-4;

  std::string out_dir = "out";
  std::string format = "csv";
  /// Spacing of the trajectory time series.
  double dt = 0.01;

  FormulaVariant variant;

  /// Throws ValidationError on any broken invariant.
  void validate() const;
};

/// Parses a JSON config; absent fields keep their defaults.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

/// FNV-1a 64 of the canonical JSON dump of the effective config.
std::string config_hash(const RunConfig& c);

}  // namespace symtomo::app
