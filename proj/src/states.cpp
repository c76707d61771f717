#include "symtomo/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symtomo/simd/kernels.hpp"

namespace symtomo {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

Parity parity_of(StateKind kind) { return kind == StateKind::odd_cat ? Parity::odd : Parity::even; }

/// Exponent shared by both coherent components: i eps' x^2/(2 eps) - |a|^2/2 - a^2 conj(eps)/(2 eps).
cplx common_exponent(cplx alpha, const TrajectoryPoint& pt, double x) {
  return kI * pt.eps_dot * x * x / (2.0 * pt.eps) - std::norm(alpha) / 2.0 -
         alpha * alpha * std::conj(pt.eps) / (2.0 * pt.eps);
}

/// pi^{-1/4} eps^{-1/2} on the branch fixed by the unwrapped phase.
cplx prefactor(const TrajectoryPoint& pt) {
  return std::pow(kPi, -0.25) * std::polar(1.0 / std::sqrt(std::abs(pt.eps)), -pt.phase / 2.0);
}

}  // namespace

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::coherent: return "coherent";
    case StateKind::even_cat: return "even_cat";
    case StateKind::odd_cat: return "odd_cat";
  }
  return "unknown";
}

StateKind parse_state_kind(const std::string& name) {
  if (name == "coherent") return StateKind::coherent;
  if (name == "even_cat" || name == "even") return StateKind::even_cat;
  if (name == "odd_cat" || name == "odd") return StateKind::odd_cat;
  throw ValidationError("unknown state kind '" + name + "'");
}

void StateSpec::validate() const {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw ValidationError("alpha must be finite");
  }
  if (kind == StateKind::odd_cat && std::abs(alpha) <= kMinOddAlpha) {
    throw DegenerateNormalizationError("odd cat state requires |alpha| > 1e-6");
  }
}

double cat_normalization(Parity parity, cplx alpha) {
  const double overlap = std::exp(-2.0 * std::norm(alpha));
  if (parity == Parity::odd) {
    if (std::abs(alpha) <= kMinOddAlpha) {
      throw DegenerateNormalizationError("odd cat state requires |alpha| > 1e-6");
    }
    // 1 - e^{-2|a|^2} without cancellation for small |a|.
    return 1.0 / std::sqrt(-2.0 * std::expm1(-2.0 * std::norm(alpha)));
  }
  return 1.0 / std::sqrt(2.0 * (1.0 + overlap));
}

double WaveFunction::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * x_grid.spacing();
}

double WignerMap::normalization() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * q_grid.spacing() * p_grid.spacing() / (2.0 * kPi);
}

void check_position_coverage(const StateSpec& spec, const TrajectoryPoint& pt,
                             const UniformGrid& x_grid) {
  const double sd = std::abs(pt.eps) / kSqrt2;
  const double centre = kSqrt2 * std::real(spec.alpha * std::conj(pt.eps));
  double lo = centre;
  double hi = centre;
  if (spec.kind != StateKind::coherent) {
    lo = -std::abs(centre);
    hi = std::abs(centre);
  }
  if (x_grid.min > lo - 6.0 * sd || x_grid.max < hi + 6.0 * sd) {
    throw CoverageError("position grid [" + std::to_string(x_grid.min) + ", " +
                        std::to_string(x_grid.max) + "] does not cover [" +
                        std::to_string(lo - 6.0 * sd) + ", " + std::to_string(hi + 6.0 * sd) + "]");
  }
}

cplx coherent_amplitude(cplx alpha, const TrajectoryPoint& pt, double x) {
  return prefactor(pt) * std::exp(common_exponent(alpha, pt, x) + kSqrt2 * alpha * x / pt.eps);
}

cplx cat_amplitude(Parity parity, cplx alpha, const TrajectoryPoint& pt, double x) {
  const double n = cat_normalization(parity, alpha);
  const cplx e = common_exponent(alpha, pt, x);
  const cplx s = kSqrt2 * alpha * x / pt.eps;
  // 2 N Psi_0 e^{...} cosh(s) with cosh/sinh split into exponentials so that
  // large |s| never overflows before the Gaussian factor is applied.
  const cplx plus = std::exp(e + s);
  const cplx minus = std::exp(e - s);
  const cplx combo = parity == Parity::even ? plus + minus : plus - minus;
  return n * prefactor(pt) * combo;
}

WaveFunction eval_coherent(cplx alpha, const TrajectoryPoint& pt, const UniformGrid& x_grid) {
  const StateSpec spec{StateKind::coherent, alpha};
  spec.validate();
  check_position_coverage(spec, pt, x_grid);
  WaveFunction wf{x_grid, {}, pt.t, spec};
  wf.values.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) wf.values[i] = coherent_amplitude(alpha, pt, x_grid[i]);
  return wf;
}

WaveFunction eval_cat(Parity parity, cplx alpha, const TrajectoryPoint& pt,
                      const UniformGrid& x_grid) {
  const StateSpec spec{parity == Parity::even ? StateKind::even_cat : StateKind::odd_cat, alpha};
  spec.validate();
  check_position_coverage(spec, pt, x_grid);
  WaveFunction wf{x_grid, {}, pt.t, spec};
  wf.values.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    wf.values[i] = cat_amplitude(parity, alpha, pt, x_grid[i]);
  }
  return wf;
}

WaveFunction eval_state(const StateSpec& spec, const TrajectoryPoint& pt, const UniformGrid& x_grid) {
  if (spec.kind == StateKind::coherent) return eval_coherent(spec.alpha, pt, x_grid);
  return eval_cat(parity_of(spec.kind), spec.alpha, pt, x_grid);
}

WignerMap wigner_numeric(const WaveFunction& psi, const UniformGrid& q_grid,
                         const UniformGrid& p_grid, const WignerOptions& opts) {
  const std::size_t n = psi.x_grid.size();
  const double dx = psi.x_grid.spacing();
  const double x0 = psi.x_grid.min;

  // q = x0 + m dx / 2 for integer m in [0, 2(n-1)].
  std::vector<std::size_t> half_index(q_grid.size());
  for (std::size_t a = 0; a < q_grid.size(); ++a) {
    const double m = 2.0 * (q_grid[a] - x0) / dx;
    const double mr = std::round(m);
    if (std::abs(m - mr) > 1e-6 || mr < 0.0 || mr > 2.0 * static_cast<double>(n - 1)) {
      throw ValidationError("wigner_numeric: q = " + std::to_string(q_grid[a]) +
                            " is not a node or midpoint of the wavefunction grid");
    }
    half_index[a] = static_cast<std::size_t>(mr);
  }

  // Phase tables e^{i p 2 dx k}, one row per p, shared by every q.
  const std::size_t np = p_grid.size();
  std::vector<double> cos_tab(np * n), sin_tab(np * n);
  for (std::size_t b = 0; b < np; ++b) {
    const double w = 2.0 * p_grid[b] * dx;
    for (std::size_t k = 0; k < n; ++k) {
      cos_tab[b * n + k] = std::cos(w * static_cast<double>(k));
      sin_tab[b * n + k] = std::sin(w * static_cast<double>(k));
    }
  }

  WignerMap map{q_grid, p_grid, std::vector<double>(q_grid.size() * np), psi.time, psi.spec};
  std::vector<double> fr(n), fi(n);
  double imag_max = 0.0;
  for (std::size_t a = 0; a < q_grid.size(); ++a) {
    const std::size_t m = half_index[a];
    const std::size_t lo = m > n - 1 ? m - (n - 1) : 0;
    const std::size_t hi = std::min(m, n - 1);
    const std::size_t len = hi - lo + 1;
    for (std::size_t i = lo; i <= hi; ++i) {
      const cplx f = std::conj(psi.values[i]) * psi.values[m - i];
      fr[i] = f.real();
      fi[i] = f.imag();
    }
    const std::span<const double> fr_s(fr.data() + lo, len), fi_s(fi.data() + lo, len);
    for (std::size_t b = 0; b < np; ++b) {
      const auto z = simd::complex_dot(fr_s, fi_s, {cos_tab.data() + b * n + lo, len},
                                       {sin_tab.data() + b * n + lo, len});
      // Undo the table origin: u = (2i - m) dx.
      const cplx v = cplx(z.re, z.im) * std::polar(2.0 * dx, -p_grid[b] * static_cast<double>(m) * dx);
      map.values[a * np + b] = v.real();
      imag_max = std::max(imag_max, std::abs(v.imag()));
    }
  }
  map.imag_residue = imag_max;
  if (imag_max > opts.imag_tol) {
    throw ConventionError("wigner_numeric: imaginary residue " + std::to_string(imag_max) +
                          " exceeds tolerance");
  }
  const double norm = map.normalization();
  if (std::abs(norm - 1.0) > opts.norm_tol) {
    throw ConventionError("wigner_numeric: normalization " + std::to_string(norm) +
                          " differs from 1 (q/p grid does not cover the state?)");
  }
  return map;
}

double wigner_cat_value(Parity parity, cplx alpha, const TrajectoryPoint& pt, double q, double p) {
  const double n = cat_normalization(parity, alpha);
  const cplx e = pt.eps;
  const cplx ed = pt.eps_dot;
  const double envelope = -p * p * std::norm(e) - std::norm(ed) * q * q +
                          2.0 * std::real(ed * std::conj(e)) * p * q;
  const double hyper_arg =
      2.0 * kSqrt2 * (p * std::imag(alpha * std::conj(e)) - q * std::imag(alpha * std::conj(ed)));
  const double cos_arg =
      2.0 * kSqrt2 * (q * std::real(alpha * std::conj(ed)) - p * std::real(alpha * std::conj(e)));
  const double damp = envelope - 2.0 * std::norm(alpha);
  // e^{env} e^{-2|a|^2} cosh(h), written without overflowing cosh.
  const double diag = 0.5 * (std::exp(damp + hyper_arg) + std::exp(damp - hyper_arg));
  const double interference = std::exp(envelope) * std::cos(cos_arg);
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  return 4.0 * n * n * (diag + sign * interference);
}

double wigner_coherent_value(cplx alpha, const TrajectoryPoint& pt, double q, double p) {
  const double qc = kSqrt2 * std::real(alpha * std::conj(pt.eps));
  const double pc = kSqrt2 * std::real(alpha * std::conj(pt.eps_dot));
  const double dq = q - qc;
  const double dp = p - pc;
  return 2.0 * std::exp(-dp * dp * std::norm(pt.eps) - std::norm(pt.eps_dot) * dq * dq +
                        2.0 * std::real(pt.eps_dot * std::conj(pt.eps)) * dp * dq);
}

namespace {

template <class F>
WignerMap analytic_map(const StateSpec& spec, const TrajectoryPoint& pt, const UniformGrid& q_grid,
                       const UniformGrid& p_grid, F&& value) {
  WignerMap map{q_grid, p_grid, std::vector<double>(q_grid.size() * p_grid.size()), pt.t, spec};
  for (std::size_t a = 0; a < q_grid.size(); ++a) {
    const double q = q_grid[a];
    for (std::size_t b = 0; b < p_grid.size(); ++b) map.values[a * p_grid.size() + b] = value(q, p_grid[b]);
  }
  const double raw = map.normalization();
  if (!(raw > 0.0) || !std::isfinite(raw)) {
    throw CoverageError("analytic Wigner map has non-positive mass on the (q,p) box");
  }
  map.norm_constant = 1.0 / raw;
  for (double& v : map.values) v *= map.norm_constant;
  return map;
}

}  // namespace

WignerMap wigner_cat_analytic(Parity parity, cplx alpha, const TrajectoryPoint& pt,
                              const UniformGrid& q_grid, const UniformGrid& p_grid) {
  const StateSpec spec{parity == Parity::even ? StateKind::even_cat : StateKind::odd_cat, alpha};
  spec.validate();
  return analytic_map(spec, pt, q_grid, p_grid,
                      [&](double q, double p) { return wigner_cat_value(parity, alpha, pt, q, p); });
}

WignerMap wigner_coherent_analytic(cplx alpha, const TrajectoryPoint& pt, const UniformGrid& q_grid,
                                   const UniformGrid& p_grid) {
  const StateSpec spec{StateKind::coherent, alpha};
  spec.validate();
  return analytic_map(spec, pt, q_grid, p_grid,
                      [&](double q, double p) { return wigner_coherent_value(alpha, pt, q, p); });
}

WignerMap wigner_analytic(const StateSpec& spec, const TrajectoryPoint& pt, const UniformGrid& q_grid,
                          const UniformGrid& p_grid) {
  if (spec.kind == StateKind::coherent) return wigner_coherent_analytic(spec.alpha, pt, q_grid, p_grid);
  return wigner_cat_analytic(parity_of(spec.kind), spec.alpha, pt, q_grid, p_grid);
}

}  // namespace symtomo
