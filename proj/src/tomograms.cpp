#include "symtomo/tomograms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "symtomo/simd/kernels.hpp"

namespace symtomo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

Parity parity_of(StateKind kind) { return kind == StateKind::odd_cat ? Parity::odd : Parity::even; }

/// mu conj(eps) + nu conj(eps'); its squared modulus is the cat-tomogram denominator.
cplx frame_vector(const TrajectoryPoint& pt, const ReferenceFrame& f) {
  return f.mu * std::conj(pt.eps) + f.nu * std::conj(pt.eps_dot);
}

/// mu^2 |eps|^2 + nu^2 |eps'|^2 + 2 mu nu Re(eps' conj(eps)) (= 2 sigma_X).
double denominator(const TrajectoryPoint& pt, const ReferenceFrame& f) {
  return f.mu * f.mu * std::norm(pt.eps) + f.nu * f.nu * std::norm(pt.eps_dot) +
         2.0 * f.mu * f.nu * std::real(pt.eps_dot * std::conj(pt.eps));
}

void check_grid_coverage(const Interval& need, const UniformGrid& grid) {
  if (grid.min > need.lo || grid.max < need.hi) {
    throw CoverageError("X grid [" + std::to_string(grid.min) + ", " + std::to_string(grid.max) +
                        "] does not cover [" + std::to_string(need.lo) + ", " +
                        std::to_string(need.hi) + "]");
  }
}

template <class F>
Tomogram sample(const StateSpec& spec, const TrajectoryPoint& pt, const ReferenceFrame& frame,
                const UniformGrid& grid, F&& value) {
  Tomogram t{frame, grid, std::vector<double>(grid.size()), pt.t, spec};
  for (std::size_t i = 0; i < grid.size(); ++i) t.values[i] = value(grid[i]);
  return t;
}

}  // namespace

double ReferenceFrame::radius() const { return std::hypot(mu, nu); }

void ReferenceFrame::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(nu) || !std::isfinite(delta)) {
    throw ValidationError("reference frame values must be finite");
  }
  if (mu == 0.0 && nu == 0.0) throw ValidationError("degenerate reference frame (mu, nu) = (0, 0)");
}

double Tomogram::normalization() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * x_grid.spacing();
}

GaussianMoments gaussian_moments(cplx alpha, const TrajectoryPoint& pt, const ReferenceFrame& f,
                                 FormulaVariant variant) {
  f.validate();
  GaussianMoments m;
  m.mean = kSqrt2 * std::real(alpha * frame_vector(pt, f)) + f.delta;
  const double diag = 0.5 * (f.mu * f.mu * std::norm(pt.eps) + f.nu * f.nu * std::norm(pt.eps_dot));
  if (variant.printed_cross_term) {
    m.variance = diag + f.mu * f.nu * std::sqrt(std::norm(pt.eps * pt.eps_dot) + 1.0);
  } else {
    m.variance = diag + f.mu * f.nu * std::real(pt.eps * std::conj(pt.eps_dot));
  }
  if (!(m.variance > 0.0)) {
    throw ValidationError("non-positive tomogram variance " + std::to_string(m.variance) +
                          " at frame (" + std::to_string(f.mu) + ", " + std::to_string(f.nu) + ")");
  }
  return m;
}

double marginal_gaussian_value(cplx alpha, const TrajectoryPoint& pt, const ReferenceFrame& f, double x,
                               FormulaVariant variant) {
  const auto m = gaussian_moments(alpha, pt, f, variant);
  const double d = x - m.mean;
  return std::exp(-d * d / (2.0 * m.variance)) / std::sqrt(2.0 * kPi * m.variance);
}

double marginal_cat_value(Parity parity, cplx alpha, const TrajectoryPoint& pt, const ReferenceFrame& f,
                          double x, FormulaVariant variant) {
  f.validate();
  const double n = cat_normalization(parity, alpha);
  const double d = denominator(pt, f);
  const cplx shift = alpha * frame_vector(pt, f);
  const double c = variant.printed_cat_shift ? 2.0 * kSqrt2 : kSqrt2;
  const double re = c * shift.real();
  const double im = c * shift.imag();
  const double y = x - f.delta;
  const double w1 = std::exp(-(y + re) * (y + re) / d);
  const double w2 = std::exp(-(y - re) * (y - re) / d);
  // w3 + w4 = 2 Re exp(-2|a|^2 - (y + i im)^2 / d).
  const double w34 = 2.0 * std::exp(-2.0 * std::norm(alpha) + (im * im - y * y) / d) *
                     std::cos(2.0 * im * y / d);
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  const double w = n * n / std::sqrt(kPi * d) * (w1 + w2 + sign * w34);
  // Exact zeros of the odd/fringe terms come out as -1e-17; the printed
  // variant is left raw so its defects stay visible.
  return variant.printed_cat_shift ? w : std::max(w, 0.0);
}

double marginal_value(const StateSpec& spec, const TrajectoryPoint& pt, const ReferenceFrame& f, double x,
                      FormulaVariant variant) {
  if (spec.kind == StateKind::coherent) return marginal_gaussian_value(spec.alpha, pt, f, x, variant);
  return marginal_cat_value(parity_of(spec.kind), spec.alpha, pt, f, x, variant);
}

Interval tomogram_support(const StateSpec& spec, const TrajectoryPoint& pt, const ReferenceFrame& f) {
  f.validate();
  const double sd = std::sqrt(denominator(pt, f) / 2.0);
  const double centre = kSqrt2 * std::real(spec.alpha * frame_vector(pt, f));
  if (spec.kind == StateKind::coherent) {
    return {f.delta + centre - 6.0 * sd, f.delta + centre + 6.0 * sd};
  }
  return {f.delta - std::abs(centre) - 6.0 * sd, f.delta + std::abs(centre) + 6.0 * sd};
}

UniformGrid covering_x_grid(const StateSpec& spec, const TrajectoryPoint& pt, const ReferenceFrame& f,
                            std::size_t n) {
  const auto s = tomogram_support(spec, pt, f);
  const double pad = 2.0 * std::sqrt(denominator(pt, f) / 2.0);
  return UniformGrid(s.lo - pad, s.hi + pad, n);
}

Tomogram marginal_gaussian(cplx alpha, const TrajectoryPoint& pt, const ReferenceFrame& f,
                           const UniformGrid& grid, FormulaVariant variant, Coverage coverage) {
  const StateSpec spec{StateKind::coherent, alpha};
  if (coverage == Coverage::enforce) check_grid_coverage(tomogram_support(spec, pt, f), grid);
  const auto m = gaussian_moments(alpha, pt, f, variant);
  const double norm = 1.0 / std::sqrt(2.0 * kPi * m.variance);
  return sample(spec, pt, f, grid, [&](double x) {
    const double d = x - m.mean;
    return norm * std::exp(-d * d / (2.0 * m.variance));
  });
}

Tomogram marginal_cat(Parity parity, cplx alpha, const TrajectoryPoint& pt, const ReferenceFrame& f,
                      const UniformGrid& grid, FormulaVariant variant, Coverage coverage) {
  const StateSpec spec{parity == Parity::even ? StateKind::even_cat : StateKind::odd_cat, alpha};
  spec.validate();
  if (coverage == Coverage::enforce) check_grid_coverage(tomogram_support(spec, pt, f), grid);
  return sample(spec, pt, f, grid,
                [&](double x) { return marginal_cat_value(parity, alpha, pt, f, x, variant); });
}

Tomogram marginal(const StateSpec& spec, const TrajectoryPoint& pt, const ReferenceFrame& f,
                  const UniformGrid& grid, FormulaVariant variant, Coverage coverage) {
  if (spec.kind == StateKind::coherent) {
    return marginal_gaussian(spec.alpha, pt, f, grid, variant, coverage);
  }
  return marginal_cat(parity_of(spec.kind), spec.alpha, pt, f, grid, variant, coverage);
}

Tomogram optical_slice(const StateSpec& spec, const TrajectoryPoint& pt, double phi,
                       const UniformGrid& grid, FormulaVariant variant) {
  return marginal(spec, pt, ReferenceFrame{std::cos(phi), std::sin(phi), 0.0}, grid, variant);
}

// ---------------------------------------------------------------------------
// Forward transform

namespace {

double bilinear(const WignerMap& w, double q, double p) {
  const double fq = (q - w.q_grid.min) / w.q_grid.spacing();
  const double fp = (p - w.p_grid.min) / w.p_grid.spacing();
  const auto nq = w.q_grid.size();
  const auto np = w.p_grid.size();
  auto iq = static_cast<std::size_t>(std::clamp(std::floor(fq), 0.0, static_cast<double>(nq - 2)));
  auto ip = static_cast<std::size_t>(std::clamp(std::floor(fp), 0.0, static_cast<double>(np - 2)));
  const double s = std::clamp(fq - static_cast<double>(iq), 0.0, 1.0);
  const double r = std::clamp(fp - static_cast<double>(ip), 0.0, 1.0);
  const double* row0 = &w.values[iq * np + ip];
  const double* row1 = row0 + np;
  return (1 - s) * ((1 - r) * row0[0] + r * row0[1]) + s * ((1 - r) * row1[0] + r * row1[1]);
}

}  // namespace

Tomogram forward_transform(const WignerMap& w, const ReferenceFrame& f, const UniformGrid& grid) {
  f.validate();
  const double r = f.radius();
  const double ds = std::min(w.q_grid.spacing(), w.p_grid.spacing()) / 2.0;
  const double dq = -f.nu / r;  // unit direction along the line
  const double dp = f.mu / r;
  Tomogram t{f, grid, std::vector<double>(grid.size(), 0.0), w.time, w.spec};

  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double c = grid[k] - f.delta;
    const double q0 = c * f.mu / (r * r);
    const double p0 = c * f.nu / (r * r);
    // Clip the line q0 + s dq, p0 + s dp to the map box.
    double s_lo = -std::numeric_limits<double>::infinity();
    double s_hi = std::numeric_limits<double>::infinity();
    auto clip = [&](double origin, double dir, double lo, double hi) {
      if (dir == 0.0) {
        if (origin < lo || origin > hi) s_lo = 1.0, s_hi = 0.0;
        return;
      }
      double a = (lo - origin) / dir;
      double b = (hi - origin) / dir;
      if (a > b) std::swap(a, b);
      s_lo = std::max(s_lo, a);
      s_hi = std::min(s_hi, b);
    };
    clip(q0, dq, w.q_grid.min, w.q_grid.max);
    clip(p0, dp, w.p_grid.min, w.p_grid.max);
    if (!(s_hi > s_lo)) continue;

    const double edge = std::max(std::abs(bilinear(w, q0 + s_lo * dq, p0 + s_lo * dp)),
                                 std::abs(bilinear(w, q0 + s_hi * dq, p0 + s_hi * dp)));
    if (edge > 1e-10) {
      throw CoverageError("forward_transform: line X=" + std::to_string(grid[k]) +
                          " leaves the Wigner map where |W| = " + std::to_string(edge));
    }
    const auto steps = static_cast<std::size_t>(std::ceil((s_hi - s_lo) / ds));
    const double h = (s_hi - s_lo) / static_cast<double>(steps);
    double sum = 0.5 * (bilinear(w, q0 + s_lo * dq, p0 + s_lo * dp) +
                        bilinear(w, q0 + s_hi * dq, p0 + s_hi * dp));
    for (std::size_t j = 1; j < steps; ++j) {
      const double s = s_lo + h * static_cast<double>(j);
      sum += bilinear(w, q0 + s * dq, p0 + s * dp);
    }
    // delta(X - mu q - nu p) contributes 1/|(mu,nu)| per unit arc length.
    t.values[k] = sum * h / (2.0 * kPi * r);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Direct frame quadrature

namespace {

/// sum_j f_j exp(-i k y_j) dy for y_j on a uniform grid, phases by rotation recurrence.
cplx chirp_sum(const std::vector<cplx>& f, const UniformGrid& y, double k) {
  const cplx step = std::polar(1.0, -k * y.spacing());
  cplx phase = std::polar(1.0, -k * y.min);
  cplx s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    s += f[j] * phase;
    phase *= step;
  }
  return s * y.spacing();
}

}  // namespace

Tomogram frame_quadrature(const WaveFunction& psi, const ReferenceFrame& f, const UniformGrid& grid) {
  f.validate();
  Tomogram t{f, grid, std::vector<double>(grid.size()), psi.time, psi.spec};
  const auto& xg = psi.x_grid;

  if (std::abs(f.nu) >= std::abs(f.mu)) {
    // <X| = (2 pi |nu|)^{-1/2} exp(-i (X y - mu y^2 / 2) / nu)
    std::vector<cplx> chirped(xg.size());
    for (std::size_t j = 0; j < xg.size(); ++j) {
      const double y = xg[j];
      chirped[j] = psi.values[j] * std::polar(1.0, f.mu * y * y / (2.0 * f.nu));
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const cplx amp = chirp_sum(chirped, xg, (grid[k] - f.delta) / f.nu);
      t.values[k] = std::norm(amp) / (2.0 * kPi * std::abs(f.nu));
    }
    return t;
  }

  // Momentum representation: with q' = p, p' = -q the observable reads
  // nu q' - mu p', so the same kernel applies with (mu, nu) -> (nu, -mu).
  double p2 = 0.0;
  for (std::size_t j = 1; j + 1 < xg.size(); ++j) {
    p2 += std::norm((psi.values[j + 1] - psi.values[j - 1]) / (2.0 * xg.spacing()));
  }
  p2 *= xg.spacing();
  const double p_max = 8.0 * std::sqrt(p2) + 4.0;
  const UniformGrid pg = UniformGrid::symmetric(std::min(p_max, kPi / xg.spacing()), 0.01);
  std::vector<cplx> phi(pg.size());
  for (std::size_t k = 0; k < pg.size(); ++k) {
    phi[k] = chirp_sum(psi.values, xg, pg[k]) / std::sqrt(2.0 * kPi);
  }
  const double mu2 = f.nu;
  const double nu2 = -f.mu;
  for (std::size_t j = 0; j < pg.size(); ++j) {
    const double y = pg[j];
    phi[j] *= std::polar(1.0, mu2 * y * y / (2.0 * nu2));
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx amp = chirp_sum(phi, pg, (grid[k] - f.delta) / nu2);
    t.values[k] = std::norm(amp) / (2.0 * kPi * std::abs(nu2));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Families and inversion

UniformGrid family_x_grid(const StateSpec& spec, const TrajectoryPoint& pt, double half_width,
                          double step) {
  // Support grows linearly in (mu, nu), so the box corners bound every member.
  double reach = 0.0;
  for (double sm : {-1.0, 1.0}) {
    for (double sn : {-1.0, 1.0}) {
      const auto s = tomogram_support(spec, pt, {sm * half_width, sn * half_width, 0.0});
      reach = std::max({reach, std::abs(s.lo), std::abs(s.hi)});
    }
  }
  return UniformGrid::symmetric(reach, step);
}

std::vector<Tomogram> tomogram_family(const StateSpec& spec, const TrajectoryPoint& pt, double half_width,
                                      double spacing, const UniformGrid& grid, Coverage coverage,
                                      FormulaVariant variant) {
  if (!(spacing > 0.0) || !(half_width >= spacing)) {
    throw ValidationError("family requires spacing > 0 and half-width >= spacing");
  }
  const auto k = static_cast<long>(std::llround(half_width / spacing));
  std::vector<Tomogram> family;
  family.reserve(static_cast<std::size_t>((2 * k + 1) * (2 * k + 1)));
  for (long i = -k; i <= k; ++i) {
    for (long j = -k; j <= k; ++j) {
      if (i == 0 && j == 0) continue;
      const ReferenceFrame f{spacing * static_cast<double>(i), spacing * static_cast<double>(j), 0.0};
      family.push_back(marginal(spec, pt, f, grid, variant, coverage));
    }
  }
  return family;
}

Reconstruction inverse_transform(std::span<const Tomogram> family, const UniformGrid& q_grid,
                                 const UniformGrid& p_grid) {
  if (family.size() < 2) throw ValidationError("inverse_transform needs a (mu, nu) family of tomograms");
  const UniformGrid& xg = family.front().x_grid;
  double spacing = 0.0;
  for (const auto& t : family) {
    if (t.frame.delta != 0.0) throw ValidationError("inverse_transform: member with delta != 0");
    if (t.x_grid.min != xg.min || t.x_grid.max != xg.max || t.x_grid.n != xg.n) {
      throw ValidationError("inverse_transform: members have inconsistent X grids");
    }
    if (t.values.size() != xg.size()) throw ValidationError("inverse_transform: malformed member");
    for (double v : {std::abs(t.frame.mu), std::abs(t.frame.nu)}) {
      if (v > 0.0 && (spacing == 0.0 || v < spacing)) spacing = v;
    }
  }

  // Lattice indices; every node of the symmetric box except (0,0) must be present once.
  long kmax = 0;
  std::map<std::pair<long, long>, const Tomogram*> nodes;
  for (const auto& t : family) {
    const double fi = t.frame.mu / spacing;
    const double fj = t.frame.nu / spacing;
    const long i = std::lround(fi);
    const long j = std::lround(fj);
    if (std::abs(fi - static_cast<double>(i)) > 1e-6 || std::abs(fj - static_cast<double>(j)) > 1e-6) {
      throw ValidationError("inverse_transform: family is not on a regular (mu, nu) grid");
    }
    if (!nodes.emplace(std::pair{i, j}, &t).second) {
      throw ValidationError("inverse_transform: duplicate frame in family");
    }
    kmax = std::max({kmax, std::abs(i), std::abs(j)});
  }
  const long side = 2 * kmax + 1;
  if (static_cast<long>(nodes.size()) != side * side - 1 &&
      static_cast<long>(nodes.size()) != side * side) {
    throw ValidationError("inverse_transform: family does not fill a symmetric (mu, nu) box");
  }
  for (long i = -kmax; i <= kmax; ++i) {
    for (long j = -kmax; j <= kmax; ++j) {
      if ((i != 0 || j != 0) && !nodes.count({i, j})) {
        throw ValidationError("inverse_transform: family is missing frame (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") * spacing");
      }
    }
  }

  // Characteristic values F(mu, nu) = int w(X) e^{iX} dX, stored nu-major per mu column.
  const std::size_t nx = xg.size();
  std::vector<double> cx(nx), sx(nx);
  for (std::size_t k = 0; k < nx; ++k) {
    const double wgt = xg.spacing() * ((k == 0 || k + 1 == nx) ? 0.5 : 1.0);
    cx[k] = wgt * std::cos(xg[k]);
    sx[k] = wgt * std::sin(xg[k]);
  }
  const auto n = static_cast<std::size_t>(side);
  std::vector<double> f_re(n * n), f_im(n * n);  // index [j * n + i]
  double edge = 0.0;
  for (long i = -kmax; i <= kmax; ++i) {
    for (long j = -kmax; j <= kmax; ++j) {
      const std::size_t idx = static_cast<std::size_t>(j + kmax) * n + static_cast<std::size_t>(i + kmax);
      auto it = nodes.find({i, j});
      if (it == nodes.end()) {
        f_re[idx] = 1.0;
        f_im[idx] = 0.0;
        continue;
      }
      const auto& v = it->second->values;
      const auto z = simd::real_complex_dot(v, cx, sx);
      f_re[idx] = z.re;
      f_im[idx] = z.im;
      const double peak = *std::max_element(v.begin(), v.end());
      if (peak > 0.0) edge = std::max(edge, std::max(v.front(), v.back()) / peak);
    }
  }

  // Trapezoid weights over the lattice axis, with e^{-i m q} tables.
  std::vector<double> axis(n), axis_w(n);
  for (std::size_t a = 0; a < n; ++a) {
    axis[a] = spacing * (static_cast<double>(a) - static_cast<double>(kmax));
    axis_w[a] = spacing * ((a == 0 || a + 1 == n) ? 0.5 : 1.0);
  }
  auto phase_table = [&](const UniformGrid& g, std::vector<double>& c, std::vector<double>& s) {
    c.resize(g.size() * n);
    s.resize(g.size() * n);
    for (std::size_t r = 0; r < g.size(); ++r) {
      for (std::size_t a = 0; a < n; ++a) {
        c[r * n + a] = axis_w[a] * std::cos(axis[a] * g[r]);
        s[r * n + a] = -axis_w[a] * std::sin(axis[a] * g[r]);
      }
    }
  };
  std::vector<double> cq, sq, cp, sp;
  phase_table(q_grid, cq, sq);
  phase_table(p_grid, cp, sp);

  const std::size_t nq = q_grid.size();
  const std::size_t np = p_grid.size();
  Reconstruction out;
  out.map = WignerMap{q_grid, p_grid, std::vector<double>(nq * np), family.front().time, family.front().spec};
  std::vector<double> g_re(n), g_im(n);
  for (std::size_t a = 0; a < nq; ++a) {
    const std::span<const double> rc(cq.data() + a * n, n), rs(sq.data() + a * n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = simd::complex_dot({f_re.data() + j * n, n}, {f_im.data() + j * n, n}, rc, rs);
      g_re[j] = z.re;
      g_im[j] = z.im;
    }
    for (std::size_t b = 0; b < np; ++b) {
      const auto z = simd::complex_dot(g_re, g_im, {cp.data() + b * n, n}, {sp.data() + b * n, n});
      out.map.values[a * np + b] = z.re / (2.0 * kPi);
    }
  }
  out.raw_norm_constant = out.map.normalization();
  out.max_edge_fraction = edge;
  if (out.raw_norm_constant > 0.0) {
    out.map.norm_constant = 1.0 / out.raw_norm_constant;
    for (double& v : out.map.values) v *= out.map.norm_constant;
  }
  return out;
}

}  // namespace symtomo
