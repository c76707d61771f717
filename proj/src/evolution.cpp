#include "symtomo/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace symtomo {

TomogramField sample_field(const TomogramEvaluator& w, const TrapParams& params,
                           std::span<const double> x_values, const UniformGrid& mu_grid,
                           const UniformGrid& nu_grid, const UniformGrid& t_grid, double delta) {
  for (std::size_t i = 0; i < mu_grid.size(); ++i) {
    for (std::size_t j = 0; j < nu_grid.size(); ++j) {
      if (std::hypot(mu_grid[i], nu_grid[j]) < kDegenerateFrameRadius) {
        throw ValidationError("tomogram field grid enters the degenerate-frame disk");
      }
    }
  }
  TomogramField f{{x_values.begin(), x_values.end()}, mu_grid, nu_grid, t_grid, delta, params, {}};
  f.values.reserve(t_grid.size() * mu_grid.size() * nu_grid.size() * x_values.size());
  for (std::size_t it = 0; it < t_grid.size(); ++it) {
    for (std::size_t i = 0; i < mu_grid.size(); ++i) {
      for (std::size_t j = 0; j < nu_grid.size(); ++j) {
        const ReferenceFrame frame{mu_grid[i], nu_grid[j], delta};
        for (double x : x_values) f.values.push_back(w(x, frame, t_grid[it]));
      }
    }
  }
  return f;
}

TomogramEvaluator analytic_evaluator(const StateSpec& spec, const ComplexTrajectory& traj,
                                     FormulaVariant variant) {
  return [spec, &traj, variant](double x, const ReferenceFrame& frame, double t) {
    return marginal_value(spec, epsilon_at(traj, t), frame, x, variant);
  };
}

double evolution_residual(const TomogramField& f) {
  const auto nt = f.t_grid.size();
  const auto nm = f.mu_grid.size();
  const auto nn = f.nu_grid.size();
  if (nt < 3 || nm < 3 || nn < 3) {
    throw ValidationError("evolution_residual needs at least 3 samples in t, mu and nu");
  }
  const double ht = f.t_grid.spacing();
  const double hm = f.mu_grid.spacing();
  const double hn = f.nu_grid.spacing();
  double worst = 0.0;
  for (std::size_t it = 1; it + 1 < nt; ++it) {
    const double w2 = frequency_squared(f.params, f.t_grid[it]);
    for (std::size_t i = 1; i + 1 < nm; ++i) {
      const double mu = f.mu_grid[i];
      for (std::size_t j = 1; j + 1 < nn; ++j) {
        const double nu = f.nu_grid[j];
        for (std::size_t k = 0; k < f.x_values.size(); ++k) {
          const double dt = (f.at(it + 1, i, j, k) - f.at(it - 1, i, j, k)) / (2 * ht);
          const double dmu = (f.at(it, i + 1, j, k) - f.at(it, i - 1, j, k)) / (2 * hm);
          const double dnu = (f.at(it, i, j + 1, k) - f.at(it, i, j - 1, k)) / (2 * hn);
          worst = std::max(worst, std::abs(dt - mu * dnu + w2 * nu * dmu));
        }
      }
    }
  }
  return worst;
}

ResidualStudy richardson_residual(const TomogramEvaluator& w, const TrapParams& params,
                                  std::span<const double> x_values,
                                  std::span<const ReferenceFrame> centres,
                                  std::span<const double> times, double h) {
  auto at_spacing = [&](double step) {
    double worst = 0.0;
    for (const auto& c : centres) {
      for (double t : times) {
        const auto field = sample_field(w, params, x_values, UniformGrid(c.mu - step, c.mu + step, 3),
                                        UniformGrid(c.nu - step, c.nu + step, 3),
                                        UniformGrid(t - step, t + step, 3), c.delta);
        worst = std::max(worst, evolution_residual(field));
      }
    }
    return worst;
  };
  ResidualStudy s;
  s.residual_h = at_spacing(h);
  s.residual_half = at_spacing(h / 2);
  s.ratio = s.residual_half > 0 ? s.residual_h / s.residual_half : 0.0;
  return s;
}

ReferenceFrame characteristic_origin(const ReferenceFrame& frame, double t0, double t1,
                                     const TrapParams& params, double tol) {
  frame.validate();
  params.validate();
  if (t1 < t0) throw ValidationError("propagation requires t1 >= t0");
  if (t1 == t0) return frame;
  // Backward in s from t1 to t0, written as forward integration in tau = t1 - s.
  auto rhs = [&params, t1](double tau, const ode::State<2>& y) {
    return ode::State<2>{-frequency_squared(params, t1 - tau) * y[1], y[0]};
  };
  const auto samples =
      ode::integrate<2>(rhs, 0.0, ode::State<2>{frame.mu, frame.nu}, t1 - t0, {tol, tol * 1e-3});
  const auto& end = samples.back().y;
  return {end[0], end[1], frame.delta};
}

double flow_jacobian_determinant(const ReferenceFrame& frame, double t0, double t1,
                                 const TrapParams& params, double tol, double h) {
  auto origin = [&](double dm, double dn) {
    return characteristic_origin({frame.mu + dm, frame.nu + dn, frame.delta}, t0, t1, params, tol);
  };
  const auto mp = origin(h, 0), mm = origin(-h, 0), np = origin(0, h), nm = origin(0, -h);
  const double a = (mp.mu - mm.mu) / (2 * h);
  const double b = (np.mu - nm.mu) / (2 * h);
  const double c = (mp.nu - mm.nu) / (2 * h);
  const double d = (np.nu - nm.nu) / (2 * h);
  return a * d - b * c;
}

Propagated propagate(const std::function<double(double, const ReferenceFrame&)>& w0,
                     const ReferenceFrame& frame, double t0, double t1, const TrapParams& params,
                     const UniformGrid& x_grid, double tol) {
  Propagated out;
  out.source = characteristic_origin(frame, t0, t1, params, tol);
  out.tomogram.frame = frame;
  out.tomogram.x_grid = x_grid;
  out.tomogram.time = t1;
  out.tomogram.values.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) out.tomogram.values[i] = w0(x_grid[i], out.source);
  return out;
}

}  // namespace symtomo
