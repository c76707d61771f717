#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <algorithm>

#include "oracles.hpp"
#include "symtomo/tomograms.hpp"

using namespace symtomo;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

const UniformGrid kX = UniformGrid::symmetric(12.0, 0.01);

double max_diff(const Tomogram& a, const Tomogram& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

/// Local maxima of a sampled curve above `floor`.
std::vector<double> peaks(const UniformGrid& g, const std::vector<double>& v, double floor) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > floor) out.push_back(g[i]);
  }
  return out;
}

const TrajectoryPoint& evolved_point() {
  static const auto traj = solve_epsilon({0.2, 2.0}, 3.0);
  static const auto pt = epsilon_at(traj, 3.0);
  return pt;
}

}  // namespace

TEST_CASE("gaussian moments") {
  const auto p0 = TrajectoryPoint::initial();
  auto m = gaussian_moments(0.0, p0, {1, 0, 0});
  CHECK(m.mean == 0.0);
  CHECK(m.variance == doctest::Approx(0.5).epsilon(1e-15));
  m = gaussian_moments(1.0, p0, {1, 0, 0.5});
  CHECK(m.mean == doctest::Approx(sqrt2 + 0.5).epsilon(1e-15));
  for (double t : {0.3, 1.7, 4.0}) {
    for (double phi : {0.0, 0.4, 2.2, 5.0}) {
      const auto h = gaussian_moments(0.0, TrajectoryPoint::harmonic(t), {std::cos(phi), std::sin(phi), 0});
      CHECK(h.variance == doctest::Approx(0.5).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(gaussian_moments(0.0, p0, {0, 0, 1}), ValidationError);
}

TEST_CASE("printed cross term breaks positivity") {
  const auto p0 = TrajectoryPoint::initial();
  CHECK_THROWS_AS(gaussian_moments(0.0, p0, {1, -1, 0}, {.printed_cross_term = true}), ValidationError);
  const auto printed = gaussian_moments(0.0, p0, {1, 1, 0}, {.printed_cross_term = true});
  CHECK(printed.variance == doctest::Approx(0.5 * (2 + 2 * sqrt2)));
}

TEST_CASE("ground-state Gaussian tomogram") {
  const auto t = marginal_gaussian(0.0, TrajectoryPoint::initial(), {1, 0, 0}, UniformGrid(-6, 6, 1201));
  for (std::size_t i = 0; i < t.x_grid.size(); ++i) {
    const double x = t.x_grid[i];
    CHECK(std::abs(t.values[i] - std::exp(-x * x) / std::sqrt(pi)) < 1e-15);
  }
  CHECK(std::abs(t.normalization() - 1.0) < 1e-8);
  CHECK_THROWS_AS(marginal_gaussian(0.0, TrajectoryPoint::initial(), {1, 0, 0}, UniformGrid(-2, 2, 100)),
                  CoverageError);
}

TEST_CASE("analytic tomograms are normalized in random frames") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto& pt = evolved_point();
  for (int k = 0; k < 30; ++k) {
    ReferenceFrame f{u(rng), u(rng), u(rng) / 2};
    if (f.radius() < 0.05) continue;
    for (StateKind kind : {StateKind::coherent, StateKind::even_cat, StateKind::odd_cat}) {
      const StateSpec spec{kind, cplx(1.2, -0.7)};
      const auto t = marginal(spec, pt, f, covering_x_grid(spec, pt, f));
      CHECK(std::abs(t.normalization() - 1.0) < 1e-8);
      for (double v : t.values) CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("cat tomogram against the t = 0 density") {
  const auto p0 = TrajectoryPoint::initial();
  const UniformGrid g(-8, 8, 1601);

  SUBCASE("odd parity node") {
    for (double delta : {0.0, 0.7, -1.3}) {
      CHECK(marginal_cat_value(Parity::odd, 1.0, p0, {1, 0, delta}, delta) == doctest::Approx(0.0).scale(1.0));
    }
  }
  SUBCASE("real alpha: two peaks at +-sqrt2 alpha") {
    const auto t = marginal_cat(Parity::even, 1.5, p0, {1, 0, 0}, g);
    const auto psi = eval_cat(Parity::even, 1.5, p0, g);
    std::vector<double> density(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) density[i] = std::norm(psi.values[i]);
    CHECK(max_diff(t, Tomogram{{}, g, density}) < 1e-12);
    const auto pk = peaks(g, density, 0.05);
    REQUIRE(pk.size() == 2);
    CHECK(std::abs(pk[0] + sqrt2 * 1.5) <= g.spacing());
    CHECK(std::abs(pk[1] - sqrt2 * 1.5) <= g.spacing());
    const auto printed = marginal_cat(Parity::even, 1.5, p0, {1, 0, 0}, g, {.printed_cat_shift = true},
                                      Coverage::allow_truncation);
    CHECK(max_diff(t, printed) > 1e-2);
  }
  SUBCASE("imaginary alpha: fringes of period pi/(sqrt2 |alpha|)") {
    const cplx a(0.0, 1.5);
    const auto t = marginal_cat(Parity::even, a, p0, {1, 0, 0}, g);
    const auto psi = eval_cat(Parity::even, a, p0, g);
    std::vector<double> density(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) density[i] = std::norm(psi.values[i]);
    CHECK(max_diff(t, Tomogram{{}, g, density}) < 1e-12);
    const double period = pi / (sqrt2 * 1.5);
    CHECK(density[800] == doctest::Approx(*std::max_element(density.begin(), density.end())));
    for (int k = -3; k <= 2; ++k) {
      const double zero = (k + 0.5) * period;
      CHECK(marginal_cat_value(Parity::even, a, p0, {1, 0, 0}, zero) < 1e-15);
      CHECK(marginal_cat_value(Parity::odd, a, p0, {1, 0, 0}, k * period) < 1e-15);
    }
  }
  SUBCASE("real alpha limit reduces to the central Gaussian pair") {
    for (Parity par : {Parity::even, Parity::odd}) {
      const double a = 0.8, n2 = std::pow(cat_normalization(par, a), 2);
      const double s = par == Parity::even ? 1.0 : -1.0;
      for (double x = -4; x <= 4; x += 0.37) {
        const double expect = n2 / std::sqrt(pi) *
                              (std::exp(-(x - sqrt2 * a) * (x - sqrt2 * a)) + std::exp(-(x + sqrt2 * a) * (x + sqrt2 * a)) +
                               s * 2 * std::exp(-2 * a * a) * std::exp(-x * x));
        CHECK(marginal_cat_value(par, a, p0, {1, 0, 0}, x) == doctest::Approx(expect).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("shift and homogeneity of analytic forms") {
  const auto& pt = evolved_point();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    const ReferenceFrame f{u(rng), u(rng), u(rng) / 2};
    for (StateKind kind : {StateKind::coherent, StateKind::even_cat, StateKind::odd_cat}) {
      const StateSpec spec{kind, cplx(1.0, 0.5)};
      for (double x : {-2.0, -0.3, 0.0, 0.9, 2.5}) {
        const double w = marginal_value(spec, pt, f, x);
        const double shifted = marginal_value(spec, pt, {f.mu, f.nu, 0.0}, x - f.delta);
        CHECK(std::abs(w - shifted) <= 1e-12 * std::max(1.0, w));
        for (double lam : {-1.0, 0.5, 3.0}) {
          const double scaled =
              marginal_value(spec, pt, {lam * f.mu, lam * f.nu, lam * f.delta}, lam * x) * std::abs(lam);
          CHECK(std::abs(scaled - w) <= 1e-12 * std::max(1.0, w));
        }
      }
    }
  }
}

TEST_CASE("forward transform of the ground map") {
  const UniformGrid box(-7, 7, 1401);
  const auto w = wigner_coherent_analytic(0.0, TrajectoryPoint::initial(), box, box);
  const UniformGrid g(-5, 5, 201);
  for (double phi : {0.0, 0.3, 1.2, 2.9}) {
    const auto t = forward_transform(w, {std::cos(phi), std::sin(phi), 0}, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(t.values[i] - std::exp(-g[i] * g[i]) / std::sqrt(pi)) < 1e-5);
    }
    CHECK(std::abs(t.normalization() - 1.0) < 1e-5);
  }
  const UniformGrid wide(-10, 10, 401);
  const auto scaled = forward_transform(w, {2, 0, 0}, wide);
  for (std::size_t i = 0; i < wide.size(); ++i) {
    CHECK(std::abs(scaled.values[i] - oracle::gauss(wide[i], 0.0, 2.0)) < 1e-5);
  }
}

TEST_CASE("forward transform agrees with analytic marginals") {
  const UniformGrid box = UniformGrid::symmetric(7.0, 0.005);
  SUBCASE("coherent state on a modulated trajectory") {
    const auto& pt = evolved_point();
    const cplx a(1.0, 0.5);
    const ReferenceFrame f{0.7, -0.4, 1.2};
    const auto w = wigner_coherent_analytic(a, pt, box, box);
    const auto g = covering_x_grid({StateKind::coherent, a}, pt, f, 301);
    CHECK(max_diff(forward_transform(w, f, g), marginal_gaussian(a, pt, f, g)) < 1e-5);
  }
  SUBCASE("even cat at t = 0") {
    const auto p0 = TrajectoryPoint::initial();
    const auto w = wigner_cat_analytic(Parity::even, 1.0, p0, box, box);
    const UniformGrid g(-6, 6, 241);
    CHECK(max_diff(forward_transform(w, {1, 0, 0}, g), marginal_cat(Parity::even, 1.0, p0, {1, 0, 0}, g)) < 1e-4);
    // Shift property through the transform.
    const auto t0 = forward_transform(w, {0.6, 0.9, 0.0}, g);
    const UniformGrid gs(-6 + 0.4, 6 + 0.4, 241);
    const auto t1 = forward_transform(w, {0.6, 0.9, 0.4}, gs);
    CHECK(max_diff(t0, t1) < 1e-8);
  }
}

TEST_CASE("forward transform rejects a map that clips the state") {
  const UniformGrid small(-2, 2, 201);
  const auto w = wigner_coherent_analytic(0.0, TrajectoryPoint::initial(), small, small);
  CHECK_THROWS_AS(forward_transform(w, {1, 0, 0}, UniformGrid(-3, 3, 61)), CoverageError);
}

TEST_CASE("frame quadrature of the wavefunction") {
  const auto& pt = evolved_point();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 8; ++k) {
    const ReferenceFrame f{u(rng), u(rng), u(rng) / 2};
    for (StateKind kind : {StateKind::coherent, StateKind::even_cat, StateKind::odd_cat}) {
      CAPTURE(f.mu);
      CAPTURE(f.nu);
      const StateSpec spec{kind, cplx(1.0, 0.5)};
      const auto g = covering_x_grid(spec, pt, f, 201);
      const auto direct = frame_quadrature(eval_state(spec, pt, kX), f, g);
      CHECK(max_diff(direct, marginal(spec, pt, f, g)) < 1e-6);
    }
  }
  // nu = 0 reduces to the scaled position density.
  const StateSpec spec{StateKind::odd_cat, 1.3};
  const auto psi = eval_state(spec, pt, kX);
  const UniformGrid g(-9, 9, 181);
  const auto t = frame_quadrature(psi, {2.0, 0.0, 0.0}, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i] / 2.0;
    CHECK(std::abs(t.values[i] - std::norm(cat_amplitude(Parity::odd, 1.3, pt, x)) / 2.0) < 1e-8);
  }
}

TEST_CASE("optical slices") {
  const auto p0 = TrajectoryPoint::initial();
  const UniformGrid g(-6, 6, 241);
  for (double phi : {0.0, 0.5, 1.9, 4.0}) {
    const auto t = optical_slice({StateKind::coherent, 0.0}, p0, phi, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(t.values[i] - std::exp(-g[i] * g[i]) / std::sqrt(pi)) < 1e-14);
    }
  }
  const auto c = optical_slice({StateKind::coherent, 1.0}, p0, pi / 2, g);
  const auto m = gaussian_moments(1.0, p0, {std::cos(pi / 2), 1.0, 0});
  CHECK(std::abs(m.mean) < 1e-15);
  CHECK(m.variance == doctest::Approx(0.5));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(c.values[i] - oracle::gauss(g[i], 0.0, 0.5)) < 1e-14);

  // Even cat: the family is pi-periodic in phi up to X -> -X.
  const StateSpec cat{StateKind::even_cat, 1.0};
  for (double phi = 0.0; phi <= pi; phi += pi / 8) {
    const auto a = optical_slice(cat, p0, phi, g);
    const auto b = optical_slice(cat, p0, phi + pi, g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(a.values[i] - b.values[g.size() - 1 - i]) < 1e-12);
  }
}

TEST_CASE("inverse transform round trips") {
  const auto p0 = TrajectoryPoint::initial();
  const UniformGrid qp(-4, 4, 81);
  SUBCASE("ground state") {
    const StateSpec spec{StateKind::coherent, 0.0};
    const auto family = tomogram_family(spec, p0, 6.0, 0.1, family_x_grid(spec, p0, 6.0, 0.02));
    CHECK(family.size() == 121 * 121 - 1);
    const auto r = inverse_transform(family, qp, qp);
    CHECK(std::abs(r.map.at(40, 40) - 2.0) < 0.1);
    CHECK(std::abs(r.raw_norm_constant - 1.0) < 1e-2);
    CHECK(r.max_edge_fraction < 1e-6);
  }
  SUBCASE("even cat") {
    const StateSpec spec{StateKind::even_cat, 1.0};
    const auto family = tomogram_family(spec, p0, 6.0, 0.1, family_x_grid(spec, p0, 6.0, 0.02));
    const auto r = inverse_transform(family, qp, qp);
    const auto truth = wigner_cat_analytic(Parity::even, 1.0, p0, qp, qp);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < truth.values.size(); ++i) {
      num += std::pow(r.map.values[i] - truth.values[i], 2);
      den += std::pow(truth.values[i], 2);
    }
    CHECK(std::sqrt(num / den) <= 0.05);
  }
}

TEST_CASE("inverse transform input validation") {
  const auto p0 = TrajectoryPoint::initial();
  const StateSpec spec{StateKind::coherent, 0.0};
  const UniformGrid g(-6, 6, 121);
  const UniformGrid qp(-3, 3, 31);
  std::vector<Tomogram> none;
  CHECK_THROWS_AS(inverse_transform(none, qp, qp), ValidationError);
  std::vector<Tomogram> one{marginal(spec, p0, {1, 0, 0}, g)};
  CHECK_THROWS_AS(inverse_transform(one, qp, qp), ValidationError);

  auto family = tomogram_family(spec, p0, 0.3, 0.1, g);
  CHECK_NOTHROW(inverse_transform(family, qp, qp));
  auto shifted = family;
  shifted[3].frame.delta = 0.2;
  CHECK_THROWS_AS(inverse_transform(shifted, qp, qp), ValidationError);
  auto regrid = family;
  regrid[5] = marginal(spec, p0, regrid[5].frame, UniformGrid(-6, 6, 241));
  CHECK_THROWS_AS(inverse_transform(regrid, qp, qp), ValidationError);
  auto holes = family;
  holes.erase(holes.begin() + 7);
  CHECK_THROWS_AS(inverse_transform(holes, qp, qp), ValidationError);
  auto off = family;
  off[2].frame.mu += 0.013;
  CHECK_THROWS_AS(inverse_transform(off, qp, qp), ValidationError);
}
