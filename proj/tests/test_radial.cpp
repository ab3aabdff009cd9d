#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "symbreak/quadrature.hpp"
#include "symbreak/radial.hpp"

using namespace symbreak;

namespace {

ProblemParams pp_params(double A = 10.0) {
  return {4, 3.0, A, Nonlinearity::pure_power(5)};
}

// positive random field vanishing at the Dirichlet node
std::vector<double> random_field(std::mt19937& rng, const RadialGrid& g) {
  std::uniform_real_distribution<double> dist(0.1, 1.0);
  std::vector<double> u(g.size());
  for (auto& x : u) x = dist(rng);
  u.back() = 0.0;
  return u;
}

}  // namespace

TEST_CASE("sphere measures") {
  CHECK(sphere_measure(2) == doctest::Approx(2 * std::numbers::pi));
  CHECK(sphere_measure(3) == doctest::Approx(4 * std::numbers::pi));
  CHECK(sphere_measure(4) ==
        doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("assembled form basics") {
  const auto params = pp_params();
  const RadialGrid grid = RadialGrid::geometric(4, 200, 1e-3, 30.0);
  const RadialOperator op(params, grid);

  std::vector<double> zero(grid.size(), 0.0);
  CHECK(op.form(zero, zero) == 0.0);

  std::mt19937 rng(1);
  const auto u = random_field(rng, grid);
  const double q1 = op.form(u, u);
  CHECK(q1 > 0.0);

  // doubling A exactly doubles the potential part
  auto params2 = params;
  params2.A = 2 * params.A;
  const RadialOperator op2(params2, grid);
  auto params0 = params;
  params0.A = 1e-300;  // stiffness only
  const RadialOperator op0(params0, grid);
  const double grad_part = op0.form(u, u);
  CHECK(op2.form(u, u) - grad_part ==
        doctest::Approx(2.0 * (q1 - grad_part)).epsilon(1e-12));
}

TEST_CASE("discrete norm matches continuum quadrature on a smooth profile") {
  const auto params = pp_params();
  auto profile = [](double r) {
    return r < 1.0 || r > 8.0 ? 0.0
                              : std::pow(std::sin(std::numbers::pi *
                                                  (r - 1.0) / 7.0), 2);
  };
  auto dprofile = [](double r) {
    if (r < 1.0 || r > 8.0) return 0.0;
    const double w = std::numbers::pi / 7.0;
    return w * std::sin(2.0 * w * (r - 1.0));
  };
  const double sN = sphere_measure(4);
  const double exact =
      sN * adaptive_simpson(
               [&](double r) {
                 const double d = dprofile(r);
                 return (d * d + params.A * std::pow(r, -params.alpha) *
                                     profile(r) * profile(r)) *
                        r * r * r;
               },
               1.0, 8.0, 1e-10);
  double prev_err = 1e9;
  for (int n : {400, 800, 1600}) {
    const RadialGrid grid = RadialGrid::geometric(4, n, 1e-3, 30.0);
    const RadialOperator op(params, grid);
    std::vector<double> u(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) u[i] = profile(grid.r[i]);
    const double err = std::abs(op.form(u, u) - exact) / exact;
    CHECK(err < prev_err * 0.9);  // refinement improves
    prev_err = err;
  }
  CHECK(prev_err < 1e-3);
}

TEST_CASE("rejects a potential that overflows at the first node") {
  ProblemParams params{4, 30.0, 1.0, Nonlinearity::pure_power(5)};
  const RadialGrid grid = RadialGrid::geometric(4, 100, 1e-30, 10.0);
  CHECK_THROWS_AS(RadialOperator(params, grid), std::invalid_argument);
}

TEST_CASE("solve inverts apply") {
  const auto params = pp_params();
  const RadialGrid grid = RadialGrid::geometric(4, 300, 1e-3, 30.0);
  const RadialOperator op(params, grid);
  std::mt19937 rng(2);
  const auto u = random_field(rng, grid);
  std::vector<double> b(grid.size());
  op.apply(u, b);
  const auto v = op.solve(b);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(v[i] == doctest::Approx(u[i]).epsilon(1e-10));
}

TEST_CASE("energy gradient matches finite differences") {
  const auto params = pp_params();
  const RadialGrid grid = RadialGrid::geometric(4, 120, 1e-3, 30.0);
  const RadialOperator op(params, grid);
  std::mt19937 rng(3);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = random_field(rng, grid);
    auto v = random_field(rng, grid);
    const auto g = grad_energy(op, u);
    const double analytic = op.form(g, v);
    std::vector<double> up = u, um = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
      up[i] += h * v[i];
      um[i] -= h * v[i];
    }
    const double fd = (energy(op, up) - energy(op, um)) / (2 * h);
    CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
  }
}

TEST_CASE("zero field has zero energy and gradient") {
  const auto params = pp_params();
  const RadialGrid grid = RadialGrid::geometric(4, 100, 1e-3, 30.0);
  const RadialOperator op(params, grid);
  std::vector<double> zero(grid.size(), 0.0);
  CHECK(energy(op, zero) == 0.0);
  for (double g : grad_energy(op, zero)) CHECK(g == 0.0);
}

TEST_CASE("vanishing nonlinearity: gradient is the identity, no root") {
  std::vector<double> s{0.5, 1.0, 2.0}, fv{0.0, 0.0, 0.0};
  ProblemParams params{4, 3.0, 10.0,
                       Nonlinearity::tabulated(s, fv, 3, 5, 1, 5, 1)};
  const RadialGrid grid = RadialGrid::geometric(4, 100, 1e-3, 30.0);
  const RadialOperator op(params, grid);
  std::mt19937 rng(4);
  const auto u = random_field(rng, grid);
  const auto g = grad_energy(op, u);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(g[i] == doctest::Approx(u[i]).epsilon(1e-9));
  CHECK_THROWS_AS(nehari_project(op, u), NehariBracketError);
  auto [sol, rep] = ground_state_radial(op, u);
  CHECK(rep.status == SolveStatus::NoSignChange);
}

TEST_CASE("nehari projection properties") {
  const auto params = pp_params();
  const RadialGrid grid = RadialGrid::geometric(4, 150, 1e-3, 30.0);
  const RadialOperator op(params, grid);
  std::mt19937 rng(5);
  const auto u = random_field(rng, grid);
  const double t = nehari_project(op, u);
  CHECK(t > 0.0);

  // g'(t*) ~ 0
  auto gprime = [&](double tt) {
    double acc = tt * op.form(u, u);
    const auto omega = op.omega();
    for (std::size_t i = 0; i < u.size(); ++i)
      acc -= omega[i] * params.nonlin.f(tt * u[i]) * u[i];
    return acc;
  };
  CHECK(std::abs(gprime(t)) < 1e-6 * std::abs(gprime(2 * t)));

  // scaling: t*(cu) = t*(u)/c
  std::vector<double> u3 = u;
  for (auto& x : u3) x *= 3.0;
  CHECK(nehari_project(op, u3) == doctest::Approx(t / 3.0).epsilon(1e-9));

  // brute-force fibering maximizer agrees
  const int steps = 10000;
  const double t_hi = 3.0 * t;
  double best = 0, best_t = 0;
  for (int i = 1; i <= steps; ++i) {
    const double tt = t_hi * i / steps;
    std::vector<double> tu = u;
    for (auto& x : tu) x *= tt;
    const double e = energy(op, tu);
    if (e > best) {
      best = e;
      best_t = tt;
    }
  }
  CHECK(std::abs(best_t - t) <= t_hi / steps + 1e-12);

  std::vector<double> zero(grid.size(), 0.0);
  CHECK_THROWS_AS(nehari_project(op, zero), std::invalid_argument);
}

TEST_CASE("ground state: convergence, positivity, fixed point") {
  const auto params = pp_params();
  const RadialGrid grid = RadialGrid::scaled(4, 3.0, 10.0, 800);
  const RadialOperator op(params, grid);
  auto [u, rep] = ground_state_radial(op, default_radial_init(grid));
  REQUIRE(rep.status == SolveStatus::Converged);
  CHECK(rep.level > 0.0);
  CHECK(rep.min_value >= -1e-10);
  CHECK(rep.nehari_t == doctest::Approx(1.0).epsilon(1e-4));

  // restarting from the solution stays put
  auto [u2, rep2] = ground_state_radial(op, u);
  CHECK(rep2.iterations <= 2);
  CHECK(rep2.level == doctest::Approx(rep.level).epsilon(1e-8));
}

TEST_CASE("level scaling across A follows the rescaling law") {
  std::vector<std::pair<double, double>> pts;
  for (double A : {10.0, 30.0, 100.0}) {
    ProblemParams params = pp_params(A);
    const RadialGrid grid = RadialGrid::scaled(4, 3.0, A, 700);
    const RadialOperator op(params, grid);
    auto [u, rep] = ground_state_radial(op, default_radial_init(grid));
    REQUIRE(rep.status == SolveStatus::Converged);
    pts.push_back({A, rep.level});
  }
  const double slope = fit_level_scaling(pts);
  const double expected = level_scaling_exponent(4, 3.0, 5.0);
  CHECK(expected == doctest::Approx(2.0 / 3.0));
  CHECK(slope == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("slope fit is exact on synthetic power data") {
  std::vector<std::pair<double, double>> pts;
  for (double A : {1.0, 5.0, 40.0, 300.0}) pts.push_back({A, 2.7 * std::pow(A, 0.37)});
  CHECK(fit_level_scaling(pts) == doctest::Approx(0.37).epsilon(1e-12));
  CHECK_THROWS_AS(fit_level_scaling({{1.0, 1.0}, {2.0, -1.0}, {3.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_level_scaling({{1.0, 1.0}, {2.0, 2.0}}),
                  std::invalid_argument);
}

TEST_CASE("min-expression agrees with the direct exponent") {
  CHECK(level_scaling_min_exponent(4, 3.0, 3.0, 8.0) == doctest::Approx(1.0));
  CHECK(level_scaling_exponent(4, 3.0, 5.0) == doctest::Approx(2.0 / 3.0));
}
