// End-to-end acceptance checks. One line per criterion; exit status is
// nonzero if any of them fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "symbreak/cylindrical.hpp"
#include "symbreak/exponents.hpp"
#include "symbreak/nonlinearity.hpp"
#include "symbreak/radial.hpp"
#include "symbreak/testfn.hpp"

using namespace symbreak;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("criterion %02d %-24s %s  (%s)\n", index, name.c_str(),
              ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// records of every converged solve, for the global nonnegativity check
struct SolveTrace {
  double level;
  double min_value;
};
std::vector<SolveTrace> traces;

void c1_exponent_identity() {
  double worst = 0.0;
  for (int N = 4; N <= 12; ++N) {
    const ExponentSet e = exponent_set(N, 2.0 / (N - 1));
    worst = std::max(worst, std::abs(e.p_star_alpha - e.two_star_alpha));
  }
  report(1, "exponent-identity", worst < 1e-12, "max gap " + fmt(worst));
}

void c2_nu_values() {
  bool ok = nu(4, 3, 3, 8) == 1 && nu(10, 3, 3, 8) == 5 &&
            nu(4, 1, 2.5, 8) == 1;
  std::string detail = "spot values " + std::string(ok ? "ok" : "wrong");

  int valid = 0;
  for (int N : {4, 5, 7, 10, 15}) {
    for (double alpha : {0.8, 1.2, 1.7, 2.5, 3.5, 5.0}) {
      for (double p1 : {2.2, 2.6, 3.0}) {
        for (double p2 : {5.0, 8.0, 12.0}) {
          const ApplicabilityReport r =
              theorem_applicability({N, alpha, p1, p2});
          if (!r.applicable) continue;
          ++valid;
          if (r.nu < 1) ok = false;
        }
      }
    }
  }
  if (valid < 100) ok = false;
  detail += ", " + std::to_string(valid) + " valid grid points";

  int prev = nu(4, 3, 3, 8);
  for (int N = 5; N <= 50; ++N) {
    const int v = nu(N, 3, 3, 8);
    if (v < prev) ok = false;
    prev = v;
  }
  report(2, "nu-values", ok, detail);
}

void c3_quadrature_identity() {
  const BumpSpec bump;
  const auto nl = Nonlinearity::double_power_min(8);
  double worst = 0.0;
  for (double A : {4.0, 100.0})
    for (double alpha : {3.0, 1.0})
      worst = std::max(worst,
                       integrals(bump, A, 2, 4, alpha, nl).max_rel_discrepancy);
  report(3, "quadrature-identity", worst < 1e-6, "worst gap " + fmt(worst));
}

void c4_ratio_divergence() {
  const BumpSpec bump;
  const auto nl = Nonlinearity::double_power_min(8);
  std::vector<double> sweep;
  for (double A = 1e2; A <= 1.001e6; A *= 10.0) sweep.push_back(A);
  const ThresholdResult thr = threshold_AK(bump, 2, 4, 3.0, nl, sweep);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < sweep.size(); ++i)
    pts.push_back({sweep[i], thr.ratios[i]});
  const double slope = fit_level_scaling(pts);
  bool ok = slope >= 0.85 && slope <= 1.1 && std::isfinite(thr.A_K);
  bool above = false;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (sweep[i] == thr.A_K) above = true;
    if (above && !(thr.ratios[i] > 1.0)) ok = false;
  }
  report(4, "ratio-divergence", ok,
         "slope " + fmt(slope) + ", A_K " + fmt(thr.A_K));
}

void c5_endpoint_bound() {
  const BumpSpec bump;
  const auto nl = Nonlinearity::double_power_min(8);
  bool ok = true;
  std::string detail;
  for (double alpha : {1.0, 3.0}) {
    std::vector<std::pair<double, double>> pts;
    for (double A = 1e6; A <= 1.001e8; A *= std::sqrt(10.0)) {
      const EndpointResult ep = endpoint_ubar(bump, A, 2, 4, alpha, nl);
      if (!(ep.energy < 0.0) || !(ep.lambda > 1.0)) ok = false;
      pts.push_back({A, ep.bound});
    }
    const double slope = fit_level_scaling(pts);
    const double expected = alpha < 2 ? 0.5 + 4.0 * (1.0 / alpha - 0.5) : 0.5;
    if (std::abs(slope - expected) > 0.05 * expected) ok = false;
    if (!detail.empty()) detail += ", ";
    detail += "slope(alpha=" + fmt(alpha) + ") " + fmt(slope) + " vs " +
              fmt(expected);
  }
  report(5, "endpoint-bound", ok, detail);
}

void c6_radial_scaling() {
  std::vector<std::pair<double, double>> pts;
  bool ok = true;
  for (double A : {10.0, 30.0, 100.0}) {
    ProblemParams params{4, 3.0, A, Nonlinearity::pure_power(5)};
    const RadialGrid grid = RadialGrid::scaled(4, 3.0, A, 2000);
    const RadialOperator op(params, grid);
    auto [u, rep] = ground_state_radial(op, default_radial_init(grid));
    if (rep.status != SolveStatus::Converged) ok = false;
    traces.push_back({rep.level, rep.min_value});
    pts.push_back({A, rep.level});
  }
  const double slope = fit_level_scaling(pts);
  ok = ok && std::abs(slope - 2.0 / 3.0) <= 0.05 * (2.0 / 3.0);
  report(6, "radial-scaling", ok, "slope " + fmt(slope) + " vs 0.666667");
}

void c7_gradient_checks() {
  std::mt19937 rng(20240901);
  std::uniform_real_distribution<double> dist(0.1, 1.0);
  const double h = 1e-5;
  double worst = 0.0;

  ProblemParams params{4, 3.0, 10.0, Nonlinearity::pure_power(5)};
  const RadialGrid rg = RadialGrid::geometric(4, 120, 1e-3, 30.0);
  const RadialOperator rop(params, rg);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> u(rg.size()), v(rg.size());
    for (auto& x : u) x = dist(rng);
    for (auto& x : v) x = dist(rng);
    u.back() = v.back() = 0.0;
    const auto g = grad_energy(rop, u);
    const double analytic = rop.form(g, v);
    std::vector<double> up = u, um = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
      up[i] += h * v[i];
      um[i] -= h * v[i];
    }
    const double fd = (energy(rop, up) - energy(rop, um)) / (2 * h);
    worst = std::max(worst, std::abs(fd - analytic) / std::abs(analytic));
  }

  const CylGrid cg = CylGrid::geometric(4, 2, 16, 16, 1e-3, 30.0);
  const CylOperator cop(params, cg);
  const std::size_t ns = cg.s.size(), nt = cg.t.size();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> u(cg.size()), v(cg.size());
    for (auto& x : u) x = dist(rng);
    for (auto& x : v) x = dist(rng);
    for (std::size_t i = 0; i < ns; ++i) u[i * nt + nt - 1] = v[i * nt + nt - 1] = 0.0;
    for (std::size_t j = 0; j < nt; ++j) u[(ns - 1) * nt + j] = v[(ns - 1) * nt + j] = 0.0;
    const auto g = grad_energy(cop, u);
    const double analytic = cop.form(g, v);
    std::vector<double> up = u, um = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
      up[i] += h * v[i];
      um[i] -= h * v[i];
    }
    const double fd = (energy(cop, up) - energy(cop, um)) / (2 * h);
    worst = std::max(worst, std::abs(fd - analytic) / std::abs(analytic));
  }
  report(7, "gradient-checks", worst < 1e-6, "worst rel err " + fmt(worst));
}

void c8_nehari_oracle() {
  ProblemParams params{4, 3.0, 10.0, Nonlinearity::pure_power(5)};
  const RadialGrid rg = RadialGrid::geometric(4, 150, 1e-3, 30.0);
  const RadialOperator op(params, rg);
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> dist(0.05, 1.5);
  bool ok = true;
  double worst_gap = 0.0;
  const int steps = 10000;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> u(rg.size());
    for (auto& x : u) x = dist(rng);
    u.back() = 0.0;
    const double t = nehari_project(op, u);
    const double t_hi = 3.0 * t;
    double best = -1e300, best_t = 0;
    std::vector<double> tu(u.size());
    for (int i = 1; i <= steps; ++i) {
      const double tt = t_hi * i / steps;
      for (std::size_t k = 0; k < u.size(); ++k) tu[k] = tt * u[k];
      const double e = energy(op, tu);
      if (e > best) {
        best = e;
        best_t = tt;
      }
    }
    const double gap = std::abs(best_t - t);
    worst_gap = std::max(worst_gap, gap / (t_hi / steps));
    if (gap > t_hi / steps + 1e-12) ok = false;
  }

  const RadialGrid sg = RadialGrid::scaled(4, 3.0, 10.0, 800);
  const RadialOperator sop(params, sg);
  auto [u, rep] = ground_state_radial(sop, default_radial_init(sg));
  traces.push_back({rep.level, rep.min_value});
  if (rep.status != SolveStatus::Converged ||
      std::abs(rep.nehari_t - 1.0) > 1e-4)
    ok = false;
  report(8, "nehari-oracle", ok,
         "worst scan gap " + fmt(worst_gap) + " steps, t*(solution) " +
             fmt(rep.nehari_t));
}

void c9_symmetry_breaking() {
  ProblemParams tmpl{4, 3.0, 1.0, Nonlinearity::double_power_min(8)};
  BreakSweepOptions opt;
  opt.radial_nodes = 1500;
  opt.cyl_nodes = 96;
  opt.workers = 3;
  const std::vector<double> sweep{2, 5, 10, 30, 100, 300};
  const BreakSweepResult res = break_sweep(tmpl, 2, sweep, opt);
  bool ok = true;
  bool any_broken = false;
  for (const auto& r : res.reports) {
    if (r.radial_status == SolveStatus::Converged)
      traces.push_back({r.m_A, 0.0});
    if (r.cyl_status == SolveStatus::Converged)
      traces.push_back({r.c_AK, 0.0});
    if (r.broken) {
      any_broken = true;
      if (!(r.c_AK < r.m_A) || !(r.deviation > 0.1)) ok = false;
    }
  }
  if (!any_broken) ok = false;
  if (res.reports.front().broken) ok = false;  // smallest A must not break
  std::string detail = "A_tilde " + fmt(res.A_tilde) + ", margins";
  for (const auto& r : res.reports)
    detail += " " + fmt((r.m_A - r.c_AK) / r.m_A);
  report(9, "symmetry-breaking", ok, detail);
}

void c10_nonnegativity() {
  bool ok = !traces.empty();
  double worst_min = 0.0, worst_level = 1e300;
  for (const auto& t : traces) {
    worst_min = std::min(worst_min, t.min_value);
    worst_level = std::min(worst_level, t.level);
    if (t.min_value < -1e-10 || !(t.level > 0.0)) ok = false;
  }
  report(10, "nonnegativity", ok,
         "min value " + fmt(worst_min) + ", min level " + fmt(worst_level));
}

}  // namespace

int main() {
  c1_exponent_identity();
  c2_nu_values();
  c3_quadrature_identity();
  c4_ratio_divergence();
  c5_endpoint_bound();
  c6_radial_scaling();
  c7_gradient_checks();
  c8_nehari_oracle();
  c9_symmetry_breaking();
  c10_nonnegativity();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  else std::printf("all criteria passed\n");
  return failures ? 1 : 0;
}
