#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "symbreak/nonlinearity.hpp"

namespace symbreak {

struct ProblemParams {
  int N = 4;
  double alpha = 3;
  double A = 10;
  Nonlinearity nonlin = Nonlinearity::double_power_min(8);
};

// (d-1)-dimensional measure of the unit sphere of R^d.
double sphere_measure(int d);

// Characteristic spatial scale of the problem: A^{1/(alpha-2)} for
// alpha != 2 (the exact rescaling that removes A from the pure-power
// functional), 1 at alpha = 2.
double problem_scale(double alpha, double A);

// Geometric mesh on (r_min, r_max], Dirichlet at r_max. The surface
// measure sigma_N r^{N-1} lives in the assembled weights, not the nodes.
struct RadialGrid {
  std::vector<double> r;  // strictly increasing, r.back() = r_max
  int N = 4;

  static RadialGrid geometric(int N, int nodes, double r_min, double r_max);
  // Reference template [r_min_ref, r_max_ref] scaled by problem_scale.
  static RadialGrid scaled(int N, double alpha, double A, int nodes,
                           double r_min_ref = 1e-3, double r_max_ref = 60.0);
  std::size_t size() const { return r.size(); }
};

// Assembled quadratic form ||u||_A^2 = u^T (K + A diag(pi)) u with
// tridiagonal stiffness K (P1 elements, exact r^{N-1} cell moments) and
// lumped potential weights pi_i (exact r^{N-1-alpha} dual-cell moments).
// Unknowns are the nodes 0..n-2; the last node carries the Dirichlet zero
// and fields still have length n with u[n-1] = 0 maintained by callers.
class RadialOperator {
 public:
  RadialOperator(const ProblemParams& params, const RadialGrid& grid);

  std::size_t size() const { return n_; }
  const RadialGrid& grid() const { return grid_; }
  const ProblemParams& params() const { return params_; }

  // v = L u
  void apply(std::span<const double> u, std::span<double> v) const;
  // u^T L v
  double form(std::span<const double> u, std::span<const double> v) const;
  // L^{-1} b by Thomas elimination
  std::vector<double> solve(std::span<const double> b) const;

  // dual-cell quadrature weights for integrals of g(u): sum_i omega_i g(u_i)
  std::span<const double> omega() const { return omega_; }

 private:
  ProblemParams params_;
  RadialGrid grid_;
  std::size_t n_;  // number of nodes (incl. Dirichlet node)
  std::vector<double> diag_, off_;  // tridiagonal L over nodes 0..n-2
  std::vector<double> omega_;
};

double energy(const RadialOperator& op, std::span<const double> u);
// Riesz representative of I'(u) in the A-inner product: u - L^{-1} b(f(u)).
std::vector<double> grad_energy(const RadialOperator& op,
                                std::span<const double> u);

struct NehariBracketError : std::runtime_error {
  double t_min, t_max;
  NehariBracketError(double lo, double hi)
      : std::runtime_error("Nehari fibering derivative has no sign change"),
        t_min(lo), t_max(hi) {}
};

struct NehariOptions {
  double t_min = 1e-10;
  double t_max = 1e12;
  double tol = 1e-12;   // relative bracket width
  double t_hint = 1.0;  // bracketing starts near the expected root
};

enum class SolveStatus { Converged, MaxIterations, NoSignChange };

struct SolveReport {
  double level = 0;
  int iterations = 0;
  double residual = 0;
  double nehari_t = 0;
  double min_value = 0;
  SolveStatus status = SolveStatus::Converged;
};

struct DescentOptions {
  double step = 0.5;
  double tol = 1e-8;  // residual relative to ||u||_A
  int max_iterations = 3000;
  NehariOptions nehari{};
};

// Smallest root of g'(t) = t ||u||_A^2 - sum omega_i f(t u_i) u_i, by a
// geometric scan for the first sign change followed by bisection.
double nehari_project(const RadialOperator& op, std::span<const double> u,
                      const NehariOptions& opt = {});

// Projected-gradient descent on the Nehari manifold; nonnegative iterates.
std::pair<std::vector<double>, SolveReport> ground_state_radial(
    const RadialOperator& op, std::span<const double> init,
    const DescentOptions& opt = {});

// Default positive initial profile: log-Gaussian bump centered at a
// fraction of the grid scale.
std::vector<double> default_radial_init(const RadialGrid& grid);

// Least-squares slope of log(level) vs log(A). Requires >= 3 points with
// positive levels.
double fit_level_scaling(const std::vector<std::pair<double, double>>& data);

// (N-2)/(alpha-2) * (p-2*)/(p-2): the lower-bound exponent for m_A.
double level_scaling_exponent(int N, double alpha, double p);
// Same value through the min-expression in (p1, p2).
double level_scaling_min_exponent(int N, double alpha, double p1, double p2);

}  // namespace symbreak
