#pragma once

#include <span>
#include <utility>
#include <vector>

#include "symbreak/radial.hpp"
#include "symbreak/testfn.hpp"

namespace symbreak {

// Tensor grid on (0, R]^2 for fields u(|y|, |z|); Dirichlet on the outer
// edges, natural condition on the axes (the weights s^{K-1}, t^{N-K-1}
// vanish there). Requires 2 <= K <= N-2.
struct CylGrid {
  int N = 4;
  int K = 2;
  std::vector<double> s;  // strictly increasing, Dirichlet at s.back()
  std::vector<double> t;

  static CylGrid geometric(int N, int K, int nodes_s, int nodes_t,
                           double r_min, double r_max);
  static CylGrid scaled(int N, int K, double alpha, double A, int nodes_s,
                        int nodes_t, double r_min_ref = 1e-3,
                        double r_max_ref = 60.0);
  std::size_t size() const { return s.size() * t.size(); }
};

// Weighted 5-point Dirichlet form: edge coefficients from exact cell
// moments of s^{K-1} and t^{N-K-1}, lumped potential A (s^2+t^2)^{-alpha/2}.
// Fields are row-major over (i, j) -> i * nt + j with i indexing s.
class CylOperator {
 public:
  CylOperator(const ProblemParams& params, const CylGrid& grid);

  const CylGrid& grid() const { return grid_; }
  const ProblemParams& params() const { return params_; }
  std::size_t size() const { return ns_ * nt_; }

  void apply(std::span<const double> u, std::span<double> v) const;
  double form(std::span<const double> u, std::span<const double> v) const;
  // Jacobi-preconditioned CG
  std::vector<double> solve(std::span<const double> b,
                            double rel_tol = 1e-10,
                            int max_iters = 20000) const;

  std::span<const double> omega() const { return omega_; }

 private:
  ProblemParams params_;
  CylGrid grid_;
  std::size_t ns_, nt_;
  std::vector<double> edge_s_;   // per s-cell coefficient (no t weight)
  std::vector<double> edge_t_;
  std::vector<double> wcell_s_;  // dual-cell moments of s^{K-1}
  std::vector<double> wcell_t_;
  std::vector<double> pot_;      // A * potential lump, per node
  std::vector<double> omega_;
  std::vector<double> inv_diag_;
};

double energy(const CylOperator& op, std::span<const double> u);
std::vector<double> grad_energy(const CylOperator& op,
                                std::span<const double> u);
double nehari_project(const CylOperator& op, std::span<const double> u,
                      const NehariOptions& opt = {});

std::pair<std::vector<double>, SolveReport> ground_state_cyl(
    const CylOperator& op, std::span<const double> init,
    const DescentOptions& opt = {});

// Embed a radial profile (on its own grid) into the 2D grid by linear
// interpolation in rho = hypot(s, t).
std::vector<double> embed_radial(const CylGrid& grid, const RadialGrid& rgrid,
                                 std::span<const double> v);

// Angular average at fixed rho with weight H(theta) =
// cos^{K-1} sin^{N-K-1}; returns values on the given radial grid.
std::vector<double> radialize(const CylOperator& op, std::span<const double> u,
                              const RadialGrid& rgrid);

// A-norm distance of u from its radialization, relative to the A-norm of
// u; in [0, ~1]. The radialization round trip carries an O(h) floor in
// this norm, so genuinely radial fields read a small positive value that
// shrinks under refinement. Rejects the zero field.
double symmetry_deviation(const CylOperator& op, std::span<const double> u);

// Sample of v_A on the grid, dilated by the problem scale so the bump sits
// where the solutions live (the dilation maps inform initialization only).
std::vector<double> testfn_init(const CylGrid& grid, const BumpSpec& spec,
                                double A, double alpha);

struct BreakReport {
  double A = 0;
  double m_A = 0;       // radial level estimate
  double c_AK = 0;      // cylindrical level estimate
  double deviation = 0; // symmetry deviation of the cylindrical minimizer
  bool broken = false;  // c_AK < m_A and deviation > threshold
  SolveStatus radial_status = SolveStatus::Converged;
  SolveStatus cyl_status = SolveStatus::Converged;
};

struct BreakSweepOptions {
  int radial_nodes = 2000;
  int cyl_nodes = 128;
  double r_min_ref = 1e-3;
  double r_max_ref = 60.0;
  double deviation_threshold = 0.1;
  double level_margin = 1e-3;  // relative margin for c < m
  DescentOptions descent{};
  BumpSpec bump{};
  int workers = 1;
};

struct BreakSweepResult {
  std::vector<BreakReport> reports;
  double A_tilde;  // least broken A in the sweep; +inf if none
};

BreakSweepResult break_sweep(const ProblemParams& tmpl, int K,
                             const std::vector<double>& A_list,
                             const BreakSweepOptions& opt = {});

}  // namespace symbreak
