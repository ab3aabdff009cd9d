#include "symbreak/radial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "descent_detail.hpp"
#include "symbreak/kernels.hpp"

namespace symbreak {

namespace {

// integral of r^m over [a, b], 0 <= a < b
double power_moment(double a, double b, double m) {
  if (m == -1.0) return std::log(b / a);
  const double e = m + 1.0;
  if (a == 0.0 && e <= 0.0)
    return std::numeric_limits<double>::infinity();
  return (std::pow(b, e) - (a == 0.0 ? 0.0 : std::pow(a, e))) / e;
}

}  // namespace

double sphere_measure(int d) {
  if (d < 1) throw std::invalid_argument("sphere_measure: d < 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double problem_scale(double alpha, double A) {
  if (alpha == 2.0) return 1.0;
  return std::pow(A, 1.0 / (alpha - 2.0));
}

RadialGrid RadialGrid::geometric(int N, int nodes, double r_min,
                                 double r_max) {
  if (N < 3) throw std::invalid_argument("RadialGrid: N < 3");
  if (nodes < 3 || !(r_min > 0) || !(r_max > r_min))
    throw std::invalid_argument("RadialGrid: bad mesh parameters");
  RadialGrid g;
  g.N = N;
  g.r.resize(nodes);
  const double q = std::pow(r_max / r_min, 1.0 / (nodes - 1));
  for (int i = 0; i < nodes; ++i) g.r[i] = r_min * std::pow(q, i);
  g.r.back() = r_max;
  return g;
}

RadialGrid RadialGrid::scaled(int N, double alpha, double A, int nodes,
                              double r_min_ref, double r_max_ref) {
  const double L = problem_scale(alpha, A);
  return geometric(N, nodes, r_min_ref * L, r_max_ref * L);
}

RadialOperator::RadialOperator(const ProblemParams& params,
                               const RadialGrid& grid)
    : params_(params), grid_(grid), n_(grid.r.size()) {
  if (!(params.alpha > 0) || !(params.A > 0))
    throw std::invalid_argument("RadialOperator: alpha, A must be positive");
  if (params.N != grid.N)
    throw std::invalid_argument("RadialOperator: dimension mismatch");
  const int N = params.N;
  const double alpha = params.alpha;
  const double sigma = sphere_measure(N);
  const auto& r = grid_.r;

  const double pot0 = params.A * std::pow(r[0], -alpha);
  if (!std::isfinite(pot0))
    throw std::invalid_argument(
        "RadialOperator: potential overflows at the first node");

  // P1 stiffness with exact r^{N-1} cell moments.
  diag_.assign(n_ - 1, 0.0);
  off_.assign(n_ - 1, 0.0);  // off_[i] couples node i and i+1
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const double h = r[i + 1] - r[i];
    const double c = sigma * power_moment(r[i], r[i + 1], N - 1) / (h * h);
    diag_[i] += c;
    if (i + 2 < n_) diag_[i + 1] += c;  // last node is Dirichlet
    if (i + 2 < n_) off_[i] = -c; else off_[i] = 0.0;
  }

  // Dual-cell quadrature weights (r^{N-1}) and potential lumps (r^{N-1-a}).
  omega_.assign(n_, 0.0);
  std::vector<double> pi(n_, 0.0);
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const double lo = (i == 0) ? 0.0 : 0.5 * (r[i - 1] + r[i]);
    const double hi = 0.5 * (r[i] + r[i + 1]);
    omega_[i] = sigma * power_moment(lo, hi, N - 1);
    // The inner cell moment diverges for alpha >= N; start it at the node.
    const double plo = (i == 0 && alpha >= N - 1e-12) ? r[0] : lo;
    pi[i] = sigma * power_moment(plo, hi, N - 1.0 - alpha);
  }
  for (std::size_t i = 0; i + 1 < n_; ++i)
    diag_[i] += params.A * pi[i];
}

void RadialOperator::apply(std::span<const double> u,
                           std::span<double> v) const {
  const std::size_t m = n_ - 1;
  for (std::size_t i = 0; i < m; ++i) {
    double acc = diag_[i] * u[i];
    if (i > 0) acc += off_[i - 1] * u[i - 1];
    if (i + 1 < m) acc += off_[i] * u[i + 1];
    v[i] = acc;
  }
  if (v.size() == n_) v[m] = 0.0;
}

double RadialOperator::form(std::span<const double> u,
                            std::span<const double> v) const {
  const std::size_t m = n_ - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double lu = diag_[i] * u[i];
    if (i > 0) lu += off_[i - 1] * u[i - 1];
    if (i + 1 < m) lu += off_[i] * u[i + 1];
    acc += v[i] * lu;
  }
  return acc;
}

std::vector<double> RadialOperator::solve(std::span<const double> b) const {
  const std::size_t m = n_ - 1;
  std::vector<double> c(m), d(m), x(n_, 0.0);
  double beta = diag_[0];
  if (beta == 0.0) throw std::runtime_error("RadialOperator: singular pivot");
  c[0] = (m > 1) ? off_[0] / beta : 0.0;
  d[0] = b[0] / beta;
  for (std::size_t i = 1; i < m; ++i) {
    beta = diag_[i] - off_[i - 1] * c[i - 1];
    if (beta == 0.0)
      throw std::runtime_error("RadialOperator: singular pivot");
    c[i] = (i + 1 < m) ? off_[i] / beta : 0.0;
    d[i] = (b[i] - off_[i - 1] * d[i - 1]) / beta;
  }
  x[m - 1] = d[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

double energy(const RadialOperator& op, std::span<const double> u) {
  return detail::energy_impl(op, u);
}

std::vector<double> grad_energy(const RadialOperator& op,
                                std::span<const double> u) {
  return detail::grad_energy_impl(op, u);
}

double nehari_project(const RadialOperator& op, std::span<const double> u,
                      const NehariOptions& opt) {
  return detail::nehari_project_impl(op, u, opt);
}

std::pair<std::vector<double>, SolveReport> ground_state_radial(
    const RadialOperator& op, std::span<const double> init,
    const DescentOptions& opt) {
  return detail::ground_state_impl(op, init, opt);
}

std::vector<double> default_radial_init(const RadialGrid& grid) {
  std::vector<double> u(grid.r.size(), 0.0);
  const double center = 0.25 * grid.r.back();
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double x = std::log(grid.r[i] / center);
    u[i] = std::exp(-x * x);
  }
  return u;
}

double fit_level_scaling(const std::vector<std::pair<double, double>>& data) {
  if (data.size() < 3)
    throw std::invalid_argument("fit_level_scaling: need >= 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [A, level] : data) {
    if (!(A > 0) || !(level > 0))
      throw std::invalid_argument("fit_level_scaling: nonpositive data");
    const double x = std::log(A), y = std::log(level);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(data.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double level_scaling_exponent(int N, double alpha, double p) {
  const double two_star = 2.0 * N / (N - 2);
  return (N - 2.0) / (alpha - 2.0) * (p - two_star) / (p - 2.0);
}

double level_scaling_min_exponent(int N, double alpha, double p1, double p2) {
  const double two_star = 2.0 * N / (N - 2);
  if (alpha < 2)
    return std::min((N - 1.0) / alpha,
                    (N - 2.0) / (2.0 - alpha) * (two_star - p1) / (p1 - 2.0));
  return std::min((N - 1.0) / alpha,
                  (N - 2.0) / (alpha - 2.0) * (p2 - two_star) / (p2 - 2.0));
}

}  // namespace symbreak
