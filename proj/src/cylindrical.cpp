#include "symbreak/cylindrical.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "descent_detail.hpp"
#include "symbreak/kernels.hpp"
#include "symbreak/quadrature.hpp"

namespace symbreak {

namespace {

double power_moment(double a, double b, double m) {
  if (m == -1.0) return std::log(b / a);
  const double e = m + 1.0;
  if (a == 0.0 && e <= 0.0)
    return std::numeric_limits<double>::infinity();
  return (std::pow(b, e) - (a == 0.0 ? 0.0 : std::pow(a, e))) / e;
}

std::vector<double> geometric_nodes(int nodes, double r_min, double r_max) {
  std::vector<double> r(nodes);
  const double q = std::pow(r_max / r_min, 1.0 / (nodes - 1));
  for (int i = 0; i < nodes; ++i) r[i] = r_min * std::pow(q, i);
  r.back() = r_max;
  return r;
}

// cell-edge coefficients int s^{m} / h^2 and dual-cell moments of s^{m}
void axis_weights(const std::vector<double>& x, double m,
                  std::vector<double>& edge, std::vector<double>& wcell) {
  const std::size_t n = x.size();
  edge.assign(n - 1, 0.0);
  wcell.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x[i + 1] - x[i];
    edge[i] = power_moment(x[i], x[i + 1], m) / (h * h);
    const double lo = (i == 0) ? 0.0 : 0.5 * (x[i - 1] + x[i]);
    const double hi = 0.5 * (x[i] + x[i + 1]);
    wcell[i] = power_moment(lo, hi, m);
  }
}

// linear interpolation of a radial profile, zero beyond the last node,
// clamped below the first
double interp_radial(const RadialGrid& rg, std::span<const double> v,
                     double rho) {
  const auto& r = rg.r;
  if (rho >= r.back()) return 0.0;
  if (rho <= r.front()) return v[0];
  const auto it = std::upper_bound(r.begin(), r.end(), rho);
  const std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
  const double w = (rho - r[i]) / (r[i + 1] - r[i]);
  return (1.0 - w) * v[i] + w * v[i + 1];
}

}  // namespace

CylGrid CylGrid::geometric(int N, int K, int nodes_s, int nodes_t,
                           double r_min, double r_max) {
  if (K < 2 || K > N - 2)
    throw std::invalid_argument("CylGrid: K outside [2, N-2]");
  if (nodes_s < 3 || nodes_t < 3 || !(r_min > 0) || !(r_max > r_min))
    throw std::invalid_argument("CylGrid: bad mesh parameters");
  CylGrid g;
  g.N = N;
  g.K = K;
  g.s = geometric_nodes(nodes_s, r_min, r_max);
  g.t = geometric_nodes(nodes_t, r_min, r_max);
  return g;
}

CylGrid CylGrid::scaled(int N, int K, double alpha, double A, int nodes_s,
                        int nodes_t, double r_min_ref, double r_max_ref) {
  const double L = problem_scale(alpha, A);
  return geometric(N, K, nodes_s, nodes_t, r_min_ref * L, r_max_ref * L);
}

CylOperator::CylOperator(const ProblemParams& params, const CylGrid& grid)
    : params_(params), grid_(grid), ns_(grid.s.size()), nt_(grid.t.size()) {
  if (!(params.alpha > 0) || !(params.A > 0))
    throw std::invalid_argument("CylOperator: alpha, A must be positive");
  if (params.N != grid.N)
    throw std::invalid_argument("CylOperator: dimension mismatch");
  const int N = params.N, K = grid.K;
  const double ss = sphere_measure(K) * sphere_measure(N - K);

  axis_weights(grid_.s, K - 1.0, edge_s_, wcell_s_);
  axis_weights(grid_.t, N - K - 1.0, edge_t_, wcell_t_);
  // fold the sphere prefactor into the s-axis weights once
  for (auto& v : edge_s_) v *= ss;
  for (auto& v : wcell_s_) v *= ss;

  pot_.assign(ns_ * nt_, 0.0);
  omega_.assign(ns_ * nt_, 0.0);
  inv_diag_.assign(ns_ * nt_, 1.0);
  for (std::size_t i = 0; i + 1 < ns_; ++i) {
    for (std::size_t j = 0; j + 1 < nt_; ++j) {
      const std::size_t idx = i * nt_ + j;
      const double w2 = wcell_s_[i] * wcell_t_[j];
      const double rho2 = grid_.s[i] * grid_.s[i] + grid_.t[j] * grid_.t[j];
      pot_[idx] = params.A * std::pow(rho2, -0.5 * params.alpha) * w2;
      omega_[idx] = w2;
      double d = pot_[idx];
      d += edge_s_[i] * wcell_t_[j];
      if (i > 0) d += edge_s_[i - 1] * wcell_t_[j];
      d += edge_t_[j] * wcell_s_[i];
      if (j > 0) d += edge_t_[j - 1] * wcell_s_[i];
      inv_diag_[idx] = 1.0 / d;
    }
  }
}

void CylOperator::apply(std::span<const double> u, std::span<double> v) const {
  for (std::size_t i = 0; i < ns_; ++i) {
    for (std::size_t j = 0; j < nt_; ++j) {
      const std::size_t idx = i * nt_ + j;
      if (i + 1 == ns_ || j + 1 == nt_) {
        v[idx] = 0.0;
        continue;
      }
      const double uc = u[idx];
      double acc = pot_[idx] * uc;
      acc += edge_s_[i] * wcell_t_[j] * (uc - u[idx + nt_]);
      if (i > 0) acc += edge_s_[i - 1] * wcell_t_[j] * (uc - u[idx - nt_]);
      acc += edge_t_[j] * wcell_s_[i] * (uc - u[idx + 1]);
      if (j > 0) acc += edge_t_[j - 1] * wcell_s_[i] * (uc - u[idx - 1]);
      v[idx] = acc;
    }
  }
}

double CylOperator::form(std::span<const double> u,
                         std::span<const double> v) const {
  std::vector<double> lu(size());
  apply(u, lu);
  return kernels::active().dot(lu.data(), v.data(), size());
}

std::vector<double> CylOperator::solve(std::span<const double> b,
                                       double rel_tol, int max_iters) const {
  const auto& k = kernels::active();
  const std::size_t n = size();
  std::vector<double> x(n, 0.0), r(b.begin(), b.end()), z(n), p(n), ap(n);
  // zero the Dirichlet rows of the right-hand side
  for (std::size_t i = 0; i < ns_; ++i) r[i * nt_ + (nt_ - 1)] = 0.0;
  for (std::size_t j = 0; j < nt_; ++j) r[(ns_ - 1) * nt_ + j] = 0.0;
  const double bnorm = std::sqrt(k.dot(r.data(), r.data(), n));
  if (bnorm == 0.0) return x;
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag_[i] * r[i];
  p = z;
  double rz = k.dot(r.data(), z.data(), n);
  for (int it = 0; it < max_iters; ++it) {
    apply(p, ap);
    const double pap = k.dot(p.data(), ap.data(), n);
    if (!(pap > 0)) break;
    const double alpha = rz / pap;
    k.axpby(alpha, p.data(), 1.0, x.data(), n);
    k.axpby(-alpha, ap.data(), 1.0, r.data(), n);
    const double rnorm = std::sqrt(k.dot(r.data(), r.data(), n));
    if (rnorm <= rel_tol * bnorm) break;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag_[i] * r[i];
    const double rz_new = k.dot(r.data(), z.data(), n);
    k.axpby(1.0, z.data(), rz_new / rz, p.data(), n);
    rz = rz_new;
  }
  return x;
}

double energy(const CylOperator& op, std::span<const double> u) {
  return detail::energy_impl(op, u);
}

std::vector<double> grad_energy(const CylOperator& op,
                                std::span<const double> u) {
  return detail::grad_energy_impl(op, u);
}

double nehari_project(const CylOperator& op, std::span<const double> u,
                      const NehariOptions& opt) {
  return detail::nehari_project_impl(op, u, opt);
}

std::pair<std::vector<double>, SolveReport> ground_state_cyl(
    const CylOperator& op, std::span<const double> init,
    const DescentOptions& opt) {
  return detail::ground_state_impl(op, init, opt);
}

std::vector<double> embed_radial(const CylGrid& grid, const RadialGrid& rgrid,
                                 std::span<const double> v) {
  const std::size_t ns = grid.s.size(), nt = grid.t.size();
  std::vector<double> u(ns * nt, 0.0);
  for (std::size_t i = 0; i + 1 < ns; ++i)
    for (std::size_t j = 0; j + 1 < nt; ++j)
      u[i * nt + j] = interp_radial(rgrid, v, std::hypot(grid.s[i], grid.t[j]));
  return u;
}

namespace {

// bilinear sample of a 2D field, coordinates clamped into the node range,
// zero at and beyond the Dirichlet edges
double interp2d(const CylGrid& g, std::span<const double> u, double s,
                double t) {
  const auto locate = [](const std::vector<double>& x, double v,
                         std::size_t& i, double& w) {
    if (v <= x.front()) {
      i = 0;
      w = 0.0;
      return;
    }
    if (v >= x.back()) {
      i = x.size() - 2;
      w = 1.0;
      return;
    }
    const auto it = std::upper_bound(x.begin(), x.end(), v);
    i = static_cast<std::size_t>(it - x.begin()) - 1;
    w = (v - x[i]) / (x[i + 1] - x[i]);
  };
  std::size_t i, j;
  double wi, wj;
  locate(g.s, s, i, wi);
  locate(g.t, t, j, wj);
  const std::size_t nt = g.t.size();
  const double u00 = u[i * nt + j], u10 = u[(i + 1) * nt + j];
  const double u01 = u[i * nt + j + 1], u11 = u[(i + 1) * nt + j + 1];
  return (1 - wi) * ((1 - wj) * u00 + wj * u01) +
         wi * ((1 - wj) * u10 + wj * u11);
}

}  // namespace

std::vector<double> radialize(const CylOperator& op, std::span<const double> u,
                              const RadialGrid& rgrid) {
  const auto& g = op.grid();
  const int K = g.K, N = g.N;
  const GaussRule rule = gauss_legendre(64, 0.0, std::numbers::pi / 2.0);
  std::vector<double> v(rgrid.r.size(), 0.0);
  for (std::size_t k = 0; k + 1 < rgrid.r.size(); ++k) {
    const double rho = rgrid.r[k];
    double num = 0.0, den = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double th = rule.nodes[q];
      const double H = std::pow(std::cos(th), K - 1) *
                       std::pow(std::sin(th), N - K - 1);
      const double w = rule.weights[q] * H;
      num += w * interp2d(g, u, rho * std::cos(th), rho * std::sin(th));
      den += w;
    }
    v[k] = num / den;
  }
  return v;
}

double symmetry_deviation(const CylOperator& op, std::span<const double> u) {
  const double q = op.form(u, u);
  if (!(q > 0))
    throw std::invalid_argument("symmetry_deviation: zero field");
  const auto& g = op.grid();
  const double lo = std::min(g.s.front(), g.t.front());
  const double hi = std::hypot(g.s.back(), g.t.back());
  const int nodes = static_cast<int>(2 * std::max(g.s.size(), g.t.size()));
  const RadialGrid rgrid = RadialGrid::geometric(op.params().N, nodes, lo, hi);
  const std::vector<double> v = radialize(op, u, rgrid);
  std::vector<double> d = embed_radial(g, rgrid, v);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = u[i] - d[i];
  return std::sqrt(std::max(op.form(d, d), 0.0) / q);
}

std::vector<double> testfn_init(const CylGrid& grid, const BumpSpec& spec,
                                double A, double alpha) {
  const double L = problem_scale(alpha, A);
  const std::size_t ns = grid.s.size(), nt = grid.t.size();
  std::vector<double> u(ns * nt, 0.0);
  for (std::size_t i = 0; i + 1 < ns; ++i)
    for (std::size_t j = 0; j + 1 < nt; ++j)
      u[i * nt + j] =
          eval_vA(spec, A, grid.K, grid.N, grid.s[i] / L, grid.t[j] / L);
  return u;
}

namespace {

BreakReport break_point(const ProblemParams& tmpl, int K, double A,
                        const BreakSweepOptions& opt) {
  BreakReport rep;
  rep.A = A;
  ProblemParams params = tmpl;
  params.A = A;

  const RadialGrid rgrid =
      RadialGrid::scaled(params.N, params.alpha, A, opt.radial_nodes,
                         opt.r_min_ref, opt.r_max_ref);
  const RadialOperator rop(params, rgrid);
  auto [ur, rrep] = ground_state_radial(rop, default_radial_init(rgrid),
                                        opt.descent);
  rep.m_A = rrep.level;
  rep.radial_status = rrep.status;

  const CylGrid cgrid =
      CylGrid::scaled(params.N, K, params.alpha, A, opt.cyl_nodes,
                      opt.cyl_nodes, opt.r_min_ref, opt.r_max_ref);
  const CylOperator cop(params, cgrid);

  auto [u1, rep1] = ground_state_cyl(cop, embed_radial(cgrid, rgrid, ur),
                                     opt.descent);
  auto [u2, rep2] = ground_state_cyl(
      cop, testfn_init(cgrid, opt.bump, std::max(A, 1.5), params.alpha),
      opt.descent);

  const bool ok1 = rep1.status != SolveStatus::NoSignChange;
  const bool ok2 = rep2.status != SolveStatus::NoSignChange;
  const std::vector<double>* best = nullptr;
  if (ok1 && (!ok2 || rep1.level <= rep2.level)) {
    best = &u1;
    rep.c_AK = rep1.level;
    rep.cyl_status = rep1.status;
  } else if (ok2) {
    best = &u2;
    rep.c_AK = rep2.level;
    rep.cyl_status = rep2.status;
  } else {
    rep.cyl_status = SolveStatus::NoSignChange;
    return rep;
  }
  rep.deviation = symmetry_deviation(cop, *best);
  rep.broken = (rep.c_AK < rep.m_A * (1.0 - opt.level_margin)) &&
               (rep.deviation > opt.deviation_threshold);
  return rep;
}

}  // namespace

BreakSweepResult break_sweep(const ProblemParams& tmpl, int K,
                             const std::vector<double>& A_list,
                             const BreakSweepOptions& opt) {
  for (std::size_t i = 0; i + 1 < A_list.size(); ++i)
    if (!(A_list[i] < A_list[i + 1]))
      throw std::invalid_argument("break_sweep: A_list not increasing");
  BreakSweepResult result;
  result.reports.resize(A_list.size());
  const int workers = std::max(1, std::min<int>(opt.workers,
                                                static_cast<int>(A_list.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < A_list.size(); ++i)
      result.reports[i] = break_point(tmpl, K, A_list[i], opt);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < A_list.size();
             i = next.fetch_add(1))
          result.reports[i] = break_point(tmpl, K, A_list[i], opt);
      });
    for (auto& th : pool) th.join();
  }
  result.A_tilde = std::numeric_limits<double>::infinity();
  for (const auto& r : result.reports)
    if (r.broken) {
      result.A_tilde = r.A;
      break;
    }
  return result;
}

}  // namespace symbreak
