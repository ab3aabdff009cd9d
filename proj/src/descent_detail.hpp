#pragma once

// Shared Nehari projection and projected-gradient descent, templated over
// the assembled operator (1D tridiagonal or 2D stencil). An operator
// provides: size() (full field length, Dirichlet nodes included), form(u,v),
// solve(b) returning a full-length field with zeros at Dirichlet nodes,
// omega() (full-length quadrature weights) and params().

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "symbreak/kernels.hpp"
#include "symbreak/radial.hpp"

namespace symbreak::detail {

template <class Fib>
double nehari_root(double q, Fib&& fib, const NehariOptions& opt) {
  auto gp = [&](double t) { return t * q - fib(t); };
  const double factor = 1.3;
  const double start =
      std::clamp(opt.t_hint, opt.t_min * factor, opt.t_max / factor);
  double lo = 0, hi = 0;
  bool found = false;
  if (gp(start) > 0) {
    // walk up until the derivative turns; under monotone f(s)/s there is
    // a single sign change, so no earlier root can be skipped
    lo = start;
    for (double t = start * factor; t <= opt.t_max; t *= factor) {
      if (gp(t) <= 0) {
        hi = t;
        found = true;
        break;
      }
      lo = t;
    }
  } else {
    hi = start;
    for (double t = start / factor; t >= opt.t_min; t /= factor) {
      if (gp(t) > 0) {
        lo = t;
        found = true;
        break;
      }
      hi = t;
    }
  }
  if (!found) throw NehariBracketError(opt.t_min, opt.t_max);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((hi - lo) <= opt.tol * mid) break;
    if (gp(mid) > 0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

template <class Op>
double nehari_project_impl(const Op& op, std::span<const double> u,
                           const NehariOptions& opt) {
  const double q = op.form(u, u);
  if (!(q > 0)) throw std::invalid_argument("nehari_project: zero field");
  const auto& nl = op.params().nonlin;
  const auto omega = op.omega();
  auto fib = [&](double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      acc += omega[i] * nl.f(t * u[i]) * u[i];
    return acc;
  };
  return nehari_root(q, fib, opt);
}

template <class Op>
double energy_impl(const Op& op, std::span<const double> u) {
  const auto& nl = op.params().nonlin;
  const auto omega = op.omega();
  double fint = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) fint += omega[i] * nl.F(u[i]);
  return 0.5 * op.form(u, u) - fint;
}

template <class Op>
std::vector<double> grad_energy_impl(const Op& op,
                                     std::span<const double> u) {
  const auto& nl = op.params().nonlin;
  const auto omega = op.omega();
  std::vector<double> b(op.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = omega[i] * nl.f(u[i]);
  std::vector<double> w = op.solve(b);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = u[i] - w[i];
  return w;
}

template <class Op>
std::pair<std::vector<double>, SolveReport> ground_state_impl(
    const Op& op, std::span<const double> init, const DescentOptions& opt) {
  const auto& k = kernels::active();
  std::vector<double> u(init.begin(), init.end());
  u.resize(op.size(), 0.0);
  k.clamp_min0(u.data(), u.size());

  SolveReport rep;
  rep.status = SolveStatus::MaxIterations;
  NehariOptions nopt = opt.nehari;
  try {
    double t = nehari_project_impl(op, u, nopt);
    k.scale(u.data(), t, u.size());
    rep.nehari_t = t;
    for (int it = 1; it <= opt.max_iterations; ++it) {
      rep.iterations = it;
      std::vector<double> g = grad_energy_impl(op, u);
      const double res = std::sqrt(std::max(op.form(g, g), 0.0));
      const double unorm = std::sqrt(op.form(u, u));
      rep.residual = res / std::max(unorm, 1e-300);
      if (rep.residual <= opt.tol) {
        rep.status = SolveStatus::Converged;
        break;
      }
      k.axpby(-opt.step, g.data(), 1.0, u.data(), u.size());
      k.clamp_min0(u.data(), u.size());
      t = nehari_project_impl(op, u, nopt);
      k.scale(u.data(), t, u.size());
      nopt.t_hint = 1.0;  // field is renormalized, the next root is near 1
      rep.nehari_t = t;
    }
  } catch (const NehariBracketError&) {
    rep.status = SolveStatus::NoSignChange;
  }
  rep.level = energy_impl(op, u);
  rep.min_value = k.min_value(u.data(), u.size());
  return {std::move(u), rep};
}

}  // namespace symbreak::detail
