#include "symbreak/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "symbreak/quadrature.hpp"

namespace symbreak {

std::string to_string(NonlinKind k) {
  switch (k) {
    case NonlinKind::PurePower: return "pure_power";
    case NonlinKind::DoublePowerMin: return "double_power_min";
    case NonlinKind::RationalPower: return "rational_power";
    case NonlinKind::Tabulated: return "tabulated";
  }
  return "?";
}

NonlinKind nonlin_kind_from_string(const std::string& s) {
  if (s == "pure_power") return NonlinKind::PurePower;
  if (s == "double_power_min") return NonlinKind::DoublePowerMin;
  if (s == "rational_power") return NonlinKind::RationalPower;
  if (s == "tabulated") return NonlinKind::Tabulated;
  throw std::invalid_argument("unknown nonlinearity kind: " + s);
}

Nonlinearity::Nonlinearity(NonlinearitySpec spec) : spec_(std::move(spec)) {
  if (spec_.kind == NonlinKind::PurePower && !(spec_.p > 2))
    throw std::invalid_argument("pure power requires p > 2");
  if (!(spec_.p1 > 2) || !(spec_.p2 > 2))
    throw std::invalid_argument("growth exponents must exceed 2");
  if (spec_.kind == NonlinKind::Tabulated) {
    const auto& s = spec_.sample_s;
    const auto& fv = spec_.sample_f;
    if (s.size() < 2 || s.size() != fv.size())
      throw std::invalid_argument("tabulated: need matching samples, >= 2");
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (!(s[i] > 0) || !(s[i + 1] > s[i]))
        throw std::invalid_argument("tabulated: samples not increasing > 0");
    // Fritsch-Carlson monotone cubic slopes.
    const std::size_t n = s.size();
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      d[i] = (fv[i + 1] - fv[i]) / (s[i + 1] - s[i]);
    tab_slope_.assign(n, 0.0);
    tab_slope_[0] = d[0];
    tab_slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
      tab_slope_[i] = (d[i - 1] * d[i] > 0)
                          ? 2.0 / (1.0 / d[i - 1] + 1.0 / d[i])
                          : 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0) {
        tab_slope_[i] = tab_slope_[i + 1] = 0;
        continue;
      }
      const double a = tab_slope_[i] / d[i], b = tab_slope_[i + 1] / d[i];
      const double r = a * a + b * b;
      if (r > 9.0) {
        const double t = 3.0 / std::sqrt(r);
        tab_slope_[i] = t * a * d[i];
        tab_slope_[i + 1] = t * b * d[i];
      }
    }
  }
}

double Nonlinearity::tabulated_f(double s) const {
  const auto& xs = spec_.sample_s;
  const auto& ys = spec_.sample_f;
  if (s <= xs.front()) {
    // power decay matching the declared small-s growth
    return ys.front() * std::pow(s / xs.front(), spec_.p2 - 1);
  }
  if (s >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double h = xs[i + 1] - xs[i];
  const double u = (s - xs[i]) / h;
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  return h00 * ys[i] + h10 * h * tab_slope_[i] + h01 * ys[i + 1] +
         h11 * h * tab_slope_[i + 1];
}

double Nonlinearity::f(double s) const {
  if (s <= 0) return 0.0;
  switch (spec_.kind) {
    case NonlinKind::PurePower:
      return std::pow(s, spec_.p - 1);
    case NonlinKind::DoublePowerMin:
      return std::min(s, std::pow(s, spec_.p2 - 1));
    case NonlinKind::RationalPower:
      return std::pow(s, spec_.p2 - 1) / (1.0 + std::pow(s, spec_.p2 - 2));
    case NonlinKind::Tabulated:
      return tabulated_f(s);
  }
  return 0.0;
}

double Nonlinearity::F(double s) const {
  if (s <= 0) return 0.0;
  switch (spec_.kind) {
    case NonlinKind::PurePower:
      return std::pow(s, spec_.p) / spec_.p;
    case NonlinKind::DoublePowerMin:
      if (s <= 1.0) return std::pow(s, spec_.p2) / spec_.p2;
      return 1.0 / spec_.p2 + 0.5 * (s * s - 1.0);
    case NonlinKind::RationalPower:
    case NonlinKind::Tabulated:
      return adaptive_simpson([this](double t) { return f(t); }, 0.0, s,
                              1e-10);
  }
  return 0.0;
}

double Nonlinearity::m_prime() const {
  return spec_.M / std::min(spec_.p1, spec_.p2);
}

Nonlinearity Nonlinearity::pure_power(double p) {
  NonlinearitySpec s;
  s.kind = NonlinKind::PurePower;
  s.p = p;
  s.p1 = s.p2 = p;
  s.M = 1;
  s.mu = p;
  s.s_star = std::numeric_limits<double>::infinity();
  return Nonlinearity(s);
}

Nonlinearity Nonlinearity::double_power_min(double p2, double p1) {
  NonlinearitySpec s;
  s.kind = NonlinKind::DoublePowerMin;
  s.p1 = p1;
  s.p2 = p2;
  s.M = 1;
  s.mu = p2;
  s.s_star = 1.0;
  return Nonlinearity(s);
}

Nonlinearity Nonlinearity::rational_power(double p2, double p1) {
  NonlinearitySpec s;
  s.kind = NonlinKind::RationalPower;
  s.p1 = p1;
  s.p2 = p2;
  s.M = 1;
  s.mu = p2;
  s.s_star = std::numeric_limits<double>::infinity();
  return Nonlinearity(s);
}

Nonlinearity Nonlinearity::tabulated(std::vector<double> sv,
                                     std::vector<double> fv, double p1,
                                     double p2, double M, double mu,
                                     double s_star) {
  NonlinearitySpec s;
  s.kind = NonlinKind::Tabulated;
  s.p1 = p1;
  s.p2 = p2;
  s.M = M;
  s.mu = mu;
  s.s_star = s_star;
  s.sample_s = std::move(sv);
  s.sample_f = std::move(fv);
  return Nonlinearity(s);
}

HypothesisReport check_hypotheses(const Nonlinearity& nl,
                                  std::span<const double> grid) {
  if (grid.empty())
    throw std::invalid_argument("check_hypotheses: empty grid");
  const auto& spec = nl.spec();
  HypothesisReport rep{true, true, true, {}, {}, {}};

  // (h0): 0 < f(s) <= M min{s^{p1-1}, s^{p2-1}} pointwise.
  double worst0 = std::numeric_limits<double>::infinity();
  for (double s : grid) {
    if (!(s > 0)) throw std::invalid_argument("check_hypotheses: s <= 0");
    const double bound = spec.M * std::min(std::pow(s, spec.p1 - 1),
                                           std::pow(s, spec.p2 - 1));
    const double fs = nl.f(s);
    const double margin = (fs > 0) ? (bound - fs) / std::max(bound, 1e-300)
                                   : -1.0;
    if (margin < worst0) {
      worst0 = margin;
      rep.h0_witness = {0, s, margin};
    }
    if (margin < -1e-12) rep.h0_ok = false;
  }

  // (h1'): f(s)/s nondecreasing along the grid.
  double worst1 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double q0 = nl.f(grid[i]) / grid[i];
    const double q1 = nl.f(grid[i + 1]) / grid[i + 1];
    const double margin = (q1 - q0) / std::max({q0, q1, 1e-300});
    if (margin < worst1) {
      worst1 = margin;
      rep.h1p_witness = {grid[i], grid[i + 1], margin};
    }
    if (margin < -1e-12) rep.h1p_ok = false;
  }

  // (h2'): F(s)/s^mu nonincreasing below s_star.
  double worst2 = std::numeric_limits<double>::infinity();
  double prev_s = -1, prev_q = 0;
  for (double s : grid) {
    if (!(s < spec.s_star)) break;
    const double q = nl.F(s) / std::pow(s, spec.mu);
    if (prev_s > 0) {
      const double margin = (prev_q - q) / std::max({prev_q, q, 1e-300});
      if (margin < worst2) {
        worst2 = margin;
        rep.h2p_witness = {prev_s, s, margin};
      }
      if (margin < -1e-12) rep.h2p_ok = false;
    }
    prev_s = s;
    prev_q = q;
  }
  return rep;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > lo) || n < 2)
    throw std::invalid_argument("log_grid: bad range");
  std::vector<double> g(n);
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
  return g;
}

}  // namespace symbreak
