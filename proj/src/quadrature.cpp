#include "symbreak/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace symbreak {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi-style initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

GaussRule gauss_legendre(int n, double a, double b) {
  GaussRule rule = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = c + h * rule.nodes[i];
    rule.weights[i] *= h;
  }
  return rule;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double fm, double whole, double eps,
             int depth, bool& ok, double& worst) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double err = left + right - whole;
  if (std::abs(err) <= 15.0 * eps) return left + right + err / 15.0;
  if (depth <= 0) {
    ok = false;
    worst = std::max(worst, std::abs(err));
    return left + right + err / 15.0;
  }
  return adapt(f, a, fa, m, fm, flm, left, 0.5 * eps, depth - 1, ok, worst) +
         adapt(f, m, fm, b, fb, frm, right, 0.5 * eps, depth - 1, ok, worst);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(a, fa, b, fb, fm);
  // Relative tolerance against a coarse magnitude estimate.
  const double scale = std::max({std::abs(whole), 1e-300});
  bool ok = true;
  double worst = 0.0;
  double result = adapt(f, a, fa, b, fb, fm, whole, rel_tol * scale, max_depth,
                        ok, worst);
  if (!ok) {
    double achieved = worst / std::max(std::abs(result), 1e-300);
    if (achieved > 10.0 * rel_tol)
      throw QuadratureError("adaptive_simpson: tolerance not reached",
                            achieved);
  }
  return result;
}

}  // namespace symbreak
