#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symbreak {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes/weights by Newton iteration on P_n; n up to a few hundred.
GaussRule gauss_legendre(int n);

// Same rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

struct QuadratureError : std::runtime_error {
  double achieved_tol;
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_tol(achieved) {}
};

// Adaptive Simpson with relative tolerance; throws QuadratureError on
// non-convergence, reporting the achieved tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-10, int max_depth = 48);

}  // namespace symbreak
