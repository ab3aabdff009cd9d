#include "symbreak/kernels.hpp"

#include <algorithm>

namespace symbreak::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double dot3_scalar(const double* w, const double* x, const double* y,
                   std::size_t n) {
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i] * y[i];
  return acc;
}

void axpby_scalar(double a, const double* x, double b, double* y,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scale_scalar(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void clamp_min0_scalar(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::max(x[i], 0.0);
}

double min_value_scalar(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar",       dot_scalar,   dot3_scalar,
                       axpby_scalar,   scale_scalar, clamp_min0_scalar,
                       min_value_scalar};
  return ops;
}

}  // namespace symbreak::kernels
