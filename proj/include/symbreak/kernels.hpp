#pragma once

#include <cstddef>

// Data-parallel inner loops of the solvers (weighted dot products, axpy,
// clipping, reductions). A scalar reference implementation always exists;
// an AVX2 variant is selected at runtime when the CPU supports it.
// The two are equivalence-tested against each other.

namespace symbreak::kernels {

struct Ops {
  const char* name;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i w[i] * x[i] * y[i]
  double (*dot3)(const double* w, const double* x, const double* y,
                 std::size_t n);
  // y[i] = a * x[i] + b * y[i]
  void (*axpby)(double a, const double* x, double b, double* y, std::size_t n);
  // x[i] *= a
  void (*scale)(double* x, double a, std::size_t n);
  // x[i] = max(x[i], 0)
  void (*clamp_min0)(double* x, std::size_t n);
  // min over x (n >= 1)
  double (*min_value)(const double* x, std::size_t n);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // valid only if has_avx2()
bool has_avx2();

// Best available implementation for this machine.
const Ops& active();

}  // namespace symbreak::kernels
