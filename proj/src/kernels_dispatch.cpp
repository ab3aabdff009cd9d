#include "symbreak/kernels.hpp"

namespace symbreak::kernels {

bool has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops& active() {
  static const Ops& ops = has_avx2() ? avx2_ops() : scalar_ops();
  return ops;
}

}  // namespace symbreak::kernels
