#pragma once

#include <vector>

#include "symbreak/nonlinearity.hpp"

namespace symbreak {

// Smooth product bump on E = (1/4, 3/4) x (pi/6, pi/3), capped strictly
// below s_star.
struct BumpSpec {
  double s_star = 1.0;
  double cap_fraction = 0.9;  // max psi = cap_fraction * s_star

  double amplitude() const;   // normalizing constant
  double psi(double r, double phi) const;
  double psi_r(double r, double phi) const;
  double psi_phi(double r, double phi) const;
};

// The symmetric lift v_A at a quadrant point (s, t) = (|y|, |z|):
// with (rho, theta) polar coordinates of (s, t), returns
// psi(rho^{sqrt A}, theta sqrt A); zero outside the shrunk annular sector.
double eval_vA(const BumpSpec& spec, double A, int K, int N, double s,
               double t);

struct TestFnIntegrals {
  // primary values (transformed fixed-domain quadrature over E)
  double grad2;  // integral of |grad v_A|^2
  double pot2;   // integral of v_A^2 / |x|^alpha  (times A -> potential term)
  double Fint;   // integral of F(v_A)
  double ratio;  // (grad2 + A * pot2) / Fint
  // direct quadrature over the shrunk domain E_A, and worst relative gap
  double grad2_direct;
  double pot2_direct;
  double Fint_direct;
  double max_rel_discrepancy;
};

// Each integral evaluated two ways: transformed over E and direct over
// E_A; tensor Gauss-Legendre of the given order per axis.
TestFnIntegrals integrals(const BumpSpec& spec, double A, int K, int N,
                          double alpha, const Nonlinearity& nl,
                          int order = 64);

// Smallest sweep value whose ratio exceeds 1; +inf if none.
struct ThresholdResult {
  double A_K;                 // +inf when not reached
  std::vector<double> ratios; // per sweep value, for reporting
  bool monotone;              // ratio nondecreasing along the sweep
};
ThresholdResult threshold_AK(const BumpSpec& spec, int K, int N, double alpha,
                             const Nonlinearity& nl,
                             const std::vector<double>& A_sweep,
                             int order = 64);

struct EndpointResult {
  double lambda;  // dilation factor, > 1 above the threshold
  double energy;  // I(u_bar), negative above the threshold
  double bound;   // straight-path mountain-pass upper bound
};

// Dilated path endpoint u_bar(x) = v_A(x/lambda) with the alpha-branch
// lambda, its energy via the dilation identities, and the straight-path
// level bound m ||u_bar||^{2mu/(mu-2)} / (int F(u_bar))^{2/(mu-2)}.
// Requires ratio(A) > 1; throws std::domain_error otherwise.
EndpointResult endpoint_ubar(const BumpSpec& spec, double A, int K, int N,
                             double alpha, const Nonlinearity& nl,
                             int order = 64);

}  // namespace symbreak
