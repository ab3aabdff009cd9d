#include "symbreak/testfn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "symbreak/quadrature.hpp"
#include "symbreak/radial.hpp"

namespace symbreak {

namespace {

constexpr double kPi = std::numbers::pi;

// C_c^inf bump on (0,1), peak e^{-4} at x = 1/2.
double beta_bump(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (x * (1.0 - x)));
}

double beta_bump_deriv(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double w = x * (1.0 - x);
  return std::exp(-1.0 / w) * (1.0 - 2.0 * x) / (w * w);
}

double angular_weight(double theta, int K, int N) {
  return std::pow(std::cos(theta), K - 1) *
         std::pow(std::sin(theta), N - K - 1);
}

}  // namespace

double BumpSpec::amplitude() const {
  // peak of the product bump is e^{-8}
  return cap_fraction * s_star * std::exp(8.0);
}

double BumpSpec::psi(double r, double phi) const {
  const double xr = (r - 0.25) * 2.0;
  const double xp = (phi - kPi / 6.0) * 6.0 / kPi;
  return amplitude() * beta_bump(xr) * beta_bump(xp);
}

double BumpSpec::psi_r(double r, double phi) const {
  const double xr = (r - 0.25) * 2.0;
  const double xp = (phi - kPi / 6.0) * 6.0 / kPi;
  return amplitude() * beta_bump_deriv(xr) * 2.0 * beta_bump(xp);
}

double BumpSpec::psi_phi(double r, double phi) const {
  const double xr = (r - 0.25) * 2.0;
  const double xp = (phi - kPi / 6.0) * 6.0 / kPi;
  return amplitude() * beta_bump(xr) * beta_bump_deriv(xp) * 6.0 / kPi;
}

double eval_vA(const BumpSpec& spec, double A, int /*K*/, int /*N*/, double s,
               double t) {
  if (!(A > 1)) throw std::invalid_argument("eval_vA: A <= 1");
  if (s < 0 || t < 0) throw std::invalid_argument("eval_vA: quadrant only");
  const double rho = std::hypot(s, t);
  if (rho <= 0.0) return 0.0;
  const double theta = std::atan2(t, s);
  const double sa = std::sqrt(A);
  return spec.psi(std::pow(rho, sa), theta * sa);
}

TestFnIntegrals integrals(const BumpSpec& spec, double A, int K, int N,
                          double alpha, const Nonlinearity& nl, int order) {
  if (!(A > 1)) throw std::invalid_argument("integrals: A <= 1");
  if (K < 2 || K > N - 2)
    throw std::invalid_argument("integrals: K outside [2, N-2]");
  const double sa = std::sqrt(A);
  const double ss = sphere_measure(K) * sphere_measure(N - K);

  // Fixed-domain form over E = (1/4,3/4) x (pi/6,pi/3).
  const GaussRule gr = gauss_legendre(order, 0.25, 0.75);
  const GaussRule gp = gauss_legendre(order, kPi / 6.0, kPi / 3.0);
  double grad2 = 0, pot2 = 0, fint = 0;
  for (int a = 0; a < order; ++a) {
    const double r = gr.nodes[a];
    for (int b = 0; b < order; ++b) {
      const double phi = gp.nodes[b];
      const double w = gr.weights[a] * gp.weights[b] *
                       angular_weight(phi / sa, K, N);
      const double p = spec.psi(r, phi);
      const double pr = spec.psi_r(r, phi);
      const double pp = spec.psi_phi(r, phi);
      grad2 += w * (pr * pr + pp * pp / (r * r)) *
               std::pow(r, (N - 2.0) / sa + 1.0);
      pot2 += w * p * p * std::pow(r, (N - alpha) / sa - 1.0);
      fint += w * nl.F(p) * std::pow(r, N / sa - 1.0);
    }
  }
  grad2 *= ss;
  pot2 *= ss / A;
  fint *= ss / A;

  // Direct form over the shrunk domain E_A.
  const double rho_lo = std::pow(0.25, 1.0 / sa);
  const double rho_hi = std::pow(0.75, 1.0 / sa);
  const GaussRule dr = gauss_legendre(order, rho_lo, rho_hi);
  const GaussRule dt = gauss_legendre(order, kPi / (6.0 * sa),
                                      kPi / (3.0 * sa));
  double grad2d = 0, pot2d = 0, fintd = 0;
  for (int a = 0; a < order; ++a) {
    const double rho = dr.nodes[a];
    const double rsa = std::pow(rho, sa);
    for (int b = 0; b < order; ++b) {
      const double theta = dt.nodes[b];
      const double w = dr.weights[a] * dt.weights[b] *
                       angular_weight(theta, K, N);
      const double phi = theta * sa;
      const double v = spec.psi(rsa, phi);
      const double v_rho = spec.psi_r(rsa, phi) * sa * std::pow(rho, sa - 1.0);
      const double v_theta = spec.psi_phi(rsa, phi) * sa;
      const double rn1 = std::pow(rho, N - 1.0);
      grad2d += w * (v_rho * v_rho + v_theta * v_theta / (rho * rho)) * rn1;
      pot2d += w * v * v * std::pow(rho, N - 1.0 - alpha);
      fintd += w * nl.F(v) * rn1;
    }
  }
  grad2d *= ss;
  pot2d *= ss;
  fintd *= ss;

  TestFnIntegrals out;
  out.grad2 = grad2;
  out.pot2 = pot2;
  out.Fint = fint;
  out.ratio = (grad2 + A * pot2) / fint;
  out.grad2_direct = grad2d;
  out.pot2_direct = pot2d;
  out.Fint_direct = fintd;
  auto rel = [](double x, double y) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300});
  };
  out.max_rel_discrepancy = std::max(
      {rel(grad2, grad2d), rel(pot2, pot2d), rel(fint, fintd)});
  return out;
}

ThresholdResult threshold_AK(const BumpSpec& spec, int K, int N, double alpha,
                             const Nonlinearity& nl,
                             const std::vector<double>& A_sweep, int order) {
  ThresholdResult res;
  res.A_K = std::numeric_limits<double>::infinity();
  res.monotone = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < A_sweep.size(); ++i) {
    if (i > 0 && !(A_sweep[i] > A_sweep[i - 1]))
      throw std::invalid_argument("threshold_AK: sweep not increasing");
    const double ratio =
        integrals(spec, A_sweep[i], K, N, alpha, nl, order).ratio;
    res.ratios.push_back(ratio);
    if (ratio < prev) res.monotone = false;
    prev = ratio;
    if (!std::isfinite(res.A_K) && ratio > 1.0) res.A_K = A_sweep[i];
  }
  return res;
}

EndpointResult endpoint_ubar(const BumpSpec& spec, double A, int K, int N,
                             double alpha, const Nonlinearity& nl,
                             int order) {
  const TestFnIntegrals ints = integrals(spec, A, K, N, alpha, nl, order);
  if (!(ints.ratio > 1.0))
    throw std::domain_error("endpoint_ubar: A below the threshold (ratio <= 1)");
  const double norm2 = ints.grad2 + A * ints.pot2;
  const double lambda = (alpha < 2)
                            ? std::pow(norm2 / ints.Fint, 1.0 / alpha)
                            : std::sqrt(norm2 / ints.Fint);
  const double ln = std::log(lambda);
  // dilation identities: lambda^{N-2}, lambda^{N-alpha}, lambda^N factors
  const double ubar_norm2 = std::exp((N - 2.0) * ln) * ints.grad2 +
                            std::exp((N - alpha) * ln) * A * ints.pot2;
  const double ubar_F = std::exp(N * ln) * ints.Fint;
  EndpointResult out;
  out.lambda = lambda;
  out.energy = 0.5 * ubar_norm2 - ubar_F;
  const double mu = nl.spec().mu;
  const double m = std::pow(1.0 / mu, 2.0 / (mu - 2.0)) * (0.5 - 1.0 / mu);
  out.bound = m * std::pow(ubar_norm2, mu / (mu - 2.0)) /
              std::pow(ubar_F, 2.0 / (mu - 2.0));
  return out;
}

}  // namespace symbreak
