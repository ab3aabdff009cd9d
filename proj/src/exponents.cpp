#include "symbreak/exponents.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace symbreak {

namespace {
constexpr double kEps = 1e-12;  // comparison slack for threshold equalities

bool near(double a, double b) {
  return std::abs(a - b) <= kEps * std::max({1.0, std::abs(a), std::abs(b)});
}
}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
  return Rational(num * o.den, den * o.num);
}

ExponentSet exponent_set(int N, double alpha) {
  if (N < 3) throw std::invalid_argument("exponent_set: N < 3");
  if (!(alpha > 0)) throw std::invalid_argument("exponent_set: alpha <= 0");
  ExponentSet e;
  e.two_star = 2.0 * N / (N - 2);
  e.two_alpha = (alpha < N) ? 2.0 * N / (N - alpha) : kInf;
  e.two_star_alpha =
      (alpha < 2 * N - 2) ? 2.0 * (2 * N - 2 + alpha) / (2 * N - 2 - alpha)
                          : kInf;
  e.p_star_defined = (alpha != 2.0) && (alpha < 2 * N - 2);
  if (!e.p_star_defined) {
    e.p_star_alpha = std::numeric_limits<double>::quiet_NaN();
  } else if (alpha < 2) {
    const double a2 = alpha * alpha;
    e.p_star_alpha = 2.0 * (a2 * (N - 1) - 2 * alpha * (N - 1) + 4 * N) /
                     (a2 * (N - 1) - 2 * alpha * (N + 1) + 4 * N);
  } else {
    e.p_star_alpha = 2.0 * (2 * N + 2 - alpha) / (2 * N - 2 - alpha);
  }
  return e;
}

ExponentSetExact exponent_set_exact(int N, const Rational& alpha) {
  if (N < 3) throw std::invalid_argument("exponent_set_exact: N < 3");
  if (alpha.num <= 0)
    throw std::invalid_argument("exponent_set_exact: alpha <= 0");
  ExponentSetExact e{};
  const Rational Nr(N), two(2);
  e.two_star = Rational(2LL * N, N - 2);
  e.two_alpha_finite = alpha.to_double() < N;
  if (e.two_alpha_finite) e.two_alpha = Rational(2LL * N) / (Nr - alpha);
  const Rational d = Rational(2LL * N - 2) - alpha;
  e.two_star_alpha_finite = d.num > 0;
  if (e.two_star_alpha_finite)
    e.two_star_alpha = two * (Rational(2LL * N - 2) + alpha) / d;
  e.p_star_defined = !(alpha == two) && d.num > 0;
  if (e.p_star_defined) {
    if (alpha.to_double() < 2) {
      const Rational a2 = alpha * alpha;
      e.p_star_alpha = two *
                       (a2 * Rational(N - 1) - two * alpha * Rational(N - 1) +
                        Rational(4LL * N)) /
                       (a2 * Rational(N - 1) - two * alpha * Rational(N + 1) +
                        Rational(4LL * N));
    } else {
      e.p_star_alpha = two * (Rational(2LL * N + 2) - alpha) / d;
    }
  }
  return e;
}

std::string to_string(Region r) {
  switch (r) {
    case Region::NoSolution: return "NoSolution";
    case Region::NoRadialSolution: return "NoRadialSolution";
    case Region::RadialExists: return "RadialExists";
    case Region::ExplicitRadial: return "ExplicitRadial";
    case Region::Open: return "Open";
  }
  return "?";
}

RegionLabel classify_region(int N, double alpha, double p) {
  const ExponentSet e = exponent_set(N, alpha);
  if (!(p > 2)) throw std::invalid_argument("classify_region: p <= 2");

  const bool alpha_is_2 = near(alpha, 2.0);
  const bool p_is_crit = near(p, e.two_star);

  if (alpha_is_2 && p_is_crit) return {Region::ExplicitRadial, {"[21]"}};
  if (alpha_is_2 || p_is_crit) return {Region::NoSolution, {"[21]"}};

  if (alpha < 2) {
    if (p <= e.two_alpha + kEps) return {Region::NoSolution, {"[7]"}};
    if (p <= e.two_star_alpha + kEps)
      return {Region::NoRadialSolution, {"[3]"}};
    if (p < e.two_star) return {Region::RadialExists, {"[19,20]"}};
    return {Region::NoSolution, {"[11]"}};  // p > 2*
  }

  // alpha > 2 from here; p != 2*.
  if (p < e.two_star) return {Region::NoSolution, {"[11]"}};
  if (alpha >= 2 * N - 2) {
    // third branch of the existence condition: any p > 2*
    return {Region::RadialExists, {"[19,20]"}};
  }
  if (p < e.two_star_alpha - kEps) return {Region::RadialExists, {"[19,20]"}};
  if (std::isfinite(e.two_alpha) && p >= e.two_alpha - kEps)
    return {Region::NoSolution, {"[7]"}};
  return {Region::NoRadialSolution, {"[10]"}};
}

int nu(int N, double alpha, double p1, double p2) {
  if (N < 3) throw std::invalid_argument("nu: N < 3");
  if (!(alpha > 0) || !(alpha < 2 * N - 2) || alpha == 2.0)
    throw std::invalid_argument("nu: alpha outside (0, 2N-2) \\ {2}");
  const double two_star = 2.0 * N / (N - 2);
  double inner;
  if (alpha < 2) {
    if (!(p1 > 2)) throw std::invalid_argument("nu: p1 <= 2");
    const double m = std::min((N - 1.0) / alpha,
                              (N - 2.0) / (2.0 - alpha) *
                                  (two_star - p1) / (p1 - 2.0));
    inner = 2.0 * m - 2.0 * N * (1.0 / alpha - 0.5);
  } else {
    if (!(p2 > 2)) throw std::invalid_argument("nu: p2 <= 2");
    const double m = std::min((N - 1.0) / alpha,
                              (N - 2.0) / (alpha - 2.0) *
                                  (p2 - two_star) / (p2 - 2.0));
    inner = 2.0 * m;
  }
  return static_cast<int>(std::ceil(inner - kEps)) - 1;
}

ApplicabilityReport theorem_applicability(const TheoremHypotheses& h) {
  ApplicabilityReport rep{false, 0, 0, -1};
  if (h.N < 4) return rep;
  const double lo = 2.0 / (h.N - 1);
  if (!(h.alpha > lo) || !(h.alpha < 2 * h.N - 2) || h.alpha == 2.0)
    return rep;
  const ExponentSet e = exponent_set(h.N, h.alpha);
  if (!(h.p1 > 2) || !(h.p2 > 2)) return rep;
  const bool ok = (h.alpha < 2)
                      ? (h.p1 < e.p_star_alpha && h.p2 > e.two_star)
                      : (h.p1 < e.two_star && h.p2 > e.p_star_alpha);
  if (!ok) return rep;
  rep.applicable = true;
  rep.nu = nu(h.N, h.alpha, h.p1, h.p2);
  rep.k_min = 2;
  rep.k_max = rep.nu + 1;
  return rep;
}

}  // namespace symbreak
