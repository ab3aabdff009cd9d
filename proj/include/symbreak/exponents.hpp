#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace symbreak {

// Minimal exact rational, used for exponent identities with rational inputs.
struct Rational {
  long long num = 0;
  long long den = 1;  // > 0, reduced

  Rational() = default;
  Rational(long long n, long long d);
  Rational(long long n) : num(n), den(1) {}

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  double to_double() const { return double(num) / double(den); }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// The four thresholds of the alpha-p plane for a given (N, alpha).
// two_alpha is +inf for alpha >= N, two_star_alpha is +inf for
// alpha >= 2N-2; p_star_alpha is undefined at alpha = 2 and for
// alpha >= 2N-2 (p_star_defined is false and the value is NaN).
struct ExponentSet {
  double two_star;
  double two_alpha;
  double two_star_alpha;
  double p_star_alpha;
  bool p_star_defined;
};

ExponentSet exponent_set(int N, double alpha);

// Exact-rational evaluation for rational alpha; infinite/undefined values
// are reported through the flags.
struct ExponentSetExact {
  Rational two_star;
  Rational two_alpha;
  Rational two_star_alpha;
  Rational p_star_alpha;
  bool two_alpha_finite;
  bool two_star_alpha_finite;
  bool p_star_defined;
};

ExponentSetExact exponent_set_exact(int N, const Rational& alpha);

enum class Region {
  NoSolution,        // no solution at all
  NoRadialSolution,  // radial solutions excluded, general existence open
  RadialExists,      // at least one radial solution
  ExplicitRadial,    // (alpha, p) = (2, 2*): explicit radial family
  Open,              // not covered by any cited result
};

std::string to_string(Region r);

struct RegionLabel {
  Region region;
  std::vector<std::string> citations;
};

// The alpha-p plane partition assembled from the cited results; total on
// {alpha > 0, p > 2}. Rejects p <= 2.
RegionLabel classify_region(int N, double alpha, double p);

// Multiplicity count: ceiling expression in the two alpha-branches.
// p1 enters only for alpha < 2, p2 only for alpha > 2.
int nu(int N, double alpha, double p1, double p2);

struct TheoremHypotheses {
  int N;
  double alpha;
  double p1;
  double p2;
};

struct ApplicabilityReport {
  bool applicable;
  int nu;      // meaningful only when applicable
  int k_min;   // K range [k_min, k_max]; empty when not applicable
  int k_max;
};

// Checks the growth-exponent hypotheses (N >= 4, alpha in
// (2/(N-1), 2N-2) \ {2}, and the branch conditions on p1, p2) and reports
// the multiplicity count and the admissible symmetry indices K.
ApplicabilityReport theorem_applicability(const TheoremHypotheses& h);

}  // namespace symbreak
