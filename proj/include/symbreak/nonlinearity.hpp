#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symbreak {

enum class NonlinKind { PurePower, DoublePowerMin, RationalPower, Tabulated };

std::string to_string(NonlinKind k);
NonlinKind nonlin_kind_from_string(const std::string& s);

// Declared data of a nonlinearity: the evaluable variant plus the growth
// exponents (p1, p2), growth constant M and the (mu, s_star) pair used by
// the F(s)/s^mu monotonicity hypothesis.
struct NonlinearitySpec {
  NonlinKind kind = NonlinKind::DoublePowerMin;
  double p = 0;  // PurePower only
  double p1 = 3;
  double p2 = 8;
  double M = 1;
  double mu = 8;
  double s_star = 1;  // +inf allowed
  // Tabulated: strictly increasing sample_s > 0 with f-values sample_f
  std::vector<double> sample_s;
  std::vector<double> sample_f;
};

// f(s) = 0 for s <= 0 in every variant (the modified nonlinearity).
class Nonlinearity {
 public:
  explicit Nonlinearity(NonlinearitySpec spec);

  double f(double s) const;
  double F(double s) const;  // primitive, F(0) = 0

  const NonlinearitySpec& spec() const { return spec_; }

  // M' such that |F(s)| <= M' min{|s|^p1, |s|^p2}; convention M/min{p1,p2}.
  double m_prime() const;

  // Convenience factories with the defaults used throughout the suite.
  static Nonlinearity pure_power(double p);
  static Nonlinearity double_power_min(double p2, double p1 = 3);
  static Nonlinearity rational_power(double p2, double p1 = 3);
  static Nonlinearity tabulated(std::vector<double> s, std::vector<double> f,
                                double p1, double p2, double M, double mu,
                                double s_star);

 private:
  NonlinearitySpec spec_;
  // Fritsch-Carlson monotone cubic slopes for the tabulated variant.
  std::vector<double> tab_slope_;
  double tabulated_f(double s) const;

  friend struct NonlinearityTestAccess;
};

struct HypothesisWitness {
  double s_prev = 0;  // left grid point of the failing pair (0 if pointwise)
  double s = 0;       // grid point where the check is tightest / fails
  double margin = 0;  // signed margin; negative means violated
};

struct HypothesisReport {
  bool h0_ok;
  bool h1p_ok;
  bool h2p_ok;
  HypothesisWitness h0_witness;
  HypothesisWitness h1p_witness;
  HypothesisWitness h2p_witness;
};

// Grid certificate for the growth bound, the monotonicity of f(s)/s and
// the monotonicity of F(s)/s^mu below s_star. The grid must be sorted,
// strictly positive and nonempty.
HypothesisReport check_hypotheses(const Nonlinearity& nl,
                                  std::span<const double> grid);

// Log-spaced grid helper for the certificates.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace symbreak
