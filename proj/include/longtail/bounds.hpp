#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace longtail {

// Approximate differential-privacy budget. epsilon must be finite and
// nonnegative (s0 additionally needs it positive); delta lives in [0, 1/2).
struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;

  PrivacyParams(double eps, double del);
};

enum class BoundDirection { lower, upper };

// One analytic bound value. Clamping to [0,1] is non-destructive: raw keeps
// the unclamped number so a vacuous bound (say a negative lower bound) stays
// distinguishable from a violated one. valid records whether a formula
// precondition held; invalid values are still computed when finite.
struct BoundValue {
  double raw = 0.0;
  double value = 0.0;  // raw clamped to [0,1]
  BoundDirection direction = BoundDirection::upper;
  bool valid = true;
  std::string invalid_reason;
};

// A named evaluator result: the error-measure bound and the accuracy
// discrepancy bound, plus the echoed inputs. The two slots carry opposite
// directions depending on the theorem, so always read the direction tag.
struct BoundSet {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  BoundValue err_bound;
  BoundValue fair_bound;
};

// Occurrence threshold floor(min(log(2)/epsilon, log(1/(2 delta)))); the
// delta = 0 case uses the epsilon branch alone. Natural logarithms.
std::int64_t s0(const PrivacyParams& privacy);

// (1 + s0 e^-epsilon delta) / (1 + e^-s0 epsilon). At s0 = s0(privacy) the
// floor keeps s0 epsilon <= log 2, so the delta = 0 value stays at or below
// 2/3 (the step behind the 1/3 floor); positive delta can exceed it by at
// most (2/3) s0 e^-epsilon delta.
double q_threshold(std::int64_t s0_value, const PrivacyParams& privacy);

// (1 - sup_f) / 3: the misclassification floor for atoms appearing fewer
// than s0 times under any private algorithm.
double lemma1_floor(double sup_f);

// 1 - e^epsilon * sup_f - delta, clamped to [0, 1] with the raw value
// retained (valid flag cleared when clamping occurred).
BoundValue c2_of(const PrivacyParams& privacy, double sup_f);

// Error upper bound c1 p (3p/(2c) e^{-p/2c} + e^{-p/2c}) and discrepancy
// lower bound c2 (1-p) (p/(2c) e^{-3p/2c} + e^{-3p/2c}).
BoundSet thm1_bounds(double p, double c, double c1, double c2);

// Asymptotic (m, N -> infinity, N/m -> c) bounds for any (eps, delta)-DP
// algorithm satisfying the typical-data assumption with parameter p1:
//   discrepancy >= ((1-sup_f)(1-p)/3) (1 - U) - (1-p) p1
//   error       <= (1-p1) p (1 - L) + p1
// where U and L are Gaussian upper/lower tail corrections at
// (s0 - 3p/2c) sqrt(2c/3p) and (s0 - p/2c) sqrt(2c/p). Validity flags are
// cleared when s0 is too small for the tail steps; values are still reported.
BoundSet thm2_bounds(double p, double c, const PrivacyParams& privacy,
                     double sup_f, double p1);

// The strict-privacy budget log(2) / (alpha sqrt(m) + (2-3p)/(2k(1-p)) m).
double thm3_epsilon(double alpha, std::int64_t m, double p, double k);

// Reverse-direction bounds (error LOWER, discrepancy UPPER) at strict
// privacy, with c1 = 4(2-p)/(2-3p)^2:
//   error       >= ((1-sup_f)/3)(1 - (1-p) e^{-c1 alpha^2})
//   discrepancy <= (1-p)(1 - ((1-sup_f)/3)(1 - e^{-c1 alpha^2}))
BoundSet thm3_bounds(double p, double alpha, double sup_f);

// Lower-tail evaluation style for lemma2_bounds. literal keeps the
// half-integer tail index ell/2 even at odd ell, where the anti-concentration
// inequality does not apply and the "bound" can exceed the true probability
// (flagged invalid); rigorous uses the integer index floor(ell/2), which is
// always a genuine lower bound for eta < 1/2. The two agree at even ell.
enum class Lemma2Mode { rigorous, literal };

// Tail bounds on the plurality vote over ell noisy copies:
//   err_bound  (upper): e^{-ell (1-2 eta)^2 / (8 (1-eta))}, the frequent-atom
//                       misclassification ceiling;
//   fair_bound (lower): (1/sqrt(2 ell)) * anti-concentration term, the
//                       rare-atom misclassification floor that drives the
//                       discrepancy.
// Never throws: inputs outside ell >= 1, eta in (0, 1/2) come back as NaN
// values with the validity flags cleared.
BoundSet lemma2_bounds(std::int64_t ell, double eta,
                       Lemma2Mode mode = Lemma2Mode::rigorous);

// Convenience accessors for the two lemma2 tails as plain numbers.
double lemma2_upper(std::int64_t ell, double eta);
double lemma2_lower(std::int64_t ell, double eta,
                    Lemma2Mode mode = Lemma2Mode::rigorous);

// Bernoulli KL divergence a log(a/q) + (1-a) log((1-a)/(1-q)) with the
// 0 log 0 = 0 convention; +infinity when q is degenerate and a disagrees.
double kl_bernoulli(double a, double q);

// Standard normal CDF via the complementary error function; absolute error
// below 1e-12 over the real line.
double normal_cdf(double x);

// Two-sided envelope for the standard normal upper tail at x > 0:
//   (1/x - 1/x^3) phi(x)  <=  P[Z >= x]  <=  phi(x) / x.
// The lower member is only positive for x > 1.
std::pair<double, double> gaussian_tail_bounds(double x);

}  // namespace longtail
