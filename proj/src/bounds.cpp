#include "longtail/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "longtail/numeric.hpp"

namespace longtail {

namespace {

constexpr double kLog2 = 0.6931471805599453;
constexpr double kSqrt2Pi = 2.5066282746310002;

BoundValue make_bound(double raw, BoundDirection dir, bool valid = true,
                      std::string reason = {}) {
  BoundValue b;
  b.raw = raw;
  b.value = std::isnan(raw) ? raw : clamp01(raw);
  b.direction = dir;
  b.valid = valid;
  b.invalid_reason = std::move(reason);
  return b;
}

}  // namespace

PrivacyParams::PrivacyParams(double eps, double del) : epsilon(eps), delta(del) {
  if (!(eps >= 0.0) || std::isinf(eps))
    throw std::invalid_argument("PrivacyParams: epsilon must be finite, >= 0");
  if (!(del >= 0.0 && del < 0.5))
    throw std::invalid_argument("PrivacyParams: delta must lie in [0, 1/2)");
}

std::int64_t s0(const PrivacyParams& privacy) {
  if (!(privacy.epsilon > 0.0))
    throw std::invalid_argument("s0: epsilon must be > 0");
  const double eps_branch = kLog2 / privacy.epsilon;
  const double branch =
      privacy.delta > 0.0
          ? std::min(eps_branch, std::log(1.0 / (2.0 * privacy.delta)))
          : eps_branch;
  return static_cast<std::int64_t>(std::floor(branch));
}

double q_threshold(std::int64_t s0_value, const PrivacyParams& privacy) {
  if (s0_value < 0)
    throw std::invalid_argument("q_threshold: s0 must be >= 0");
  const double s = static_cast<double>(s0_value);
  return (1.0 + s * std::exp(-privacy.epsilon) * privacy.delta) /
         (1.0 + std::exp(-s * privacy.epsilon));
}

double lemma1_floor(double sup_f) {
  if (!(sup_f > 0.0 && sup_f <= 1.0))
    throw std::invalid_argument("lemma1_floor: sup_f must lie in (0, 1]");
  return (1.0 - sup_f) / 3.0;
}

BoundValue c2_of(const PrivacyParams& privacy, double sup_f) {
  if (!(sup_f > 0.0 && sup_f <= 1.0))
    throw std::invalid_argument("c2_of: sup_f must lie in (0, 1]");
  const double raw = 1.0 - std::exp(privacy.epsilon) * sup_f - privacy.delta;
  const bool clamped = raw < 0.0 || raw > 1.0;
  return make_bound(raw, BoundDirection::lower, !clamped,
                    clamped ? "value clamped to [0,1]" : "");
}

BoundSet thm1_bounds(double p, double c, double c1, double c2) {
  if (!(p > 0.0 && p < 0.5))
    throw std::invalid_argument("thm1_bounds: p must lie in (0, 1/2)");
  if (!(c > 0.0)) throw std::invalid_argument("thm1_bounds: c must be > 0");
  if (!(c1 >= 0.0 && c1 <= 1.0) || !(c2 >= 0.0 && c2 <= 1.0))
    throw std::invalid_argument("thm1_bounds: c1, c2 must lie in [0, 1]");

  const double half = p / (2.0 * c);
  const double err = c1 * p * (3.0 * half * std::exp(-half) + std::exp(-half));
  const double fair = c2 * (1.0 - p) *
                      (half * std::exp(-3.0 * half) + std::exp(-3.0 * half));

  BoundSet bs;
  bs.name = "thm1";
  bs.inputs = {{"p", p}, {"c", c}, {"c1", c1}, {"c2", c2}};
  bs.err_bound = make_bound(err, BoundDirection::upper);
  bs.fair_bound = make_bound(fair, BoundDirection::lower);
  return bs;
}

BoundSet thm2_bounds(double p, double c, const PrivacyParams& privacy,
                     double sup_f, double p1) {
  if (!(p > 0.0 && p < 0.5))
    throw std::invalid_argument("thm2_bounds: p must lie in (0, 1/2)");
  if (!(c > 0.0)) throw std::invalid_argument("thm2_bounds: c must be > 0");
  if (!(sup_f > 0.0 && sup_f <= 1.0))
    throw std::invalid_argument("thm2_bounds: sup_f must lie in (0, 1]");
  if (!(p1 >= 0.0 && p1 <= 1.0))
    throw std::invalid_argument("thm2_bounds: p1 must lie in [0, 1]");

  const std::int64_t s = s0(privacy);
  const double sd = static_cast<double>(s);

  BoundSet bs;
  bs.name = "thm2";
  bs.inputs = {{"p", p},
               {"c", c},
               {"epsilon", privacy.epsilon},
               {"delta", privacy.delta},
               {"sup_f", sup_f},
               {"p1", p1},
               {"s0", sd}};

  const bool regime_ok = p / c <= 1.0;

  // Discrepancy lower bound: correction U is the Gaussian upper tail at
  // y = (s0 - 3p/2c) sqrt(2c/3p); needs s0 above 3p/2c.
  {
    const double shift = sd - 3.0 * p / (2.0 * c);
    bool valid = regime_ok && shift > 0.0;
    double u = 1.0;  // degenerate correction wipes the bound out
    if (shift > 0.0) {
      const double y = shift * std::sqrt(2.0 * c / (3.0 * p));
      u = gaussian_tail_bounds(y).second;
    }
    const double raw =
        ((1.0 - sup_f) * (1.0 - p) / 3.0) * (1.0 - u) - (1.0 - p) * p1;
    bs.fair_bound = make_bound(
        raw, BoundDirection::lower, valid,
        valid ? ""
              : (regime_ok ? "needs s0 > 3p/(2c)" : "needs p/c <= 1"));
  }

  // Error upper bound: correction L is the Gaussian lower tail at
  // x = (s0 - p/2c) sqrt(2c/p); the lower tail is positive only for x > 1.
  {
    const double shift = sd - p / (2.0 * c);
    double l = 0.0;
    bool positive_tail = false;
    if (shift > 0.0) {
      const double x = shift * std::sqrt(2.0 * c / p);
      l = gaussian_tail_bounds(x).first;
      positive_tail = x > 1.0;
    }
    const bool valid = regime_ok && shift > 0.0 && positive_tail;
    const double raw = (1.0 - p1) * p * (1.0 - l) + p1;
    bs.err_bound = make_bound(
        raw, BoundDirection::upper, valid,
        valid ? ""
              : (regime_ok ? "needs s0 > p/(2c) with a positive tail term"
                           : "needs p/c <= 1"));
  }
  return bs;
}

double thm3_epsilon(double alpha, std::int64_t m, double p, double k) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("thm3_epsilon: alpha must be > 0");
  if (m < 1) throw std::invalid_argument("thm3_epsilon: m must be >= 1");
  if (!(p > 0.0 && p < 2.0 / 3.0))
    throw std::invalid_argument("thm3_epsilon: p must lie in (0, 2/3)");
  if (!(k > 0.0)) throw std::invalid_argument("thm3_epsilon: k must be > 0");
  const double md = static_cast<double>(m);
  const double denom =
      alpha * std::sqrt(md) + ((2.0 - 3.0 * p) / (2.0 * k * (1.0 - p))) * md;
  if (!(denom > 0.0))
    throw std::invalid_argument("thm3_epsilon: nonpositive denominator");
  return kLog2 / denom;
}

BoundSet thm3_bounds(double p, double alpha, double sup_f) {
  if (!(p > 0.0 && p < 0.5))
    throw std::invalid_argument("thm3_bounds: p must lie in (0, 1/2)");
  if (!(alpha > 0.0))
    throw std::invalid_argument("thm3_bounds: alpha must be > 0");
  if (!(sup_f > 0.0 && sup_f <= 1.0))
    throw std::invalid_argument("thm3_bounds: sup_f must lie in (0, 1]");

  const double c1 = 4.0 * (2.0 - p) / ((2.0 - 3.0 * p) * (2.0 - 3.0 * p));
  const double decay = std::exp(-c1 * alpha * alpha);
  const double err = ((1.0 - sup_f) / 3.0) * (1.0 - (1.0 - p) * decay);
  const double fair =
      (1.0 - p) * (1.0 - ((1.0 - sup_f) / 3.0) * (1.0 - decay));

  BoundSet bs;
  bs.name = "thm3";
  bs.inputs = {{"p", p}, {"alpha", alpha}, {"sup_f", sup_f}, {"c1", c1}};
  bs.err_bound = make_bound(err, BoundDirection::lower);
  bs.fair_bound = make_bound(fair, BoundDirection::upper);
  return bs;
}

double lemma2_upper(std::int64_t ell, double eta) {
  if (ell < 1) throw std::invalid_argument("lemma2_upper: ell must be >= 1");
  if (!(eta > 0.0 && eta < 0.5))
    throw std::invalid_argument("lemma2_upper: eta must lie in (0, 1/2)");
  const double d = 1.0 - 2.0 * eta;
  return std::exp(-static_cast<double>(ell) * d * d / (8.0 * (1.0 - eta)));
}

double lemma2_lower(std::int64_t ell, double eta, Lemma2Mode mode) {
  if (ell < 1) throw std::invalid_argument("lemma2_lower: ell must be >= 1");
  if (!(eta > 0.0 && eta < 0.5))
    throw std::invalid_argument("lemma2_lower: eta must lie in (0, 1/2)");
  const double ld = static_cast<double>(ell);
  if (mode == Lemma2Mode::literal)
    return (1.0 / std::sqrt(2.0 * ld)) *
           std::pow(4.0 * eta * (1.0 - eta), ld / 2.0);
  const double a = static_cast<double>(ell / 2) / ld;  // integer tail index
  return (1.0 / std::sqrt(2.0 * ld)) *
         std::exp(-ld * kl_bernoulli(a, 1.0 - eta));
}

BoundSet lemma2_bounds(std::int64_t ell, double eta, Lemma2Mode mode) {
  BoundSet bs;
  bs.name = "lemma2";
  bs.inputs = {{"ell", static_cast<double>(ell)},
               {"eta", eta},
               {"literal", mode == Lemma2Mode::rigorous ? 0.0 : 1.0}};

  if (ell < 1 || !(eta > 0.0 && eta < 0.5)) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const char* reason = "needs ell >= 1 and eta in (0, 1/2)";
    bs.err_bound = make_bound(nan, BoundDirection::upper, false, reason);
    bs.fair_bound = make_bound(nan, BoundDirection::lower, false, reason);
    return bs;
  }

  bs.err_bound = make_bound(lemma2_upper(ell, eta), BoundDirection::upper);

  const double lower = lemma2_lower(ell, eta, mode);
  bool valid = true;
  std::string reason;
  if (mode == Lemma2Mode::literal && ell % 2 != 0) {
    // The half-integer tail index ell/2 is outside the anti-concentration
    // inequality's domain at odd ell; the value can exceed the probability
    // it claims to bound.
    valid = false;
    reason = "half-integer tail index at odd ell";
  }
  bs.fair_bound = make_bound(lower, BoundDirection::lower, valid, reason);
  return bs;
}

double kl_bernoulli(double a, double q) {
  if (!(a >= 0.0 && a <= 1.0) || !(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("kl_bernoulli: arguments must lie in [0, 1]");
  if (a == q) return 0.0;
  if (q == 0.0 || q == 1.0) return std::numeric_limits<double>::infinity();
  double kl = 0.0;
  if (a > 0.0) kl += a * std::log(a / q);
  if (a < 1.0) kl += (1.0 - a) * std::log((1.0 - a) / (1.0 - q));
  return kl;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865476);
}

std::pair<double, double> gaussian_tail_bounds(double x) {
  if (!(x > 0.0))
    throw std::invalid_argument("gaussian_tail_bounds: x must be > 0");
  const double phi = std::exp(-0.5 * x * x) / kSqrt2Pi;
  return {(1.0 / x - 1.0 / (x * x * x)) * phi, phi / x};
}

}  // namespace longtail
