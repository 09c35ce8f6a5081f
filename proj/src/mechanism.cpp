#include "longtail/mechanism.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "longtail/numeric.hpp"

namespace longtail {

bool Hypothesis::total() const {
  for (int v : label)
    if (v < 0) return false;
  return true;
}

int Hypothesis::operator()(std::int64_t x) const {
  const int v = label.at(static_cast<std::size_t>(x));
  if (v < 0)
    throw std::logic_error(
        "Hypothesis: lazy unseen atom queried without a generator");
  return v;
}

int query(const Hypothesis& h, std::int64_t x, Rng& rng) {
  const int v = h.label.at(static_cast<std::size_t>(x));
  if (v >= 0) return v;
  return static_cast<int>(rng.next_below(static_cast<std::uint64_t>(h.n_labels)));
}

Hypothesis train_noisy_majority(const LabelledDataset& data,
                                const MechanismParams& params, Rng& rng,
                                FallbackMode mode) {
  if (!(params.eta >= 0.0 && params.eta < 0.5))
    throw std::invalid_argument("train_noisy_majority: eta must lie in [0, 1/2)");
  if (params.n_labels < 2 || params.n_labels != data.n_labels)
    throw std::invalid_argument("train_noisy_majority: n_labels mismatch");

  const int ny = params.n_labels;
  const std::int64_t domain = data.data.domain;
  std::vector<std::int32_t> counts(static_cast<std::size_t>(domain * ny), 0);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(domain), 0);

  for (std::size_t i = 0; i < data.data.draws.size(); ++i) {
    const std::int64_t x = data.data.draws[i];
    int y = data.labels[i];
    if (params.eta > 0.0 && rng.bernoulli(params.eta)) {
      const int other = static_cast<int>(
          rng.next_below(static_cast<std::uint64_t>(ny - 1)));
      y = other + (other >= y ? 1 : 0);
    }
    ++counts[static_cast<std::size_t>(x * ny + y)];
    seen[static_cast<std::size_t>(x)] = 1;
  }

  Hypothesis h;
  h.n_labels = ny;
  h.label.assign(static_cast<std::size_t>(domain), -1);
  h.committed.assign(static_cast<std::size_t>(domain), 0);

  std::vector<int> tied;
  for (std::int64_t x = 0; x < domain; ++x) {
    if (!seen[static_cast<std::size_t>(x)]) {
      if (mode == FallbackMode::eager)
        h.label[static_cast<std::size_t>(x)] = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(ny)));
      continue;
    }
    std::int32_t best = 0;
    for (int y = 0; y < ny; ++y) {
      const std::int32_t c = counts[static_cast<std::size_t>(x * ny + y)];
      if (c > best) best = c;
    }
    tied.clear();
    for (int y = 0; y < ny; ++y)
      if (counts[static_cast<std::size_t>(x * ny + y)] == best) tied.push_back(y);
    const int pick =
        tied.size() == 1
            ? tied.front()
            : tied[static_cast<std::size_t>(
                  rng.next_below(static_cast<std::uint64_t>(tied.size())))];
    h.label[static_cast<std::size_t>(x)] = pick;
    h.committed[static_cast<std::size_t>(x)] = 1;
  }
  return h;
}

double privacy_of_eta(double eta, int n_labels) {
  if (n_labels < 2) throw std::invalid_argument("privacy_of_eta: n_labels < 2");
  if (!(eta >= 0.0 && eta < 0.5))
    throw std::invalid_argument("privacy_of_eta: eta must lie in [0, 1/2)");
  if (eta == 0.0) return std::numeric_limits<double>::infinity();
  return std::log((1.0 - eta) * (n_labels - 1) / eta);
}

double eta_for_epsilon(double epsilon, int n_labels) {
  if (n_labels < 2) throw std::invalid_argument("eta_for_epsilon: n_labels < 2");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("eta_for_epsilon: epsilon must be > 0");
  const double other = static_cast<double>(n_labels - 1);
  return other / (other + std::exp(epsilon));
}

namespace {

// Binary closed form: flips ~ Binomial(ell, eta); wrong iff flips > ell/2,
// half-weight at an exact tie.
double binary_point_error(std::int64_t ell, double eta) {
  if (eta == 0.0) return 0.0;
  double err = 0.0;
  for (std::int64_t j = ell / 2 + 1; j <= ell; ++j)
    err += std::exp(log_binom_pmf(ell, j, eta));
  if (ell % 2 == 0)
    err += 0.5 * std::exp(log_binom_pmf(ell, ell / 2, eta));
  return err;
}

// Exhaustive multinomial enumeration for n_labels > 2: distribute ell copies
// over shown labels (index 0 = the true label), weight by the multinomial
// pmf, and score the plurality rule with uniform tie-breaking.
double multiclass_point_error(std::int64_t ell, double eta, int n_labels) {
  const double p_true = 1.0 - eta;
  const double p_other = eta / (n_labels - 1);
  std::vector<std::int64_t> c(static_cast<std::size_t>(n_labels), 0);
  double err = 0.0;
  // Recursive composition enumeration without heap churn.
  auto rec = [&](auto&& self, int y, std::int64_t left, double logcoef) -> void {
    if (y == n_labels - 1) {
      c[static_cast<std::size_t>(y)] = left;
      const double lc = logcoef - std::lgamma(static_cast<double>(left) + 1.0);
      std::int64_t best = 0;
      for (std::int64_t v : c)
        if (v > best) best = v;
      int tied = 0;
      for (std::int64_t v : c)
        if (v == best) ++tied;
      double fail;
      if (c[0] < best)
        fail = 1.0;
      else if (tied > 1)
        fail = static_cast<double>(tied - 1) / tied;
      else
        fail = 0.0;
      if (fail > 0.0) {
        const double lp = lc + static_cast<double>(c[0]) * std::log(p_true) +
                          static_cast<double>(ell - c[0]) * std::log(p_other);
        err += fail * std::exp(lp);
      }
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      c[static_cast<std::size_t>(y)] = v;
      self(self, y + 1, left - v,
           logcoef - std::lgamma(static_cast<double>(v) + 1.0));
    }
  };
  rec(rec, 0, ell, std::lgamma(static_cast<double>(ell) + 1.0));
  return err;
}

}  // namespace

double exact_point_error(std::int64_t ell, double eta, int n_labels) {
  if (ell < 0) throw std::invalid_argument("exact_point_error: ell must be >= 0");
  if (n_labels < 2)
    throw std::invalid_argument("exact_point_error: n_labels < 2");
  if (!(eta >= 0.0 && eta < 0.5))
    throw std::invalid_argument("exact_point_error: eta must lie in [0, 1/2)");
  if (ell == 0) return 1.0 - 1.0 / n_labels;
  if (n_labels == 2) return binary_point_error(ell, eta);
  if (ell > 12)
    throw std::invalid_argument(
        "exact_point_error: enumeration capped at ell <= 12 for n_labels > 2");
  if (eta == 0.0) return 0.0;
  return multiclass_point_error(ell, eta, n_labels);
}

double tie_inclusive_failure(std::int64_t ell, double eta) {
  if (ell < 1)
    throw std::invalid_argument("tie_inclusive_failure: ell must be >= 1");
  if (!(eta >= 0.0 && eta < 0.5))
    throw std::invalid_argument("tie_inclusive_failure: eta must lie in [0, 1/2)");
  double total = 0.0;
  for (std::int64_t j = 0; j <= ell / 2; ++j)
    total += std::exp(log_binom_pmf(ell, j, 1.0 - eta));
  return total;
}

Hypothesis randomized_response_wrap(const Hypothesis& h, double epsilon,
                                    int n_labels, Rng& rng) {
  if (n_labels != h.n_labels)
    throw std::invalid_argument("randomized_response_wrap: n_labels mismatch");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("randomized_response_wrap: epsilon must be > 0");
  if (!h.total())
    throw std::invalid_argument(
        "randomized_response_wrap: input must be a total hypothesis");
  Hypothesis out = h;
  if (std::isinf(epsilon)) return out;  // identity wrapper
  const double keep =
      std::exp(epsilon) / (std::exp(epsilon) + (n_labels - 1));
  for (std::size_t x = 0; x < out.label.size(); ++x) {
    if (rng.bernoulli(keep)) continue;
    const int other = static_cast<int>(
        rng.next_below(static_cast<std::uint64_t>(n_labels - 1)));
    out.label[x] = other + (other >= out.label[x] ? 1 : 0);
  }
  return out;
}

}  // namespace longtail
