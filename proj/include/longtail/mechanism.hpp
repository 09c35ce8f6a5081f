#pragma once

#include <cstdint>
#include <vector>

#include "longtail/prior.hpp"
#include "longtail/rng.hpp"

namespace longtail {

// Noise level of the label-flipping learner. eta = 0 is the non-private
// memorizing baseline; eta must stay below 1/2.
struct MechanismParams {
  double eta = 0.0;
  int n_labels = 2;
};

// Whether unseen atoms get their fallback label materialized at training time
// (the default; the hypothesis is then a pure function) or drawn fresh from a
// query-time generator.
enum class FallbackMode { eager, lazy };

// A total classifier over the atom domain. committed[x] marks atoms that were
// present in the training data; label[x] is -1 only for lazy-mode unseen
// atoms, which must be queried through query().
struct Hypothesis {
  int n_labels = 2;
  std::vector<int> label;
  std::vector<std::uint8_t> committed;

  std::int64_t domain_size() const {
    return static_cast<std::int64_t>(label.size());
  }
  bool total() const;
  // Deterministic lookup; throws std::logic_error on a lazy unseen atom.
  int operator()(std::int64_t x) const;
};

// Lazy-safe lookup: unseen atoms without a materialized fallback draw a
// uniform label from rng on every call.
int query(const Hypothesis& h, std::int64_t x, Rng& rng);

// The label-flipping plurality learner: every training label is independently
// flipped with probability eta (flip target uniform over the other labels),
// each seen atom commits to the plurality label of its flipped copies (ties
// broken uniformly at random), and unseen atoms answer uniformly at random.
// Generator consumption order is fixed: flips in draw order, then tie-breaks
// and fallbacks in atom-index order.
Hypothesis train_noisy_majority(const LabelledDataset& data,
                                const MechanismParams& params, Rng& rng,
                                FallbackMode mode = FallbackMode::eager);

// The pure-DP parameter of the learner above:
//   epsilon = log((1 - eta) * (n_labels - 1) / eta),  delta = 0.
// Returns +infinity at eta = 0 (the distinct no-privacy signal); throws for
// eta outside [0, 1/2).
double privacy_of_eta(double eta, int n_labels);

// Inverse calibration: eta = (n_labels - 1) / ((n_labels - 1) + e^epsilon),
// so privacy_of_eta(eta_for_epsilon(e)) == e. Requires epsilon > 0.
double eta_for_epsilon(double epsilon, int n_labels);

// Exact misclassification probability for an atom with ell clean training
// copies under the learner above (plurality with uniform tie-breaking;
// ell = 0 gives the uniform fallback's 1 - 1/n_labels). Binary labels use the
// closed form P[flips > ell/2] + P[flips = ell/2]/2; more labels are
// enumerated exhaustively and capped at ell <= 12.
double exact_point_error(std::int64_t ell, double eta, int n_labels);

// P[Binomial(ell, 1 - eta) <= floor(ell/2)]: the probability that at most
// half the copies keep the true label, with ties counted as failures. This is
// the statistic the tail bounds sandwich; it dominates exact_point_error.
double tie_inclusive_failure(std::int64_t ell, double eta);

// Randomized-response wrapper: every atom's answer is kept with probability
// e^epsilon / (e^epsilon + n_labels - 1), else replaced uniformly by another
// label. The returned hypothesis is materialized, so the (epsilon, 0) privacy
// guarantee applies per query of the wrapped output. Requires a total input.
Hypothesis randomized_response_wrap(const Hypothesis& h, double epsilon,
                                    int n_labels, Rng& rng);

}  // namespace longtail
