#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "longtail/distribution.hpp"
#include "longtail/mechanism.hpp"
#include "longtail/prior.hpp"
#include "longtail/rng.hpp"

namespace longtail {

// A trainable learner: consumes a labelled sample, emits a total hypothesis.
// The RNG passed in is the trial's; train must take all randomness from it.
struct LearnerSpec {
  std::string name;
  std::function<Hypothesis(const LabelledDataset&, Rng&)> train;
};

LearnerSpec noisy_majority_learner(MechanismParams params,
                                   FallbackMode mode = FallbackMode::eager);
LearnerSpec constant_learner(int label, int n_labels);

// Exact expected error of a fixed hypothesis against a fixed labelling,
// weighted by an arbitrary nonnegative weight vector over the domain
// (a pmf for overall error, a group marginal for per-group error).
double expected_error_given_run(const Hypothesis& h, const Labelling& f,
                                const std::vector<double>& weight);

struct MetricsReport {
  double err_overall = 0.0;
  double err_minority = 0.0;
  double err_majority = 0.0;
  double gamma = 0.0;  // err_minority - err_overall

  double se_overall = 0.0;
  double se_minority = 0.0;
  double se_majority = 0.0;
  double se_gamma = 0.0;

  std::int64_t trials = 0;
  std::uint64_t master_seed = 0;

  // Per-trial exact errors, in trial order; gamma is recoverable per trial
  // as trial_minority[t] - trial_overall[t].
  std::vector<double> trial_overall;
  std::vector<double> trial_minority;
  std::vector<double> trial_majority;
};

// Monte Carlo over full runs: each trial draws a labelling from the prior,
// samples m points, labels them, trains, then scores the hypothesis exactly
// under the distribution (no test-set sampling noise). Trials are seeded
// independently from master_seed, so the estimate is reproducible and
// independent of evaluation order.
MetricsReport mc_metrics(const LearnerSpec& learner,
                         const DistributionSpec& spec, const LabelPrior& prior,
                         std::int64_t m, std::int64_t trials,
                         std::uint64_t master_seed);

double gamma_of(const MetricsReport& report);

}  // namespace longtail
