#include "longtail/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "longtail/numeric.hpp"

namespace longtail {

LearnerSpec noisy_majority_learner(MechanismParams params, FallbackMode mode) {
  LearnerSpec spec;
  spec.name = "noisy_majority(eta=" + std::to_string(params.eta) + ")";
  spec.train = [params, mode](const LabelledDataset& data, Rng& rng) {
    return train_noisy_majority(data, params, rng, mode);
  };
  return spec;
}

LearnerSpec constant_learner(int label, int n_labels) {
  if (n_labels < 2)
    throw std::invalid_argument("constant_learner: need at least 2 labels");
  if (label < 0 || label >= n_labels)
    throw std::invalid_argument("constant_learner: label out of range");
  LearnerSpec spec;
  spec.name = "constant(" + std::to_string(label) + ")";
  spec.train = [label, n_labels](const LabelledDataset& data, Rng&) {
    Hypothesis h;
    h.n_labels = n_labels;
    h.label.assign(static_cast<std::size_t>(data.data.domain), label);
    h.committed.assign(static_cast<std::size_t>(data.data.domain), 1);
    return h;
  };
  return spec;
}

double expected_error_given_run(const Hypothesis& h, const Labelling& f,
                                const std::vector<double>& weight) {
  if (h.domain_size() != static_cast<std::int64_t>(f.assignment.size()) ||
      h.domain_size() != static_cast<std::int64_t>(weight.size()))
    throw std::invalid_argument(
        "expected_error_given_run: domain size mismatch");
  CompensatedSum err;
  for (std::size_t x = 0; x < weight.size(); ++x) {
    if (h.label[x] != f.assignment[x]) err.add(weight[x]);
  }
  return err.value();
}

namespace {

struct Moments {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  void add(double v) {
    sum.add(v);
    sum_sq.add(v * v);
  }
  double mean(std::int64_t n) const {
    return sum.value() / static_cast<double>(n);
  }
  // Bessel-corrected standard error of the mean.
  double se(std::int64_t n) const {
    const double nd = static_cast<double>(n);
    const double var =
        (sum_sq.value() - sum.value() * sum.value() / nd) / (nd - 1.0);
    return std::sqrt(std::max(var, 0.0) / nd);
  }
};

}  // namespace

MetricsReport mc_metrics(const LearnerSpec& learner,
                         const DistributionSpec& spec, const LabelPrior& prior,
                         std::int64_t m, std::int64_t trials,
                         std::uint64_t master_seed) {
  if (trials < 2)
    throw std::invalid_argument("mc_metrics: need at least 2 trials");
  if (m < 1) throw std::invalid_argument("mc_metrics: m must be >= 1");
  if (prior.domain_size() != spec.domain_size())
    throw std::invalid_argument("mc_metrics: prior domain mismatch");
  if (!learner.train) throw std::invalid_argument("mc_metrics: empty learner");

  const std::vector<double> w_all = pmf_weights(spec);
  const std::vector<double> w_min = group_marginal(spec, Group::minority);
  const std::vector<double> w_maj = group_marginal(spec, Group::majority);

  MetricsReport report;
  report.trials = trials;
  report.master_seed = master_seed;
  report.trial_overall.reserve(static_cast<std::size_t>(trials));
  report.trial_minority.reserve(static_cast<std::size_t>(trials));
  report.trial_majority.reserve(static_cast<std::size_t>(trials));

  Moments overall, minority, majority, gamma;

  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(mix64(master_seed, static_cast<std::uint64_t>(t)));
    const Labelling f = sample_labelling(prior, rng);
    const UnlabelledDataset sample = sample_dataset(spec, m, rng);
    const LabelledDataset labelled = label_dataset(sample, f, prior.n_labels);

    Hypothesis h;
    try {
      h = learner.train(labelled, rng);
    } catch (const std::exception& e) {
      throw std::runtime_error("mc_metrics: trial " + std::to_string(t) +
                               " failed: " + e.what());
    }

    const double e_all = expected_error_given_run(h, f, w_all);
    const double e_min = expected_error_given_run(h, f, w_min);
    const double e_maj = expected_error_given_run(h, f, w_maj);

    report.trial_overall.push_back(e_all);
    report.trial_minority.push_back(e_min);
    report.trial_majority.push_back(e_maj);
    overall.add(e_all);
    minority.add(e_min);
    majority.add(e_maj);
    gamma.add(e_min - e_all);
  }

  report.err_overall = overall.mean(trials);
  report.err_minority = minority.mean(trials);
  report.err_majority = majority.mean(trials);
  report.gamma = gamma.mean(trials);
  report.se_overall = overall.se(trials);
  report.se_minority = minority.se(trials);
  report.se_majority = majority.se(trials);
  report.se_gamma = gamma.se(trials);
  return report;
}

double gamma_of(const MetricsReport& report) {
  return report.err_minority - report.err_overall;
}

}  // namespace longtail
