#pragma once

#include <cstdint>
#include <vector>

#include "longtail/distribution.hpp"
#include "longtail/rng.hpp"

namespace longtail {

// Per-atom categorical label distributions. Labels of distinct atoms are
// independent by construction (each atom owns its row), which is the only
// prior family the evaluators need.
struct LabelPrior {
  int n_labels = 2;
  std::vector<std::vector<double>> table;  // one probability row per atom

  std::int64_t domain_size() const {
    return static_cast<std::int64_t>(table.size());
  }
};

// Every row uniform over n_labels; the canonical instance with sup-norm
// 1/n_labels. Rejects n_labels < 2.
LabelPrior make_prior_uniform(std::int64_t domain_size, int n_labels);

// Prior with exactly the given rows. Rejects empty tables, inconsistent row
// lengths, negative entries, and rows not summing to 1 within 1e-9.
LabelPrior make_prior_table(std::vector<std::vector<double>> rows);

// Largest single entry of the table; always in [1/n_labels, 1].
double sup_norm(const LabelPrior& prior);

// A total labelling of the atom domain.
struct Labelling {
  std::vector<int> assignment;  // atom index -> label

  int operator()(std::int64_t x) const {
    return assignment[static_cast<std::size_t>(x)];
  }
};

// Draws each atom's label independently from its row.
Labelling sample_labelling(const LabelPrior& prior, Rng& rng);

// Covariates plus clean labels; labels[i] belongs to draws[i]. Repeated atoms
// always carry the same label (label noise is the mechanism's job).
struct LabelledDataset {
  UnlabelledDataset data;
  std::vector<int> labels;
  int n_labels = 2;
};

// labels[i] = labelling(draws[i]). Throws if the labelling does not cover the
// dataset's domain.
LabelledDataset label_dataset(const UnlabelledDataset& ds,
                              const Labelling& labelling, int n_labels);

}  // namespace longtail
