#include "longtail/prior.hpp"

#include <cmath>
#include <stdexcept>

namespace longtail {

LabelPrior make_prior_uniform(std::int64_t domain_size, int n_labels) {
  if (n_labels < 2)
    throw std::invalid_argument("make_prior_uniform: n_labels must be >= 2");
  if (domain_size < 1)
    throw std::invalid_argument("make_prior_uniform: domain_size must be >= 1");
  LabelPrior prior;
  prior.n_labels = n_labels;
  prior.table.assign(static_cast<std::size_t>(domain_size),
                     std::vector<double>(static_cast<std::size_t>(n_labels),
                                         1.0 / n_labels));
  return prior;
}

LabelPrior make_prior_table(std::vector<std::vector<double>> rows) {
  if (rows.empty())
    throw std::invalid_argument("make_prior_table: table must be nonempty");
  const std::size_t width = rows.front().size();
  if (width < 2)
    throw std::invalid_argument("make_prior_table: rows need at least 2 labels");
  for (const auto& row : rows) {
    if (row.size() != width)
      throw std::invalid_argument("make_prior_table: inconsistent row lengths");
    double sum = 0.0;
    for (double v : row) {
      if (v < 0.0)
        throw std::invalid_argument("make_prior_table: negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("make_prior_table: row does not sum to 1");
  }
  LabelPrior prior;
  prior.n_labels = static_cast<int>(width);
  prior.table = std::move(rows);
  return prior;
}

double sup_norm(const LabelPrior& prior) {
  double best = 0.0;
  for (const auto& row : prior.table)
    for (double v : row)
      if (v > best) best = v;
  return best;
}

Labelling sample_labelling(const LabelPrior& prior, Rng& rng) {
  Labelling f;
  f.assignment.reserve(prior.table.size());
  for (const auto& row : prior.table) {
    const double u = rng.next_double();
    double acc = 0.0;
    int label = static_cast<int>(row.size()) - 1;  // absorbs rounding residue
    for (std::size_t y = 0; y < row.size(); ++y) {
      acc += row[y];
      if (u < acc) {
        label = static_cast<int>(y);
        break;
      }
    }
    f.assignment.push_back(label);
  }
  return f;
}

LabelledDataset label_dataset(const UnlabelledDataset& ds,
                              const Labelling& labelling, int n_labels) {
  if (static_cast<std::int64_t>(labelling.assignment.size()) < ds.domain)
    throw std::invalid_argument(
        "label_dataset: labelling does not cover the dataset domain");
  LabelledDataset out;
  out.data = ds;
  out.n_labels = n_labels;
  out.labels.reserve(ds.draws.size());
  for (std::int64_t x : ds.draws) {
    const int y = labelling(x);
    if (y < 0 || y >= n_labels)
      throw std::invalid_argument("label_dataset: label outside [0, n_labels)");
    out.labels.push_back(y);
  }
  return out;
}

}  // namespace longtail
