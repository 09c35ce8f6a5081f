#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "longtail/distribution.hpp"
#include "longtail/prior.hpp"
#include "longtail/rng.hpp"

namespace longtail {

// Continuous embedding of a long-tailed population: each group gets its own
// hypercube, each atom a distinct vertex, and points are the vertex plus
// Gaussian jitter. Rows carry the opposite group's coordinates as a small
// constant pad so both groups share one feature space.
struct SynthParams {
  double p = 0.2;
  double k = 10.0;
  std::int64_t m = 1000;
  double c = 1.0;  // N = ceil(c * m) minority atoms
  double sigma = 0.1;
  int n_labels = 2;
  std::uint64_t seed = 1;

  std::int64_t n_minority() const;  // N
  int d_minority() const;           // ceil(log2(c * m)), at least 1
  int d_majority() const;           // ceil(log2(k * (1 - p))), at least 1
};

struct ContinuousDataset {
  struct Row {
    std::vector<double> x;
    int label = 0;
    Group group = Group::majority;
    std::int64_t cluster = 0;  // atom index within the group
  };

  std::int64_t d_minority = 0;
  std::int64_t d_majority = 0;
  std::vector<std::string> column_names;  // feature columns only
  std::vector<Row> rows;                  // minority block then majority block
  std::vector<std::uint64_t> minority_centers;  // vertex id per atom
  std::vector<std::uint64_t> majority_centers;
};

ContinuousDataset generate_continuous(const SynthParams& params, Rng& rng);

// Snap each row back to the nearest vertex of its own group's cube and
// re-index into a single discrete domain: majority vertices first
// (0 .. 2^d_maj - 1), then minority vertices offset by 2^d_maj.
LabelledDataset nearest_vertex_discretize(const ContinuousDataset& ds);

void write_csv(const ContinuousDataset& ds, std::ostream& out);

}  // namespace longtail
