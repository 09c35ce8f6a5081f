#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "longtail/rng.hpp"

namespace longtail {

enum class Group { majority, minority };

// A long-tailed distribution over atom indices: n_majority heavy atoms of
// mass 1/k and n_minority light atoms sharing total mass p. The requested k
// is adjusted so that (1-p)k is an integer (n_majority = round((1-p)k),
// k = n_majority/(1-p)); the masses then sum to 1 exactly.
//
// Index layout: [0, n_majority) are majority atoms, [n_majority,
// n_majority + n_minority) are minority atoms. Immutable after construction.
struct DistributionSpec {
  double p = 0.0;               // total minority mass, in (0,1)
  double k = 0.0;               // adjusted: n_majority / (1-p)
  std::int64_t n_minority = 0;  // number of light atoms
  std::int64_t n_majority = 0;  // round((1-p) * requested k), at least 2

  std::int64_t domain_size() const { return n_majority + n_minority; }
  Group group_of(std::int64_t x) const {
    return x < n_majority ? Group::majority : Group::minority;
  }
  double majority_atom_mass() const { return 1.0 / k; }
  double minority_atom_mass() const {
    return p / static_cast<double>(n_minority);
  }
};

// Builds a DistributionSpec, applying the integrality adjustment to k.
// Rejects p outside (0,1), fewer than 2 majority atoms (requires
// k >= 2/(1-p)), and minority atoms at least as heavy as majority atoms.
DistributionSpec make_long_tail(double p, double k, std::int64_t n_minority);

// Probability mass of atom x. Throws std::out_of_range outside the domain.
double pmf(const DistributionSpec& spec, std::int64_t x);

// The full pmf as a weight vector over the domain.
std::vector<double> pmf_weights(const DistributionSpec& spec);

// Conditional distribution given the group, as a weight vector over the full
// domain (zero outside the group): 1/n_minority per light atom, or
// 1/n_majority per heavy atom (equivalently 1/(k(1-p)) with the adjusted k).
std::vector<double> group_marginal(const DistributionSpec& spec, Group group);

// An i.i.d. sample of atom indices. Carries the group boundary so occupancy
// statistics can be split without the originating spec.
struct UnlabelledDataset {
  std::vector<std::int64_t> draws;
  std::int64_t n_majority = 0;
  std::int64_t domain = 0;

  std::int64_t m() const { return static_cast<std::int64_t>(draws.size()); }
  Group group_of(std::int64_t x) const {
    return x < n_majority ? Group::majority : Group::minority;
  }
};

// m independent draws. Each draw picks the minority group with probability p
// and then an atom uniformly inside the chosen group, so the minority draw
// count is Binomial(m, p).
UnlabelledDataset sample_dataset(const DistributionSpec& spec, std::int64_t m,
                                 Rng& rng);

// Per group, how many distinct atoms appear exactly ell times (ell >= 1 only;
// the ell = 0 count is the group's domain size minus distinct_seen).
struct OccupancyHistogram {
  std::map<std::int64_t, std::int64_t> majority;
  std::map<std::int64_t, std::int64_t> minority;
  std::int64_t m1 = 0;  // majority draw count
  std::int64_t m2 = 0;  // minority draw count
  std::int64_t distinct_majority = 0;
  std::int64_t distinct_minority = 0;
};

OccupancyHistogram occurrence_histogram(const UnlabelledDataset& ds);

// E[number of minority atoms appearing exactly ell times | m2 minority draws]
//   = N * C(m2, ell) * (1/N)^ell * (1 - 1/N)^(m2-ell).
// Evaluated in log space; C(m2, ell) overflows well before m2 reaches the
// sample sizes used here. Throws unless 0 <= ell <= m2.
double expected_occupancy(const DistributionSpec& spec, std::int64_t m2,
                          std::int64_t ell);

}  // namespace longtail
