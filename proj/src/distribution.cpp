#include "longtail/distribution.hpp"

#include <cmath>
#include <stdexcept>

#include "longtail/numeric.hpp"

namespace longtail {

DistributionSpec make_long_tail(double p, double k, std::int64_t n_minority) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("make_long_tail: p must lie in (0,1)");
  if (n_minority < 1)
    throw std::invalid_argument("make_long_tail: n_minority must be >= 1");
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::invalid_argument("make_long_tail: k must be positive and finite");

  const std::int64_t n_majority = std::llround((1.0 - p) * k);
  if (n_majority < 2)
    throw std::invalid_argument(
        "make_long_tail: (1-p)k rounds below 2 majority atoms; need k >= 2/(1-p)");

  DistributionSpec spec;
  spec.p = p;
  spec.n_minority = n_minority;
  spec.n_majority = n_majority;
  spec.k = static_cast<double>(n_majority) / (1.0 - p);
  if (!(spec.minority_atom_mass() < spec.majority_atom_mass()))
    throw std::invalid_argument(
        "make_long_tail: minority atoms must be lighter than majority atoms (p/N < 1/k)");
  return spec;
}

double pmf(const DistributionSpec& spec, std::int64_t x) {
  if (x < 0 || x >= spec.domain_size())
    throw std::out_of_range("pmf: atom index outside the domain");
  return spec.group_of(x) == Group::majority ? spec.majority_atom_mass()
                                             : spec.minority_atom_mass();
}

std::vector<double> pmf_weights(const DistributionSpec& spec) {
  std::vector<double> w(static_cast<std::size_t>(spec.domain_size()));
  const double wm = spec.majority_atom_mass();
  const double wn = spec.minority_atom_mass();
  for (std::int64_t x = 0; x < spec.domain_size(); ++x)
    w[static_cast<std::size_t>(x)] = x < spec.n_majority ? wm : wn;
  return w;
}

std::vector<double> group_marginal(const DistributionSpec& spec, Group group) {
  std::vector<double> w(static_cast<std::size_t>(spec.domain_size()), 0.0);
  if (group == Group::majority) {
    const double wm = 1.0 / static_cast<double>(spec.n_majority);
    for (std::int64_t x = 0; x < spec.n_majority; ++x)
      w[static_cast<std::size_t>(x)] = wm;
  } else {
    const double wn = 1.0 / static_cast<double>(spec.n_minority);
    for (std::int64_t x = spec.n_majority; x < spec.domain_size(); ++x)
      w[static_cast<std::size_t>(x)] = wn;
  }
  return w;
}

UnlabelledDataset sample_dataset(const DistributionSpec& spec, std::int64_t m,
                                 Rng& rng) {
  if (m < 0) throw std::invalid_argument("sample_dataset: m must be >= 0");
  UnlabelledDataset ds;
  ds.n_majority = spec.n_majority;
  ds.domain = spec.domain_size();
  ds.draws.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    if (rng.bernoulli(spec.p)) {
      ds.draws.push_back(spec.n_majority +
                         static_cast<std::int64_t>(rng.next_below(
                             static_cast<std::uint64_t>(spec.n_minority))));
    } else {
      ds.draws.push_back(static_cast<std::int64_t>(
          rng.next_below(static_cast<std::uint64_t>(spec.n_majority))));
    }
  }
  return ds;
}

OccupancyHistogram occurrence_histogram(const UnlabelledDataset& ds) {
  std::vector<std::int64_t> occ(static_cast<std::size_t>(ds.domain), 0);
  OccupancyHistogram hist;
  for (std::int64_t x : ds.draws) {
    if (x < 0 || x >= ds.domain)
      throw std::out_of_range("occurrence_histogram: draw outside the domain");
    ++occ[static_cast<std::size_t>(x)];
    if (ds.group_of(x) == Group::majority)
      ++hist.m1;
    else
      ++hist.m2;
  }
  for (std::int64_t x = 0; x < ds.domain; ++x) {
    const std::int64_t n = occ[static_cast<std::size_t>(x)];
    if (n == 0) continue;
    if (ds.group_of(x) == Group::majority) {
      ++hist.majority[n];
      ++hist.distinct_majority;
    } else {
      ++hist.minority[n];
      ++hist.distinct_minority;
    }
  }
  return hist;
}

double expected_occupancy(const DistributionSpec& spec, std::int64_t m2,
                          std::int64_t ell) {
  if (ell < 0 || ell > m2)
    throw std::invalid_argument("expected_occupancy: need 0 <= ell <= m2");
  const std::int64_t n = spec.n_minority;
  if (n == 1) return ell == m2 ? 1.0 : 0.0;
  const double inv = 1.0 / static_cast<double>(n);
  const double lp = log_choose(m2, ell) +
                    static_cast<double>(ell) * std::log(inv) +
                    static_cast<double>(m2 - ell) * std::log1p(-inv);
  return static_cast<double>(n) * std::exp(lp);
}

}  // namespace longtail
