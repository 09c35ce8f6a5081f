#include "longtail/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace longtail {

namespace {

int cube_dim(double count, const char* what) {
  if (!(count > 0.0))
    throw std::invalid_argument(std::string("generate_continuous: ") + what +
                                " count must be positive");
  const int d = std::max(1, static_cast<int>(std::ceil(std::log2(count))));
  if (d > 62)
    throw std::invalid_argument(std::string("generate_continuous: ") + what +
                                " cube dimension too large");
  return d;
}

// Distinct random vertices of the d-cube. Rejection is fine while the cube
// is sparse; a shuffled enumeration covers the dense case.
std::vector<std::uint64_t> distinct_vertices(std::int64_t count, int d,
                                             Rng& rng) {
  const std::uint64_t space = std::uint64_t{1} << d;
  if (static_cast<std::uint64_t>(count) > space)
    throw std::invalid_argument(
        "generate_continuous: more clusters than cube vertices");
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  if (static_cast<std::uint64_t>(count) * 2 > space) {
    std::vector<std::uint64_t> all(space);
    for (std::uint64_t v = 0; v < space; ++v) all[v] = v;
    for (std::uint64_t i = space; i > 1; --i)
      std::swap(all[i - 1], all[rng.next_below(i)]);
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
  }
  std::unordered_set<std::uint64_t> seen;
  while (out.size() < static_cast<std::size_t>(count)) {
    const std::uint64_t v = rng.next_below(space);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace

std::int64_t SynthParams::n_minority() const {
  return static_cast<std::int64_t>(
      std::ceil(c * static_cast<double>(m)));
}

int SynthParams::d_minority() const {
  return cube_dim(c * static_cast<double>(m), "minority");
}

int SynthParams::d_majority() const {
  return cube_dim(k * (1.0 - p), "majority");
}

ContinuousDataset generate_continuous(const SynthParams& params, Rng& rng) {
  if (!(params.p > 0.0 && params.p < 1.0))
    throw std::invalid_argument("generate_continuous: p must lie in (0, 1)");
  if (params.m < 1)
    throw std::invalid_argument("generate_continuous: m must be >= 1");
  if (!(params.sigma >= 0.0))
    throw std::invalid_argument("generate_continuous: sigma must be >= 0");
  if (params.n_labels < 2)
    throw std::invalid_argument("generate_continuous: need at least 2 labels");

  const DistributionSpec spec =
      make_long_tail(params.p, params.k, params.n_minority());
  const int d_min = params.d_minority();
  const int d_maj = params.d_majority();
  constexpr double kPad = 1e-4;

  ContinuousDataset ds;
  ds.d_minority = d_min;
  ds.d_majority = d_maj;
  ds.minority_centers = distinct_vertices(spec.n_minority, d_min, rng);
  ds.majority_centers = distinct_vertices(spec.n_majority, d_maj, rng);

  std::vector<int> minority_labels(
      static_cast<std::size_t>(spec.n_minority));
  std::vector<int> majority_labels(
      static_cast<std::size_t>(spec.n_majority));
  for (auto& y : minority_labels)
    y = static_cast<int>(rng.next_below(
        static_cast<std::uint64_t>(params.n_labels)));
  for (auto& y : majority_labels)
    y = static_cast<int>(rng.next_below(
        static_cast<std::uint64_t>(params.n_labels)));

  // Layout: minority rows are [minority features..., majority pad...],
  // majority rows [majority features..., minority pad...].
  ds.column_names.reserve(static_cast<std::size_t>(d_min + d_maj));
  for (int j = 0; j < d_min + d_maj; ++j)
    ds.column_names.push_back("f" + std::to_string(j));

  std::int64_t m1 = 0;  // Binomial(m, p)
  for (std::int64_t i = 0; i < params.m; ++i)
    if (rng.bernoulli(params.p)) ++m1;

  ds.rows.reserve(static_cast<std::size_t>(params.m));
  const auto emit = [&](Group group, std::int64_t count) {
    const bool is_min = group == Group::minority;
    const auto& centers = is_min ? ds.minority_centers : ds.majority_centers;
    const auto& labels = is_min ? minority_labels : majority_labels;
    const int d_own = is_min ? d_min : d_maj;
    const int d_pad = is_min ? d_maj : d_min;
    const std::int64_t n_atoms =
        static_cast<std::int64_t>(centers.size());
    for (std::int64_t i = 0; i < count; ++i) {
      const std::int64_t atom = static_cast<std::int64_t>(
          rng.next_below(static_cast<std::uint64_t>(n_atoms)));
      ContinuousDataset::Row row;
      row.group = group;
      row.cluster = atom;
      row.label = labels[static_cast<std::size_t>(atom)];
      row.x.reserve(static_cast<std::size_t>(d_own + d_pad));
      const std::uint64_t vertex = centers[static_cast<std::size_t>(atom)];
      for (int j = 0; j < d_own; ++j) {
        const double bit = static_cast<double>((vertex >> j) & 1u);
        row.x.push_back(bit + params.sigma * rng.normal());
      }
      for (int j = 0; j < d_pad; ++j) row.x.push_back(kPad);
      ds.rows.push_back(std::move(row));
    }
  };
  emit(Group::minority, m1);
  emit(Group::majority, params.m - m1);
  return ds;
}

LabelledDataset nearest_vertex_discretize(const ContinuousDataset& ds) {
  const int d_min = static_cast<int>(ds.d_minority);
  const int d_maj = static_cast<int>(ds.d_majority);
  const std::int64_t offset = std::int64_t{1} << d_maj;
  const std::int64_t domain = offset + (std::int64_t{1} << d_min);

  LabelledDataset out;
  out.data.domain = domain;
  out.data.n_majority = offset;
  out.data.draws.reserve(ds.rows.size());
  out.labels.reserve(ds.rows.size());

  int max_label = 1;
  for (const auto& row : ds.rows) {
    const bool is_min = row.group == Group::minority;
    const int d_own = is_min ? d_min : d_maj;
    if (static_cast<int>(row.x.size()) < d_own)
      throw std::invalid_argument(
          "nearest_vertex_discretize: row shorter than its cube");
    std::uint64_t vertex = 0;
    for (int j = 0; j < d_own; ++j)
      if (row.x[static_cast<std::size_t>(j)] > 0.5)
        vertex |= std::uint64_t{1} << j;
    out.data.draws.push_back(is_min
                                 ? offset + static_cast<std::int64_t>(vertex)
                                 : static_cast<std::int64_t>(vertex));
    out.labels.push_back(row.label);
    max_label = std::max(max_label, row.label);
  }
  out.n_labels = max_label + 1;
  if (out.n_labels < 2) out.n_labels = 2;
  return out;
}

void write_csv(const ContinuousDataset& ds, std::ostream& out) {
  for (const auto& name : ds.column_names) out << name << ',';
  out << "label,group,cluster\n";
  char buf[32];
  for (const auto& row : ds.rows) {
    for (const double v : row.x) {
      std::snprintf(buf, sizeof buf, "%.9g", v);
      out << buf << ',';
    }
    out << row.label << ','
        << (row.group == Group::minority ? "minority" : "majority") << ','
        << row.cluster << '\n';
  }
}

}  // namespace longtail
