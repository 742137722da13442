//
// Copyright 2026 The serialpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SERIALPRIV_UTILITY_HPP_
#define SERIALPRIV_UTILITY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "serialpriv/model.hpp"

namespace serialpriv {

// What an analyst sees of a published release: the groups' generalized
// regions and sensitive multisets, with real and virtual row counts but no
// identities.
struct PublishedGroup {
  std::vector<GeneralizedValue> generalized_qid;
  std::map<std::string, std::int64_t> sensitive_multiset;
  std::int64_t real_count = 0;
  std::int64_t virtual_count = 0;

  std::int64_t size() const { return real_count + virtual_count; }
};

struct PublishedTable {
  std::int32_t release_index = 0;
  TableSchema schema;
  std::vector<PublishedGroup> groups;
};

PublishedTable to_published(const AnonymizedTable& table);

// A counting query over the quasi-identifier attributes. Each predicate is
// optional per attribute; at least one must be present.
struct AttrPredicate {
  enum class Kind { kRange, kPrefix, kEquals };
  Kind kind = Kind::kEquals;
  std::int64_t lo = 0;  // range: [lo, hi)
  std::int64_t hi = 0;
  std::string text;     // prefix or equality value
};

struct RangeQuery {
  std::vector<std::optional<AttrPredicate>> predicates;  // aligned with schema.qid
};

// Deterministic random workload: each query constrains a random nonempty
// subset of attributes with sub-ranges / prefixes / values drawn uniformly
// from the domains observed in the given table.
std::vector<RangeQuery> generate_queries(const MicroTable& table, int count, std::uint64_t seed);

// Exact count of raw records matching the query.
std::int64_t answer_exact(const MicroTable& raw, const RangeQuery& query);

// Estimated count against the published table: each group contributes its
// size scaled by the fraction of its generalized region overlapping the
// query, assuming mass spreads uniformly over the region (wildcard positions
// expand uniformly over a decimal alphabet).
double answer_anonymized(const PublishedTable& table, const RangeQuery& query);

// Mean over queries of |exact - estimated| / max(exact, 1).
double relative_error(const MicroTable& raw, const PublishedTable& anon,
                      const std::vector<RangeQuery>& queries);

struct SizeMetrics {
  double average_size = 0.0;
  std::int64_t max_size = 0;
  std::int64_t discernability = 0;  // sum of squared group sizes
  double normalized_average = 0.0;  // rows / (groups * k_param)
};

SizeMetrics size_metrics(const PublishedTable& table, std::int64_t k_param = 1);

struct UtilityReport {
  double average_relative_error = 0.0;
  double average_group_size = 0.0;
  std::int64_t max_group_size = 0;
  std::int64_t discernability = 0;
  double normalized_average_size = 0.0;
  int query_count = 0;
};

UtilityReport evaluate_utility(const MicroTable& raw, const PublishedTable& anon, int query_count,
                               std::uint64_t seed, std::int64_t k_param = 1);

}  // namespace serialpriv

#endif  // SERIALPRIV_UTILITY_HPP_
