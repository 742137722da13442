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

#include "serialpriv/utility.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace serialpriv {

namespace {

bool starts_with(const std::string& value, const std::string& prefix) {
  return value.size() >= prefix.size() && value.compare(0, prefix.size(), prefix) == 0;
}

bool record_matches(const MicroRecord& record, const RangeQuery& query) {
  for (std::size_t i = 0; i < query.predicates.size(); ++i) {
    if (!query.predicates[i].has_value()) {
      continue;
    }
    const AttrPredicate& predicate = *query.predicates[i];
    switch (predicate.kind) {
      case AttrPredicate::Kind::kRange: {
        const std::int64_t v = std::get<std::int64_t>(record.qid[i]);
        if (v < predicate.lo || v >= predicate.hi) {
          return false;
        }
        break;
      }
      case AttrPredicate::Kind::kPrefix:
        if (!starts_with(std::get<std::string>(record.qid[i]), predicate.text)) {
          return false;
        }
        break;
      case AttrPredicate::Kind::kEquals:
        if (std::get<std::string>(record.qid[i]) != predicate.text) {
          return false;
        }
        break;
    }
  }
  return true;
}

// Fraction of a generalized region lying inside one predicate, under the
// uniform-spread assumption.
double overlap_fraction(const GeneralizedValue& region, const AttrPredicate& predicate) {
  if (const auto* range = std::get_if<NumericRange>(&region)) {
    if (predicate.kind != AttrPredicate::Kind::kRange) {
      return 0.0;
    }
    const double lo = static_cast<double>(range->lo);
    const double hi = static_cast<double>(range->hi);
    if (lo == hi) {
      return (range->lo >= predicate.lo && range->lo < predicate.hi) ? 1.0 : 0.0;
    }
    const double cut_lo = std::max(lo, static_cast<double>(predicate.lo));
    const double cut_hi = std::min(hi, static_cast<double>(predicate.hi));
    return std::max(0.0, cut_hi - cut_lo) / (hi - lo);
  }
  if (const auto* pattern = std::get_if<StringPattern>(&region)) {
    if (predicate.kind != AttrPredicate::Kind::kPrefix) {
      return 0.0;
    }
    const std::string& wanted = predicate.text;
    if (pattern->any) {
      // Unknown length and content; expansions match a prefix of length m
      // with density 10^-m.
      return std::pow(0.1, static_cast<double>(wanted.size()));
    }
    if (wanted.size() > pattern->length) {
      return 0.0;
    }
    if (wanted.size() <= pattern->prefix.size()) {
      return starts_with(pattern->prefix, wanted) ? 1.0 : 0.0;
    }
    if (!starts_with(wanted, pattern->prefix)) {
      return 0.0;
    }
    return std::pow(0.1, static_cast<double>(wanted.size() - pattern->prefix.size()));
  }
  const auto& set = std::get<ValueSet>(region);
  if (predicate.kind != AttrPredicate::Kind::kEquals || set.values.empty()) {
    return 0.0;
  }
  const bool contained =
      std::find(set.values.begin(), set.values.end(), predicate.text) != set.values.end();
  return contained ? 1.0 / static_cast<double>(set.values.size()) : 0.0;
}

}  // namespace

PublishedTable to_published(const AnonymizedTable& table) {
  PublishedTable published;
  published.release_index = table.release_index;
  published.schema = table.schema;
  for (const AnonymizedGroup& group : table.groups) {
    PublishedGroup view;
    view.generalized_qid = group.generalized_qid;
    view.sensitive_multiset = group.sensitive_multiset;
    view.real_count = static_cast<std::int64_t>(group.member_ids.size());
    view.virtual_count = static_cast<std::int64_t>(group.virtual_ids.size());
    published.groups.push_back(std::move(view));
  }
  return published;
}

std::vector<RangeQuery> generate_queries(const MicroTable& table, int count, std::uint64_t seed) {
  if (count < 1) {
    throw std::invalid_argument("query count must be positive");
  }
  const std::size_t arity = table.schema.qid.size();
  if (arity == 0) {
    throw std::invalid_argument("schema has no quasi-identifier attributes");
  }

  // Observed domains.
  std::vector<std::int64_t> num_lo(arity, 0), num_hi(arity, 0);
  std::vector<std::vector<std::string>> texts(arity);
  for (std::size_t i = 0; i < arity; ++i) {
    if (table.schema.qid[i].type == AttributeType::kNumeric) {
      bool first = true;
      for (const MicroRecord& record : table.records) {
        const std::int64_t v = std::get<std::int64_t>(record.qid[i]);
        if (first || v < num_lo[i]) num_lo[i] = v;
        if (first || v > num_hi[i]) num_hi[i] = v;
        first = false;
      }
    } else {
      std::set<std::string> distinct;
      for (const MicroRecord& record : table.records) {
        distinct.insert(std::get<std::string>(record.qid[i]));
      }
      texts[i].assign(distinct.begin(), distinct.end());
    }
  }

  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };

  std::vector<RangeQuery> queries;
  queries.reserve(static_cast<std::size_t>(count));
  while (queries.size() < static_cast<std::size_t>(count)) {
    RangeQuery query;
    query.predicates.resize(arity);
    // Random nonempty attribute subset.
    std::uint64_t mask = 0;
    while (mask == 0) {
      mask = rng() & ((1ull << arity) - 1);
    }
    bool usable = true;
    for (std::size_t i = 0; i < arity; ++i) {
      if (!(mask & (1ull << i))) {
        continue;
      }
      AttrPredicate predicate;
      switch (table.schema.qid[i].type) {
        case AttributeType::kNumeric: {
          const std::uint64_t span = static_cast<std::uint64_t>(num_hi[i] - num_lo[i]) + 1;
          std::int64_t a = num_lo[i] + static_cast<std::int64_t>(pick(span));
          std::int64_t b = num_lo[i] + static_cast<std::int64_t>(pick(span)) + 1;
          predicate.kind = AttrPredicate::Kind::kRange;
          predicate.lo = std::min(a, b);
          predicate.hi = std::max(a, b);
          if (predicate.hi == predicate.lo) {
            predicate.hi += 1;
          }
          break;
        }
        case AttributeType::kString: {
          if (texts[i].empty()) {
            usable = false;
            break;
          }
          const std::string& sample = texts[i][pick(texts[i].size())];
          predicate.kind = AttrPredicate::Kind::kPrefix;
          predicate.text = sample.substr(0, 1 + pick(sample.size()));
          break;
        }
        case AttributeType::kCategorical: {
          if (texts[i].empty()) {
            usable = false;
            break;
          }
          predicate.kind = AttrPredicate::Kind::kEquals;
          predicate.text = texts[i][pick(texts[i].size())];
          break;
        }
      }
      if (!usable) {
        break;
      }
      query.predicates[i] = std::move(predicate);
    }
    if (usable) {
      queries.push_back(std::move(query));
    }
  }
  return queries;
}

std::int64_t answer_exact(const MicroTable& raw, const RangeQuery& query) {
  std::int64_t matched = 0;
  for (const MicroRecord& record : raw.records) {
    if (record_matches(record, query)) {
      ++matched;
    }
  }
  return matched;
}

double answer_anonymized(const PublishedTable& table, const RangeQuery& query) {
  double estimate = 0.0;
  for (const PublishedGroup& group : table.groups) {
    double fraction = 1.0;
    for (std::size_t i = 0; i < query.predicates.size() && fraction > 0.0; ++i) {
      if (query.predicates[i].has_value()) {
        fraction *= overlap_fraction(group.generalized_qid[i], *query.predicates[i]);
      }
    }
    estimate += fraction * static_cast<double>(group.size());
  }
  return estimate;
}

double relative_error(const MicroTable& raw, const PublishedTable& anon,
                      const std::vector<RangeQuery>& queries) {
  if (queries.empty()) {
    return 0.0;
  }
  double total = 0.0;
  for (const RangeQuery& query : queries) {
    const double exact = static_cast<double>(answer_exact(raw, query));
    const double estimated = answer_anonymized(anon, query);
    total += std::abs(exact - estimated) / std::max(exact, 1.0);
  }
  return total / static_cast<double>(queries.size());
}

SizeMetrics size_metrics(const PublishedTable& table, std::int64_t k_param) {
  if (table.groups.empty()) {
    throw std::invalid_argument("size metrics over an empty table");
  }
  if (k_param < 1) {
    throw std::invalid_argument("k_param must be positive");
  }
  SizeMetrics metrics;
  std::int64_t rows = 0;
  for (const PublishedGroup& group : table.groups) {
    const std::int64_t size = group.size();
    rows += size;
    metrics.max_size = std::max(metrics.max_size, size);
    metrics.discernability += size * size;
  }
  metrics.average_size = static_cast<double>(rows) / static_cast<double>(table.groups.size());
  metrics.normalized_average =
      static_cast<double>(rows) /
      (static_cast<double>(table.groups.size()) * static_cast<double>(k_param));
  return metrics;
}

UtilityReport evaluate_utility(const MicroTable& raw, const PublishedTable& anon, int query_count,
                               std::uint64_t seed, std::int64_t k_param) {
  const std::vector<RangeQuery> queries = generate_queries(raw, query_count, seed);
  const SizeMetrics metrics = size_metrics(anon, k_param);
  UtilityReport report;
  report.average_relative_error = relative_error(raw, anon, queries);
  report.average_group_size = metrics.average_size;
  report.max_group_size = metrics.max_size;
  report.discernability = metrics.discernability;
  report.normalized_average_size = metrics.normalized_average;
  report.query_count = query_count;
  return report;
}

}  // namespace serialpriv
