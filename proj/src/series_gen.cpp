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

#include "serialpriv/series_gen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace serialpriv {

namespace {

std::string padded(const std::string& prefix, std::int64_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  std::string out = prefix;
  if (digits.size() < width) {
    out.append(width - digits.size(), '0');
  }
  out += digits;
  return out;
}

std::vector<QidGenSpec> default_qid_spec() {
  QidGenSpec sex{.name = "sex", .type = AttributeType::kCategorical, .values = {"M", "F"}};
  QidGenSpec zip{.name = "zipcode", .type = AttributeType::kString, .digits = 5};
  QidGenSpec age{.name = "age", .type = AttributeType::kNumeric, .lo = 0, .hi = 99};
  return {sex, zip, age};
}

// Draw k distinct indices out of [0, n) with a partial Fisher-Yates pass.
std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k, std::mt19937_64& rng,
                                         std::vector<std::size_t>& scratch) {
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    scratch[i] = i;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(scratch[i], scratch[j]);
  }
  return {scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k)};
}

// Random record selection of floor(frac * n) indices, proportional per
// sensitive value (largest remainder), uniform within a value. Keeps the
// selected slice's value profile on top of the table's own, so repeated
// carry and resample passes do not drift the corpus frequencies.
std::vector<std::size_t> stratified_sample(const std::vector<MicroRecord>& records, double frac,
                                           std::mt19937_64& rng,
                                           std::vector<std::size_t>& scratch) {
  std::map<std::string, std::vector<std::size_t>> by_value;
  for (std::size_t i = 0; i < records.size(); ++i) {
    by_value[records[i].sensitive].push_back(i);
  }
  const auto target =
      static_cast<std::int64_t>(std::floor(frac * static_cast<double>(records.size())));
  std::int64_t assigned = 0;
  std::vector<std::pair<double, const std::vector<std::size_t>*>> remainders;
  std::map<const std::vector<std::size_t>*, std::int64_t> quota;
  for (const auto& [value, bucket] : by_value) {
    const double share = frac * static_cast<double>(bucket.size());
    quota[&bucket] = static_cast<std::int64_t>(std::floor(share));
    assigned += quota[&bucket];
    remainders.emplace_back(share - std::floor(share), &bucket);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second->front() < b.second->front();
  });
  for (std::size_t i = 0; assigned < target && i < remainders.size(); ++i) {
    if (quota[remainders[i].second] <
        static_cast<std::int64_t>(remainders[i].second->size())) {
      quota[remainders[i].second] += 1;
      ++assigned;
    }
  }
  std::vector<std::size_t> picked;
  picked.reserve(static_cast<std::size_t>(target));
  for (const auto& [value, bucket] : by_value) {
    const std::size_t k = static_cast<std::size_t>(quota[&bucket]);
    for (std::size_t i : sample_distinct(bucket.size(), k, rng, scratch)) {
      picked.push_back(bucket[i]);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

void SeriesSpec::validate() const {
  if (total_records < 1 || num_releases < 1) {
    throw std::invalid_argument("series needs at least one record and one release");
  }
  if (carry_fraction < 0.0 || carry_fraction >= 1.0 || resample_fraction < 0.0 ||
      resample_fraction >= 1.0) {
    throw std::invalid_argument("carry and resample fractions must lie in [0, 1)");
  }
  if (transient_quantile <= 0.0 || transient_quantile >= 1.0) {
    throw std::invalid_argument("transient quantile must lie in (0, 1)");
  }
  if (domain_size < 2) {
    throw std::invalid_argument("sensitive domain needs at least two values");
  }
  if (!explicit_frequencies.empty() &&
      explicit_frequencies.size() != static_cast<std::size_t>(domain_size)) {
    throw std::invalid_argument("explicit frequencies must cover the whole domain");
  }
  if (zipf_exponent <= 0.0 && explicit_frequencies.empty()) {
    throw std::invalid_argument("zipf exponent must be positive");
  }
  const std::int64_t base = total_records / num_releases;
  if (base < 1) {
    throw std::invalid_argument("more releases than records");
  }
  if (base + 1 > registration_pool_size) {
    throw std::invalid_argument("registration pool smaller than one release");
  }
}

GeneratedSeries generate_series(const SeriesSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);

  const std::vector<QidGenSpec> qid_spec = spec.qid.empty() ? default_qid_spec() : spec.qid;
  TableSchema schema;
  for (const QidGenSpec& attr : qid_spec) {
    schema.qid.push_back({attr.name, attr.type});
  }
  schema.sensitive_name = "disease";

  // Registration pool; an individual's quasi-identifiers are fixed for life.
  GeneratedSeries series;
  const std::size_t id_width = std::to_string(spec.registration_pool_size).size();
  series.registration.individuals.reserve(static_cast<std::size_t>(spec.registration_pool_size));
  for (std::int64_t i = 0; i < spec.registration_pool_size; ++i) {
    Registrant registrant;
    registrant.id = padded("p", i + 1, id_width);
    for (const QidGenSpec& attr : qid_spec) {
      switch (attr.type) {
        case AttributeType::kCategorical:
          if (attr.values.empty()) {
            throw std::invalid_argument("categorical attribute without values");
          }
          registrant.qid.emplace_back(attr.values[rng() % attr.values.size()]);
          break;
        case AttributeType::kString: {
          std::string s;
          for (std::size_t d = 0; d < attr.digits; ++d) {
            s += static_cast<char>('0' + rng() % 10);
          }
          registrant.qid.emplace_back(std::move(s));
          break;
        }
        case AttributeType::kNumeric: {
          const std::uint64_t span = static_cast<std::uint64_t>(attr.hi - attr.lo) + 1;
          registrant.qid.emplace_back(attr.lo + static_cast<std::int64_t>(rng() % span));
          break;
        }
      }
    }
    series.registration.individuals.push_back(std::move(registrant));
  }

  // Sensitive domain with deterministic per-value counts: weights rounded by
  // largest remainder so the base corpus matches the target distribution up
  // to one tuple per value.
  const std::size_t value_width = std::to_string(spec.domain_size).size();
  std::vector<std::string> value_names;
  for (int i = 0; i < spec.domain_size; ++i) {
    value_names.push_back(padded("v", i + 1, value_width));
  }
  std::vector<double> weights(static_cast<std::size_t>(spec.domain_size));
  if (!spec.explicit_frequencies.empty()) {
    weights = spec.explicit_frequencies;
  } else {
    for (int i = 0; i < spec.domain_size; ++i) {
      weights[static_cast<std::size_t>(i)] = 1.0 / std::pow(i + 1, spec.zipf_exponent);
    }
  }
  double weight_sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) {
      throw std::invalid_argument("negative frequency weight");
    }
    weight_sum += w;
  }
  if (weight_sum <= 0.0) {
    throw std::invalid_argument("frequency weights sum to zero");
  }
  std::vector<std::int64_t> counts(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double share = static_cast<double>(spec.total_records) * weights[i] / weight_sum;
    counts[i] = static_cast<std::int64_t>(std::floor(share));
    assigned += counts[i];
    remainders.emplace_back(share - std::floor(share), i);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::int64_t leftover = spec.total_records - assigned; leftover > 0; --leftover) {
    counts[remainders[static_cast<std::size_t>(spec.total_records - assigned - leftover)].second] += 1;
  }

  // The base corpus as one flat tuple list, then dealt round-robin into the
  // partitions: per-partition value composition stays within one tuple of
  // proportional, which keeps the transient load steady across releases.
  std::vector<std::int32_t> corpus;
  corpus.reserve(static_cast<std::size_t>(spec.total_records));
  for (std::size_t v = 0; v < counts.size(); ++v) {
    corpus.insert(corpus.end(), static_cast<std::size_t>(counts[v]), static_cast<std::int32_t>(v));
  }
  const int releases = spec.num_releases;
  std::vector<std::vector<std::int32_t>> partition_values(static_cast<std::size_t>(releases));
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    partition_values[t % static_cast<std::size_t>(releases)].push_back(corpus[t]);
  }

  // Transient set: the least frequent tail of the domain.
  const int transient_count =
      static_cast<int>(std::floor(spec.transient_quantile * spec.domain_size));
  std::vector<std::size_t> by_frequency(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    by_frequency[i] = i;
  }
  std::sort(by_frequency.begin(), by_frequency.end(), [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b]) return counts[a] < counts[b];
    return a > b;
  });
  for (int i = 0; i < transient_count; ++i) {
    series.transient_values.insert(value_names[by_frequency[static_cast<std::size_t>(i)]]);
  }

  // Replacement values for the resample step come from a shuffled copy of
  // the base corpus, so the redrawn values follow the original data exactly.
  std::vector<std::int32_t> deck = corpus;
  for (std::size_t i = deck.size(); i > 1; --i) {
    std::swap(deck[i - 1], deck[rng() % i]);
  }
  std::size_t deck_position = 0;

  // Assemble the releases.
  std::vector<std::size_t> scratch;
  std::vector<MicroRecord> previous;
  for (int r = 0; r < releases; ++r) {
    std::vector<std::int32_t>& values = partition_values[static_cast<std::size_t>(r)];
    // Shuffle the partition's value multiset, then zip with fresh individuals.
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[rng() % i]);
    }
    const std::vector<std::size_t> chosen = sample_distinct(
        series.registration.individuals.size(), values.size(), rng, scratch);

    std::map<std::string, MicroRecord> by_id;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const Registrant& registrant = series.registration.individuals[chosen[i]];
      MicroRecord record;
      record.individual_id = registrant.id;
      record.qid = registrant.qid;
      record.sensitive = value_names[static_cast<std::size_t>(values[i])];
      by_id.emplace(record.individual_id, std::move(record));
    }

    if (r > 0 && spec.carry_fraction > 0.0) {
      for (std::size_t index : stratified_sample(previous, spec.carry_fraction, rng, scratch)) {
        const MicroRecord& old = previous[index];
        by_id.emplace(old.individual_id, old);  // fresh tuple wins on conflict
      }
    }

    MicroTable table;
    table.release_index = r + 1;
    table.schema = schema;
    table.records.reserve(by_id.size());
    for (auto& [id, record] : by_id) {
      table.records.push_back(std::move(record));
    }

    if (r > 0 && spec.resample_fraction > 0.0) {
      // Replace a slice of sensitive values with values of tuples drawn
      // from the base corpus.
      for (std::size_t index :
           stratified_sample(table.records, spec.resample_fraction, rng, scratch)) {
        table.records[index].sensitive =
            value_names[static_cast<std::size_t>(deck[deck_position])];
        deck_position = (deck_position + 1) % deck.size();
      }
    }

    previous = table.records;
    series.releases.push_back(std::move(table));
  }
  return series;
}

}  // namespace serialpriv
