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

#ifndef SERIALPRIV_SERIES_GEN_HPP_
#define SERIALPRIV_SERIES_GEN_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "serialpriv/model.hpp"

namespace serialpriv {

// How one quasi-identifier attribute is synthesized.
struct QidGenSpec {
  std::string name;
  AttributeType type = AttributeType::kCategorical;
  std::vector<std::string> values;  // categorical choices
  std::size_t digits = 5;           // string: fixed-width digit strings
  std::int64_t lo = 0;              // numeric range, inclusive
  std::int64_t hi = 99;
};

// Recipe for a synthetic serial micro-data corpus: equally sized base
// partitions, a carried-forward overlap between consecutive releases, a
// resampled fraction of sensitive values, and a transient set formed by the
// least frequent tail of the value domain.
struct SeriesSpec {
  std::int64_t total_records = 105'420;
  int num_releases = 20;
  double carry_fraction = 0.20;
  double resample_fraction = 0.20;
  double transient_quantile = 0.10;
  int domain_size = 500;                    // sensitive values v001..v<D>
  double zipf_exponent = 1.0;               // frequency skew
  std::vector<double> explicit_frequencies; // optional override of the Zipf weights
  std::vector<QidGenSpec> qid;              // empty -> sex/zipcode/age defaults
  std::int64_t registration_pool_size = 40'478;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

struct GeneratedSeries {
  std::vector<MicroTable> releases;
  RegistrationList registration;
  std::set<std::string> transient_values;
};

// Deterministic given the seed. Individuals are drawn from the registration
// pool, every release keeps at most one tuple per individual, and roughly
// carry_fraction of each release's tuples reappear from the previous one.
GeneratedSeries generate_series(const SeriesSpec& spec);

}  // namespace serialpriv

#endif  // SERIALPRIV_SERIES_GEN_HPP_
