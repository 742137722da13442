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

#ifndef SERIALPRIV_MODEL_HPP_
#define SERIALPRIV_MODEL_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "serialpriv/rational.hpp"

namespace serialpriv {

enum class AttributeType {
  kNumeric,      // integer values, generalized to closed ranges
  kString,       // fixed-alphabet strings (e.g. zipcodes), generalized to prefixes
  kCategorical,  // small closed domains (e.g. sex), generalized to value sets
};

struct AttributeSpec {
  std::string name;
  AttributeType type = AttributeType::kCategorical;
};

struct TableSchema {
  std::vector<AttributeSpec> qid;
  std::string sensitive_name;
};

using QidValue = std::variant<std::int64_t, std::string>;

// One raw tuple: who, their quasi-identifier values, and one sensitive value.
struct MicroRecord {
  std::string individual_id;
  std::vector<QidValue> qid;
  std::string sensitive;
};

// One raw release. At most one tuple per individual.
struct MicroTable {
  std::int32_t release_index = 0;
  TableSchema schema;
  std::vector<MicroRecord> records;
};

struct Violation {
  enum class Kind { kEmptyId, kDuplicateId, kQidArity, kQidType };
  Kind kind;
  std::string individual_id;
  std::string detail;
};

// Returns one violation per invariant breach; empty means the table is valid.
// Violations are data, not failures.
std::vector<Violation> validate_table(const MicroTable& table);

// Generalized quasi-identifier values, one representation per attribute type.
struct NumericRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};
struct StringPattern {
  std::string prefix;       // shared prefix; remaining positions are wildcards
  std::size_t length = 0;   // original value length (all members share it)
  bool any = false;         // mixed lengths: matches everything
};
struct ValueSet {
  std::vector<std::string> values;  // distinct, first-appearance order
};
using GeneralizedValue = std::variant<NumericRange, StringPattern, ValueSet>;

std::string render_generalized(const GeneralizedValue& value);

// A published group: indistinguishable rows sharing generalized QID values.
// Virtual members come from the registration list and exist only to dilute;
// every member, real or virtual, carries exactly one sensitive value.
struct AnonymizedGroup {
  std::vector<std::string> member_ids;      // real individuals, sorted
  std::vector<std::string> virtual_ids;     // registration individuals, sorted
  std::vector<std::string> virtual_values;  // synthesized, aligned with virtual_ids
  std::vector<GeneralizedValue> generalized_qid;
  std::map<std::string, std::int64_t> sensitive_multiset;  // real + virtual values

  std::int64_t size() const {
    return static_cast<std::int64_t>(member_ids.size() + virtual_ids.size());
  }
  std::int64_t count_of(const std::string& value) const {
    auto it = sensitive_multiset.find(value);
    return it == sensitive_multiset.end() ? 0 : it->second;
  }
};

struct AnonymizedTable {
  std::int32_t release_index = 0;
  TableSchema schema;
  std::vector<AnonymizedGroup> groups;
};

// The sensitive-value composition of one group, the input to world counting.
struct GroupConfig {
  std::int64_t size = 0;
  std::map<std::string, std::int64_t> counts;

  std::int64_t count_of(const std::string& value) const {
    auto it = counts.find(value);
    return it == counts.end() ? 0 : it->second;
  }
  bool valid() const;
};

// One linked release in an individual's statistics: the size of the group
// that contained them and how many of its rows carried the tracked value.
struct HistoryEntry {
  std::int32_t release_index = 0;
  std::int64_t group_size = 0;
  std::int64_t value_count = 0;
};

// The statistics file: for each (individual, sensitive value) pair, the
// ordered linked releases. Releases whose group does not contain the value
// are never stored; they cannot change the linkage probability.
class LinkageHistory {
 public:
  using Key = std::pair<std::string, std::string>;
  using Map = std::map<Key, std::vector<HistoryEntry>>;

  LinkageHistory() = default;
  explicit LinkageHistory(Map entries);

  // Entries for (individual, value); empty if never linked.
  const std::vector<HistoryEntry>& entries(const std::string& individual_id,
                                           const std::string& value) const;
  const Map& all() const { return entries_; }
  std::int32_t last_release_index() const { return last_release_; }
  bool empty() const { return entries_.empty(); }

  friend LinkageHistory record_release(const LinkageHistory& history,
                                       const AnonymizedTable& table,
                                       const std::set<std::string>& transient_values);

 private:
  Map entries_;
  std::int32_t last_release_ = 0;
};

// Appends this release's statistics and returns the grown history. For every
// group, every real member gains one entry per transient value the group
// contains. Virtual members dilute the counts but accrue no history of their
// own, and suppressed individuals (absent from all groups) gain nothing.
// Throws std::invalid_argument if the release index is not strictly newer
// than everything already recorded.
LinkageHistory record_release(const LinkageHistory& history,
                              const AnonymizedTable& table,
                              const std::set<std::string>& transient_values);

enum class Strategy { kConstantRatio, kGeometric };

struct PrivacyParams {
  int ell = 2;                       // breach probability bound 1/ell
  Strategy strategy = Strategy::kConstantRatio;
  int k_prime = 1;                   // constant-ratio horizon
  Rational alpha = Rational(2);      // geometric headroom factor, > 1
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct Registrant {
  std::string id;
  std::vector<QidValue> qid;
};

// External roster of individuals that may appear as virtual group members.
struct RegistrationList {
  std::vector<Registrant> individuals;  // ids unique
};

}  // namespace serialpriv

#endif  // SERIALPRIV_MODEL_HPP_
