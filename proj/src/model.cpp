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

#include "serialpriv/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace serialpriv {

namespace {

bool value_matches_type(const QidValue& value, AttributeType type) {
  if (type == AttributeType::kNumeric) {
    return std::holds_alternative<std::int64_t>(value);
  }
  return std::holds_alternative<std::string>(value);
}

}  // namespace

std::vector<Violation> validate_table(const MicroTable& table) {
  std::vector<Violation> violations;
  std::set<std::string> seen;
  std::set<std::string> reported_duplicates;
  for (const MicroRecord& record : table.records) {
    if (record.individual_id.empty()) {
      violations.push_back({Violation::Kind::kEmptyId, "", "record with empty individual id"});
    } else if (!seen.insert(record.individual_id).second) {
      if (reported_duplicates.insert(record.individual_id).second) {
        violations.push_back({Violation::Kind::kDuplicateId, record.individual_id,
                              "individual owns more than one tuple in this release"});
      }
    }
    if (record.qid.size() != table.schema.qid.size()) {
      violations.push_back({Violation::Kind::kQidArity, record.individual_id,
                            "qid arity " + std::to_string(record.qid.size()) +
                                " does not match schema arity " +
                                std::to_string(table.schema.qid.size())});
      continue;
    }
    for (std::size_t i = 0; i < record.qid.size(); ++i) {
      if (!value_matches_type(record.qid[i], table.schema.qid[i].type)) {
        violations.push_back({Violation::Kind::kQidType, record.individual_id,
                              "attribute '" + table.schema.qid[i].name +
                                  "' holds a value of the wrong type"});
      }
    }
  }
  return violations;
}

std::string render_generalized(const GeneralizedValue& value) {
  if (const auto* range = std::get_if<NumericRange>(&value)) {
    if (range->lo == range->hi) {
      return std::to_string(range->lo);
    }
    return "[" + std::to_string(range->lo) + "," + std::to_string(range->hi) + "]";
  }
  if (const auto* pattern = std::get_if<StringPattern>(&value)) {
    if (pattern->any) {
      return "*";
    }
    std::string out = pattern->prefix;
    out.append(pattern->length - pattern->prefix.size(), '*');
    return out;
  }
  const auto& set = std::get<ValueSet>(value);
  std::string out;
  for (std::size_t i = 0; i < set.values.size(); ++i) {
    if (i > 0) {
      out += '/';
    }
    out += set.values[i];
  }
  return out;
}

bool GroupConfig::valid() const {
  if (size < 1) {
    return false;
  }
  std::int64_t total = 0;
  for (const auto& [value, count] : counts) {
    if (count < 0) {
      return false;
    }
    total += count;
  }
  return total == size;
}

LinkageHistory::LinkageHistory(Map entries) : entries_(std::move(entries)) {
  for (const auto& [key, list] : entries_) {
    for (const HistoryEntry& entry : list) {
      last_release_ = std::max(last_release_, entry.release_index);
    }
  }
}

const std::vector<HistoryEntry>& LinkageHistory::entries(const std::string& individual_id,
                                                         const std::string& value) const {
  static const std::vector<HistoryEntry> kEmpty;
  auto it = entries_.find(Key(individual_id, value));
  return it == entries_.end() ? kEmpty : it->second;
}

LinkageHistory record_release(const LinkageHistory& history, const AnonymizedTable& table,
                              const std::set<std::string>& transient_values) {
  if (table.release_index <= history.last_release_) {
    throw std::invalid_argument("release index " + std::to_string(table.release_index) +
                                " is not newer than recorded index " +
                                std::to_string(history.last_release_));
  }
  LinkageHistory grown = history;
  grown.last_release_ = table.release_index;
  for (const AnonymizedGroup& group : table.groups) {
    const std::int64_t n = group.size();
    for (const auto& [value, count] : group.sensitive_multiset) {
      if (count < 1 || !transient_values.contains(value)) {
        continue;
      }
      for (const std::string& member : group.member_ids) {
        grown.entries_[{member, value}].push_back({table.release_index, n, count});
      }
    }
  }
  return grown;
}

void PrivacyParams::validate() const {
  if (ell < 2) {
    throw std::invalid_argument("ell must be at least 2");
  }
  if (strategy == Strategy::kConstantRatio && k_prime < 1) {
    throw std::invalid_argument("k_prime must be positive");
  }
  if (strategy == Strategy::kGeometric && !(alpha > Rational(1))) {
    throw std::invalid_argument("alpha must exceed 1");
  }
}

}  // namespace serialpriv
