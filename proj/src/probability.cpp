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

#include "serialpriv/probability.hpp"

#include <algorithm>
#include <map>

namespace serialpriv {

namespace {

void check_entry(const HistoryEntry& entry) {
  if (entry.value_count < 1 || entry.value_count > entry.group_size) {
    throw std::invalid_argument(
        "malformed history entry: value count " + std::to_string(entry.value_count) +
        " outside [1, " + std::to_string(entry.group_size) + "]");
  }
}

}  // namespace

BigInt world_count_single(const GroupConfig& config) {
  if (!config.valid()) {
    throw std::invalid_argument("invalid group composition");
  }
  BigInt worlds;
  mpz_fac_ui(worlds.get_mpz_t(), static_cast<unsigned long>(config.size));
  for (const auto& [value, count] : config.counts) {
    BigInt divisor;
    mpz_fac_ui(divisor.get_mpz_t(), static_cast<unsigned long>(count));
    worlds /= divisor;
  }
  return worlds;
}

BigInt world_count_series(std::span<const GroupConfig> configs) {
  BigInt total = 1;
  for (const GroupConfig& config : configs) {
    total *= world_count_single(config);
  }
  return total;
}

Rational breach_probability(std::span<const HistoryEntry> history) {
  BigInt sizes = 1;
  BigInt complements = 1;
  for (const HistoryEntry& entry : history) {
    check_entry(entry);
    sizes *= entry.group_size;
    complements *= entry.group_size - entry.value_count;
  }
  return Rational(sizes - complements, sizes);
}

Rational breach_probability_oracle(const OracleScenario& scenario, std::uint64_t budget) {
  // Releases without the tracked individual contribute a factor of one to
  // both the linked and the total world counts; only the others enumerate.
  std::vector<const GroupConfig*> groups;
  for (const OracleRelease& release : scenario.releases) {
    if (!release.config.valid()) {
      throw std::invalid_argument("invalid group composition in oracle scenario");
    }
    if (release.target_in_group) {
      groups.push_back(&release.config);
    }
  }
  if (groups.empty()) {
    return Rational(0);
  }

  BigInt total = 1;
  for (const GroupConfig* group : groups) {
    total *= world_count_single(*group);
  }
  if (total > BigInt(static_cast<unsigned long>(budget))) {
    throw EnumerationBudgetError("scenario has " + total.get_str() +
                                 " possible worlds, budget is " + std::to_string(budget));
  }

  // Per release, enumerate the distinct assignments of the multiset to the
  // group's slots and record whether the tracked individual's slot (slot 0,
  // by symmetry) receives the target value.
  std::vector<std::vector<char>> slot_linked;
  for (const GroupConfig* group : groups) {
    std::vector<std::string> slots;
    for (const auto& [value, count] : group->counts) {
      slots.insert(slots.end(), static_cast<std::size_t>(count), value);
    }
    std::sort(slots.begin(), slots.end());
    std::vector<char> linked;
    do {
      linked.push_back(slots.front() == scenario.target_value ? 1 : 0);
    } while (std::next_permutation(slots.begin(), slots.end()));
    slot_linked.push_back(std::move(linked));
  }

  // Mixed-radix odometer over the per-release assignment indices.
  std::vector<std::size_t> index(slot_linked.size(), 0);
  std::uint64_t linked_worlds = 0;
  std::uint64_t total_worlds = 0;
  for (;;) {
    bool linked = false;
    for (std::size_t j = 0; j < index.size(); ++j) {
      if (slot_linked[j][index[j]]) {
        linked = true;
        break;
      }
    }
    ++total_worlds;
    if (linked) {
      ++linked_worlds;
    }
    std::size_t pos = 0;
    while (pos < index.size()) {
      if (++index[pos] < slot_linked[pos].size()) {
        break;
      }
      index[pos] = 0;
      ++pos;
    }
    if (pos == index.size()) {
      break;
    }
  }
  return Rational(BigInt(static_cast<unsigned long>(linked_worlds)),
                  BigInt(static_cast<unsigned long>(total_worlds)));
}

Rational localized_probability(const GroupConfig& config, const std::string& value) {
  if (!config.valid()) {
    throw std::invalid_argument("invalid group composition");
  }
  return Rational(config.count_of(value), config.size);
}

Rational min_ratio(std::span<const HistoryEntry> history, int ell) {
  if (ell < 2) {
    throw std::invalid_argument("ell must be at least 2");
  }
  if (history.empty()) {
    return Rational(ell);
  }
  BigInt sizes = 1;
  BigInt complements = 1;
  for (const HistoryEntry& entry : history) {
    check_entry(entry);
    sizes *= entry.group_size;
    complements *= entry.group_size - entry.value_count;
  }
  const BigInt numerator = BigInt(ell) * complements;
  const BigInt denominator = numerator - BigInt(ell - 1) * sizes;
  if (denominator <= 0) {
    throw InfeasibleRatioError(
        "no finite group-size ratio can keep the linkage probability within 1/" +
        std::to_string(ell) + " after this history");
  }
  return Rational(numerator, denominator);
}

GuaranteeCheck check_global_guarantee(std::span<const HistoryEntry> history, int ell) {
  Rational p = breach_probability(history);
  return {p, p <= Rational(1, ell)};
}

}  // namespace serialpriv
