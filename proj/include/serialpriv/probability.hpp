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

#ifndef SERIALPRIV_PROBABILITY_HPP_
#define SERIALPRIV_PROBABILITY_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "serialpriv/model.hpp"
#include "serialpriv/rational.hpp"

namespace serialpriv {

// Thrown by min_ratio when no finite group-size ratio can keep the linkage
// probability within bound for a further linked release. Callers fall back
// to suppression.
struct InfeasibleRatioError : std::runtime_error {
  explicit InfeasibleRatioError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the possible-world oracle when the scenario's world count
// exceeds the enumeration budget.
struct EnumerationBudgetError : std::runtime_error {
  explicit EnumerationBudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Number of distinct ways one group's sensitive multiset can be assigned to
// its members: the multinomial coefficient of the composition.
BigInt world_count_single(const GroupConfig& config);

// Assignments compose independently across releases; empty series -> 1.
BigInt world_count_series(std::span<const GroupConfig> configs);

// Probability that the tracked individual is linked to the tracked value in
// at least one of the given linked releases, in closed form:
//   1 - prod_j (1 - value_count_j / group_size_j)
// computed exactly. Empty history -> 0. Entries must satisfy
// 1 <= value_count <= group_size (unlinked releases are never stored).
Rational breach_probability(std::span<const HistoryEntry> history);

// One release as seen by the adversary: the composition of the group that
// would contain the tracked individual, and whether the individual actually
// appears. Absent releases contribute nothing to the linkage analysis.
struct OracleRelease {
  GroupConfig config;
  bool target_in_group = true;
};

struct OracleScenario {
  std::vector<OracleRelease> releases;
  std::string target_value;
};

// Independent ground truth for breach_probability: enumerates every
// assignment of each group's multiset to its members (all releases jointly,
// via mixed-radix iteration) and counts the worlds that link the tracked
// individual to the target value at least once. Exact; intended for
// verification at small scale. Throws EnumerationBudgetError if the total
// world count exceeds `budget`.
Rational breach_probability_oracle(const OracleScenario& scenario,
                                   std::uint64_t budget = 10'000'000);

// Per-release linkage probability (the localized guarantee's quantity):
// the fraction of the group carrying the value. Factors contributed by the
// other releases cancel in the possible-world ratio.
Rational localized_probability(const GroupConfig& config, const std::string& value);

// Minimum feasible group-size ratio for the next linked release, given the
// linked history so far:
//   ell * prod(n_j - c_j) / (ell * prod(n_j - c_j) - (ell - 1) * prod(n_j))
// Empty history -> ell. Throws InfeasibleRatioError when the denominator is
// not positive, i.e. the accumulated probability already reached 1/ell and
// no finite ratio can absorb another linked release.
Rational min_ratio(std::span<const HistoryEntry> history, int ell);

struct GuaranteeCheck {
  Rational probability;
  bool holds = false;
};

// Exact comparison of the accumulated breach probability against 1/ell.
GuaranteeCheck check_global_guarantee(std::span<const HistoryEntry> history, int ell);

}  // namespace serialpriv

#endif  // SERIALPRIV_PROBABILITY_HPP_
