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

#ifndef SERIALPRIV_ANONYMIZER_HPP_
#define SERIALPRIV_ANONYMIZER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "serialpriv/model.hpp"
#include "serialpriv/rational.hpp"
#include "serialpriv/strategy.hpp"

namespace serialpriv {

// Requirement lookup for (individual, transient value) pairs. A group
// satisfies its constraints iff for every real member o and every transient
// value s it contains, size(G) / count_G(s) >= ratio(o, s). An absent ratio
// means no finite ratio works (the pair's history is saturated); such a pair
// must never share a group.
class GroupingConstraints {
 public:
  GroupingConstraints(const LinkageHistory& history, const PrivacyParams& params);

  // Cached plan_ratio over the pair's linked history.
  const std::optional<Rational>& ratio(const std::string& individual_id,
                                       const std::string& value) const;

 private:
  const LinkageHistory& history_;
  PrivacyParams params_;
  std::optional<Rational> fixed_ratio_;  // constant strategy: one bisection for the run
  mutable std::map<std::pair<std::string, std::string>, std::optional<Rational>> cache_;
};

// One grouping decision: indices into the release's record vector plus any
// virtual members drafted from the registration list.
struct GroupDraft {
  std::vector<std::size_t> members;        // record indices
  std::vector<std::string> virtual_ids;    // registration ids, draft order
  std::vector<std::string> virtual_values; // synthesized sensitive values
};

struct GroupingResult {
  std::vector<GroupDraft> groups;
  std::vector<std::size_t> suppressed;  // record indices, ascending
};

// Deterministic bottom-up grouping. Every record starts as a singleton;
// while a group violates a constraint it merges with the nearest group by
// QID distance (preferring merges that shrink its size deficit), then
// dilutes with the nearest registration individuals, and suppresses its
// members once neither can satisfy it. Virtual members receive synthesized
// sensitive values drawn from the release's non-transient empirical
// distribution, so they never raise a constrained count.
GroupingResult grow_groups(const MicroTable& table, const GroupingConstraints& constraints,
                           const std::set<std::string>& transient_values,
                           const RegistrationList& registration, std::uint64_t seed);

// Per-attribute generalization over a set of rows: numeric values widen to
// their closed range, strings keep their longest common prefix (wildcarded
// to the shared length), categorical values stay put only when unanimous.
std::vector<GeneralizedValue> generalize_qids(
    const std::vector<const std::vector<QidValue>*>& rows, const TableSchema& schema);

struct AnonymizationReport {
  std::int32_t release_index = 0;
  std::vector<std::int64_t> group_sizes;
  std::vector<std::string> suppressed_ids;
  std::size_t virtual_member_count = 0;
  double duration_ms = 0.0;
};

struct AnonymizationOutcome {
  AnonymizedTable table;
  LinkageHistory history;
  AnonymizationReport report;
};

// Publishes one release: validates the raw table, grows groups meeting every
// member's ratio requirement, generalizes QIDs, folds the release into the
// statistics, and reports what happened. Individuals whose requirements
// cannot be met are suppressed, never silently published. Deterministic
// given the seed.
AnonymizationOutcome anonymize_release(const MicroTable& raw, const LinkageHistory& history,
                                       const PrivacyParams& params,
                                       const RegistrationList& registration,
                                       const std::set<std::string>& transient_values,
                                       std::uint64_t seed);

struct AuditViolation {
  std::string individual_id;
  std::string value;
  Rational probability;
};

// Post-hoc verification of the global guarantee: recomputes the breach
// probability for every tracked (individual, value) pair and reports any
// exceeding 1/ell. Empty result means the guarantee holds everywhere.
std::vector<AuditViolation> audit_history(const LinkageHistory& history, int ell);

// Same check, scoped to the statistics as they stand after one release.
std::vector<AuditViolation> audit_release(const AnonymizedTable& table,
                                          const LinkageHistory& history_after, int ell);

}  // namespace serialpriv

#endif  // SERIALPRIV_ANONYMIZER_HPP_
