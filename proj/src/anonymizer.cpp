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

#include "serialpriv/anonymizer.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <limits>
#include <random>
#include <stdexcept>

#include "serialpriv/probability.hpp"

namespace serialpriv {

GroupingConstraints::GroupingConstraints(const LinkageHistory& history,
                                         const PrivacyParams& params)
    : history_(history), params_(params) {
  params_.validate();
  if (params_.strategy == Strategy::kConstantRatio) {
    fixed_ratio_ = constant_ratio(params_.ell, params_.k_prime);
  }
}

const std::optional<Rational>& GroupingConstraints::ratio(const std::string& individual_id,
                                                          const std::string& value) const {
  auto key = std::make_pair(individual_id, value);
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    return it->second;
  }
  std::optional<Rational> ratio;
  if (fixed_ratio_.has_value()) {
    // The fixed ratio never depends on the history's contents, only on
    // whether the horizon still has room.
    if (static_cast<int>(history_.entries(individual_id, value).size()) < params_.k_prime) {
      ratio = *fixed_ratio_;
    }
  } else if (auto requirement = try_plan_ratio(history_.entries(individual_id, value), params_)) {
    ratio = requirement->target_ratio;
  }
  return cache_.emplace(std::move(key), std::move(ratio)).first->second;
}

namespace {

// ---------------------------------------------------------------------------
// QID distance. Per attribute, normalized to [0, 1]:
//   numeric      |midpoint difference| / observed span
//   string       1 - shared-prefix fraction
//   categorical  Jaccard distance between value sets
// summed over attributes. Groups are compared through their running
// generalization, which for singletons reduces to the record itself.
// ---------------------------------------------------------------------------

struct AttrDomain {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

std::vector<AttrDomain> observe_domains(const MicroTable& table,
                                        const RegistrationList& registration) {
  std::vector<AttrDomain> domains(table.schema.qid.size());
  bool first = true;
  auto observe = [&](const std::vector<QidValue>& qid) {
    if (qid.size() != domains.size()) {
      return;
    }
    for (std::size_t i = 0; i < qid.size(); ++i) {
      if (const auto* num = std::get_if<std::int64_t>(&qid[i])) {
        if (first || *num < domains[i].lo) domains[i].lo = *num;
        if (first || *num > domains[i].hi) domains[i].hi = *num;
      }
    }
    first = false;
  };
  for (const MicroRecord& record : table.records) {
    observe(record.qid);
  }
  for (const Registrant& registrant : registration.individuals) {
    observe(registrant.qid);
  }
  return domains;
}

std::size_t common_prefix_len(const std::string& a, const std::string& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) {
    ++i;
  }
  return i;
}

struct ProfileSlot {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::string prefix;
  std::size_t length = 0;
  bool any_length = false;
  std::vector<std::string> values;  // categorical, first-appearance order
};

struct Profile {
  std::vector<ProfileSlot> slots;
};

void absorb_record(Profile& profile, const std::vector<QidValue>& qid,
                   const TableSchema& schema) {
  const bool fresh = profile.slots.empty();
  if (fresh) {
    profile.slots.resize(schema.qid.size());
  }
  for (std::size_t i = 0; i < schema.qid.size(); ++i) {
    ProfileSlot& slot = profile.slots[i];
    switch (schema.qid[i].type) {
      case AttributeType::kNumeric: {
        const std::int64_t v = std::get<std::int64_t>(qid[i]);
        if (fresh) {
          slot.lo = slot.hi = v;
        } else {
          slot.lo = std::min(slot.lo, v);
          slot.hi = std::max(slot.hi, v);
        }
        break;
      }
      case AttributeType::kString: {
        const std::string& v = std::get<std::string>(qid[i]);
        if (fresh) {
          slot.prefix = v;
          slot.length = v.size();
        } else if (!slot.any_length) {
          if (v.size() != slot.length) {
            slot.any_length = true;
            slot.prefix.clear();
          } else {
            slot.prefix.resize(common_prefix_len(slot.prefix, v));
          }
        }
        break;
      }
      case AttributeType::kCategorical: {
        const std::string& v = std::get<std::string>(qid[i]);
        if (std::find(slot.values.begin(), slot.values.end(), v) == slot.values.end()) {
          slot.values.push_back(v);
        }
        break;
      }
    }
  }
}

void merge_profiles(Profile& into, const Profile& other, const TableSchema& schema) {
  for (std::size_t i = 0; i < schema.qid.size(); ++i) {
    ProfileSlot& a = into.slots[i];
    const ProfileSlot& b = other.slots[i];
    switch (schema.qid[i].type) {
      case AttributeType::kNumeric:
        a.lo = std::min(a.lo, b.lo);
        a.hi = std::max(a.hi, b.hi);
        break;
      case AttributeType::kString:
        if (a.any_length || b.any_length || a.length != b.length) {
          a.any_length = true;
          a.prefix.clear();
        } else {
          a.prefix.resize(common_prefix_len(a.prefix, b.prefix));
        }
        break;
      case AttributeType::kCategorical:
        for (const std::string& v : b.values) {
          if (std::find(a.values.begin(), a.values.end(), v) == a.values.end()) {
            a.values.push_back(v);
          }
        }
        break;
    }
  }
}

double profile_distance(const Profile& a, const Profile& b, const TableSchema& schema,
                        const std::vector<AttrDomain>& domains) {
  double total = 0.0;
  for (std::size_t i = 0; i < schema.qid.size(); ++i) {
    const ProfileSlot& x = a.slots[i];
    const ProfileSlot& y = b.slots[i];
    switch (schema.qid[i].type) {
      case AttributeType::kNumeric: {
        const double span = static_cast<double>(domains[i].hi - domains[i].lo);
        if (span > 0.0) {
          const double mx = 0.5 * (static_cast<double>(x.lo) + static_cast<double>(x.hi));
          const double my = 0.5 * (static_cast<double>(y.lo) + static_cast<double>(y.hi));
          total += std::abs(mx - my) / span;
        }
        break;
      }
      case AttributeType::kString: {
        if (x.any_length || y.any_length) {
          total += 1.0;
        } else {
          const std::size_t len = std::max<std::size_t>(std::max(x.length, y.length), 1);
          total += 1.0 - static_cast<double>(common_prefix_len(x.prefix, y.prefix)) /
                             static_cast<double>(len);
        }
        break;
      }
      case AttributeType::kCategorical: {
        std::size_t shared = 0;
        for (const std::string& v : x.values) {
          if (std::find(y.values.begin(), y.values.end(), v) != y.values.end()) {
            ++shared;
          }
        }
        const std::size_t united = x.values.size() + y.values.size() - shared;
        if (united > 0) {
          total += 1.0 - static_cast<double>(shared) / static_cast<double>(united);
        }
        break;
      }
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Working state for the bottom-up grouping loop.
// ---------------------------------------------------------------------------

struct WorkGroup {
  bool alive = true;
  std::size_t founder_rank = 0;  // id-sorted rank of the founding record
  std::vector<std::size_t> members;
  std::vector<std::size_t> virtual_regs;  // indices into the registration list
  std::vector<std::string> virtual_values;
  Profile profile;
  std::map<std::string, std::int64_t> transient_counts;
  // Per transient value: the tightest requirement any current member places
  // on it, or nullopt if some member's history makes the pairing impossible.
  // Filled lazily, maintained incrementally as members join.
  mutable std::map<std::string, std::optional<Rational>> ratio_cache;

  std::int64_t size() const {
    return static_cast<std::int64_t>(members.size() + virtual_regs.size());
  }

  bool is_filler() const {
    return members.size() == 1 && virtual_regs.empty() && transient_counts.empty();
  }
};

class Grower {
 public:
  Grower(const MicroTable& table, const GroupingConstraints& constraints,
         const std::set<std::string>& transient_values, const RegistrationList& registration,
         std::uint64_t seed)
      : table_(table),
        constraints_(constraints),
        transient_values_(transient_values),
        registration_(registration),
        domains_(observe_domains(table, registration)),
        rng_(seed) {}

  GroupingResult run();

 private:
  const std::optional<Rational>& group_ratio(const WorkGroup& g, const std::string& value) const;
  std::int64_t required_size(const WorkGroup& g) const;
  std::int64_t deficit(const WorkGroup& g) const {
    return std::max<std::int64_t>(0, required_size(g) - g.size());
  }

  struct MergePlan {
    std::int64_t deficit = 0;
    std::int64_t required = 0;
  };
  // Outcome of merging, or nullopt if the merge would put an individual
  // together with a value their history can no longer tolerate.
  std::optional<MergePlan> evaluate_merge(const WorkGroup& g, const WorkGroup& h) const;
  void apply_merge(WorkGroup& g, WorkGroup& h);
  bool absorb_filler(WorkGroup& g, WorkGroup& filler);
  bool dilute_with_virtuals(WorkGroup& g);
  std::string synthesize_value();

  const MicroTable& table_;
  const GroupingConstraints& constraints_;
  const std::set<std::string>& transient_values_;
  const RegistrationList& registration_;
  std::vector<AttrDomain> domains_;
  std::mt19937_64 rng_;

  std::vector<WorkGroup> groups_;
  std::vector<std::size_t> suppressed_;
  std::set<std::size_t> used_registrants_;
  std::set<std::string> release_ids_;
  // Release-local pool for synthesized sensitive values: cumulative counts of
  // the non-transient values observed in this release.
  std::vector<std::pair<std::string, std::int64_t>> synth_pool_;
  std::int64_t synth_total_ = 0;
};

const std::optional<Rational>& Grower::group_ratio(const WorkGroup& g,
                                                   const std::string& value) const {
  auto it = g.ratio_cache.find(value);
  if (it != g.ratio_cache.end()) {
    return it->second;
  }
  std::optional<Rational> ratio;
  for (std::size_t m : g.members) {
    const auto& r = constraints_.ratio(table_.records[m].individual_id, value);
    if (!r.has_value()) {
      ratio.reset();
      break;
    }
    if (!ratio || *r > *ratio) {
      ratio = *r;
    }
  }
  return g.ratio_cache.emplace(value, std::move(ratio)).first->second;
}

std::int64_t Grower::required_size(const WorkGroup& g) const {
  std::int64_t required = 0;
  for (const auto& [value, count] : g.transient_counts) {
    const auto& ratio = group_ratio(g, value);
    assert(ratio.has_value());  // infeasible pairings are never formed
    const RatioRequirement requirement{*ratio};
    required = std::max(required, requirement.min_group_size_for(count));
  }
  return required;
}

std::optional<Grower::MergePlan> Grower::evaluate_merge(const WorkGroup& g,
                                                        const WorkGroup& h) const {
  std::map<std::string, std::int64_t> counts = g.transient_counts;
  for (const auto& [value, count] : h.transient_counts) {
    counts[value] += count;
  }
  std::int64_t required = 0;
  for (const auto& [value, count] : counts) {
    const auto& rg = group_ratio(g, value);
    const auto& rh = group_ratio(h, value);
    if (!rg.has_value() || !rh.has_value()) {
      return std::nullopt;
    }
    const RatioRequirement requirement{std::max(*rg, *rh)};
    required = std::max(required, requirement.min_group_size_for(count));
  }
  return MergePlan{std::max<std::int64_t>(0, required - (g.size() + h.size())), required};
}

void Grower::apply_merge(WorkGroup& g, WorkGroup& h) {
  // Union the caches first, while each side still reflects its own members.
  std::vector<std::string> cached;
  for (const auto& [value, ratio] : g.ratio_cache) {
    cached.push_back(value);
  }
  for (const auto& [value, ratio] : h.ratio_cache) {
    if (!g.ratio_cache.contains(value)) {
      cached.push_back(value);
    }
  }
  std::map<std::string, std::optional<Rational>> merged_cache;
  for (const std::string& value : cached) {
    const auto& rg = group_ratio(g, value);
    const auto& rh = group_ratio(h, value);
    if (rg.has_value() && rh.has_value()) {
      merged_cache.emplace(value, std::max(*rg, *rh));
    } else {
      merged_cache.emplace(value, std::nullopt);
    }
  }
  g.ratio_cache = std::move(merged_cache);
  for (const auto& [value, count] : h.transient_counts) {
    g.transient_counts[value] += count;
  }
  g.members.insert(g.members.end(), h.members.begin(), h.members.end());
  g.virtual_regs.insert(g.virtual_regs.end(), h.virtual_regs.begin(), h.virtual_regs.end());
  g.virtual_values.insert(g.virtual_values.end(), h.virtual_values.begin(),
                          h.virtual_values.end());
  merge_profiles(g.profile, h.profile, table_.schema);
  g.founder_rank = std::min(g.founder_rank, h.founder_rank);
  h.alive = false;
}

bool Grower::absorb_filler(WorkGroup& g, WorkGroup& filler) {
  assert(filler.is_filler());
  const std::size_t record_index = filler.members.front();
  const std::string& id = table_.records[record_index].individual_id;
  // Validate against the values actually present before touching anything;
  // the filler may carry a saturated history with one of them.
  for (const auto& [value, count] : g.transient_counts) {
    if (!constraints_.ratio(id, value).has_value()) {
      return false;
    }
  }
  for (auto& [value, ratio] : g.ratio_cache) {
    if (!ratio.has_value()) {
      continue;
    }
    const auto& r = constraints_.ratio(id, value);
    if (!r.has_value()) {
      ratio.reset();
    } else if (*r > *ratio) {
      ratio = *r;
    }
  }
  g.members.push_back(record_index);
  merge_profiles(g.profile, filler.profile, table_.schema);
  filler.alive = false;
  return true;
}

std::string Grower::synthesize_value() {
  assert(synth_total_ > 0);
  const std::int64_t pick =
      static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(synth_total_));
  auto it = std::upper_bound(synth_pool_.begin(), synth_pool_.end(), pick,
                             [](std::int64_t v, const auto& entry) { return v < entry.second; });
  assert(it != synth_pool_.end());
  return it->first;
}

bool Grower::dilute_with_virtuals(WorkGroup& g) {
  if (synth_total_ == 0) {
    return false;
  }
  const std::int64_t need = deficit(g);
  std::vector<std::pair<double, std::size_t>> candidates;
  for (std::size_t i = 0; i < registration_.individuals.size(); ++i) {
    const Registrant& registrant = registration_.individuals[i];
    if (used_registrants_.contains(i) || release_ids_.contains(registrant.id) ||
        registrant.qid.size() != table_.schema.qid.size()) {
      continue;
    }
    Profile profile;
    absorb_record(profile, registrant.qid, table_.schema);
    candidates.emplace_back(profile_distance(g.profile, profile, table_.schema, domains_), i);
  }
  if (static_cast<std::int64_t>(candidates.size()) < need) {
    return false;
  }
  auto order = [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return registration_.individuals[a.second].id < registration_.individuals[b.second].id;
  };
  std::nth_element(candidates.begin(), candidates.begin() + (need - 1), candidates.end(), order);
  std::sort(candidates.begin(), candidates.begin() + need, order);
  for (std::int64_t i = 0; i < need; ++i) {
    const std::size_t reg_index = candidates[static_cast<std::size_t>(i)].second;
    used_registrants_.insert(reg_index);
    g.virtual_regs.push_back(reg_index);
    g.virtual_values.push_back(synthesize_value());
    Profile profile;
    absorb_record(profile, registration_.individuals[reg_index].qid, table_.schema);
    merge_profiles(g.profile, profile, table_.schema);
  }
  // Virtual values are never transient, so the requirement did not move.
  assert(deficit(g) == 0);
  return true;
}

GroupingResult Grower::run() {
  std::vector<std::size_t> order(table_.records.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table_.records[a].individual_id < table_.records[b].individual_id;
  });

  std::map<std::string, std::int64_t> release_counts;
  for (const MicroRecord& record : table_.records) {
    release_ids_.insert(record.individual_id);
    release_counts[record.sensitive] += 1;
  }
  for (const auto& [value, count] : release_counts) {
    if (!transient_values_.contains(value)) {
      synth_total_ += count;
      synth_pool_.emplace_back(value, synth_total_);
    }
  }

  // Individuals whose own transient value already saturated their history can
  // never again be published linked to it.
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const std::size_t index = order[rank];
    const MicroRecord& record = table_.records[index];
    const bool carrier = transient_values_.contains(record.sensitive);
    if (carrier && !constraints_.ratio(record.individual_id, record.sensitive).has_value()) {
      suppressed_.push_back(index);
      continue;
    }
    WorkGroup group;
    group.founder_rank = rank;
    group.members.push_back(index);
    absorb_record(group.profile, record.qid, table_.schema);
    if (carrier) {
      group.transient_counts[record.sensitive] = 1;
    }
    groups_.push_back(std::move(group));
  }

  std::set<std::pair<std::size_t, std::size_t>> violating;  // (founder_rank, group index)
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    if (deficit(groups_[i]) > 0) {
      violating.insert({groups_[i].founder_rank, i});
    }
  }

  while (!violating.empty()) {
    const std::size_t gi = violating.begin()->second;
    violating.erase(violating.begin());
    WorkGroup& g = groups_[gi];
    if (!g.alive || deficit(g) == 0) {
      continue;
    }

    // Unconstrained singletons near g, snapshot at the start of g's turn.
    std::vector<std::pair<double, std::size_t>> fillers;
    for (std::size_t i = 0; i < groups_.size(); ++i) {
      const WorkGroup& h = groups_[i];
      if (i != gi && h.alive && h.is_filler()) {
        fillers.emplace_back(profile_distance(g.profile, h.profile, table_.schema, domains_), i);
      }
    }
    std::sort(fillers.begin(), fillers.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return groups_[a.second].founder_rank < groups_[b.second].founder_rank;
    });
    std::size_t next_filler = 0;

    while (g.alive && deficit(g) > 0) {
      const std::int64_t current_deficit = deficit(g);
      const std::int64_t current_required = required_size(g);

      while (next_filler < fillers.size() && !groups_[fillers[next_filler].second].alive) {
        ++next_filler;
      }

      // Non-filler partners in distance order. Healthy merges shrink the
      // deficit without stacking a value's requirement above what either
      // side already faced; requirement-raising merges rank below dilution.
      std::vector<std::pair<double, std::size_t>> partners;
      for (std::size_t i = 0; i < groups_.size(); ++i) {
        const WorkGroup& h = groups_[i];
        if (i != gi && h.alive && !h.is_filler()) {
          partners.emplace_back(profile_distance(g.profile, h.profile, table_.schema, domains_),
                                i);
        }
      }
      std::sort(partners.begin(), partners.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        if (groups_[a.second].size() != groups_[b.second].size()) {
          return groups_[a.second].size() < groups_[b.second].size();
        }
        return groups_[a.second].founder_rank < groups_[b.second].founder_rank;
      });

      std::size_t healthy = groups_.size();
      double healthy_distance = std::numeric_limits<double>::infinity();
      std::size_t raising = groups_.size();
      std::size_t desperate = groups_.size();
      for (const auto& [distance, i] : partners) {
        const auto plan = evaluate_merge(g, groups_[i]);
        if (!plan.has_value()) {
          continue;
        }
        if (desperate == groups_.size()) {
          desperate = i;
        }
        if (plan->deficit < current_deficit) {
          const std::int64_t partner_required = required_size(groups_[i]);
          if (plan->required <= std::max(current_required, partner_required)) {
            healthy = i;
            healthy_distance = distance;
            break;  // distance-ordered: the first healthy partner is the best
          }
          if (raising == groups_.size()) {
            raising = i;
          }
        }
      }

      if (next_filler < fillers.size() &&
          (healthy == groups_.size() || fillers[next_filler].first <= healthy_distance)) {
        WorkGroup& filler = groups_[fillers[next_filler].second];
        ++next_filler;
        absorb_filler(g, filler);  // on veto the filler is simply skipped
        continue;
      }
      if (healthy != groups_.size()) {
        violating.erase({groups_[healthy].founder_rank, healthy});
        apply_merge(g, groups_[healthy]);
        continue;
      }
      // No healthy real merge is left: dilute, then consider desperate
      // merges, then give up.
      if (dilute_with_virtuals(g)) {
        break;
      }
      const std::size_t fallback = raising != groups_.size() ? raising : desperate;
      if (fallback != groups_.size()) {
        violating.erase({groups_[fallback].founder_rank, fallback});
        apply_merge(g, groups_[fallback]);
        continue;
      }
      for (std::size_t member : g.members) {
        suppressed_.push_back(member);
      }
      for (std::size_t reg : g.virtual_regs) {
        used_registrants_.erase(reg);
      }
      g.alive = false;
    }
  }

  GroupingResult result;
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    if (groups_[i].alive) {
      alive.push_back(i);
    }
  }
  std::sort(alive.begin(), alive.end(), [&](std::size_t a, std::size_t b) {
    return groups_[a].founder_rank < groups_[b].founder_rank;
  });
  for (std::size_t i : alive) {
    WorkGroup& g = groups_[i];
    assert(deficit(g) == 0);
    GroupDraft draft;
    draft.members = std::move(g.members);
    std::sort(draft.members.begin(), draft.members.end(), [&](std::size_t a, std::size_t b) {
      return table_.records[a].individual_id < table_.records[b].individual_id;
    });
    std::vector<std::pair<std::string, std::string>> virtuals;
    for (std::size_t v = 0; v < g.virtual_regs.size(); ++v) {
      virtuals.emplace_back(registration_.individuals[g.virtual_regs[v]].id,
                            g.virtual_values[v]);
    }
    std::sort(virtuals.begin(), virtuals.end());
    for (auto& [id, value] : virtuals) {
      draft.virtual_ids.push_back(std::move(id));
      draft.virtual_values.push_back(std::move(value));
    }
    result.groups.push_back(std::move(draft));
  }
  std::sort(suppressed_.begin(), suppressed_.end());
  result.suppressed = std::move(suppressed_);
  return result;
}

}  // namespace

GroupingResult grow_groups(const MicroTable& table, const GroupingConstraints& constraints,
                           const std::set<std::string>& transient_values,
                           const RegistrationList& registration, std::uint64_t seed) {
  return Grower(table, constraints, transient_values, registration, seed).run();
}

std::vector<GeneralizedValue> generalize_qids(
    const std::vector<const std::vector<QidValue>*>& rows, const TableSchema& schema) {
  if (rows.empty()) {
    throw std::invalid_argument("cannot generalize an empty group");
  }
  std::vector<GeneralizedValue> generalized;
  generalized.reserve(schema.qid.size());
  for (std::size_t i = 0; i < schema.qid.size(); ++i) {
    switch (schema.qid[i].type) {
      case AttributeType::kNumeric: {
        NumericRange range;
        bool first = true;
        for (const auto* row : rows) {
          const std::int64_t v = std::get<std::int64_t>((*row)[i]);
          if (first) {
            range.lo = range.hi = v;
            first = false;
          } else {
            range.lo = std::min(range.lo, v);
            range.hi = std::max(range.hi, v);
          }
        }
        generalized.emplace_back(range);
        break;
      }
      case AttributeType::kString: {
        StringPattern pattern;
        bool first = true;
        for (const auto* row : rows) {
          const std::string& v = std::get<std::string>((*row)[i]);
          if (first) {
            pattern.prefix = v;
            pattern.length = v.size();
            first = false;
          } else if (!pattern.any) {
            if (v.size() != pattern.length) {
              pattern.any = true;
              pattern.prefix.clear();
              pattern.length = 0;
            } else {
              pattern.prefix.resize(common_prefix_len(pattern.prefix, v));
            }
          }
        }
        generalized.emplace_back(pattern);
        break;
      }
      case AttributeType::kCategorical: {
        ValueSet set;
        for (const auto* row : rows) {
          const std::string& v = std::get<std::string>((*row)[i]);
          if (std::find(set.values.begin(), set.values.end(), v) == set.values.end()) {
            set.values.push_back(v);
          }
        }
        generalized.emplace_back(set);
        break;
      }
    }
  }
  return generalized;
}

AnonymizationOutcome anonymize_release(const MicroTable& raw, const LinkageHistory& history,
                                       const PrivacyParams& params,
                                       const RegistrationList& registration,
                                       const std::set<std::string>& transient_values,
                                       std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  if (const auto violations = validate_table(raw); !violations.empty()) {
    throw std::invalid_argument("raw table fails validation: " + violations.front().detail);
  }
  params.validate();

  GroupingConstraints constraints(history, params);
  GroupingResult grouping = grow_groups(raw, constraints, transient_values, registration, seed);

  std::map<std::string, const Registrant*> registrants_by_id;
  for (const Registrant& registrant : registration.individuals) {
    registrants_by_id[registrant.id] = &registrant;
  }

  AnonymizationOutcome outcome;
  outcome.table.release_index = raw.release_index;
  outcome.table.schema = raw.schema;
  for (const GroupDraft& draft : grouping.groups) {
    AnonymizedGroup group;
    std::vector<const std::vector<QidValue>*> rows;
    for (std::size_t index : draft.members) {
      const MicroRecord& record = raw.records[index];
      group.member_ids.push_back(record.individual_id);
      group.sensitive_multiset[record.sensitive] += 1;
      rows.push_back(&record.qid);
    }
    for (std::size_t v = 0; v < draft.virtual_ids.size(); ++v) {
      group.virtual_ids.push_back(draft.virtual_ids[v]);
      group.virtual_values.push_back(draft.virtual_values[v]);
      group.sensitive_multiset[draft.virtual_values[v]] += 1;
      rows.push_back(&registrants_by_id.at(draft.virtual_ids[v])->qid);
    }
    group.generalized_qid = generalize_qids(rows, raw.schema);
    outcome.table.groups.push_back(std::move(group));
  }

  outcome.history = record_release(history, outcome.table, transient_values);

  outcome.report.release_index = raw.release_index;
  for (const AnonymizedGroup& group : outcome.table.groups) {
    outcome.report.group_sizes.push_back(group.size());
    outcome.report.virtual_member_count += group.virtual_ids.size();
  }
  for (std::size_t index : grouping.suppressed) {
    outcome.report.suppressed_ids.push_back(raw.records[index].individual_id);
  }
  std::sort(outcome.report.suppressed_ids.begin(), outcome.report.suppressed_ids.end());
  outcome.report.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  return outcome;
}

std::vector<AuditViolation> audit_history(const LinkageHistory& history, int ell) {
  if (ell < 2) {
    throw std::invalid_argument("ell must be at least 2");
  }
  std::vector<AuditViolation> violations;
  const Rational bound(1, ell);
  for (const auto& [key, entries] : history.all()) {
    const Rational p = breach_probability(entries);
    if (p > bound) {
      violations.push_back({key.first, key.second, p});
    }
  }
  return violations;
}

std::vector<AuditViolation> audit_release(const AnonymizedTable& table,
                                          const LinkageHistory& history_after, int ell) {
  (void)table;  // the statistics already cover everything the table added
  return audit_history(history_after, ell);
}

}  // namespace serialpriv
