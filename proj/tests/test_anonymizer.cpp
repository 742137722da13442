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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "serialpriv/anonymizer.hpp"
#include "serialpriv/probability.hpp"

using namespace serialpriv;

namespace {

TableSchema motivating_schema() {
  TableSchema schema;
  schema.qid = {{"sex", AttributeType::kCategorical}, {"zipcode", AttributeType::kString}};
  schema.sensitive_name = "disease";
  return schema;
}

MicroRecord record(std::string id, std::string sex, std::string zip, std::string disease) {
  return {std::move(id), {QidValue(std::move(sex)), QidValue(std::move(zip))},
          std::move(disease)};
}

// The four-person release from the motivating example.
MicroTable motivating_t1() {
  MicroTable table;
  table.release_index = 1;
  table.schema = motivating_schema();
  table.records = {record("o1", "M", "65001", "flu"), record("o2", "M", "65002", "chlamydia"),
                   record("o3", "F", "65014", "flu"), record("o4", "F", "65015", "fever")};
  return table;
}

PrivacyParams geometric(int ell, Rational alpha) {
  PrivacyParams params;
  params.ell = ell;
  params.strategy = Strategy::kGeometric;
  params.alpha = std::move(alpha);
  return params;
}

PrivacyParams constant(int ell, int k_prime) {
  PrivacyParams params;
  params.ell = ell;
  params.strategy = Strategy::kConstantRatio;
  params.k_prime = k_prime;
  return params;
}

std::string fingerprint(const AnonymizationOutcome& outcome) {
  std::ostringstream out;
  for (const AnonymizedGroup& group : outcome.table.groups) {
    out << "G[";
    for (const auto& id : group.member_ids) out << id << ' ';
    out << '|';
    for (const auto& id : group.virtual_ids) out << id << ' ';
    out << '|';
    for (const auto& v : group.virtual_values) out << v << ' ';
    out << '|';
    for (const auto& g : group.generalized_qid) out << render_generalized(g) << ' ';
    out << '|';
    for (const auto& [value, count] : group.sensitive_multiset) out << value << ':' << count << ' ';
    out << "]\n";
  }
  for (const auto& id : outcome.report.suppressed_ids) out << "S:" << id << '\n';
  return out.str();
}

// Rebuild the adversary's view for one (individual, value) pair from the
// published tables and compare the exhaustive enumeration with the closed
// form over the recorded statistics.
void cross_check_with_oracle(const std::vector<AnonymizedTable>& published,
                             const LinkageHistory& history) {
  for (const auto& [key, entries] : history.all()) {
    OracleScenario scenario;
    scenario.target_value = key.second;
    for (const AnonymizedTable& table : published) {
      for (const AnonymizedGroup& group : table.groups) {
        if (std::find(group.member_ids.begin(), group.member_ids.end(), key.first) ==
            group.member_ids.end()) {
          continue;
        }
        OracleRelease release;
        release.target_in_group = true;
        release.config.size = group.size();
        release.config.counts = group.sensitive_multiset;
        scenario.releases.push_back(std::move(release));
      }
    }
    std::vector<GroupConfig> configs;
    for (const OracleRelease& release : scenario.releases) {
      configs.push_back(release.config);
    }
    if (world_count_series(configs) > 1'000'000) {
      continue;
    }
    CHECK(breach_probability(entries) == breach_probability_oracle(scenario, 1'000'000));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// QID generalization
// ---------------------------------------------------------------------------

TEST_CASE("zipcodes generalize to their shared prefix") {
  std::vector<QidValue> a{QidValue(std::string("65001"))};
  std::vector<QidValue> b{QidValue(std::string("65002"))};
  TableSchema schema;
  schema.qid = {{"zipcode", AttributeType::kString}};
  const auto generalized = generalize_qids({&a, &b}, schema);
  REQUIRE(generalized.size() == 1);
  CHECK(render_generalized(generalized[0]) == "6500*");
}

TEST_CASE("mixed categorical values widen to a value set") {
  std::vector<QidValue> a{QidValue(std::string("M"))};
  std::vector<QidValue> b{QidValue(std::string("F"))};
  TableSchema schema;
  schema.qid = {{"sex", AttributeType::kCategorical}};
  const auto generalized = generalize_qids({&a, &b}, schema);
  CHECK(render_generalized(generalized[0]) == "M/F");
}

TEST_CASE("a singleton keeps its exact values") {
  std::vector<QidValue> row{QidValue(std::string("M")), QidValue(std::string("65001")),
                            QidValue(std::int64_t{44})};
  TableSchema schema;
  schema.qid = {{"sex", AttributeType::kCategorical},
                {"zipcode", AttributeType::kString},
                {"age", AttributeType::kNumeric}};
  const auto generalized = generalize_qids({&row}, schema);
  CHECK(render_generalized(generalized[0]) == "M");
  CHECK(render_generalized(generalized[1]) == "65001");
  CHECK(render_generalized(generalized[2]) == "44");
}

TEST_CASE("numeric values widen to their range; odd strings to wildcards") {
  std::vector<QidValue> a{QidValue(std::int64_t{30}), QidValue(std::string("123"))};
  std::vector<QidValue> b{QidValue(std::int64_t{45}), QidValue(std::string("12345"))};
  TableSchema schema;
  schema.qid = {{"age", AttributeType::kNumeric}, {"code", AttributeType::kString}};
  const auto generalized = generalize_qids({&a, &b}, schema);
  CHECK(render_generalized(generalized[0]) == "[30,45]");
  CHECK(render_generalized(generalized[1]) == "*");  // mixed lengths

  std::vector<QidValue> c{QidValue(std::string("abc"))};
  std::vector<QidValue> d{QidValue(std::string("xyz"))};
  TableSchema one;
  one.qid = {{"code", AttributeType::kString}};
  CHECK(render_generalized(generalize_qids({&c, &d}, one)[0]) == "***");

  CHECK_THROWS_AS(generalize_qids({}, schema), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Auditing
// ---------------------------------------------------------------------------

TEST_CASE("auditing the size-2 publication catches the breach at 3/4") {
  LinkageHistory::Map entries;
  entries[{"o2", "chlamydia"}] = {{1, 2, 1}, {2, 2, 1}};
  const LinkageHistory history{std::move(entries)};
  const auto violations = audit_history(history, 2);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].individual_id == "o2");
  CHECK(violations[0].value == "chlamydia");
  CHECK(violations[0].probability == Rational(3, 4));
}

TEST_CASE("auditing the size-4 publication finds nothing") {
  LinkageHistory::Map entries;
  entries[{"o2", "chlamydia"}] = {{1, 4, 1}, {2, 4, 1}};
  const LinkageHistory history{std::move(entries)};
  CHECK(audit_history(history, 2).empty());
  CHECK(audit_history(LinkageHistory{}, 2).empty());
}

// ---------------------------------------------------------------------------
// Release anonymization
// ---------------------------------------------------------------------------

TEST_CASE("the motivating release becomes one group of four") {
  const MicroTable raw = motivating_t1();
  const auto outcome = anonymize_release(raw, LinkageHistory{}, geometric(2, Rational(2)),
                                         RegistrationList{}, {"chlamydia"}, 7);

  REQUIRE(outcome.table.groups.size() == 1);
  const AnonymizedGroup& group = outcome.table.groups[0];
  CHECK(group.size() == 4);
  CHECK(group.member_ids == std::vector<std::string>{"o1", "o2", "o3", "o4"});
  CHECK(render_generalized(group.generalized_qid[0]) == "M/F");
  CHECK(render_generalized(group.generalized_qid[1]) == "650**");

  const auto& entries = outcome.history.entries("o2", "chlamydia");
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].release_index == 1);
  CHECK(entries[0].group_size == 4);
  CHECK(entries[0].value_count == 1);

  CHECK(outcome.report.suppressed_ids.empty());
  CHECK(audit_release(outcome.table, outcome.history, 2).empty());
}

TEST_CASE("a saturated individual is suppressed while everyone else publishes") {
  LinkageHistory::Map entries;
  entries[{"o2", "chlamydia"}] = {{1, 2, 1}};  // already at probability 1/2
  const LinkageHistory history{std::move(entries)};

  MicroTable raw = motivating_t1();
  raw.release_index = 2;
  const auto outcome = anonymize_release(raw, history, geometric(2, Rational(2)),
                                         RegistrationList{}, {"chlamydia"}, 7);

  CHECK(outcome.report.suppressed_ids == std::vector<std::string>{"o2"});
  std::size_t published = 0;
  for (const AnonymizedGroup& group : outcome.table.groups) {
    published += group.member_ids.size();
    CHECK(std::find(group.member_ids.begin(), group.member_ids.end(), "o2") ==
          group.member_ids.end());
  }
  CHECK(published == 3);
  CHECK(audit_release(outcome.table, outcome.history, 2).empty());
}

TEST_CASE("without transient values every record can stand alone") {
  MicroTable raw = motivating_t1();
  const auto outcome =
      anonymize_release(raw, LinkageHistory{}, geometric(2, Rational(2)), RegistrationList{},
                        /*transient_values=*/{}, 7);
  CHECK(outcome.table.groups.size() == raw.records.size());
  for (const AnonymizedGroup& group : outcome.table.groups) {
    CHECK(group.size() == 1);
  }
  CHECK(outcome.history.empty());
  CHECK(audit_release(outcome.table, outcome.history, 2).empty());
}

TEST_CASE("two singletons with a ratio-2 requirement merge into one pair") {
  MicroTable raw;
  raw.release_index = 1;
  raw.schema = motivating_schema();
  raw.records = {record("o1", "M", "65001", "chlamydia"), record("o2", "M", "65002", "flu")};
  // A one-release horizon requires a ratio of exactly 2.
  GroupingConstraints constraints(LinkageHistory{}, constant(2, 1));
  const auto grouping = grow_groups(raw, constraints, {"chlamydia"}, RegistrationList{}, 1);
  REQUIRE(grouping.groups.size() == 1);
  CHECK(grouping.groups[0].members.size() == 2);
  CHECK(grouping.suppressed.empty());
}

TEST_CASE("a uniform transient release without a registration list suppresses everyone") {
  MicroTable raw;
  raw.release_index = 1;
  raw.schema = motivating_schema();
  raw.records = {record("o1", "M", "65001", "chlamydia"),
                 record("o2", "M", "65002", "chlamydia"),
                 record("o3", "F", "65014", "chlamydia")};
  const auto outcome = anonymize_release(raw, LinkageHistory{}, geometric(2, Rational(2)),
                                         RegistrationList{}, {"chlamydia"}, 7);
  CHECK(outcome.table.groups.empty());
  CHECK(outcome.report.suppressed_ids == std::vector<std::string>{"o1", "o2", "o3"});
  CHECK(outcome.history.empty());
}

TEST_CASE("registration individuals fill the gap when real records run out") {
  // One linked release of size 4 on record: the next linked group needs
  // ratio 3 * (2*3/(2*3-4)) = 9.
  LinkageHistory::Map prior;
  prior[{"o1", "chlamydia"}] = {{1, 4, 1}};
  const LinkageHistory history{std::move(prior)};

  MicroTable raw;
  raw.release_index = 2;
  raw.schema = motivating_schema();
  raw.records = {record("o1", "M", "65001", "chlamydia"), record("o2", "M", "65002", "flu"),
                 record("o3", "M", "65003", "flu"),        record("o4", "M", "65004", "fever"),
                 record("o5", "F", "65005", "flu"),        record("o6", "F", "65006", "fever")};

  RegistrationList registration;
  registration.individuals = {
      {"r1", {QidValue(std::string("M")), QidValue(std::string("65007"))}},
      {"r2", {QidValue(std::string("F")), QidValue(std::string("65008"))}},
      {"r3", {QidValue(std::string("M")), QidValue(std::string("65009"))}},
  };

  const auto outcome =
      anonymize_release(raw, history, geometric(2, Rational(3)), registration, {"chlamydia"}, 7);

  REQUIRE_FALSE(outcome.table.groups.empty());
  const AnonymizedGroup* linked_group = nullptr;
  for (const AnonymizedGroup& group : outcome.table.groups) {
    if (group.count_of("chlamydia") > 0) {
      linked_group = &group;
    }
  }
  REQUIRE(linked_group != nullptr);
  CHECK(linked_group->size() == 9);
  CHECK(linked_group->member_ids.size() == 6);
  CHECK(linked_group->virtual_ids.size() == 3);
  for (const std::string& value : linked_group->virtual_values) {
    CHECK(value != "chlamydia");  // virtual members never raise a tracked count
  }
  CHECK(outcome.report.suppressed_ids.empty());
  CHECK(outcome.report.virtual_member_count == 3);

  // The recorded ratio audit: 9/1 >= 9.
  const auto& entries = outcome.history.entries("o1", "chlamydia");
  REQUIRE(entries.size() == 2);
  CHECK(entries[1].group_size == 9);
  CHECK(breach_probability(entries) <= Rational(1, 2));
  CHECK(audit_release(outcome.table, outcome.history, 2).empty());
}

TEST_CASE("identical inputs and seed give bit-identical outputs") {
  MicroTable raw;
  raw.release_index = 1;
  raw.schema = motivating_schema();
  std::mt19937_64 rng(1234);
  const std::vector<std::string> diseases{"flu", "fever", "cough", "chlamydia", "hiv"};
  for (int i = 0; i < 40; ++i) {
    raw.records.push_back(record("o" + std::to_string(100 + i), rng() % 2 ? "M" : "F",
                                 "65" + std::to_string(100 + rng() % 30),
                                 diseases[rng() % diseases.size()]));
  }
  RegistrationList registration;
  for (int i = 0; i < 20; ++i) {
    registration.individuals.push_back(
        {"r" + std::to_string(100 + i),
         {QidValue(rng() % 2 ? std::string("M") : std::string("F")),
          QidValue("65" + std::to_string(100 + rng() % 30))}});
  }

  const auto a = anonymize_release(raw, LinkageHistory{}, geometric(2, Rational(2)), registration,
                                   {"chlamydia", "hiv"}, 99);
  const auto b = anonymize_release(raw, LinkageHistory{}, geometric(2, Rational(2)), registration,
                                   {"chlamydia", "hiv"}, 99);
  CHECK(fingerprint(a) == fingerprint(b));
}

TEST_CASE("an invalid raw table is rejected outright") {
  MicroTable raw = motivating_t1();
  raw.records.push_back(raw.records.front());  // duplicate individual
  CHECK_THROWS_AS(anonymize_release(raw, LinkageHistory{}, geometric(2, Rational(2)),
                                    RegistrationList{}, {"chlamydia"}, 7),
                  std::invalid_argument);
}

TEST_CASE("fuzzed serial publication is always audit-clean and oracle-consistent") {
  std::mt19937_64 rng(31337);
  const std::vector<std::string> diseases{"flu", "fever", "cough", "d1", "d2"};
  const std::set<std::string> transient{"d1", "d2"};

  for (int trial = 0; trial < 12; ++trial) {
    const bool use_constant = (trial % 2) == 0;
    const int ell = 2 + static_cast<int>(rng() % 3);
    const PrivacyParams params =
        use_constant ? constant(ell, 4) : geometric(ell, Rational(2 + static_cast<int>(rng() % 2)));

    RegistrationList registration;
    const int pool = static_cast<int>(rng() % 3) * 10;  // sometimes zero
    for (int i = 0; i < pool; ++i) {
      registration.individuals.push_back(
          {"reg" + std::to_string(i),
           {QidValue(rng() % 2 ? std::string("M") : std::string("F")),
            QidValue("65" + std::to_string(100 + rng() % 40))}});
    }

    LinkageHistory history;
    std::vector<AnonymizedTable> published;
    std::vector<std::string> population;
    for (int i = 0; i < 26; ++i) {
      population.push_back("o" + std::to_string(10 + i));
    }

    for (std::int32_t release = 1; release <= 3; ++release) {
      MicroTable raw;
      raw.release_index = release;
      raw.schema = motivating_schema();
      for (const std::string& id : population) {
        if (rng() % 3 == 0) {
          continue;  // this individual skips the release
        }
        raw.records.push_back(record(id, rng() % 2 ? "M" : "F",
                                     "65" + std::to_string(100 + rng() % 40),
                                     diseases[rng() % diseases.size()]));
      }
      const auto outcome =
          anonymize_release(raw, history, params, registration, transient, 1000 + trial);
      CHECK(audit_release(outcome.table, outcome.history, ell).empty());

      // Everyone is either published or reported suppressed.
      std::size_t placed = outcome.report.suppressed_ids.size();
      for (const AnonymizedGroup& group : outcome.table.groups) {
        placed += group.member_ids.size();
        CHECK(group.sensitive_multiset.size() >= 1);
        std::int64_t total = 0;
        for (const auto& [value, count] : group.sensitive_multiset) {
          total += count;
        }
        CHECK(total == group.size());
      }
      CHECK(placed == raw.records.size());

      history = outcome.history;
      published.push_back(outcome.table);
    }
    cross_check_with_oracle(published, history);
  }
}
