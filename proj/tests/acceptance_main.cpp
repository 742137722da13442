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
// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Everything asserted here is pinned in code; nothing is
// left to later calibration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "serialpriv/anonymizer.hpp"
#include "serialpriv/probability.hpp"
#include "serialpriv/series_gen.hpp"
#include "serialpriv/strategy.hpp"
#include "serialpriv/utility.hpp"

using namespace serialpriv;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) {
      detail += "; ";
    }
    detail += why;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) {
      fail(why);
    }
  }
};

std::vector<HistoryEntry> linked(std::initializer_list<std::pair<std::int64_t, std::int64_t>> v) {
  std::vector<HistoryEntry> entries;
  std::int32_t release = 0;
  for (const auto& [n, c] : v) {
    entries.push_back({++release, n, c});
  }
  return entries;
}

OracleScenario random_scenario(std::mt19937_64& rng) {
  static const std::vector<std::string> kValues = {"s1", "s2", "s3"};
  OracleScenario scenario;
  scenario.target_value = "s1";
  const int releases = 1 + static_cast<int>(rng() % 3);
  for (int j = 0; j < releases; ++j) {
    OracleRelease release;
    release.target_in_group = (rng() % 4) != 0;
    const int size = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < size; ++i) {
      release.config.counts[kValues[rng() % kValues.size()]] += 1;
    }
    release.config.size = size;
    scenario.releases.push_back(std::move(release));
  }
  return scenario;
}

std::vector<HistoryEntry> linked_view(const OracleScenario& scenario) {
  std::vector<HistoryEntry> entries;
  std::int32_t release = 0;
  for (const OracleRelease& r : scenario.releases) {
    ++release;
    const std::int64_t count = r.config.count_of(scenario.target_value);
    if (r.target_in_group && count >= 1) {
      entries.push_back({release, r.config.size, count});
    }
  }
  return entries;
}

std::vector<HistoryEntry> random_feasible_history(std::mt19937_64& rng, int ell, int length) {
  std::vector<HistoryEntry> history;
  for (int k = 0; k < length; ++k) {
    const Rational minimum = min_ratio(history, ell);
    const std::int64_t count = 1 + static_cast<std::int64_t>(rng() % 3);
    const std::int64_t jitter = 1 + static_cast<std::int64_t>(rng() % 4);
    const std::int64_t size = ceil_to_int(minimum * Rational(count)).get_si() + jitter;
    history.push_back({static_cast<std::int32_t>(k + 1), size, count});
  }
  return history;
}

// --- criteria -------------------------------------------------------------

Check running_example_regression() {
  Check check;
  const auto started = Clock::now();
  for (int i = 0; i < 1000; ++i) {
    check.require(breach_probability(linked({{2, 1}, {2, 1}})) == Rational(3, 4),
                  "p for two size-2 releases must be exactly 3/4");
    check.require(breach_probability(linked({{4, 1}, {4, 1}})) == Rational(7, 16),
                  "p for two size-4 releases must be exactly 7/16");
    if (!check.pass) {
      return check;
    }
  }
  const double avg_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - started).count() / 2000.0;
  check.require(avg_ms < 1.0, "single evaluation took " + std::to_string(avg_ms) + " ms");
  std::ostringstream detail;
  detail << "3/4 and 7/16 exact, " << avg_ms << " ms per evaluation";
  check.detail = detail.str();
  return check;
}

Check oracle_equivalence_sweep() {
  Check check;
  std::mt19937_64 rng(74207281);
  int compared = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const OracleScenario scenario = random_scenario(rng);
    const Rational closed = breach_probability(linked_view(scenario));
    const Rational oracle = breach_probability_oracle(scenario);
    ++compared;
    if (closed != oracle) {
      check.fail("mismatch at trial " + std::to_string(trial) + ": closed " +
                 closed.to_string() + " vs oracle " + oracle.to_string());
      return check;
    }
  }
  check.detail = std::to_string(compared) + " scenarios agreed exactly";
  return check;
}

Check minimum_ratio_example() {
  Check check;
  check.require(min_ratio(linked({{4, 1}, {4, 1}}), 2) == Rational(9),
                "minimum ratio after two size-4 releases must be exactly 9");
  check.detail = "minimum ratio 9 exact";
  return check;
}

Check threshold_equality_sweep() {
  Check check;
  std::mt19937_64 rng(6700417);
  for (int trial = 0; trial < 1000; ++trial) {
    const int ell = 2 + static_cast<int>(rng() % 9);
    std::vector<HistoryEntry> history =
        random_feasible_history(rng, ell, static_cast<int>(rng() % 4));
    const Rational minimum = min_ratio(history, ell);
    const std::int64_t scale = 1 + static_cast<std::int64_t>(rng() % 3);
    history.push_back({static_cast<std::int32_t>(history.size() + 1),
                       BigInt(minimum.numerator() * scale).get_si(),
                       BigInt(minimum.denominator() * scale).get_si()});
    if (breach_probability(history) != Rational(1, ell)) {
      check.fail("publishing at the minimum missed 1/ell at trial " + std::to_string(trial));
      return check;
    }
  }
  check.detail = "1000 at-minimum publications landed exactly on 1/ell";
  return check;
}

Check breach_after_minimum_sweep() {
  Check check;
  std::mt19937_64 rng(2147483647);
  for (int trial = 0; trial < 1000; ++trial) {
    const int ell = 2 + static_cast<int>(rng() % 9);
    std::vector<HistoryEntry> history =
        random_feasible_history(rng, ell, static_cast<int>(rng() % 3));
    const Rational minimum = min_ratio(history, ell);
    const std::int64_t scale = 1 + static_cast<std::int64_t>(rng() % 2);
    history.push_back({static_cast<std::int32_t>(history.size() + 1),
                       BigInt(minimum.numerator() * scale).get_si(),
                       BigInt(minimum.denominator() * scale).get_si()});
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 12);
    const std::int64_t c = 1 + static_cast<std::int64_t>(rng() % n);
    history.push_back({static_cast<std::int32_t>(history.size() + 1), n, c});
    const Rational expected =
        Rational(1, ell) + Rational(c, n) * (Rational(1) - Rational(1, ell));
    if (breach_probability(history) != expected) {
      check.fail("follow-up breach probability missed the closed form at trial " +
                 std::to_string(trial));
      return check;
    }
  }
  check.detail = "1000 follow-ups matched 1/ell + (c/n)(1 - 1/ell) exactly";
  return check;
}

Check fixed_ratio_reference_points() {
  Check check;
  const auto close = [](const Rational& r, double want, double tolerance) {
    return std::abs(r.to_double() - want) <= tolerance;
  };
  check.require(close(constant_ratio(10, 20), 190.33, 0.05), "(ell 10, k' 20) off 190.33");
  check.require(close(constant_ratio(5, 20), 90.13, 0.05), "(ell 5, k' 20) off 90.13");
  check.require(close(constant_ratio(10, 10), 95.42, 0.05), "(ell 10, k' 10) off 95.42");
  check.require(close(constant_ratio(5, 10), 45.35, 0.05), "(ell 5, k' 10) off 45.35");
  // ell = 2 row: the printed reference values 3.44 / 7.75 / 15.10 / 29.41
  // disagree with the defining equation; the equation's roots are asserted.
  check.require(close(constant_ratio(2, 2), 3.414, 0.005), "(ell 2, k' 2) off 3.414");
  check.require(close(constant_ratio(2, 5), 7.725, 0.005), "(ell 2, k' 5) off 7.725");
  check.require(close(constant_ratio(2, 10), 14.93, 0.005), "(ell 2, k' 10) off 14.93");
  check.require(close(constant_ratio(2, 20), 29.36, 0.005), "(ell 2, k' 20) off 29.36");
  check.detail = "four table cells within 0.05; ell=2 row at the equation roots";
  return check;
}

Check min_max_optimality_search() {
  Check check;
  const int kMaxSize = 40;
  std::int64_t best_feasible_max = kMaxSize + 1;
  for (std::int64_t a = 1; a <= kMaxSize; ++a) {
    for (std::int64_t b = 1; b <= kMaxSize; ++b) {
      for (std::int64_t c = 1; c <= kMaxSize; ++c) {
        // p = 1 - prod(1 - 1/n) <= 1/2, all counts one
        std::vector<HistoryEntry> history{{1, a, 1}, {2, b, 1}, {3, c, 1}};
        if (breach_probability(history) <= Rational(1, 2)) {
          best_feasible_max = std::min(best_feasible_max, std::max({a, b, c}));
        }
      }
    }
  }
  PrivacyParams params;
  params.ell = 2;
  params.strategy = Strategy::kConstantRatio;
  params.k_prime = 3;
  std::int64_t planned_max = 0;
  for (const SchedulePoint& point : ratio_schedule(params, 3)) {
    planned_max = std::max(planned_max, point.group_size);
  }
  check.require(best_feasible_max == planned_max,
                "exhaustive best max " + std::to_string(best_feasible_max) +
                    " vs planned " + std::to_string(planned_max));
  check.detail = "no feasible sequence beats the planned maximum of " +
                 std::to_string(planned_max);
  return check;
}

Check unlinked_invariance_sweep() {
  Check check;
  std::mt19937_64 rng(524287);
  for (int trial = 0; trial < 1000; ++trial) {
    OracleScenario scenario = random_scenario(rng);
    const Rational before = breach_probability_oracle(scenario);
    OracleRelease unlinked;
    unlinked.target_in_group = true;
    const int size = 1 + static_cast<int>(rng() % 4);
    unlinked.config.size = size;
    unlinked.config.counts["s2"] = size;  // the target value never appears
    const std::size_t at = rng() % (scenario.releases.size() + 1);
    scenario.releases.insert(scenario.releases.begin() + static_cast<std::ptrdiff_t>(at),
                             unlinked);
    if (breach_probability_oracle(scenario) != before) {
      check.fail("an unlinked release moved the probability at trial " + std::to_string(trial));
      return check;
    }
  }
  check.detail = "1000 insertions left the enumerated probability unchanged";
  return check;
}

Check monotonicity_sweep() {
  Check check;
  std::mt19937_64 rng(8191);
  for (int trial = 0; trial < 1000; ++trial) {
    const int ell = 2 + static_cast<int>(rng() % 9);
    std::vector<HistoryEntry> history =
        random_feasible_history(rng, ell, 1 + static_cast<int>(rng() % 4));
    const Rational before = breach_probability(history);
    history.back().group_size += 1 + static_cast<std::int64_t>(rng() % 6);
    if (!(breach_probability(history) < before)) {
      check.fail("a wider final ratio failed to lower p at trial " + std::to_string(trial));
      return check;
    }
  }
  check.detail = "1000 final-ratio increases strictly lowered the probability";
  return check;
}

// --- criterion 8: the end-to-end experiment -------------------------------

struct RoundMetrics {
  double error = 0.0;
  double average_size = 0.0;
  double max_size = 0.0;
};

struct ConfigOutcome {
  std::string label;
  std::vector<RoundMetrics> rounds;
  double mean_error = 0.0;
  double mean_average_size = 0.0;
  double mean_max_size = 0.0;
  std::size_t violations = 0;
  std::size_t suppressed = 0;
};

ConfigOutcome run_config(const GeneratedSeries& series, const PrivacyParams& params,
                         const std::string& label) {
  ConfigOutcome outcome;
  outcome.label = label;
  LinkageHistory history;
  for (const MicroTable& raw : series.releases) {
    const AnonymizationOutcome step = anonymize_release(
        raw, history, params, series.registration, series.transient_values, params.seed);
    history = step.history;
    outcome.violations += audit_release(step.table, step.history, params.ell).size();
    outcome.suppressed += step.report.suppressed_ids.size();

    const PublishedTable published = to_published(step.table);
    const UtilityReport report = evaluate_utility(raw, published, 500, 777);
    outcome.rounds.push_back({report.average_relative_error, report.average_group_size,
                              static_cast<double>(report.max_group_size)});
  }
  for (const RoundMetrics& round : outcome.rounds) {
    outcome.mean_error += round.error;
    outcome.mean_average_size += round.average_size;
    outcome.mean_max_size += round.max_size;
  }
  const double n = static_cast<double>(outcome.rounds.size());
  outcome.mean_error /= n;
  outcome.mean_average_size /= n;
  outcome.mean_max_size /= n;
  return outcome;
}

bool flat_within(const ConfigOutcome& outcome, double band,
                 const std::function<double(const RoundMetrics&)>& metric, double mean,
                 std::string* why) {
  for (std::size_t i = 0; i < outcome.rounds.size(); ++i) {
    const double value = metric(outcome.rounds[i]);
    if (std::abs(value - mean) > band * mean) {
      std::ostringstream out;
      out << outcome.label << " round " << (i + 1) << " value " << value
          << " outside +-" << (band * 100) << "% of mean " << mean;
      *why = out.str();
      return false;
    }
  }
  return true;
}

Check end_to_end_experiment() {
  Check check;

  SeriesSpec spec;  // 105,420 tuples over 20 releases, 5,271-strong base partitions
  spec.seed = 42;
  const GeneratedSeries series = generate_series(spec);

  auto constant = [](int ell, int k_prime) {
    PrivacyParams params;
    params.ell = ell;
    params.strategy = Strategy::kConstantRatio;
    params.k_prime = k_prime;
    params.seed = 9001;
    return params;
  };
  auto geometric = [](int ell, int alpha) {
    PrivacyParams params;
    params.ell = ell;
    params.strategy = Strategy::kGeometric;
    params.alpha = Rational(alpha);
    params.seed = 9001;
    return params;
  };

  // The ell sweep runs both strategies; the horizon and headroom sweeps vary
  // one knob at a time at ell = 2.
  std::map<std::string, ConfigOutcome> results;
  auto run = [&](const std::string& label, const PrivacyParams& params) {
    results.emplace(label, run_config(series, params, label));
  };
  for (int ell : {2, 3, 5, 7}) {
    run("constant k'=20 ell=" + std::to_string(ell), constant(ell, 20));
    run("geometric a=12 ell=" + std::to_string(ell), geometric(ell, 12));
  }
  for (int k_prime : {5, 10}) {
    run("constant k'=" + std::to_string(k_prime) + " ell=2", constant(2, k_prime));
  }
  for (int alpha : {8, 10}) {
    run("geometric a=" + std::to_string(alpha) + " ell=2", geometric(2, alpha));
  }

  for (const auto& [label, outcome] : results) {
    check.require(outcome.violations == 0,
                  label + " had " + std::to_string(outcome.violations) + " audit violations");
  }

  auto non_decreasing = [&](const std::vector<std::string>& labels, const std::string& axis) {
    for (std::size_t i = 1; i < labels.size(); ++i) {
      const ConfigOutcome& lo = results.at(labels[i - 1]);
      const ConfigOutcome& hi = results.at(labels[i]);
      check.require(hi.mean_error + 1e-12 >= lo.mean_error,
                    "relative error not non-decreasing in " + axis + " between " + lo.label +
                        " and " + hi.label);
      check.require(hi.mean_average_size + 1e-12 >= lo.mean_average_size,
                    "average size not non-decreasing in " + axis + " between " + lo.label +
                        " and " + hi.label);
      check.require(hi.mean_max_size + 1e-12 >= lo.mean_max_size,
                    "max size not non-decreasing in " + axis + " between " + lo.label + " and " +
                        hi.label);
    }
  };

  non_decreasing({"constant k'=20 ell=2", "constant k'=20 ell=3", "constant k'=20 ell=5",
                  "constant k'=20 ell=7"},
                 "ell (constant)");
  non_decreasing({"geometric a=12 ell=2", "geometric a=12 ell=3", "geometric a=12 ell=5",
                  "geometric a=12 ell=7"},
                 "ell (geometric)");
  non_decreasing({"constant k'=5 ell=2", "constant k'=10 ell=2", "constant k'=20 ell=2"},
                 "k'");
  non_decreasing({"geometric a=8 ell=2", "geometric a=10 ell=2", "geometric a=12 ell=2"},
                 "alpha");

  for (const auto& [label, outcome] : results) {
    std::string why;
    if (!flat_within(outcome, 0.20, [](const RoundMetrics& m) { return m.error; },
                     outcome.mean_error, &why)) {
      check.fail("relative error: " + why);
    }
    if (!flat_within(outcome, 0.20, [](const RoundMetrics& m) { return m.average_size; },
                     outcome.mean_average_size, &why)) {
      check.fail("average size: " + why);
    }
    if (!flat_within(outcome, 0.20, [](const RoundMetrics& m) { return m.max_size; },
                     outcome.mean_max_size, &why)) {
      check.fail("max size: " + why);
    }
  }

  if (check.pass) {
    std::ostringstream detail;
    detail << results.size() << " configurations, zero violations, trends hold; e.g. "
           << "constant ell sweep mean sizes";
    for (int ell : {2, 3, 5, 7}) {
      detail << " "
             << results.at("constant k'=20 ell=" + std::to_string(ell)).mean_average_size;
    }
    check.detail = detail.str();
  }
  return check;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    std::string name;
    std::function<Check()> run;
  };
  const std::vector<Entry> criteria = {
      {1, "running-example regression (3/4 and 7/16, exact, under 1 ms)",
       running_example_regression},
      {2, "oracle equivalence sweep (10,000 randomized scenarios)", oracle_equivalence_sweep},
      {3, "minimum-ratio worked example (exactly 9)", minimum_ratio_example},
      {4, "threshold equality: at-minimum publication lands on 1/ell (1,000 cases)",
       threshold_equality_sweep},
      {5, "post-minimum breach equals 1/ell + (c/n)(1-1/ell) (1,000 cases)",
       breach_after_minimum_sweep},
      {6, "fixed-ratio reference table (printed 3.44/7.75/15.10/29.41 disagree with the "
          "defining equation; equation roots 3.414/7.725/14.93/29.36 asserted)",
       fixed_ratio_reference_points},
      {7, "min-max optimality, exhaustive search (3 releases, sizes to 40)",
       min_max_optimality_search},
      {8, "end-to-end guarantee and utility trends (20 releases x 12 configurations)",
       end_to_end_experiment},
      {9, "unlinked-release invariance (1,000 scenarios)", unlinked_invariance_sweep},
      {10, "monotonicity in the final ratio (1,000 histories)", monotonicity_sweep},
  };

  int failures = 0;
  for (const Entry& entry : criteria) {
    const auto started = Clock::now();
    Check check;
    try {
      check = entry.run();
    } catch (const std::exception& e) {
      check.pass = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - started).count();
    std::printf("%s %2d  %s (%.2fs)%s%s\n", check.pass ? "PASS" : "FAIL", entry.id,
                entry.name.c_str(), seconds, check.detail.empty() ? "" : " -- ",
                check.detail.c_str());
    if (!check.pass) {
      ++failures;
    }
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
