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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "serialpriv/anonymizer.hpp"
#include "serialpriv/io.hpp"
#include "serialpriv/probability.hpp"
#include "serialpriv/series_gen.hpp"
#include "serialpriv/strategy.hpp"
#include "serialpriv/utility.hpp"

namespace {

using namespace serialpriv;

constexpr int kOk = 0;
constexpr int kGuaranteeViolated = 1;
constexpr int kUsageError = 2;

std::string padded_index(int index, int width) {
  std::string digits = std::to_string(index);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return digits;
}

int run_generate(const std::string& spec_path, const std::string& out_dir) {
  const SeriesSpec spec = read_series_spec(spec_path);
  const GeneratedSeries series = generate_series(spec);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  const int width = static_cast<int>(std::to_string(spec.num_releases).size());
  for (const MicroTable& table : series.releases) {
    write_micro_csv(dir / ("T_" + padded_index(table.release_index, width) + ".csv"), table);
  }
  write_registration_csv(dir / "registration.csv", series.registration,
                         series.releases.front().schema);
  write_transient_list(dir / "transient.txt", series.transient_values);
  std::cout << "wrote " << series.releases.size() << " releases, "
            << series.registration.individuals.size() << " registered individuals, "
            << series.transient_values.size() << " transient values to " << out_dir << "\n";
  return kOk;
}

int run_anonymize(const std::string& release_path, const std::string& stats_path,
                  const std::string& params_path, const std::string& registration_path,
                  const std::string& transient_path, const std::string& out_path,
                  const std::string& report_path) {
  const MicroTable raw = read_micro_csv(release_path);
  const PrivacyParams params = read_params(params_path);
  const RegistrationList registration = read_registration_csv(registration_path);
  const std::set<std::string> transient_values = read_transient_list(transient_path);

  StatsLock lock(stats_path);
  LinkageHistory history;
  if (std::filesystem::exists(stats_path)) {
    history = read_statistics(stats_path);
  }
  if (history.last_release_index() >= raw.release_index) {
    std::cerr << "stats file already covers release " << history.last_release_index()
              << "; refusing to anonymize release " << raw.release_index << "\n";
    return kUsageError;
  }

  const AnonymizationOutcome outcome =
      anonymize_release(raw, history, params, registration, transient_values, params.seed);
  write_anonymized_csv(out_path, outcome.table);
  write_statistics(stats_path, outcome.history);
  if (!report_path.empty()) {
    write_report(report_path, outcome.report);
  }
  std::cout << "release " << raw.release_index << ": " << outcome.table.groups.size()
            << " groups, " << outcome.report.suppressed_ids.size() << " suppressed, "
            << outcome.report.virtual_member_count << " virtual members\n";
  return kOk;
}

int run_audit(const std::string& stats_path, int ell) {
  const LinkageHistory history = read_statistics(stats_path);
  const auto violations = audit_history(history, ell);
  if (violations.empty()) {
    std::cout << "guarantee holds for all " << history.all().size() << " tracked pairs\n";
    return kOk;
  }
  for (const AuditViolation& violation : violations) {
    std::cout << "violation: individual " << violation.individual_id << " value "
              << violation.value << " probability " << violation.probability.to_string()
              << " > 1/" << ell << "\n";
  }
  return kGuaranteeViolated;
}

int run_verify(const std::string& scenario_path, std::uint64_t budget) {
  std::ifstream in(scenario_path);
  if (!in) {
    throw FormatError("cannot open " + scenario_path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(scenario_path + ": " + std::string(e.what()));
  }
  OracleScenario scenario;
  try {
    scenario.target_value = doc.at("target_value").get<std::string>();
    for (const auto& item : doc.at("releases")) {
      OracleRelease release;
      release.target_in_group = item.value("target_in_group", true);
      for (const auto& [value, count] : item.at("counts").items()) {
        release.config.counts[value] = count.get<std::int64_t>();
        release.config.size += count.get<std::int64_t>();
      }
      scenario.releases.push_back(std::move(release));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(scenario_path + ": " + std::string(e.what()));
  }

  std::vector<HistoryEntry> linked;
  std::int32_t index = 0;
  for (const OracleRelease& release : scenario.releases) {
    ++index;
    if (release.target_in_group && release.config.count_of(scenario.target_value) >= 1) {
      linked.push_back(
          {index, release.config.size, release.config.count_of(scenario.target_value)});
    }
  }
  const Rational closed = breach_probability(linked);
  const Rational oracle = breach_probability_oracle(scenario, budget);
  std::cout << "closed form: " << closed.to_string() << "\n";
  std::cout << "oracle:      " << oracle.to_string() << "\n";
  if (closed == oracle) {
    std::cout << "MATCH\n";
    return kOk;
  }
  std::cout << "MISMATCH\n";
  return kGuaranteeViolated;
}

int run_evaluate(const std::string& raw_path, const std::string& anon_path, int queries,
                 std::uint64_t seed, std::int64_t k_param, const std::string& csv_path) {
  const MicroTable raw = read_micro_csv(raw_path);
  const PublishedTable anon = read_anonymized_csv(anon_path);
  const UtilityReport report = evaluate_utility(raw, anon, queries, seed, k_param);
  std::cout << utility_report_json(report);
  if (!csv_path.empty()) {
    const bool fresh = !std::filesystem::exists(csv_path);
    std::ofstream out(csv_path, std::ios::app);
    if (!out) {
      throw FormatError("cannot write " + csv_path);
    }
    if (fresh) {
      out << utility_report_csv_header() << "\n";
    }
    out << utility_report_csv_row(report) << "\n";
  }
  return kOk;
}

int run_schedule(int ell, const std::string& strategy, int k_prime, double alpha, int releases) {
  PrivacyParams params;
  params.ell = ell;
  if (strategy == "constant_ratio") {
    params.strategy = Strategy::kConstantRatio;
    params.k_prime = k_prime;
  } else if (strategy == "geometric") {
    params.strategy = Strategy::kGeometric;
    params.alpha = Rational::from_double(alpha);
  } else {
    std::cerr << "unknown strategy '" << strategy << "'\n";
    return kUsageError;
  }
  params.validate();
  std::cout << "k,ratio,size\n";
  for (const SchedulePoint& point : ratio_schedule(params, releases)) {
    std::printf("%d,%g,%lld\n", point.release, point.ratio.to_double(),
                static_cast<long long>(point.group_size));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial data publishing with a global privacy guarantee"};
  app.require_subcommand(1);

  std::string spec_path, out_dir;
  auto* generate = app.add_subcommand("generate", "synthesize a micro-data release series");
  generate->add_option("--spec", spec_path, "series spec JSON")->required();
  generate->add_option("--out", out_dir, "output directory")->required();

  std::string release_path, stats_path, params_path, registration_path, transient_path;
  std::string anon_out, report_path;
  auto* anonymize = app.add_subcommand("anonymize", "publish one release under the guarantee");
  anonymize->add_option("--release", release_path, "raw release CSV")->required();
  anonymize->add_option("--stats", stats_path, "statistics JSON (created if absent)")->required();
  anonymize->add_option("--params", params_path, "privacy params JSON")->required();
  anonymize->add_option("--registration", registration_path, "registration CSV")->required();
  anonymize->add_option("--transient", transient_path, "transient value list")->required();
  anonymize->add_option("--out", anon_out, "anonymized CSV output")->required();
  anonymize->add_option("--report", report_path, "report JSON output");

  std::string audit_stats;
  int audit_ell = 2;
  auto* audit = app.add_subcommand("audit", "check the guarantee over a statistics file");
  audit->add_option("--stats", audit_stats, "statistics JSON")->required();
  audit->add_option("--ell", audit_ell, "privacy parameter")->required();

  std::string scenario_path;
  std::uint64_t budget = 10'000'000;
  auto* verify = app.add_subcommand("verify", "closed form vs possible-world oracle");
  verify->add_option("--scenario", scenario_path, "scenario JSON")->required();
  verify->add_option("--budget", budget, "max worlds to enumerate");

  std::string raw_path, anon_path, eval_csv;
  int queries = 5000;
  std::uint64_t eval_seed = 0;
  std::int64_t k_param = 1;
  auto* evaluate = app.add_subcommand("evaluate", "range-query utility of a published release");
  evaluate->add_option("--raw", raw_path, "raw release CSV")->required();
  evaluate->add_option("--anon", anon_path, "anonymized CSV")->required();
  evaluate->add_option("--queries", queries, "number of range queries");
  evaluate->add_option("--seed", eval_seed, "query workload seed")->required();
  evaluate->add_option("--k-param", k_param, "normalization constant for average size");
  evaluate->add_option("--csv", eval_csv, "append the report as a CSV row here");

  int sched_ell = 2, sched_k_prime = 1, sched_releases = 1;
  double sched_alpha = 2.0;
  std::string sched_strategy;
  auto* schedule = app.add_subcommand("schedule", "planned ratio trend for linked releases");
  schedule->add_option("--ell", sched_ell, "privacy parameter")->required();
  schedule->add_option("--strategy", sched_strategy, "constant_ratio or geometric")->required();
  schedule->add_option("--k-prime", sched_k_prime, "constant-ratio horizon");
  schedule->add_option("--alpha", sched_alpha, "geometric headroom factor");
  schedule->add_option("--releases", sched_releases, "linked releases to plan")->required();

  try {
    app.parse(argc, argv);
    if (generate->parsed()) {
      return run_generate(spec_path, out_dir);
    }
    if (anonymize->parsed()) {
      return run_anonymize(release_path, stats_path, params_path, registration_path,
                           transient_path, anon_out, report_path);
    }
    if (audit->parsed()) {
      return run_audit(audit_stats, audit_ell);
    }
    if (verify->parsed()) {
      return run_verify(scenario_path, budget);
    }
    if (evaluate->parsed()) {
      return run_evaluate(raw_path, anon_path, queries, eval_seed, k_param, eval_csv);
    }
    if (schedule->parsed()) {
      return run_schedule(sched_ell, sched_strategy, sched_k_prime, sched_alpha, sched_releases);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kUsageError;
  } catch (const LockError& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  } catch (const EnumerationBudgetError& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
