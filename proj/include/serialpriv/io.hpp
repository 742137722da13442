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

#ifndef SERIALPRIV_IO_HPP_
#define SERIALPRIV_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "serialpriv/anonymizer.hpp"
#include "serialpriv/model.hpp"
#include "serialpriv/series_gen.hpp"
#include "serialpriv/utility.hpp"

namespace serialpriv {

struct FormatError : std::runtime_error {
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

struct LockError : std::runtime_error {
  explicit LockError(const std::string& what) : std::runtime_error(what) {}
};

// Micro-data CSV: a `# serialpriv micro v1 release=<k>` comment line, then a
// header `id,<attr:type>...,<sensitive>` with type suffixes num/str/cat, then
// one RFC-4180 row per record. Rows are written in individual-id order.
MicroTable read_micro_csv(const std::filesystem::path& path);
void write_micro_csv(const std::filesystem::path& path, const MicroTable& table);

// Published-table CSV: a `# serialpriv anon v1 release=<k>` comment line, a
// header `group_id,<attr:type>...,<sensitive>,virtual`, then one row per
// tuple. Group membership is reconstructable from group_id; individual ids
// do not appear.
PublishedTable read_anonymized_csv(const std::filesystem::path& path);
void write_anonymized_csv(const std::filesystem::path& path, const AnonymizedTable& table);

// Registration roster CSV: `# serialpriv reg v1`, header `id,<attr:type>...`.
RegistrationList read_registration_csv(const std::filesystem::path& path);
void write_registration_csv(const std::filesystem::path& path, const RegistrationList& list,
                            const TableSchema& schema);

// Transient value list: `# serialpriv transient v1`, one value per line.
std::set<std::string> read_transient_list(const std::filesystem::path& path);
void write_transient_list(const std::filesystem::path& path, const std::set<std::string>& values);

// Statistics file: versioned JSON mapping "individual|value" to the ordered
// linked releases. Writing is atomic (temp file + rename). Ids and values
// containing '|' are refused.
LinkageHistory read_statistics(const std::filesystem::path& path);
void write_statistics(const std::filesystem::path& path, const LinkageHistory& history);

// Advisory lock guarding a statistics file against concurrent writers.
class StatsLock {
 public:
  explicit StatsLock(const std::filesystem::path& stats_path);
  ~StatsLock();
  StatsLock(const StatsLock&) = delete;
  StatsLock& operator=(const StatsLock&) = delete;

 private:
  std::filesystem::path lock_path_;
};

PrivacyParams read_params(const std::filesystem::path& path);
void write_params(const std::filesystem::path& path, const PrivacyParams& params);

SeriesSpec read_series_spec(const std::filesystem::path& path);

void write_report(const std::filesystem::path& path, const AnonymizationReport& report);

std::string utility_report_json(const UtilityReport& report);
std::string utility_report_csv_header();
std::string utility_report_csv_row(const UtilityReport& report);

}  // namespace serialpriv

#endif  // SERIALPRIV_IO_HPP_
