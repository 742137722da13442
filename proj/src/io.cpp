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

#include "serialpriv/io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace serialpriv {

namespace {

using nlohmann::json;

// --- CSV primitives (RFC-4180 quoting, LF line endings) ---

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line, const std::string& context) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) {
    throw FormatError(context + ": unterminated quoted field");
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string join_csv(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      line += ',';
    }
    line += csv_escape(fields[i]);
  }
  return line;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    lines.push_back(line);
  }
  return lines;
}

std::int64_t parse_int(const std::string& text, const std::string& context) {
  std::int64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError(context + ": '" + text + "' is not an integer");
  }
  return value;
}

// --- version comment + typed headers ---

// "# serialpriv micro v1 release=3" -> release index
std::int32_t parse_version_line(const std::string& line, const std::string& kind,
                                bool want_release) {
  const std::string expected = "# serialpriv " + kind + " v1";
  if (line.compare(0, expected.size(), expected) != 0) {
    throw FormatError("missing or unsupported '" + kind + "' format marker");
  }
  if (!want_release) {
    return 0;
  }
  const std::string key = " release=";
  const std::size_t at = line.find(key, expected.size());
  if (at == std::string::npos) {
    throw FormatError(kind + " file is missing its release index");
  }
  return static_cast<std::int32_t>(
      parse_int(line.substr(at + key.size()), kind + " release index"));
}

std::string type_suffix(AttributeType type) {
  switch (type) {
    case AttributeType::kNumeric:
      return "num";
    case AttributeType::kString:
      return "str";
    case AttributeType::kCategorical:
      return "cat";
  }
  return "cat";
}

AttributeSpec parse_typed_attr(const std::string& field) {
  const std::size_t colon = field.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw FormatError("attribute header '" + field + "' is missing its :type suffix");
  }
  const std::string suffix = field.substr(colon + 1);
  AttributeSpec spec;
  spec.name = field.substr(0, colon);
  if (suffix == "num") {
    spec.type = AttributeType::kNumeric;
  } else if (suffix == "str") {
    spec.type = AttributeType::kString;
  } else if (suffix == "cat") {
    spec.type = AttributeType::kCategorical;
  } else {
    throw FormatError("unknown attribute type '" + suffix + "'");
  }
  return spec;
}

QidValue parse_qid_value(const std::string& field, AttributeType type,
                         const std::string& context) {
  if (type == AttributeType::kNumeric) {
    return parse_int(field, context);
  }
  return field;
}

std::string render_qid_value(const QidValue& value) {
  if (const auto* num = std::get_if<std::int64_t>(&value)) {
    return std::to_string(*num);
  }
  return std::get<std::string>(value);
}

GeneralizedValue parse_generalized(const std::string& field, AttributeType type,
                                   const std::string& context) {
  switch (type) {
    case AttributeType::kNumeric: {
      if (!field.empty() && field.front() == '[') {
        if (field.back() != ']') {
          throw FormatError(context + ": malformed range '" + field + "'");
        }
        const std::string inner = field.substr(1, field.size() - 2);
        const std::size_t comma = inner.find(',');
        if (comma == std::string::npos) {
          throw FormatError(context + ": malformed range '" + field + "'");
        }
        NumericRange range;
        range.lo = parse_int(inner.substr(0, comma), context);
        range.hi = parse_int(inner.substr(comma + 1), context);
        return range;
      }
      const std::int64_t v = parse_int(field, context);
      return NumericRange{v, v};
    }
    case AttributeType::kString: {
      if (field == "*") {
        return StringPattern{"", 0, true};
      }
      const std::size_t star = field.find('*');
      StringPattern pattern;
      pattern.length = field.size();
      pattern.prefix = star == std::string::npos ? field : field.substr(0, star);
      for (std::size_t i = pattern.prefix.size(); i < field.size(); ++i) {
        if (field[i] != '*') {
          throw FormatError(context + ": malformed pattern '" + field + "'");
        }
      }
      return pattern;
    }
    case AttributeType::kCategorical: {
      ValueSet set;
      std::size_t start = 0;
      for (;;) {
        const std::size_t slash = field.find('/', start);
        set.values.push_back(field.substr(start, slash - start));
        if (slash == std::string::npos) {
          break;
        }
        start = slash + 1;
      }
      return set;
    }
  }
  throw FormatError(context + ": unknown attribute type");
}

void check_no_separator(const std::string& text, const std::string& what) {
  if (text.find('|') != std::string::npos) {
    throw FormatError(what + " '" + text + "' may not contain '|'");
  }
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw FormatError("cannot write " + tmp.string());
    }
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

MicroTable read_micro_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.size() < 2) {
    throw FormatError(path.string() + ": missing marker or header row");
  }
  MicroTable table;
  table.release_index = parse_version_line(lines[0], "micro", true);
  const std::vector<std::string> header = csv_split(lines[1], "header");
  if (header.size() < 3 || header.front() != "id") {
    throw FormatError(path.string() + ": header must be id,<qid...>,<sensitive>");
  }
  for (std::size_t i = 1; i + 1 < header.size(); ++i) {
    table.schema.qid.push_back(parse_typed_attr(header[i]));
  }
  table.schema.sensitive_name = header.back();
  for (std::size_t row = 2; row < lines.size(); ++row) {
    if (lines[row].empty()) {
      continue;
    }
    const std::vector<std::string> fields = csv_split(lines[row], "row " + std::to_string(row));
    if (fields.size() != header.size()) {
      throw FormatError(path.string() + ": row " + std::to_string(row) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(header.size()));
    }
    MicroRecord record;
    record.individual_id = fields.front();
    for (std::size_t i = 0; i < table.schema.qid.size(); ++i) {
      record.qid.push_back(parse_qid_value(fields[i + 1], table.schema.qid[i].type,
                                           table.schema.qid[i].name));
    }
    record.sensitive = fields.back();
    table.records.push_back(std::move(record));
  }
  return table;
}

void write_micro_csv(const std::filesystem::path& path, const MicroTable& table) {
  std::ostringstream out;
  out << "# serialpriv micro v1 release=" << table.release_index << "\n";
  std::vector<std::string> header{"id"};
  for (const AttributeSpec& attr : table.schema.qid) {
    header.push_back(attr.name + ":" + type_suffix(attr.type));
  }
  header.push_back(table.schema.sensitive_name);
  out << join_csv(header) << "\n";
  std::vector<const MicroRecord*> ordered;
  for (const MicroRecord& record : table.records) {
    ordered.push_back(&record);
  }
  std::sort(ordered.begin(), ordered.end(), [](const MicroRecord* a, const MicroRecord* b) {
    return a->individual_id < b->individual_id;
  });
  for (const MicroRecord* record : ordered) {
    std::vector<std::string> fields{record->individual_id};
    for (const QidValue& value : record->qid) {
      fields.push_back(render_qid_value(value));
    }
    fields.push_back(record->sensitive);
    out << join_csv(fields) << "\n";
  }
  atomic_write(path, out.str());
}

PublishedTable read_anonymized_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.size() < 2) {
    throw FormatError(path.string() + ": missing marker or header row");
  }
  PublishedTable table;
  table.release_index = parse_version_line(lines[0], "anon", true);
  const std::vector<std::string> header = csv_split(lines[1], "header");
  if (header.size() < 4 || header.front() != "group_id" || header.back() != "virtual") {
    throw FormatError(path.string() +
                      ": header must be group_id,<qid...>,<sensitive>,virtual");
  }
  for (std::size_t i = 1; i + 2 < header.size(); ++i) {
    table.schema.qid.push_back(parse_typed_attr(header[i]));
  }
  table.schema.sensitive_name = header[header.size() - 2];

  std::int64_t expected_group = -1;
  for (std::size_t row = 2; row < lines.size(); ++row) {
    if (lines[row].empty()) {
      continue;
    }
    const std::vector<std::string> fields = csv_split(lines[row], "row " + std::to_string(row));
    if (fields.size() != header.size()) {
      throw FormatError(path.string() + ": row " + std::to_string(row) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(header.size()));
    }
    const std::int64_t group_id = parse_int(fields.front(), "group_id");
    if (group_id == expected_group + 1) {
      table.groups.emplace_back();
      expected_group = group_id;
    } else if (group_id != expected_group) {
      throw FormatError(path.string() + ": group ids must be consecutive from 0");
    }
    PublishedGroup& group = table.groups.back();
    std::vector<GeneralizedValue> qid;
    for (std::size_t i = 0; i < table.schema.qid.size(); ++i) {
      qid.push_back(parse_generalized(fields[i + 1], table.schema.qid[i].type,
                                      table.schema.qid[i].name));
    }
    if (group.generalized_qid.empty()) {
      group.generalized_qid = std::move(qid);
    }
    group.sensitive_multiset[fields[fields.size() - 2]] += 1;
    const std::string& virtual_flag = fields.back();
    if (virtual_flag == "0") {
      group.real_count += 1;
    } else if (virtual_flag == "1") {
      group.virtual_count += 1;
    } else {
      throw FormatError(path.string() + ": virtual flag must be 0 or 1");
    }
  }
  return table;
}

void write_anonymized_csv(const std::filesystem::path& path, const AnonymizedTable& table) {
  std::ostringstream out;
  out << "# serialpriv anon v1 release=" << table.release_index << "\n";
  std::vector<std::string> header{"group_id"};
  for (const AttributeSpec& attr : table.schema.qid) {
    header.push_back(attr.name + ":" + type_suffix(attr.type));
  }
  header.push_back(table.schema.sensitive_name);
  header.push_back("virtual");
  out << join_csv(header) << "\n";

  for (std::size_t g = 0; g < table.groups.size(); ++g) {
    const AnonymizedGroup& group = table.groups[g];
    std::vector<std::string> qid_fields;
    for (const GeneralizedValue& value : group.generalized_qid) {
      const std::string rendered = render_generalized(value);
      if (std::holds_alternative<ValueSet>(value) &&
          std::get<ValueSet>(value).values.size() == 1 &&
          rendered.find('/') != std::string::npos) {
        throw FormatError("categorical value '" + rendered + "' may not contain '/'");
      }
      qid_fields.push_back(rendered);
    }
    // Row order within a group carries no identity: real rows first, each
    // side in sorted value order.
    std::map<std::string, std::int64_t> real_values = group.sensitive_multiset;
    for (const std::string& value : group.virtual_values) {
      auto it = real_values.find(value);
      if (it == real_values.end() || it->second < 1) {
        throw FormatError("group multiset does not cover its virtual values");
      }
      if (--it->second == 0) {
        real_values.erase(it);
      }
    }
    std::vector<std::pair<std::string, bool>> rows;  // (value, is_virtual)
    for (const auto& [value, count] : real_values) {
      for (std::int64_t i = 0; i < count; ++i) {
        rows.emplace_back(value, false);
      }
    }
    std::vector<std::string> sorted_virtuals = group.virtual_values;
    std::sort(sorted_virtuals.begin(), sorted_virtuals.end());
    for (const std::string& value : sorted_virtuals) {
      rows.emplace_back(value, true);
    }
    for (const auto& [value, is_virtual] : rows) {
      std::vector<std::string> fields{std::to_string(g)};
      fields.insert(fields.end(), qid_fields.begin(), qid_fields.end());
      fields.push_back(value);
      fields.push_back(is_virtual ? "1" : "0");
      out << join_csv(fields) << "\n";
    }
  }
  atomic_write(path, out.str());
}

RegistrationList read_registration_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.size() < 2) {
    throw FormatError(path.string() + ": missing marker or header row");
  }
  parse_version_line(lines[0], "reg", false);
  const std::vector<std::string> header = csv_split(lines[1], "header");
  if (header.size() < 2 || header.front() != "id") {
    throw FormatError(path.string() + ": header must be id,<qid...>");
  }
  std::vector<AttributeSpec> attrs;
  for (std::size_t i = 1; i < header.size(); ++i) {
    attrs.push_back(parse_typed_attr(header[i]));
  }
  RegistrationList list;
  std::set<std::string> seen;
  for (std::size_t row = 2; row < lines.size(); ++row) {
    if (lines[row].empty()) {
      continue;
    }
    const std::vector<std::string> fields = csv_split(lines[row], "row " + std::to_string(row));
    if (fields.size() != header.size()) {
      throw FormatError(path.string() + ": row " + std::to_string(row) + " arity mismatch");
    }
    Registrant registrant;
    registrant.id = fields.front();
    if (!seen.insert(registrant.id).second) {
      throw FormatError(path.string() + ": duplicate registration id " + registrant.id);
    }
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      registrant.qid.push_back(parse_qid_value(fields[i + 1], attrs[i].type, attrs[i].name));
    }
    list.individuals.push_back(std::move(registrant));
  }
  return list;
}

void write_registration_csv(const std::filesystem::path& path, const RegistrationList& list,
                            const TableSchema& schema) {
  std::ostringstream out;
  out << "# serialpriv reg v1\n";
  std::vector<std::string> header{"id"};
  for (const AttributeSpec& attr : schema.qid) {
    header.push_back(attr.name + ":" + type_suffix(attr.type));
  }
  out << join_csv(header) << "\n";
  for (const Registrant& registrant : list.individuals) {
    std::vector<std::string> fields{registrant.id};
    for (const QidValue& value : registrant.qid) {
      fields.push_back(render_qid_value(value));
    }
    out << join_csv(fields) << "\n";
  }
  atomic_write(path, out.str());
}

std::set<std::string> read_transient_list(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) {
    throw FormatError(path.string() + ": missing marker line");
  }
  parse_version_line(lines[0], "transient", false);
  std::set<std::string> values;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (!lines[i].empty()) {
      values.insert(lines[i]);
    }
  }
  return values;
}

void write_transient_list(const std::filesystem::path& path,
                          const std::set<std::string>& values) {
  std::ostringstream out;
  out << "# serialpriv transient v1\n";
  for (const std::string& value : values) {
    out << value << "\n";
  }
  atomic_write(path, out.str());
}

LinkageHistory read_statistics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (!doc.is_object() || doc.value("version", 0) != 1 || !doc.contains("entries")) {
    throw FormatError(path.string() + ": not a version-1 statistics file");
  }
  LinkageHistory::Map entries;
  for (const auto& [key, list] : doc["entries"].items()) {
    const std::size_t bar = key.find('|');
    if (bar == std::string::npos) {
      throw FormatError(path.string() + ": malformed key '" + key + "'");
    }
    const std::string individual = key.substr(0, bar);
    const std::string value = key.substr(bar + 1);
    std::vector<HistoryEntry> history;
    std::int32_t previous = 0;
    for (const auto& item : list) {
      HistoryEntry entry;
      entry.release_index = item.at("release").get<std::int32_t>();
      entry.group_size = item.at("n").get<std::int64_t>();
      entry.value_count = item.at("n_s").get<std::int64_t>();
      if (entry.value_count < 1 || entry.value_count > entry.group_size) {
        throw FormatError(path.string() + ": entry outside 1 <= n_s <= n for '" + key + "'");
      }
      if (entry.release_index <= previous) {
        throw FormatError(path.string() + ": releases not strictly increasing for '" + key + "'");
      }
      previous = entry.release_index;
      history.push_back(entry);
    }
    entries.emplace(LinkageHistory::Key(individual, value), std::move(history));
  }
  return LinkageHistory(std::move(entries));
}

void write_statistics(const std::filesystem::path& path, const LinkageHistory& history) {
  json entries = json::object();
  for (const auto& [key, list] : history.all()) {
    check_no_separator(key.first, "individual id");
    check_no_separator(key.second, "sensitive value");
    json items = json::array();
    for (const HistoryEntry& entry : list) {
      items.push_back({{"release", entry.release_index},
                       {"n", entry.group_size},
                       {"n_s", entry.value_count}});
    }
    entries[key.first + "|" + key.second] = std::move(items);
  }
  json doc{{"version", 1}, {"entries", std::move(entries)}};
  atomic_write(path, doc.dump(2) + "\n");
}

StatsLock::StatsLock(const std::filesystem::path& stats_path)
    : lock_path_(stats_path.string() + ".lock") {
  const int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    throw LockError("statistics file is locked by another process: " + lock_path_.string());
  }
  ::close(fd);
}

StatsLock::~StatsLock() {
  std::error_code ec;
  std::filesystem::remove(lock_path_, ec);
}

PrivacyParams read_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (!doc.is_object() || doc.value("version", 0) != 1) {
    throw FormatError(path.string() + ": not a version-1 params file");
  }
  PrivacyParams params;
  try {
    params.ell = doc.at("ell").get<int>();
    const std::string strategy = doc.at("strategy").get<std::string>();
    if (strategy == "constant_ratio") {
      params.strategy = Strategy::kConstantRatio;
      params.k_prime = doc.at("k_prime").get<int>();
    } else if (strategy == "geometric") {
      params.strategy = Strategy::kGeometric;
      params.alpha = Rational::from_double(doc.at("alpha").get<double>());
    } else {
      throw FormatError(path.string() + ": unknown strategy '" + strategy + "'");
    }
    params.seed = doc.value("seed", 0ull);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return params;
}

void write_params(const std::filesystem::path& path, const PrivacyParams& params) {
  json doc{{"version", 1}, {"ell", params.ell}, {"seed", params.seed}};
  if (params.strategy == Strategy::kConstantRatio) {
    doc["strategy"] = "constant_ratio";
    doc["k_prime"] = params.k_prime;
  } else {
    doc["strategy"] = "geometric";
    doc["alpha"] = params.alpha.to_double();
  }
  atomic_write(path, doc.dump(2) + "\n");
}

SeriesSpec read_series_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (!doc.is_object() || doc.value("version", 0) != 1) {
    throw FormatError(path.string() + ": not a version-1 series spec");
  }
  SeriesSpec spec;
  try {
    spec.total_records = doc.value("total_records", spec.total_records);
    spec.num_releases = doc.value("num_releases", spec.num_releases);
    spec.carry_fraction = doc.value("carry_fraction", spec.carry_fraction);
    spec.resample_fraction = doc.value("resample_fraction", spec.resample_fraction);
    spec.transient_quantile = doc.value("transient_quantile", spec.transient_quantile);
    spec.domain_size = doc.value("domain_size", spec.domain_size);
    spec.zipf_exponent = doc.value("zipf_exponent", spec.zipf_exponent);
    spec.registration_pool_size = doc.value("registration_pool_size", spec.registration_pool_size);
    spec.seed = doc.value("seed", spec.seed);
    if (doc.contains("explicit_frequencies")) {
      spec.explicit_frequencies = doc["explicit_frequencies"].get<std::vector<double>>();
    }
    if (doc.contains("qid")) {
      for (const auto& item : doc["qid"]) {
        QidGenSpec attr;
        attr.name = item.at("name").get<std::string>();
        const std::string type = item.at("type").get<std::string>();
        if (type == "categorical") {
          attr.type = AttributeType::kCategorical;
          attr.values = item.at("values").get<std::vector<std::string>>();
        } else if (type == "string") {
          attr.type = AttributeType::kString;
          attr.digits = item.value("digits", attr.digits);
        } else if (type == "numeric") {
          attr.type = AttributeType::kNumeric;
          attr.lo = item.value("lo", attr.lo);
          attr.hi = item.value("hi", attr.hi);
        } else {
          throw FormatError(path.string() + ": unknown attribute type '" + type + "'");
        }
        spec.qid.push_back(std::move(attr));
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return spec;
}

void write_report(const std::filesystem::path& path, const AnonymizationReport& report) {
  json doc{{"version", 1},
           {"release", report.release_index},
           {"group_sizes", report.group_sizes},
           {"suppressed", report.suppressed_ids},
           {"virtual_members", report.virtual_member_count},
           {"duration_ms", report.duration_ms}};
  atomic_write(path, doc.dump(2) + "\n");
}

std::string utility_report_json(const UtilityReport& report) {
  json doc{{"version", 1},
           {"average_relative_error", report.average_relative_error},
           {"average_group_size", report.average_group_size},
           {"max_group_size", report.max_group_size},
           {"discernability", report.discernability},
           {"normalized_average_size", report.normalized_average_size},
           {"query_count", report.query_count}};
  return doc.dump(2) + "\n";
}

std::string utility_report_csv_header() {
  return "average_relative_error,average_group_size,max_group_size,discernability,"
         "normalized_average_size,query_count";
}

std::string utility_report_csv_row(const UtilityReport& report) {
  std::ostringstream out;
  out << report.average_relative_error << ',' << report.average_group_size << ','
      << report.max_group_size << ',' << report.discernability << ','
      << report.normalized_average_size << ',' << report.query_count;
  return out.str();
}

}  // namespace serialpriv
