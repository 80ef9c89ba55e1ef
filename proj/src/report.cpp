// Copyright 2026 The Formality Transfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "formality/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "formality/errors.hpp"
#include "formality/metrics.hpp"
#include "formality/unicode.hpp"

namespace formality {

using unicode::ends_with;
using unicode::split;
namespace {

using nlohmann::json;

constexpr const char* kTsvHeader =
    "system\ttest_set\tsentences\tbleu\trouge1\trouge_l\trsw\ttms\tfti\tzwnj_mismatches";
constexpr const char* kAbsent = "NA";

std::string format_exact(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_exact(*v) : std::string(kAbsent);
}

std::string format_cell(const std::optional<double>& v) {
  if (!v) return "n/a";
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << *v;
  return os.str();
}

std::optional<double> parse_optional(const std::string& s, const std::string& source,
                                     std::size_t line, const char* field) {
  if (s == kAbsent) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw FormatError(source, line, std::string("bad value for ") + field + ": '" + s + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& s, const std::string& source, std::size_t line,
                        const char* field) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw FormatError(source, line, std::string("bad count for ") + field + ": '" + s + "'");
  }
  return v;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& row, const char* key) {
  const auto it = row.find(key);
  if (it == row.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw FormatError(std::string("field '") + key + "' is not a number");
  return it->get<double>();
}

}  // namespace

void recompute_fti(MetricReport& report) {
  if (report.rsw && report.tms) {
    report.fti = fti(*report.rsw, *report.tms);
  } else {
    report.fti.reset();
  }
}

bool fti_consistent(const MetricReport& report, double tolerance) {
  if (!report.rsw || !report.tms) return !report.fti;
  if (!report.fti) return false;
  return std::abs(*report.fti - fti(*report.rsw, *report.tms)) <= tolerance;
}

std::vector<FtiCheck> check_fti(std::span<const MetricReport> reports) {
  std::vector<FtiCheck> out;
  for (const auto& r : reports) {
    if (!r.rsw || !r.tms || !r.fti) continue;
    out.push_back({r.system, *r.rsw, *r.tms, *r.fti, fti(*r.rsw, *r.tms)});
  }
  return out;
}

std::string to_tsv(std::span<const MetricReport> reports) {
  std::ostringstream os;
  os << kTsvHeader << '\n';
  for (const auto& r : reports) {
    os << r.system << '\t' << r.test_set << '\t' << r.sentences << '\t'
       << format_optional(r.bleu) << '\t' << format_optional(r.rouge1) << '\t'
       << format_optional(r.rouge_l) << '\t' << format_optional(r.rsw) << '\t'
       << format_optional(r.tms) << '\t' << format_optional(r.fti) << '\t'
       << r.zwnj_mismatches << '\n';
  }
  return os.str();
}

std::vector<MetricReport> parse_tsv(std::istream& in, const std::string& source) {
  std::vector<MetricReport> out;
  std::string line;
  std::size_t n = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kTsvHeader) throw FormatError(source, n, "missing report header");
      header = true;
      continue;
    }
    const auto cols = split(line, "\t");
    if (cols.size() != 10) {
      throw FormatError(source, n, "expected 10 columns, found " + std::to_string(cols.size()));
    }
    MetricReport r;
    r.system = cols[0];
    r.test_set = cols[1];
    if (r.system.empty()) throw FormatError(source, n, "empty system name");
    r.sentences = parse_count(cols[2], source, n, "sentences");
    r.bleu = parse_optional(cols[3], source, n, "bleu");
    r.rouge1 = parse_optional(cols[4], source, n, "rouge1");
    r.rouge_l = parse_optional(cols[5], source, n, "rouge_l");
    r.rsw = parse_optional(cols[6], source, n, "rsw");
    r.tms = parse_optional(cols[7], source, n, "tms");
    r.fti = parse_optional(cols[8], source, n, "fti");
    r.zwnj_mismatches = parse_count(cols[9], source, n, "zwnj_mismatches");
    out.push_back(std::move(r));
  }
  if (!header) throw FormatError(source, n, "missing report header");
  return out;
}

std::string to_json(std::span<const MetricReport> reports) {
  json rows = json::array();
  for (const auto& r : reports) {
    rows.push_back({{"system", r.system},
                    {"test_set", r.test_set},
                    {"sentences", r.sentences},
                    {"bleu", optional_json(r.bleu)},
                    {"rouge1", optional_json(r.rouge1)},
                    {"rouge_l", optional_json(r.rouge_l)},
                    {"rsw", optional_json(r.rsw)},
                    {"tms", optional_json(r.tms)},
                    {"fti", optional_json(r.fti)},
                    {"zwnj_mismatches", r.zwnj_mismatches}});
  }
  return rows.dump(2) + "\n";
}

std::vector<MetricReport> parse_json(std::istream& in, const std::string& source) {
  json rows;
  try {
    rows = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(source, 0, e.what());
  }
  if (!rows.is_array()) throw FormatError(source, 0, "expected an array of reports");
  std::vector<MetricReport> out;
  for (const auto& row : rows) {
    try {
      if (!row.is_object()) throw FormatError("report is not an object");
      MetricReport r;
      r.system = row.at("system").get<std::string>();
      r.test_set = row.at("test_set").get<std::string>();
      r.sentences = row.value("sentences", std::size_t{0});
      r.bleu = optional_from(row, "bleu");
      r.rouge1 = optional_from(row, "rouge1");
      r.rouge_l = optional_from(row, "rouge_l");
      r.rsw = optional_from(row, "rsw");
      r.tms = optional_from(row, "tms");
      r.fti = optional_from(row, "fti");
      r.zwnj_mismatches = row.value("zwnj_mismatches", std::size_t{0});
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw FormatError(source, 0, e.what());
    } catch (const FormatError& e) {
      throw FormatError(source, 0, e.reason());
    }
  }
  return out;
}

std::string to_markdown(std::span<const MetricReport> reports) {
  std::vector<std::string> sets;
  for (const std::string s : {"aggregated", "short", "long"}) {
    for (const auto& r : reports) {
      if (r.test_set == s) {
        sets.push_back(s);
        break;
      }
    }
  }
  for (const auto& r : reports) {
    if (std::find(sets.begin(), sets.end(), r.test_set) == sets.end()) sets.push_back(r.test_set);
  }

  std::ostringstream os;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i > 0) os << '\n';
    os << "### Test set: " << sets[i] << "\n\n";
    os << "| Model | BLEU Score | Rouge-L | RSW Score | Tag Matching Score (TMS) | "
          "Formality Style Index (FTI) | Rouge-1 [^r1] |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : reports) {
      if (r.test_set != sets[i]) continue;
      os << "| " << r.system << " | " << format_cell(r.bleu) << " | " << format_cell(r.rouge_l)
         << " | " << format_cell(r.rsw) << " | " << format_cell(r.tms) << " | "
         << format_cell(r.fti) << " | " << format_cell(r.rouge1) << " |\n";
    }
  }
  if (!sets.empty()) {
    os << "\n[^r1]: Rouge-1 (unigram F1) is reported in addition to the standard columns.\n";
  }
  return os.str();
}

std::vector<MetricReport> load_reports(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path, "cannot open report file");
  if (ends_with(path, ".json")) return parse_json(in, path);
  if (ends_with(path, ".tsv")) return parse_tsv(in, path);
  throw FormatError(path, 0, "unknown report extension (expected .tsv or .json)");
}

}  // namespace formality
