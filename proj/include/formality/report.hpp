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

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace formality {

/// One row of a results table. A score is absent when it is undefined for
/// the set (no sentences, or no reference RSWs).
struct MetricReport {
  std::string system;
  std::string test_set;
  std::size_t sentences = 0;
  std::optional<double> bleu;
  std::optional<double> rouge1;
  std::optional<double> rouge_l;
  std::optional<double> rsw;
  std::optional<double> tms;
  std::optional<double> fti;
  std::size_t zwnj_mismatches = 0;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// Sets fti from the row's own rsw and tms; absent if either is absent.
void recompute_fti(MetricReport& report);

/// |fti - harmonic_mean(rsw, tms)| <= tolerance, or all three absent.
bool fti_consistent(const MetricReport& report, double tolerance = 1e-9);

struct FtiCheck {
  std::string system;
  double rsw = 0.0;
  double tms = 0.0;
  double printed = 0.0;
  double recomputed = 0.0;
  double residual() const { return recomputed - printed; }
};

/// Recomputes FTI for every row carrying rsw, tms and a stored fti.
std::vector<FtiCheck> check_fti(std::span<const MetricReport> reports);

std::string to_tsv(std::span<const MetricReport> reports);
std::string to_json(std::span<const MetricReport> reports);
std::string to_markdown(std::span<const MetricReport> reports);

/// Throws FormatError naming the source and line.
std::vector<MetricReport> parse_tsv(std::istream& in, const std::string& source);
std::vector<MetricReport> parse_json(std::istream& in, const std::string& source);

/// Dispatches on the extension (.tsv or .json).
std::vector<MetricReport> load_reports(const std::string& path);

}  // namespace formality
