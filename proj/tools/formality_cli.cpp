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

// Command-line entry point: convert, score, report, split, train-demo.
//
// Option values are layered: command line, then FORMALITY_* environment
// variables, then a flat key=value --config file, then built-in defaults.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdlib.h>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "formality/errors.hpp"
#include "formality/harness.hpp"
#include "formality/kernels.hpp"

namespace {

using namespace formality;

std::string env_name(const std::string& flag) {
  std::string out = "FORMALITY_";
  for (char c : flag) {
    out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path, "cannot open config file");
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(path, n, "expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw FormatError(path, n, "empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

// --config may appear anywhere on the command line or in FORMALITY_CONFIG.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  if (const char* env = std::getenv("FORMALITY_CONFIG")) return env;
  return {};
}

template <typename T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  return app->add_option("--" + name, target, help)->envname(env_name(name));
}

void add_resource_options(CLI::App* app, RunConfig& cfg) {
  flag(app, "corpus", cfg.corpus, "ParsMap TSV corpus");
  flag(app, "rules", cfg.rules, "conversion rules TSV");
  flag(app, "trigram-corpus", cfg.trigram_corpus, "formal text, one sentence per line");
  flag(app, "lexicon", cfg.lexicon, "alignment lexicon TSV (built from --corpus when absent)");
}

// Config values enter through the environment without overwriting it, so a
// variable that is already set wins over the file and a flag wins over both.
void apply_config(CLI::App& app, const std::map<std::string, std::string>& values,
                  const std::string& path) {
  std::vector<CLI::App*> apps{&app};
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) apps.push_back(sub);
  for (const auto& [key, value] : values) {
    const bool known = std::any_of(apps.begin(), apps.end(), [&](CLI::App* a) {
      return a->get_option_no_throw("--" + key) != nullptr;
    });
    if (!known || key == "config") {
      throw FormatError(path, 0, "unknown config key '" + key + "'");
    }
    ::setenv(env_name(key).c_str(), value.c_str(), 0);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Informal to formal Persian conversion and evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file")->envname("FORMALITY_CONFIG");
  std::string kernels = "auto";
  flag(&app, "kernels", kernels, "dense kernel variant: auto, scalar or avx2");

  RunConfig cfg;

  auto* convert = app.add_subcommand("convert", "convert informal sentences, one per line");
  std::string engine = "rules", in_path, out_path;
  flag(convert, "engine", engine, "rules or dict")->check(CLI::IsMember({"rules", "dict"}));
  flag(convert, "in", in_path, "input file")->required();
  flag(convert, "out", out_path, "output file")->required();
  add_resource_options(convert, cfg);

  auto* score = app.add_subcommand("score", "score system outputs against a test corpus");
  std::string test_path;
  std::vector<std::string> systems;
  flag(score, "test", test_path, "test corpus (ParsMap TSV)")->required();
  flag(score, "system", systems, "NAME=FILE, one converted sentence per line")->required();
  flag(score, "out", cfg.out_dir, "output directory");
  flag(score, "corpus", cfg.corpus, "training corpus for the RSW vocabulary");
  flag(score, "lexicon", cfg.lexicon, "alignment lexicon for the RSW vocabulary");
  flag(score, "tagger", cfg.tagger, "lexicon or sidecar")->check(CLI::IsMember({"lexicon", "sidecar"}));
  flag(score, "tag-lexicon", cfg.tag_lexicon, "word<TAB>TAG lexicon for the lexicon tagger");
  flag(score, "sidecar", cfg.sidecars, "token/TAG sidecar file (default FILE.tags per input)");
  flag(score, "threshold", cfg.threshold, "short/long length threshold")->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "render score reports");
  std::string report_in, report_format = "markdown", report_out;
  flag(report, "in", report_in, "score directory or report file")->required();
  flag(report, "format", report_format, "tsv, json or markdown")
      ->check(CLI::IsMember({"tsv", "json", "markdown"}));
  flag(report, "out", report_out, "output file (default stdout)");

  auto* split = app.add_subcommand("split", "split a corpus into train/test and short/long");
  std::string split_corpus;
  flag(split, "corpus", split_corpus, "ParsMap TSV corpus")->required();
  flag(split, "seed", cfg.seed, "shuffle seed");
  flag(split, "threshold", cfg.threshold, "short/long length threshold")->check(CLI::PositiveNumber);
  flag(split, "out-dir", cfg.out_dir, "output directory");

  auto* demo = app.add_subcommand("train-demo", "consistency vs supervised training on a toy task");
  TrainConfig train;
  std::string log_path, table_path;
  flag(demo, "seed", train.seed, "data, initialization and perturbation seed");
  flag(demo, "steps", train.steps, "training steps per run")->check(CLI::NonNegativeNumber);
  flag(demo, "lr", train.learning_rate, "learning rate")->check(CLI::PositiveNumber);
  flag(demo, "width", train.width, "model width")->check(CLI::PositiveNumber);
  flag(demo, "eps", train.eps, "epsilon of the weighting formula")->check(CLI::PositiveNumber);
  flag(demo, "log", log_path, "JSON-lines training log (default stdout)");
  flag(demo, "table", table_path, "comparison table (default stdout)");

  const std::string preset = find_config_path(argc, argv);
  if (!preset.empty()) apply_config(app, read_config(preset), preset);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (kernels != "auto") {
    if (!formality::kernels::select(kernels)) {
      throw ResourceError("kernels", "variant '" + kernels + "' is not available on this CPU");
    }
  }

  if (*convert) {
    const auto n = cmd_convert(parse_engine(engine), in_path, out_path, cfg);
    std::cerr << "converted " << n << " sentences\n";
  } else if (*score) {
    const auto result = cmd_score(test_path, systems, cfg);
    std::cout << to_markdown(result.reports);
  } else if (*report) {
    const std::string text = cmd_report(report_in, parse_report_format(report_format));
    if (report_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(report_out);
      if (!out) throw ResourceError(report_out, "cannot open output file");
      out << text;
    }
  } else if (*split) {
    const auto paths = cmd_split(split_corpus, cfg);
    std::cout << paths.train << '\n' << paths.test << '\n'
              << paths.short_set << '\n' << paths.long_set << '\n';
  } else if (*demo) {
    std::ofstream log_file;
    if (!log_path.empty()) {
      log_file.open(log_path);
      if (!log_file) throw ResourceError(log_path, "cannot open log file");
    }
    const auto result = cmd_train_demo(train, log_path.empty() ? std::cout : log_file);
    const std::string table = train_demo_table(result);
    if (table_path.empty()) {
      std::cout << table;
    } else {
      std::ofstream out(table_path);
      if (!out) throw ResourceError(table_path, "cannot open output file");
      out << table;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const formality::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const formality::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const formality::DivergenceError& e) {
    std::cerr << "error: training diverged at " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
