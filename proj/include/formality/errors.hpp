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

#include <stdexcept>
#include <string>

namespace formality {

// Malformed input data (corpus rows, rules, sidecars, snapshots).
// Maps to CLI exit code 2.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string source, std::size_t line, const std::string& reason)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + reason),
        source_(std::move(source)),
        line_(line),
        reason_(reason) {}
  explicit FormatError(const std::string& reason)
      : std::runtime_error(reason), line_(0), reason_(reason) {}

  const std::string& source() const { return source_; }
  // 1-based line number, 0 when not tied to a line.
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string reason_;
};

// A file or resource that could not be opened. Exit code 3.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::string resource, const std::string& what)
      : std::runtime_error(resource + ": " + what), resource_(std::move(resource)) {}
  const std::string& resource() const { return resource_; }

 private:
  std::string resource_;
};

// Training produced a non-finite loss. Exit code 4.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(long step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace formality
