// Copyright 2026 The conelab Authors
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

#include <string>
#include <utility>
#include <vector>

namespace conelab {

enum class Outcome { pass, fail, not_applicable };
std::string to_string(Outcome o);

struct CheckRecord {
  std::string check;
  std::string anchor;
  Outcome outcome = Outcome::pass;
  std::vector<std::pair<std::string, double>> residuals;  // in insertion order
  std::string witness;
};

struct Report {
  std::string command;
  std::string subject;
  std::vector<CheckRecord> records;
  // Extra named values such as a verdict or block sizes.
  std::vector<std::pair<std::string, std::string>> facts;

  // fail if any record fails, pass otherwise.
  Outcome overall() const;
  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void append(const Report& other);
};

std::string render_text(const Report& r);
std::string render_structured(const Report& r);

}  // namespace conelab
