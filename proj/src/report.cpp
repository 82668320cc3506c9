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

#include "conelab/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace conelab {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass:
      return "pass";
    case Outcome::fail:
      return "fail";
    case Outcome::not_applicable:
      return "not-applicable";
  }
  return "fail";
}

Outcome Report::overall() const {
  for (const CheckRecord& r : records)
    if (r.outcome == Outcome::fail) return Outcome::fail;
  return Outcome::pass;
}

void Report::append(const Report& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
  facts.insert(facts.end(), other.facts.begin(), other.facts.end());
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << r.command << " " << r.subject << "\n";
  for (const auto& [k, v] : r.facts) out << "  " << k << ": " << v << "\n";
  for (const CheckRecord& c : r.records) {
    out << "[" << to_string(c.outcome) << "] " << c.check << "\n";
    out << "    anchor: " << c.anchor << "\n";
    for (const auto& [k, v] : c.residuals) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6g", v);
      out << "    " << k << " = " << buf << "\n";
    }
    if (!c.witness.empty()) out << "    witness: " << c.witness << "\n";
  }
  out << "overall: " << to_string(r.overall()) << "\n";
  return out.str();
}

std::string render_structured(const Report& r) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["command"] = r.command;
  doc["subject"] = r.subject;
  json facts = json::object();
  for (const auto& [k, v] : r.facts) facts[k] = v;
  doc["facts"] = facts;
  json recs = json::array();
  for (const CheckRecord& c : r.records) {
    json rec;
    rec["check"] = c.check;
    rec["anchor"] = c.anchor;
    rec["outcome"] = to_string(c.outcome);
    json res = json::object();
    for (const auto& [k, v] : c.residuals) res[k] = v;
    rec["residuals"] = res;
    rec["witness"] = c.witness;
    recs.push_back(rec);
  }
  doc["records"] = recs;
  doc["overall"] = to_string(r.overall());
  return doc.dump(2) + "\n";
}

}  // namespace conelab
