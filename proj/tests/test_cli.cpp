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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include "conelab/checks.hpp"

using namespace conelab;

namespace {

const std::string kTheories = CONELAB_THEORY_DIR;

int run_cli(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + " " + CONELAB_BIN + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const CheckRecord* find(const Report& r, const std::string& check) {
  for (const CheckRecord& c : r.records)
    if (c.check == check) return &c;
  return nullptr;
}

double residual(const CheckRecord& c, const std::string& name) {
  for (const auto& [k, v] : c.residuals)
    if (k == name) return v;
  FAIL("missing residual " << name);
  return 0;
}

std::string fact(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.facts)
    if (k == key) return v;
  return {};
}

const char* kSquare = R"({
  "name": "s", "dim": 3, "backend": {"kind": "polyhedral"},
  "effect_generators": [[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]],
  "unit_effect": [0, 0, 1],
  "reference_observable": [[0.25, 0, 0.25], [0, 0.25, 0.25], [-0.25, -0.25, 0.5]],
  "transformation_generators": []
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

void check_parse_error(const std::string& text, const std::string& field) {
  try {
    parse_theory(text);
    FAIL("accepted a bad document; expected an error on " << field);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(field) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("theory documents parse") {
  LoadedTheory t = parse_theory(kSquare);
  CHECK(t.system.dim == 3);
  CHECK(validate(t.system).ok());
  CHECK_FALSE(t.composite_override);

  LoadedTheory q = load_theory(kTheories + "/qubit.json");
  CHECK(q.system.dim == 4);
  CHECK(q.system.kraus_frame.size() == 4);
  REQUIRE(q.composite_override);
  REQUIRE(q.designated_phi);
  CHECK(validate(q.system).ok());
}

TEST_CASE("parse errors name the field") {
  check_parse_error("{\"name\": ", "syntax error");
  check_parse_error(replace(kSquare, "\"dim\": 3,", ""), "'dim'");
  check_parse_error(replace(kSquare, "[0, 0, 1],", "[0, 1],"), "'unit_effect'");
  check_parse_error(replace(kSquare, "0.25, 0, 0.25]", "0.25, 0, 1e999]"), "overflow");
  check_parse_error(replace(kSquare, "\"polyhedral\"", "\"simplex\""), "'backend.kind'");
  check_parse_error(replace(kSquare, "\"transformation_generators\": []",
                            "\"transformation_generators\": [[1, 0, 0]]"),
                    "transformation_generators[0]");
  check_parse_error(replace(kSquare, "[1, 0, 1], [-1, 0, 1]", "[1, 0, 1], [-1, 0, \"x\"]"),
                    "effect_generators[1][2]");
  CHECK_THROWS_AS(load_theory("quantum:9"), ParseError);
  CHECK_THROWS_AS(load_theory(kTheories + "/missing.json"), ParseError);
}

TEST_CASE("check quantum:2 all passes with alpha one quarter") {
  Report r = run_check(load_theory("quantum:2"), "quantum:2", "all", {});
  CHECK(r.overall() == Outcome::pass);
  for (const CheckRecord& c : r.records) {
    CHECK_MESSAGE(c.outcome == Outcome::pass, c.check);
    CHECK_FALSE(c.anchor.empty());
  }
  const CheckRecord* fe = find(r, "faithful effect exists");
  REQUIRE(fe);
  CHECK(std::abs(residual(*fe, "alpha") - 0.25) < 1e-9);
}

TEST_CASE("file qubit behaves like the builtin") {
  Report r = run_check(load_theory(kTheories + "/qubit.json"), "qubit", "all", {});
  CHECK(r.overall() == Outcome::pass);
  const CheckRecord* fe = find(r, "faithful effect exists");
  REQUIRE(fe);
  CHECK(std::abs(residual(*fe, "alpha") - 0.25) < 1e-9);
  Report rec = run_reconstruct(load_theory(kTheories + "/qubit.json"), "qubit", {});
  CHECK(fact(rec, "verdict") == "quantum");
  CHECK(fact(rec, "hilbert_dim") == "2");
}

TEST_CASE("gbit faithe fails with an infeasibility witness") {
  Report r = run_check(load_theory("gbit"), "gbit", "faithe", {});
  CHECK(r.overall() == Outcome::fail);
  const CheckRecord* fe = find(r, "faithful effect exists");
  REQUIRE(fe);
  CHECK(fe->outcome == Outcome::fail);
  CHECK(fe->witness.find("LP infeasible") != std::string::npos);
  CHECK(fe->witness.find("minimal tensor product") != std::string::npos);
}

TEST_CASE("classical:2 purify fails at the mixed state") {
  Report r = run_check(load_theory("classical:2"), "classical:2", "purify", {});
  const CheckRecord* p = find(r, "every state has a pure purification");
  REQUIRE(p);
  CHECK(p->outcome == Outcome::fail);
  CHECK(p->witness.find("[0.5, 0.5]") != std::string::npos);
}

TEST_CASE("missing prerequisites are not applicable") {
  Report r = run_check(load_theory("classical:2"), "classical:2", "faithe", {});
  REQUIRE(!r.records.empty());
  for (const CheckRecord& c : r.records) CHECK(c.outcome == Outcome::not_applicable);
  CHECK(r.overall() == Outcome::pass);
  Report cj = run_check(load_theory("gbit"), "gbit", "cj", {});
  for (const CheckRecord& c : cj.records) CHECK(c.outcome == Outcome::not_applicable);
}

TEST_CASE("reconstruct verdicts") {
  CheckOptions o;
  Report q = run_reconstruct(load_theory("quantum:2"), "quantum:2", o);
  CHECK(fact(q, "verdict") == "quantum");
  CHECK(fact(q, "block_dims") == "4");
  Report c = run_reconstruct(load_theory("classical:3"), "classical:3", o);
  CHECK(fact(c, "verdict") == "hybrid");
  CHECK(fact(c, "block_dims") == "1,1,1");
  Report g = run_reconstruct(load_theory("gbit"), "gbit", o);
  CHECK(fact(g, "verdict") == "not-quantum");
}

TEST_CASE("compose reports") {
  Report g = run_compose(load_theory("gbit"), load_theory("gbit"), "gbit gbit", {});
  CHECK(g.overall() == Outcome::pass);
  CHECK(fact(g, "extremal_states") == "24");
  Report q = run_compose(load_theory("quantum:2"), load_theory("quantum:2"), "q q", {});
  CHECK(fact(q, "provenance") == "explicit override");
  CHECK_THROWS_AS(run_compose(load_theory("quantum:2"), load_theory("gbit"), "", {}),
                  InvalidArgument);
}

TEST_CASE("structured reports are deterministic") {
  CheckOptions o;
  o.seed = 11;
  o.samples = 50;
  for (const char* name : {"gbit", "quantum:2", "classical:3"}) {
    LoadedTheory t = load_theory(name);
    const std::string a = render_structured(run_full_report(t, name, o));
    const std::string b = render_structured(run_full_report(t, name, o));
    CHECK(a == b);
    CHECK(a.find("\"overall\"") != std::string::npos);
  }
}

TEST_CASE("exit codes") {
  CHECK(run_cli("validate quantum:2") == 0);
  CHECK(run_cli("validate " + kTheories + "/non_summing_observable.json") == 2);
  CHECK(run_cli("validate " + kTheories + "/malformed.json") == 1);
  CHECK(run_cli("check gbit --postulate=faithe") == 2);
  CHECK(run_cli("check quantum:2 --postulate=all --seed 3 --samples 20") == 0);
  CHECK(run_cli("check gbit --postulate=bogus") == 1);
  CHECK(run_cli("reconstruct gbit --format=structured") == 0);
  CHECK(run_cli("compose gbit gbit") == 0);
  CHECK(run_cli("report classical:2") == 2);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("validate gbit", "CONELAB_TOLERANCE=x") == 1);
  CHECK(run_cli("validate gbit", "CONELAB_TOLERANCE=1e-7") == 0);
}
