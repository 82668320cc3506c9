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

#include <cmath>

#include "conelab/builtins.hpp"
#include "conelab/faithful.hpp"
#include "conelab/operators.hpp"
#include "conelab/sampling.hpp"

using namespace conelab;

namespace {

const cplx kI(0.0, 1.0);

CMat hadamard_phase() {
  CMat u(2, 2);
  u << 1, kI, 1, -kI;
  return u / std::sqrt(2.0);
}

bool record_ok(const ValidationReport& r, const std::string& name) {
  for (const auto& x : r.records)
    if (x.invariant == name) return x.ok;
  FAIL("missing record " << name);
  return false;
}

// Largest CHSH value over the four sign placements, from fiducial outcomes.
double chsh(const Vec& omega) {
  double e[2][2];
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      e[x][y] = 0;
      for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
          Vec fa = Vec::Zero(3), fc = Vec::Zero(3);
          fa(x) = a == 0 ? 0.5 : -0.5;
          fa(2) = 0.5;
          fc(y) = c == 0 ? 0.5 : -0.5;
          fc(2) = 0.5;
          e[x][y] += (a == c ? 1.0 : -1.0) * omega.dot(kron(fa, fc));
        }
      }
    }
  }
  double best = 0;
  for (int flip = 0; flip < 4; ++flip) {
    double s = 0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) s += ((x * 2 + y) == flip ? -1.0 : 1.0) * e[x][y];
    best = std::max(best, std::abs(s));
  }
  return best;
}

struct Fixture {
  BuiltinSpec spec;
  BipartiteSystem bip;
  Vec phi;
};

Fixture fixture(const char* name) {
  Fixture f{parse_builtin(name), {}, {}};
  f.bip = builtin_composite(f.spec);
  if (f.spec.designated_pfaith_candidate) {
    f.phi = *f.spec.designated_pfaith_candidate;
  } else {
    auto r = find_pfaith_state(f.bip);
    REQUIRE(r.has_value());
    f.phi = r->phi;
  }
  return f;
}

}  // namespace

TEST_CASE("dynamical faithfulness") {
  auto q = fixture("quantum:2");
  CHECK(is_dynamically_faithful(q.bip, q.phi, 1));
  CHECK(is_dynamically_faithful(q.bip, q.phi, 2));
  Rng rng(1);
  Vec w = random_state(q.bip.left, rng).vector;
  CHECK_FALSE(is_dynamically_faithful(q.bip, product(w, w), 1));
  auto c = fixture("classical:3");
  CHECK(is_dynamically_faithful(c.bip, c.phi, 1));
}

TEST_CASE("preparational faithfulness") {
  auto q = fixture("quantum:2");
  CHECK(is_preparationally_faithful(q.bip, q.phi, 1));
  auto c = fixture("classical:2");
  CHECK(is_preparationally_faithful(c.bip, c.phi, 1));
  CHECK(is_preparationally_faithful(c.bip, c.phi, 2));
  auto g = fixture("gbit");
  Vec center = Eigen::Vector3d(0, 0, 1);
  CHECK_FALSE(is_preparationally_faithful(g.bip, product(center, center), 1));
  Rng rng(2);
  Vec w = random_state(q.bip.left, rng).vector;
  CHECK_FALSE(is_preparationally_faithful(q.bip, product(w, w), 1));
}

TEST_CASE("find a symmetric pure preparationally faithful state") {
  auto q = builtin_composite(parse_builtin("quantum:2"));
  auto rq = find_pfaith_state(q);
  REQUIRE(rq.has_value());
  CHECK(rq->symmetric);
  CHECK(rq->pure);
  CHECK(rq->dyn_faithful[0]);
  CHECK(rq->dyn_faithful[1]);
  CHECK(rq->prep_faithful[0]);
  CHECK(rq->prep_faithful[1]);
  // The marginal is the maximally mixed state.
  CHECK((state_operator(q.left, rq->chi) - CMat::Identity(2, 2) / 2.0).norm() < 1e-12);

  auto g = builtin_composite(parse_builtin("gbit"));
  auto rg = find_pfaith_state(g);
  REQUIRE(rg.has_value());
  CHECK(rg->symmetric);
  CHECK(rg->pure);
  CHECK(chsh(rg->phi) == doctest::Approx(4.0));

  CHECK_FALSE(find_pfaith_state(builtin_composite(parse_builtin("classical:2"))).has_value());
  CHECK_FALSE(find_pfaith_state(builtin_composite(parse_builtin("classical:3"))).has_value());
}

TEST_CASE("preparational implies dynamical faithfulness") {
  for (const char* name : {"classical:2", "quantum:2", "gbit"}) {
    CAPTURE(name);
    auto f = fixture(name);
    auto r = analyze_faithful_state(f.bip, f.phi);
    for (int k = 0; k < 2; ++k)
      if (r.prep_faithful[k]) CHECK(r.dyn_faithful[k]);
  }
}

TEST_CASE("transformation cone") {
  Cone c = transformation_cone(make_classical(2));
  CHECK(extremal_rays(c).size() == 4);
  CHECK(is_atomic(make_quantum(2), identity_transformation(4)));
  CHECK_FALSE(is_atomic(make_classical(2), identity_transformation(2)));
}

TEST_CASE("transpose") {
  auto q = fixture("quantum:2");
  const System& s = q.bip.left;
  CHECK((transpose(q.bip, q.phi, identity_transformation(4)).matrix - Mat::Identity(4, 4)).norm() < 1e-12);
  CMat u = hadamard_phase();
  Transformation t{effect_action_from_kraus(s, {u})};
  Mat expect = effect_action_from_kraus(s, {CMat(u.transpose())});
  CHECK((transpose(q.bip, q.phi, t).matrix - expect).norm() < 1e-12);

  for (const char* name : {"classical:3", "quantum:2", "gbit"}) {
    CAPTURE(name);
    auto f = fixture(name);
    const System& sys = f.bip.left;
    Mat w = form_matrix(f.bip, f.phi);
    Rng rng(7);
    for (int k = 0; k < 30; ++k) {
      Transformation a = random_physical(sys, rng), b = random_physical(sys, rng);
      Transformation at = transpose(f.bip, f.phi, a), bt = transpose(f.bip, f.phi, b);
      CHECK((transpose(f.bip, f.phi, at).matrix - a.matrix).norm() < 1e-9);
      CHECK((transpose(f.bip, f.phi, chain(a, b)).matrix - chain(bt, at).matrix).norm() < 1e-9);
      Vec x = random_effect(sys, rng).vector, y = random_effect(sys, rng).vector;
      CHECK(x.dot(w * (b.matrix * y)) == doctest::Approx((bt.matrix * x).dot(w * y)));
    }
  }
}

TEST_CASE("jordan form") {
  auto c = fixture("classical:3");
  JordanForm jc = jordan_scalar_product(c.bip, c.phi);
  CHECK((jc.gram - Mat::Identity(3, 3) / 3.0).norm() < 1e-12);
  CHECK(jc.n_plus == 3);
  CHECK(jc.n_minus == 0);
  CHECK((jc.involution - Mat::Identity(3, 3)).norm() < 1e-12);

  for (const char* name : {"classical:2", "quantum:2", "gbit"}) {
    CAPTURE(name);
    auto f = fixture(name);
    JordanForm j = jordan_scalar_product(f.bip, f.phi);
    const int n = f.bip.left.dim;
    CHECK((j.involution * j.involution - Mat::Identity(n, n)).norm() < 1e-9);
    CHECK(j.n_plus + j.n_minus == n);
    // |Phi| composed with the involution gives back Phi.
    CHECK((j.abs_form * j.involution - form_matrix(f.bip, f.phi)).norm() < 1e-9);
    Eigen::SelfAdjointEigenSolver<Mat> es(j.abs_form);
    CHECK(es.eigenvalues().minCoeff() > 0);
  }
  auto q = fixture("quantum:2");
  MESSAGE("qubit signature on the reference observable: "
          << jordan_scalar_product(q.bip, q.phi).n_plus << ","
          << jordan_scalar_product(q.bip, q.phi).n_minus);
  Vec prod = product(q.bip.left.unit_effect, q.bip.left.unit_effect) / 2.0;
  CHECK_THROWS_AS(jordan_scalar_product(q.bip, prod), DegenerateFormError);
}

TEST_CASE("adjoint") {
  auto q = fixture("quantum:2");
  const System& s = q.bip.left;
  std::vector<Vec> storage;
  for (int k = 0; k < 4; ++k) storage.push_back(Vec::Unit(4, k));
  CHECK((adjoint(q.bip, q.phi, CMat::Identity(4, 4), storage) - CMat::Identity(4, 4)).norm() < 1e-12);
  CMat u = hadamard_phase();
  CMat t = effect_action_from_kraus(s, {u}).cast<cplx>();
  CMat expect = effect_action_from_kraus(s, {CMat(u.adjoint())}).cast<cplx>();
  CHECK((adjoint(q.bip, q.phi, t, storage) - expect).norm() < 1e-12);

  for (const char* name : {"classical:2", "quantum:2", "gbit"}) {
    CAPTURE(name);
    auto f = fixture(name);
    const int n = f.bip.left.dim;
    Rng rng(3);
    std::normal_distribution<double> g;
    for (int k = 0; k < 100; ++k) {
      CMat a(n, n), b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          a(i, j) = cplx(g(rng), k % 2 ? g(rng) : 0.0);
          b(i, j) = cplx(g(rng), g(rng));
        }
      CMat ad = adjoint(f.bip, f.phi, a);
      CHECK((adjoint(f.bip, f.phi, ad) - a).norm() < 1e-8);
      CHECK((adjoint(f.bip, f.phi, CMat(a * b)) - adjoint(f.bip, f.phi, b) * ad).norm() < 1e-8);
    }
  }
}

TEST_CASE("theorem suites") {
  auto q = fixture("quantum:2");
  for (const auto& r : faithful_state_suite(q.bip, q.phi).records) CHECK_MESSAGE(r.ok, r.invariant);
  auto t4q = faithful_marginal_suite(q.bip, q.phi);
  for (const auto& r : t4q.records) CHECK_MESSAGE(r.ok, r.invariant);

  auto g = fixture("gbit");
  CHECK(record_ok(faithful_state_suite(g.bip, g.phi), "weak self-duality"));

  auto c = fixture("classical:3");
  auto t2c = faithful_state_suite(c.bip, c.phi);
  CHECK(record_ok(t2c, "transformations isomorphic to bipartite states"));
  CHECK(record_ok(t2c, "weak self-duality"));
  CHECK_FALSE(record_ok(t2c, "faithful state pure"));
  auto t4c = faithful_marginal_suite(c.bip, c.phi);
  CHECK_FALSE(record_ok(t4c, "identity atomic"));
  CHECK(t4c.records[0].detail == "refinable");
  CHECK(t4q.records[0].detail == "atomic");

  // Z and X measurement ensembles both average to the marginal.
  const System& s = q.bip.left;
  Mat w = form_matrix(q.bip, q.phi);
  Vec chi = w.transpose() * s.unit_effect;
  for (int basis = 0; basis < 2; ++basis) {
    Vec sum = Vec::Zero(4);
    for (int k = 0; k < 2; ++k) {
      CVec v(2);
      if (basis == 0) v = CVec::Unit(2, k);
      else v << 1 / std::sqrt(2.0), (k ? -1.0 : 1.0) / std::sqrt(2.0);
      sum += w.transpose() * effect_from_operator(s, v * v.adjoint());
    }
    CHECK((sum - chi).norm() < 1e-12);
  }
}
