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
#include "conelab/operators.hpp"
#include "conelab/sampling.hpp"

using namespace conelab;

namespace {

const cplx kI(0.0, 1.0);

// Pauli basis written out by hand, scaled to be Hilbert-Schmidt orthonormal.
std::vector<CMat> pauli_basis() {
  CMat i = CMat::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -kI, kI, 0;
  z << 1, 0, 0, -1;
  const double r = 1.0 / std::sqrt(2.0);
  return {r * i, r * x, r * y, r * z};
}

Vec qubit_coords(const CMat& op) {
  auto b = pauli_basis();
  Vec v(4);
  for (int k = 0; k < 4; ++k) v(k) = (op * b[k]).trace().real();
  return v;
}

CMat ket_bra(int i, int j, int d = 2) {
  CMat m = CMat::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

Transformation diag_projection(int d, int k) {
  Mat m = Mat::Zero(d, d);
  m(k, k) = 1.0;
  return {m};
}

// Bloch rotation by angle t about z, as a state map.
Mat bloch_rotation(double t) {
  Mat m = Mat::Identity(4, 4);
  m(1, 1) = std::cos(t);
  m(1, 2) = -std::sin(t);
  m(2, 1) = std::sin(t);
  m(2, 2) = std::cos(t);
  return m;
}

}  // namespace

TEST_CASE("builtins satisfy the system invariants") {
  for (const char* name : {"classical:2", "classical:3", "quantum:2", "quantum:3", "gbit"}) {
    CAPTURE(name);
    System s = parse_builtin(name).system;
    CHECK(validate(s).ok());
  }
  CHECK_THROWS_AS(parse_builtin("qutrit"), InvalidArgument);
}

TEST_CASE("quantum coordinates match the hand-written Pauli basis") {
  System q = make_quantum(2);
  CMat rho(2, 2);
  rho << 0.7, 0.1 - 0.2 * kI, 0.1 + 0.2 * kI, 0.3;
  CHECK((state_from_operator(q, rho) - qubit_coords(rho)).norm() < 1e-12);
  CHECK((q.unit_effect - qubit_coords(CMat::Identity(2, 2))).norm() < 1e-12);
}

TEST_CASE("pairing") {
  System c = make_classical(2);
  State uniform{Vec::Constant(2, 0.5)};
  CHECK(pairing(uniform, {c.unit_effect}) == doctest::Approx(1.0));
  CHECK(pairing(uniform, {Vec::Zero(2)}) == doctest::Approx(0.0));
  CHECK(pairing(uniform, {Vec::Unit(2, 1)}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(pairing(uniform, {Vec::Ones(3)}), DimensionError);
  CHECK_THROWS(pairing({Vec::Constant(2, 2.0)}, {c.unit_effect}));
}

TEST_CASE("condition") {
  System c = make_classical(2);
  State uniform{Vec::Constant(2, 0.5)};
  auto id = condition(c, uniform, identity_transformation(2));
  CHECK(id.probability == doctest::Approx(1.0));
  CHECK((id.state.vector - uniform.vector).norm() < 1e-12);

  auto p0 = condition(c, uniform, diag_projection(2, 0));
  CHECK(p0.probability == doctest::Approx(0.5));
  CHECK((p0.state.vector - Vec::Unit(2, 0)).norm() < 1e-12);
  CHECK_THROWS_AS(condition(c, {Vec::Unit(2, 1)}, diag_projection(2, 0)),
                  ZeroProbabilityError);

  System q = make_quantum(2);
  State mixed{qubit_coords(CMat::Identity(2, 2) / 2.0)};
  Transformation proj{effect_action_from_kraus(q, {ket_bra(0, 0)})};
  auto pq = condition(q, mixed, proj);
  CHECK(pq.probability == doctest::Approx(0.5));
  CHECK((pq.state.vector - qubit_coords(ket_bra(0, 0))).norm() < 1e-9);
}

TEST_CASE("nsf marginal check") {
  System c = make_classical(2);
  Test tc{{diag_projection(2, 0), diag_projection(2, 1)}};
  CHECK(nsf_marginal_check(c, tc, {c.transformation_generators[1]}, 50));

  System q = make_quantum(2);
  Test tq{{Transformation{effect_action_from_kraus(q, {ket_bra(0, 0)})},
           Transformation{effect_action_from_kraus(q, {ket_bra(1, 1)})}}};
  CMat h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CHECK(nsf_marginal_check(q, tq, {effect_action_from_kraus(q, {h})}, 50));

  System g = make_gbit();
  Rng rng(3);
  std::vector<Transformation> four;
  for (const Vec& f : extremal_rays(g.effect_cone)) {
    Vec fx = f / (f.dot(Vec::Unit(3, 2)) * 4.0);
    four.push_back({fx * Eigen::Vector3d(0, 0, 1).transpose()});
  }
  Test tg{four};
  CHECK(is_complete(g, tg));
  CHECK(nsf_marginal_check(g, tg, random_physical(g, rng), 50));
}

TEST_CASE("sums, scaling, coarse graining and convex combination") {
  System c = make_classical(3);
  Test t3{{diag_projection(3, 0), diag_projection(3, 1), diag_projection(3, 2)}};
  CHECK(is_complete(c, t3));
  Test cg = coarse_grain(t3, {{0}, {1, 2}});
  REQUIRE(cg.events.size() == 2);
  CHECK((cg.events[1].matrix - (t3.events[1].matrix + t3.events[2].matrix)).norm() < 1e-15);
  CHECK(is_complete(c, cg));

  Test mix = convex_combine({t3, cg}, {0.5, 0.5});
  CHECK(mix.events.size() == 5);
  CHECK((mix.events[0].matrix - 0.5 * t3.events[0].matrix).norm() < 1e-15);
  CHECK(is_complete(c, mix));

  Transformation zero = scale(identity_transformation(3), 0.0);
  CHECK(pairing({Vec::Constant(3, 1.0 / 3)}, effect_of(c, zero)) == doctest::Approx(0.0));

  CHECK_THROWS(sum_transformations(c, {identity_transformation(3), diag_projection(3, 0)}));
  CHECK_NOTHROW(sum_transformations(c, {diag_projection(3, 0), diag_projection(3, 1)}));
}

TEST_CASE("effect_of") {
  System c = make_classical(2);
  CHECK((effect_of(c, identity_transformation(2)).vector - c.unit_effect).norm() < 1e-15);
  CHECK((effect_of(c, scale(identity_transformation(2), 0.3)).vector - 0.3 * c.unit_effect).norm() < 1e-15);
  System q = make_quantum(2);
  CMat p0 = ket_bra(0, 0);
  Transformation t{effect_action_from_kraus(q, {p0 * p0})};
  CHECK((effect_of(q, t).vector - qubit_coords(p0)).norm() < 1e-12);
}

TEST_CASE("minimal informationally complete observable") {
  auto check_observable = [](const System& s, const std::vector<Effect>& obs) {
    REQUIRE(static_cast<int>(obs.size()) == s.dim);
    Mat m(s.dim, s.dim);
    Vec sum = Vec::Zero(s.dim);
    for (int i = 0; i < s.dim; ++i) {
      m.col(i) = obs[i].vector;
      sum += obs[i].vector;
      CHECK(is_effect(s, obs[i].vector));
    }
    CHECK(rank(m) == s.dim);
    CHECK((sum - s.unit_effect).norm() < 1e-9);
  };

  System c = make_classical(2);
  auto oc = minimal_infocomplete(c, {Test{{diag_projection(2, 0), diag_projection(2, 1)}}});
  check_observable(c, oc);
  CHECK((oc[0].vector - Vec::Unit(2, 0)).norm() < 1e-9);
  CHECK((oc[1].vector - Vec::Unit(2, 1)).norm() < 1e-9);

  System q = make_quantum(2);
  std::vector<Test> mub;
  for (int basis = 0; basis < 3; ++basis) {
    Test t;
    for (int k = 0; k < 2; ++k) {
      CVec v = CVec::Unit(2, 0);
      double sgn = k == 0 ? 1.0 : -1.0;
      if (basis == 0) v = CVec::Unit(2, k);
      if (basis == 1) v << 1 / std::sqrt(2.0), sgn / std::sqrt(2.0);
      if (basis == 2) v << 1 / std::sqrt(2.0), sgn * kI / std::sqrt(2.0);
      CMat p = v * v.adjoint();
      t.events.push_back({effect_action_from_kraus(q, {p})});
    }
    CHECK(is_complete(q, t));
    mub.push_back(t);
  }
  check_observable(q, minimal_infocomplete(q, mub));

  System g = make_gbit();
  auto fid = [&](const Vec& f) {
    return Transformation{f * Eigen::Vector3d(0, 0, 1).transpose()};
  };
  Test tx{{fid(Eigen::Vector3d(0.5, 0, 0.5)), fid(Eigen::Vector3d(-0.5, 0, 0.5))}};
  Test ty{{fid(Eigen::Vector3d(0, 0.5, 0.5)), fid(Eigen::Vector3d(0, -0.5, 0.5))}};
  Test txy = convex_combine({tx, ty}, {0.5, 0.5});
  check_observable(g, minimal_infocomplete(g, {tx, ty, txy}));

  CHECK_THROWS_AS(minimal_infocomplete(g, {tx}), InvalidArgument);
}

TEST_CASE("natural distance examples") {
  System c = make_classical(2);
  State d0{Vec::Unit(2, 0)}, d1{Vec::Unit(2, 1)};
  CHECK(natural_distance(c, d0, d0) == doctest::Approx(0.0));
  CHECK(natural_distance(c, d0, d1) == doctest::Approx(1.0));

  System q = make_quantum(2);
  State k0{qubit_coords(ket_bra(0, 0))}, k1{qubit_coords(ket_bra(1, 1))};
  CHECK(natural_distance(q, k0, k1) == doctest::Approx(1.0));
  // Half the trace norm of the difference, computed by hand.
  CMat plus = CMat::Constant(2, 2, 0.5);
  CHECK(natural_distance(q, k0, {qubit_coords(plus)}) ==
        doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("natural distance is a monotone metric") {
  for (const char* name : {"classical:3", "quantum:2", "gbit"}) {
    CAPTURE(name);
    System s = parse_builtin(name).system;
    Rng rng(11);
    for (int k = 0; k < 25; ++k) {
      State a = random_state(s, rng), b = random_state(s, rng), c = random_state(s, rng);
      double ab = natural_distance(s, a, b);
      CHECK(ab == doctest::Approx(natural_distance(s, b, a)).epsilon(1e-7));
      CHECK(ab <= natural_distance(s, a, c) + natural_distance(s, c, b) + 1e-9);
      CHECK(ab >= -1e-12);
      CHECK(ab <= 1.0 + 1e-9);
      CHECK(natural_distance(s, a, a) == doctest::Approx(0.0));
      Transformation t = random_deterministic(s, rng);
      Mat m = state_action(t);
      CHECK(natural_distance(s, {m * a.vector}, {m * b.vector}) <= ab + 1e-9);
    }
  }
}

TEST_CASE("state automorphisms") {
  System q = make_quantum(2);
  CHECK(is_state_automorphism(q, Mat::Identity(4, 4)));
  for (double t : {0.3, 1.0, 2.5}) CHECK(is_state_automorphism(q, bloch_rotation(t)));
  Mat shrink = Mat::Identity(4, 4) * 0.5;
  shrink(0, 0) = 1.0;
  CHECK_FALSE(is_state_automorphism(q, shrink));
  CHECK_THROWS_AS(is_state_automorphism(q, Mat::Zero(4, 4)), SingularMapError);

  // Automorphisms are isometries.
  Rng rng(5);
  Mat r = bloch_rotation(0.7);
  for (int k = 0; k < 20; ++k) {
    State a = random_state(q, rng), b = random_state(q, rng);
    CHECK(natural_distance(q, {r * a.vector}, {r * b.vector}) ==
          doctest::Approx(natural_distance(q, a, b)).epsilon(1e-7));
  }
  System g = make_gbit();
  for (const Mat& t : std::vector<Mat>(g.transformation_generators.begin(),
                                       g.transformation_generators.begin() + 8))
    CHECK(is_state_automorphism(g, t.transpose()));
}

TEST_CASE("complete tests give normalized probabilities and consistent conditioning") {
  System q = make_quantum(2);
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    State w = random_state(q, rng);
    Test t{{Transformation{effect_action_from_kraus(q, {ket_bra(0, 0)})},
            Transformation{effect_action_from_kraus(q, {ket_bra(1, 1)})}}};
    double total = 0;
    for (const auto& ev : t.events) {
      total += pairing(w, effect_of(q, ev));
      auto c = condition(q, w, ev);
      CHECK((c.probability * c.state.vector - state_action(ev) * w.vector).norm() < 1e-9);
    }
    CHECK(total == doctest::Approx(1.0));
  }
}

TEST_CASE("norms") {
  System q = make_quantum(2);
  Vec diff = qubit_coords(ket_bra(0, 0) - ket_bra(1, 1));
  // sup of |Tr(X A)| over 0 <= A <= I, attained at the projector onto |0>.
  CHECK(natural_norm_state(q, diff) == doctest::Approx(1.0));
  CHECK(natural_norm_effect(q, q.unit_effect) == doctest::Approx(1.0));
  CHECK(scalar_product_norm(q.unit_effect) == doctest::Approx(std::sqrt(2.0)));
}
