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

// Gbit fiducial effect for measurement m in {0, 1} with outcome o in {0, 1}.
Vec fiducial(int m, int o) {
  Vec f = Vec::Zero(3);
  f(m) = o == 0 ? 0.5 : -0.5;
  f(2) = 0.5;
  return f;
}

// PR box: outcomes agree unless both measurements are 1, then they differ.
Vec pr_box() {
  Mat a(16, 9);
  Vec p(16);
  int row = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int oa = 0; oa < 2; ++oa)
        for (int ob = 0; ob < 2; ++ob) {
          a.row(row) = kron(fiducial(x, oa), fiducial(y, ob)).transpose();
          p(row) = ((oa ^ ob) == (x & y)) ? 0.5 : 0.0;
          ++row;
        }
  return lstsq(a, p);
}

}  // namespace

TEST_CASE("compose examples") {
  auto cc = compose(make_classical(2), make_classical(2));
  CHECK(cc.provenance == Provenance::min_tensor_default);
  CHECK(cc.joint.dim == 4);
  CHECK(extremal_rays(cc.state_cone()).size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(member(cc.state_cone(), Vec::Unit(4, i)));
  CHECK(validate(cc).ok());

  auto qq = builtin_composite(parse_builtin("quantum:2"));
  CHECK(qq.provenance == Provenance::explicit_override);
  CHECK(qq.joint.dim == 16);
  CHECK(validate(qq).ok());

  auto gg = builtin_composite(parse_builtin("gbit"));
  CHECK(gg.joint.dim == 9);
  CHECK(extremal_rays(gg.state_cone()).size() == 24);
  CHECK(validate(gg).ok());

  CHECK_THROWS_AS(compose(make_quantum(2), make_quantum(2)), InvalidArgument);
  Cone too_small = Cone::polyhedral({Vec::Unit(4, 0), Vec::Unit(4, 1)});
  CHECK_THROWS_AS(compose(make_classical(2), make_classical(2), too_small),
                  InvalidArgument);
}

TEST_CASE("local transformations commute") {
  auto gg = builtin_composite(parse_builtin("gbit"));
  CHECK((local(gg, identity_transformation(3), 1).matrix - Mat::Identity(9, 9)).norm() == 0.0);
  Rng rng(2);
  for (int k = 0; k < 10; ++k) {
    Transformation a = random_physical(gg.left, rng), b = random_physical(gg.right, rng);
    Mat ab = chain(local(gg, a, 1), local(gg, b, 2)).matrix;
    Mat ba = chain(local(gg, b, 2), local(gg, a, 1)).matrix;
    CHECK((ab - ba).norm() < 1e-12);
  }
  CHECK_THROWS_AS(local(gg, identity_transformation(3), 3), InvalidArgument);
}

TEST_CASE("marginals") {
  System q = make_quantum(2);
  auto qq = builtin_composite(parse_builtin("quantum:2"));
  Rng rng(4);
  State w1 = random_state(q, rng), w2 = random_state(q, rng);
  State prod{product(w1.vector, w2.vector)};
  CHECK((marginal(qq, prod, 1).vector - w1.vector).norm() < 1e-12);
  CHECK((marginal(qq, prod, 2).vector - w2.vector).norm() < 1e-12);

  // Maximally entangled qubit pair, built directly from the ket.
  CVec psi = CVec::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  Vec bell = state_from_operator(qq.joint, psi * psi.adjoint());
  CHECK(member(qq.state_cone(), bell));
  for (int slot : {1, 2}) {
    CMat m = state_operator(q, marginal(qq, {bell}, slot).vector);
    CHECK((m - CMat::Identity(2, 2) / 2.0).norm() < 1e-12);
  }

  auto gg = builtin_composite(parse_builtin("gbit"));
  Vec pr = pr_box();
  CHECK(member(gg.state_cone(), pr));
  CHECK(is_extremal(gg.state_cone(), pr));
  for (int slot : {1, 2})
    CHECK((marginal(gg, {pr}, slot).vector - Eigen::Vector3d(0, 0, 1)).norm() < 1e-12);

  // A local fiducial-outcome map on slot 1 leaves the slot-2 marginal alone
  // once renormalized by the full test on slot 1.
  Transformation f0{fiducial(0, 0) * Eigen::Vector3d(1, 1, 1).transpose()};
  Transformation f1{fiducial(0, 1) * Eigen::Vector3d(1, 1, 1).transpose()};
  Vec after = state_action(local(gg, f0, 1)) * pr + state_action(local(gg, f1, 1)) * pr;
  CHECK((marginal(gg, {after}, 2).vector - marginal(gg, {pr}, 2).vector).norm() < 1e-12);
}

TEST_CASE("no signaling") {
  for (const char* name : {"classical:2", "quantum:2", "gbit"}) {
    CAPTURE(name);
    auto b = builtin_composite(parse_builtin(name));
    auto r = check_no_signaling(b, 100);
    CHECK(r.ok);
    CHECK(r.max_residual <= 1e-9);
  }
}

TEST_CASE("local observability") {
  auto qq = builtin_composite(parse_builtin("quantum:2"));
  auto r = check_local_observability(qq);
  CHECK(r.ok);
  CHECK(r.span_dim == 16);
  auto g = check_local_observability(builtin_composite(parse_builtin("gbit")));
  CHECK(g.ok);
  CHECK(g.span_dim == 9);
  auto c = check_local_observability(compose(make_classical(2), make_classical(3)));
  CHECK(c.ok);
  CHECK(c.span_dim == 6);
}

TEST_CASE("slot permutation") {
  Vec a = Eigen::Vector2d(1, 2), b = Eigen::Vector3d(3, 4, 5), c = Eigen::Vector2d(6, 7);
  Vec abc = kron(kron(a, b), c);
  CHECK((permute_slots(abc, {2, 3, 2}, {2, 0, 1}) - kron(kron(c, a), b)).norm() == 0.0);
  CHECK((swap_slots(kron(a, b), 2, 3) - kron(b, a)).norm() == 0.0);
}

TEST_CASE("physicality with an ancilla") {
  auto qq = builtin_composite(parse_builtin("quantum:2"));
  System q = qq.left;
  CMat h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CHECK(is_physical_with_ancilla(qq, {effect_action_from_kraus(q, {h})}));
  // Transposition is positive but not completely positive.
  Mat transpose_map = Mat::Identity(4, 4);
  transpose_map(2, 2) = -1.0;
  CHECK(is_physical(q, {transpose_map}));
  CHECK_FALSE(is_physical_with_ancilla(qq, {transpose_map}));
}
