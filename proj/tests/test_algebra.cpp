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
#include <random>

#include "conelab/algebra.hpp"
#include "conelab/builtins.hpp"
#include "conelab/faithful.hpp"
#include "conelab/operators.hpp"

using namespace conelab;

namespace {

const cplx kI(0.0, 1.0);

std::vector<CMat> pauli_basis() {
  CMat i = CMat::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -kI, kI, 0;
  z << 1, 0, 0, -1;
  const double r = 1.0 / std::sqrt(2.0);
  return {r * i, r * x, r * y, r * z};
}

// Complex coordinates of any 2x2 operator in the Pauli basis.
CVec coords(const CMat& m) {
  auto b = pauli_basis();
  CVec v(4);
  for (int k = 0; k < 4; ++k) v(k) = (b[k] * m).trace();
  return v;
}

CMat from_coords(const CVec& v) {
  auto b = pauli_basis();
  CMat m = CMat::Zero(2, 2);
  for (int k = 0; k < 4; ++k) m += v(k) * b[k];
  return m;
}

CVec random_cvec(int n, Rng& rng) {
  std::normal_distribution<double> g;
  CVec v(n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v;
}

CMat projector(int k) {
  CMat p = CMat::Zero(2, 2);
  p(k, k) = 1.0;
  return p;
}

}  // namespace

TEST_CASE("phase representative") {
  CVec x(3);
  x << 0.5, 0.2, -0.1;
  auto r = phase_representative(x);
  CHECK((r.rep - x).norm() < 1e-15);
  CHECK(r.phase == 0.0);

  CVec a(3);
  a << 0.0, -0.3, 0.4;
  auto ri = phase_representative(kI * a);
  CHECK((ri.rep - (-a).cast<cplx>()).norm() < 1e-15);
  CHECK(ri.phase == doctest::Approx(-M_PI / 2));
  auto rj = phase_representative(kI * CVec((-a).cast<cplx>()));
  CHECK((rj.rep - (-a).cast<cplx>()).norm() < 1e-15);
  CHECK(rj.phase == doctest::Approx(M_PI / 2));

  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    CVec z = random_cvec(4, rng);
    auto p = phase_representative(z);
    CHECK((phase_representative(p.rep).rep - p.rep).norm() < 1e-12);
    CHECK(phase_representative(p.rep).phase == doctest::Approx(0.0));
    CHECK((p.rep * std::polar(1.0, p.phase) - z).norm() < 1e-12);
    auto pd = phase_representative(dagger(z));
    CHECK((pd.rep - dagger(p.rep)).norm() < 1e-12);
    CHECK(pd.phase == doctest::Approx(-p.phase));
  }
  CHECK_THROWS_AS(phase_representative(CVec::Zero(3)), InvalidArgument);
}

TEST_CASE("cj correspondence") {
  System q = make_quantum(2);
  CJIso tau(q);
  CHECK(tau.bijective());
  CHECK((tau.iota() - q.unit_effect.cast<cplx>()).norm() < 1e-12);
  CMat f = tau.cj_forward(CMat::Identity(4, 4));
  CHECK(rank(f, 1e-9) == 1);
  CHECK((f - tau.iota() * tau.iota().adjoint()).norm() < 1e-9);

  CMat u(2, 2);
  u << 1, kI, 1, -kI;
  u /= std::sqrt(2.0);
  CMat fu = tau.cj_forward(effect_action_from_kraus(q, {u}).cast<cplx>());
  CHECK(rank(fu, 1e-9) == 1);

  Rng rng(2);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    CMat t(4, 4);
    for (auto& x : t.reshaped()) x = g(rng);
    CHECK((tau.cj_inverse(tau.cj_forward(t)) - t).norm() < 1e-9);
  }
  // Rank-one forms give atomic transformations.
  Cone tcone = transformation_cone(q);
  for (int k = 0; k < 10; ++k) {
    CVec x = random_cvec(4, rng);
    CMat t = tau.cj_inverse(x * x.adjoint());
    CHECK(t.imag().norm() < 1e-12);
    CHECK(is_extremal(tcone, vec_rows(t.real())));
    CHECK((tau.tau_inverse(t) - phase_representative(x).rep).norm() < 1e-8);
  }
  CHECK(check_cj(q).ok);
  CHECK_FALSE(check_cj(make_classical(3)).ok);
  CHECK_THROWS_AS(CJIso{make_gbit()}, NotAssertedError);
}

TEST_CASE("effect products") {
  System q = make_quantum(2);
  CJIso tau(q);
  CVec p0 = coords(projector(0)), p1 = coords(projector(1));
  CHECK((effect_multiply(p0, p0, tau) - p0).norm() < 1e-12);
  CHECK(effect_multiply(p0, p1, tau).norm() < 1e-12);
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    CVec a = random_cvec(4, rng), b = random_cvec(4, rng), c = random_cvec(4, rng);
    CHECK((effect_multiply(tau.iota(), a, tau) - a).norm() < 1e-9);
    CHECK((effect_multiply(a, tau.iota(), tau) - a).norm() < 1e-9);
    // Operator product computed directly.
    CVec ab = effect_multiply(a, b, tau);
    CHECK((ab - coords(from_coords(a) * from_coords(b))).norm() < 1e-9);
    CHECK((effect_multiply(a, b + c, tau) - ab - effect_multiply(a, c, tau)).norm() < 1e-9);
    // The phase formula agrees up to a phase.
    CVec rp = representative_product(a, b, tau);
    CHECK((phase_representative(rp).rep - phase_representative(ab).rep).norm() < 1e-7);
    auto ra = phase_representative(a), rb = phase_representative(b);
    double dphi = std::remainder(phase_representative(rp).phase - ra.phase - rb.phase, 2 * M_PI);
    CHECK(std::abs(dphi) < 1e-8);
  }
}

TEST_CASE("dagger and mixed products") {
  System q = make_quantum(2);
  CJIso tau(q);
  EffectAlgebra alg = build_effect_algebra(q, tau);
  CVec real_effect = q.unit_effect.cast<cplx>() * 0.3;
  CHECK((dagger(real_effect) - real_effect).norm() == 0.0);
  CHECK((dagger(alg.iota) - alg.iota).norm() == 0.0);
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    CVec a = random_cvec(4, rng), b = random_cvec(4, rng);
    CHECK((dagger(alg.multiply(a, b)) - alg.multiply(dagger(b), dagger(a))).norm() < 1e-9);
    auto [adb, abd] = alg.mixed_products(a, b);
    CHECK((adb - alg.multiply(dagger(a), b)).norm() < 1e-9);
    CHECK((abd - alg.multiply(a, dagger(b))).norm() < 1e-9);
  }
}

TEST_CASE("qubit effect algebra") {
  System q = make_quantum(2);
  CJIso tau(q);
  EffectAlgebra alg = build_effect_algebra(q, tau);
  CHECK(alg.dim == 4);
  CHECK(alg.residuals.associativity <= 1e-10);
  CHECK(alg.residuals.dagger <= 1e-10);
  CHECK(alg.residuals.trace <= 1e-10);
  CHECK(alg.residuals.representation <= 1e-10);
  CHECK(alg.blocks.size() == 1);
  CHECK(alg.hilbert_dim == 2);
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    CVec a = random_cvec(4, rng), b = random_cvec(4, rng);
    CHECK(std::abs(alg.trace_form(alg.multiply(a, b)) - alg.trace_form(alg.multiply(b, a))) < 1e-10);
    // The trace form is the operator trace.
    CHECK(std::abs(alg.trace_form(a) - from_coords(a).trace()) < 1e-10);
  }
  for (int k = 0; k < 100; ++k) {
    CVec a = random_cvec(4, rng);
    CMat o = alg.represent(a);
    CHECK(std::abs(operator_norm(o.adjoint() * o) - std::pow(operator_norm(o), 2)) < 1e-8);
    // O is a *-homomorphism with the same spectrum as the operator.
    CVec b = random_cvec(4, rng);
    CHECK((alg.represent(alg.multiply(a, b)) - o * alg.represent(b)).norm() < 1e-9);
    CHECK((alg.represent(dagger(a)) - o.adjoint()).norm() < 1e-9);
  }
}

TEST_CASE("classical effect algebra is commutative and diagonal") {
  System c = make_classical(3);
  CJIso tau(c);
  EffectAlgebra alg = build_effect_algebra(c, tau);
  CHECK(alg.blocks.size() == 3);
  CHECK(alg.hilbert_dim == 3);
  Rng rng(6);
  for (int k = 0; k < 20; ++k) {
    CVec a = random_cvec(3, rng), b = random_cvec(3, rng);
    CHECK((alg.multiply(a, b) - alg.multiply(b, a)).norm() < 1e-12);
    CHECK((alg.multiply(a, b) - a.cwiseProduct(b)).norm() < 1e-12);
    CMat o = alg.represent(a);
    CHECK((o - CMat(o.diagonal().asDiagonal())).norm() < 1e-12);
    CVec d = o.diagonal();
    std::vector<double> got, want;
    for (int i = 0; i < 3; ++i) got.push_back(d(i).real()), want.push_back(a(i).real());
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(want[i]));
  }
}

TEST_CASE("kraus action and gauge") {
  System q = make_quantum(2);
  auto canon = kraus_action_check(q, CJIso(q));
  CHECK(canon.ok);
  CHECK(canon.iota_is_unit);
  // Canonical gauge is the identity up to phase.
  CHECK(std::abs(std::abs(canon.gauge.trace()) - 2.0) < 1e-8);

  CMat u(2, 2);
  u << 1, kI, 1, -kI;
  u /= std::sqrt(2.0);
  auto fitted = kraus_action_check(q, CJIso(q, u));
  CHECK(fitted.ok);
  CHECK(std::abs(std::abs((fitted.gauge.adjoint() * u).trace()) - 2.0) < 1e-8);

  for (const char* name : {"classical:2", "quantum:3"}) {
    System s = parse_builtin(name).system;
    CHECK(kraus_action_check(s, CJIso(s)).iota_is_unit);
  }
}

TEST_CASE("atomicity closure") {
  CHECK(check_atomicity_closure(make_quantum(2)).ok);
  CHECK(check_atomicity_closure(make_classical(3)).ok);
  auto g = check_atomicity_closure(make_gbit());
  CHECK(g.tested > 0);
  MESSAGE("gbit atomic compositions: " << g.failures << " failures in " << g.tested);
}

TEST_CASE("invariant subspaces") {
  Rng rng(8);
  std::normal_distribution<double> g;
  std::vector<Mat> maps;
  for (int k = 0; k < 3; ++k) {
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = g(rng);
    m.block(1, 1, 2, 2) << g(rng), g(rng), g(rng), g(rng);
    maps.push_back(m);
    maps.push_back(m.transpose());
  }
  auto subs = invariant_subspaces(maps);
  REQUIRE(subs.size() == 2);
  std::vector<int> dims = {int(subs[0].cols()), int(subs[1].cols())};
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{1, 2});
}

TEST_CASE("reconstruction") {
  auto rq = reconstruct(make_quantum(2));
  CHECK(rq.verdict == Verdict::quantum);
  REQUIRE(rq.blocks.size() == 1);
  CHECK(rq.blocks[0].hilbert_dim == 2);
  CHECK(rq.pairing_residual <= 1e-8);
  CHECK(rq.positivity_residual <= 1e-8);
  CHECK(rq.kraus_residual <= 1e-8);
  for (const CMat& rho : rq.fitted_states) {
    CHECK(eigenvalues_h(rho).minCoeff() >= -1e-9);
    CHECK(rho.trace().real() == doctest::Approx(1.0));
  }

  auto rc = reconstruct(make_classical(3));
  CHECK(rc.verdict == Verdict::hybrid);
  REQUIRE(rc.blocks.size() == 3);
  for (const auto& b : rc.blocks) CHECK(b.hilbert_dim == 1);
  CHECK(rc.pairing_residual <= 1e-8);

  auto rg = reconstruct(make_gbit());
  CHECK(rg.verdict == Verdict::not_quantum);
  REQUIRE(rg.blocks.size() == 1);
  CHECK(rg.blocks[0].dim == 3);
  CHECK_FALSE(rg.blocks[0].perfect_square);
}
