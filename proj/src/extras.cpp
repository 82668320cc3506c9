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

#include "conelab/extras.hpp"

#include <cmath>
#include <numeric>

#include "conelab/faithful.hpp"
#include "conelab/lp.hpp"
#include "conelab/operators.hpp"
#include "conelab/sampling.hpp"

namespace conelab {

namespace {

std::vector<Vec> normalized_extremal_states(const BipartiteSystem& b) {
  std::vector<Vec> out;
  for (const Vec& r : extremal_rays(b.state_cone())) out.push_back(r / r.dot(b.unit_effect()));
  return out;
}

bool parallel(const Vec& x, const Vec& y, double tol) {
  const double nx = x.norm(), ny = y.norm();
  if (nx <= tol || ny <= tol) return false;
  return (x / nx - y / ny).norm() <= std::sqrt(tol);
}

}  // namespace

Vec contract(const Vec& state, const std::vector<int>& dims, const Vec& effect,
             int slot_a, int slot_b) {
  const int k = static_cast<int>(dims.size());
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= k || slot_b >= k)
    throw InvalidArgument("bad contraction slots");
  std::vector<int> perm = {slot_a, slot_b};
  for (int i = 0; i < k; ++i)
    if (i != slot_a && i != slot_b) perm.push_back(i);
  const int pair = dims[slot_a] * dims[slot_b];
  require_dim(effect.size(), pair, "contracted effect");
  Vec p = permute_slots(state, dims, perm);
  Mat t = unvec_rows(p, pair, p.size() / pair);
  return t.transpose() * effect;
}

FaithfulEffectReport solve_faithful_effect(const BipartiteSystem& b,
                                           const Vec& phi) {
  FaithfulEffectReport rep;
  rep.cone_provenance = b.provenance;
  const Mat w = form_matrix(b, phi);
  if (w.rows() != w.cols()) throw InvalidArgument("faithful effect needs identical systems");
  const int n = static_cast<int>(w.rows());
  const double tol = b.joint.tolerance();
  // vec_rows(W F W) = kron(W, W^T) vec_rows(F).
  const Mat lin = kron(w, Mat(w.transpose()));
  const Vec rhs = vec_rows(w);
  const Vec fhat = lstsq(lin, rhs);
  if ((lin * fhat - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm()))
    throw InconsistentSystemError("faithful effect equation has no linear solution");

  if (b.effect_cone().is_polyhedral()) {
    // Variables: conic weights on the effect generators, then t (free).
    const auto& gens = b.effect_cone().generators();
    const Eigen::Index k = static_cast<Eigen::Index>(gens.size());
    const auto states = normalized_extremal_states(b);
    LinearProgram lp;
    lp.c = Vec::Zero(k + 1);
    lp.c(k) = 1.0;
    lp.free_var.assign(k + 1, false);
    lp.free_var[k] = true;
    lp.a_eq = Mat::Zero(n * n, k + 1);
    for (Eigen::Index g = 0; g < k; ++g) lp.a_eq.col(g) = lin * gens[g];
    lp.b_eq = rhs;
    lp.a_ub = Mat::Zero(static_cast<Eigen::Index>(states.size()), k + 1);
    lp.b_ub = Vec::Zero(static_cast<Eigen::Index>(states.size()));
    for (size_t s = 0; s < states.size(); ++s) {
      for (Eigen::Index g = 0; g < k; ++g) lp.a_ub(s, g) = states[s].dot(gens[g]);
      lp.a_ub(s, k) = -1.0;
    }
    LpResult res = solve_lp(lp, 1e-9);
    if (res.status != LpStatus::optimal || res.objective <= tol) {
      rep.detail = "no effect in the composite cone solves the equation";
      return rep;
    }
    Vec f = Vec::Zero(n * n);
    for (Eigen::Index g = 0; g < k; ++g) f += res.x(g) * gens[g];
    rep.alpha = 1.0 / res.objective;
    rep.faithful_effect = rep.alpha * f;
  } else {
    if (rank(lin, 1e-10) < n * n) {
      rep.detail = "faithful effect not unique for a psd composite";
      return rep;
    }
    if (!member(b.effect_cone(), fhat)) {
      rep.detail = "the unique solution is not an effect";
      return rep;
    }
    // alpha = 1 / sup over normalized states of the pairing with fhat.
    CMat e = effect_operator(b.joint, b.unit_effect());
    CMat r = psd_sqrt(e);
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(r));
    Vec iv = es.eigenvalues().cwiseMax(1e-300).cwiseInverse();
    CMat rinv = es.eigenvectors() * iv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    double top = eigenvalues_h(rinv * effect_operator(b.joint, fhat) * rinv).maxCoeff();
    if (top <= tol) {
      rep.detail = "the unique solution pairs to zero";
      return rep;
    }
    rep.alpha = 1.0 / top;
    rep.faithful_effect = rep.alpha * fhat;
  }
  // Cross-check against the four-slot contraction.
  const Vec omega4 = kron(phi, phi);
  const Vec out = contract(omega4, {n, n, n, n}, *rep.faithful_effect, 1, 2);
  if ((out - rep.alpha * phi).cwiseAbs().maxCoeff() > 1e-8)
    throw SolverError("faithful effect fails the contraction cross-check");
  rep.feasible = true;
  rep.alpha_max = rep.alpha;
  return rep;
}

double alpha_max(const BipartiteSystem& b, const Vec& phi) {
  try {
    return solve_faithful_effect(b, phi).alpha_max;
  } catch (const InconsistentSystemError&) {
    return 0.0;
  }
}

Teleported teleport(const BipartiteSystem& b, const Vec& phi,
                    const FaithfulEffectReport& report, const State& omega) {
  if (!report.feasible || !report.faithful_effect)
    throw InvalidArgument("teleportation needs a feasible faithful effect");
  const int n = b.left.dim;
  require_dim(omega.vector.size(), n, "teleported state");
  Vec out = contract(kron(omega.vector, phi), {n, n, n}, *report.faithful_effect, 0, 1);
  Teleported t;
  t.probability = out.dot(b.left.unit_effect);
  if (t.probability <= b.joint.tolerance())
    throw ZeroProbabilityError("teleportation outcome has zero probability");
  t.state = {out / t.probability};
  return t;
}

CompleteFaithfulness check_complete_faithfulness(
    const BipartiteSystem& b, const Vec& phi,
    const FaithfulEffectReport& report, int samples, std::uint64_t seed) {
  if (!report.feasible || !report.faithful_effect)
    throw InvalidArgument("needs a feasible faithful effect");
  const int n = b.left.dim;
  const Vec& f = *report.faithful_effect;
  const Mat id = Mat::Identity(n, n);
  CompleteFaithfulness out;
  Mat imprint(n * n, n * n);
  for (int k = 0; k < n * n; ++k) {
    Transformation a{unvec_rows(Vec::Unit(n * n, k), n, n)};
    imprint.col(k) = kron(transpose(b, phi, a).matrix, id) * f;
  }
  out.injective = rank(imprint, 1e-10) == n * n;
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    Transformation a = random_physical(b.left, rng);
    Vec lhs = kron(transpose(b, phi, a).matrix, id) * f;
    Vec rhs = kron(id, a.matrix) * f;
    out.max_residual = std::max(out.max_residual, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return out;
}

bool depolarize_check(const BipartiteSystem& b, const Vec& phi,
                      const std::vector<Vec>& observable, int samples,
                      std::uint64_t seed) {
  const int n = b.left.dim;
  const Vec chi = marginal(b, {phi}, 2).vector;
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    Vec w = random_state(b.left, rng).vector;
    Vec sum = Vec::Zero(n);
    for (const Vec& a : observable) sum += contract(kron(w, phi), {n, n, n}, a, 0, 1);
    if ((sum - chi).cwiseAbs().maxCoeff() > 1e-9) return false;
  }
  return true;
}

bool PurifyReport::ok() const {
  return std::all_of(records.begin(), records.end(),
                     [](const PurifyRecord& r) { return r.ok; });
}

PurifyReport check_purify(const BipartiteSystem& b, int mixtures,
                          std::uint64_t seed) {
  const System& s = b.left;
  PurifyReport rep;
  Rng rng(seed);
  if (!s.state_cone.is_polyhedral()) {
    const int d = s.state_cone.hilbert_dim();
    const int dj = b.state_cone().hilbert_dim();
    if (dj != d * b.right.state_cone.hilbert_dim())
      throw InvalidArgument("psd purification needs the tensor Hilbert space");
    std::vector<Vec> tests;
    for (const Vec& g : sample_generators(s.state_cone, 20, seed)) tests.push_back(g / g.dot(s.unit_effect));
    tests.push_back(state_from_operator(s, CMat::Identity(d, d) / double(d)));
    for (int k = 0; k < mixtures; ++k) tests.push_back(random_state(s, rng).vector);
    for (const Vec& w : tests) {
      // sum_i sqrt(p_i) |i>|i> in the eigenbasis of rho.
      Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(state_operator(s, w)));
      const int d2 = b.right.state_cone.hilbert_dim();
      CVec psi = CVec::Zero(d * d2);
      for (int i = 0; i < std::min(d, d2); ++i)
        psi += std::sqrt(std::max(0.0, es.eigenvalues()(i))) *
               kron(CMat(es.eigenvectors().col(i)), CMat(CVec::Unit(d2, i)));
      Vec big = state_from_operator(b.joint, psi * psi.adjoint());
      PurifyRecord r{w, false, big};
      r.ok = is_extremal(b.state_cone(), big) &&
             (marginal(b, {big}, 1).vector - w).norm() <= 1e-8;
      rep.records.push_back(r);
    }
    return rep;
  }
  const auto ext = extremal_states(s);
  std::vector<Vec> tests = ext;
  Vec centroid = Vec::Zero(s.dim);
  for (const Vec& x : ext) centroid += x / double(ext.size());
  tests.push_back(centroid);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  for (int k = 0; k < mixtures; ++k) {
    Vec w = Vec::Zero(s.dim);
    double total = 0;
    for (const Vec& x : ext) {
      double c = gamma(rng);
      w += c * x;
      total += c;
    }
    tests.push_back(w / total);
  }
  const auto joint = normalized_extremal_states(b);
  for (const Vec& w : tests) {
    PurifyRecord r{w, false, {}};
    for (const Vec& big : joint) {
      Vec m = marginal(b, {big}, 1).vector;
      if ((m - w).cwiseAbs().maxCoeff() <= 1e-9) {
        r.ok = true;
        r.purification = big;
        break;
      }
    }
    rep.records.push_back(r);
  }
  return rep;
}

PurifyLemmaReport purify_lemma_suite(const BipartiteSystem& b, const Vec& phi,
                                     int samples, std::uint64_t seed) {
  PurifyLemmaReport out;
  const System& s = b.left;
  if (!check_purify(b, 5, seed).ok()) {
    out.checks.records.push_back({"purification", false, "not applicable: some state has no purification"});
    return out;
  }
  out.applicable = true;
  const Vec chi = form_matrix(b, phi).transpose() * s.unit_effect;
  const double tol = s.tolerance();
  int bad_states = 0, bad_effects = 0;
  if (!s.state_cone.is_polyhedral()) {
    const int d = s.state_cone.hilbert_dim();
    CMat chi_op = state_operator(s, chi);
    CMat chi_inv_sqrt = psd_sqrt(chi_op).inverse();
    for (const Vec& g : sample_generators(s.state_cone, samples, seed)) {
      // Pure state |psi><psi| = K chi K^dag with K = |psi><0| chi^{-1/2}.
      Eigen::SelfAdjointEigenSolver<CMat> es(state_operator(s, g));
      CVec psi = es.eigenvectors().col(d - 1) * std::sqrt(std::max(0.0, es.eigenvalues()(d - 1)));
      CMat k = psi * CVec::Unit(d, 0).adjoint() * chi_inv_sqrt;
      Transformation t{effect_action_from_kraus(s, {k})};
      if (!is_atomic(s, t) || (state_action(t) * chi - g).norm() > 1e-8) ++bad_states;
    }
    for (const Vec& a : sample_generators(s.effect_cone, samples, seed)) {
      CMat k = psd_sqrt(effect_operator(s, a));
      Transformation t{effect_action_from_kraus(s, {k})};
      if (!is_atomic(s, t) || (t.matrix * s.unit_effect - a).norm() > 1e-8) ++bad_effects;
    }
  } else {
    const auto atoms = extremal_rays(transformation_cone(s));
    for (const Vec& g : extremal_rays(s.state_cone)) {
      bool found = false;
      for (const Vec& a : atoms)
        if (parallel(unvec_rows(a, s.dim, s.dim).transpose() * chi, g, tol)) found = true;
      if (!found) ++bad_states;
    }
    for (const Vec& g : extremal_rays(s.effect_cone)) {
      bool found = false;
      for (const Vec& a : atoms)
        if (parallel(unvec_rows(a, s.dim, s.dim) * s.unit_effect, g, tol)) found = true;
      if (!found) ++bad_effects;
    }
  }
  out.checks.records.push_back({"states are atomic images of the marginal", bad_states == 0,
                                std::to_string(bad_states) + " failures"});
  out.checks.records.push_back({"effects are unit effects of atoms", bad_effects == 0,
                                std::to_string(bad_effects) + " failures"});
  return out;
}

}  // namespace conelab
