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

#include "conelab/theory.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/lp.hpp"
#include "conelab/operators.hpp"
#include "conelab/sampling.hpp"

namespace conelab {

System make_system(std::string name, Cone effect_cone, Vec unit_effect,
                   std::vector<Vec> reference_observable,
                   std::vector<Mat> transformation_generators,
                   std::vector<CMat> kraus_frame) {
  System s;
  s.name = std::move(name);
  s.dim = effect_cone.ambient_dim();
  require_dim(unit_effect.size(), s.dim, "unit effect");
  for (const Vec& l : reference_observable) require_dim(l.size(), s.dim, "reference effect");
  for (const Mat& t : transformation_generators) {
    require_dim(t.rows(), s.dim, "transformation rows");
    require_dim(t.cols(), s.dim, "transformation cols");
  }
  s.state_cone = dual(effect_cone);
  s.effect_cone = std::move(effect_cone);
  s.unit_effect = std::move(unit_effect);
  s.reference_observable = std::move(reference_observable);
  s.transformation_generators = std::move(transformation_generators);
  s.kraus_frame = std::move(kraus_frame);
  return s;
}

System with_tolerance(const System& s, double tol) {
  System out = s;
  out.effect_cone = s.effect_cone.with_tolerance(tol);
  out.state_cone = s.state_cone.with_tolerance(tol);
  return out;
}

bool ValidationReport::ok() const {
  return std::all_of(records.begin(), records.end(),
                     [](const InvariantRecord& r) { return r.ok; });
}

// ---------------------------------------------------------------------------
// predicates

bool is_state(const System& s, const Vec& v) {
  require_dim(v.size(), s.dim, "state");
  return member(s.state_cone, v) &&
         std::abs(v.dot(s.unit_effect) - 1.0) <= s.tolerance() * 10;
}

bool is_effect(const System& s, const Vec& a) {
  require_dim(a.size(), s.dim, "effect");
  return member(s.effect_cone, a) && member(s.effect_cone, s.unit_effect - a);
}

bool is_physical(const System& s, const Transformation& t) {
  require_dim(t.matrix.rows(), s.dim, "transformation");
  for (const Vec& g : sample_generators(s.effect_cone))
    if (!member(s.effect_cone, t.matrix * g)) return false;
  return member(s.effect_cone, s.unit_effect - t.matrix * s.unit_effect);
}

bool is_deterministic(const System& s, const Transformation& t) {
  return (t.matrix * s.unit_effect - s.unit_effect).norm() <=
         s.tolerance() * std::max(1.0, s.unit_effect.norm());
}

bool is_complete(const System& s, const Test& test) {
  if (test.events.empty()) return false;
  Vec sum = Vec::Zero(s.dim);
  for (const auto& t : test.events) sum += t.matrix * s.unit_effect;
  return (sum - s.unit_effect).norm() <=
         s.tolerance() * 10 * std::max(1.0, s.unit_effect.norm());
}

ValidationReport validate(const System& s) {
  ValidationReport rep;
  auto add = [&](std::string inv, bool ok, std::string detail = "") {
    rep.records.push_back({std::move(inv), ok, std::move(detail)});
  };
  const Vec& e = s.unit_effect;
  add("unit effect in effect cone", e.norm() > s.tolerance() && member(s.effect_cone, e));

  bool dual_ok = true;
  auto egens = sample_generators(s.effect_cone, 50);
  auto sgens = sample_generators(s.state_cone, 50);
  for (const Vec& w : sgens)
    for (const Vec& a : egens)
      if (w.dot(a) < -s.tolerance() * std::max(1.0, w.norm() * a.norm())) dual_ok = false;
  add("state cone is the dual of the effect cone", dual_ok);

  const auto& ref = s.reference_observable;
  bool count_ok = static_cast<int>(ref.size()) == s.dim;
  Mat r(s.dim, static_cast<Eigen::Index>(ref.size()));
  Vec sum = Vec::Zero(s.dim);
  for (size_t i = 0; i < ref.size(); ++i) {
    r.col(i) = ref[i];
    sum += ref[i];
  }
  add("reference observable has dim effects", count_ok,
      std::to_string(ref.size()) + " given, dim " + std::to_string(s.dim));
  add("reference observable is linearly independent",
      count_ok && rank(r) == s.dim);
  bool range_ok = true;
  std::string bad;
  for (size_t i = 0; i < ref.size(); ++i) {
    if (!is_effect(s, ref[i])) {
      range_ok = false;
      bad = "effect " + std::to_string(i) + " outside [0,e]";
      break;
    }
  }
  add("reference effects lie in [0,e]", range_ok, bad);
  add("reference observable sums to e",
      (sum - e).norm() <= s.tolerance() * 10 * std::max(1.0, e.norm()));

  bool phys = true;
  std::string which;
  for (size_t i = 0; i < s.transformation_generators.size(); ++i) {
    if (!is_physical(s, {s.transformation_generators[i]})) {
      phys = false;
      which = "generator " + std::to_string(i);
      break;
    }
  }
  add("transformation generators are physical", phys, which);
  return rep;
}

// ---------------------------------------------------------------------------
// probability rule, conditioning, tests

double pairing(const State& w, const Effect& a, double tol) {
  require_dim(a.vector.size(), w.vector.size(), "pairing");
  double p = w.vector.dot(a.vector);
  if (p < -tol || p > 1.0 + tol)
    throw InvalidArgument("pairing " + std::to_string(p) +
                          " outside [0,1]: invalid state/effect pair");
  return std::clamp(p, 0.0, 1.0);
}

Transformation chain(const Transformation& first,
                     const Transformation& second) {
  return {second.matrix * first.matrix};
}

Transformation identity_transformation(int dim) {
  return {Mat::Identity(dim, dim)};
}

Conditioned condition(const System& s, const State& w,
                      const Transformation& t) {
  require_dim(w.vector.size(), s.dim, "condition state");
  double p = w.vector.dot(t.matrix * s.unit_effect);
  if (p <= s.tolerance()) throw ZeroProbabilityError("zero-probability conditioning");
  Vec out = state_action(t) * w.vector / p;
  out /= out.dot(s.unit_effect);
  return {p, {out}};
}

bool nsf_marginal_check(const System& s, const Test& test_b,
                        const Transformation& t, int samples,
                        std::uint64_t seed) {
  Rng rng(seed);
  Vec lhs_effect = Vec::Zero(s.dim);
  for (const auto& b : test_b.events) lhs_effect += t.matrix * (b.matrix * s.unit_effect);
  Vec rhs_effect = t.matrix * s.unit_effect;
  for (int k = 0; k < samples; ++k) {
    Vec w = random_state(s, rng).vector;
    if (std::abs(w.dot(lhs_effect) - w.dot(rhs_effect)) > s.tolerance()) return false;
  }
  return true;
}

Transformation sum_transformations(const std::vector<Transformation>& ts) {
  if (ts.empty()) throw InvalidArgument("empty transformation sum");
  Mat m = Mat::Zero(ts[0].matrix.rows(), ts[0].matrix.cols());
  for (const auto& t : ts) {
    require_dim(t.matrix.rows(), m.rows(), "transformation sum");
    m += t.matrix;
  }
  return {m};
}

Transformation sum_transformations(const System& s,
                                   const std::vector<Transformation>& ts) {
  Transformation out = sum_transformations(ts);
  if (!member(s.effect_cone, s.unit_effect - out.matrix * s.unit_effect))
    throw InvalidArgument("incompatible events: summed effect exceeds e");
  return out;
}

Transformation scale(const Transformation& t, double lambda) {
  if (lambda < 0) throw InvalidArgument("negative scaling of a transformation");
  return {lambda * t.matrix};
}

Test coarse_grain(const Test& test,
                  const std::vector<std::vector<int>>& partition) {
  const int n = static_cast<int>(test.events.size());
  std::vector<int> seen(n, 0);
  Test out;
  for (const auto& block : partition) {
    if (block.empty()) throw InvalidArgument("empty block in partition");
    std::vector<Transformation> members;
    for (int i : block) {
      if (i < 0 || i >= n) throw InvalidArgument("partition index out of range");
      ++seen[i];
      members.push_back(test.events[i]);
    }
    out.events.push_back(sum_transformations(members));
  }
  for (int c : seen)
    if (c != 1) throw InvalidArgument("partition must cover every event exactly once");
  return out;
}

Test convex_combine(const std::vector<Test>& tests,
                    const std::vector<double>& weights) {
  if (tests.size() != weights.size() || tests.empty())
    throw InvalidArgument("one weight per test required");
  double total = 0;
  for (double w : weights) {
    if (w < 0) throw InvalidArgument("negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("weights must sum to 1");
  Test out;
  for (size_t i = 0; i < tests.size(); ++i)
    for (const auto& t : tests[i].events) out.events.push_back(scale(t, weights[i]));
  return out;
}

Effect effect_of(const System& s, const Transformation& t) {
  return {t.matrix * s.unit_effect};
}

// ---------------------------------------------------------------------------
// observables

std::vector<Effect> minimal_infocomplete(const System& s,
                                         const std::vector<Test>& tests) {
  std::vector<Vec> cands;
  for (const auto& test : tests)
    for (const auto& t : test.events) cands.push_back(effect_of(s, t).vector);
  Mat all(s.dim, static_cast<Eigen::Index>(cands.size()));
  for (size_t i = 0; i < cands.size(); ++i) all.col(i) = cands[i];
  if (cands.empty() || rank(all) < s.dim)
    throw InvalidArgument("tests not informationally complete");

  // Extend {e} to a basis; the chosen effects then never span e.
  Mat sel(s.dim, 1);
  sel.col(0) = s.unit_effect;
  std::vector<Vec> chosen;
  for (const Vec& c : cands) {
    if (static_cast<int>(chosen.size()) == s.dim - 1) break;
    Mat trial(s.dim, sel.cols() + 1);
    trial << sel, c;
    if (rank(trial) == trial.cols()) {
      sel = trial;
      chosen.push_back(c);
    }
  }
  Vec total = Vec::Zero(s.dim);
  for (const Vec& c : chosen) total += c;
  double coef = max_step_inside(s.effect_cone, s.unit_effect, total, 1.0);
  if (coef <= s.tolerance()) throw SolverError("observable rescaling collapsed");
  std::vector<Effect> out;
  for (const Vec& c : chosen) out.push_back({coef * c});
  out.push_back({s.unit_effect - coef * total});
  return out;
}

// ---------------------------------------------------------------------------
// norms and distance

namespace {

// sup over 0 <= a <= e of x . a
double sup_over_effects(const System& s, const Vec& x) {
  if (!s.effect_cone.is_polyhedral()) {
    CMat e = effect_operator(s, s.unit_effect);
    CMat r = psd_sqrt(e);
    // x pairs with A as Tr(X A); write A = r B r with 0 <= B <= I.
    CMat xo = state_operator(s, x);
    Vec ev = eigenvalues_h(r * xo * r);
    double sum = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) sum += std::max(0.0, ev(i));
    return sum;
  }
  const auto& sg = s.state_cone.generators();
  const Eigen::Index m = static_cast<Eigen::Index>(sg.size());
  LinearProgram lp;
  lp.c = -x;
  lp.a_ub.resize(2 * m, s.dim);
  lp.b_ub.resize(2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    lp.a_ub.row(i) = -sg[i].transpose();
    lp.b_ub(i) = 0.0;
    lp.a_ub.row(m + i) = sg[i].transpose();
    lp.b_ub(m + i) = sg[i].dot(s.unit_effect);
  }
  lp.free_var.assign(s.dim, true);
  LpResult r = solve_lp(lp);
  if (r.status != LpStatus::optimal) throw SolverError("effect polytope LP failed");
  return -r.objective;
}

}  // namespace

double natural_distance(const System& s, const State& w, const State& z) {
  require_dim(w.vector.size(), s.dim, "natural_distance");
  require_dim(z.vector.size(), s.dim, "natural_distance");
  return std::max(0.0, sup_over_effects(s, w.vector - z.vector));
}

double natural_norm_state(const System& s, const Vec& x) {
  require_dim(x.size(), s.dim, "natural_norm_state");
  return std::max(sup_over_effects(s, x), sup_over_effects(s, -x));
}

double natural_norm_effect(const System& s, const Vec& a) {
  require_dim(a.size(), s.dim, "natural_norm_effect");
  if (!s.state_cone.is_polyhedral()) {
    CMat e = effect_operator(s, s.unit_effect);
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(e));
    Vec ev = es.eigenvalues().cwiseMax(1e-300).cwiseInverse().cwiseSqrt();
    CMat r = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    Vec ea = eigenvalues_h(r * effect_operator(s, a) * r);
    return ea.cwiseAbs().maxCoeff();
  }
  double best = 0;
  for (const Vec& w : extremal_states(s)) best = std::max(best, std::abs(w.dot(a)));
  return best;
}

double scalar_product_norm(const Vec& a) { return a.norm(); }

bool is_state_automorphism(const System& s, const Mat& m) {
  require_dim(m.rows(), s.dim, "automorphism rows");
  require_dim(m.cols(), s.dim, "automorphism cols");
  if (!check_cone_isomorphism(m, s.state_cone, s.state_cone)) return false;
  return (m.transpose() * s.unit_effect - s.unit_effect).norm() <=
         s.tolerance() * std::max(1.0, s.unit_effect.norm());
}

}  // namespace conelab
