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

#include "conelab/checks.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>

#include "conelab/algebra.hpp"
#include "conelab/extras.hpp"
#include "conelab/faithful.hpp"
#include "conelab/sampling.hpp"

namespace conelab {
namespace {

const std::map<std::string, std::string>& anchors() {
  static const std::map<std::string, std::string> m = {
      {"unit effect in effect cone", "deterministic effect e lies in the effect cone"},
      {"state cone is the dual of the effect cone", "no-restriction: states are all positive functionals on effects"},
      {"reference observable has dim effects", "minimal informationally complete observable"},
      {"reference observable is linearly independent", "minimal informationally complete observable"},
      {"reference effects lie in [0,e]", "effects are bounded by the deterministic effect"},
      {"reference observable sums to e", "a test is a complete collection of mutually exclusive events"},
      {"transformation generators are physical", "transformations map states into states"},
      {"composite effect cone contains local products", "local tests embed into the composite"},
      {"factorized states exist", "independent preparations give product states"},
      {"marginal independent of the later test", "NSF: no signaling from the future"},
      {"no signaling between subsystems", "acausality of local tests on a composite"},
      {"local observability", "product effects span the composite effect space"},
      {"pure symmetric preparationally faithful state", "PFAITH: a symmetric pure preparationally faithful state exists"},
      {"candidate symmetric", "PFAITH: symmetric under permutation of the two systems"},
      {"candidate pure", "PFAITH: the faithful state is pure"},
      {"candidate dynamically faithful", "faithful state: local maps leave a unique imprint"},
      {"candidate preparationally faithful", "faithful state: every bipartite state is locally reachable"},
      {"faithful state pure", "PFAITH: the faithful state is pure"},
      {"transformations isomorphic to bipartite states", "cone isomorphism between transformations and bipartite states"},
      {"weak self-duality", "weak self-duality of state and effect cones"},
      {"atomic transformations give pure outputs", "atomic transformations map the faithful state to pure states"},
      {"identity atomic", "the identity transformation is atomic"},
      {"marginal invariant under transposed channels", "the faithful marginal is invariant under transposed channels"},
      {"ensembles of any observable average to the marginal", "the faithful marginal is the average of any observable ensemble"},
      {"marginal internal", "the faithful marginal is an internal state"},
      {"faithful effect exists", "FAITHE: a faithful effect achieves teleportation with constant probability"},
      {"teleportation reproduces the input", "probabilistic teleportation through the faithful effect"},
      {"complete faithfulness", "the correspondence induced by the faithful effect is injective"},
      {"every state has a pure purification", "PURIFY: every state is the marginal of a pure bipartite state"},
      {"states are atomic images of the marginal", "under purification, states are atomic images of the faithful marginal"},
      {"effects are unit effects of atoms", "under purification, effects are deterministic parts of atomic maps"},
      {"purification", "purification lemmas"},
      {"atomicity closed under composition", "AE: composition of atomic transformations is atomic"},
      {"cj isomorphism", "CJ: transformations are isomorphic to the cone of positive bilinear forms"},
      {"effect algebra", "C*-algebra structure over the complex effects"},
      {"kraus form", "atomic maps are of the Kraus form up to a gauge automorphism"},
      {"block structure", "invariant sub-cones of the transformation set"},
      {"operator representation", "reconstruction: effects and states as operators, Gleason-like fit"},
  };
  return m;
}

std::string anchor_for(const std::string& check) {
  auto it = anchors().find(check);
  return it == anchors().end() ? "system invariants" : it->second;
}

CheckRecord record(const std::string& check, Outcome o, std::string witness = {}) {
  return {check, anchor_for(check), o, {}, std::move(witness)};
}

Outcome verdict(bool ok) { return ok ? Outcome::pass : Outcome::fail; }

void add_validation(Report& rep, const ValidationReport& v, const std::string& prefix = {}) {
  for (const InvariantRecord& r : v.records) {
    CheckRecord c = record(r.invariant, verdict(r.ok), r.detail);
    c.check = prefix + r.invariant;
    rep.add(c);
  }
}

// Shared state of one invocation: the composite and its faithful state are
// computed once.
struct Context {
  const LoadedTheory& theory;
  CheckOptions opts;
  Rng rng;
  bool composed = false;
  std::optional<BipartiteSystem> bip;
  std::string compose_error;
  bool searched = false;
  std::optional<FaithfulStateReport> pfaith;

  Context(const LoadedTheory& t, const CheckOptions& o) : theory(t), opts(o), rng(o.seed) {}

  std::uint64_t seed() { return rng(); }
  const System& system() const { return theory.system; }

  const BipartiteSystem* composite() {
    if (!composed) {
      composed = true;
      try {
        bip = compose_loaded(theory, theory);
      } catch (const Error& e) {
        compose_error = e.what();
      }
    }
    return bip ? &*bip : nullptr;
  }
  const FaithfulStateReport* faithful() {
    if (!searched) {
      searched = true;
      if (composite()) pfaith = find_pfaith_state(*bip);
    }
    return pfaith ? &*pfaith : nullptr;
  }
};

Test measure_prepare_test(const System& s, Rng& rng) {
  Test test;
  for (const Vec& r : s.reference_observable)
    test.events.push_back({r * random_state(s, rng).vector.transpose()});
  return test;
}

void suite_nsf(Context& ctx, Report& rep) {
  const System& s = ctx.system();
  Rng rng(ctx.seed());
  const int rounds = 5;
  bool ok = true;
  for (int k = 0; k < rounds && ok; ++k) {
    Test test = measure_prepare_test(s, rng);
    Transformation t = random_physical(s, rng);
    ok = nsf_marginal_check(s, test, t, std::max(1, ctx.opts.samples / rounds), rng());
  }
  rep.add(record("marginal independent of the later test", verdict(ok)));

  const BipartiteSystem* b = ctx.composite();
  if (!b) {
    rep.add(record("no signaling between subsystems", Outcome::fail, ctx.compose_error));
    return;
  }
  NoSignalingResult ns = check_no_signaling(*b, ctx.opts.samples, ctx.seed());
  CheckRecord c = record("no signaling between subsystems", verdict(ns.ok));
  c.residuals.push_back({"max_residual", ns.max_residual});
  rep.add(c);
  LocalObservabilityResult lo = check_local_observability(*b);
  CheckRecord l = record("local observability", verdict(lo.ok));
  l.residuals.push_back({"span_dim", lo.span_dim});
  l.residuals.push_back({"expected", lo.expected});
  rep.add(l);
}

void add_candidate_flags(Report& rep, const FaithfulStateReport& f) {
  rep.add(record("candidate symmetric", verdict(f.symmetric)));
  rep.add(record("candidate pure", verdict(f.pure)));
  rep.add(record("candidate dynamically faithful", verdict(f.dyn_faithful[0] && f.dyn_faithful[1])));
  rep.add(record("candidate preparationally faithful",
                 verdict(f.prep_faithful[0] && f.prep_faithful[1])));
}

void suite_pfaith(Context& ctx, Report& rep) {
  const BipartiteSystem* b = ctx.composite();
  const std::string check = "pure symmetric preparationally faithful state";
  if (!b) {
    rep.add(record(check, Outcome::fail, ctx.compose_error));
    return;
  }
  const FaithfulStateReport* f = ctx.faithful();
  if (!f) {
    std::string why = b->effect_cone().is_polyhedral()
                          ? "no swap-symmetric extremal bipartite state is preparationally faithful on both slots"
                          : "the designated candidate is missing or fails";
    rep.add(record(check, Outcome::fail, why));
    if (b->designated_phi) {
      FaithfulStateReport d = analyze_faithful_state(*b, *b->designated_phi);
      add_candidate_flags(rep, d);
    }
    for (const char* name : {"faithful state pure", "transformations isomorphic to bipartite states",
                             "weak self-duality", "atomic transformations give pure outputs",
                             "identity atomic", "marginal invariant under transposed channels",
                             "ensembles of any observable average to the marginal", "marginal internal"})
      rep.add(record(name, Outcome::not_applicable, "requires a faithful state"));
    return;
  }
  CheckRecord c = record(check, Outcome::pass, format_vector(f->phi));
  rep.add(c);
  add_candidate_flags(rep, *f);
  add_validation(rep, faithful_state_suite(*b, f->phi, ctx.opts.samples, ctx.seed()));
  add_validation(rep, faithful_marginal_suite(*b, f->phi, ctx.opts.samples, ctx.seed()));
}

void suite_faithe(Context& ctx, Report& rep) {
  const std::string check = "faithful effect exists";
  const FaithfulStateReport* f = ctx.faithful();
  if (!f) {
    rep.add(record(check, Outcome::not_applicable, "requires a PFAITH state"));
    rep.add(record("teleportation reproduces the input", Outcome::not_applicable, "requires a PFAITH state"));
    rep.add(record("complete faithfulness", Outcome::not_applicable, "requires a PFAITH state"));
    return;
  }
  const BipartiteSystem& b = *ctx.bip;
  const std::string provenance = b.provenance == Provenance::explicit_override
                                     ? "explicit override"
                                     : "minimal tensor product default";
  FaithfulEffectReport fe;
  try {
    fe = solve_faithful_effect(b, f->phi);
  } catch (const InconsistentSystemError& e) {
    rep.add(record(check, Outcome::fail, std::string("no linear solution: ") + e.what()));
    return;
  }
  if (!fe.feasible) {
    std::string w = "LP infeasible over the composite effect cone (" + provenance;
    if (b.effect_cone().is_polyhedral())
      w += ", " + std::to_string(b.effect_cone().generators().size()) + " generators";
    w += ")";
    if (!fe.detail.empty()) w += ": " + fe.detail;
    rep.add(record(check, Outcome::fail, w));
    rep.add(record("teleportation reproduces the input", Outcome::not_applicable, "no faithful effect"));
    rep.add(record("complete faithfulness", Outcome::not_applicable, "no faithful effect"));
    return;
  }
  CheckRecord c = record(check, Outcome::pass, "cone: " + provenance);
  c.residuals.push_back({"alpha", fe.alpha});
  c.residuals.push_back({"alpha_max", fe.alpha_max});
  rep.add(c);

  Rng rng(ctx.seed());
  double prob_err = 0, state_err = 0;
  const int n = std::max(1, ctx.opts.samples / 10);
  for (int k = 0; k < n; ++k) {
    State w = random_state(b.left, rng);
    Teleported t = teleport(b, f->phi, fe, w);
    prob_err = std::max(prob_err, std::abs(t.probability - fe.alpha));
    state_err = std::max(state_err, (t.state.vector - w.vector).cwiseAbs().maxCoeff());
  }
  CheckRecord tp = record("teleportation reproduces the input",
                          verdict(prob_err <= 1e-8 && state_err <= 1e-8));
  tp.residuals.push_back({"probability_error", prob_err});
  tp.residuals.push_back({"state_error", state_err});
  rep.add(tp);

  CompleteFaithfulness cf = check_complete_faithfulness(b, f->phi, fe, n, ctx.seed());
  CheckRecord cr = record("complete faithfulness", verdict(cf.injective && cf.max_residual <= 1e-8));
  cr.residuals.push_back({"max_residual", cf.max_residual});
  rep.add(cr);
}

void suite_purify(Context& ctx, Report& rep) {
  const std::string check = "every state has a pure purification";
  const BipartiteSystem* b = ctx.composite();
  if (!b) {
    rep.add(record(check, Outcome::fail, ctx.compose_error));
    return;
  }
  PurifyReport pr = check_purify(*b, std::max(1, ctx.opts.samples / 40), ctx.seed());
  int failures = 0;
  std::string witness;
  for (const PurifyRecord& r : pr.records) {
    if (r.ok) continue;
    if (failures++ == 0) witness = "no pure purification of " + format_vector(r.state);
  }
  CheckRecord c = record(check, verdict(failures == 0), witness);
  c.residuals.push_back({"tested", static_cast<double>(pr.records.size())});
  c.residuals.push_back({"failures", failures});
  rep.add(c);

  const FaithfulStateReport* f = ctx.faithful();
  if (!f) {
    rep.add(record("purification", Outcome::not_applicable, "requires a faithful state"));
    return;
  }
  PurifyLemmaReport lemma = purify_lemma_suite(*b, f->phi, std::max(1, ctx.opts.samples / 5), ctx.seed());
  if (!lemma.applicable) {
    rep.add(record("purification", Outcome::not_applicable, "some state has no purification"));
    return;
  }
  add_validation(rep, lemma.checks);
}

void suite_ae(Context& ctx, Report& rep) {
  AtomicityClosure ac =
      check_atomicity_closure(ctx.system(), std::max(1, ctx.opts.samples / 5), ctx.seed());
  CheckRecord c = record("atomicity closed under composition", verdict(ac.ok));
  c.residuals.push_back({"tested", ac.tested});
  c.residuals.push_back({"failures", ac.failures});
  rep.add(c);
}

void suite_cj(Context& ctx, Report& rep) {
  const System& s = ctx.system();
  if (s.kraus_frame.empty()) {
    for (const char* name : {"cj isomorphism", "effect algebra", "kraus form"})
      rep.add(record(name, Outcome::not_applicable, "no operator frame: CJ not asserted"));
    return;
  }
  CJCheck cj = check_cj(s, std::max(1, ctx.opts.samples / 10), ctx.seed());
  rep.add(record("cj isomorphism", verdict(cj.ok), cj.detail));
  CJIso tau(s);
  try {
    EffectAlgebra alg = build_effect_algebra(s, tau, 1e-8, ctx.seed());
    CheckRecord c = record("effect algebra", Outcome::pass);
    c.residuals = {{"associativity", alg.residuals.associativity},
                   {"dagger", alg.residuals.dagger},
                   {"identity", alg.residuals.identity},
                   {"trace", alg.residuals.trace},
                   {"representation", alg.residuals.representation},
                   {"min_positivity", alg.residuals.min_positivity},
                   {"blocks", static_cast<double>(alg.blocks.size())},
                   {"hilbert_dim", alg.hilbert_dim}};
    rep.add(c);
  } catch (const AlgebraError& e) {
    rep.add(record("effect algebra", Outcome::fail, e.what()));
  }
  KrausActionReport k = kraus_action_check(s, tau);
  CheckRecord kr = record("kraus form", verdict(k.ok), k.detail);
  kr.residuals.push_back({"gauge_residual", k.gauge_residual});
  rep.add(kr);
}

using Suite = void (*)(Context&, Report&);
const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> v = {
      {"nsf", suite_nsf},       {"pfaith", suite_pfaith}, {"faithe", suite_faithe},
      {"purify", suite_purify}, {"ae", suite_ae},         {"cj", suite_cj}};
  return v;
}

void run_suites(Context& ctx, Report& rep, const std::string& postulate) {
  for (const auto& [name, fn] : suites())
    if (postulate == "all" || postulate == name) fn(ctx, rep);
}

void add_reconstruction(Report& rep, const System& s, std::uint64_t seed) {
  ReconstructionResult r = reconstruct(s, seed);
  rep.facts.push_back({"verdict", to_string(r.verdict)});
  std::string dims;
  for (const ReconstructedBlock& blk : r.blocks) {
    if (!dims.empty()) dims += ",";
    dims += std::to_string(blk.dim) + (blk.perfect_square ? "" : "*");
  }
  rep.facts.push_back({"block_dims", dims});
  rep.facts.push_back({"hilbert_dim", std::to_string(r.hilbert_dim)});

  CheckRecord blocks = record("block structure", Outcome::pass);
  for (size_t i = 0; i < r.blocks.size(); ++i)
    blocks.residuals.push_back({"block" + std::to_string(i) + "_hilbert_dim", r.blocks[i].hilbert_dim});
  rep.add(blocks);

  if (r.verdict == Verdict::not_quantum) {
    rep.add(record("operator representation", Outcome::not_applicable, r.detail));
    return;
  }
  const bool ok = r.pairing_residual <= 1e-8 && r.kraus_residual <= 1e-8;
  CheckRecord c = record("operator representation", verdict(ok), r.detail);
  c.residuals = {{"pairing", r.pairing_residual},
                 {"positivity", r.positivity_residual},
                 {"trace", r.trace_residual},
                 {"kraus", r.kraus_residual}};
  rep.add(c);
}

}  // namespace

std::string format_vector(const Vec& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    char buf[32];
    // Avoid printing -0.
    const double x = std::abs(v(i)) < 5e-13 ? 0.0 : v(i);
    std::snprintf(buf, sizeof buf, "%.6g", x);
    if (i) out += ", ";
    out += buf;
  }
  return out + "]";
}

const std::vector<std::string>& postulate_names() {
  static const std::vector<std::string> v = {"nsf", "pfaith", "faithe", "purify", "ae", "cj", "all"};
  return v;
}

bool is_postulate_name(const std::string& name) {
  const auto& v = postulate_names();
  return std::find(v.begin(), v.end(), name) != v.end();
}

Report run_validate(const LoadedTheory& t, const std::string& subject) {
  Report rep{"validate", subject, {}, {}};
  rep.facts.push_back({"dim", std::to_string(t.system.dim)});
  add_validation(rep, validate(t.system));
  return rep;
}

Report run_check(const LoadedTheory& t, const std::string& subject,
                 const std::string& postulate, const CheckOptions& opts) {
  if (!is_postulate_name(postulate)) throw InvalidArgument("unknown postulate '" + postulate + "'");
  Report rep{"check " + postulate, subject, {}, {}};
  Context ctx(t, opts);
  run_suites(ctx, rep, postulate);
  return rep;
}

Report run_compose(const LoadedTheory& a, const LoadedTheory& b,
                   const std::string& subject, const CheckOptions& opts) {
  Report rep{"compose", subject, {}, {}};
  BipartiteSystem bip = compose_loaded(a, b);
  rep.facts.push_back({"dim", std::to_string(bip.joint.dim)});
  rep.facts.push_back({"provenance", bip.provenance == Provenance::explicit_override
                                         ? "explicit override"
                                         : "minimal tensor product default"});
  if (bip.state_cone().is_polyhedral())
    rep.facts.push_back({"extremal_states", std::to_string(extremal_states(bip.joint).size())});
  add_validation(rep, validate(bip));
  NoSignalingResult ns = check_no_signaling(bip, opts.samples, opts.seed);
  CheckRecord c = record("no signaling between subsystems", verdict(ns.ok));
  c.residuals.push_back({"max_residual", ns.max_residual});
  rep.add(c);
  LocalObservabilityResult lo = check_local_observability(bip);
  CheckRecord l = record("local observability", verdict(lo.ok));
  l.residuals.push_back({"span_dim", lo.span_dim});
  l.residuals.push_back({"expected", lo.expected});
  rep.add(l);
  return rep;
}

Report run_reconstruct(const LoadedTheory& t, const std::string& subject,
                       const CheckOptions& opts) {
  Report rep{"reconstruct", subject, {}, {}};
  add_reconstruction(rep, t.system, opts.seed);
  return rep;
}

Report run_full_report(const LoadedTheory& t, const std::string& subject,
                       const CheckOptions& opts) {
  Report rep{"report", subject, {}, {}};
  add_validation(rep, validate(t.system));
  Context ctx(t, opts);
  run_suites(ctx, rep, "all");
  add_reconstruction(rep, t.system, ctx.seed());
  return rep;
}

}  // namespace conelab
