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

#include "conelab/faithful.hpp"

#include <cmath>
#include <sstream>

#include "conelab/lp.hpp"
#include "conelab/operators.hpp"
#include "conelab/sampling.hpp"

namespace conelab {

namespace {

const System& acting(const BipartiteSystem& b, int slot) {
  if (slot == 1) return b.left;
  if (slot == 2) return b.right;
  throw InvalidArgument("slot must be 1 or 2");
}

// Form with the acting slot on the rows.
Mat oriented(const BipartiteSystem& b, const Vec& omega, int slot) {
  Mat w = form_matrix(b, omega);
  return slot == 1 ? w : Mat(w.transpose());
}

Mat inverse_form(const Mat& w) {
  Eigen::FullPivLU<Mat> lu(w);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) throw NotFaithfulError("faithful form is singular");
  return lu.inverse();
}

bool reachable_lp(const System& s, const Mat& phi_t, const Mat& psi_t) {
  const int n = s.dim;
  const Eigen::Index cols = phi_t.cols();
  const auto& eg = s.effect_cone.generators();
  const auto& sg = s.state_cone.generators();
  LinearProgram lp;
  lp.c = Vec::Zero(n * n);
  lp.free_var.assign(n * n, true);
  // M^T phi_t = psi_t, entry (i, k): sum_j M(j, i) phi_t(j, k).
  lp.a_eq = Mat::Zero(n * cols, n * n);
  lp.b_eq.resize(n * cols);
  for (int i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      for (int j = 0; j < n; ++j) lp.a_eq(i * cols + k, j * n + i) = phi_t(j, k);
      lp.b_eq(i * cols + k) = psi_t(i, k);
    }
  }
  const Eigen::Index m = static_cast<Eigen::Index>(eg.size() * sg.size());
  lp.a_ub.resize(m, n * n);
  lp.b_ub = Vec::Zero(m);
  Eigen::Index r = 0;
  for (const Vec& g : eg)
    for (const Vec& w : sg) lp.a_ub.row(r++) = -kron(w, g).transpose();
  return solve_lp(lp, 1e-9).status == LpStatus::optimal;
}

std::vector<Vec> basis_or_reference(const System& s, const std::vector<Vec>& basis) {
  return basis.empty() ? s.reference_observable : basis;
}

}  // namespace

Mat form_matrix(const BipartiteSystem& b, const Vec& omega) {
  require_dim(omega.size(), b.joint.dim, "bipartite vector");
  return unvec_rows(omega, b.left.dim, b.right.dim);
}

bool is_dynamically_faithful(const BipartiteSystem& b, const Vec& phi, int slot) {
  const System& s = acting(b, slot);
  return rank(oriented(b, phi, slot), 1e-10) == s.dim;
}

bool is_preparationally_faithful(const BipartiteSystem& b, const Vec& phi,
                                 int slot, int samples, std::uint64_t seed) {
  const System& s = acting(b, slot);
  const Mat phi_t = oriented(b, phi, slot);
  if (s.effect_cone.is_polyhedral() && b.state_cone().is_polyhedral()) {
    for (const Vec& psi : extremal_rays(b.state_cone()))
      if (!reachable_lp(s, phi_t, oriented(b, psi, slot))) return false;
    return true;
  }
  if (!is_dynamically_faithful(b, phi, slot)) {
    if (b.left.dim == b.right.dim) return false;
    throw SolverError("preparational faithfulness undecided for a singular form");
  }
  if (phi_t.rows() != phi_t.cols())
    throw SolverError("preparational faithfulness needs equal local dimensions");
  const Mat inv = inverse_form(phi_t);
  for (const Vec& psi : sample_generators(b.state_cone(), samples, seed)) {
    Mat m = (oriented(b, psi, slot) * inv).transpose();
    if (s.effect_cone.is_polyhedral()) {
      if (!is_physical(s, {m / std::max(1.0, max_abs(m))})) return false;
    } else if (!is_completely_positive(s, m)) {
      return false;
    }
  }
  return true;
}

Cone transformation_cone(const System& s) {
  const int n = s.dim;
  if (s.effect_cone.is_polyhedral()) {
    const auto& eg = s.effect_cone.generators();
    const auto& sg = s.state_cone.generators();
    Mat normals(static_cast<Eigen::Index>(eg.size() * sg.size()), n * n);
    Eigen::Index r = 0;
    for (const Vec& g : eg)
      for (const Vec& w : sg) normals.row(r++) = kron(w, g).transpose();
    return Cone::polyhedral(enumerate_rays(normals, kDefaultGeneratorBudget, 1e-10),
                            s.tolerance());
  }
  const int d = s.effect_cone.hilbert_dim();
  const int p = d * d;
  Mat emb(n * n, p * p);
  for (int k = 0; k < p * p; ++k)
    emb.col(k) = vec_rows(effect_action_from_choi(s, vec_to_herm(Vec::Unit(p * p, k), p)));
  return Cone::psd(p, emb, s.tolerance());
}

bool is_atomic(const System& s, const Transformation& t) {
  return is_extremal(transformation_cone(s), vec_rows(t.matrix));
}

FaithfulStateReport analyze_faithful_state(const BipartiteSystem& b,
                                           const Vec& phi) {
  FaithfulStateReport r;
  r.phi = phi;
  const double tol = b.joint.tolerance();
  r.symmetric = b.left.dim == b.right.dim &&
                (swap_slots(phi, b.left.dim, b.right.dim) - phi).cwiseAbs().maxCoeff() <=
                    tol * std::max(1.0, phi.cwiseAbs().maxCoeff());
  r.pure = is_extremal(b.state_cone(), phi);
  for (int slot : {1, 2}) {
    r.dyn_faithful[slot - 1] = is_dynamically_faithful(b, phi, slot);
    r.prep_faithful[slot - 1] = is_preparationally_faithful(b, phi, slot);
  }
  r.chi = marginal(b, {phi}, 2).vector;
  if (r.symmetric) {
    try {
      r.jordan = jordan_scalar_product(b, phi);
    } catch (const DegenerateFormError&) {
    }
  }
  return r;
}

std::optional<FaithfulStateReport> find_pfaith_state(const BipartiteSystem& b) {
  auto passes = [](const FaithfulStateReport& r) {
    return r.symmetric && r.pure && r.prep_faithful[0] && r.prep_faithful[1];
  };
  if (!b.state_cone().is_polyhedral()) {
    if (!b.designated_phi) return std::nullopt;
    auto r = analyze_faithful_state(b, *b.designated_phi);
    if (passes(r)) return r;
    return std::nullopt;
  }
  if (b.left.dim != b.right.dim) return std::nullopt;
  for (const Vec& ray : extremal_rays(b.state_cone())) {
    Vec phi = ray / ray.dot(b.unit_effect());
    Vec sw = swap_slots(phi, b.left.dim, b.right.dim);
    if ((sw - phi).cwiseAbs().maxCoeff() > b.joint.tolerance()) continue;
    if (!is_preparationally_faithful(b, phi, 1) ||
        !is_preparationally_faithful(b, phi, 2))
      continue;
    auto r = analyze_faithful_state(b, phi);
    if (passes(r)) return r;
  }
  return std::nullopt;
}

Transformation transpose(const BipartiteSystem& b, const Vec& phi,
                         const Transformation& t) {
  require_dim(t.matrix.rows(), b.right.dim, "transpose input");
  Mat w = form_matrix(b, phi);
  if (w.rows() != w.cols()) throw NotFaithfulError("transpose needs identical systems");
  return {inverse_form(w).transpose() * t.matrix.transpose() * w.transpose()};
}

CMat transpose(const BipartiteSystem& b, const Vec& phi, const CMat& t) {
  Mat w = form_matrix(b, phi);
  if (w.rows() != w.cols()) throw NotFaithfulError("transpose needs identical systems");
  CMat winv = inverse_form(w).transpose().cast<cplx>();
  return winv * t.transpose() * w.transpose().cast<cplx>();
}

JordanForm jordan_scalar_product(const BipartiteSystem& b, const Vec& phi,
                                 const std::vector<Vec>& basis) {
  const auto l = basis_or_reference(b.left, basis);
  const int n = b.left.dim;
  require_dim(static_cast<Eigen::Index>(l.size()), n, "jordan basis");
  Mat lm(n, n);
  for (int i = 0; i < n; ++i) lm.col(i) = l[i];
  Eigen::FullPivLU<Mat> lu(lm);
  if (!lu.isInvertible()) throw InvalidArgument("jordan basis is not a basis");
  Mat w = form_matrix(b, phi);
  JordanForm j;
  j.gram = lm.transpose() * w * lm;
  if ((j.gram - j.gram.transpose()).cwiseAbs().maxCoeff() > b.joint.tolerance())
    throw InvalidArgument("jordan form needs a symmetric state");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (j.gram + j.gram.transpose()));
  const Vec ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  Vec sg(n), ab(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(ev(i)) < b.joint.tolerance() * scale)
      throw DegenerateFormError("degenerate faithful form");
    sg(i) = ev(i) > 0 ? 1.0 : -1.0;
    ab(i) = std::abs(ev(i));
    (ev(i) > 0 ? j.n_plus : j.n_minus)++;
  }
  const Mat& v = es.eigenvectors();
  Mat linv = lu.inverse();
  j.involution = lm * v * sg.asDiagonal() * v.transpose() * linv;
  j.abs_form = linv.transpose() * v * ab.asDiagonal() * v.transpose() * linv;
  return j;
}

CMat adjoint(const BipartiteSystem& b, const Vec& phi, const CMat& t,
             const std::vector<Vec>& basis) {
  JordanForm j = jordan_scalar_product(b, phi, basis);
  CMat s = j.involution.cast<cplx>();
  return s * transpose(b, phi, t).conjugate() * s;
}

ValidationReport faithful_state_suite(const BipartiteSystem& b, const Vec& phi,
                                int samples, std::uint64_t seed) {
  ValidationReport rep;
  const System& s = b.left;
  const int n = s.dim;
  const Mat w = form_matrix(b, phi);
  auto record = [&](const std::string& name, auto&& fn) {
    try {
      auto [ok, detail] = fn();
      rep.records.push_back({name, ok, detail});
    } catch (const Error& e) {
      rep.records.push_back({name, false, e.what()});
    }
  };
  record("faithful state pure", [&] {
    return std::pair{is_extremal(b.state_cone(), phi), std::string()};
  });
  Cone tcone = transformation_cone(s);
  // A -> (A (x) I) Phi in vec_rows coordinates.
  Mat imprint(b.joint.dim, n * n);
  for (int k = 0; k < n * n; ++k)
    imprint.col(k) = vec_rows(unvec_rows(Vec::Unit(n * n, k), n, n).transpose() * w);
  record("transformations isomorphic to bipartite states", [&] {
    bool ok = check_cone_isomorphism(imprint, tcone, b.state_cone(), samples);
    return std::pair{ok, std::string()};
  });
  record("weak self-duality", [&] {
    bool ok = check_cone_isomorphism(w.transpose(), s.effect_cone, s.state_cone, samples);
    return std::pair{ok, std::string()};
  });
  record("atomic transformations give pure outputs", [&] {
    std::vector<Vec> atoms = tcone.is_polyhedral()
                                 ? extremal_rays(tcone)
                                 : sample_generators(tcone, samples, seed);
    int bad = 0;
    for (const Vec& a : atoms)
      if (!is_extremal(b.state_cone(), imprint * a)) ++bad;
    // Mixtures of two distinct atoms are refinable and must give mixed outputs.
    for (size_t i = 0; i + 1 < atoms.size(); ++i) {
      Vec mix = atoms[i] / atoms[i].norm() + atoms[i + 1] / atoms[i + 1].norm();
      if (is_extremal(b.state_cone(), imprint * mix) != is_extremal(tcone, mix)) ++bad;
    }
    std::ostringstream os;
    os << bad << " mismatches over " << atoms.size() << " atoms";
    return std::pair{bad == 0, os.str()};
  });
  return rep;
}

ValidationReport faithful_marginal_suite(const BipartiteSystem& b, const Vec& phi,
                                int samples, std::uint64_t seed) {
  ValidationReport rep;
  const System& s = b.left;
  const double tol = b.joint.tolerance();
  const Mat w = form_matrix(b, phi);
  const Vec chi = w.transpose() * s.unit_effect;
  {
    bool atomic = is_atomic(s, identity_transformation(s.dim));
    rep.records.push_back({"identity atomic", atomic, atomic ? "atomic" : "refinable"});
  }
  {
    Rng rng(seed);
    double worst = 0;
    try {
      for (int k = 0; k < samples; ++k) {
        Transformation t = random_deterministic(s, rng);
        worst = std::max(worst, (state_action(transpose(b, phi, t)) * chi - chi).cwiseAbs().maxCoeff());
      }
      rep.records.push_back({"marginal invariant under transposed channels", worst <= 1e-8,
                             "max residual " + std::to_string(worst)});
    } catch (const Error& e) {
      rep.records.push_back({"marginal invariant under transposed channels", false, e.what()});
    }
  }
  {
    // Two observables: the reference one and a coarse mixture of it with a
    // rotated copy obtained from a random channel.
    Rng rng(seed + 1);
    std::vector<std::vector<Vec>> observables = {s.reference_observable};
    Transformation t = random_deterministic(s, rng);
    std::vector<Vec> other;
    for (const Vec& a : s.reference_observable) other.push_back(t.matrix * a);
    observables.push_back(other);
    double worst = 0;
    for (const auto& obs : observables) {
      Vec sum = Vec::Zero(s.dim);
      for (const Vec& a : obs) sum += w.transpose() * a;
      worst = std::max(worst, (sum - chi).cwiseAbs().maxCoeff());
    }
    rep.records.push_back({"ensembles of any observable average to the marginal",
                           worst <= 1e-9, "max residual " + std::to_string(worst)});
  }
  {
    std::vector<Vec> ext = s.state_cone.is_polyhedral()
                               ? extremal_states(s)
                               : sample_generators(s.state_cone, samples, seed);
    bool ok = true;
    for (const Vec& x : ext) {
      Vec z = x / x.dot(s.unit_effect);
      if (max_step_inside(s.state_cone, chi, z, 1.0) <= tol * 10) ok = false;
    }
    rep.records.push_back({"marginal internal", ok, ""});
  }
  return rep;
}

}  // namespace conelab
