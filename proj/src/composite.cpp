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

#include "conelab/composite.hpp"

#include <cmath>

#include "conelab/sampling.hpp"

namespace conelab {

namespace {

// Hermitian operators F_i with coordinate i of X equal to Tr(X F_i).
std::vector<CMat> coordinate_functionals(const Cone& c) {
  const int d = c.hilbert_dim();
  std::vector<CMat> out;
  for (int i = 0; i < c.ambient_dim(); ++i) {
    CMat f = CMat::Zero(d, d);
    for (int p = 0; p < d * d; ++p)
      f += c.embedding()(i, p) * vec_to_herm(Vec::Unit(d * d, p), d);
    out.push_back(f);
  }
  return out;
}

}  // namespace

Cone tensor_psd_cone(const Cone& a, const Cone& b) {
  if (a.is_polyhedral() || b.is_polyhedral())
    throw InvalidArgument("tensor_psd_cone needs two psd cones");
  auto fa = coordinate_functionals(a);
  auto fb = coordinate_functionals(b);
  const int d = a.hilbert_dim() * b.hilbert_dim();
  std::vector<CMat> basis;
  for (int p = 0; p < d * d; ++p) basis.push_back(vec_to_herm(Vec::Unit(d * d, p), d));
  Mat e(static_cast<Eigen::Index>(fa.size() * fb.size()), d * d);
  for (size_t i = 0; i < fa.size(); ++i) {
    for (size_t j = 0; j < fb.size(); ++j) {
      CMat f = kron(fa[i], fb[j]);
      for (int p = 0; p < d * d; ++p)
        e(static_cast<Eigen::Index>(i * fb.size() + j), p) = (basis[p] * f).trace().real();
    }
  }
  return Cone::psd(d, e, std::min(a.tolerance(), b.tolerance()));
}

Vec product(const Vec& x, const Vec& y) { return kron(x, y); }

BipartiteSystem compose(const System& s1, const System& s2,
                        const std::optional<Cone>& override_effect_cone,
                        std::optional<Vec> designated_phi) {
  const int n = s1.dim * s2.dim;
  Cone cone;
  Provenance prov = Provenance::min_tensor_default;
  if (override_effect_cone) {
    require_dim(override_effect_cone->ambient_dim(), n, "composite override cone");
    for (const Vec& a : sample_generators(s1.effect_cone, 20))
      for (const Vec& b : sample_generators(s2.effect_cone, 20))
        if (!member(*override_effect_cone, kron(a, b)))
          throw InvalidArgument("override cone misses a product of local effects");
    cone = *override_effect_cone;
    prov = Provenance::explicit_override;
  } else {
    if (!s1.effect_cone.is_polyhedral() || !s2.effect_cone.is_polyhedral())
      throw InvalidArgument("psd systems need an explicit composite effect cone");
    std::vector<Vec> gens;
    for (const Vec& a : extremal_rays(s1.effect_cone))
      for (const Vec& b : extremal_rays(s2.effect_cone)) gens.push_back(kron(a, b));
    cone = Cone::polyhedral(gens, std::min(s1.tolerance(), s2.tolerance()));
  }

  std::vector<Vec> ref;
  for (const Vec& l : s1.reference_observable)
    for (const Vec& m : s2.reference_observable) ref.push_back(kron(l, m));
  std::vector<Mat> gens;
  const Mat i1 = Mat::Identity(s1.dim, s1.dim);
  const Mat i2 = Mat::Identity(s2.dim, s2.dim);
  for (const Mat& t : s1.transformation_generators) gens.push_back(kron(t, i2));
  for (const Mat& t : s2.transformation_generators) gens.push_back(kron(i1, t));
  std::vector<CMat> frame;
  if (!s1.kraus_frame.empty() && !s2.kraus_frame.empty())
    for (const CMat& a : s1.kraus_frame)
      for (const CMat& b : s2.kraus_frame) frame.push_back(kron(a, b));

  BipartiteSystem b;
  b.left = s1;
  b.right = s2;
  b.joint = make_system(s1.name + "*" + s2.name, std::move(cone),
                        kron(s1.unit_effect, s2.unit_effect), std::move(ref),
                        std::move(gens), std::move(frame));
  b.provenance = prov;
  if (designated_phi) require_dim(designated_phi->size(), n, "designated state");
  b.designated_phi = std::move(designated_phi);
  return b;
}

Transformation local(const BipartiteSystem& b, const Transformation& t,
                     int slot) {
  if (slot == 1) {
    require_dim(t.matrix.rows(), b.left.dim, "local transformation");
    return {kron(t.matrix, Mat::Identity(b.right.dim, b.right.dim))};
  }
  if (slot == 2) {
    require_dim(t.matrix.rows(), b.right.dim, "local transformation");
    return {kron(Mat::Identity(b.left.dim, b.left.dim), t.matrix)};
  }
  throw InvalidArgument("slot must be 1 or 2");
}

State marginal(const BipartiteSystem& b, const State& omega, int slot) {
  require_dim(omega.vector.size(), b.joint.dim, "marginal");
  Mat m = unvec_rows(omega.vector, b.left.dim, b.right.dim);
  if (slot == 1) return {m * b.right.unit_effect};
  if (slot == 2) return {m.transpose() * b.left.unit_effect};
  throw InvalidArgument("slot must be 1 or 2");
}

double joint_pairing(const Vec& omega, const Vec& a, const Vec& b) {
  return omega.dot(kron(a, b));
}

Vec swap_slots(const Vec& v, int d1, int d2) {
  return permute_slots(v, {d1, d2}, {1, 0});
}

NoSignalingResult check_no_signaling(const BipartiteSystem& b, int samples,
                                     std::uint64_t seed) {
  Rng rng(seed);
  NoSignalingResult res;
  for (int k = 0; k < samples; ++k) {
    State omega = random_state(b.joint, rng);
    Transformation d = random_deterministic(b.right, rng);
    Vec after = state_action(local(b, d, 2)) * omega.vector;
    double r = (marginal(b, {after}, 1).vector - marginal(b, omega, 1).vector)
                   .cwiseAbs()
                   .maxCoeff();
    res.max_residual = std::max(res.max_residual, r);
  }
  res.ok = res.max_residual <= b.joint.tolerance();
  return res;
}

LocalObservabilityResult check_local_observability(const BipartiteSystem& b) {
  LocalObservabilityResult r;
  r.span_dim = span_dimension(b.effect_cone());
  r.expected = b.left.dim * b.right.dim;
  r.ok = r.span_dim == r.expected;
  return r;
}

ValidationReport validate(const BipartiteSystem& b) {
  ValidationReport rep;
  bool embed_ok = true;
  for (const Vec& a : sample_generators(b.left.effect_cone, 20))
    for (const Vec& c : sample_generators(b.right.effect_cone, 20))
      if (!member(b.effect_cone(), kron(a, c))) embed_ok = false;
  rep.records.push_back({"composite effect cone contains local products", embed_ok, ""});
  ValidationReport joint = validate(b.joint);
  for (auto& r : joint.records) rep.records.push_back(r);
  bool fact_ok = true;
  for (const Vec& w : sample_generators(b.left.state_cone, 20))
    for (const Vec& z : sample_generators(b.right.state_cone, 20))
      if (!member(b.state_cone(), kron(w, z))) fact_ok = false;
  rep.records.push_back({"factorized states exist", fact_ok, ""});
  return rep;
}

bool is_physical_with_ancilla(const BipartiteSystem& b,
                              const Transformation& t) {
  return is_physical(b.joint, local(b, t, 1));
}

Vec permute_slots(const Vec& v, const std::vector<int>& dims,
                  const std::vector<int>& perm) {
  const size_t k = dims.size();
  if (perm.size() != k) throw InvalidArgument("permutation size mismatch");
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  require_dim(v.size(), total, "permute_slots");
  std::vector<int> out_dims(k);
  for (size_t i = 0; i < k; ++i) out_dims[i] = dims[perm[i]];
  Vec out(total);
  std::vector<int> idx(k, 0);
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    // decode flat as input multi-index
    Eigen::Index rem = flat;
    for (size_t i = k; i-- > 0;) {
      idx[i] = static_cast<int>(rem % dims[i]);
      rem /= dims[i];
    }
    Eigen::Index o = 0;
    for (size_t i = 0; i < k; ++i) o = o * out_dims[i] + idx[perm[i]];
    out(o) = v(flat);
  }
  return out;
}

}  // namespace conelab
