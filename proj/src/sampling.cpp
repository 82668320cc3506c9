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

#include "conelab/sampling.hpp"

#include "conelab/operators.hpp"

namespace conelab {

namespace {

std::vector<double> dirichlet(size_t n, Rng& rng) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> w(n);
  double total = 0;
  for (auto& x : w) {
    x = ex(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

bool unit_is_identity(const System& s) {
  CMat e = effect_operator(s, s.unit_effect);
  return (e - CMat::Identity(e.rows(), e.cols())).norm() < 1e-9;
}

}  // namespace

std::vector<Vec> extremal_states(const System& s) {
  if (!s.state_cone.is_polyhedral())
    throw InvalidArgument("extremal_states needs a polyhedral state cone");
  std::vector<Vec> out;
  for (const Vec& g : extremal_rays(s.state_cone)) {
    double n = g.dot(s.unit_effect);
    if (n <= s.tolerance()) throw InvalidArgument("state ray with zero normalization");
    out.push_back(g / n);
  }
  return out;
}

std::vector<Vec> effect_polytope_vertices(const System& s) {
  if (!s.state_cone.is_polyhedral())
    throw InvalidArgument("effect polytope needs a polyhedral state cone");
  const auto& sg = s.state_cone.generators();
  const Eigen::Index m = static_cast<Eigen::Index>(sg.size());
  Mat normals = Mat::Zero(2 * m, s.dim + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    normals.row(i).head(s.dim) = sg[i].transpose();
    normals.row(m + i).head(s.dim) = -sg[i].transpose();
    normals(m + i, s.dim) = sg[i].dot(s.unit_effect);
  }
  std::vector<Vec> out;
  for (const Vec& r : enumerate_rays(normals)) {
    double t = r(s.dim);
    if (t > 1e-12) out.push_back(r.head(s.dim) / t);
  }
  return out;
}

State random_state(const System& s, Rng& rng) {
  if (!s.state_cone.is_polyhedral()) {
    const int d = s.state_cone.hilbert_dim();
    Vec w = state_from_operator(s, random_density(d, rng));
    return {w / w.dot(s.unit_effect)};
  }
  auto ext = extremal_states(s);
  auto wts = dirichlet(ext.size(), rng);
  Vec w = Vec::Zero(s.dim);
  for (size_t i = 0; i < ext.size(); ++i) w += wts[i] * ext[i];
  return {w};
}

Effect random_effect(const System& s, Rng& rng) {
  if (!s.effect_cone.is_polyhedral()) {
    const int d = s.effect_cone.hilbert_dim();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CMat v = random_unitary(d, rng);
    Vec ev(d);
    for (int i = 0; i < d; ++i) ev(i) = u(rng);
    CMat b = v * ev.cast<cplx>().asDiagonal() * v.adjoint();
    CMat r = psd_sqrt(effect_operator(s, s.unit_effect));
    return {effect_from_operator(s, r * b * r)};
  }
  auto verts = effect_polytope_vertices(s);
  auto wts = dirichlet(verts.size(), rng);
  Vec a = Vec::Zero(s.dim);
  for (size_t i = 0; i < verts.size(); ++i) a += wts[i] * verts[i];
  return {a};
}

Transformation measure_prepare(const System& s, const std::vector<Vec>& states) {
  if (states.size() != s.reference_observable.size())
    throw InvalidArgument("one prepared state per reference effect");
  Mat m = Mat::Zero(s.dim, s.dim);
  for (size_t i = 0; i < states.size(); ++i)
    m += s.reference_observable[i] * states[i].transpose();
  return {m};
}

Transformation random_deterministic(const System& s, Rng& rng) {
  if (!s.effect_cone.is_polyhedral() && unit_is_identity(s)) {
    const int d = s.effect_cone.hilbert_dim();
    std::uniform_int_distribution<int> rk(1, 3);
    std::normal_distribution<double> nd(0.0, 1.0);
    int r = rk(rng);
    std::vector<CMat> g(r, CMat(d, d));
    CMat total = CMat::Zero(d, d);
    for (auto& gk : g) {
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          double re = nd(rng);
          double im = nd(rng);
          gk(i, j) = cplx(re, im);
        }
      }
      total += gk.adjoint() * gk;
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(total);
    CMat inv_sqrt = es.eigenvectors() *
                    es.eigenvalues().cwiseInverse().cwiseSqrt().cast<cplx>().asDiagonal() *
                    es.eigenvectors().adjoint();
    for (auto& gk : g) gk = gk * inv_sqrt;
    return {effect_action_from_kraus(s, g)};
  }
  std::vector<Mat> det;
  for (const Mat& t : s.transformation_generators)
    if (is_deterministic(s, {t})) det.push_back(t);
  std::uniform_int_distribution<int> mode(0, 3);
  std::vector<Vec> prep;
  for (size_t i = 0; i < s.reference_observable.size(); ++i)
    prep.push_back(random_state(s, rng).vector);
  Mat mp = measure_prepare(s, prep).matrix;
  if (det.empty()) return {mp};
  std::uniform_int_distribution<size_t> pick(0, det.size() - 1);
  int md = mode(rng);
  if (md == 0) {
    Mat a = det[pick(rng)];
    return {a};
  }
  if (md == 1) {
    Mat a = det[pick(rng)];
    Mat b = det[pick(rng)];
    return {b * a};
  }
  std::vector<Mat> parts{mp};
  for (int k = 0; k < 3; ++k) parts.push_back(det[pick(rng)]);
  auto w = dirichlet(parts.size(), rng);
  Mat m = Mat::Zero(s.dim, s.dim);
  for (size_t i = 0; i < parts.size(); ++i) m += w[i] * parts[i];
  return {m};
}

Transformation random_physical(const System& s, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Transformation d = random_deterministic(s, rng);
  return scale(d, u(rng));
}

}  // namespace conelab
