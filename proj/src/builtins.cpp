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

#include "conelab/builtins.hpp"

#include <cmath>
#include <regex>

#include "conelab/hermitian.hpp"
#include "conelab/operators.hpp"

namespace conelab {

namespace {

Vec Vec3(double x, double y, double z) { return Eigen::Vector3d(x, y, z); }

Mat psd_embedding_for(const std::vector<CMat>& basis, int d) {
  Mat e(static_cast<Eigen::Index>(basis.size()), d * d);
  for (size_t k = 0; k < basis.size(); ++k)
    for (int p = 0; p < d * d; ++p)
      e(static_cast<Eigen::Index>(k), p) =
          (basis[k] * vec_to_herm(Vec::Unit(d * d, p), d)).trace().real();
  return e;
}

}  // namespace

System make_classical(int d) {
  if (d < 2) throw InvalidArgument("classical dimension must be at least 2");
  std::vector<Vec> gens;
  for (int i = 0; i < d; ++i) gens.push_back(Vec::Unit(d, i));
  std::vector<Mat> ts;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      Mat m = Mat::Zero(d, d);
      m(j, k) = 1.0;
      ts.push_back(m);
    }
  }
  if (d > 1) {
    Mat shift = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) shift(i, (i + 1) % d) = 1.0;
    ts.push_back(shift);
    Mat swap = Mat::Identity(d, d);
    swap.row(0).swap(swap.row(1));
    ts.push_back(swap);
  }
  std::vector<CMat> frame;
  for (int k = 0; k < d; ++k) {
    CMat o = CMat::Zero(d, d);
    o(k, k) = 1.0;
    frame.push_back(o);
  }
  return make_system("classical:" + std::to_string(d),
                     Cone::polyhedral(gens), Vec::Ones(d), gens, ts, frame);
}

System make_quantum(int d) {
  if (d < 2) throw InvalidArgument("quantum dimension must be at least 2");
  const auto basis = gell_mann_basis(d);
  Cone cone = Cone::psd(d, psd_embedding_for(basis, d));
  auto coords = [&](const CMat& a) {
    Vec v(d * d);
    for (int k = 0; k < d * d; ++k) v(k) = (a * basis[k]).trace().real();
    return v;
  };
  const Vec e = coords(CMat::Identity(d, d));

  // Tomographic projectors made into a resolution of the identity.
  std::vector<CMat> proj;
  for (int i = 0; i < d; ++i) {
    CVec v = CVec::Unit(d, i);
    proj.push_back(v * v.adjoint());
  }
  const cplx ii(0.0, 1.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (cplx ph : {cplx(1.0), ii}) {
        CVec v = (CVec::Unit(d, i) + ph * CVec::Unit(d, j)) / std::sqrt(2.0);
        proj.push_back(v * v.adjoint());
      }
    }
  }
  CMat total = CMat::Zero(d, d);
  for (const CMat& p : proj) total += p;
  Eigen::SelfAdjointEigenSolver<CMat> es(total);
  CMat inv_sqrt = es.eigenvectors() *
                  es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                  es.eigenvectors().adjoint();
  std::vector<Vec> ref;
  for (const CMat& p : proj) ref.push_back(coords(inv_sqrt * p * inv_sqrt));

  System bare = make_system("quantum", cone, e, ref, {}, basis);
  std::vector<Mat> ts;
  // Clock and shift conjugations.
  CMat clock = CMat::Zero(d, d), shift = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    clock(k, k) = std::polar(1.0, 2.0 * M_PI * k / d);
    shift((k + 1) % d, k) = 1.0;
  }
  CMat fourier(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      fourier(j, k) = std::polar(1.0 / std::sqrt(double(d)), 2.0 * M_PI * j * k / d);
  CMat phase = CMat::Identity(d, d);
  phase(d - 1, d - 1) = ii;
  for (const CMat& u : {clock, shift, fourier, phase})
    ts.push_back(effect_action_from_kraus(bare, {u}));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      CMat k = CMat::Zero(d, d);
      k(i, j) = 1.0;
      ts.push_back(effect_action_from_kraus(bare, {k}));
    }
  }
  // Completely depolarizing channel: A -> Tr(A) I / d.
  std::vector<CMat> dep;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      CMat k = CMat::Zero(d, d);
      k(i, j) = 1.0 / std::sqrt(double(d));
      dep.push_back(k);
    }
  }
  ts.push_back(effect_action_from_kraus(bare, dep));
  return make_system("quantum:" + std::to_string(d), cone, e, ref, ts, basis);
}

System make_gbit() {
  std::vector<Vec> gens = {Vec3(1, 0, 1), Vec3(-1, 0, 1), Vec3(0, 1, 1),
                           Vec3(0, -1, 1)};
  std::vector<Vec> ref = {Vec3(1, 0, 1) / 4.0, Vec3(0, 1, 1) / 4.0,
                          Vec3(-1, -1, 2) / 4.0};
  std::vector<Mat> ts;
  // Symmetries of the square acting on (x, y).
  for (int r = 0; r < 4; ++r) {
    const double c = std::round(std::cos(r * M_PI / 2));
    const double s = std::round(std::sin(r * M_PI / 2));
    for (int flip = 0; flip < 2; ++flip) {
      Mat m = Mat::Identity(3, 3);
      m(0, 0) = c;
      m(0, 1) = -s;
      m(1, 0) = s;
      m(1, 1) = c;
      if (flip) m.col(1) *= -1.0;
      ts.push_back(m.transpose());
    }
  }
  // Outcome f followed by preparation of a vertex.
  for (const Vec& g : gens) {
    for (int sx : {-1, 1}) {
      for (int sy : {-1, 1}) {
        Vec sigma = Vec3(sx, sy, 1);
        ts.push_back((g / 2.0) * sigma.transpose());
      }
    }
  }
  return make_system("gbit", Cone::polyhedral(gens), Vec3(0, 0, 1), ref, ts);
}

BuiltinSpec builtin_spec(BuiltinKind kind, int d) {
  BuiltinSpec spec;
  spec.kind = kind;
  spec.d = d;
  switch (kind) {
    case BuiltinKind::classical: {
      spec.system = make_classical(d);
      Vec phi = Vec::Zero(d * d);
      for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / d;
      spec.designated_pfaith_candidate = phi;
      break;
    }
    case BuiltinKind::quantum: {
      spec.system = make_quantum(d);
      const auto basis = gell_mann_basis(d);
      CVec psi = CVec::Zero(d * d);
      for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(double(d));
      CMat rho = psi * psi.adjoint();
      Vec phi(d * d * d * d);
      for (int i = 0; i < d * d; ++i)
        for (int j = 0; j < d * d; ++j)
          phi(i * d * d + j) = (rho * kron(basis[i], basis[j])).trace().real();
      spec.designated_pfaith_candidate = phi;
      spec.composite_override =
          tensor_psd_cone(spec.system.effect_cone, spec.system.effect_cone);
      break;
    }
    case BuiltinKind::gbit:
      spec.d = 3;
      spec.system = make_gbit();
      break;
  }
  return spec;
}

bool is_builtin_name(const std::string& name) {
  static const std::regex re("(classical|quantum):[0-9]+|gbit");
  return std::regex_match(name, re);
}

BuiltinSpec parse_builtin(const std::string& name) {
  if (!is_builtin_name(name))
    throw InvalidArgument("unknown builtin '" + name + "'");
  if (name == "gbit") return builtin_spec(BuiltinKind::gbit);
  const auto colon = name.find(':');
  const int d = std::stoi(name.substr(colon + 1));
  if (d < 2 || d > 8) throw InvalidArgument("builtin dimension out of range");
  return builtin_spec(name.substr(0, colon) == "classical" ? BuiltinKind::classical
                                                            : BuiltinKind::quantum,
                      d);
}

BipartiteSystem builtin_composite(const BuiltinSpec& spec) {
  return compose(spec.system, spec.system, spec.composite_override,
                 spec.designated_pfaith_candidate);
}

}  // namespace conelab
