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

#include "conelab/operators.hpp"

namespace conelab {

namespace {

void require_psd(const System& s) {
  if (s.effect_cone.is_polyhedral())
    throw InvalidArgument("operator view needs a psd-embedded system");
}

CMat apply_hermitian(const System& s, const Mat& m, const CMat& h) {
  return effect_operator(s, m * effect_from_operator(s, h));
}

}  // namespace

CMat effect_operator(const System& s, const Vec& a) {
  require_psd(s);
  return s.effect_cone.preimage(a);
}

CMat state_operator(const System& s, const Vec& w) {
  require_psd(s);
  return s.state_cone.preimage(w);
}

Vec effect_from_operator(const System& s, const CMat& a) {
  require_psd(s);
  return s.effect_cone.embed(hermitian_part(a));
}

Vec state_from_operator(const System& s, const CMat& rho) {
  require_psd(s);
  return s.state_cone.embed(hermitian_part(rho));
}

Mat effect_action_from_kraus(const System& s, const std::vector<CMat>& kraus) {
  Mat m(s.dim, s.dim);
  for (int c = 0; c < s.dim; ++c) {
    CMat a = effect_operator(s, Vec::Unit(s.dim, c));
    CMat out = CMat::Zero(a.rows(), a.cols());
    for (const CMat& k : kraus) out += k.adjoint() * a * k;
    m.col(c) = effect_from_operator(s, out);
  }
  return m;
}

CMat apply_effect_action(const System& s, const Mat& m, const CMat& x) {
  CMat h1 = 0.5 * (x + x.adjoint());
  CMat h2 = (x - x.adjoint()) / cplx(0, 2);
  return apply_hermitian(s, m, h1) + cplx(0, 1) * apply_hermitian(s, m, h2);
}

CMat choi_of_effect_action(const System& s, const Mat& m) {
  require_psd(s);
  const int d = s.effect_cone.hilbert_dim();
  CMat j = CMat::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      CMat eab = CMat::Zero(d, d);
      eab(a, b) = 1.0;
      j.block(a * d, b * d, d, d) = apply_effect_action(s, m, eab);
    }
  }
  return j;
}

Mat effect_action_from_choi(const System& s, const CMat& choi) {
  require_psd(s);
  const int d = s.effect_cone.hilbert_dim();
  require_dim(choi.rows(), d * d, "choi operator");
  Mat m(s.dim, s.dim);
  for (int c = 0; c < s.dim; ++c) {
    CMat x = effect_operator(s, Vec::Unit(s.dim, c));
    CMat out = CMat::Zero(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) out += x(a, b) * choi.block(a * d, b * d, d, d);
    m.col(c) = effect_from_operator(s, out);
  }
  return m;
}

bool is_completely_positive(const System& s, const Mat& m) {
  Vec ev = eigenvalues_h(choi_of_effect_action(s, m));
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev(0) >= -s.tolerance() * scale;
}

}  // namespace conelab
