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

#include "conelab/hermitian.hpp"

#include <cmath>

namespace conelab {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

Vec herm_to_vec(const CMat& h) {
  const int d = static_cast<int>(h.rows());
  Vec v(d * d);
  int k = 0;
  for (int i = 0; i < d; ++i) v(k++) = h(i, i).real();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      cplx z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      v(k++) = kSqrt2 * z.real();
      v(k++) = -kSqrt2 * z.imag();
    }
  }
  return v;
}

CMat vec_to_herm(const Vec& v, int d) {
  require_dim(v.size(), d * d, "vec_to_herm");
  CMat h = CMat::Zero(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) h(i, i) = v(k++);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      double re = v(k++) / kSqrt2;
      double im = -v(k++) / kSqrt2;
      h(i, j) = cplx(re, im);
      h(j, i) = cplx(re, -im);
    }
  }
  return h;
}

std::vector<CMat> gell_mann_basis(int d) {
  std::vector<CMat> out;
  out.push_back(CMat::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      CMat s = CMat::Zero(d, d);
      s(i, j) = s(j, i) = 1.0 / kSqrt2;
      out.push_back(s);
      CMat a = CMat::Zero(d, d);
      a(i, j) = cplx(0, -1.0 / kSqrt2);
      a(j, i) = cplx(0, 1.0 / kSqrt2);
      out.push_back(a);
    }
  }
  for (int l = 1; l < d; ++l) {
    CMat z = CMat::Zero(d, d);
    double norm = std::sqrt(static_cast<double>(l * (l + 1)));
    for (int k = 0; k < l; ++k) z(k, k) = 1.0 / norm;
    z(l, l) = -static_cast<double>(l) / norm;
    out.push_back(z);
  }
  return out;
}

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

Vec eigenvalues_h(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

CMat psd_sqrt(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(h));
  Vec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() *
         es.eigenvectors().adjoint();
}

CMat psd_projection(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(h));
  Vec ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() *
         es.eigenvectors().adjoint();
}

CVec random_unit_vector(int d, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CVec v(d);
  for (int i = 0; i < d; ++i) {
    double re = nd(rng);
    double im = nd(rng);
    v(i) = cplx(re, im);
  }
  return v / v.norm();
}

CMat random_unitary(int d, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMat g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double re = nd(rng);
      double im = nd(rng);
      g(i, j) = cplx(re, im);
    }
  }
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    cplx ph = r(i, i) / std::abs(r(i, i));
    q.col(i) *= ph;
  }
  return q;
}

CMat random_density(int d, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMat g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double re = nd(rng);
      double im = nd(rng);
      g(i, j) = cplx(re, im);
    }
  }
  CMat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

std::vector<CVec> unit_vector_grid(int d) {
  std::vector<CVec> out;
  for (int i = 0; i < d; ++i) out.push_back(CVec::Unit(d, i));
  const cplx phases[4] = {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (const cplx& p : phases) {
        CVec v = CVec::Zero(d);
        v(i) = 1.0 / kSqrt2;
        v(j) = p / kSqrt2;
        out.push_back(v);
      }
    }
  }
  return out;
}

double operator_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace conelab
