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

#include "conelab/linalg.hpp"

#include <algorithm>

namespace conelab {

void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected length " +
                         std::to_string(want) + ", got " +
                         std::to_string(got));
  }
}

namespace {

template <typename M>
int rank_impl(const M& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<M> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  double thr = tol * std::max(1.0, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return r;
}

template <typename M>
M null_impl(const M& m, double tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return M::Identity(n, n);
  Eigen::JacobiSVD<M> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double thr = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return svd.matrixV().rightCols(n - r);
}

}  // namespace

int rank(const Mat& m, double tol) { return rank_impl(m, tol); }
int rank(const CMat& m, double tol) { return rank_impl(m, tol); }
Mat null_space(const Mat& m, double tol) { return null_impl(m, tol); }
CMat null_space(const CMat& m, double tol) { return null_impl(m, tol); }

Mat column_space(const Mat& m, double tol) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  double thr = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return svd.matrixU().leftCols(r);
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vec vec_rows(const Mat& m) {
  Vec v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  return v;
}

Mat unvec_rows(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  require_dim(v.size(), rows * cols, "unvec_rows");
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = v(r * cols + c);
  return m;
}

Mat lstsq(const Mat& a, const Mat& b) {
  return a.completeOrthogonalDecomposition().solve(b);
}

CMat lstsq(const CMat& a, const CMat& b) {
  return a.completeOrthogonalDecomposition().solve(b);
}

double max_abs(const Mat& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}
double max_abs(const CMat& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace conelab
