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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace conelab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

constexpr double kDefaultTolerance = 1e-9;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
// LP/NNLS breakdown; distinct from a negative answer.
struct SolverError : Error {
  using Error::Error;
};
struct ResourceError : Error {
  using Error::Error;
};
struct SingularMapError : Error {
  using Error::Error;
};
struct ZeroProbabilityError : Error {
  using Error::Error;
};
struct NotFaithfulError : Error {
  using Error::Error;
};
struct DegenerateFormError : Error {
  using Error::Error;
};
struct AlgebraError : Error {
  using Error::Error;
};
struct NotAssertedError : Error {
  using Error::Error;
};
struct InconsistentSystemError : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};

void require_dim(Eigen::Index got, Eigen::Index want, const char* what);

// Numerical rank with threshold tol * max(1, largest singular value).
int rank(const Mat& m, double tol = 1e-9);
int rank(const CMat& m, double tol = 1e-9);

// Orthonormal basis of the kernel, as columns.
Mat null_space(const Mat& m, double tol = 1e-9);
CMat null_space(const CMat& m, double tol = 1e-9);

// Orthonormal basis of the column space.
Mat column_space(const Mat& m, double tol = 1e-9);

Mat kron(const Mat& a, const Mat& b);
CMat kron(const CMat& a, const CMat& b);
Vec kron(const Vec& a, const Vec& b);

Vec vec_rows(const Mat& m);
Mat unvec_rows(const Vec& v, Eigen::Index rows, Eigen::Index cols);

// Least-squares solve through a complete orthogonal decomposition.
Mat lstsq(const Mat& a, const Mat& b);
CMat lstsq(const CMat& a, const CMat& b);

double max_abs(const Mat& m);
double max_abs(const CMat& m);

}  // namespace conelab
