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

#include <vector>

#include "conelab/linalg.hpp"

namespace conelab {

// minimize c.x subject to a_eq x = b_eq, a_ub x <= b_ub, and x_j >= 0 for
// every j not flagged free.
struct LinearProgram {
  Vec c;
  Mat a_eq;
  Vec b_eq;
  Mat a_ub;
  Vec b_ub;
  std::vector<bool> free_var;  // empty: all variables nonnegative
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Vec x;
  double objective = 0.0;
  // Phase-one residual; positive when infeasible.
  double infeasibility = 0.0;
};

// Dense two-phase simplex with Bland's rule. Throws SolverError on
// iteration blowup or non-finite input.
LpResult solve_lp(const LinearProgram& lp, double tol = kDefaultTolerance);

struct NnlsResult {
  Vec x;
  double residual = 0.0;  // ||A x - b||
};

// Lawson-Hanson active set method for min ||A x - b||, x >= 0.
NnlsResult nnls(const Mat& a, const Vec& b, double tol = 1e-12);

}  // namespace conelab
