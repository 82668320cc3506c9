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

#include <array>
#include <optional>
#include <vector>

#include "conelab/composite.hpp"

namespace conelab {

// Bipartite vectors are read as matrices with Omega(a, b) = a^T W b, where
// W = unvec_rows(omega, dim1, dim2).
Mat form_matrix(const BipartiteSystem& b, const Vec& omega);

struct JordanForm {
  Mat gram;        // Phi(l_i, l_j) on the chosen basis
  Mat involution;  // pi_plus - pi_minus, in storage coordinates
  Mat abs_form;    // |Phi| as a bilinear form in storage coordinates
  int n_plus = 0;
  int n_minus = 0;
};

struct FaithfulStateReport {
  Vec phi;
  bool symmetric = false;
  bool pure = false;
  std::array<bool, 2> dyn_faithful{};
  std::array<bool, 2> prep_faithful{};
  Vec chi;
  std::optional<JordanForm> jordan;
};

bool is_dynamically_faithful(const BipartiteSystem& b, const Vec& phi, int slot);

// Polyhedral systems: one feasibility LP per extremal bipartite state.
// Psd systems: the unique linear preimage of sampled pure states is tested
// for complete positivity. Throws SolverError when undecidable.
bool is_preparationally_faithful(const BipartiteSystem& b, const Vec& phi,
                                 int slot, int samples = 40,
                                 std::uint64_t seed = 0);

// Cone of maps sending the effect cone into itself, in vec_rows coordinates.
// For psd systems this is the completely positive cone.
Cone transformation_cone(const System& s);
bool is_atomic(const System& s, const Transformation& t);

FaithfulStateReport analyze_faithful_state(const BipartiteSystem& b,
                                           const Vec& phi);

// Psd composites use the designated candidate; polyhedral ones scan the
// swap-symmetric extremal rays in enumeration order.
std::optional<FaithfulStateReport> find_pfaith_state(const BipartiteSystem& b);

// Unique T' with (T' (x) I) Phi = (I (x) T) Phi.
Transformation transpose(const BipartiteSystem& b, const Vec& phi,
                         const Transformation& t);
CMat transpose(const BipartiteSystem& b, const Vec& phi, const CMat& t);

// The basis defaults to the reference observable.
JordanForm jordan_scalar_product(const BipartiteSystem& b, const Vec& phi,
                                 const std::vector<Vec>& basis = {});

// Adjoint for the sesquilinear product |Phi| on complexified effects.
CMat adjoint(const BipartiteSystem& b, const Vec& phi, const CMat& t,
             const std::vector<Vec>& basis = {});

ValidationReport faithful_state_suite(const BipartiteSystem& b, const Vec& phi,
                                int samples = 60, std::uint64_t seed = 0);
ValidationReport faithful_marginal_suite(const BipartiteSystem& b, const Vec& phi,
                                int samples = 60, std::uint64_t seed = 0);

}  // namespace conelab
