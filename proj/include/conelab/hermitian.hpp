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

#include <random>
#include <vector>

#include "conelab/linalg.hpp"

namespace conelab {

using Rng = std::mt19937_64;

// Orthonormal real coordinates of a Hermitian d x d matrix under the
// Hilbert-Schmidt product: diagonal entries first, then for each i < j the
// pair sqrt2*Re(h_ij), -sqrt2*Im(h_ij).
Vec herm_to_vec(const CMat& h);
CMat vec_to_herm(const Vec& v, int d);

// Generalized Gell-Mann basis, orthonormal under Tr(AB), with I/sqrt(d)
// first. For d = 2 this is (I, X, Y, Z)/sqrt(2).
std::vector<CMat> gell_mann_basis(int d);

CMat hermitian_part(const CMat& m);
Vec eigenvalues_h(const CMat& h);  // ascending
CMat psd_sqrt(const CMat& h);
CMat psd_projection(const CMat& h);  // nearest psd matrix in Frobenius norm

CVec random_unit_vector(int d, Rng& rng);
CMat random_unitary(int d, Rng& rng);
CMat random_density(int d, Rng& rng);

// Deterministic grid of unit vectors: basis vectors and the four balanced
// superpositions of every basis pair.
std::vector<CVec> unit_vector_grid(int d);

double operator_norm(const CMat& m);

}  // namespace conelab
