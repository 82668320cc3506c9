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

#include <cstdint>
#include <vector>

#include "conelab/hermitian.hpp"
#include "conelab/linalg.hpp"

namespace conelab {

enum class ConeBackend { polyhedral, psd };

// A pointed convex cone, either finitely generated or the image of the
// positive semidefinite cone of Hermitian d x d matrices under an injective
// linear embedding (acting on herm_to_vec coordinates).
class Cone {
 public:
  Cone() = default;  // empty placeholder; use the named constructors
  static Cone polyhedral(std::vector<Vec> generators,
                         double tol = kDefaultTolerance);
  static Cone psd(int hilbert_dim, Mat embedding,
                  double tol = kDefaultTolerance);

  ConeBackend backend() const { return backend_; }
  bool is_polyhedral() const { return backend_ == ConeBackend::polyhedral; }
  int ambient_dim() const { return ambient_; }
  double tolerance() const { return tol_; }
  Cone with_tolerance(double tol) const;

  const std::vector<Vec>& generators() const { return gens_; }
  Mat generator_matrix() const;  // generators as columns
  // Set when the generator list is known to be exactly the extremal rays.
  bool generators_minimal() const { return minimal_; }

  int hilbert_dim() const { return hdim_; }
  const Mat& embedding() const { return embed_; }
  Vec embed(const CMat& h) const;
  CMat preimage(const Vec& v) const;  // least squares
  double preimage_residual(const Vec& v) const;

 private:
  friend Cone dual(const Cone&, std::size_t);
  friend std::vector<Vec> extremal_rays(const Cone&);

  ConeBackend backend_ = ConeBackend::polyhedral;
  int ambient_ = 0;
  double tol_ = kDefaultTolerance;
  std::vector<Vec> gens_;
  bool minimal_ = false;
  int hdim_ = 0;
  Mat embed_;
  Mat pinv_;
};

bool member(const Cone& cone, const Vec& v);

// Largest t in [0, cap] with base - t * dir in the cone (bisection).
double max_step_inside(const Cone& cone, const Vec& base, const Vec& dir,
                       double cap = 1.0);

constexpr std::size_t kDefaultGeneratorBudget = 10000;

Cone dual(const Cone& cone, std::size_t budget = kDefaultGeneratorBudget);

// Extreme rays of {y : normals.row(i) . y >= 0}, by double description.
// The rows must span the whole space.
std::vector<Vec> enumerate_rays(const Mat& normals,
                                std::size_t budget = kDefaultGeneratorBudget,
                                double tol = kDefaultTolerance);

// Minimal generator list, unit-normalized, in input order.
std::vector<Vec> extremal_rays(const Cone& cone);

bool is_extremal(const Cone& cone, const Vec& v);

// Polyhedral: the generators. PSD: a deterministic grid of rank-one
// extremals followed by count seeded random rank-one samples.
std::vector<Vec> sample_generators(const Cone& cone, int count = 200,
                                   std::uint64_t seed = 0x5eedULL);

bool check_cone_isomorphism(const Mat& map, const Cone& src, const Cone& dst,
                            int samples = 200);

int span_dimension(const Cone& cone);

}  // namespace conelab
