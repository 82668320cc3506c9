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

#include <optional>
#include <vector>

#include "conelab/theory.hpp"

namespace conelab {

enum class Provenance { min_tensor_default, explicit_override };

// Index convention: the bipartite coordinate (i, j) sits at i * dim2 + j, so
// product effects and states are Kronecker products.
struct BipartiteSystem {
  System left;
  System right;
  System joint;  // the composite viewed as a single system
  Provenance provenance = Provenance::min_tensor_default;
  std::optional<Vec> designated_phi;

  const Cone& effect_cone() const { return joint.effect_cone; }
  const Cone& state_cone() const { return joint.state_cone; }
  const Vec& unit_effect() const { return joint.unit_effect; }
};

// Psd cone on the tensor Hilbert space whose coordinates are products of the
// local coordinates.
Cone tensor_psd_cone(const Cone& a, const Cone& b);

BipartiteSystem compose(const System& s1, const System& s2,
                        const std::optional<Cone>& override_effect_cone = {},
                        std::optional<Vec> designated_phi = {});

Transformation local(const BipartiteSystem& b, const Transformation& t,
                     int slot);
Vec product(const Vec& x, const Vec& y);
State marginal(const BipartiteSystem& b, const State& omega, int slot);
// Omega(a, b) for local effects.
double joint_pairing(const Vec& omega, const Vec& a, const Vec& b);
// The swap of the two slots on a bipartite vector (identical systems).
Vec swap_slots(const Vec& v, int d1, int d2);

struct NoSignalingResult {
  bool ok = true;
  double max_residual = 0.0;
};
NoSignalingResult check_no_signaling(const BipartiteSystem& b, int samples,
                                     std::uint64_t seed = 0);

struct LocalObservabilityResult {
  bool ok = true;
  int span_dim = 0;
  int expected = 0;
};
LocalObservabilityResult check_local_observability(const BipartiteSystem& b);

// Bipartite invariants: local-test embedding, duality, factorized states.
ValidationReport validate(const BipartiteSystem& b);

// T (x) I physical on the composite.
bool is_physical_with_ancilla(const BipartiteSystem& b,
                              const Transformation& t);

// Reorders the tensor factors of v: output factor k is input factor perm[k].
Vec permute_slots(const Vec& v, const std::vector<int>& dims,
                  const std::vector<int>& perm);

}  // namespace conelab
