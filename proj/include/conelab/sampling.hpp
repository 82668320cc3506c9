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

#include "conelab/hermitian.hpp"
#include "conelab/theory.hpp"

namespace conelab {

State random_state(const System& s, Rng& rng);
Effect random_effect(const System& s, Rng& rng);
// Random channel (e o D = e).
Transformation random_deterministic(const System& s, Rng& rng);
// Random deterministic map scaled by a uniform factor in [0, 1].
Transformation random_physical(const System& s, Rng& rng);

// Normalized extremal states (pairing 1 with e); polyhedral state cones only.
std::vector<Vec> extremal_states(const System& s);

// Vertices of the effect polytope {a : 0 <= a <= e}; polyhedral only.
std::vector<Vec> effect_polytope_vertices(const System& s);

// Measure the reference observable, prepare the given states.
Transformation measure_prepare(const System& s, const std::vector<Vec>& states);

}  // namespace conelab
