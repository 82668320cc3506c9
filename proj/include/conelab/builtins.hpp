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
#include <string>

#include "conelab/composite.hpp"

namespace conelab {

enum class BuiltinKind { classical, quantum, gbit };

struct BuiltinSpec {
  BuiltinKind kind = BuiltinKind::classical;
  int d = 2;
  System system;
  // Bipartite state to test preparational faithfulness with, if fixed.
  std::optional<Vec> designated_pfaith_candidate;
  // Composite effect cone replacing the minimal tensor product.
  std::optional<Cone> composite_override;
};

// Simplex of dimension d: orthant effects, indicator reference observable.
System make_classical(int d);
// Hermitian d x d operators in an orthonormal Gell-Mann basis.
System make_quantum(int d);
// Square state space (a single generalized bit).
System make_gbit();

BuiltinSpec builtin_spec(BuiltinKind kind, int d = 2);
// Accepts "classical:D", "quantum:D" and "gbit".
BuiltinSpec parse_builtin(const std::string& name);
bool is_builtin_name(const std::string& name);

BipartiteSystem builtin_composite(const BuiltinSpec& spec);

}  // namespace conelab
