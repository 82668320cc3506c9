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

// Malformed theory document. The message names the offending field.
struct ParseError : Error {
  using Error::Error;
};

struct LoadedTheory {
  System system;
  std::optional<Cone> composite_override;
  std::optional<Vec> designated_phi;
  bool builtin = false;
};

// JSON document with fields name, dim, backend, effect_generators,
// unit_effect, reference_observable, transformation_generators and an
// optional bipartite section. A non-positive tol keeps the default.
LoadedTheory parse_theory(const std::string& text, double tol = 0.0);
LoadedTheory load_theory_file(const std::string& path, double tol = 0.0);
// Builtin name ("quantum:2", "gbit", ...) or a file path.
LoadedTheory load_theory(const std::string& name_or_path, double tol = 0.0);

BipartiteSystem compose_loaded(const LoadedTheory& a, const LoadedTheory& b);

}  // namespace conelab
