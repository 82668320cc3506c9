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
#include <vector>

#include "conelab/composite.hpp"

namespace conelab {

// Contracts a bipartite effect against slots a and b of a multipartite state
// vector; the remaining slots keep their order.
Vec contract(const Vec& state, const std::vector<int>& dims, const Vec& effect,
             int slot_a, int slot_b);

struct FaithfulEffectReport {
  std::optional<Vec> faithful_effect;
  double alpha = 0.0;
  double alpha_max = 0.0;
  bool feasible = false;
  Provenance cone_provenance = Provenance::min_tensor_default;
  std::string detail;
};

// Finds F in the composite effect set with F_23 Phi_12 Phi_34 = alpha Phi_14,
// alpha as large as possible. Throws InconsistentSystemError when no linear
// solution exists at all.
FaithfulEffectReport solve_faithful_effect(const BipartiteSystem& b,
                                           const Vec& phi);
// Largest alpha over effects solving the equation above; 0 when none does.
double alpha_max(const BipartiteSystem& b, const Vec& phi);

struct Teleported {
  double probability = 0.0;
  State state;
};
Teleported teleport(const BipartiteSystem& b, const Vec& phi,
                    const FaithfulEffectReport& report, const State& omega);

// F o (A' (x) I) = F o (I (x) A) residual for random A, and injectivity of
// A -> F o (A' (x) I).
struct CompleteFaithfulness {
  bool injective = false;
  double max_residual = 0.0;
};
CompleteFaithfulness check_complete_faithfulness(
    const BipartiteSystem& b, const Vec& phi,
    const FaithfulEffectReport& report, int samples = 50,
    std::uint64_t seed = 0);

// Sum over a bipartite observable of A_23 omega_2 Phi_34 equals chi.
bool depolarize_check(const BipartiteSystem& b, const Vec& phi,
                      const std::vector<Vec>& observable, int samples = 5,
                      std::uint64_t seed = 0);

struct PurifyRecord {
  Vec state;
  bool ok = false;
  std::optional<Vec> purification;
};
struct PurifyReport {
  std::vector<PurifyRecord> records;
  bool ok() const;
};
// Tests extremal states, the centroid and seeded random mixtures.
PurifyReport check_purify(const BipartiteSystem& b, int mixtures = 5,
                          std::uint64_t seed = 0);

struct PurifyLemmaReport {
  bool applicable = false;
  ValidationReport checks;
};
PurifyLemmaReport purify_lemma_suite(const BipartiteSystem& b, const Vec& phi,
                                     int samples = 30, std::uint64_t seed = 0);

}  // namespace conelab
