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

#include "conelab/theory.hpp"

namespace conelab {

// Operator views of a system whose cones are psd-embedded.
CMat effect_operator(const System& s, const Vec& a);
CMat state_operator(const System& s, const Vec& w);
Vec effect_from_operator(const System& s, const CMat& a);
Vec state_from_operator(const System& s, const CMat& rho);

// Effect action of the channel rho -> sum K rho K^dag, i.e. A -> sum K^dag A K.
Mat effect_action_from_kraus(const System& s, const std::vector<CMat>& kraus);

// Complex-linear extension of the effect action, applied to any operator.
CMat apply_effect_action(const System& s, const Mat& m, const CMat& x);

// Choi operator sum_ij |i><j| (x) T(|i><j|) of the effect action.
CMat choi_of_effect_action(const System& s, const Mat& m);
Mat effect_action_from_choi(const System& s, const CMat& choi);

bool is_completely_positive(const System& s, const Mat& m);

}  // namespace conelab
