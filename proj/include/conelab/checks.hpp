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
#include <string>
#include <vector>

#include "conelab/report.hpp"
#include "conelab/theory_file.hpp"

namespace conelab {

struct CheckOptions {
  std::uint64_t seed = 0;
  int samples = 200;
};

// nsf, pfaith, faithe, purify, ae, cj and all.
const std::vector<std::string>& postulate_names();
bool is_postulate_name(const std::string& name);

Report run_validate(const LoadedTheory& t, const std::string& subject);
// Throws InvalidArgument for an unknown postulate.
Report run_check(const LoadedTheory& t, const std::string& subject,
                 const std::string& postulate, const CheckOptions& opts);
Report run_compose(const LoadedTheory& a, const LoadedTheory& b,
                   const std::string& subject, const CheckOptions& opts);
Report run_reconstruct(const LoadedTheory& t, const std::string& subject,
                       const CheckOptions& opts);
// Validation, every postulate suite and the reconstruction, in that order.
Report run_full_report(const LoadedTheory& t, const std::string& subject,
                       const CheckOptions& opts);

// "[x0, x1, ...]" with six significant digits.
std::string format_vector(const Vec& v);

}  // namespace conelab
