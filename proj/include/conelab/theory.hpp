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

#include <string>
#include <vector>

#include "conelab/cone.hpp"

namespace conelab {

// Effects are column vectors in a fixed real basis of the effect span; states
// are stored in the dual basis, so the probability rule is a dot product.
struct State {
  Vec vector;
};
struct Effect {
  Vec vector;
};
// Acts on effects from the right: a o T = matrix * a. The action on states
// is the transpose.
struct Transformation {
  Mat matrix;
};
struct Test {
  std::vector<Transformation> events;
};

struct System {
  std::string name;
  int dim = 0;
  Cone effect_cone;
  Vec unit_effect;
  Cone state_cone;
  std::vector<Vec> reference_observable;
  std::vector<Mat> transformation_generators;
  // Optional operator frame: the complex matrix representing each effect
  // basis vector. Present for builtins whose effects come from operators.
  std::vector<CMat> kraus_frame;

  double tolerance() const { return effect_cone.tolerance(); }
};

// Builds a System; the state cone is the dual of the effect cone.
System make_system(std::string name, Cone effect_cone, Vec unit_effect,
                   std::vector<Vec> reference_observable,
                   std::vector<Mat> transformation_generators,
                   std::vector<CMat> kraus_frame = {});

// Same system with every cone tolerance replaced.
System with_tolerance(const System& s, double tol);

struct InvariantRecord {
  std::string invariant;
  bool ok = true;
  std::string detail;
};
struct ValidationReport {
  std::vector<InvariantRecord> records;
  bool ok() const;
};
ValidationReport validate(const System& s);

bool is_state(const System& s, const Vec& v);
bool is_effect(const System& s, const Vec& a);
bool is_physical(const System& s, const Transformation& t);
bool is_deterministic(const System& s, const Transformation& t);
bool is_complete(const System& s, const Test& test);

double pairing(const State& w, const Effect& a,
               double tol = kDefaultTolerance);

inline Mat state_action(const Transformation& t) {
  return t.matrix.transpose();
}

// a o chain(A, B) = (a o A) o B.
Transformation chain(const Transformation& first,
                     const Transformation& second);
Transformation identity_transformation(int dim);

struct Conditioned {
  double probability = 0.0;
  State state;
};
Conditioned condition(const System& s, const State& w,
                      const Transformation& t);

bool nsf_marginal_check(const System& s, const Test& test_b,
                        const Transformation& t, int samples,
                        std::uint64_t seed = 0);

Transformation sum_transformations(const std::vector<Transformation>& ts);
// Checked variant: rejects sums whose effect exceeds e.
Transformation sum_transformations(const System& s,
                                   const std::vector<Transformation>& ts);
Transformation scale(const Transformation& t, double lambda);
Test coarse_grain(const Test& test,
                  const std::vector<std::vector<int>>& partition);
Test convex_combine(const std::vector<Test>& tests,
                    const std::vector<double>& weights);

Effect effect_of(const System& s, const Transformation& t);

std::vector<Effect> minimal_infocomplete(const System& s,
                                         const std::vector<Test>& tests);

// sup over effects a in [0, e] of x(a) - the natural distance when x is a
// difference of states.
double natural_distance(const System& s, const State& w, const State& z);
double natural_norm_state(const System& s, const Vec& x);
// sup over normalized states of |w(a)|.
double natural_norm_effect(const System& s, const Vec& a);
// Euclidean norm in the effect coordinates; differs from the natural norm.
double scalar_product_norm(const Vec& a);

// M acts on state vectors.
bool is_state_automorphism(const System& s, const Mat& m);

}  // namespace conelab
