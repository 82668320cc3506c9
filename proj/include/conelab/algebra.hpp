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
#include <utility>
#include <vector>

#include "conelab/theory.hpp"

namespace conelab {

// Correspondence between complex effects and atomic transformations, built
// from the system's operator frame O_k and a gauge unitary u:
//   tau(x)(y) = O^-1(U(x)^dag O(y) U(x)),  U(x) = u^dag O(x) u.
// Maps act on complex effect coordinates. Everything is computed on demand.
class CJIso {
 public:
  // Throws NotAssertedError when the system carries no operator frame.
  explicit CJIso(const System& s);
  CJIso(const System& s, const CMat& gauge);

  int dim() const { return n_; }
  const CMat& gauge() const { return u_; }
  const CVec& iota() const { return iota_; }
  const std::vector<CMat>& frame() const { return frame_; }

  CMat op(const CVec& x) const;        // O(x)
  CVec coords(const CMat& m) const;    // O^-1(m), least squares
  double frame_residual(const CMat& m) const;

  CMat tau(const CVec& x) const;
  // z -> O^-1(U(x)^dag O(z) U(y)), which is cj_inverse(|y><x|).
  CMat dyad(const CVec& x, const CVec& y) const;
  CMat cj_inverse(const CMat& form) const;
  CMat cj_forward(const CMat& t) const;
  // tau^-1 of an atomic map: top eigenvector of its form, as representative.
  CVec tau_inverse(const CMat& t) const;
  // True when the forms and the transformation span are in bijection.
  bool bijective() const { return bijective_; }

 private:
  void init(const System& s, const CMat& gauge);

  int n_ = 0;
  std::vector<CMat> frame_;
  CMat u_;
  CMat frame_mat_;
  CMat frame_pinv_;
  std::vector<CMat> gauged_;
  CMat dyad_mat_;   // column q * n + p holds vec of the dyad map for |e_q><e_p|
  CMat dyad_pinv_;
  bool bijective_ = false;
  CVec iota_;
};

struct CJCheck {
  bool ok = false;
  std::string detail;
};
CJCheck check_cj(const System& s, int samples = 20, std::uint64_t seed = 0);

struct PhaseRep {
  CVec rep;
  double phase = 0.0;
};
// |x| = conj(x_i) x / |x_i| with i the first nonzero coordinate.
PhaseRep phase_representative(const CVec& x, double tol = kDefaultTolerance);

// Product through the polarized correspondence; bilinear in a and b.
CVec effect_multiply(const CVec& a, const CVec& b, const CJIso& tau);
// |a||b| e^{i(phase a + phase b)} with |a||b| read off tau(|a|) then tau(|b|).
// Agrees with effect_multiply up to a phase.
CVec representative_product(const CVec& a, const CVec& b, const CJIso& tau);

CVec dagger(const CVec& x);

struct AlgebraBlock {
  int dim = 0;
  int hilbert_dim = 0;
  CVec central_projection;
  std::vector<CVec> ideal_basis;  // orthonormal for (x, y) -> trace(x^dag y)
};

struct AlgebraResiduals {
  double associativity = 0.0;
  double dagger = 0.0;
  double identity = 0.0;
  double trace = 0.0;
  double representation = 0.0;
  double min_positivity = 0.0;
};

class EffectAlgebra {
 public:
  int dim = 0;
  std::vector<CMat> table;  // column j of table[i] is e_i e_j
  CVec iota;
  std::vector<AlgebraBlock> blocks;
  int hilbert_dim = 0;
  AlgebraResiduals residuals;

  CVec multiply(const CVec& a, const CVec& b) const;
  CMat left_matrix(const CVec& a) const;
  CMat right_matrix(const CVec& b) const;
  cplx trace_form(const CVec& a) const;  // (iota, a)
  cplx inner(const CVec& a, const CVec& b) const { return trace_form(multiply(dagger(a), b)); }
  // (a^dag b, a b^dag) from the scalar product alone.
  std::pair<CVec, CVec> mixed_products(const CVec& a, const CVec& b) const;
  CMat represent(const CVec& a) const;  // O(a), block diagonal
};

// Throws AlgebraError naming the offending triple when a check fails.
EffectAlgebra build_effect_algebra(const System& s, const CJIso& tau,
                                   double tol = 1e-8, std::uint64_t seed = 7);

struct AtomicityClosure {
  bool ok = true;
  int tested = 0;
  int failures = 0;
};
AtomicityClosure check_atomicity_closure(const System& s, int sample_pairs = 40,
                                         std::uint64_t seed = 0);

struct KrausActionReport {
  bool ok = false;
  bool gauge_fitted = false;
  CMat gauge;
  double gauge_residual = 0.0;
  bool iota_is_unit = false;
  std::string detail;
};
KrausActionReport kraus_action_check(const System& s, const CJIso& tau);

struct ReconstructedBlock {
  int dim = 0;
  int hilbert_dim = 0;
  bool perfect_square = false;
  Mat subspace;  // columns span the invariant subspace
};

enum class Verdict { quantum, hybrid, not_quantum };
std::string to_string(Verdict v);

struct ReconstructionResult {
  Verdict verdict = Verdict::not_quantum;
  std::vector<ReconstructedBlock> blocks;
  int hilbert_dim = 0;
  std::vector<Vec> effects;
  std::vector<CMat> effect_operators;
  std::vector<Vec> states;
  std::vector<CMat> fitted_states;
  std::vector<Mat> atomic_transformations;
  std::vector<CMat> transformation_kraus;
  double pairing_residual = 0.0;
  double positivity_residual = 0.0;
  double trace_residual = 0.0;
  double kraus_residual = 0.0;
  std::string detail;
};

// Common invariant subspaces of a set of maps closed under transposition.
std::vector<Mat> invariant_subspaces(const std::vector<Mat>& maps,
                                     std::uint64_t seed = 0);

ReconstructionResult reconstruct(const System& s, std::uint64_t seed = 0);

}  // namespace conelab
