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

#include "conelab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "conelab/faithful.hpp"
#include "conelab/hermitian.hpp"
#include "conelab/operators.hpp"

namespace conelab {

namespace {

CVec flat(const CMat& m) { return Eigen::Map<const CVec>(m.data(), m.size()); }

CMat pinv(const CMat& m) {
  Eigen::CompleteOrthogonalDecomposition<CMat> cod(m);
  cod.setThreshold(1e-10);
  return cod.pseudoInverse();
}

// Distinct values of a sorted list, merged within tol.
std::vector<double> clusters(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CJIso

CJIso::CJIso(const System& s) {
  if (s.kraus_frame.empty()) throw NotAssertedError("CJ not asserted for this theory");
  const int d = static_cast<int>(s.kraus_frame.front().rows());
  init(s, CMat::Identity(d, d));
}

CJIso::CJIso(const System& s, const CMat& gauge) {
  if (s.kraus_frame.empty()) throw NotAssertedError("CJ not asserted for this theory");
  init(s, gauge);
}

void CJIso::init(const System& s, const CMat& gauge) {
  n_ = s.dim;
  frame_ = s.kraus_frame;
  require_dim(static_cast<Eigen::Index>(frame_.size()), n_, "operator frame size");
  const Eigen::Index d = frame_.front().rows();
  require_dim(gauge.rows(), d, "gauge");
  if ((gauge.adjoint() * gauge - CMat::Identity(d, d)).norm() > 1e-8)
    throw InvalidArgument("gauge must be unitary");
  u_ = gauge;
  frame_mat_.resize(d * d, n_);
  for (int k = 0; k < n_; ++k) frame_mat_.col(k) = flat(frame_[k]);
  frame_pinv_ = pinv(frame_mat_);
  gauged_.clear();
  for (const CMat& o : frame_) gauged_.push_back(u_.adjoint() * o * u_);

  dyad_mat_.resize(n_ * n_, n_ * n_);
  for (int q = 0; q < n_; ++q) {
    for (int p = 0; p < n_; ++p) {
      CMat m(n_, n_);
      for (int c = 0; c < n_; ++c)
        m.col(c) = coords(gauged_[p].adjoint() * frame_[c] * gauged_[q]);
      dyad_mat_.col(q * n_ + p) = flat(m);
    }
  }
  dyad_pinv_ = pinv(dyad_mat_);
  bijective_ = rank(dyad_mat_, 1e-9) == n_ * n_;

  // iota = tau^-1(identity), falling back to the unit of the frame.
  const CMat id = CMat::Identity(n_, n_);
  iota_ = CVec();
  if (bijective_) {
    CVec cand = tau_inverse(id);
    if ((tau(cand) - id).norm() <= 1e-8) iota_ = cand;
  }
  if (iota_.size() == 0) {
    CVec cand = coords(CMat::Identity(d, d));
    if ((tau(cand) - id).norm() > 1e-8 || frame_residual(CMat::Identity(d, d)) > 1e-8)
      throw AlgebraError("no effect maps to the identity transformation");
    iota_ = phase_representative(cand).rep;
  }
}

CMat CJIso::op(const CVec& x) const {
  require_dim(x.size(), n_, "complex effect");
  CMat m = CMat::Zero(frame_.front().rows(), frame_.front().cols());
  for (int k = 0; k < n_; ++k) m += x(k) * frame_[k];
  return m;
}

CVec CJIso::coords(const CMat& m) const { return frame_pinv_ * flat(m); }

double CJIso::frame_residual(const CMat& m) const {
  return (frame_mat_ * coords(m) - flat(m)).norm();
}

CMat CJIso::dyad(const CVec& x, const CVec& y) const {
  const CMat ux = u_.adjoint() * op(x) * u_;
  const CMat uy = u_.adjoint() * op(y) * u_;
  CMat m(n_, n_);
  for (int c = 0; c < n_; ++c) m.col(c) = coords(ux.adjoint() * frame_[c] * uy);
  return m;
}

CMat CJIso::tau(const CVec& x) const { return dyad(x, x); }

CMat CJIso::cj_inverse(const CMat& form) const {
  require_dim(form.rows(), n_, "bilinear form");
  CMat h = form.transpose();  // h(p, q) at q * n + p
  CVec v = dyad_mat_ * flat(h);
  return Eigen::Map<const CMat>(v.data(), n_, n_);
}

CMat CJIso::cj_forward(const CMat& t) const {
  require_dim(t.rows(), n_, "transformation");
  CVec h = dyad_pinv_ * flat(t);
  CMat form = Eigen::Map<const CMat>(h.data(), n_, n_);
  return form.transpose();
}

CVec CJIso::tau_inverse(const CMat& t) const {
  CMat form = cj_forward(t);
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (form + form.adjoint()));
  const double top = es.eigenvalues()(n_ - 1);
  if (top <= 0) throw AlgebraError("transformation has no positive form");
  return phase_representative(std::sqrt(top) * es.eigenvectors().col(n_ - 1)).rep;
}

CJCheck check_cj(const System& s, int samples, std::uint64_t seed) {
  CJCheck out;
  if (s.kraus_frame.empty()) {
    out.detail = "CJ not asserted for this theory";
    return out;
  }
  CJIso tau(s);
  if (!tau.bijective()) {
    out.detail = "forms and transformations are not in bijection";
    return out;
  }
  Cone tcone = transformation_cone(s);
  Rng rng(seed);
  std::normal_distribution<double> g;
  for (int k = 0; k < samples; ++k) {
    CVec x(s.dim);
    for (auto& v : x) v = cplx(g(rng), g(rng));
    CMat t = tau.tau(x);
    if (t.imag().cwiseAbs().maxCoeff() > 1e-9 || !is_extremal(tcone, vec_rows(t.real()))) {
      out.detail = "tau of a sampled effect is not atomic";
      return out;
    }
    CMat form = tau.cj_forward(t);
    if ((form - x * x.adjoint()).norm() > 1e-8 * std::max(1.0, x.squaredNorm())) {
      out.detail = "round trip through the forms fails";
      return out;
    }
  }
  out.ok = true;
  return out;
}

// ---------------------------------------------------------------------------
// products

PhaseRep phase_representative(const CVec& x, double tol) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > tol) {
      PhaseRep r;
      r.phase = std::arg(x(i));
      r.rep = x * std::conj(x(i)) / std::abs(x(i));
      return r;
    }
  }
  throw InvalidArgument("phase representative of the zero vector");
}

CVec dagger(const CVec& x) { return x.conjugate(); }

CVec effect_multiply(const CVec& a, const CVec& b, const CJIso& tau) {
  const int n = tau.dim();
  // Right multiplications z -> z a compose to z -> z a b.
  CMat target = tau.dyad(tau.iota(), b) * tau.dyad(tau.iota(), a);
  CMat lin(n * n, n);
  for (int q = 0; q < n; ++q) lin.col(q) = flat(tau.dyad(tau.iota(), CVec::Unit(n, q)));
  return lstsq(lin, CMat(flat(target))).col(0);
}

CVec representative_product(const CVec& a, const CVec& b, const CJIso& tau) {
  PhaseRep ra = phase_representative(a), rb = phase_representative(b);
  CMat composed = tau.tau(rb.rep) * tau.tau(ra.rep);
  if (composed.norm() <= kDefaultTolerance) return CVec::Zero(a.size());
  return tau.tau_inverse(composed) * std::polar(1.0, ra.phase + rb.phase);
}

// ---------------------------------------------------------------------------
// EffectAlgebra

CVec EffectAlgebra::multiply(const CVec& a, const CVec& b) const {
  CVec out = CVec::Zero(dim);
  for (int i = 0; i < dim; ++i)
    if (a(i) != cplx(0.0)) out += a(i) * (table[i] * b);
  return out;
}

CMat EffectAlgebra::left_matrix(const CVec& a) const {
  CMat m = CMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) m += a(i) * table[i];
  return m;
}

CMat EffectAlgebra::right_matrix(const CVec& b) const {
  CMat m(dim, dim);
  for (int i = 0; i < dim; ++i) m.col(i) = table[i] * b;
  return m;
}

cplx EffectAlgebra::trace_form(const CVec& a) const { return iota.dot(a); }

std::pair<CVec, CVec> EffectAlgebra::mixed_products(const CVec& a,
                                                    const CVec& b) const {
  // With the Euclidean scalar product: (c, a^dag b) = (ac, b) gives
  // L_a^dag b, and (c, a b^dag) = (cb, a) gives R_b^dag a.
  return {left_matrix(a).adjoint() * b, right_matrix(b).adjoint() * a};
}

CMat EffectAlgebra::represent(const CVec& a) const {
  CMat o = CMat::Zero(hilbert_dim, hilbert_dim);
  int off = 0;
  for (const AlgebraBlock& bl : blocks) {
    for (int s = 0; s < bl.hilbert_dim; ++s) {
      for (int t = 0; t < bl.hilbert_dim; ++t)
        o(off + s, off + t) = inner(bl.ideal_basis[s], multiply(a, bl.ideal_basis[t]));
    }
    off += bl.hilbert_dim;
  }
  return o;
}

namespace {

CVec random_combination(const std::vector<CVec>& basis, Rng& rng) {
  std::normal_distribution<double> g;
  CVec out = CVec::Zero(basis.front().size());
  for (const CVec& b : basis) out += cplx(g(rng), g(rng)) * b;
  return out;
}

// Spectral projection of a self-adjoint h onto eigenvalue lambda, inside the
// algebra with unit p, through the interpolating polynomial.
CVec spectral_projection(const EffectAlgebra& alg, const CVec& h, const CVec& p,
                         double lambda, const std::vector<double>& others) {
  CVec q = p;
  for (double mu : others) q = alg.multiply(q, (h - mu * p) / (lambda - mu));
  return q;
}

void wedderburn(EffectAlgebra& alg, double tol, std::uint64_t seed) {
  const int n = alg.dim;
  Rng rng(seed);
  // Center.
  CMat comm(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      comm.block(j * n, i, n, 1) = alg.table[i].col(j) - alg.table[j].col(i);
  CMat center = null_space(comm, 1e-8);
  std::vector<CVec> cbasis;
  for (Eigen::Index k = 0; k < center.cols(); ++k) cbasis.push_back(center.col(k));
  CVec z = random_combination(cbasis, rng);
  CVec h = 0.5 * (z + dagger(z));
  Eigen::ComplexEigenSolver<CMat> es(alg.left_matrix(h));
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < n; ++i) ev.push_back(es.eigenvalues()(i).real());
  const double scale = std::max(1.0, *std::max_element(ev.begin(), ev.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  }));
  const auto cen = clusters(ev, 1e-6 * scale);

  alg.blocks.clear();
  alg.hilbert_dim = 0;
  for (size_t j = 0; j < cen.size(); ++j) {
    std::vector<double> others;
    for (size_t l = 0; l < cen.size(); ++l)
      if (l != j) others.push_back(cen[l]);
    CVec p = spectral_projection(alg, h, alg.iota, cen[j], others);
    CMat lp = alg.left_matrix(p);
    const int m = rank(lp, 1e-8);
    const int k = static_cast<int>(std::lround(std::sqrt(double(m))));
    if (k * k != m) throw AlgebraError("central block is not a full matrix algebra");
    AlgebraBlock bl;
    bl.dim = m;
    bl.hilbert_dim = k;
    bl.central_projection = p;
    // Minimal projection from a generic self-adjoint element of the block.
    std::vector<CVec> unit;
    for (int i = 0; i < n; ++i) unit.push_back(CVec::Unit(n, i));
    CVec r = random_combination(unit, rng);
    CVec hb = alg.multiply(alg.multiply(p, r + dagger(r)), p);
    Eigen::ComplexEigenSolver<CMat> eb(alg.left_matrix(hb));
    std::vector<double> bev;
    for (Eigen::Index i = 0; i < n; ++i) bev.push_back(eb.eigenvalues()(i).real());
    double bscale = 1.0;
    for (double x : bev) bscale = std::max(bscale, std::abs(x));
    auto vals = clusters(bev, 1e-6 * bscale);
    // The other blocks contribute the eigenvalue 0; drop it unless needed.
    std::vector<double> block_vals;
    for (double x : vals) {
      CVec q = spectral_projection(alg, hb, p, x, [&] {
        std::vector<double> o;
        for (double y : vals)
          if (y != x) o.push_back(y);
        return o;
      }());
      if (q.norm() > 1e-8) block_vals.push_back(x);
    }
    if (static_cast<int>(block_vals.size()) != k)
      throw AlgebraError("generic element of a block has a degenerate spectrum");
    std::vector<double> rest(block_vals.begin() + 1, block_vals.end());
    CVec q = spectral_projection(alg, hb, p, block_vals[0], rest);
    // Left ideal A q, made orthonormal for the trace inner product.
    CMat rq = alg.right_matrix(q);
    Eigen::ColPivHouseholderQR<CMat> qr(rq);
    qr.setThreshold(1e-8);
    if (qr.rank() != k) throw AlgebraError("left ideal has the wrong dimension");
    CMat v = CMat(qr.householderQ()).leftCols(k);
    CMat gram(k, k);
    for (int s = 0; s < k; ++s)
      for (int t = 0; t < k; ++t) gram(s, t) = alg.inner(v.col(s), v.col(t));
    Eigen::SelfAdjointEigenSolver<CMat> gs(0.5 * (gram + gram.adjoint()));
    if (gs.eigenvalues().minCoeff() <= tol)
      throw AlgebraError("trace form is not positive on a left ideal");
    CMat w = v * gs.eigenvectors() *
             gs.eigenvalues().cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal();
    for (int s = 0; s < k; ++s) bl.ideal_basis.push_back(w.col(s));
    alg.hilbert_dim += k;
    alg.blocks.push_back(bl);
  }
}

}  // namespace

EffectAlgebra build_effect_algebra(const System& s, const CJIso& tau, double tol,
                                   std::uint64_t seed) {
  const int n = tau.dim();
  require_dim(n, s.dim, "algebra dimension");
  EffectAlgebra alg;
  alg.dim = n;
  alg.iota = tau.iota();
  // Least-squares map from c to the right multiplication by c.
  CMat lin(n * n, n);
  for (int q = 0; q < n; ++q) {
    CMat m = tau.dyad(tau.iota(), CVec::Unit(n, q));
    lin.col(q) = Eigen::Map<const CVec>(m.data(), m.size());
  }
  const CMat lin_pinv = pinv(lin);
  std::vector<CMat> right;
  for (int q = 0; q < n; ++q) right.push_back(tau.dyad(tau.iota(), CVec::Unit(n, q)));
  alg.table.assign(n, CMat(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CMat t = right[j] * right[i];
      alg.table[i].col(j) = lin_pinv * Eigen::Map<const CVec>(t.data(), t.size());
    }
  }

  AlgebraResiduals& r = alg.residuals;
  auto e = [n](int i) { return CVec(CVec::Unit(n, i)); };
  for (int i = 0; i < n; ++i) {
    r.identity = std::max(r.identity, (alg.multiply(alg.iota, e(i)) - e(i)).norm());
    r.identity = std::max(r.identity, (alg.multiply(e(i), alg.iota) - e(i)).norm());
    for (int j = 0; j < n; ++j) {
      CVec ij = alg.table[i].col(j);
      r.dagger = std::max(r.dagger, (dagger(ij) - alg.multiply(dagger(e(j)), dagger(e(i)))).norm());
      r.trace = std::max(r.trace, std::abs(alg.trace_form(ij) - alg.trace_form(alg.table[j].col(i))));
      for (int k = 0; k < n; ++k) {
        double res = (alg.multiply(ij, e(k)) - alg.multiply(e(i), alg.table[j].col(k))).norm();
        if (res > r.associativity) r.associativity = res;
        if (res > tol) {
          std::ostringstream os;
          os << "algebra construction failed: associativity at (" << i << ", " << j << ", " << k << ")";
          throw AlgebraError(os.str());
        }
      }
    }
  }
  r.dagger = std::max(r.dagger, (dagger(alg.iota) - alg.iota).norm());
  if (r.trace > tol) throw AlgebraError("algebra construction failed: trace property");
  if (r.dagger > tol) throw AlgebraError("algebra construction failed: dagger");
  if (r.identity > tol) throw AlgebraError("algebra construction failed: identity");
  CMat gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = alg.inner(e(i), e(j));
  r.min_positivity = eigenvalues_h(0.5 * (gram + gram.adjoint())).minCoeff();
  if (r.min_positivity <= tol) throw AlgebraError("algebra construction failed: trace form not positive");

  wedderburn(alg, tol, seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cplx lhs = alg.inner(e(i), e(j));
      CMat oi = alg.represent(e(i)), oj = alg.represent(e(j));
      r.representation = std::max(r.representation, std::abs(lhs - (oi.adjoint() * oj).trace()));
    }
  }
  return alg;
}

// ---------------------------------------------------------------------------
// atomicity and gauge

AtomicityClosure check_atomicity_closure(const System& s, int sample_pairs,
                                         std::uint64_t seed) {
  AtomicityClosure out;
  Cone tcone = transformation_cone(s);
  Rng rng(seed);
  std::vector<Mat> atoms;
  if (tcone.is_polyhedral()) {
    for (const Vec& r : extremal_rays(tcone)) atoms.push_back(unvec_rows(r, s.dim, s.dim));
  } else {
    const int d = s.effect_cone.hilbert_dim();
    std::normal_distribution<double> g;
    for (int k = 0; k < 2 * sample_pairs; ++k) {
      CMat kr(d, d);
      for (auto& v : kr.reshaped()) v = cplx(g(rng), g(rng));
      atoms.push_back(effect_action_from_kraus(s, {kr}));
    }
  }
  if (atoms.empty()) return out;
  std::uniform_int_distribution<size_t> pick(0, atoms.size() - 1);
  const bool all_pairs = atoms.size() * atoms.size() <= static_cast<size_t>(sample_pairs);
  auto test = [&](const Mat& a, const Mat& b) {
    Mat c = chain({a}, {b}).matrix;
    ++out.tested;
    if (max_abs(c) <= s.tolerance()) return;
    if (!is_extremal(tcone, vec_rows(c))) ++out.failures;
  };
  if (all_pairs) {
    for (const Mat& a : atoms)
      for (const Mat& b : atoms) test(a, b);
  } else {
    for (int k = 0; k < sample_pairs; ++k) test(atoms[pick(rng)], atoms[pick(rng)]);
  }
  out.ok = out.failures == 0;
  return out;
}

KrausActionReport kraus_action_check(const System& s, const CJIso& tau) {
  KrausActionReport rep;
  CMat t_iota = tau.tau(tau.iota());
  Vec unit_after = (t_iota * s.unit_effect.cast<cplx>()).real();
  rep.iota_is_unit = (tau.iota() - s.unit_effect.cast<cplx>()).norm() <= 1e-8 &&
                     (unit_after - s.unit_effect).norm() <= 1e-8;
  if (s.effect_cone.is_polyhedral()) {
    rep.detail = "gauge fit needs an operator system";
    rep.ok = rep.iota_is_unit;
    return rep;
  }
  const int d = s.effect_cone.hilbert_dim();
  std::vector<Vec> probes = s.reference_observable;
  probes.push_back(s.unit_effect);
  CMat stacked(static_cast<Eigen::Index>(probes.size()) * d * d, d * d);
  std::vector<std::pair<CMat, CMat>> pairs;
  for (size_t j = 0; j < probes.size(); ++j) {
    CVec a = probes[j].cast<cplx>();
    Mat t = tau.tau(a).real();
    CMat choi = choi_of_effect_action(s, t);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (choi + choi.adjoint()));
    CVec v = es.eigenvectors().col(d * d - 1) * std::sqrt(std::max(0.0, es.eigenvalues()(d * d - 1)));
    CMat k(d, d);
    for (int i = 0; i < d; ++i)
      for (int r = 0; r < d; ++r) k(i, r) = std::conj(v(i * d + r));
    // Fix the free phase so that k is Hermitian with positive trace.
    CMat kd = k.adjoint();
    cplx c = flat(kd).dot(flat(k)) / flat(k).squaredNorm();
    k /= std::sqrt(c);
    if (k.trace().real() < 0) k = -k;
    CMat op = tau.op(a);
    pairs.push_back({op, k});
    // op u - u k = 0, column-major vec(u).
    CMat blk = kron(CMat::Identity(d, d), op) - kron(CMat(k.transpose()), CMat::Identity(d, d));
    stacked.block(static_cast<Eigen::Index>(j) * d * d, 0, d * d, d * d) = blk;
  }
  CMat ns = null_space(stacked, 1e-6);
  if (ns.cols() != 1) {
    rep.detail = "gauge is not determined by the probes";
    return rep;
  }
  CMat u = Eigen::Map<const CMat>(ns.col(0).data(), d, d);
  cplx scale = (u.adjoint() * u).trace() / double(d);
  u /= std::sqrt(scale.real());
  rep.gauge = u;
  rep.gauge_residual = (u.adjoint() * u - CMat::Identity(d, d)).norm();
  for (const auto& [op, k] : pairs)
    rep.gauge_residual = std::max(rep.gauge_residual, (u.adjoint() * op * u - k).norm());
  rep.gauge_fitted = rep.gauge_residual <= 1e-6;
  rep.ok = rep.gauge_fitted && rep.iota_is_unit;
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::quantum: return "quantum";
    case Verdict::hybrid: return "hybrid";
    case Verdict::not_quantum: return "not-quantum";
  }
  return "unknown";
}

}  // namespace conelab
