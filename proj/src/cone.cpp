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

#include "conelab/cone.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "conelab/lp.hpp"

namespace conelab {

// ---------------------------------------------------------------------------
// construction

Cone Cone::polyhedral(std::vector<Vec> generators, double tol) {
  if (generators.empty()) throw InvalidArgument("cone needs at least one generator");
  Cone c;
  c.backend_ = ConeBackend::polyhedral;
  c.ambient_ = static_cast<int>(generators.front().size());
  c.tol_ = tol;
  for (const Vec& g : generators) {
    require_dim(g.size(), c.ambient_, "cone generator");
    if (!g.allFinite()) throw InvalidArgument("non-finite cone generator");
    if (g.norm() <= tol) throw InvalidArgument("zero cone generator");
  }
  c.gens_ = std::move(generators);
  for (const Vec& g : c.gens_) {
    if (member(c, -g)) throw InvalidArgument("cone is not pointed");
  }
  return c;
}

Cone Cone::psd(int hilbert_dim, Mat embedding, double tol) {
  if (hilbert_dim < 1) throw InvalidArgument("psd cone needs hilbert_dim >= 1");
  require_dim(embedding.cols(), hilbert_dim * hilbert_dim, "psd embedding columns");
  if (rank(embedding) < embedding.cols())
    throw InvalidArgument("psd embedding is not injective");
  Cone c;
  c.backend_ = ConeBackend::psd;
  c.ambient_ = static_cast<int>(embedding.rows());
  c.tol_ = tol;
  c.hdim_ = hilbert_dim;
  c.pinv_ = embedding.completeOrthogonalDecomposition().pseudoInverse();
  c.embed_ = std::move(embedding);
  c.minimal_ = true;
  return c;
}

Cone Cone::with_tolerance(double tol) const {
  Cone c = *this;
  c.tol_ = tol;
  return c;
}

Mat Cone::generator_matrix() const {
  Mat g(ambient_, static_cast<Eigen::Index>(gens_.size()));
  for (size_t j = 0; j < gens_.size(); ++j) g.col(j) = gens_[j];
  return g;
}

Vec Cone::embed(const CMat& h) const {
  if (backend_ != ConeBackend::psd) throw InvalidArgument("embed needs a psd cone");
  return embed_ * herm_to_vec(h);
}

CMat Cone::preimage(const Vec& v) const {
  if (backend_ != ConeBackend::psd) throw InvalidArgument("preimage needs a psd cone");
  require_dim(v.size(), ambient_, "psd preimage");
  return vec_to_herm(pinv_ * v, hdim_);
}

double Cone::preimage_residual(const Vec& v) const {
  return (embed_ * (pinv_ * v) - v).norm();
}

// ---------------------------------------------------------------------------
// membership

namespace {

bool in_span_cone(const Mat& gens, const Vec& v, double tol) {
  if (gens.cols() == 0) return v.norm() <= tol;
  NnlsResult r = nnls(gens, v);
  return r.residual <= tol * std::max(1.0, v.norm());
}

}  // namespace

bool member(const Cone& cone, const Vec& v) {
  require_dim(v.size(), cone.ambient_dim(), "member");
  if (!v.allFinite()) throw SolverError("non-finite membership query");
  const double tol = cone.tolerance();
  if (cone.is_polyhedral()) return in_span_cone(cone.generator_matrix(), v, tol);
  if (cone.preimage_residual(v) > tol * std::max(1.0, v.norm())) return false;
  Vec ev = eigenvalues_h(cone.preimage(v));
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev(0) >= -tol * scale;
}

double max_step_inside(const Cone& cone, const Vec& base, const Vec& dir,
                       double cap) {
  if (member(cone, base - cap * dir)) return cap;
  double lo = 0.0, hi = cap;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (member(cone, base - mid * dir))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// double description

namespace {

struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(size_t i) { w[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w.resize(w.size());
    for (size_t k = 0; k < w.size(); ++k) r.w[k] = w[k] & o.w[k];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (size_t k = 0; k < w.size(); ++k)
      if ((w[k] & ~o.w[k]) != 0) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
};

struct Ray {
  Vec v;
  Bits zero;
};

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) > b(i) + 1e-9) return true;
    if (a(i) < b(i) - 1e-9) return false;
  }
  return false;
}

}  // namespace

std::vector<Vec> enumerate_rays(const Mat& normals, std::size_t budget,
                                double tol) {
  const Eigen::Index m = normals.rows();
  const Eigen::Index n = normals.cols();
  if (rank(normals) < n)
    throw DimensionError("constraints leave a lineality space; dual cone not pointed");

  Mat a = normals;
  std::vector<bool> usable(m, true);
  for (Eigen::Index i = 0; i < m; ++i) {
    double nr = a.row(i).norm();
    if (nr <= tol)
      usable[i] = false;
    else
      a.row(i) /= nr;
  }

  std::vector<Eigen::Index> basis_rows;
  Mat sel(0, n);
  for (Eigen::Index i = 0; i < m && static_cast<Eigen::Index>(basis_rows.size()) < n; ++i) {
    if (!usable[i]) continue;
    Mat trial(sel.rows() + 1, n);
    trial << sel, a.row(i);
    if (rank(trial) > sel.rows()) {
      sel = trial;
      basis_rows.push_back(i);
    }
  }
  Mat inv = sel.inverse();

  std::vector<Ray> rays;
  for (Eigen::Index k = 0; k < n; ++k) {
    Ray r{inv.col(k).normalized(), Bits(m)};
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != k) r.zero.set(basis_rows[j]);
    rays.push_back(std::move(r));
  }
  std::vector<bool> done(m, false);
  for (auto i : basis_rows) done[i] = true;

  for (Eigen::Index i = 0; i < m; ++i) {
    if (done[i] || !usable[i]) continue;
    done[i] = true;
    std::vector<double> val(rays.size());
    std::vector<size_t> pos, neg;
    std::vector<Ray> next;
    for (size_t k = 0; k < rays.size(); ++k) {
      val[k] = a.row(i).dot(rays[k].v);
      if (val[k] > tol) {
        pos.push_back(k);
      } else if (val[k] < -tol) {
        neg.push_back(k);
      }
    }
    if (neg.empty()) {
      for (size_t k = 0; k < rays.size(); ++k)
        if (std::abs(val[k]) <= tol) rays[k].zero.set(i);
      continue;
    }
    for (size_t k = 0; k < rays.size(); ++k) {
      if (val[k] >= -tol) {
        Ray r = rays[k];
        if (val[k] <= tol) r.zero.set(i);
        next.push_back(std::move(r));
      }
    }
    for (size_t p : pos) {
      for (size_t q : neg) {
        Bits common = rays[p].zero & rays[q].zero;
        if (common.count() < n - 2) continue;
        bool adjacent = true;
        for (size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == q) continue;
          if (common.subset_of(rays[t].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec w = val[p] * rays[q].v - val[q] * rays[p].v;
        Ray r{w.normalized(), common};
        r.zero.set(i);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
    if (rays.size() > budget)
      throw ResourceError("double description exceeded generator budget of " +
                          std::to_string(budget));
  }

  std::vector<Vec> out;
  for (auto& r : rays) out.push_back(r.v);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Cone dual(const Cone& cone, std::size_t budget) {
  if (cone.is_polyhedral()) {
    const auto& g = cone.generators();
    Mat normals(static_cast<Eigen::Index>(g.size()), cone.ambient_dim());
    for (size_t i = 0; i < g.size(); ++i) normals.row(i) = g[i].transpose();
    Cone c;
    c.backend_ = ConeBackend::polyhedral;
    c.ambient_ = cone.ambient_dim();
    c.tol_ = cone.tolerance();
    c.gens_ = enumerate_rays(normals, budget, 1e-10);
    c.minimal_ = true;
    return c;
  }
  const Mat& e = cone.embedding();
  if (e.rows() != e.cols())
    throw DimensionError("psd cone does not span its ambient space; dual not pointed");
  Mat ete = e.transpose() * e;
  if ((ete - Mat::Identity(e.cols(), e.cols())).cwiseAbs().maxCoeff() < 1e-12)
    return cone;
  return Cone::psd(cone.hilbert_dim(), e.transpose().inverse(), cone.tolerance());
}

// ---------------------------------------------------------------------------
// extremality

std::vector<Vec> extremal_rays(const Cone& cone) {
  if (!cone.is_polyhedral())
    throw InvalidArgument("psd cone: extremal rays are rank-one; use sample_generators");
  std::vector<Vec> unit;
  for (const Vec& g : cone.generators()) {
    Vec u = g.normalized();
    bool dup = false;
    for (const Vec& w : unit)
      if (u.dot(w) > 1.0 - 1e-12) dup = true;
    if (!dup) unit.push_back(u);
  }
  if (cone.generators_minimal()) return unit;
  std::vector<bool> keep(unit.size(), true);
  for (size_t i = 0; i < unit.size(); ++i) {
    std::vector<Vec> others;
    for (size_t j = 0; j < unit.size(); ++j)
      if (j != i && keep[j]) others.push_back(unit[j]);
    if (others.empty()) continue;
    Mat g(cone.ambient_dim(), static_cast<Eigen::Index>(others.size()));
    for (size_t j = 0; j < others.size(); ++j) g.col(j) = others[j];
    if (in_span_cone(g, unit[i], cone.tolerance())) keep[i] = false;
  }
  std::vector<Vec> out;
  for (size_t i = 0; i < unit.size(); ++i)
    if (keep[i]) out.push_back(unit[i]);
  return out;
}

bool is_extremal(const Cone& cone, const Vec& v) {
  require_dim(v.size(), cone.ambient_dim(), "is_extremal");
  if (v.norm() <= cone.tolerance()) return false;
  if (!member(cone, v)) return false;
  if (!cone.is_polyhedral()) {
    Vec ev = eigenvalues_h(cone.preimage(v));
    const Eigen::Index d = ev.size();
    double top = ev(d - 1);
    return d < 2 || ev(d - 2) <= cone.tolerance() * std::max(1.0, top);
  }
  Vec u = v.normalized();
  std::vector<Vec> rays = extremal_rays(cone);
  std::vector<Vec> others;
  for (const Vec& r : rays) {
    if (r.dot(u) > 1.0 - 1e-9) return true;
    others.push_back(r);
  }
  Mat g(cone.ambient_dim(), static_cast<Eigen::Index>(others.size()));
  for (size_t j = 0; j < others.size(); ++j) g.col(j) = others[j];
  return !in_span_cone(g, u, cone.tolerance());
}

std::vector<Vec> sample_generators(const Cone& cone, int count,
                                   std::uint64_t seed) {
  if (cone.is_polyhedral()) return cone.generators();
  const int d = cone.hilbert_dim();
  std::vector<Vec> out;
  for (const CVec& psi : unit_vector_grid(d))
    out.push_back(cone.embed(psi * psi.adjoint()));
  Rng rng(seed);
  for (int k = 0; k < count; ++k) {
    CVec psi = random_unit_vector(d, rng);
    out.push_back(cone.embed(psi * psi.adjoint()));
  }
  return out;
}

bool check_cone_isomorphism(const Mat& map, const Cone& src, const Cone& dst,
                            int samples) {
  if (map.rows() != map.cols()) throw DimensionError("cone isomorphism needs a square map");
  require_dim(map.cols(), src.ambient_dim(), "cone isomorphism source");
  require_dim(map.rows(), dst.ambient_dim(), "cone isomorphism target");
  Eigen::FullPivLU<Mat> lu(map);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) throw SingularMapError("map is not invertible");
  Mat inv = lu.inverse();
  for (const Vec& g : sample_generators(src, samples))
    if (!member(dst, map * g)) return false;
  for (const Vec& h : sample_generators(dst, samples))
    if (!member(src, inv * h)) return false;
  return true;
}

int span_dimension(const Cone& cone) {
  if (cone.is_polyhedral()) return rank(cone.generator_matrix());
  return rank(cone.embedding());
}

}  // namespace conelab
