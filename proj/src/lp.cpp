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

#include "conelab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conelab {

namespace {

constexpr double kPivotEps = 1e-11;

bool finite(const Mat& m) { return m.size() == 0 || m.allFinite(); }
bool finite(const Vec& v) { return v.size() == 0 || v.allFinite(); }

struct Tableau {
  Mat t;  // last row is the reduced-cost row, last column the rhs
  std::vector<Eigen::Index> basis;

  Eigen::Index rows() const { return t.rows() - 1; }
  Eigen::Index rhs() const { return t.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index j) {
    t.row(r) /= t(r, j);
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (i == r) continue;
      double f = t(i, j);
      if (f != 0.0) t.row(i) -= f * t.row(r);
    }
    basis[r] = j;
  }

  // Runs Bland-rule iterations over columns [0, ncols). Returns false when
  // unbounded.
  bool run(Eigen::Index ncols) {
    const Eigen::Index m = rows();
    const Eigen::Index obj = m;
    for (int iter = 0; iter < 200000; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < ncols; ++j) {
        if (t(obj, j) < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        double a = t(i, enter);
        if (a <= kPivotEps) continue;
        double ratio = t(i, rhs()) / a;
        if (ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
             basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw SolverError("simplex iteration limit reached");
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, double tol) {
  const Eigen::Index n = lp.c.size();
  const Eigen::Index m_eq = lp.a_eq.rows();
  const Eigen::Index m_ub = lp.a_ub.rows();
  if (m_eq > 0) {
    require_dim(lp.a_eq.cols(), n, "lp equality matrix");
    require_dim(lp.b_eq.size(), m_eq, "lp equality rhs");
  }
  if (m_ub > 0) {
    require_dim(lp.a_ub.cols(), n, "lp inequality matrix");
    require_dim(lp.b_ub.size(), m_ub, "lp inequality rhs");
  }
  if (!lp.free_var.empty() && static_cast<Eigen::Index>(lp.free_var.size()) != n)
    throw DimensionError("lp free_var flags do not match variable count");
  if (!finite(lp.c) || !finite(lp.a_eq) || !finite(lp.b_eq) ||
      !finite(lp.a_ub) || !finite(lp.b_ub))
    throw SolverError("non-finite linear program data");

  std::vector<Eigen::Index> pos(n), neg(n, -1);
  Eigen::Index ncol = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    pos[j] = ncol++;
    if (!lp.free_var.empty() && lp.free_var[j]) neg[j] = ncol++;
  }
  const Eigen::Index slack0 = ncol;
  ncol += m_ub;
  const Eigen::Index m = m_eq + m_ub;

  Mat a = Mat::Zero(m, ncol);
  Vec b(m);
  auto put_row = [&](Eigen::Index i, const auto& row) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, pos[j]) = row(j);
      if (neg[j] >= 0) a(i, neg[j]) = -row(j);
    }
  };
  for (Eigen::Index i = 0; i < m_eq; ++i) {
    put_row(i, lp.a_eq.row(i));
    b(i) = lp.b_eq(i);
  }
  for (Eigen::Index i = 0; i < m_ub; ++i) {
    put_row(m_eq + i, lp.a_ub.row(i));
    a(m_eq + i, slack0 + i) = 1.0;
    b(m_eq + i) = lp.b_ub(i);
  }
  Vec cost = Vec::Zero(ncol);
  for (Eigen::Index j = 0; j < n; ++j) {
    cost(pos[j]) = lp.c(j);
    if (neg[j] >= 0) cost(neg[j]) = -lp.c(j);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    double s = std::max(a.row(i).cwiseAbs().maxCoeff(), std::abs(b(i)));
    if (s > 0) {
      a.row(i) /= s;
      b(i) /= s;
    }
    if (b(i) < 0) {
      a.row(i) *= -1.0;
      b(i) = -b(i);
    }
  }

  Tableau tab;
  tab.t = Mat::Zero(m + 1, ncol + m + 1);
  tab.t.topLeftCorner(m, ncol) = a;
  tab.t.block(0, ncol, m, m) = Mat::Identity(m, m);
  tab.t.topRightCorner(m, 1) = b;
  tab.basis.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) tab.basis[i] = ncol + i;
  for (Eigen::Index i = 0; i < m; ++i) {
    tab.t.row(m).head(ncol) -= a.row(i);
    tab.t(m, tab.rhs()) -= b(i);
  }

  LpResult res;
  tab.run(ncol + m);
  res.infeasibility = std::max(0.0, -tab.t(m, tab.rhs()));
  if (res.infeasibility > tol) {
    res.status = LpStatus::infeasible;
    return res;
  }

  // Drive artificial variables out of the basis; drop redundant rows.
  for (Eigen::Index i = 0; i < tab.rows(); ++i) {
    if (tab.basis[i] < ncol) continue;
    Eigen::Index j = 0;
    for (; j < ncol; ++j)
      if (std::abs(tab.t(i, j)) > 1e-9) break;
    if (j < ncol) {
      tab.pivot(i, j);
    } else {
      Mat keep(tab.t.rows() - 1, tab.t.cols());
      keep << tab.t.topRows(i), tab.t.bottomRows(tab.t.rows() - i - 1);
      tab.t = keep;
      tab.basis.erase(tab.basis.begin() + i);
      --i;
    }
  }

  const Eigen::Index mr = tab.rows();
  tab.t.row(mr).setZero();
  tab.t.row(mr).head(ncol) = cost.transpose();
  for (Eigen::Index i = 0; i < mr; ++i) {
    double cb = cost(tab.basis[i]);
    if (cb != 0.0) tab.t.row(mr) -= cb * tab.t.row(i);
  }
  if (!tab.run(ncol)) {
    res.status = LpStatus::unbounded;
    return res;
  }

  Vec xs = Vec::Zero(ncol);
  for (Eigen::Index i = 0; i < mr; ++i)
    if (tab.basis[i] < ncol) xs(tab.basis[i]) = tab.t(i, tab.rhs());
  res.x = Vec::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    res.x(j) = xs(pos[j]);
    if (neg[j] >= 0) res.x(j) -= xs(neg[j]);
  }
  res.objective = lp.c.dot(res.x);
  res.status = LpStatus::optimal;
  return res;
}

NnlsResult nnls(const Mat& a, const Vec& b, double tol) {
  require_dim(b.size(), a.rows(), "nnls rhs");
  if (!finite(a) || !finite(b)) throw SolverError("non-finite nnls data");
  const Eigen::Index n = a.cols();
  Vec x = Vec::Zero(n);
  std::vector<bool> active(n, false);  // true: in the passive (free) set
  const double thr = tol * std::max(1.0, a.norm() * b.norm());

  auto solve_passive = [&](Vec& s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (active[j]) idx.push_back(j);
    Mat ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (size_t k = 0; k < idx.size(); ++k) ap.col(k) = a.col(idx[k]);
    Vec sp = lstsq(ap, b);
    s = Vec::Zero(n);
    for (size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(k);
  };

  std::vector<bool> blocked(n, false);
  for (int outer = 0; outer < 3 * n + 50; ++outer) {
    Vec w = a.transpose() * (b - a * x);
    Eigen::Index jmax = -1;
    double wmax = thr;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!active[j] && !blocked[j] && w(j) > wmax) {
        wmax = w(j);
        jmax = j;
      }
    }
    if (jmax < 0) break;
    active[jmax] = true;
    Vec s;
    solve_passive(s);
    if (s(jmax) <= 0) {
      // Rounding made the entering column useless; skip it until x moves.
      active[jmax] = false;
      blocked[jmax] = true;
      continue;
    }
    for (int inner = 0; inner < 3 * n + 50; ++inner) {
      if (inner > 0) solve_passive(s);
      double smin = 1.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (active[j]) smin = std::min(smin, s(j));
      if (smin > 0) break;
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (active[j] && s(j) <= 0) alpha = std::min(alpha, x(j) / (x(j) - s(j)));
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (active[j] && x(j) <= 1e-15) {
          active[j] = false;
          x(j) = 0.0;
        }
      }
    }
    x = s.cwiseMax(0.0);
    std::fill(blocked.begin(), blocked.end(), false);
  }
  NnlsResult r;
  r.x = x;
  r.residual = (a * x - b).norm();
  return r;
}

}  // namespace conelab
