/*
 * Copyright 2026 the adalloc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "adalloc/simplex.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace adalloc {
namespace {

constexpr double kDualTol = 1e-7;
constexpr double kPivotTol = 1e-9;
constexpr double kDegenTol = 1e-9;
constexpr int kDegenLimit = 40;
constexpr int kRefactorEvery = 512;
constexpr long kMaxIterations = 200000;

enum : std::int8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

// Revised simplex over the equality form A x + s (+ artificials) = b with
// individual bounds on every column. Dense basis inverse; columns are
// sparse (at most a handful of rows each in this problem family).
class SimplexCore {
 public:
  int m = 0;
  int n_total = 0;
  std::vector<std::vector<std::pair<int, double>>> cols;  // (row, coeff)
  std::vector<double> lo, hi, obj;
  std::vector<std::int8_t> stat;
  std::vector<int> basis;       // size m, variable index per row
  std::vector<double> xb;       // basic values, aligned with basis
  std::vector<double> binv;     // m*m row-major
  std::vector<double> rhs;

  double nonbasic_value(int j) const { return stat[j] == kAtUpper ? hi[j] : lo[j]; }

  void compute_basic_values() {
    std::vector<double> v = rhs;
    for (int j = 0; j < n_total; ++j) {
      if (stat[j] == kBasic) continue;
      double val = nonbasic_value(j);
      if (val == 0.0) continue;
      for (auto [r, a] : cols[j]) v[r] -= a * val;
    }
    for (int r = 0; r < m; ++r) {
      double sum = 0.0;
      const double* row = &binv[static_cast<std::size_t>(r) * m];
      for (int i = 0; i < m; ++i) sum += row[i] * v[i];
      xb[r] = sum;
    }
  }

  // Rebuilds binv from the current basis by Gauss-Jordan with partial
  // pivoting; cures drift from the rank-one updates.
  void refactorize() {
    std::vector<double> mat(static_cast<std::size_t>(m) * m, 0.0);
    for (int r = 0; r < m; ++r)
      for (auto [i, a] : cols[basis[r]]) mat[static_cast<std::size_t>(i) * m + r] = a;
    std::fill(binv.begin(), binv.end(), 0.0);
    for (int r = 0; r < m; ++r) binv[static_cast<std::size_t>(r) * m + r] = 1.0;

    for (int col = 0; col < m; ++col) {
      int piv = col;
      double best = std::abs(mat[static_cast<std::size_t>(col) * m + col]);
      for (int r = col + 1; r < m; ++r) {
        double v = std::abs(mat[static_cast<std::size_t>(r) * m + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < 1e-12) throw std::runtime_error("simplex: singular basis");
      if (piv != col) {
        for (int i = 0; i < m; ++i) {
          std::swap(mat[static_cast<std::size_t>(piv) * m + i],
                    mat[static_cast<std::size_t>(col) * m + i]);
          std::swap(binv[static_cast<std::size_t>(piv) * m + i],
                    binv[static_cast<std::size_t>(col) * m + i]);
        }
      }
      double inv = 1.0 / mat[static_cast<std::size_t>(col) * m + col];
      for (int i = 0; i < m; ++i) {
        mat[static_cast<std::size_t>(col) * m + i] *= inv;
        binv[static_cast<std::size_t>(col) * m + i] *= inv;
      }
      for (int r = 0; r < m; ++r) {
        if (r == col) continue;
        double f = mat[static_cast<std::size_t>(r) * m + col];
        if (f == 0.0) continue;
        for (int i = 0; i < m; ++i) {
          mat[static_cast<std::size_t>(r) * m + i] -=
              f * mat[static_cast<std::size_t>(col) * m + i];
          binv[static_cast<std::size_t>(r) * m + i] -=
              f * binv[static_cast<std::size_t>(col) * m + i];
        }
      }
    }
  }

  // Optimizes the current objective from the current (feasible) basis.
  void optimize() {
    std::vector<double> y(m, 0.0);
    std::vector<double> w(m, 0.0);
    bool y_dirty = true;
    bool bland = false;
    int degen_run = 0;
    int basis_changes = 0;

    for (long iter = 0; iter < kMaxIterations; ++iter) {
      if (y_dirty) {
        for (int i = 0; i < m; ++i) y[i] = 0.0;
        for (int r = 0; r < m; ++r) {
          double cb = obj[basis[r]];
          if (cb == 0.0) continue;
          const double* row = &binv[static_cast<std::size_t>(r) * m];
          for (int i = 0; i < m; ++i) y[i] += cb * row[i];
        }
        y_dirty = false;
      }

      // Pricing. Dantzig by default; Bland after a degenerate run.
      int enter = -1;
      double enter_score = kDualTol;
      int enter_dir = 0;
      for (int j = 0; j < n_total; ++j) {
        if (stat[j] == kBasic) continue;
        if (hi[j] - lo[j] < kPivotTol) continue;  // fixed
        double d = obj[j];
        for (auto [r, a] : cols[j]) d -= y[r] * a;
        int dir = 0;
        if (stat[j] == kAtLower && d > kDualTol) dir = +1;
        else if (stat[j] == kAtUpper && d < -kDualTol) dir = -1;
        if (dir == 0) continue;
        if (bland) {
          enter = j;
          enter_dir = dir;
          break;
        }
        double score = std::abs(d);
        if (score > enter_score) {
          enter_score = score;
          enter = j;
          enter_dir = dir;
        }
      }
      if (enter < 0) return;  // optimal

      // FTRAN: w = binv * a_enter.
      for (int r = 0; r < m; ++r) w[r] = 0.0;
      for (auto [i, a] : cols[enter]) {
        for (int r = 0; r < m; ++r) w[r] += binv[static_cast<std::size_t>(r) * m + i] * a;
      }

      // Ratio test.
      double span = hi[enter] - lo[enter];  // may be +inf
      double t = span;
      int leave = -1;           // -1: bound flip
      bool leave_to_upper = false;
      double leave_w = 0.0;
      for (int r = 0; r < m; ++r) {
        double delta = enter_dir * w[r];
        double cand;
        bool to_upper;
        int bvar = basis[r];
        if (delta > kPivotTol) {
          if (lo[bvar] == -kLpInfinity) continue;
          cand = (xb[r] - lo[bvar]) / delta;
          to_upper = false;
        } else if (delta < -kPivotTol) {
          if (hi[bvar] == kLpInfinity) continue;
          cand = (hi[bvar] - xb[r]) / (-delta);
          to_upper = true;
        } else {
          continue;
        }
        if (cand < 0.0) cand = 0.0;
        bool better;
        if (cand < t - 1e-10) {
          better = true;
        } else if (cand <= t + 1e-10 && leave >= 0) {
          // Tie: Bland picks the smallest variable index, Dantzig the
          // largest pivot magnitude for stability.
          better = bland ? bvar < basis[leave] : std::abs(w[r]) > std::abs(leave_w);
        } else {
          better = leave < 0 && cand <= t;
        }
        if (better) {
          t = cand;
          leave = r;
          leave_to_upper = to_upper;
          leave_w = w[r];
        }
      }
      if (t == kLpInfinity)
        throw std::runtime_error("simplex: unbounded direction (malformed model)");
      if (t < 0.0) t = 0.0;

      for (int r = 0; r < m; ++r) xb[r] -= enter_dir * t * w[r];

      if (leave < 0) {
        // Entering variable travels its whole span: bound flip only.
        stat[enter] = stat[enter] == kAtLower ? kAtUpper : kAtLower;
      } else {
        double enter_val = nonbasic_value(enter) + enter_dir * t;
        int leaving = basis[leave];
        stat[leaving] = leave_to_upper ? kAtUpper : kAtLower;
        stat[enter] = kBasic;
        basis[leave] = enter;
        xb[leave] = enter_val;

        double piv = w[leave];
        double* prow = &binv[static_cast<std::size_t>(leave) * m];
        double inv = 1.0 / piv;
        for (int i = 0; i < m; ++i) prow[i] *= inv;
        for (int r = 0; r < m; ++r) {
          if (r == leave || w[r] == 0.0) continue;
          double f = w[r];
          double* row = &binv[static_cast<std::size_t>(r) * m];
          for (int i = 0; i < m; ++i) row[i] -= f * prow[i];
        }
        y_dirty = true;
        if (++basis_changes % kRefactorEvery == 0) {
          refactorize();
          compute_basic_values();
        }
      }

      if (t <= kDegenTol) {
        if (++degen_run > kDegenLimit) bland = true;
      } else {
        degen_run = 0;
        bland = false;
      }
    }
    throw std::runtime_error("simplex: iteration limit exceeded");
  }
};

}  // namespace

LpResult solve_lp(const LpProblem& problem) {
  const int n = static_cast<int>(problem.n_vars());
  const int m = static_cast<int>(problem.rows.size());

  SimplexCore core;
  core.m = m;
  core.lo = problem.lower;
  core.hi = problem.upper;
  core.obj.assign(problem.objective.begin(), problem.objective.end());
  core.cols.resize(static_cast<std::size_t>(n));
  for (int r = 0; r < m; ++r) {
    const auto& row = problem.rows[r];
    if (row.rhs < 0.0)
      throw std::runtime_error("solve_lp: negative rhs not supported");
    for (auto [j, a] : row.coeffs) core.cols[static_cast<std::size_t>(j)].push_back({r, a});
  }
  core.rhs.resize(m);
  for (int r = 0; r < m; ++r) core.rhs[r] = problem.rows[r].rhs;

  // Slack per row: L rows get s in [0, inf), G rows s in (-inf, 0].
  for (int r = 0; r < m; ++r) {
    core.cols.push_back({{r, 1.0}});
    if (problem.rows[r].sense == 'L') {
      core.lo.push_back(0.0);
      core.hi.push_back(kLpInfinity);
    } else {
      core.lo.push_back(-kLpInfinity);
      core.hi.push_back(0.0);
    }
    core.obj.push_back(0.0);
  }

  // Start: structurals at a finite bound, slacks basic. Rows whose slack
  // value lands outside the slack bounds get an artificial instead; phase 1
  // drives the artificials to zero.
  core.stat.assign(core.cols.size(), kAtLower);
  for (int j = 0; j < n; ++j) {
    if (core.lo[j] == -kLpInfinity) core.stat[j] = kAtUpper;
  }
  std::vector<double> slack0(m);
  for (int r = 0; r < m; ++r) slack0[r] = problem.rows[r].rhs;
  for (int j = 0; j < n; ++j) {
    double val = core.nonbasic_value(j);
    if (val == 0.0) continue;
    for (auto [r, a] : core.cols[static_cast<std::size_t>(j)]) slack0[r] -= a * val;
  }

  core.basis.resize(m);
  std::vector<int> artificial_row;  // row per artificial column
  for (int r = 0; r < m; ++r) {
    int slack = n + r;
    double s = slack0[r];
    if (s >= core.lo[slack] - 1e-12 && s <= core.hi[slack] + 1e-12) {
      core.basis[r] = slack;
      core.stat[slack] = kBasic;
    } else {
      double bound = s < core.lo[slack] ? core.lo[slack] : core.hi[slack];
      core.stat[slack] = bound == core.lo[slack] ? kAtLower : kAtUpper;
      double resid = s - bound;
      int art = static_cast<int>(core.cols.size());
      core.cols.push_back({{r, resid > 0 ? 1.0 : -1.0}});
      core.lo.push_back(0.0);
      core.hi.push_back(kLpInfinity);
      core.obj.push_back(0.0);
      core.stat.push_back(kBasic);
      core.basis[r] = art;
      artificial_row.push_back(r);
    }
  }
  core.n_total = static_cast<int>(core.cols.size());
  core.binv.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int r = 0; r < m; ++r) core.binv[static_cast<std::size_t>(r) * m + r] = 1.0;
  core.xb.resize(m);
  core.compute_basic_values();

  const int n_art = static_cast<int>(artificial_row.size());
  const int art_base = core.n_total - n_art;

  if (n_art > 0) {
    std::vector<double> real_obj = core.obj;
    for (int k = 0; k < n_art; ++k) core.obj[art_base + k] = -1.0;
    for (int j = 0; j < art_base; ++j) core.obj[j] = 0.0;
    core.optimize();

    double infeas = 0.0;
    int worst_row = -1;
    double worst = 0.0;
    for (int r = 0; r < m; ++r) {
      if (core.basis[r] >= art_base && core.xb[r] > 1e-7) {
        infeas += core.xb[r];
        if (core.xb[r] > worst) {
          worst = core.xb[r];
          worst_row = artificial_row[static_cast<std::size_t>(core.basis[r] - art_base)];
        }
      }
    }
    for (int k = 0; k < n_art; ++k) {
      int j = art_base + k;
      if (core.stat[j] != kBasic && core.nonbasic_value(j) > 1e-7) {
        infeas += core.nonbasic_value(j);
        if (worst_row < 0) worst_row = artificial_row[static_cast<std::size_t>(k)];
      }
    }
    if (infeas > 1e-6) {
      LpResult res;
      res.status = LpResult::Status::kInfeasible;
      res.infeasible_row = worst_row;
      return res;
    }
    // Pin artificials to zero for phase 2.
    for (int k = 0; k < n_art; ++k) core.hi[art_base + k] = 0.0;
    core.obj = std::move(real_obj);
  }

  core.optimize();

  LpResult res;
  res.status = LpResult::Status::kOptimal;
  res.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j)
    if (core.stat[j] != kBasic) res.x[static_cast<std::size_t>(j)] = core.nonbasic_value(j);
  for (int r = 0; r < m; ++r)
    if (core.basis[r] < n) res.x[static_cast<std::size_t>(core.basis[r])] = core.xb[r];
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += problem.objective[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
  return res;
}

}  // namespace adalloc
