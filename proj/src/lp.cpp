// Copyright 2026 The setcover-kit Authors
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

#include "setcover/lp.hpp"

#include <cmath>
#include <vector>

namespace setcover::lp {
namespace {

constexpr double kPivotEps = 1e-11;

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), t_(rows, cols + 1) {
    t_.setZero();
    basis_.assign(rows, -1);
  }

  double& at(int i, int j) { return t_(i, j); }
  double& rhs(int i) { return t_(i, cols_); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c) {
    const double p = t_(r, c);
    t_.row(r) /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
  }

  // Maximizes cost'v over the current basis; columns with allowed[j] == false
  // never enter.  Returns false when the iteration budget runs out.
  bool optimize(const Vec& cost, const std::vector<bool>& allowed, int max_iter,
                int& iters) {
    while (iters < max_iter) {
      // Reduced costs d_j = c_j - c_B' B^{-1} a_j.
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!allowed[j]) continue;
        bool basic = false;
        for (int b : basis_) basic |= (b == j);
        if (basic) continue;
        double d = cost[j];
        for (int i = 0; i < rows_; ++i) d -= cost[basis_[i]] * t_(i, j);
        if (d > 1e-10) {
          enter = j;  // Bland: first improving column
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = kInf;
      for (int i = 0; i < rows_; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = t_(i, cols_) / a;
        if (ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
             basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      // Bounded programs by construction: a missing pivot row means the
      // improving direction is numerically degenerate.
      if (leave < 0) return true;
      pivot(leave, enter);
      ++iters;
    }
    return false;
  }

 private:
  int rows_, cols_;
  Mat t_;
  std::vector<int> basis_;
};

}  // namespace

const char* StatusName(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

Result MaximizeBoxed(const Vec& c, const Mat& A, const Vec& b, const Vec& lo,
                     const Vec& hi, int max_iter) {
  const int n = static_cast<int>(c.size());
  if (A.cols() != n || A.rows() != b.size() || lo.size() != n || hi.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "lp: inconsistent dimensions");
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]) || lo[j] > hi[j]) {
      throw Error(ErrorCode::kInvalidArgument, "lp: bounds must be finite, lo <= hi");
    }
  }
  // Substitute x = lo + z, 0 <= z <= hi - lo.
  const int m = static_cast<int>(A.rows()) + n;
  Mat abar(m, n);
  Vec bbar(m);
  abar.topRows(A.rows()) = A;
  bbar.head(A.rows()) = b - A * lo;
  abar.bottomRows(n) = Mat::Identity(n, n);
  bbar.tail(n) = hi - lo;

  int n_art = 0;
  for (int i = 0; i < m; ++i) n_art += bbar[i] < 0 ? 1 : 0;
  const int cols = n + m + n_art;
  Tableau tab(m, cols);
  int art = 0;
  for (int i = 0; i < m; ++i) {
    const double sgn = bbar[i] < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) tab.at(i, j) = sgn * abar(i, j);
    tab.at(i, n + i) = sgn;
    tab.rhs(i) = sgn * bbar[i];
    if (sgn < 0) {
      tab.at(i, n + m + art) = 1.0;
      tab.basis()[i] = n + m + art;
      ++art;
    } else {
      tab.basis()[i] = n + i;
    }
  }

  Result res;
  int iters = 0;
  if (n_art > 0) {
    Vec cost = Vec::Zero(cols);
    cost.tail(n_art).setConstant(-1.0);
    std::vector<bool> allowed(cols, true);
    if (!tab.optimize(cost, allowed, max_iter, iters)) {
      res.status = Status::kIterationLimit;
      res.iterations = iters;
      return res;
    }
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[i] >= n + m) infeas += tab.rhs(i);
    }
    if (infeas > 1e-9) {
      res.status = Status::kInfeasible;
      res.iterations = iters;
      return res;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[i] < n + m) continue;
      for (int j = 0; j < n + m; ++j) {
        if (std::abs(tab.at(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  Vec cost = Vec::Zero(cols);
  cost.head(n) = c;
  std::vector<bool> allowed(cols, true);
  for (int j = n + m; j < cols; ++j) allowed[j] = false;
  const bool done = tab.optimize(cost, allowed, max_iter, iters);

  Vec z = Vec::Zero(n);
  for (int i = 0; i < m; ++i) {
    const int bj = tab.basis()[i];
    if (bj < n) z[bj] = tab.rhs(i);
  }
  res.x = lo + z;
  res.objective = c.dot(res.x);
  res.iterations = iters;
  res.status = done ? Status::kOptimal : Status::kIterationLimit;
  return res;
}

}  // namespace setcover::lp
