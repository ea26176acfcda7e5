// Copyright 2026 The dimarket Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dim/lp.hpp"

#include <optional>
#include <stdexcept>

namespace dim::lp {

namespace {

class Tableau {
 public:
  Tableau(const StandardFormLp& p) : m_(p.b.size()), n_(p.c.size()) {
    rows_.assign(m_, std::vector<Rational>(n_ + m_));
    rhs_.resize(m_);
    flipped_.assign(m_, false);
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (p.a[r].size() != n_) throw std::invalid_argument("lp: ragged constraint matrix");
      flipped_[r] = p.b[r].sign() < 0;
      for (std::size_t j = 0; j < n_; ++j) rows_[r][j] = flipped_[r] ? -p.a[r][j] : p.a[r][j];
      rhs_[r] = flipped_[r] ? -p.b[r] : p.b[r];
      rows_[r][n_ + r] = Rational(1);
      basis_[r] = n_ + r;
    }
  }

  // Runs simplex for `cost` over columns [0, allowed). Returns false if unbounded.
  bool optimize(const std::vector<Rational>& cost, std::size_t allowed) {
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < allowed && !entering; ++j) {
        if (is_basic(j)) continue;
        if (reduced_cost(cost, j).sign() < 0) entering = j;
      }
      if (!entering) return true;

      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (rows_[r][*entering].sign() <= 0) continue;
        Rational ratio = rhs_[r] / rows_[r][*entering];
        if (!leaving || ratio < best || (ratio == best && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best = std::move(ratio);
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  // After phase one: move zero-level artificials out of the basis where possible.
  void expel_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!rows_[r][j].is_zero() && !is_basic(j)) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational z;
    for (std::size_t r = 0; r < m_; ++r) z += cost[basis_[r]] * rhs_[r];
    return z;
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(n_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) x[basis_[r]] = rhs_[r];
    }
    return x;
  }

  // y = c_B B^{-1}; B^{-1} sits in the artificial columns.
  std::vector<Rational> duals(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      Rational v;
      for (std::size_t r = 0; r < m_; ++r) v += cost[basis_[r]] * rows_[r][n_ + k];
      y[k] = flipped_[k] ? -v : v;
    }
    return y;
  }

  std::size_t rows() const { return m_; }
  std::size_t columns() const { return n_; }

 private:
  bool is_basic(std::size_t j) const {
    for (std::size_t b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const {
    Rational z;
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational& cb = cost[basis_[r]];
      if (!cb.is_zero() && !rows_[r][j].is_zero()) z += cb * rows_[r][j];
    }
    return z - cost[j];
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = rows_[row][col].reciprocal();
    for (auto& v : rows_[row]) {
      if (!v.is_zero()) v *= inv;
    }
    rhs_[row] *= inv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == row || rows_[r][col].is_zero()) continue;
      const Rational factor = rows_[r][col];
      for (std::size_t j = 0; j < rows_[r].size(); ++j) {
        if (!rows_[row][j].is_zero()) rows_[r][j] -= factor * rows_[row][j];
      }
      rhs_[r] -= factor * rhs_[row];
    }
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<bool> flipped_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const StandardFormLp& problem) {
  if (problem.a.size() != problem.b.size()) throw std::invalid_argument("lp: row count mismatch");
  Tableau tab(problem);
  const std::size_t n = tab.columns();
  const std::size_t m = tab.rows();

  std::vector<Rational> phase_one(n + m);
  for (std::size_t k = 0; k < m; ++k) phase_one[n + k] = Rational(-1);
  tab.optimize(phase_one, n + m);
  Solution out;
  if (tab.objective(phase_one).sign() < 0) {
    out.status = Status::kInfeasible;
    return out;
  }
  tab.expel_artificials();

  std::vector<Rational> cost(n + m);
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.c[j];
  if (!tab.optimize(cost, n)) {
    out.status = Status::kUnbounded;
    return out;
  }
  out.status = Status::kOptimal;
  out.objective = tab.objective(cost);
  out.x = tab.primal();
  out.duals = tab.duals(cost);
  return out;
}

}  // namespace dim::lp
