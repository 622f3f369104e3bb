#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "weyl/scalar.hpp"

namespace weyl {

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix int_identity(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/** Diagonalization U*A*V = S by unimodular row/column operations, with the
 *  divisibility chain s_1 | s_2 | ... (Smith normal form). */
struct SmithForm {
  IntMatrix u, v;               // unimodular transforms
  std::vector<Integer> diag;    // min(rows, cols) entries, nonnegative
  std::size_t rank = 0;
};

inline SmithForm smith_normal_form(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  SmithForm s;
  s.u = int_identity(rows);
  s.v = int_identity(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(s.u[i], s.u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    for (std::size_t r = 0; r < cols; ++r) std::swap(s.v[r][i], s.v[r][j]);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t c = 0; c < cols; ++c) a[dst][c] += q * a[src][c];
    for (std::size_t c = 0; c < rows; ++c) s.u[dst][c] += q * s.u[src][c];
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t r = 0; r < rows; ++r) a[r][dst] += q * a[r][src];
    for (std::size_t r = 0; r < cols; ++r) s.v[r][dst] += q * s.v[r][src];
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    // choose a pivot of minimal absolute value
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 &&
            (!found || cmp(abs(a[i][j]), abs(a[pi][pj])) < 0)) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        add_row(i, t, -q);
        if (a[i][t] != 0) {  // remainder strictly smaller: rotate it into the pivot
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        add_col(j, t, -q);
        if (a[t][j] != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
      if (!dirty) {
        bool zeroed = true;
        for (std::size_t i = t + 1; i < rows && zeroed; ++i) zeroed = a[i][t] == 0;
        for (std::size_t j = t + 1; j < cols && zeroed; ++j) zeroed = a[t][j] == 0;
        if (zeroed) break;
      }
    }
  }

  // enforce the divisibility chain by folding offenders into earlier pivots
  for (;;) {
    bool fixed = true;
    for (std::size_t t = 0; t + 1 < steps; ++t) {
      if (a[t][t] == 0) continue;
      for (std::size_t j = t + 1; j < steps; ++j) {
        if (a[j][j] != 0 && a[j][j] % a[t][t] != 0) {
          add_col(t, j, 1);  // drops the pair back to gcd/lcm on re-reduction
          fixed = false;
          SmithForm inner = smith_normal_form(a);
          // compose transforms
          IntMatrix u2(rows, std::vector<Integer>(rows, 0));
          for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < rows; ++c)
              for (std::size_t k = 0; k < rows; ++k) u2[r][c] += inner.u[r][k] * s.u[k][c];
          IntMatrix v2(cols, std::vector<Integer>(cols, 0));
          for (std::size_t r = 0; r < cols; ++r)
            for (std::size_t c = 0; c < cols; ++c)
              for (std::size_t k = 0; k < cols; ++k) v2[r][c] += s.v[r][k] * inner.v[k][c];
          s.u = std::move(u2);
          s.v = std::move(v2);
          s.diag = std::move(inner.diag);
          s.rank = inner.rank;
          return s;
        }
      }
    }
    if (fixed) break;
  }

  s.diag.assign(steps, Integer(0));
  for (std::size_t t = 0; t < steps; ++t) {
    if (a[t][t] < 0) {
      for (std::size_t c = 0; c < cols; ++c) a[t][c] = -a[t][c];
      for (std::size_t c = 0; c < rows; ++c) s.u[t][c] = -s.u[t][c];
    }
    s.diag[t] = a[t][t];
    if (s.diag[t] != 0) ++s.rank;
  }
  return s;
}

/** Solve A*x = b over Z given the Smith form of A. Returns the particular
 *  solution with all free coordinates set to zero. */
inline std::optional<std::vector<Integer>> solve_integer(const SmithForm& s,
                                                         std::size_t rows, std::size_t cols,
                                                         const std::vector<Integer>& b) {
  std::vector<Integer> y(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rows; ++k) y[i] += s.u[i][k] * b[k];

  std::vector<Integer> z(cols, 0);
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < steps && s.diag[i] != 0) {
      if (y[i] % s.diag[i] != 0) return std::nullopt;
      z[i] = y[i] / s.diag[i];
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Integer> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t k = 0; k < cols; ++k) x[i] += s.v[i][k] * z[k];
  return x;
}

}  // namespace weyl
