#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "omlat/matrix.hpp"
#include "omlat/numeric.hpp"

namespace omlat {

/// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SmithForm {
  IntMatrix left;      // U, rows x rows (empty when not requested)
  IntMatrix diagonal;  // D, rows x cols
  IntMatrix right;     // V, cols x cols
  std::size_t nonzero = 0;

  std::vector<Integer> invariants() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < nonzero; ++i) d.push_back(diagonal(i, i));
    return d;
  }
};

namespace detail {

class SmithReducer {
 public:
  SmithReducer(const IntMatrix& a, bool track_left)
      : d_(a), v_(IntMatrix::identity(a.cols())), track_left_(track_left) {
    if (track_left_) u_ = IntMatrix::identity(a.rows());
  }

  SmithForm run() {
    const std::size_t limit = std::min(d_.rows(), d_.cols());
    std::size_t t = 0;
    for (; t < limit; ++t) {
      if (!move_min_to(t, t, d_.rows(), d_.cols())) break;
      reduce_pivot(t);
      if (d_(t, t) < 0) negate_row(t);
    }
    SmithForm out;
    out.left = std::move(u_);
    out.diagonal = std::move(d_);
    out.right = std::move(v_);
    out.nonzero = t;
    return out;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    d_.swap_rows(a, b);
    if (track_left_) u_.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d_.swap_cols(a, b);
    v_.swap_cols(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    d_.add_row(dst, src, k);
    if (track_left_) u_.add_row(dst, src, k);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    d_.add_col(dst, src, k);
    v_.add_col(dst, src, k);
  }
  void negate_row(std::size_t i) {
    d_.negate_row(i);
    if (track_left_) u_.negate_row(i);
  }

  // Moves the nonzero entry of least absolute value in rows [t, r_end) and
  // columns [t, c_end) to (t, t). False if that block is zero.
  bool move_min_to(std::size_t t, std::size_t t2, std::size_t r_end, std::size_t c_end) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < r_end; ++i)
      for (std::size_t j = t2; j < c_end; ++j) {
        const Integer& v = d_(i, j);
        if (v == 0) continue;
        Integer av = abs(v);
        if (!best || av < best_abs) {
          best = {i, j};
          best_abs = std::move(av);
          if (best_abs == 1) goto found;
        }
      }
  found:
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t2, best->second);
    return true;
  }

  void reduce_pivot(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < d_.rows(); ++i) {
        if (d_(i, t) == 0) continue;
        Integer q = d_(i, t) / d_(t, t);
        if (q != 0) add_row(i, t, Integer(-q));
        if (d_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (d_(t, j) == 0) continue;
        Integer q = d_(t, j) / d_(t, t);
        if (q != 0) add_col(j, t, Integer(-q));
        if (d_(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A smaller remainder now sits in row or column t.
        std::size_t bi = t, bj = t;
        Integer best = abs(d_(t, t));
        for (std::size_t i = t + 1; i < d_.rows(); ++i)
          if (d_(i, t) != 0 && abs(d_(i, t)) < best) best = abs(d_(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < d_.cols(); ++j)
          if (d_(t, j) != 0 && abs(d_(t, j)) < best) best = abs(d_(t, j)), bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Divisibility: every remaining entry must be a multiple of the pivot.
      bool fixed = false;
      for (std::size_t i = t + 1; i < d_.rows() && !fixed; ++i)
        for (std::size_t j = t + 1; j < d_.cols(); ++j)
          if (d_(i, j) % d_(t, t) != 0) {
            add_row(t, i, Integer(1));
            fixed = true;
            break;
          }
      if (!fixed) return;
    }
  }

  IntMatrix d_;
  IntMatrix u_;
  IntMatrix v_;
  bool track_left_;
};

}  // namespace detail

/// Smith normal form by elementary row/column operations with
/// least-absolute-value pivoting over arbitrary-precision integers.
inline SmithForm smith_normal_form(const IntMatrix& a, bool track_left = true) {
  return detail::SmithReducer(a, track_left).run();
}

/// A row vector y with y * A = target, if one exists over Z.
inline std::optional<std::vector<Integer>> solve_left_integer(const SmithForm& snf,
                                                              const std::vector<Integer>& target) {
  // y A = t  <=>  (y U^-1) D = t V.
  const IntMatrix& v = snf.right;
  const IntMatrix& d = snf.diagonal;
  std::vector<Integer> tv(v.cols(), Integer(0));
  for (std::size_t j = 0; j < v.cols(); ++j)
    for (std::size_t k = 0; k < v.rows(); ++k) tv[j] += target[k] * v(k, j);
  std::vector<Integer> z(d.rows(), Integer(0));
  for (std::size_t j = 0; j < tv.size(); ++j) {
    if (j < snf.nonzero) {
      if (tv[j] % d(j, j) != 0) return std::nullopt;
      z[j] = tv[j] / d(j, j);
    } else if (tv[j] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Integer> y(snf.left.cols(), Integer(0));
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += z[i] * snf.left(i, j);
  }
  return y;
}

/// Generators of the left kernel { y : y A = 0 } over Z.
inline std::vector<std::vector<Integer>> left_kernel(const SmithForm& snf) {
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = snf.nonzero; i < snf.left.rows(); ++i) out.push_back(snf.left.row(i));
  return out;
}

}  // namespace omlat
