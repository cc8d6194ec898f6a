#pragma once

// Test-only oracles. Nothing here calls into the library's linear algebra,
// Smith form, or cone code; they recompute from the raw definitions.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "omlat/lattice.hpp"

namespace omlat::oracle {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

/// Rank of a rational matrix by plain forward elimination.
inline std::size_t gauss_rank(std::vector<std::vector<Q>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Q f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// Dimension of the rational solution space of the raw additivity system
/// nu(x v y) = nu(x) + nu(y) over ordered orthogonal pairs.
inline std::size_t additivity_solution_dimension(const OrthoLattice& l) {
  std::vector<std::vector<Q>> rows;
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem y = 0; y < l.size(); ++y) {
      if (!l.leq(y, l.ortho(x))) continue;
      std::vector<Q> row(l.size(), Q(0));
      row[l.join(x, y)] += 1;
      row[x] -= 1;
      row[y] -= 1;
      rows.push_back(std::move(row));
    }
  return l.size() - gauss_rank(std::move(rows));
}

/// Number of h in (Z/m)^n with A h = 0 mod m, by meet-in-the-middle
/// enumeration over the two halves of the variables.
inline std::uint64_t count_homs(const std::vector<std::vector<long long>>& a, std::size_t n, long long m) {
  const std::size_t split = n / 2;
  auto residues = [&](std::size_t lo, std::size_t hi, bool negate) {
    std::map<std::vector<long long>, std::uint64_t> out;
    std::vector<long long> h(hi - lo, 0);
    for (;;) {
      std::vector<long long> v(a.size(), 0);
      for (std::size_t i = 0; i < a.size(); ++i) {
        long long s = 0;
        for (std::size_t j = lo; j < hi; ++j) s += a[i][j] * h[j - lo];
        s %= m;
        if (negate) s = -s;
        v[i] = ((s % m) + m) % m;
      }
      ++out[v];
      std::size_t k = 0;
      while (k < h.size() && ++h[k] == m) h[k++] = 0;
      if (k == h.size()) break;
    }
    return out;
  };
  auto left = residues(0, split, false);
  auto right = residues(split, n, true);
  std::uint64_t count = 0;
  for (const auto& [v, c] : left) {
    auto it = right.find(v);
    if (it != right.end()) count += c * it->second;
  }
  return count;
}

/// Membership of integer functions in the Z-span of integer basis vectors
/// (each of length n). Uses an invertible r x r minor, then verifies the
/// full reconstruction.
class IntegerSpan {
 public:
  explicit IntegerSpan(std::vector<std::vector<long long>> basis) : basis_(std::move(basis)) {
    const std::size_t r = basis_.size();
    if (r == 0) return;
    const std::size_t n = basis_[0].size();
    // Greedy pivot rows of the n x r matrix whose columns are the basis.
    std::vector<std::vector<Q>> chosen;
    for (std::size_t x = 0; x < n && rows_.size() < r; ++x) {
      std::vector<Q> row(r);
      for (std::size_t j = 0; j < r; ++j) row[j] = basis_[j][x];
      chosen.push_back(row);
      if (gauss_rank(chosen) == chosen.size()) {
        rows_.push_back(x);
      } else {
        chosen.pop_back();
      }
    }
    // Inverse of the chosen minor by Gauss-Jordan.
    std::vector<std::vector<Q>> aug(r, std::vector<Q>(2 * r, Q(0)));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) aug[i][j] = chosen[i][j];
      aug[i][r + i] = 1;
    }
    for (std::size_t c = 0; c < r; ++c) {
      std::size_t p = c;
      while (aug[p][c] == 0) ++p;
      std::swap(aug[p], aug[c]);
      Q inv = 1 / aug[c][c];
      for (auto& v : aug[c]) v *= inv;
      for (std::size_t i = 0; i < r; ++i)
        if (i != c && aug[i][c] != 0) {
          Q f = aug[i][c];
          for (std::size_t j = 0; j < 2 * r; ++j) aug[i][j] -= f * aug[c][j];
        }
    }
    inverse_.assign(r, std::vector<Q>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) inverse_[i][j] = aug[i][r + j];
  }

  bool contains(const std::vector<long long>& f) const {
    const std::size_t r = basis_.size();
    if (r == 0) return std::all_of(f.begin(), f.end(), [](long long v) { return v == 0; });
    std::vector<long long> coeff(r);
    for (std::size_t i = 0; i < r; ++i) {
      Q c = 0;
      for (std::size_t j = 0; j < r; ++j) c += inverse_[i][j] * f[rows_[j]];
      if (boost::multiprecision::denominator(c) != 1) return false;
      coeff[i] = static_cast<long long>(boost::multiprecision::numerator(c));
    }
    for (std::size_t x = 0; x < f.size(); ++x) {
      long long s = 0;
      for (std::size_t j = 0; j < r; ++j) s += coeff[j] * basis_[j][x];
      if (s != f[x]) return false;
    }
    return true;
  }

 private:
  std::vector<std::vector<long long>> basis_;
  std::vector<std::size_t> rows_;
  std::vector<std::vector<Q>> inverse_;
};

/// Exact feasibility of { lambda >= 0, sum lambda = 1, sum lambda_i v_i = p }
/// by phase-one simplex with Bland's rule.
inline bool in_convex_hull(const std::vector<std::vector<Q>>& vertices, const std::vector<Q>& point) {
  const std::size_t k = vertices.size();
  if (k == 0) return false;
  const std::size_t d = point.size();
  const std::size_t m = d + 1;  // equality rows
  // Columns: k lambdas, then m artificials. Rows normalised to rhs >= 0.
  std::vector<std::vector<Q>> t(m, std::vector<Q>(k + m + 1, Q(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) t[i][j] = vertices[j][i];
    t[i][k + m] = point[i];
  }
  for (std::size_t j = 0; j < k; ++j) t[d][j] = 1;
  t[d][k + m] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (t[i][k + m] < 0)
      for (auto& v : t[i]) v = -v;
    t[i][k + i] = 1;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;
  // Objective: minimise the sum of artificials; reduced costs row.
  for (;;) {
    std::vector<Q> cost(k + m, Q(0));
    for (std::size_t j = 0; j < k + m; ++j) {
      Q c = j >= k ? Q(1) : Q(0);
      for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= k) c -= t[i][j];
      cost[j] = c;
    }
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < k + m; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (!enter) break;
    std::optional<std::size_t> leave;
    Q best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][*enter] <= 0) continue;
      Q ratio = t[i][k + m] / t[i][*enter];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) break;  // unbounded direction cannot occur in phase one
    Q piv = t[*leave][*enter];
    for (auto& v : t[*leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i)
      if (i != *leave && t[i][*enter] != 0) {
        Q f = t[i][*enter];
        for (std::size_t j = 0; j < k + m + 1; ++j) t[i][j] -= f * t[*leave][j];
      }
    basis[*leave] = *enter;
  }
  Q infeasibility = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= k) infeasibility += t[i][k + m];
  return infeasibility == 0;
}

/// Extreme rays of the pointed cone { v : h.v >= 0 } by brute force: every
/// (d-1)-subset of constraints of rank d-1 fixes a line; keep the feasible
/// direction(s), scaled to primitive integers. Empty if the cone has a line.
inline std::set<std::vector<Q>> extreme_rays(std::size_t d, const std::vector<std::vector<Q>>& h) {
  std::set<std::vector<Q>> out;
  if (gauss_rank(h) < d) return out;
  auto primitive = [](std::vector<Q> v) {
    Z l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, Z(boost::multiprecision::denominator(x)));
    Z g = 0;
    for (auto& x : v) {
      x *= l;
      g = boost::multiprecision::gcd(g, Z(boost::multiprecision::numerator(x)));
    }
    for (auto& x : v) x /= g;
    return v;
  };
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> walk = [&](std::size_t start) {
    if (pick.size() + 1 == d) {
      std::vector<std::vector<Q>> rows;
      for (auto i : pick) rows.push_back(h[i]);
      if (gauss_rank(rows) + 1 != d) return;
      // Kernel direction: Gauss-Jordan, then the single free column.
      std::vector<std::size_t> pivots;
      std::size_t r = 0;
      for (std::size_t c = 0; c < d && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Q inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i)
          if (i != r && rows[i][c] != 0) {
            Q f = rows[i][c];
            for (std::size_t j = 0; j < d; ++j) rows[i][j] -= f * rows[r][j];
          }
        pivots.push_back(c);
        ++r;
      }
      std::size_t free = 0;
      while (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) ++free;
      std::vector<Q> v(d, Q(0));
      v[free] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
      for (int sign : {1, -1}) {
        std::vector<Q> w = v;
        for (auto& x : w) x *= sign;
        bool feasible = true;
        for (const auto& c : h) {
          Q s = 0;
          for (std::size_t j = 0; j < d; ++j) s += c[j] * w[j];
          if (s < 0) feasible = false;
        }
        if (feasible) out.insert(primitive(w));
      }
      return;
    }
    for (std::size_t i = start; i < h.size(); ++i) {
      pick.push_back(i);
      walk(i + 1);
      pick.pop_back();
    }
  };
  if (d == 1) {
    for (int sign : {1, -1}) {
      bool feasible = true;
      for (const auto& c : h)
        if (c[0] * sign < 0) feasible = false;
      if (feasible) out.insert({Q(sign)});
    }
    return out;
  }
  walk(0);
  return out;
}

}  // namespace omlat::oracle
