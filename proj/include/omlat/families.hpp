#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "omlat/error.hpp"
#include "omlat/lattice.hpp"
#include "omlat/limits.hpp"

// Built-in finite ortholattices used as test families.

namespace omlat {

/// Power set of an n-set; atoms are named a, b, c, ... and subsets by
/// concatenation, with "0" and "1" for the empty and full set.
inline OrthoLattice boolean(unsigned n, const Limits& limits = kDefaultLimits) {
  if (n < 1 || n > 20) throw Error(ErrorKind::SizeCap, "boolean(n) requires 1 <= n <= 20");
  const std::uint64_t count = std::uint64_t{1} << n;
  if (count > limits.max_elements)
    throw Error(ErrorKind::SizeCap, "boolean(" + std::to_string(n) + ") has " + std::to_string(count) +
                                        " elements, cap is " + std::to_string(limits.max_elements));
  const std::uint64_t full = count - 1;
  auto name = [&](std::uint64_t s) -> std::string {
    if (s == 0) return "0";
    if (s == full) return "1";
    std::string out;
    for (unsigned i = 0; i < n; ++i)
      if (s >> i & 1) out += static_cast<char>('a' + i);
    return out;
  };
  // Subsets ordered by cardinality, then lexicographically by bitmask.
  std::vector<std::uint64_t> subsets(count);
  for (std::uint64_t s = 0; s < count; ++s) subsets[s] = s;
  std::stable_sort(subsets.begin(), subsets.end(), [](std::uint64_t x, std::uint64_t y) {
    return __builtin_popcountll(x) < __builtin_popcountll(y);
  });

  LatticeDescription d;
  d.name = "boolean(" + std::to_string(n) + ")";
  for (auto s : subsets) d.elements.push_back(name(s));
  for (auto s : subsets) {
    for (unsigned i = 0; i < n; ++i)
      if (!(s >> i & 1)) d.leq_pairs.emplace_back(name(s), name(s | std::uint64_t{1} << i));
    d.orthocomplement[name(s)] = name(full & ~s);
  }
  return build_lattice(d, limits);
}

/// MO_n: 0, 1 and n orthocomplementary atom pairs a_i, a_i'.
inline OrthoLattice mo(unsigned n, const Limits& limits = kDefaultLimits) {
  if (n < 1) throw Error(ErrorKind::InvalidDescription, "mo(n) requires n >= 1");
  LatticeDescription d;
  d.name = "mo(" + std::to_string(n) + ")";
  d.elements.push_back("0");
  for (unsigned i = 1; i <= n; ++i) {
    const std::string a = "a" + std::to_string(i);
    d.elements.push_back(a);
    d.elements.push_back(a + "'");
  }
  d.elements.push_back("1");
  if (d.elements.size() > limits.max_elements)
    throw Error(ErrorKind::SizeCap, d.name + " exceeds element cap");
  d.orthocomplement["0"] = "1";
  d.orthocomplement["1"] = "0";
  for (unsigned i = 1; i <= n; ++i) {
    const std::string a = "a" + std::to_string(i);
    for (const auto& x : {a, a + "'"}) {
      d.leq_pairs.emplace_back("0", x);
      d.leq_pairs.emplace_back(x, "1");
    }
    d.orthocomplement[a] = a + "'";
    d.orthocomplement[a + "'"] = a;
  }
  return build_lattice(d, limits);
}

/// The hexagon O_6: 0 < a < b < 1 and 0 < b' < a' < 1.
inline OrthoLattice benzene() {
  LatticeDescription d;
  d.name = "benzene";
  d.elements = {"0", "a", "b", "b'", "a'", "1"};
  d.leq_pairs = {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "b'"}, {"b'", "a'"}, {"a'", "1"}};
  d.orthocomplement = {{"0", "1"}, {"1", "0"}, {"a", "a'"}, {"a'", "a"}, {"b", "b'"}, {"b'", "b"}};
  return build_lattice(d);
}

/// Lattice of subspaces of F_q^n (q prime) ordered by inclusion, with the
/// orthocomplement taken w.r.t. the diagonal form sum_i c_i x_i y_i. The form
/// must be anisotropic, which over a finite field restricts n to 1 or 2.
/// Subspace height equals its dimension.
inline OrthoLattice subspace_lattice(unsigned q, unsigned n, const std::vector<unsigned>& form,
                                     const Limits& limits = kDefaultLimits) {
  if (q < 2) throw Error(ErrorKind::InvalidDescription, "field order must be a prime");
  for (unsigned p = 2; p * p <= q; ++p)
    if (q % p == 0) throw Error(ErrorKind::InvalidDescription, "only prime fields are supported");
  if (n < 1) throw Error(ErrorKind::InvalidDescription, "dimension must be positive");
  if (form.size() != n) throw Error(ErrorKind::InvalidDescription, "form needs one coefficient per coordinate");
  std::uint64_t vectors = 1;
  for (unsigned i = 0; i < n; ++i) {
    vectors *= q;
    if (vectors > (std::uint64_t{1} << 16)) throw Error(ErrorKind::SizeCap, "vector space too large");
  }

  auto coords = [&](std::uint64_t v) {
    std::vector<unsigned> c(n);
    for (unsigned i = 0; i < n; ++i, v /= q) c[i] = static_cast<unsigned>(v % q);
    return c;
  };
  auto encode = [&](const std::vector<unsigned>& c) {
    std::uint64_t v = 0;
    for (unsigned i = n; i-- > 0;) v = v * q + c[i];
    return v;
  };
  auto pairing = [&](std::uint64_t v, std::uint64_t w) {
    auto a = coords(v), b = coords(w);
    std::uint64_t s = 0;
    for (unsigned i = 0; i < n; ++i) s += std::uint64_t{form[i] % q} * a[i] * b[i];
    return s % q;
  };
  auto vec_name = [&](std::uint64_t v) {
    auto c = coords(v);
    std::string s = "(";
    for (unsigned i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
  };

  for (std::uint64_t v = 1; v < vectors; ++v)
    if (pairing(v, v) == 0)
      throw Error(ErrorKind::IsotropicForm, "vector " + vec_name(v) + " is self-orthogonal over F_" +
                                                std::to_string(q));

  using Subspace = std::vector<std::uint64_t>;  // sorted member vectors
  auto span_with = [&](const Subspace& s, std::uint64_t v) {
    std::set<std::uint64_t> out(s.begin(), s.end());
    auto cv = coords(v);
    for (std::uint64_t w : s) {
      auto cw = coords(w);
      for (unsigned k = 0; k < q; ++k) {
        std::vector<unsigned> c(n);
        for (unsigned i = 0; i < n; ++i) c[i] = (cw[i] + k * cv[i]) % q;
        out.insert(encode(c));
      }
    }
    return Subspace(out.begin(), out.end());
  };

  std::set<Subspace> seen{{0}};
  std::vector<Subspace> frontier{{0}}, all{{0}};
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const auto& s : frontier)
      for (std::uint64_t v = 1; v < vectors; ++v)
        if (!std::binary_search(s.begin(), s.end(), v)) {
          auto t = span_with(s, v);
          if (seen.insert(t).second) {
            next.push_back(t);
            all.push_back(t);
            if (all.size() > limits.max_elements)
              throw Error(ErrorKind::SizeCap, "subspace lattice exceeds element cap");
          }
        }
    frontier = std::move(next);
  }

  auto name = [&](const Subspace& s) -> std::string {
    if (s.size() == 1) return "0";
    if (s.size() == vectors) return "V";
    // Basis picked greedily in lexicographic coordinate order.
    std::vector<std::uint64_t> lex = s;
    std::sort(lex.begin(), lex.end(), [&](std::uint64_t x, std::uint64_t y) { return coords(x) < coords(y); });
    Subspace basis_span{0};
    std::string out = "<";
    bool first = true;
    for (std::uint64_t v : lex) {
      if (std::binary_search(basis_span.begin(), basis_span.end(), v)) continue;
      basis_span = span_with(basis_span, v);
      out += (first ? "" : ",") + vec_name(v);
      first = false;
    }
    return out + ">";
  };
  auto orth = [&](const Subspace& s) {
    Subspace out;
    for (std::uint64_t w = 0; w < vectors; ++w)
      if (std::all_of(s.begin(), s.end(), [&](std::uint64_t v) { return pairing(v, w) == 0; }))
        out.push_back(w);
    return out;
  };

  LatticeDescription d;
  d.name = "subspace(F_" + std::to_string(q) + "^" + std::to_string(n) + ")";
  for (const auto& s : all) d.elements.push_back(name(s));
  for (const auto& s : all) {
    for (const auto& t : all)
      if (s.size() < t.size() && std::includes(t.begin(), t.end(), s.begin(), s.end()))
        d.leq_pairs.emplace_back(name(s), name(t));
    d.orthocomplement[name(s)] = name(orth(s));
  }
  return build_lattice(d, limits);
}

/// Componentwise order and orthocomplement.
inline OrthoLattice product(const OrthoLattice& a, const OrthoLattice& b,
                            const Limits& limits = kDefaultLimits) {
  if (a.size() * b.size() > limits.max_elements)
    throw Error(ErrorKind::SizeCap, "product exceeds element cap");
  LatticeDescription d;
  d.name = a.name() + "x" + b.name();
  auto name = [&](Elem x, Elem y) { return "(" + a.name_of(x) + "," + b.name_of(y) + ")"; };
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < b.size(); ++y) d.elements.push_back(name(x, y));
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < b.size(); ++y) {
      for (Elem c : a.upper_covers(x)) d.leq_pairs.emplace_back(name(x, y), name(c, y));
      for (Elem c : b.upper_covers(y)) d.leq_pairs.emplace_back(name(x, y), name(x, c));
      d.orthocomplement[name(x, y)] = name(a.ortho(x), b.ortho(y));
    }
  return build_lattice(d, limits);
}

/// Disjoint union of the non-bound elements, glued at shared 0 and 1.
/// Elements are prefixed "L." and "R.".
inline OrthoLattice horizontal_sum(const OrthoLattice& a, const OrthoLattice& b,
                                   const Limits& limits = kDefaultLimits) {
  if (a.size() < 2 || b.size() < 2)
    throw Error(ErrorKind::InvalidDescription, "horizontal sum needs lattices with 0 != 1");
  if (a.size() + b.size() - 2 > limits.max_elements)
    throw Error(ErrorKind::SizeCap, "horizontal sum exceeds element cap");
  LatticeDescription d;
  d.name = a.name() + "+" + b.name();
  d.elements.push_back("0");
  auto add_side = [&](const OrthoLattice& l, const std::string& prefix) {
    auto name = [&](Elem x) -> std::string {
      if (x == l.bottom()) return "0";
      if (x == l.top()) return "1";
      return prefix + l.name_of(x);
    };
    for (Elem x = 0; x < l.size(); ++x)
      if (x != l.bottom() && x != l.top()) d.elements.push_back(name(x));
    for (Elem x = 0; x < l.size(); ++x) {
      for (Elem c : l.upper_covers(x)) d.leq_pairs.emplace_back(name(x), name(c));
      d.orthocomplement[name(x)] = name(l.ortho(x));
    }
  };
  add_side(a, "L.");
  add_side(b, "R.");
  d.elements.push_back("1");
  return build_lattice(d, limits);
}

}  // namespace omlat
