#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "omlat/error.hpp"
#include "omlat/limits.hpp"

namespace omlat {

/// Index of an element in the canonical (description) order.
using Elem = std::uint32_t;
using ElemPair = std::pair<Elem, Elem>;
using ElemTriple = std::tuple<Elem, Elem, Elem>;

/// Result of an exhaustive scan: whether a law holds, and the first
/// counterexample in canonical order when it does not.
template <class Witness>
struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  explicit operator bool() const { return holds; }
};

/// Ingestion form of a lattice. `leq_pairs` may be any generating set of
/// the order; (x, y) reads x <= y.
struct LatticeDescription {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq_pairs;
  std::map<std::string, std::string> orthocomplement;
};

class OrthoLattice;
OrthoLattice build_lattice(const LatticeDescription& desc, const Limits& limits = kDefaultLimits);

/// Finite bounded lattice with an orthocomplementation. Immutable after
/// build_lattice; all tables are dense and indexed by Elem.
class OrthoLattice {
 public:
  using Row = boost::dynamic_bitset<>;

  const std::string& name() const { return name_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name_of(Elem a) const { return names_[a]; }

  std::optional<Elem> find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Elem at(const std::string& id) const {
    auto e = find(id);
    if (!e) throw Error(ErrorKind::InvalidDescription, "unknown element '" + id + "' in " + name_);
    return *e;
  }

  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  bool leq(Elem a, Elem b) const { return up_[a][b]; }
  bool less(Elem a, Elem b) const { return a != b && up_[a][b]; }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem ortho(Elem a) const { return ortho_[a]; }

  /// x is orthogonal to y when y <= x⊥ (a symmetric relation).
  bool orthogonal(Elem a, Elem b) const { return leq(b, ortho(a)); }

  /// Elements above (resp. below) a, including a.
  const Row& up_set(Elem a) const { return up_[a]; }
  const Row& down_set(Elem a) const { return down_[a]; }

  /// Elements covering a.
  const std::vector<Elem>& upper_covers(Elem a) const { return upper_covers_[a]; }
  const std::vector<Elem>& lower_covers(Elem a) const { return lower_covers_[a]; }

  /// Length of the longest chain from bottom to a.
  std::size_t height(Elem a) const { return height_[a]; }

  /// Join of a list of elements (bottom for the empty list).
  template <class Range>
  Elem join_all(const Range& elems) const {
    Elem acc = bottom_;
    for (Elem e : elems) acc = join(acc, e);
    return acc;
  }

  template <class Range>
  Elem meet_all(const Range& elems) const {
    Elem acc = top_;
    for (Elem e : elems) acc = meet(acc, e);
    return acc;
  }

  /// Exports back to the ingestion form using the cover relation.
  LatticeDescription describe() const {
    LatticeDescription d;
    d.name = name_;
    d.elements = names_;
    for (Elem a = 0; a < size(); ++a) {
      for (Elem b : upper_covers_[a]) d.leq_pairs.emplace_back(names_[a], names_[b]);
      d.orthocomplement[names_[a]] = names_[ortho_[a]];
    }
    return d;
  }

 private:
  friend OrthoLattice build_lattice(const LatticeDescription&, const Limits&);

  std::string name_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Elem> index_;
  std::vector<Row> up_;
  std::vector<Row> down_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  std::vector<Elem> ortho_;
  std::vector<std::vector<Elem>> upper_covers_;
  std::vector<std::vector<Elem>> lower_covers_;
  std::vector<std::size_t> height_;
  Elem bottom_ = 0;
  Elem top_ = 0;
};

namespace detail {

// Greatest element of `bounds` w.r.t. the order whose principal ideals are
// `ideal`, if it exists.
inline std::optional<Elem> greatest_in(const OrthoLattice::Row& bounds,
                                       const std::vector<OrthoLattice::Row>& ideal) {
  std::optional<Elem> best;
  std::size_t best_count = 0;
  for (auto i = bounds.find_first(); i != OrthoLattice::Row::npos; i = bounds.find_next(i)) {
    std::size_t c = ideal[i].count();
    if (!best || c > best_count) {
      best = static_cast<Elem>(i);
      best_count = c;
    }
  }
  if (best && bounds.is_subset_of(ideal[*best])) return best;
  return std::nullopt;
}

}  // namespace detail

/// Builds and validates an orthocomplemented lattice. Throws Error with
/// InvalidDescription, SizeCap, NotAPartialOrder, NotALattice or
/// BadOrthocomplement.
inline OrthoLattice build_lattice(const LatticeDescription& desc, const Limits& limits) {
  using Row = OrthoLattice::Row;
  const std::size_t n = desc.elements.size();
  if (n == 0) throw Error(ErrorKind::InvalidDescription, "lattice has no elements");
  if (n > limits.max_elements)
    throw Error(ErrorKind::SizeCap, std::to_string(n) + " elements exceeds cap of " +
                                        std::to_string(limits.max_elements));

  OrthoLattice l;
  l.name_ = desc.name;
  l.names_ = desc.elements;
  for (Elem i = 0; i < n; ++i) {
    if (!l.index_.emplace(desc.elements[i], i).second)
      throw Error(ErrorKind::InvalidDescription, "duplicate element '" + desc.elements[i] + "'");
  }
  auto lookup = [&](const std::string& id) {
    auto it = l.index_.find(id);
    if (it == l.index_.end())
      throw Error(ErrorKind::InvalidDescription, "unknown element '" + id + "'");
    return it->second;
  };

  l.up_.assign(n, Row(n));
  for (Elem i = 0; i < n; ++i) l.up_[i].set(i);
  for (const auto& [a, b] : desc.leq_pairs) l.up_[lookup(a)].set(lookup(b));
  // Warshall closure on bit rows.
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (l.up_[i][k]) l.up_[i] |= l.up_[k];

  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j)
      if (l.up_[i][j] && l.up_[j][i])
        throw Error(ErrorKind::NotAPartialOrder,
                    "cycle through '" + l.names_[i] + "' and '" + l.names_[j] + "'");

  l.down_.assign(n, Row(n));
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j)
      if (l.up_[i][j]) l.down_[j].set(i);

  std::optional<Elem> bottom, top;
  for (Elem i = 0; i < n; ++i) {
    if (l.up_[i].all()) bottom = i;
    if (l.down_[i].all()) top = i;
  }
  if (!bottom) throw Error(ErrorKind::NotALattice, "no bottom element");
  if (!top) throw Error(ErrorKind::NotALattice, "no top element");
  l.bottom_ = *bottom;
  l.top_ = *top;

  l.meet_.resize(n * n);
  l.join_.resize(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a; b < n; ++b) {
      auto m = detail::greatest_in(l.down_[a] & l.down_[b], l.down_);
      if (!m)
        throw Error(ErrorKind::NotALattice,
                    "no meet for '" + l.names_[a] + "' and '" + l.names_[b] + "'");
      auto j = detail::greatest_in(l.up_[a] & l.up_[b], l.up_);
      if (!j)
        throw Error(ErrorKind::NotALattice,
                    "no join for '" + l.names_[a] + "' and '" + l.names_[b] + "'");
      l.meet_[a * n + b] = l.meet_[b * n + a] = *m;
      l.join_[a * n + b] = l.join_[b * n + a] = *j;
    }
  }

  if (desc.orthocomplement.size() != n)
    throw Error(ErrorKind::BadOrthocomplement, "orthocomplement must be defined on every element");
  l.ortho_.assign(n, 0);
  for (const auto& [a, b] : desc.orthocomplement) l.ortho_[lookup(a)] = lookup(b);
  for (Elem a = 0; a < n; ++a) {
    const Elem c = l.ortho_[a];
    const std::string& an = l.names_[a];
    if (l.ortho_[c] != a) throw Error(ErrorKind::BadOrthocomplement, "not an involution at '" + an + "'");
    if (l.join(a, c) != l.top_ || l.meet(a, c) != l.bottom_)
      throw Error(ErrorKind::BadOrthocomplement, "not a complement at '" + an + "'");
    for (Elem b = 0; b < n; ++b)
      if (l.leq(a, b) && !l.leq(l.ortho_[b], c))
        throw Error(ErrorKind::BadOrthocomplement,
                    "not order reversing on '" + an + "' <= '" + l.names_[b] + "'");
  }

  l.upper_covers_.assign(n, {});
  l.lower_covers_.assign(n, {});
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (!l.less(a, b)) continue;
      Row between = l.up_[a] & l.down_[b];
      if (between.count() == 2) {
        l.upper_covers_[a].push_back(b);
        l.lower_covers_[b].push_back(a);
      }
    }
  }

  // Heights by increasing down-set size (a linear extension).
  std::vector<Elem> order(n);
  for (Elem i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem x, Elem y) { return l.down_[x].count() < l.down_[y].count(); });
  l.height_.assign(n, 0);
  for (Elem a : order)
    for (Elem c : l.lower_covers_[a]) l.height_[a] = std::max(l.height_[a], l.height_[c] + 1);
  return l;
}

/// Exhaustive re-verification of the ortholattice axioms.
struct OrthoReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline OrthoReport verify_ortho(const OrthoLattice& l) {
  OrthoReport r;
  const auto n = static_cast<Elem>(l.size());
  auto fail = [&](std::string what) {
    if (r.violations.size() < 16) r.violations.push_back(std::move(what));
  };
  auto nm = [&](Elem a) { return l.name_of(a); };
  for (Elem a = 0; a < n; ++a) {
    const Elem c = l.ortho(a);
    if (l.ortho(c) != a) fail("involution fails at " + nm(a));
    if (l.join(a, c) != l.top()) fail("a v a' != 1 at " + nm(a));
    if (l.meet(a, c) != l.bottom()) fail("a ^ a' != 0 at " + nm(a));
    if (!l.leq(l.bottom(), a) || !l.leq(a, l.top())) fail("bounds fail at " + nm(a));
    if (l.meet(a, a) != a || l.join(a, a) != a) fail("idempotence fails at " + nm(a));
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      const Elem m = l.meet(a, b), j = l.join(a, b);
      if (l.leq(a, b) && !l.leq(l.ortho(b), l.ortho(a))) fail("order reversal fails at " + nm(a) + "," + nm(b));
      if (l.ortho(j) != l.meet(l.ortho(a), l.ortho(b))) fail("De Morgan (join) fails at " + nm(a) + "," + nm(b));
      if (l.ortho(m) != l.join(l.ortho(a), l.ortho(b))) fail("De Morgan (meet) fails at " + nm(a) + "," + nm(b));
      if (m != l.meet(b, a) || j != l.join(b, a)) fail("commutativity fails at " + nm(a) + "," + nm(b));
      if (l.join(a, l.meet(a, b)) != a || l.meet(a, l.join(a, b)) != a)
        fail("absorption fails at " + nm(a) + "," + nm(b));
      if (!l.leq(m, a) || !l.leq(m, b) || !l.leq(a, j) || !l.leq(b, j))
        fail("meet/join not bounds at " + nm(a) + "," + nm(b));
      if ((m == a) != l.leq(a, b) || (j == b) != l.leq(a, b))
        fail("meet/join disagree with order at " + nm(a) + "," + nm(b));
    }
  }
  if (n <= 64) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c) {
          if (l.meet(a, l.meet(b, c)) != l.meet(l.meet(a, b), c))
            fail("meet associativity fails at " + nm(a) + "," + nm(b) + "," + nm(c));
          if (l.join(a, l.join(b, c)) != l.join(l.join(a, b), c))
            fail("join associativity fails at " + nm(a) + "," + nm(b) + "," + nm(c));
        }
  }
  return r;
}

/// Orthomodular law: a <= b implies a v (a' ^ b) = b. Witness is (a, b).
inline Verdict<ElemPair> is_orthomodular(const OrthoLattice& l) {
  const auto n = static_cast<Elem>(l.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (l.leq(a, b) && l.join(a, l.meet(l.ortho(a), b)) != b) return {false, ElemPair{a, b}};
  return {};
}

/// x v (y ^ z) = (x v y) ^ (x v z) for all triples. Witness is (x, y, z).
inline Verdict<ElemTriple> is_distributive(const OrthoLattice& l) {
  const auto n = static_cast<Elem>(l.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), l.join(x, z)))
          return {false, ElemTriple{x, y, z}};
  return {};
}

/// A distributive ortholattice is Boolean: the orthocomplement is then the
/// unique lattice complement.
inline bool is_boolean(const OrthoLattice& l) { return is_distributive(l).holds; }

inline std::vector<Elem> atoms(const OrthoLattice& l) { return l.upper_covers(l.bottom()); }

/// Every element equals the join of the atoms below it.
inline Verdict<Elem> is_atomistic(const OrthoLattice& l) {
  const auto at = atoms(l);
  for (Elem x = 0; x < l.size(); ++x) {
    Elem acc = l.bottom();
    for (Elem z : at)
      if (l.leq(z, x)) acc = l.join(acc, z);
    if (acc != x) return {false, x};
  }
  return {};
}

/// On a distributive lattice, an atom below a v b lies below a or below b.
/// Witness is (atom, a, b). Throws NotDistributive otherwise.
inline Verdict<ElemTriple> atom_split_check(const OrthoLattice& l) {
  if (!is_distributive(l))
    throw Error(ErrorKind::NotDistributive, "atom split check requires a distributive lattice");
  const auto n = static_cast<Elem>(l.size());
  for (Elem z : atoms(l))
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (l.leq(z, l.join(a, b)) != (l.leq(z, a) || l.leq(z, b))) return {false, ElemTriple{z, a, b}};
  return {};
}

/// Unordered orthogonal pairs {x, y} (x <= y in index order), including {0, 0}.
inline std::vector<ElemPair> orthogonal_pairs(const OrthoLattice& l) {
  std::vector<ElemPair> out;
  const auto n = static_cast<Elem>(l.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x; y < n; ++y)
      if (l.orthogonal(x, y)) out.emplace_back(x, y);
  return out;
}

}  // namespace omlat
