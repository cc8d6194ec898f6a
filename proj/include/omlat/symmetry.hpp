#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "omlat/error.hpp"
#include "omlat/lattice.hpp"
#include "omlat/limits.hpp"

namespace omlat {

/// A bijective element map, stored as images in canonical order.
using Permutation = std::vector<Elem>;

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (Elem i = 0; i < n; ++i) p[i] = i;
  return p;
}

/// (f * g)(x) = f(g(x)).
inline Permutation compose(const Permutation& f, const Permutation& g) {
  Permutation out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

inline Permutation inverse(const Permutation& f) {
  Permutation out(f.size());
  for (Elem i = 0; i < f.size(); ++i) out[f[i]] = i;
  return out;
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Elem e : p) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

/// Checks the lattice-automorphism axioms. On failure returns a message
/// naming the violated axiom and a witness.
inline std::optional<std::string> automorphism_violation(const OrthoLattice& l, const Permutation& f) {
  const auto n = static_cast<Elem>(l.size());
  if (f.size() != n) return "map has " + std::to_string(f.size()) + " entries, lattice has " + std::to_string(n);
  std::vector<bool> hit(n, false);
  for (Elem x = 0; x < n; ++x) {
    if (f[x] >= n) return "image out of range at " + l.name_of(x);
    if (hit[f[x]]) return "not injective: " + l.name_of(f[x]) + " hit twice";
    hit[f[x]] = true;
  }
  if (f[l.bottom()] != l.bottom()) return std::string("does not fix 0");
  if (f[l.top()] != l.top()) return std::string("does not fix 1");
  for (Elem x = 0; x < n; ++x) {
    if (f[l.ortho(x)] != l.ortho(f[x])) return "does not preserve orthocomplement at " + l.name_of(x);
    for (Elem y = 0; y < n; ++y) {
      if (l.leq(x, y) != l.leq(f[x], f[y]))
        return "does not preserve order at (" + l.name_of(x) + ", " + l.name_of(y) + ")";
      if (f[l.join(x, y)] != l.join(f[x], f[y]))
        return "does not preserve join at (" + l.name_of(x) + ", " + l.name_of(y) + ")";
      if (f[l.meet(x, y)] != l.meet(f[x], f[y]))
        return "does not preserve meet at (" + l.name_of(x) + ", " + l.name_of(y) + ")";
    }
  }
  return std::nullopt;
}

namespace detail {

// Backtracking search for order- and orthocomplement-preserving bijections
// a -> b. Elements of `a` are assigned atoms first, then by height;
// candidate images are filtered by local invariants. `visit` returns false
// to stop the search.
class MorphismSearch {
 public:
  MorphismSearch(const OrthoLattice& a, const OrthoLattice& b) : a_(a), b_(b) {}

  void run(const std::function<bool(const Permutation&)>& visit) {
    const auto n = static_cast<Elem>(a_.size());
    if (b_.size() != n) return;
    order_.clear();
    for (Elem x = 0; x < n; ++x) order_.push_back(x);
    auto key = [&](const OrthoLattice& l, Elem x) {
      const bool atom = l.lower_covers(x).size() == 1 && l.lower_covers(x)[0] == l.bottom();
      return std::tuple(atom ? 0 : 1, l.height(x), l.upper_covers(x).size() + l.lower_covers(x).size());
    };
    std::stable_sort(order_.begin(), order_.end(), [&](Elem x, Elem y) { return key(a_, x) < key(a_, y); });
    image_.assign(n, kUnset);
    used_.assign(n, false);
    visit_ = &visit;
    stop_ = false;
    recurse(0);
  }

 private:
  static constexpr Elem kUnset = static_cast<Elem>(-1);

  bool compatible(Elem x, Elem y) const {
    return a_.height(x) == b_.height(y) && a_.up_set(x).count() == b_.up_set(y).count() &&
           a_.down_set(x).count() == b_.down_set(y).count() &&
           a_.upper_covers(x).size() == b_.upper_covers(y).size() &&
           a_.lower_covers(x).size() == b_.lower_covers(y).size();
  }

  bool consistent(Elem x, Elem y) const {
    for (Elem z = 0; z < a_.size(); ++z) {
      if (image_[z] == kUnset) continue;
      if (a_.leq(x, z) != b_.leq(y, image_[z]) || a_.leq(z, x) != b_.leq(image_[z], y)) return false;
    }
    return true;
  }

  bool assign(Elem x, Elem y) {
    if (used_[y] || !compatible(x, y) || !consistent(x, y)) return false;
    image_[x] = y;
    used_[y] = true;
    return true;
  }

  void unassign(Elem x) {
    used_[image_[x]] = false;
    image_[x] = kUnset;
  }

  void recurse(std::size_t pos) {
    if (stop_) return;
    while (pos < order_.size() && image_[order_[pos]] != kUnset) ++pos;
    if (pos == order_.size()) {
      if (!(*visit_)(image_)) stop_ = true;
      return;
    }
    const Elem x = order_[pos];
    const Elem xc = a_.ortho(x);
    for (Elem y = 0; y < b_.size() && !stop_; ++y) {
      if (!assign(x, y)) continue;
      if (xc == x) {
        if (b_.ortho(y) == y) recurse(pos + 1);
      } else if (image_[xc] == kUnset) {
        if (assign(xc, b_.ortho(y))) {
          recurse(pos + 1);
          unassign(xc);
        }
      } else if (image_[xc] == b_.ortho(y)) {
        recurse(pos + 1);
      }
      unassign(x);
    }
  }

  const OrthoLattice& a_;
  const OrthoLattice& b_;
  std::vector<Elem> order_;
  Permutation image_;
  std::vector<bool> used_;
  const std::function<bool(const Permutation&)>* visit_ = nullptr;
  bool stop_ = false;
};

}  // namespace detail

/// An ortholattice isomorphism a -> b, if one exists.
inline std::optional<Permutation> find_isomorphism(const OrthoLattice& a, const OrthoLattice& b) {
  std::optional<Permutation> found;
  detail::MorphismSearch(a, b).run([&](const Permutation& p) {
    found = p;
    return false;
  });
  return found;
}

inline bool isomorphic(const OrthoLattice& a, const OrthoLattice& b) { return find_isomorphism(a, b).has_value(); }

/// A finite group acting on a lattice, stored by full enumeration. The
/// identity is always elements()[0].
class GroupAction {
 public:
  GroupAction() = default;

  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }

  bool contains(const Permutation& p) const { return lookup_.count(p) > 0; }

  /// Closes `gens` under composition. The caller guarantees each generator
  /// is a permutation of [0, degree).
  static GroupAction closure(std::size_t degree, std::vector<Permutation> gens, std::size_t max_order) {
    GroupAction g;
    g.degree_ = degree;
    g.generators_ = std::move(gens);
    auto id = identity_permutation(degree);
    g.lookup_.insert(id);
    g.elements_.push_back(id);
    for (std::size_t i = 0; i < g.elements_.size(); ++i) {
      for (const auto& s : g.generators_) {
        auto p = compose(s, g.elements_[i]);
        if (g.lookup_.insert(p).second) {
          g.elements_.push_back(std::move(p));
          if (g.elements_.size() > max_order)
            throw Error(ErrorKind::GroupTooLarge, "group closure exceeds " + std::to_string(max_order) + " elements");
        }
      }
    }
    return g;
  }

  /// Wraps an element list already known to be a group; generators are
  /// chosen greedily in list order.
  static GroupAction from_elements(std::size_t degree, std::vector<Permutation> elems) {
    GroupAction g;
    g.degree_ = degree;
    auto id = identity_permutation(degree);
    std::stable_partition(elems.begin(), elems.end(), [&](const Permutation& p) { return p == id; });
    g.elements_ = std::move(elems);
    g.lookup_.insert(g.elements_.begin(), g.elements_.end());
    GroupAction sub = closure(degree, {}, g.elements_.size());
    for (const auto& p : g.elements_) {
      if (sub.contains(p)) continue;
      g.generators_.push_back(p);
      sub = closure(degree, g.generators_, g.elements_.size());
      if (sub.order() == g.order()) break;
    }
    return g;
  }

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_set<Permutation, PermutationHash> lookup_;
};

/// Validates each generator and closes the group. Throws NotAnAutomorphism
/// or GroupTooLarge.
inline GroupAction close_group(const OrthoLattice& l, std::vector<Permutation> generators,
                               const Limits& limits = kDefaultLimits) {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (auto why = automorphism_violation(l, generators[i]))
      throw Error(ErrorKind::NotAnAutomorphism, "generator " + std::to_string(i) + ": " + *why);
  return GroupAction::closure(l.size(), std::move(generators), limits.max_group);
}

inline GroupAction trivial_group(const OrthoLattice& l) { return GroupAction::closure(l.size(), {}, 1); }

/// The full group of orthocomplement-preserving lattice automorphisms.
inline GroupAction automorphism_group(const OrthoLattice& l, const Limits& limits = kDefaultLimits) {
  std::vector<Permutation> found;
  detail::MorphismSearch(l, l).run([&](const Permutation& p) {
    found.push_back(p);
    if (found.size() > limits.max_group)
      throw Error(ErrorKind::GroupTooLarge, "automorphism group exceeds " + std::to_string(limits.max_group));
    return true;
  });
  return GroupAction::from_elements(l.size(), std::move(found));
}

struct Orbit {
  Elem representative = 0;
  std::vector<Elem> members;  // sorted
};

/// G-orbits of the elements of `subset`, each reported once, ordered by
/// representative (the least member).
inline std::vector<Orbit> orbits(const GroupAction& g, const std::vector<Elem>& subset) {
  std::vector<Orbit> out;
  std::set<Elem> covered;
  std::vector<Elem> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  for (Elem x : sorted) {
    if (covered.count(x)) continue;
    std::set<Elem> members;
    for (const auto& p : g.elements()) members.insert(p[x]);
    covered.insert(members.begin(), members.end());
    out.push_back({*members.begin(), {members.begin(), members.end()}});
  }
  std::sort(out.begin(), out.end(), [](const Orbit& a, const Orbit& b) { return a.representative < b.representative; });
  return out;
}

inline std::vector<Orbit> orbits(const GroupAction& g) {
  std::vector<Elem> all(g.degree());
  for (Elem i = 0; i < all.size(); ++i) all[i] = i;
  return orbits(g, all);
}

/// Index of the orbit containing each element (for orbits over all elements).
inline std::vector<std::size_t> orbit_index(const GroupAction& g) {
  std::vector<std::size_t> idx(g.degree(), 0);
  auto orbs = orbits(g);
  for (std::size_t i = 0; i < orbs.size(); ++i)
    for (Elem m : orbs[i].members) idx[m] = i;
  return idx;
}

inline std::vector<Permutation> stabilizer(const GroupAction& g, Elem x) {
  std::vector<Permutation> out;
  for (const auto& p : g.elements())
    if (p[x] == x) out.push_back(p);
  return out;
}

/// N_G(B) = { g : g(B) = B }.
inline GroupAction normalizer(const GroupAction& g, const std::vector<Elem>& b) {
  std::set<Elem> set_b(b.begin(), b.end());
  std::vector<Permutation> keep;
  for (const auto& p : g.elements()) {
    bool stable = std::all_of(set_b.begin(), set_b.end(), [&](Elem x) { return set_b.count(p[x]) > 0; });
    if (stable) keep.push_back(p);
  }
  return GroupAction::from_elements(g.degree(), std::move(keep));
}

/// Image of B under every group element.
inline std::vector<Elem> saturate(const GroupAction& g, const std::vector<Elem>& b) {
  std::set<Elem> out;
  for (const auto& p : g.elements())
    for (Elem x : b) out.insert(p[x]);
  return {out.begin(), out.end()};
}

/// Whether the induced map B/N_G(B) -> L/G is injective.
inline bool quotient_map_injective(const GroupAction& g, const std::vector<Elem>& b) {
  auto n = normalizer(g, b);
  auto g_index = orbit_index(g);
  std::set<std::size_t> images;
  for (const auto& o : orbits(n, b))
    if (!images.insert(g_index[o.representative]).second) return false;
  return true;
}

}  // namespace omlat
