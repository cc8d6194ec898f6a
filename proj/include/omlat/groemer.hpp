#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omlat/error.hpp"
#include "omlat/lattice.hpp"
#include "omlat/measure.hpp"
#include "omlat/measure_module.hpp"
#include "omlat/numeric.hpp"
#include "omlat/smith.hpp"
#include "omlat/symmetry.hpp"

// Generating sets and the two extension theorems: the classical one on
// distributive lattices, via inclusion-exclusion, and the orthogonal one for
// invariant measures, via the coinvariant module M_G.
//
// 0 is the join of the empty family, so it never has to be listed in B, and
// meet-closure of B is read as "a ^ b lies in B or is 0".

namespace omlat {

struct GeneratingSet {
  std::vector<Elem> members;  // sorted, distinct
  bool meet_closed = false;

  bool contains(Elem x) const { return std::binary_search(members.begin(), members.end(), x); }
};

/// Validates B and checks meet-closure. Throws MeetClosureError naming the
/// offending pair.
inline GeneratingSet generating_set(const OrthoLattice& l, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (Elem b : members)
    if (b >= l.size()) throw Error(ErrorKind::InvalidDescription, "element index out of range");
  GeneratingSet out{std::move(members), true};
  for (std::size_t i = 0; i < out.members.size(); ++i)
    for (std::size_t j = i + 1; j < out.members.size(); ++j) {
      const Elem a = out.members[i], b = out.members[j];
      const Elem m = l.meet(a, b);
      if (m != l.bottom() && !out.contains(m))
        throw Error(ErrorKind::MeetClosureError,
                    l.name_of(a) + " ^ " + l.name_of(b) + " = " + l.name_of(m) + " is not in B",
                    {l.name_of(a), l.name_of(b)});
    }
  return out;
}

/// Values on (part of) B. Elements without an entry are unknown, except 0,
/// which defaults to 0.
struct PartialMeasure {
  Domain domain = Domain::rationals();
  std::map<Elem, Rational> values;

  std::optional<Rational> get(const OrthoLattice& l, Elem x) const {
    if (auto it = values.find(x); it != values.end()) return it->second;
    if (x == l.bottom()) return Rational(0);
    return std::nullopt;
  }
};

inline PartialMeasure restrict_to(const Measure& m, const std::vector<Elem>& b) {
  PartialMeasure p{m.domain, {}};
  for (Elem x : b) p.values[x] = m[x];
  return p;
}

namespace detail {

/// Smallest family (then first in index order) of nonzero members below x,
/// pairwise orthogonal when asked, whose join is x.
inline std::optional<std::vector<Elem>> find_decomposition(const OrthoLattice& l, const std::vector<Elem>& members,
                                                           Elem x, bool orthogonal, std::size_t max_size) {
  if (x == l.bottom()) return std::vector<Elem>{};
  std::vector<Elem> cand;
  for (Elem b : members)
    if (b != l.bottom() && l.leq(b, x)) cand.push_back(b);
  if (l.join_all(cand) != x) return std::nullopt;
  std::vector<Elem> chosen;
  std::function<bool(std::size_t, std::size_t, Elem)> dfs = [&](std::size_t start, std::size_t left, Elem acc) {
    if (left == 0) return acc == x;
    for (std::size_t i = start; i + left <= cand.size(); ++i) {
      const Elem b = cand[i];
      if (l.leq(b, acc)) continue;
      // b is orthogonal to every chosen member iff b <= acc'.
      if (orthogonal && !l.orthogonal(acc, b)) continue;
      chosen.push_back(b);
      if (dfs(i + 1, left - 1, l.join(acc, b))) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (std::size_t k = 1; k <= std::min(max_size, cand.size()); ++k)
    if (dfs(0, k, l.bottom())) return chosen;
  return std::nullopt;
}

inline std::vector<std::string> names(const OrthoLattice& l, const std::vector<Elem>& xs) {
  std::vector<std::string> out;
  for (Elem x : xs) out.push_back(l.name_of(x));
  return out;
}

inline Rational value_of(const OrthoLattice& l, const PartialMeasure& nu, Elem x) {
  if (auto v = nu.get(l, x)) return *v;
  throw Error(ErrorKind::DomainMismatch, "no value given for " + l.name_of(x), {l.name_of(x)});
}

/// sum over nonempty S of (-1)^(|S|+1) nu(^S).
inline Rational inclusion_exclusion(const OrthoLattice& l, const PartialMeasure& nu, const std::vector<Elem>& family) {
  if (family.size() > 20) throw Error(ErrorKind::SizeCap, "inclusion-exclusion over more than 20 members");
  Rational s = 0;
  const std::size_t n = family.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Elem m = l.top();
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        m = l.meet(m, family[i]);
        ++bits;
      }
    const Rational v = value_of(l, nu, m);
    s += bits % 2 ? v : Rational(-v);
  }
  return s;
}

inline void require_distributive(const OrthoLattice& l) {
  if (auto v = is_distributive(l); !v.holds) {
    const auto [a, b, c] = *v.witness;
    throw Error(ErrorKind::NotDistributive, l.name() + " is not distributive", names(l, {a, b, c}));
  }
}

inline void require_values_on(const OrthoLattice& l, const GeneratingSet& b, const PartialMeasure& nu) {
  for (Elem x : b.members) {
    const Rational v = value_of(l, nu, x);
    if (!nu.domain.contains(v))
      throw Error(ErrorKind::DomainMismatch, to_string(v) + " at " + l.name_of(x) + " is not in " + nu.domain.label());
  }
}

}  // namespace detail

/// A family of pairwise orthogonal members with join x, smallest first.
inline std::optional<std::vector<Elem>> orthogonal_decomposition(const OrthoLattice& l, const std::vector<Elem>& members,
                                                                 Elem x, std::size_t max_size = 8) {
  return detail::find_decomposition(l, members, x, true, max_size);
}

/// Whether every element is a join of pairwise orthogonal members of B.
/// Witness is the first inexpressible element.
inline Verdict<Elem> is_orthogonal_generating_set(const OrthoLattice& l, const std::vector<Elem>& b) {
  const auto gs = generating_set(l, b);
  for (Elem x = 0; x < l.size(); ++x)
    if (!orthogonal_decomposition(l, gs.members, x)) return {false, x};
  return {};
}

struct ActionGeneratingReport {
  bool injective = true;   // B/N_G(B) -> L/G
  bool generating = true;  // G.B is an orthogonal generating set
  std::optional<Elem> inexpressible;

  bool holds() const { return injective && generating; }
};

/// B must be meet-closed; G.B need not be.
inline ActionGeneratingReport is_generating_for_action(const OrthoLattice& l, const GroupAction& action,
                                                       const std::vector<Elem>& b) {
  const auto gs = generating_set(l, b);
  ActionGeneratingReport r;
  r.injective = quotient_map_injective(action, gs.members);
  const auto gb = saturate(action, gs.members);
  for (Elem x = 0; x < l.size(); ++x)
    if (!orthogonal_decomposition(l, gb, x)) {
      r.generating = false;
      r.inexpressible = x;
      break;
    }
  return r;
}

/// nu(b1 v ... v bk) against the inclusion-exclusion sum for every family
/// of 2..k_max distinct members whose join lies in B. Witness is the family.
inline Verdict<std::vector<Elem>> inclusion_exclusion_check(const OrthoLattice& l, const std::vector<Elem>& b,
                                                            const PartialMeasure& nu, std::size_t k_max = 4) {
  detail::require_distributive(l);
  const auto gs = generating_set(l, b);
  const auto& m = gs.members;
  std::vector<Elem> family;
  std::optional<std::vector<Elem>> bad;
  std::function<void(std::size_t)> walk = [&](std::size_t start) {
    if (bad) return;
    if (family.size() >= 2) {
      const Elem j = l.join_all(family);
      if (gs.contains(j) || j == l.bottom()) {
        if (!nu.domain.equal(detail::value_of(l, nu, j), detail::inclusion_exclusion(l, nu, family))) {
          bad = family;
          return;
        }
      }
    }
    if (family.size() == k_max) return;
    for (std::size_t i = start; i < m.size() && !bad; ++i) {
      if (m[i] == l.bottom()) continue;
      family.push_back(m[i]);
      walk(i + 1);
      family.pop_back();
    }
  };
  walk(0);
  if (bad) return {false, *bad};
  return {};
}

/// The unique measure on a distributive lattice extending nu from a
/// generating set B (every element a join of members). Values come from
/// inclusion-exclusion over the maximal members below x and are checked
/// against the smallest decomposition. Throws NotDistributive,
/// NotGenerating or Inconsistent (with the failing family).
inline Measure classical_groemer_extend(const OrthoLattice& l, const std::vector<Elem>& b, const PartialMeasure& nu) {
  detail::require_distributive(l);
  const auto gs = generating_set(l, b);
  detail::require_values_on(l, gs, nu);
  if (auto ie = inclusion_exclusion_check(l, gs.members, nu, std::min<std::size_t>(gs.members.size(), 4)); !ie.holds)
    throw Error(ErrorKind::Inconsistent, "inclusion-exclusion fails", detail::names(l, *ie.witness));

  Measure out{nu.domain, std::vector<Rational>(l.size(), Rational(0))};
  for (Elem x = 0; x < l.size(); ++x) {
    std::vector<Elem> maximal;
    for (Elem c : gs.members) {
      if (c == l.bottom() || !l.leq(c, x)) continue;
      bool dominated = std::any_of(gs.members.begin(), gs.members.end(),
                                   [&](Elem d) { return l.less(c, d) && l.leq(d, x); });
      if (!dominated) maximal.push_back(c);
    }
    if (l.join_all(maximal) != x)
      throw Error(ErrorKind::NotGenerating, l.name_of(x) + " is not a join of members of B", {l.name_of(x)});
    out.values[x] = nu.domain.normalize(detail::inclusion_exclusion(l, nu, maximal));
    if (auto small = detail::find_decomposition(l, gs.members, x, false, 8)) {
      if (!nu.domain.equal(detail::inclusion_exclusion(l, nu, *small), out.values[x]))
        throw Error(ErrorKind::Inconsistent, "two decompositions of " + l.name_of(x) + " disagree",
                    detail::names(l, *small));
    }
  }
  if (auto v = is_measure(l, out); !v.holds)
    throw Error(ErrorKind::Inconsistent, "extension is not additive",
                detail::names(l, {v.witness->first, v.witness->second}));
  return out;
}

/// The unique G-invariant measure restricting to nu on B, where B generates
/// for the action. nu may be given on N_G(B)-orbit representatives only.
///
/// Writes b_1..b_k for the orbit representatives and t_1..t_s for the
/// torsion of M_G. The rows pi_G(b_i) and t_j e_j span the relations of the
/// surjection Z^k -> M_G; nu extends iff it kills the first k coordinates of
/// every left-kernel vector, and then nu'(x) = sum y_i nu(b_i) for any
/// integer solution y of pi_G(x) = sum y_i pi_G(b_i).
///
/// Throws NotGeneratingForAction, NotInvariantOnB or KernelViolation.
inline Measure orth_groemer_extend(const OrthoLattice& l, const GroupAction& action, const std::vector<Elem>& b,
                                   const PartialMeasure& nu) {
  const auto gs = generating_set(l, b);
  if (auto r = is_generating_for_action(l, action, gs.members); !r.holds()) {
    if (!r.injective)
      throw Error(ErrorKind::NotGeneratingForAction, "B/N_G(B) -> L/G is not injective");
    throw Error(ErrorKind::NotGeneratingForAction, l.name_of(*r.inexpressible) + " is not an orthogonal join in G.B",
                {l.name_of(*r.inexpressible)});
  }

  // Spread the given values over N_G(B)-orbits.
  const auto n = normalizer(action, gs.members);
  const auto orbs = orbits(n, gs.members);
  PartialMeasure full{nu.domain, {}};
  for (const auto& o : orbs) {
    std::optional<Elem> source;
    for (Elem m : o.members) {
      auto v = nu.get(l, m);
      if (!v) continue;
      if (!nu.domain.contains(*v))
        throw Error(ErrorKind::DomainMismatch, to_string(*v) + " at " + l.name_of(m) + " is not in " + nu.domain.label());
      if (source && !nu.domain.equal(*v, full.values[*source]))
        throw Error(ErrorKind::NotInvariantOnB, "values differ on one N_G(B)-orbit",
                    {l.name_of(*source), l.name_of(m)});
      if (!source) {
        source = m;
        full.values[m] = nu.domain.normalize(*v);
      }
    }
    if (!source)
      throw Error(ErrorKind::DomainMismatch, "no value given on the orbit of " + l.name_of(o.representative),
                  {l.name_of(o.representative)});
    for (Elem m : o.members) full.values[m] = full.values[*source];
  }

  for (Elem b1 : gs.members)
    for (Elem b2 : gs.members) {
      if (b2 < b1 || !l.orthogonal(b1, b2)) continue;
      const Elem j = l.join(b1, b2);
      if (!gs.contains(j)) continue;
      if (!nu.domain.equal(full.values[j], full.values[b1] + full.values[b2]))
        throw Error(ErrorKind::KernelViolation, "nu is not additive on an orthogonal pair in B",
                    {l.name_of(b1), l.name_of(b2)});
    }

  const auto module = coinvariants(l, action);
  const std::size_t t = module.torsion().size(), r = module.rank(), k = orbs.size();
  auto coords = [&](Elem x) {
    const auto& e = module.projection[x];
    std::vector<Integer> c = e.torsion;
    c.insert(c.end(), e.free.begin(), e.free.end());
    return c;
  };
  std::vector<Rational> rep_value;
  for (const auto& o : orbs) rep_value.push_back(full.values[o.representative]);

  Measure out{nu.domain, std::vector<Rational>(l.size(), Rational(0))};
  if (t + r > 0) {
    IntMatrix a;
    for (const auto& o : orbs) a.append_row(coords(o.representative));
    for (std::size_t j = 0; j < t; ++j) {
      std::vector<Integer> row(t + r, Integer(0));
      row[j] = module.torsion()[j];
      a.append_row(row);
    }
    const auto snf = smith_normal_form(a);
    auto apply = [&](const std::vector<Integer>& y) {
      Rational s = 0;
      for (std::size_t i = 0; i < k; ++i) s += Rational(y[i]) * rep_value[i];
      return nu.domain.normalize(s);
    };
    for (const auto& y : left_kernel(snf)) {
      if (apply(y) == 0) continue;
      std::vector<std::string> involved;
      for (std::size_t i = 0; i < k; ++i)
        if (y[i] != 0) involved.push_back(l.name_of(orbs[i].representative));
      throw Error(ErrorKind::KernelViolation, "nu does not vanish on a relation among the B-classes in M_G", involved);
    }
    for (Elem x = 0; x < l.size(); ++x) {
      auto y = solve_left_integer(snf, coords(x));
      if (!y) throw Error(ErrorKind::NotGeneratingForAction, l.name_of(x) + " is outside the span of B in M_G");
      out.values[x] = apply(*y);
    }
  } else {
    for (Elem m : gs.members)
      if (!nu.domain.equal(full.values[m], 0))
        throw Error(ErrorKind::KernelViolation, "M_G is trivial but nu is not zero", {l.name_of(m)});
  }

  for (Elem m : gs.members)
    if (!nu.domain.equal(out.values[m], full.values[m]))
      throw Error(ErrorKind::KernelViolation, "extension does not restrict to nu", {l.name_of(m)});
  if (auto v = is_measure(l, out); !v.holds)
    throw Error(ErrorKind::Inconsistent, "extension is not additive",
                detail::names(l, {v.witness->first, v.witness->second}));
  if (auto v = is_invariant(out, action.elements()); !v.holds)
    throw Error(ErrorKind::Inconsistent, "extension is not invariant", {l.name_of(v.witness->second)});
  return out;
}

struct WeakGroemerReport {
  std::optional<std::string> precondition_violation;
  bool invariant_on_b = true;
  bool additive_on_b = true;
  std::vector<Elem> witness;

  bool holds() const { return !precondition_violation && invariant_on_b && additive_on_b; }
};

/// For a G-invariant measure and G.B orthogonal generating: the restriction
/// to B is N_G(B)-invariant and additive on orthogonal pairs with join in B.
/// Broken preconditions are reported rather than thrown.
inline WeakGroemerReport weak_groemer_check(const OrthoLattice& l, const GroupAction& action,
                                            const std::vector<Elem>& b, const Measure& nu) {
  WeakGroemerReport r;
  if (auto v = is_measure(l, nu); !v.holds) {
    r.precondition_violation = "not a measure";
    r.witness = {v.witness->first, v.witness->second};
    return r;
  }
  if (auto v = is_invariant(nu, action.elements()); !v.holds) {
    r.precondition_violation = "measure is not G-invariant";
    r.witness = {v.witness->second};
    return r;
  }
  std::vector<Elem> members = b;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const auto gb = saturate(action, members);
  for (Elem x = 0; x < l.size(); ++x)
    if (!orthogonal_decomposition(l, gb, x)) {
      r.precondition_violation = "G.B is not an orthogonal generating set";
      r.witness = {x};
      return r;
    }
  const auto n = normalizer(action, members);
  for (const auto& g : n.elements())
    for (Elem m : members)
      if (!nu.domain.equal(nu[g[m]], nu[m])) {
        r.invariant_on_b = false;
        r.witness = {m, g[m]};
        return r;
      }
  for (Elem b1 : members)
    for (Elem b2 : members) {
      if (b2 < b1 || !l.orthogonal(b1, b2)) continue;
      const Elem j = l.join(b1, b2);
      if (!std::binary_search(members.begin(), members.end(), j)) continue;
      if (!nu.domain.equal(nu[j], nu[b1] + nu[b2])) {
        r.additive_on_b = false;
        r.witness = {b1, b2};
        return r;
      }
    }
  return r;
}

}  // namespace omlat
