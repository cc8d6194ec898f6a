#pragma once

#include <string>
#include <vector>

#include "omlat/error.hpp"
#include "omlat/lattice.hpp"
#include "omlat/measure.hpp"
#include "omlat/numeric.hpp"
#include "omlat/symmetry.hpp"

// Indicator functions on a finite Boolean atomistic lattice. At finite
// scale the simple functions are all functions on the atoms, and the
// indicators of atoms form a basis, so a linear functional is a weight per
// atom.

namespace omlat {

/// A rational function on the atoms, stored in atom order.
struct SimpleFunction {
  std::vector<Elem> atoms;
  std::vector<Rational> values;

  friend SimpleFunction operator+(SimpleFunction a, const SimpleFunction& b) {
    for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
    return a;
  }
  friend SimpleFunction operator*(SimpleFunction a, const SimpleFunction& b) {
    for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] *= b.values[i];
    return a;
  }
  friend bool operator==(const SimpleFunction&, const SimpleFunction&) = default;
};

/// Evaluation against per-atom weights.
struct LinearFunctional {
  std::vector<Elem> atoms;
  std::vector<Rational> weights;

  Rational operator()(const SimpleFunction& f) const { return dot(weights, f.values); }
  friend bool operator==(const LinearFunctional&, const LinearFunctional&) = default;

 private:
  static Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }
};

inline void require_boolean_atomistic(const OrthoLattice& l) {
  if (!is_boolean(l) || !is_atomistic(l).holds)
    throw Error(ErrorKind::NotBooleanAtomistic, l.name() + " is not a Boolean atomistic lattice");
}

inline SimpleFunction constant_function(const OrthoLattice& l, const Rational& c) {
  auto at = atoms(l);
  return {at, std::vector<Rational>(at.size(), c)};
}

/// I_x(z) = 1 if z <= x, else 0.
inline SimpleFunction indicator(const OrthoLattice& l, Elem x) {
  require_boolean_atomistic(l);
  SimpleFunction f{atoms(l), {}};
  for (Elem z : f.atoms) f.values.emplace_back(l.leq(z, x) ? 1 : 0);
  return f;
}

struct IdentityWitness {
  std::string identity;
  std::vector<Elem> elements;
};

/// Exhaustively checks I_x I_y = I_{x^y}, I_{xvy} + I_{x^y} = I_x + I_y for
/// all pairs, and I_{x1v...vxn} = 1 - (1 - I_x1)...(1 - I_xn) for all
/// subsets of size <= 3.
inline Verdict<IdentityWitness> check_indicator_identities(const OrthoLattice& l) {
  require_boolean_atomistic(l);
  const auto n = static_cast<Elem>(l.size());
  std::vector<SimpleFunction> ind;
  for (Elem x = 0; x < n; ++x) ind.push_back(indicator(l, x));
  const auto one = constant_function(l, 1);
  auto complement = [&](const SimpleFunction& f) {
    SimpleFunction g = f;
    for (auto& v : g.values) v = 1 - v;
    return g;
  };
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (ind[x] * ind[y] != ind[l.meet(x, y)]) return {false, IdentityWitness{"product", {x, y}}};
      if (ind[l.join(x, y)] + ind[l.meet(x, y)] != ind[x] + ind[y])
        return {false, IdentityWitness{"modular", {x, y}}};
    }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x; y < n; ++y)
      for (Elem z = y; z < n; ++z) {
        std::vector<std::vector<Elem>> subsets{{x}, {x, y}, {x, y, z}};
        for (const auto& s : subsets) {
          SimpleFunction prod = one;
          for (Elem e : s) prod = prod * complement(ind[e]);
          if (ind[l.join_all(s)] != complement(prod)) return {false, IdentityWitness{"join-product", s}};
        }
      }
  return {};
}

/// The functional with nu~(I_x) = nu(x): weights are the atom values.
inline LinearFunctional functional_from_measure(const OrthoLattice& l, const Measure& nu) {
  require_boolean_atomistic(l);
  if (auto v = is_measure(l, nu); !v.holds)
    throw Error(ErrorKind::NotAMeasure, "additivity fails on {" + l.name_of(v.witness->first) + ", " +
                                            l.name_of(v.witness->second) + "}");
  LinearFunctional f{atoms(l), {}};
  for (Elem z : f.atoms) f.weights.push_back(nu[z]);
  return f;
}

/// nu(x) = nu~(I_x).
inline Measure measure_from_functional(const OrthoLattice& l, const LinearFunctional& f,
                                       const Domain& domain = Domain::rationals()) {
  require_boolean_atomistic(l);
  Measure nu{domain, {}};
  for (Elem x = 0; x < l.size(); ++x) nu.values.push_back(domain.normalize(f(indicator(l, x))));
  return nu;
}

/// (g . f)(z) = f(g^-1 z); on indicators g . I_x = I_{g x}.
inline SimpleFunction act(const Permutation& g, const SimpleFunction& f) {
  const auto inv = inverse(g);
  SimpleFunction out = f;
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    const Elem pre = inv[f.atoms[i]];
    for (std::size_t j = 0; j < f.atoms.size(); ++j)
      if (f.atoms[j] == pre) out.values[i] = f.values[j];
  }
  return out;
}

struct InvarianceCheck {
  bool measure_invariant = true;
  bool functional_invariant = true;
  bool agree() const { return measure_invariant == functional_invariant; }
};

/// Computes both sides of "nu~ invariant iff nu invariant" directly: nu on
/// lattice elements, nu~ on the translated indicators.
inline InvarianceCheck invariant_functional_check(const OrthoLattice& l, const GroupAction& action,
                                                  const Measure& nu) {
  const auto f = functional_from_measure(l, nu);
  InvarianceCheck out;
  out.measure_invariant = is_invariant(nu, action.elements()).holds;
  for (const auto& g : action.elements())
    for (Elem x = 0; x < l.size(); ++x) {
      auto ix = indicator(l, x);
      if (f(act(g, ix)) != f(ix)) out.functional_invariant = false;
    }
  return out;
}

}  // namespace omlat
