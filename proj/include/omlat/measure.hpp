#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "omlat/error.hpp"
#include "omlat/lattice.hpp"
#include "omlat/numeric.hpp"

namespace omlat {

/// Coefficient group for measure values: Z, Q or Z/m.
class Domain {
 public:
  enum class Kind { Integers, Rationals, Modular };

  static Domain integers() { return Domain(Kind::Integers, 0); }
  static Domain rationals() { return Domain(Kind::Rationals, 0); }
  static Domain modulo(Integer m) {
    if (m < 1) throw Error(ErrorKind::DomainMismatch, "modulus must be positive");
    return Domain(Kind::Modular, std::move(m));
  }

  Kind kind() const { return kind_; }
  const Integer& modulus() const { return modulus_; }

  std::string label() const {
    switch (kind_) {
      case Kind::Integers: return "Z";
      case Kind::Rationals: return "Q";
      case Kind::Modular: return "Z/" + modulus_.str();
    }
    return "?";
  }

  bool contains(const Rational& v) const { return kind_ == Kind::Rationals || is_integral(v); }

  /// Canonical representative (least non-negative residue for Z/m).
  Rational normalize(const Rational& v) const {
    if (kind_ != Kind::Modular) return v;
    return Rational(mod(numerator(v), modulus_));
  }

  bool equal(const Rational& a, const Rational& b) const { return normalize(a - b) == 0; }

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }

 private:
  Domain(Kind k, Integer m) : kind_(k), modulus_(std::move(m)) {}

  Kind kind_;
  Integer modulus_;
};

/// A coefficient-valued function on lattice elements, indexed by Elem.
struct Measure {
  Domain domain = Domain::rationals();
  std::vector<Rational> values;

  const Rational& operator[](Elem x) const { return values[x]; }

  friend bool operator==(const Measure& a, const Measure& b) {
    if (!(a.domain == b.domain) || a.values.size() != b.values.size()) return false;
    for (std::size_t i = 0; i < a.values.size(); ++i)
      if (!a.domain.equal(a.values[i], b.values[i])) return false;
    return true;
  }
};

inline Measure zero_measure(const OrthoLattice& l, Domain d = Domain::rationals()) {
  return {std::move(d), std::vector<Rational>(l.size(), Rational(0))};
}

inline void require_in_domain(const OrthoLattice& l, const std::vector<Rational>& values, const Domain& d) {
  if (values.size() != l.size())
    throw Error(ErrorKind::DomainMismatch, "expected " + std::to_string(l.size()) + " values, got " +
                                               std::to_string(values.size()));
  for (Elem x = 0; x < values.size(); ++x)
    if (!d.contains(values[x]))
      throw Error(ErrorKind::DomainMismatch, "value " + to_string(values[x]) + " at " + l.name_of(x) +
                                                 " is not in " + d.label());
}

/// Additivity on every orthogonal pair, including {0, 0} (which forces
/// nu(0) = 0). Witness is the first failing pair. On a finite lattice every
/// orthogonal family is finite, so this is also sigma-additivity.
inline Verdict<ElemPair> is_measure(const OrthoLattice& l, const std::vector<Rational>& values, const Domain& d) {
  require_in_domain(l, values, d);
  for (const auto& [x, y] : orthogonal_pairs(l))
    if (!d.equal(values[l.join(x, y)], values[x] + values[y])) return {false, ElemPair{x, y}};
  return {};
}

inline Verdict<ElemPair> is_measure(const OrthoLattice& l, const Measure& m) {
  return is_measure(l, m.values, m.domain);
}

/// nu(g x) = nu(x) for every listed map g. Witness is (group index, x).
template <class Perms>
Verdict<std::pair<std::size_t, Elem>> is_invariant(const Measure& m, const Perms& perms) {
  std::size_t gi = 0;
  for (const auto& g : perms) {
    for (Elem x = 0; x < m.values.size(); ++x)
      if (!m.domain.equal(m.values[g[x]], m.values[x])) return {false, std::pair{gi, x}};
    ++gi;
  }
  return {};
}

/// Every function L -> range that passes is_measure, in odometer order
/// (first element varies fastest). Bounded to 8 elements and 5 values.
inline std::vector<Measure> brute_force_measures(const OrthoLattice& l, const std::vector<Rational>& range,
                                                 const Domain& d) {
  if (l.size() > 8 || range.size() > 5)
    throw Error(ErrorKind::OracleTooLarge, "brute force limited to 8 elements and 5 values");
  for (const auto& v : range)
    if (!d.contains(v)) throw Error(ErrorKind::DomainMismatch, to_string(v) + " not in " + d.label());
  std::vector<Measure> out;
  if (range.empty()) return out;
  const auto pairs = orthogonal_pairs(l);
  std::vector<std::size_t> digit(l.size(), 0);
  std::vector<Rational> values(l.size(), range[0]);
  for (;;) {
    bool ok = true;
    for (const auto& [x, y] : pairs)
      if (!d.equal(values[l.join(x, y)], values[x] + values[y])) {
        ok = false;
        break;
      }
    if (ok) out.push_back({d, values});
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == range.size()) {
      digit[i] = 0;
      values[i] = range[0];
      ++i;
    }
    if (i == digit.size()) break;
    values[i] = range[digit[i]];
  }
  return out;
}

}  // namespace omlat
