#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "omlat/lattice.hpp"
#include "omlat/matrix.hpp"
#include "omlat/measure.hpp"
#include "omlat/numeric.hpp"
#include "omlat/smith.hpp"
#include "omlat/symmetry.hpp"

namespace omlat {

/// Rows x v y - x - y over unordered orthogonal pairs {x, y}, including
/// {0, 0}; columns follow canonical element order.
inline IntMatrix relation_matrix(const OrthoLattice& l) {
  IntMatrix a;
  for (const auto& [x, y] : orthogonal_pairs(l)) {
    std::vector<Integer> row(l.size(), Integer(0));
    row[l.join(x, y)] += 1;
    row[x] -= 1;
    row[y] -= 1;
    a.append_row(row);
  }
  if (a.rows() == 0) a = IntMatrix(0, l.size());
  return a;
}

/// An element of Z^r (+) Z/t_1 (+) ... in Smith coordinates. Torsion
/// components are kept reduced.
struct ModuleElement {
  std::vector<Integer> torsion;
  std::vector<Integer> free;

  bool is_zero() const {
    for (const auto& v : torsion)
      if (v != 0) return false;
    for (const auto& v : free)
      if (v != 0) return false;
    return true;
  }
  friend bool operator==(const ModuleElement&, const ModuleElement&) = default;
};

/// Z^n / (row space of the relation matrix), with its Smith data.
class FPAbelianGroup {
 public:
  FPAbelianGroup() = default;
  FPAbelianGroup(std::size_t generators, IntMatrix relations)
      : generators_(generators), relations_(std::move(relations)) {
    if (relations_.rows() == 0) relations_ = IntMatrix(0, generators_);
    snf_ = smith_normal_form(relations_, /*track_left=*/false);
    for (std::size_t i = 0; i < snf_.nonzero; ++i)
      if (snf_.diagonal(i, i) != 1) {
        torsion_.push_back(snf_.diagonal(i, i));
        torsion_pos_.push_back(i);
      }
  }

  std::size_t generator_count() const { return generators_; }
  const IntMatrix& relation_matrix() const { return relations_; }
  const SmithForm& smith() const { return snf_; }
  std::size_t rank() const { return generators_ - snf_.nonzero; }
  const std::vector<Integer>& torsion() const { return torsion_; }

  /// Image of a formal sum of generators.
  ModuleElement project(const std::vector<Integer>& formal) const {
    const IntMatrix& v = snf_.right;
    ModuleElement m;
    auto coord = [&](std::size_t j) {
      Integer s = 0;
      for (std::size_t k = 0; k < generators_; ++k)
        if (formal[k] != 0) s += formal[k] * v(k, j);
      return s;
    };
    for (std::size_t t = 0; t < torsion_pos_.size(); ++t) m.torsion.push_back(mod(coord(torsion_pos_[t]), torsion_[t]));
    for (std::size_t j = snf_.nonzero; j < generators_; ++j) m.free.push_back(coord(j));
    return m;
  }

  ModuleElement generator(std::size_t k) const {
    std::vector<Integer> e(generators_, Integer(0));
    e[k] = 1;
    return project(e);
  }

  ModuleElement add(const ModuleElement& a, const ModuleElement& b) const {
    ModuleElement c = a;
    for (std::size_t t = 0; t < c.torsion.size(); ++t) c.torsion[t] = mod(c.torsion[t] + b.torsion[t], torsion_[t]);
    for (std::size_t j = 0; j < c.free.size(); ++j) c.free[j] += b.free[j];
    return c;
  }

  ModuleElement zero() const {
    return {std::vector<Integer>(torsion_.size(), Integer(0)), std::vector<Integer>(rank(), Integer(0))};
  }

 private:
  std::size_t generators_ = 0;
  IntMatrix relations_;
  SmithForm snf_;
  std::vector<Integer> torsion_;
  std::vector<std::size_t> torsion_pos_;
};

/// M(L) or its coinvariants M_G, together with the universal measure
/// pi : L -> M in Smith coordinates.
struct MeasureModule {
  enum class Variant { Plain, Coinvariant };

  FPAbelianGroup group;
  std::vector<ModuleElement> projection;
  Variant variant = Variant::Plain;

  std::size_t rank() const { return group.rank(); }
  const std::vector<Integer>& torsion() const { return group.torsion(); }
  std::size_t element_count() const { return projection.size(); }
};

namespace detail {

inline MeasureModule make_module(std::size_t n, IntMatrix relations, MeasureModule::Variant variant) {
  MeasureModule m;
  m.group = FPAbelianGroup(n, std::move(relations));
  m.variant = variant;
  for (std::size_t x = 0; x < n; ++x) m.projection.push_back(m.group.generator(x));
  return m;
}

}  // namespace detail

inline MeasureModule measure_module(const OrthoLattice& l) {
  return detail::make_module(l.size(), relation_matrix(l), MeasureModule::Variant::Plain);
}

/// M_G = M / <g.m - m>: appends [g x] - [x] for every distinct pair
/// (x, g x) with g in G, then recomputes the Smith form.
inline MeasureModule coinvariants(const MeasureModule& module, const GroupAction& action) {
  const std::size_t n = module.element_count();
  IntMatrix rel = module.group.relation_matrix();
  std::set<std::pair<Elem, Elem>> seen;
  for (const auto& g : action.elements())
    for (Elem x = 0; x < n; ++x) {
      if (g[x] == x || !seen.emplace(x, g[x]).second) continue;
      std::vector<Integer> row(n, Integer(0));
      row[g[x]] += 1;
      row[x] -= 1;
      rel.append_row(row);
    }
  return detail::make_module(n, std::move(rel), MeasureModule::Variant::Coinvariant);
}

inline MeasureModule coinvariants(const OrthoLattice& l, const GroupAction& action) {
  return coinvariants(measure_module(l), action);
}

inline const ModuleElement& universal_measure_eval(const MeasureModule& module, Elem x) {
  return module.projection[x];
}

/// Generators of Hom(M, A) pulled back along pi. For Z and Q these are
/// the free coordinate functionals (a basis; torsion contributes nothing).
/// For Z/m the free functionals are followed by one generator per torsion
/// factor d with gcd(d, m) > 1; `orders` holds each generator's additive
/// order, 0 meaning infinite.
struct MeasureBasis {
  std::vector<Measure> measures;
  std::vector<Integer> orders;
};

inline MeasureBasis measure_basis(const MeasureModule& module, const Domain& domain) {
  MeasureBasis out;
  const std::size_t n = module.element_count();
  const std::size_t r = module.rank();
  const bool modular = domain.kind() == Domain::Kind::Modular;
  for (std::size_t j = 0; j < r; ++j) {
    Measure m{domain, {}};
    for (std::size_t x = 0; x < n; ++x) m.values.push_back(domain.normalize(Rational(module.projection[x].free[j])));
    out.measures.push_back(std::move(m));
    out.orders.push_back(modular ? domain.modulus() : Integer(0));
  }
  if (modular) {
    const auto& tors = module.torsion();
    for (std::size_t t = 0; t < tors.size(); ++t) {
      Integer g = gcd(tors[t], domain.modulus());
      if (g == 1) continue;
      Integer step = domain.modulus() / g;
      Measure m{domain, {}};
      for (std::size_t x = 0; x < n; ++x)
        m.values.push_back(domain.normalize(Rational(step * module.projection[x].torsion[t])));
      out.measures.push_back(std::move(m));
      out.orders.push_back(g);
    }
  }
  return out;
}

inline MeasureBasis measure_basis(const OrthoLattice& l, const Domain& domain) {
  return measure_basis(measure_module(l), domain);
}

/// Basis of invariant measures, computed from M_G.
inline MeasureBasis measure_basis(const OrthoLattice& l, const Domain& domain, const GroupAction& action) {
  return measure_basis(coinvariants(l, action), domain);
}

/// |Hom(M, Z/m)| = m^r * prod gcd(d_i, m).
inline Integer hom_count(const FPAbelianGroup& group, const Integer& m) {
  Integer count = 1;
  for (std::size_t i = 0; i < group.rank(); ++i) count *= m;
  for (const auto& d : group.torsion()) count *= gcd(d, m);
  return count;
}

inline Integer hom_count(const MeasureModule& module, const Integer& m) { return hom_count(module.group, m); }

/// Free coordinates of pi(x) as a |L| x r rational matrix.
inline RatMatrix rational_coordinates(const MeasureModule& module) {
  RatMatrix c(module.element_count(), module.rank());
  for (std::size_t x = 0; x < module.element_count(); ++x)
    for (std::size_t j = 0; j < module.rank(); ++j) c(x, j) = Rational(module.projection[x].free[j]);
  return c;
}

}  // namespace omlat
