#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omlat/cone.hpp"
#include "omlat/error.hpp"
#include "omlat/lattice.hpp"
#include "omlat/limits.hpp"
#include "omlat/measure.hpp"
#include "omlat/measure_module.hpp"
#include "omlat/symmetry.hpp"

// Positive measures and states. A rational measure is written in the basis
// of measure_basis(., Q), so nu(x) = sum_j c_j beta_j(x); positivity at x is
// the halfspace with normal (beta_1(x), ..., beta_r(x)).

namespace omlat {

struct MeasureCone {
  MeasureBasis basis;
  PolyCone cone;
};

inline Measure measure_at(const MeasureBasis& basis, std::size_t elements, const RatVector& coords) {
  Measure m{Domain::rationals(), std::vector<Rational>(elements, Rational(0))};
  for (std::size_t j = 0; j < coords.size(); ++j)
    for (std::size_t x = 0; x < elements; ++x) m.values[x] += coords[j] * basis.measures[j][x];
  return m;
}

inline RatVector element_normal(const MeasureBasis& basis, Elem x) {
  RatVector h;
  for (const auto& b : basis.measures) h.push_back(b[x]);
  return h;
}

namespace detail {

inline MeasureCone cone_over(const OrthoLattice& l, MeasureBasis basis, const Limits& limits) {
  std::vector<RatVector> normals;
  for (Elem x = 0; x < l.size(); ++x) normals.push_back(element_normal(basis, x));
  auto cone = cone_from_halfspaces(basis.measures.size(), normals, limits);
  return {std::move(basis), std::move(cone)};
}

}  // namespace detail

/// Measures with nu(x) >= 0 for every element x.
inline MeasureCone positive_cone(const OrthoLattice& l, const Limits& limits = kDefaultLimits) {
  return detail::cone_over(l, measure_basis(l, Domain::rationals()), limits);
}

/// The invariant slice, in coordinates of the basis computed from M_G.
inline MeasureCone positive_cone(const OrthoLattice& l, const GroupAction& action,
                                 const Limits& limits = kDefaultLimits) {
  return detail::cone_over(l, measure_basis(l, Domain::rationals(), action), limits);
}

struct StateVertex {
  RatVector coords;
  Measure measure;
};

struct StatePolytope {
  MeasureCone cone;
  RatVector normalization;  // nu(1) as a functional on coordinates
  std::vector<StateVertex> vertices;
};

namespace detail {

inline StatePolytope slice(const OrthoLattice& l, MeasureCone mc) {
  StatePolytope p;
  p.normalization = element_normal(mc.basis, l.top());
  if (is_zero_vector(p.normalization))
    throw Error(ErrorKind::UnboundedSlice, "pi(1) = 0, so nu(1) = 1 has no solutions or no bound");
  if (!mc.cone.lineality.empty())
    throw Error(ErrorKind::UnboundedSlice, "the positive cone contains a line");
  if (mc.cone.rays.empty()) throw Error(ErrorKind::EmptyPolytope, "no nonzero positive measure");
  for (const auto& r : mc.cone.rays) {
    const Rational top = dot(p.normalization, r);
    if (top == 0) throw Error(ErrorKind::UnboundedSlice, "a positive measure has nu(1) = 0");
    RatVector v = r;
    for (auto& x : v) x /= top;
    p.vertices.push_back({v, measure_at(mc.basis, l.size(), v)});
  }
  p.cone = std::move(mc);
  return p;
}

}  // namespace detail

/// Positive cone sliced by nu(1) = 1. The cone is pointed, so the vertices
/// are its rays scaled to nu(1) = 1.
inline StatePolytope state_polytope(const OrthoLattice& l, const Limits& limits = kDefaultLimits) {
  return detail::slice(l, positive_cone(l, limits));
}

inline StatePolytope state_polytope(const OrthoLattice& l, const GroupAction& action,
                                    const Limits& limits = kDefaultLimits) {
  return detail::slice(l, positive_cone(l, action, limits));
}

struct ProbabilityWitness {
  std::string reason;
  std::vector<Elem> elements;
};

/// Additive, nu(1) = 1 and 0 <= nu(x) <= 1 everywhere.
inline Verdict<ProbabilityWitness> is_probability_measure(const OrthoLattice& l, const std::vector<Rational>& values) {
  if (auto v = is_measure(l, values, Domain::rationals()); !v.holds)
    return {false, ProbabilityWitness{"not additive", {v.witness->first, v.witness->second}}};
  if (values[l.top()] != 1) return {false, ProbabilityWitness{"nu(1) != 1", {l.top()}}};
  for (Elem x = 0; x < l.size(); ++x)
    if (values[x] < 0 || values[x] > 1) return {false, ProbabilityWitness{"value outside [0, 1]", {x}}};
  return {};
}

}  // namespace omlat
