#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "omlat/error.hpp"
#include "omlat/limits.hpp"
#include "omlat/matrix.hpp"
#include "omlat/numeric.hpp"

// Polyhedral cones {v : h.v >= 0 for all h} over Q, converted to rays plus
// lineality by the double description method.

namespace omlat {

using RatVector = std::vector<Rational>;

/// { v : normal . v >= 0 }.
struct Halfspace {
  RatVector normal;
};

struct PolyCone {
  std::size_t dimension = 0;
  std::vector<Halfspace> h_rep;
  std::vector<RatVector> rays;       // extreme rays modulo lineality, primitive integer, sorted
  std::vector<RatVector> lineality;  // reduced row echelon basis

  bool contains(const RatVector& v) const {
    return std::all_of(h_rep.begin(), h_rep.end(), [&](const Halfspace& h) { return dot(h.normal, v) >= 0; });
  }
};

/// Scales v to the primitive integer vector on its ray.
inline RatVector primitive(RatVector v) {
  Integer l = 1;
  for (const auto& x : v) l = l / gcd(l, denominator(x)) * denominator(x);
  Integer g = 0;
  for (auto& x : v) {
    x *= Rational(l);
    g = gcd(g, numerator(x));
  }
  if (g > 1)
    for (auto& x : v) x /= Rational(g);
  return v;
}

inline bool is_zero_vector(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

namespace detail {

inline std::vector<RatVector> echelon_basis(const std::vector<RatVector>& vs, std::size_t d) {
  if (vs.empty()) return {};
  RatMatrix m(vs.size(), d);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = vs[i][j];
  const auto pivots = rref(m);
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(m.row(i));
  return out;
}

inline std::size_t rank_of(const std::vector<RatVector>& rows, std::size_t d) {
  if (rows.empty()) return 0;
  RatMatrix m(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
  return rank(std::move(m));
}

}  // namespace detail

/// Double description over the constraints in the given order. Starts from
/// the whole space (lineality = identity). A constraint that is nonzero on
/// the lineality space splits off one lineality direction as a new ray;
/// otherwise rays are partitioned by sign and each adjacent (+, -) pair is
/// combined. Two rays are adjacent when the processed constraints tight at
/// both have rank d - dim(lineality) - 2.
inline PolyCone cone_from_halfspaces(std::size_t d, const std::vector<RatVector>& normals,
                                     const Limits& limits = kDefaultLimits) {
  if (d > limits.max_dimension)
    throw Error(ErrorKind::DimensionCap,
                "dimension " + std::to_string(d) + " exceeds cap " + std::to_string(limits.max_dimension));
  PolyCone cone;
  cone.dimension = d;
  std::vector<RatVector> lin;
  for (std::size_t i = 0; i < d; ++i) {
    RatVector e(d, Rational(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<RatVector> rays, processed;

  for (const auto& h : normals) {
    if (h.size() != d) throw Error(ErrorKind::InvalidDescription, "constraint has the wrong dimension");
    if (is_zero_vector(h)) continue;
    cone.h_rep.push_back({h});

    auto pivot = std::find_if(lin.begin(), lin.end(), [&](const RatVector& l) { return dot(h, l) != 0; });
    if (pivot != lin.end()) {
      RatVector l0 = *pivot;
      lin.erase(pivot);
      Rational hl0 = dot(h, l0);
      if (hl0 < 0) {
        for (auto& x : l0) x = -x;
        hl0 = -hl0;
      }
      auto project = [&](RatVector& v) {
        const Rational f = dot(h, v) / hl0;
        if (f == 0) return;
        for (std::size_t j = 0; j < d; ++j) v[j] -= f * l0[j];
      };
      for (auto& l : lin) project(l);
      for (auto& r : rays) project(r);
      for (auto& r : rays) r = primitive(r);
      rays.push_back(primitive(l0));
      processed.push_back(h);
      continue;
    }

    std::vector<RatVector> pos, neg, next;
    for (auto& r : rays) {
      const Rational s = dot(h, r);
      if (s > 0) {
        pos.push_back(r);
        next.push_back(r);
      } else if (s < 0) {
        neg.push_back(r);
      } else {
        next.push_back(r);
      }
    }
    const std::size_t target = d >= lin.size() + 2 ? d - lin.size() - 2 : 0;
    if (d < lin.size() + 2) pos.clear();
    for (const auto& p : pos)
      for (const auto& n : neg) {
        std::vector<RatVector> tight;
        for (const auto& c : processed)
          if (dot(c, p) == 0 && dot(c, n) == 0) tight.push_back(c);
        if (tight.size() < target || detail::rank_of(tight, d) != target) continue;
        const Rational hp = dot(h, p), hn = dot(h, n);
        RatVector c(d);
        for (std::size_t j = 0; j < d; ++j) c[j] = hp * n[j] - hn * p[j];
        next.push_back(primitive(std::move(c)));
      }
    rays = std::move(next);
    processed.push_back(h);
  }

  std::set<RatVector> unique(rays.begin(), rays.end());
  cone.rays.assign(unique.begin(), unique.end());
  cone.lineality = detail::echelon_basis(lin, d);
  return cone;
}

/// C* = { v : g . v >= 0 for every generator g }. Zero generators impose
/// nothing.
inline PolyCone dual_cone(std::size_t d, const std::vector<RatVector>& generators,
                          const Limits& limits = kDefaultLimits) {
  return cone_from_halfspaces(d, generators, limits);
}

/// Irredundant facet normals, recomputed from the V-representation as the
/// dual of the dual: rays and +-lineality of { h : h.r >= 0, h.l = 0 }.
inline std::vector<RatVector> facets_from_rays(const PolyCone& cone, const Limits& limits = kDefaultLimits) {
  std::vector<RatVector> gens = cone.rays;
  for (const auto& l : cone.lineality) {
    gens.push_back(l);
    RatVector neg = l;
    for (auto& x : neg) x = -x;
    gens.push_back(std::move(neg));
  }
  const auto dual = cone_from_halfspaces(cone.dimension, gens, limits);
  std::vector<RatVector> out = dual.rays;
  for (const auto& l : dual.lineality) {
    out.push_back(l);
    RatVector neg = l;
    for (auto& x : neg) x = -x;
    out.push_back(std::move(neg));
  }
  return out;
}

}  // namespace omlat
