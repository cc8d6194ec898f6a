#include "omlat/indicators.hpp"

#include <gtest/gtest.h>

#include <random>

#include "omlat/families.hpp"
#include "omlat/measure_module.hpp"

namespace omlat {
namespace {

// nu(x) = sum of the weights of the atoms below x.
Measure atom_sum(const OrthoLattice& l, const std::vector<Rational>& weights) {
  const auto at = atoms(l);
  Measure m{Domain::rationals(), {}};
  for (Elem x = 0; x < l.size(); ++x) {
    Rational s = 0;
    for (std::size_t i = 0; i < at.size(); ++i)
      if (l.leq(at[i], x)) s += weights[i];
    m.values.push_back(s);
  }
  return m;
}

TEST(Indicator, Examples) {
  auto l = boolean(3);
  EXPECT_EQ(indicator(l, l.bottom()).values, std::vector<Rational>(3, Rational(0)));
  EXPECT_EQ(indicator(l, l.top()).values, std::vector<Rational>(3, Rational(1)));
  auto f = indicator(l, l.at("ab"));
  ASSERT_EQ(f.atoms, (std::vector<Elem>{l.at("a"), l.at("b"), l.at("c")}));
  EXPECT_EQ(f.values, (std::vector<Rational>{1, 1, 0}));
}

TEST(Indicator, RejectsNonBoolean) {
  for (const auto& l : {mo(2), benzene()}) {
    try {
      indicator(l, l.top());
      FAIL() << l.name();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotBooleanAtomistic);
    }
  }
}

TEST(Indicator, IdentitiesHold) {
  for (unsigned n = 1; n <= 5; ++n) EXPECT_TRUE(check_indicator_identities(boolean(n)).holds) << n;
}

TEST(Functional, Examples) {
  auto l = boolean(3);
  auto nu = atom_sum(l, {1, 0, 0});
  auto f = functional_from_measure(l, nu);
  EXPECT_EQ(f.weights, (std::vector<Rational>{1, 0, 0}));
  EXPECT_EQ(measure_from_functional(l, f), nu);

  auto zero = zero_measure(l);
  EXPECT_EQ(functional_from_measure(l, zero).weights, std::vector<Rational>(3, Rational(0)));

  // Evaluation at an atom z is the Dirac measure: nu(x) = 1 iff z <= x.
  const Elem z = l.at("b");
  LinearFunctional ev{atoms(l), {0, 1, 0}};
  auto dirac = measure_from_functional(l, ev);
  for (Elem x = 0; x < l.size(); ++x) EXPECT_EQ(dirac[x], l.leq(z, x) ? 1 : 0);

  Measure broken = nu;
  broken.values[l.top()] = 7;
  try {
    functional_from_measure(l, broken);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAMeasure);
  }
}

TEST(Functional, RoundTripOnBasisAndRandomMeasures) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (unsigned n = 1; n <= 4; ++n) {
    auto l = boolean(n);
    std::vector<Measure> sample = measure_basis(l, Domain::rationals()).measures;
    for (int k = 0; k < 100; ++k) {
      std::vector<Rational> w;
      for (unsigned i = 0; i < n; ++i) w.emplace_back(num(rng), den(rng));
      sample.push_back(atom_sum(l, w));
    }
    for (const auto& nu : sample) {
      auto f = functional_from_measure(l, nu);
      EXPECT_EQ(measure_from_functional(l, f), nu);
      EXPECT_EQ(functional_from_measure(l, measure_from_functional(l, f)), f);
      for (Elem x = 0; x < l.size(); ++x) EXPECT_EQ(f(indicator(l, x)), nu[x]);
    }
  }
}

TEST(Functional, ModularIdentityForEveryMeasure) {
  std::vector<Rational> range{-2, -1, 0, 1, 2};
  for (unsigned n = 1; n <= 3; ++n) {
    auto l = boolean(n);
    for (const auto& nu : brute_force_measures(l, range, Domain::integers()))
      for (Elem x = 0; x < l.size(); ++x)
        for (Elem y = 0; y < l.size(); ++y) EXPECT_EQ(nu[l.join(x, y)] + nu[l.meet(x, y)], nu[x] + nu[y]);
  }
}

TEST(Invariance, Examples) {
  auto l = boolean(3);
  auto s3 = automorphism_group(l);
  ASSERT_EQ(s3.order(), 6u);
  auto uniform = invariant_functional_check(l, s3, atom_sum(l, {1, 1, 1}));
  EXPECT_TRUE(uniform.measure_invariant);
  EXPECT_TRUE(uniform.functional_invariant);
  auto dirac = invariant_functional_check(l, s3, atom_sum(l, {1, 0, 0}));
  EXPECT_FALSE(dirac.measure_invariant);
  EXPECT_FALSE(dirac.functional_invariant);
  auto trivial = invariant_functional_check(l, trivial_group(l), atom_sum(l, {3, -1, 2}));
  EXPECT_TRUE(trivial.measure_invariant && trivial.functional_invariant);
}

TEST(Invariance, SidesAgreeExhaustively) {
  std::vector<Rational> range{-1, 0, 1};
  for (unsigned n = 1; n <= 3; ++n) {
    auto l = boolean(n);
    auto g = automorphism_group(l);
    for (const auto& nu : brute_force_measures(l, range, Domain::integers()))
      EXPECT_TRUE(invariant_functional_check(l, g, nu).agree());
  }
}

TEST(Invariance, IndicatorTranslation) {
  auto l = boolean(3);
  const auto group = automorphism_group(l);
  for (const auto& g : group.elements())
    for (Elem x = 0; x < l.size(); ++x) EXPECT_EQ(act(g, indicator(l, x)), indicator(l, g[x]));
}

}  // namespace
}  // namespace omlat
