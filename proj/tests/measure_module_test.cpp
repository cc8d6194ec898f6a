#include "omlat/measure_module.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "family.hpp"
#include "omlat/families.hpp"
#include "oracle.hpp"

namespace omlat {
namespace {

std::vector<Rational> ints(std::initializer_list<long long> v) {
  std::vector<Rational> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

std::vector<Rational> range(long long lo, long long hi) {
  std::vector<Rational> out;
  for (long long v = lo; v <= hi; ++v) out.emplace_back(v);
  return out;
}

std::vector<long long> as_ints(const Measure& m) {
  std::vector<long long> v;
  for (const auto& x : m.values) v.push_back(static_cast<long long>(numerator(x)));
  return v;
}

std::vector<std::vector<long long>> as_int_rows(const std::vector<Measure>& ms) {
  std::vector<std::vector<long long>> out;
  for (const auto& m : ms) out.push_back(as_ints(m));
  return out;
}

void expect_smith_contract(const IntMatrix& a, const SmithForm& s) {
  EXPECT_EQ(s.left * a * s.right, s.diagonal);
  EXPECT_EQ(abs(numerator(determinant(to_rational(s.left)))), 1);
  EXPECT_EQ(abs(numerator(determinant(to_rational(s.right)))), 1);
  for (std::size_t i = 0; i < s.diagonal.rows(); ++i)
    for (std::size_t j = 0; j < s.diagonal.cols(); ++j)
      if (i != j) EXPECT_EQ(s.diagonal(i, j), 0);
  auto d = s.invariants();
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_GT(d[i], 0);
    if (i + 1 < d.size()) EXPECT_EQ(d[i + 1] % d[i], 0);
  }
  for (std::size_t i = s.nonzero; i < std::min(a.rows(), a.cols()); ++i) EXPECT_EQ(s.diagonal(i, i), 0);
}

TEST(Smith, Examples) {
  auto id = IntMatrix::identity(3);
  auto s = smith_normal_form(id);
  expect_smith_contract(id, s);
  EXPECT_EQ(s.diagonal, id);

  IntMatrix a{{2, 4}, {6, 8}};
  auto t = smith_normal_form(a);
  expect_smith_contract(a, t);
  EXPECT_EQ(t.invariants(), (std::vector<Integer>{2, 4}));

  IntMatrix z(3, 2);
  auto u = smith_normal_form(z);
  expect_smith_contract(z, u);
  EXPECT_EQ(u.nonzero, 0u);
  EXPECT_TRUE(u.diagonal.is_zero());
}

TEST(Smith, LargeEntriesStayExact) {
  Integer big = Integer(1) << 200;
  IntMatrix a{{big, big + 1}, {big - 1, big}};
  auto s = smith_normal_form(a);
  expect_smith_contract(a, s);
  // det = big^2 - (big^2 - 1) = 1
  EXPECT_EQ(s.invariants(), (std::vector<Integer>{1, 1}));
}

TEST(Smith, IntegerSolveAndKernel) {
  IntMatrix a{{2, 0}, {0, 3}, {2, 3}};
  auto s = smith_normal_form(a);
  auto y = solve_left_integer(s, {Integer(4), Integer(9)});
  ASSERT_TRUE(y.has_value());
  std::vector<Integer> back(2, Integer(0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) back[j] += (*y)[i] * a(i, j);
  EXPECT_EQ(back, (std::vector<Integer>{4, 9}));
  EXPECT_FALSE(solve_left_integer(s, {Integer(1), Integer(0)}).has_value());
  auto ker = left_kernel(s);
  ASSERT_EQ(ker.size(), 1u);
  for (std::size_t j = 0; j < 2; ++j) {
    Integer acc = 0;
    for (std::size_t i = 0; i < 3; ++i) acc += ker[0][i] * a(i, j);
    EXPECT_EQ(acc, 0);
  }
}

TEST(RelationMatrix, Boolean1AndMo2) {
  auto b1 = boolean(1);
  auto r = relation_matrix(b1);
  EXPECT_EQ(r.cols(), 2u);
  EXPECT_EQ(rank(to_rational(r)), 1u);
  for (std::size_t i = 0; i < r.rows(); ++i) EXPECT_EQ(r(i, b1.top()), 0);

  auto m2 = mo(2);
  auto a = relation_matrix(m2);
  EXPECT_EQ(a.cols(), 6u);
  EXPECT_EQ(a.rows(), orthogonal_pairs(m2).size());
  std::vector<Integer> want(6, Integer(0));
  want[m2.top()] = 1;
  want[m2.at("a1")] = -1;
  want[m2.at("a1'")] = -1;
  bool found = false;
  for (std::size_t i = 0; i < a.rows(); ++i) found |= a.row(i) == want;
  EXPECT_TRUE(found);
}

TEST(MeasureModule, RanksMatchRationalSolutionSpace) {
  for (unsigned n = 1; n <= 5; ++n) {
    auto l = boolean(n);
    EXPECT_EQ(measure_module(l).rank(), n);
    EXPECT_EQ(oracle::additivity_solution_dimension(l), n);
  }
  for (unsigned n = 1; n <= 6; ++n) {
    auto l = mo(n);
    EXPECT_EQ(measure_module(l).rank(), n + 1);
    EXPECT_EQ(oracle::additivity_solution_dimension(l), n + 1);
  }
  EXPECT_EQ(measure_module(benzene()).rank(), 2u);
  for (const auto& l : testing::builtin_family()) {
    SCOPED_TRACE(l.name());
    auto m = measure_module(l);
    EXPECT_EQ(m.rank(), oracle::additivity_solution_dimension(l));
    EXPECT_TRUE(m.torsion().empty());
  }
}

TEST(MeasureModule, BenzeneRelationsIdentifyChains) {
  auto l = benzene();
  auto m = measure_module(l);
  EXPECT_EQ(universal_measure_eval(m, l.at("a")), universal_measure_eval(m, l.at("b")));
  EXPECT_EQ(universal_measure_eval(m, l.at("a'")), universal_measure_eval(m, l.at("b'")));
}

TEST(MeasureModule, UniversalMeasureIsAdditive) {
  for (const auto& l : testing::builtin_family()) {
    SCOPED_TRACE(l.name());
    auto m = measure_module(l);
    const auto& g = m.group;
    EXPECT_TRUE(universal_measure_eval(m, l.bottom()).is_zero());
    for (const auto& [x, y] : orthogonal_pairs(l))
      ASSERT_EQ(m.projection[l.join(x, y)], g.add(m.projection[x], m.projection[y]));
    for (Elem x = 0; x < l.size(); ++x)
      EXPECT_EQ(m.projection[l.top()], g.add(m.projection[x], m.projection[l.ortho(x)]));
    // Pairwise-orthogonal triples: pi(x v y v z) = pi(x) + pi(y) + pi(z).
    if (l.size() > 16) continue;
    for (Elem x = 1; x < l.size(); ++x)
      for (Elem y = x + 1; y < l.size(); ++y)
        for (Elem z = y + 1; z < l.size(); ++z) {
          if (!l.orthogonal(x, y) || !l.orthogonal(x, z) || !l.orthogonal(y, z)) continue;
          EXPECT_EQ(m.projection[l.join(l.join(x, y), z)],
                    g.add(g.add(m.projection[x], m.projection[y]), m.projection[z]));
        }
  }
}

TEST(Coinvariants, Examples) {
  auto m2 = mo(2);
  auto plain = measure_module(m2);
  auto triv = coinvariants(plain, trivial_group(m2));
  EXPECT_EQ(triv.rank(), plain.rank());
  EXPECT_EQ(triv.group.smith().invariants(), plain.group.smith().invariants());
  EXPECT_EQ(coinvariants(m2, automorphism_group(m2)).rank(), 1u);
  auto b3 = boolean(3);
  EXPECT_EQ(coinvariants(b3, automorphism_group(b3)).rank(), 1u);
  for (unsigned n = 1; n <= 6; ++n) EXPECT_EQ(coinvariants(mo(n), automorphism_group(mo(n))).rank(), 1u);
}

TEST(MeasureBasis, Examples) {
  auto b2 = boolean(2);
  auto basis = measure_basis(b2, Domain::rationals());
  ASSERT_EQ(basis.measures.size(), 2u);
  for (const auto& m : basis.measures) EXPECT_TRUE(is_measure(b2, m).holds);
  // Dirac measures at the two atoms are in the span.
  oracle::IntegerSpan span(as_int_rows(basis.measures));
  for (const char* atom : {"a", "b"}) {
    std::vector<long long> dirac(4, 0);
    for (Elem x = 0; x < 4; ++x) dirac[x] = b2.leq(b2.at(atom), x) ? 1 : 0;
    EXPECT_TRUE(span.contains(dirac)) << atom;
  }

  auto m2 = mo(2);
  auto inv = measure_basis(m2, Domain::rationals(), automorphism_group(m2));
  ASSERT_EQ(inv.measures.size(), 1u);
  const auto& nu = inv.measures[0];
  for (Elem z : atoms(m2)) EXPECT_EQ(nu[z], nu[m2.at("a1")]);
  EXPECT_NE(nu[m2.at("a1")], 0);
  EXPECT_EQ(nu[m2.top()], 2 * nu[m2.at("a1")]);

  auto mod3 = measure_basis(b2, Domain::modulo(3));
  ASSERT_EQ(mod3.measures.size(), 2u);
  std::set<std::vector<Rational>> generated;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::vector<Rational> v(4);
      for (Elem x = 0; x < 4; ++x)
        v[x] = Domain::modulo(3).normalize(i * mod3.measures[0][x] + j * mod3.measures[1][x]);
      generated.insert(v);
    }
  EXPECT_EQ(generated.size(), 9u);
  EXPECT_EQ(brute_force_measures(b2, range(0, 2), Domain::modulo(3)).size(), 9u);
  EXPECT_EQ(hom_count(measure_module(b2), 3), 9);
}

TEST(MeasureBasis, InvariantBasisIsInvariant) {
  for (const auto& l : testing::builtin_family()) {
    if (l.size() > 16) continue;
    SCOPED_TRACE(l.name());
    auto g = automorphism_group(l);
    for (const auto& m : measure_basis(l, Domain::rationals(), g).measures) {
      EXPECT_TRUE(is_measure(l, m).holds);
      EXPECT_TRUE(is_invariant(m, g.elements()).holds);
    }
    for (const auto& m : measure_basis(l, Domain::integers()).measures) EXPECT_TRUE(is_measure(l, m).holds);
  }
}

TEST(HomCount, FormulaAndBruteForce) {
  EXPECT_EQ(hom_count(FPAbelianGroup(1, IntMatrix()), 2), 2);
  FPAbelianGroup z_plus_z2(2, IntMatrix{{0, 2}});
  EXPECT_EQ(z_plus_z2.rank(), 1u);
  EXPECT_EQ(z_plus_z2.torsion(), (std::vector<Integer>{2}));
  EXPECT_EQ(hom_count(z_plus_z2, 2), 4);
  EXPECT_EQ(hom_count(z_plus_z2, 3), 3);
  EXPECT_EQ(hom_count(measure_module(mo(2)), 2), 8);
  EXPECT_EQ(brute_force_measures(mo(2), range(0, 1), Domain::modulo(2)).size(), 8u);
}

TEST(HomCount, TorsionGeneratorsForModularDomain) {
  // Z (+) Z/2 (+) Z/6 as a 3-generator group.
  FPAbelianGroup g(3, IntMatrix{{0, 2, 0}, {0, 0, 6}});
  EXPECT_EQ(g.torsion(), (std::vector<Integer>{2, 6}));
  EXPECT_EQ(hom_count(g, 4), 4 * 2 * 2);
  EXPECT_EQ(oracle::count_homs({{0, 2, 0}, {0, 0, 6}}, 3, 4), 16u);
}

TEST(IsMeasure, Examples) {
  auto b2 = boolean(2);
  EXPECT_TRUE(is_measure(b2, ints({0, 0, 0, 0}), Domain::integers()).holds);
  // element order: 0, a, b, 1
  EXPECT_TRUE(is_measure(b2, ints({0, 1, 2, 3}), Domain::integers()).holds);
  auto bad = is_measure(b2, ints({0, 1, 2, 5}), Domain::integers());
  ASSERT_FALSE(bad.holds);
  EXPECT_EQ(*bad.witness, (ElemPair{b2.at("a"), b2.at("b")}));
  EXPECT_TRUE(is_measure(b2, ints({0, 1, 2, 0}), Domain::modulo(3)).holds);
  try {
    is_measure(b2, {Rational(0), Rational(1, 2), Rational(1, 2), Rational(1)}, Domain::integers());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainMismatch);
  }
  EXPECT_TRUE(is_measure(b2, {Rational(0), Rational(1, 2), Rational(1, 2), Rational(1)}, Domain::rationals()).holds);
}

TEST(BruteForce, Examples) {
  // nu(1) must stay in range, so the atoms cannot both be 1.
  EXPECT_EQ(brute_force_measures(boolean(2), range(0, 1), Domain::integers()).size(), 3u);
  // nu(1) in {0, 1}: the zero measure plus one atom per block.
  EXPECT_EQ(brute_force_measures(mo(2), range(0, 1), Domain::integers()).size(), 5u);
  auto b = benzene();
  auto ms = brute_force_measures(b, range(0, 1), Domain::integers());
  EXPECT_EQ(ms.size(), 3u);
  for (const auto& m : ms) {
    EXPECT_EQ(m[b.at("a")], m[b.at("b")]);
    EXPECT_EQ(m[b.at("a'")], m[b.at("b'")]);
    EXPECT_EQ(m[b.top()], m[b.at("a")] + m[b.at("a'")]);
  }
  try {
    brute_force_measures(boolean(4), range(0, 1), Domain::integers());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OracleTooLarge);
  }
}

TEST(Representability, BruteForceMeasuresAreIntegerCombinations) {
  for (const auto& l : testing::small_family(8)) {
    SCOPED_TRACE(l.name());
    oracle::IntegerSpan span(as_int_rows(measure_basis(l, Domain::integers()).measures));
    for (const auto& m : brute_force_measures(l, range(-1, 1), Domain::integers())) {
      EXPECT_TRUE(span.contains(as_ints(m)));
    }
  }
}

TEST(ModularBasis, GeneratesAllModularMeasures) {
  for (const auto& l : testing::small_family(8)) {
    SCOPED_TRACE(l.name());
    for (long long m : {2, 3}) {
      auto module = measure_module(l);
      auto brute = brute_force_measures(l, range(0, m - 1), Domain::modulo(m));
      EXPECT_EQ(Integer(brute.size()), hom_count(module, m));
      auto basis = measure_basis(module, Domain::modulo(m));
      for (const auto& g : basis.measures) EXPECT_TRUE(is_measure(l, g).holds);
    }
  }
}

}  // namespace
}  // namespace omlat
