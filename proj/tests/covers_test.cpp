#include <gtest/gtest.h>

#include <set>

#include "galmot/class_function.hpp"
#include "galmot/covers.hpp"
#include "galmot/error.hpp"
#include "galmot/motive.hpp"

using namespace galmot;

namespace {

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (a %= p; e; e >>= 1, a = a * a % p) {
    if (e & 1) r = r * a % p;
  }
  return r;
}

// Number of distinct roots in F_p of x^n + sum c_i x^i, by direct evaluation.
int rational_roots(const std::vector<FqElem>& c, std::uint64_t p) {
  int roots = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 1;
    for (std::size_t i = c.size(); i-- > 0;) v = (v * x + c[i]) % p;
    roots += v == 0;
  }
  return roots;
}

std::vector<Coloring> all_colorings(const GroupPtr& g) {
  const auto n = g->cyclic_classes().size();
  std::vector<Coloring> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<ClassId> cls;
    for (ClassId k = 0; k < n; ++k) {
      if (mask >> k & 1) cls.push_back(k);
    }
    out.emplace_back(g, PrimeSet::all(), cls);
  }
  return out;
}

ClassId class_with_order(const FiniteGroup& g, std::size_t order) {
  for (ClassId k = 0; k < g.cyclic_classes().size(); ++k) {
    if (g.cyclic_classes()[k].order() == order) return k;
  }
  throw std::logic_error("no class of that order");
}

}  // namespace

TEST(CoverSpec, ParsesAndRoundTrips) {
  for (std::string s : {"kummer:m=2", "roots:n=3", "prod(kummer:m=2,kummer:m=3)", "prod(roots:n=2,prod(kummer:m=1,kummer:m=2))"}) {
    EXPECT_EQ(parse_cover_spec(s)->tag(), s);
  }
  EXPECT_EQ(parse_cover_spec("prod(kummer:m=2,roots:n=3)")->group()->order(), 12u);
  EXPECT_THROW(parse_cover_spec("kummer:m=0"), ParseError);
  EXPECT_THROW(parse_cover_spec("roots:n=5"), ParseError);
  EXPECT_THROW(parse_cover_spec("prod(kummer:m=2"), ParseError);
  EXPECT_THROW(parse_cover_spec("kummer:m=2x"), ParseError);
  EXPECT_THROW(parse_cover_spec("cyclic:2"), ParseError);
}

TEST(CoverSpec, GoodPrimes) {
  auto k3 = ConcreteCover::kummer(3);
  EXPECT_TRUE(k3->good(7));
  EXPECT_TRUE(k3->good(4));
  EXPECT_FALSE(k3->good(5));
  EXPECT_FALSE(k3->good(12));
  auto r3 = ConcreteCover::roots(3);
  EXPECT_TRUE(r3->good(5));
  EXPECT_TRUE(r3->good(25));
  EXPECT_FALSE(r3->good(3));
  EXPECT_FALSE(r3->good(9));
  EXPECT_THROW(CoverOverField(k3, 5), BadPrime);
}

TEST(Kummer, ArtinSymbolIsPowerResidue) {
  for (std::size_t m : {2, 3, 4, 6}) {
    for (std::uint64_t q : {7, 13, 19, 37}) {
      if ((q - 1) % m) continue;
      CoverOverField cf(ConcreteCover::kummer(m), q);
      for (FqElem x = 1; x < q; ++x) {
        // Trivial class iff x is an m-th power; more generally the Frobenius
        // order is the order of x^((q-1)/m) among the m-th roots of unity.
        const std::uint64_t t = powmod(x, (q - 1) / m, q);
        std::size_t ord = 1;
        for (std::uint64_t u = t; u != 1; u = u * t % q) ++ord;
        EXPECT_EQ(cf.group()->cyclic_classes()[cf.artin_symbol({x})].order(), ord) << m << " " << q << " " << x;
      }
      EXPECT_THROW(cf.artin_symbol({0}), GeometryError);
    }
  }
}

TEST(Kummer, SmallCounts) {
  CoverOverField k2(ConcreteCover::kummer(2), 7);
  EXPECT_EQ(k2.artin_symbol({1}), 0u);
  EXPECT_EQ(k2.artin_symbol({3}), 1u);
  EXPECT_EQ(k2.count_definable(Coloring::trivial(k2.group(), PrimeSet::all())), 3u);

  CoverOverField k3(ConcreteCover::kummer(3), 7);
  EXPECT_EQ(k3.count_definable(parse_coloring_spec("order=3", k3.group(), PrimeSet::all())), 4u);

  for (std::uint64_t q : {3, 5, 7, 9, 11, 13, 25, 27}) {
    CoverOverField cf(ConcreteCover::kummer(2), q);
    EXPECT_EQ(cf.count_definable(Coloring::trivial(cf.group(), PrimeSet::all())), (q - 1) / 2) << q;
    EXPECT_EQ(cf.etale_count(), q - 1);
    EXPECT_EQ(cf.fixed_count(0), q - 1);
  }
}

TEST(Roots, ArtinSymbolMatchesRootCount) {
  for (std::uint64_t q : {5, 7, 11}) {
    CoverOverField cf(ConcreteCover::roots(3), q);
    const auto& g = *cf.group();
    std::uint64_t seen = 0;
    for (FqElem c0 = 0; c0 < q; ++c0) {
      for (FqElem c1 = 0; c1 < q; ++c1) {
        for (FqElem c2 = 0; c2 < q; ++c2) {
          std::vector<FqElem> w{c0, c1, c2};
          if (!cf.is_etale(w)) continue;
          ++seen;
          const int r = rational_roots(w, q);
          const std::size_t expected = r == 3 ? 1 : r == 1 ? 2 : 3;
          ASSERT_EQ(g.cyclic_classes()[cf.artin_symbol(w)].order(), expected) << q;
        }
      }
    }
    EXPECT_EQ(seen, q * q * q - q * q);
    EXPECT_EQ(cf.etale_count(), seen);
  }
  CoverOverField cf(ConcreteCover::roots(3), 7);
  // x(x - 1)(x + 1) = x^3 - x splits.
  EXPECT_EQ(cf.artin_symbol({0, 6, 0}), 0u);
  EXPECT_THROW(cf.artin_symbol({0, 0, 0}), GeometryError);
}

TEST(Roots, QuarticClassesFromRootCount) {
  const std::uint64_t q = 5;
  CoverOverField cf(ConcreteCover::roots(4), q);
  const auto& g = *cf.group();
  std::map<int, std::set<std::size_t>> orders;
  std::uint64_t total = 0;
  for (std::uint64_t t = 0; t < q * q * q * q; ++t) {
    std::vector<FqElem> w{FqElem(t % q), FqElem(t / q % q), FqElem(t / q / q % q), FqElem(t / q / q / q)};
    if (!cf.is_etale(w)) continue;
    ++total;
    orders[rational_roots(w, q)].insert(g.cyclic_classes()[cf.artin_symbol(w)].order());
  }
  EXPECT_EQ(total, q * q * q * q - q * q * q);
  EXPECT_EQ(orders[4], (std::set<std::size_t>{1}));
  EXPECT_EQ(orders[2], (std::set<std::size_t>{2}));
  EXPECT_EQ(orders[1], (std::set<std::size_t>{3}));
  // No rational root: irreducible (4-cycle) or two quadratics (double transposition).
  EXPECT_EQ(orders[0], (std::set<std::size_t>{2, 4}));
}

TEST(Roots, RationalPointsOfV) {
  for (std::uint64_t q : {5, 7}) {
    for (std::size_t n : {2, 3, 4}) {
      CoverOverField cf(ConcreteCover::roots(n), q);
      std::uint64_t falling = 1;
      for (std::size_t i = 0; i < n; ++i) falling *= q - i;
      EXPECT_EQ(cf.fixed_count(0), falling) << q << " " << n;
      EXPECT_EQ(cf.weighted_count(regular_character(cf.group())), Rational(static_cast<long long>(falling)));
    }
  }
}

TEST(Counts, WeightedEqualsDefinableForEveryColoring) {
  std::vector<std::pair<std::string, std::uint64_t>> cases = {
      {"kummer:m=2", 9},  {"kummer:m=3", 13}, {"kummer:m=4", 13}, {"kummer:m=6", 7},
      {"roots:n=3", 7},   {"roots:n=3", 25},  {"roots:n=4", 7},   {"prod(kummer:m=2,kummer:m=3)", 7},
      {"prod(kummer:m=2,roots:n=3)", 5}};
  for (const auto& [spec, q] : cases) {
    CoverOverField cf(parse_cover_spec(spec), q);
    for (const auto& c : all_colorings(cf.group())) {
      EXPECT_EQ(cf.weighted_count(alpha_from_coloring(c)), Rational(static_cast<long long>(cf.count_definable(c))))
          << spec << " q=" << q << " " << c.to_spec();
    }
    EXPECT_EQ(cf.count_definable(Coloring::full(cf.group(), PrimeSet::all())), cf.etale_count());
  }
}

TEST(Counts, OnlyAllPrimesRealizable) {
  CoverOverField cf(ConcreteCover::kummer(2), 7);
  EXPECT_THROW(cf.count_definable(Coloring::trivial(cf.group(), PrimeSet::of({2}))), ColoringError);
  auto other = share(FiniteGroup::cyclic(3));
  EXPECT_THROW(cf.count_definable(Coloring::trivial(other, PrimeSet::all())), GroupMismatch);
}

TEST(Counts, QuotientOfKummer4IsKummer2) {
  for (std::uint64_t q : {5, 9, 13, 17}) {
    CoverOverField k4(ConcreteCover::kummer(4), q);
    CoverOverField k2(ConcreteCover::kummer(2), q);
    EXPECT_EQ(k4.quotient_count(k4.group()->cyclic_subgroup(2)), k2.fixed_count(0)) << q;
    EXPECT_EQ(k4.quotient_count(whole_group(*k4.group())), q - 1);
  }
}

TEST(Counts, RefinementAlongKummerTower) {
  for (std::uint64_t q : {7, 13, 19, 25}) {
    auto k6 = ConcreteCover::kummer(6);
    CoverOverField big(k6, q);
    for (std::size_t m : {2, 3}) {
      CoverOverField small(ConcreteCover::kummer(m), q);
      // y -> y^(6/m) maps the m-fold quotient onto Z/m via k -> k mod m.
      auto pi = quotient(k6->group(), k6->group()->cyclic_subgroup(static_cast<Elem>(m)));
      ASSERT_EQ(pi.target->order(), m);
      for (const auto& c : all_colorings(small.group())) {
        Coloring c_small(small.group(), PrimeSet::all(), c.classes());
        Coloring c_quot(pi.target, PrimeSet::all(), c.classes());
        EXPECT_EQ(big.count_definable(refine_coloring(pi, c_quot)), small.count_definable(c_small)) << q;
      }
    }
  }
}

TEST(Realize, HalfOfV) {
  CoverOverField cf(ConcreteCover::kummer(2), 7);
  MotiveExpr e{cf.cover().tag(), cf.group(), {}, {}};
  e.add_term(0, Rational(1, 2));
  EXPECT_EQ(realize_count(e, cf), Rational(3));
  MotiveExpr f{"other", cf.group(), {{0, Rational(1)}}, {}};
  EXPECT_THROW(realize_count(f, cf), MotiveError);
  MotiveExpr free{cf.cover().tag(), cf.group(), {}, {}};
  free.add_free("W", Rational(2));
  free.add_free("V", Rational(-1));
  EXPECT_EQ(realize_count(free, cf), Rational(6));
  free.add_free("X", Rational(1));
  EXPECT_THROW(realize_count(free, cf), MotiveError);
  EXPECT_EQ(realize_count(free, cf, {{"X", [] { return Rational(10); }}}), Rational(16));
}

TEST(Realize, MotivesOfS3ColoringsCount) {
  for (std::uint64_t q : {5, 7, 11}) {
    CoverOverField cf(ConcreteCover::roots(3), q);
    for (const auto& c : all_colorings(cf.group())) {
      EXPECT_EQ(realize_count(motive_of_cover(c, cf.cover().tag()), cf),
                Rational(static_cast<long long>(cf.count_definable(c))))
          << q << " " << c.to_spec();
    }
  }
}

TEST(Theta, ExponentOneIsCount) {
  CoverOverField cf(ConcreteCover::roots(3), 7);
  for (const auto& c : all_colorings(cf.group())) EXPECT_EQ(cf.theta_direct_count(c, 1), cf.count_definable(c));
}

TEST(Theta, EverythingIsASquareOverQuadraticExtension) {
  for (std::uint64_t q : {3, 5, 7, 11}) {
    CoverOverField cf(ConcreteCover::kummer(2), q);
    EXPECT_EQ(cf.theta_direct_count(Coloring::trivial(cf.group(), PrimeSet::all()), 2), q - 1);
  }
}

TEST(Theta, DirectCountMatchesThetaColoring) {
  std::vector<std::pair<std::string, std::uint64_t>> cases = {
      {"roots:n=3", 7}, {"roots:n=3", 11}, {"kummer:m=3", 7}, {"kummer:m=4", 13}, {"prod(kummer:m=2,kummer:m=3)", 7}};
  for (const auto& [spec, q] : cases) {
    CoverOverField cf(parse_cover_spec(spec), q);
    for (std::uint64_t n : {2, 3, 4}) {
      for (const auto& c2 : all_colorings(cf.group())) {
        auto c1 = theta_coloring({PrimeSet::all(), PrimeSet::all(), n}, c2);
        EXPECT_EQ(cf.theta_direct_count(c2, n), cf.count_definable(c1)) << spec << " q=" << q << " n=" << n;
      }
    }
  }
}

TEST(Theta, RefusesAboveCeiling) {
  CoverOverField cf(ConcreteCover::kummer(2), 101);
  EXPECT_THROW(cf.theta_direct_count(Coloring::trivial(cf.group(), PrimeSet::all()), 4), CeilingExceeded);
  EXPECT_THROW(cf.theta_direct_count(Coloring::trivial(cf.group(), PrimeSet::all()), 0), ColoringError);
}

TEST(Fibers, S3SubgroupsMatchPrediction) {
  for (std::uint64_t q : {7, 13}) {
    CoverOverField cf(ConcreteCover::roots(3), q);
    const auto& g = *cf.group();
    auto t = subgroup_as_group(g, g.cyclic_subgroup(2));
    auto h1 = cf.fiber_histogram(t, class_with_order(*t.group, 2));
    EXPECT_EQ(h1.predicted, Rational(1));
    EXPECT_TRUE(h1.constant_and_predicted());
    EXPECT_GT(h1.x2_points, 0u);

    auto a3 = subgroup_as_group(g, g.cyclic_subgroup(3));
    auto h2 = cf.fiber_histogram(a3, class_with_order(*a3.group, 3));
    EXPECT_EQ(h2.predicted, Rational(2));
    EXPECT_TRUE(h2.constant_and_predicted());
    // Irreducible cubics: (q^3 - q) / 3.
    EXPECT_EQ(h2.x2_points, (q * q * q - q) / 3);
  }
}

TEST(Fibers, KummerFiberOfTrivialSubgroup) {
  CoverOverField cf(ConcreteCover::kummer(4), 13);
  auto triv = subgroup_as_group(*cf.group(), trivial_subgroup());
  auto h = cf.fiber_histogram(triv, 0);
  EXPECT_EQ(h.predicted, Rational(4));
  EXPECT_TRUE(h.constant_and_predicted());
  EXPECT_EQ(h.x2_points, 3u);  // fourth powers in F_13^*
}

TEST(Fibers, ProductsUnsupported) {
  CoverOverField cf(parse_cover_spec("prod(kummer:m=2,kummer:m=3)"), 7);
  auto triv = subgroup_as_group(*cf.group(), trivial_subgroup());
  EXPECT_THROW(cf.fiber_histogram(triv, 0), GeometryError);
}

TEST(Decomposition, CountsAreNormalizerOrders) {
  CoverOverField cf(ConcreteCover::roots(3), 7);
  const auto& g = *cf.group();
  for (std::vector<FqElem> w : {std::vector<FqElem>{0, 6, 0}, {1, 0, 0}, {6, 1, 0}}) {
    auto counts = cf.decomposition_counts(w);
    std::uint64_t total = 0;
    const ClassId cls = cf.artin_symbol(w);
    for (const auto& [q, n] : counts) {
      total += n;
      EXPECT_EQ(g.class_of(q), cls);
      EXPECT_EQ(n, normalizer(g, q).order());
    }
    EXPECT_EQ(total, g.order());
  }
}

TEST(Density, RefusesBadPrimes) {
  auto t = density_table(ConcreteCover::kummer(3), 5);
  ASSERT_TRUE(t.refused);
  EXPECT_TRUE(t.rows.empty());
  EXPECT_TRUE(density_table(ConcreteCover::roots(3), 3).refused);
  auto ok = density_table(ConcreteCover::roots(3), 7);
  EXPECT_FALSE(ok.refused);
  EXPECT_EQ(ok.total, 7u * 7 * 7 - 7 * 7);
  ASSERT_EQ(ok.rows.size(), 3u);
  EXPECT_EQ(ok.rows[0].predicted, Rational(1, 6));
  EXPECT_EQ(ok.rows[1].predicted, Rational(1, 2));
  EXPECT_EQ(ok.rows[2].predicted, Rational(1, 3));
  // Split cubics: C(7, 3).
  EXPECT_EQ(ok.rows[0].count, 35u);
}
