#include <gtest/gtest.h>

#include "galmot/error.hpp"
#include "galmot/motive.hpp"

using namespace galmot;

namespace {

MotiveExpr expr(const GroupPtr& g, std::map<ClassId, Rational> terms, const std::string& tag = "V") {
  return MotiveExpr{tag, g, std::move(terms), {}};
}

const MotiveExpr& as_expr(const std::variant<MotiveExpr, StarUnavailable>& v) {
  EXPECT_TRUE(std::holds_alternative<MotiveExpr>(v));
  return std::get<MotiveExpr>(v);
}

}  // namespace

TEST(MotiveOfCover, FullColoringOfCyclicGroupIsW) {
  for (std::size_t m = 1; m <= 24; ++m) {
    auto g = share(FiniteGroup::cyclic(m));
    auto e = motive_of_cover(Coloring::full(g, PrimeSet::all()), "V");
    const ClassId top = g->cyclic_classes().size() - 1;
    EXPECT_EQ(e.terms, (std::map<ClassId, Rational>{{top, Rational(1)}})) << m;
  }
}

TEST(MotiveOfCover, TrivialColoringIsStarRelation) {
  auto c2 = share(FiniteGroup::cyclic(2));
  auto e = motive_of_cover(Coloring::trivial(c2, PrimeSet::all()), "V");
  EXPECT_EQ(e.terms, (std::map<ClassId, Rational>{{0, Rational(1, 2)}}));
  EXPECT_EQ(render(e), "1/2\t[V/{1}]\n");

  for (const auto& [spec, g] : group_fleet(24)) {
    auto t = motive_of_cover(Coloring::trivial(g, PrimeSet::all()), spec);
    EXPECT_EQ(t.terms, (std::map<ClassId, Rational>{{0, Rational(1, static_cast<long long>(g->order()))}})) << spec;
  }
}

TEST(MotiveOfCover, TrivialGroup) {
  auto g = share(FiniteGroup::cyclic(1));
  EXPECT_EQ(motive_of_cover(Coloring::full(g, PrimeSet::all()), "V").terms,
            (std::map<ClassId, Rational>{{0, Rational(1)}}));
}

TEST(MotiveOfCover, IsAdditiveOverDisjointColorings) {
  for (const auto& [spec, g] : group_fleet(24)) {
    const std::size_t n = g->cyclic_classes().size();
    std::vector<ClassId> left, right;
    for (ClassId c = 0; c < n; ++c) (c % 2 ? left : right).push_back(c);
    auto whole = motive_of_cover(Coloring::full(g, PrimeSet::all()), spec);
    auto sum = motive_of_cover(Coloring(g, PrimeSet::all(), left), spec);
    sum += motive_of_cover(Coloring(g, PrimeSet::all(), right), spec);
    EXPECT_TRUE(motive_equal(whole, sum)) << spec;
  }
}

TEST(UniquenessRecursion, Examples) {
  auto c2 = share(FiniteGroup::cyclic(2));
  EXPECT_TRUE(motive_equal(as_expr(uniqueness_recursion(c2, 0, PrimeSet::all(), "V")),
                           expr(c2, {{0, Rational(1, 2)}})));
  EXPECT_TRUE(motive_equal(as_expr(uniqueness_recursion(c2, 1, PrimeSet::all(), "V")),
                           expr(c2, {{0, Rational(-1, 2)}, {1, Rational(1)}})));

  auto s3 = share(FiniteGroup::symmetric(3));
  auto rec = as_expr(uniqueness_recursion(s3, 1, PrimeSet::all(), "V"));
  EXPECT_TRUE(motive_equal(rec, motive_of_cover(Coloring(s3, PrimeSet::all(), {1}), "V")));
}

TEST(UniquenessRecursion, AgreesWithNormalFormOnFleet) {
  for (const auto& [spec, g] : group_fleet(24)) {
    for (ClassId c = 0; c < g->cyclic_classes().size(); ++c) {
      auto rec = as_expr(uniqueness_recursion(g, c, PrimeSet::all(), spec));
      EXPECT_TRUE(motive_equal(rec, motive_of_cover(Coloring(g, PrimeSet::all(), {c}), spec))) << spec << " " << c;
    }
  }
}

TEST(UniquenessRecursion, FinitePrimeSetWhenGroupOrderIsSmooth) {
  auto p = PrimeSet::of({2, 3});
  for (const auto& [spec, g] : group_fleet(24)) {
    if (!p.is_smooth(g->order())) continue;
    for (ClassId c : psub(*g, p)) {
      auto rec = as_expr(uniqueness_recursion(g, c, p, spec));
      EXPECT_TRUE(motive_equal(rec, motive_of_cover(Coloring(g, p, {c}), spec))) << spec;
    }
  }
}

TEST(UniquenessRecursion, ReportsWhereStarIsUnavailable) {
  auto c2 = share(FiniteGroup::cyclic(2));
  auto r = uniqueness_recursion(c2, 0, PrimeSet::of({3}), "V");
  ASSERT_TRUE(std::holds_alternative<StarUnavailable>(r));
  EXPECT_EQ(std::get<StarUnavailable>(r).group_order, 2u);
  EXPECT_EQ(std::get<StarUnavailable>(r).subgroup_order, 1u);

  auto c6 = share(FiniteGroup::cyclic(6));
  auto two = c6->find_class(2, 3);
  ASSERT_TRUE(two);
  EXPECT_TRUE(std::holds_alternative<StarUnavailable>(uniqueness_recursion(c6, *two, PrimeSet::of({2}), "V")));

  auto c4 = share(FiniteGroup::cyclic(4));
  EXPECT_TRUE(motive_equal(as_expr(uniqueness_recursion(c4, 0, PrimeSet::of({2}), "V")),
                           expr(c4, {{0, Rational(1, 4)}})));
  EXPECT_THROW(uniqueness_recursion(c6, *two, PrimeSet::of({3}), "V"), ColoringError);
}

TEST(InductionIdentity, Examples) {
  auto s3 = share(FiniteGroup::symmetric(3));
  auto whole = subgroup_as_group(*s3, whole_group(*s3));
  for (ClassId c = 0; c < 3; ++c) {
    auto r = check_induction_identity(s3, whole, c, PrimeSet::all());
    EXPECT_TRUE(r.hypothesis);
    EXPECT_TRUE(r.identity);
  }

  auto t = subgroup_as_group(*s3, s3->cyclic_subgroup(2));
  auto r = check_induction_identity(s3, t, 1, PrimeSet::all());
  EXPECT_EQ(r.ratio1, Rational(1, 2));
  EXPECT_EQ(r.ratio2, Rational(1, 2));
  EXPECT_TRUE(r.hypothesis);
  EXPECT_TRUE(r.identity);

  auto a3 = subgroup_as_group(*s3, s3->cyclic_subgroup(3));
  auto r2 = check_induction_identity(s3, a3, 0, PrimeSet::all());
  EXPECT_EQ(r2.ratio1, Rational(1, 3));
  EXPECT_EQ(r2.ratio2, Rational(1, 6));
  EXPECT_FALSE(r2.hypothesis);
}

TEST(InductionIdentity, HoldsWheneverRatiosAgree) {
  for (const auto& [spec, g] : group_fleet(24)) {
    for (const auto& h : all_subgroups(*g)) {
      auto emb = subgroup_as_group(*g, h);
      for (ClassId c = 0; c < emb.group->cyclic_classes().size(); ++c) {
        auto r = check_induction_identity(g, emb, c, PrimeSet::all());
        if (r.hypothesis) EXPECT_TRUE(r.identity) << spec;
      }
    }
  }
}

TEST(MotiveEqual, Basics) {
  auto c2 = share(FiniteGroup::cyclic(2));
  auto a = expr(c2, {{0, Rational(1, 2)}});
  EXPECT_TRUE(motive_equal(a, a));
  auto twice = a;
  twice += a;
  EXPECT_TRUE(motive_equal(twice, expr(c2, {{0, Rational(1)}})));
  auto zero = a;
  zero -= a;
  EXPECT_TRUE(zero.terms.empty());
  EXPECT_THROW(motive_equal(a, expr(c2, {{0, Rational(1, 2)}}, "other")), MotiveError);

  MotiveExpr f1{"x", c2, {}, {{"W", Rational(2)}}};
  MotiveExpr f2{"y", c2, {}, {{"W", Rational(2)}}};
  EXPECT_TRUE(motive_equal(f1, f2));
}

TEST(Render, SortsByClassAndNamesSymbols) {
  auto s3 = share(FiniteGroup::symmetric(3));
  auto e = motive_of_cover(Coloring(s3, PrimeSet::all(), {1}), "roots:n=3");
  e.add_free("W", Rational(3));
  EXPECT_EQ(render(e), "-1/2\t[V/{1}]\n1\t[V/Q(order=2,rep=1)]\n3\t[W]\n");
}
