#include "galmot/motive.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "galmot/error.hpp"

namespace galmot {

void MotiveExpr::add_term(ClassId c, const Rational& coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms.try_emplace(c, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms.erase(it);
  }
}

void MotiveExpr::add_free(const std::string& symbol, const Rational& coef) {
  if (coef == 0) return;
  auto [it, inserted] = free_terms.try_emplace(symbol, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) free_terms.erase(it);
  }
}

MotiveExpr& MotiveExpr::operator+=(const MotiveExpr& other) {
  for (const auto& [c, v] : other.terms) add_term(c, v);
  for (const auto& [s, v] : other.free_terms) add_free(s, v);
  return *this;
}

MotiveExpr& MotiveExpr::operator-=(const MotiveExpr& other) {
  for (const auto& [c, v] : other.terms) add_term(c, -v);
  for (const auto& [s, v] : other.free_terms) add_free(s, -v);
  return *this;
}

MotiveExpr& MotiveExpr::operator*=(const Rational& s) {
  if (s == 0) {
    terms.clear();
    free_terms.clear();
    return *this;
  }
  for (auto& [c, v] : terms) v *= s;
  for (auto& [c, v] : free_terms) v *= s;
  return *this;
}

MotiveExpr motive_of_cover(const Coloring& c, const std::string& cover_tag) {
  MotiveExpr e{cover_tag, c.group(), {}, {}};
  const auto coeffs = artin_expand(alpha_from_coloring(c));
  for (ClassId k = 0; k < coeffs.size(); ++k) e.add_term(k, coeffs[k]);
  return e;
}

namespace {

class Recursion {
 public:
  Recursion(const GroupPtr& g, const PrimeSet& p, const std::string& tag) : g_(g), p_(p), tag_(tag) {}

  // mu(X(V -> V/G0, Q^{G0})).
  MotiveExpr run(const Subgroup& g0, const Subgroup& q) {
    auto key = std::make_pair(g0, q);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    MotiveExpr out = step(g0, q);
    memo_.emplace(std::move(key), out);
    return out;
  }

  std::optional<StarUnavailable> failure;

 private:
  MotiveExpr step(const Subgroup& g0, const Subgroup& q) {
    MotiveExpr out{tag_, g_, {}, {}};
    if (failure) return out;
    auto e0 = subgroup_as_group(*g_, g0);
    const Subgroup q_local = e0.restrict(q);
    if (!is_normal(*e0.group, q_local)) {
      // The bijection X(V -> V/N, {Q}) -> X(V -> V/G0, Q^{G0}) has fibers of size 1.
      return run(e0.lift(normalizer(*e0.group, q_local)), q);
    }
    const std::size_t index = g0.order() / q.order();
    if (!p_.is_smooth(index)) {
      failure = StarUnavailable{g0.order(), q.order(),
                                "(*) needs |G0/Q| = " + std::to_string(index) + " to be " + p_.to_string() +
                                    "-smooth"};
      return out;
    }
    // (*) for V/Q -> V/G0: the trivially colored part has motive [V/Q] / |G0/Q|,
    // and it is the union of the strata Q1^{G0} over cyclic Q1 <= Q.
    out.add_term(g_->class_of(q), Rational(1, static_cast<long long>(index)));
    std::set<Subgroup> seen;
    for (const auto& cls : e0.group->cyclic_classes()) {
      const Subgroup q1 = e0.lift(cls.representative);
      if (q1 == q || !q1.is_subset_of(q)) continue;
      if (!seen.insert(q1).second) continue;
      out -= run(g0, q1);
    }
    return out;
  }

  GroupPtr g_;
  PrimeSet p_;
  std::string tag_;
  std::map<std::pair<Subgroup, Subgroup>, MotiveExpr> memo_;
};

}  // namespace

std::variant<MotiveExpr, StarUnavailable> uniqueness_recursion(const GroupPtr& g, ClassId cls, const PrimeSet& p,
                                                               const std::string& cover_tag) {
  const auto& classes = g->cyclic_classes();
  if (cls >= classes.size()) throw MotiveError("class id out of range");
  if (!p.is_smooth(classes[cls].order())) throw ColoringError("class is not permitted for P = " + p.to_string());
  Recursion rec(g, p, cover_tag);
  MotiveExpr out = rec.run(whole_group(*g), classes[cls].representative);
  if (rec.failure) return *rec.failure;
  return out;
}

InductionReport check_induction_identity(const GroupPtr& g2, const EmbeddedSubgroup& g1, ClassId c1,
                                         const PrimeSet& p) {
  const auto& cls1 = g1.group->cyclic_classes().at(c1);
  const ClassId c2 = g2->class_of(g1.lift(cls1.representative));
  const auto& cls2 = g2->cyclic_classes()[c2];
  InductionReport r;
  r.ratio1 = Rational(static_cast<long long>(cls1.size()), static_cast<long long>(g1.group->order()));
  r.ratio2 = Rational(static_cast<long long>(cls2.size()), static_cast<long long>(g2->order()));
  r.hypothesis = r.ratio1 == r.ratio2;
  auto alpha1 = alpha_from_coloring(Coloring(g1.group, p, {c1}));
  auto alpha2 = alpha_from_coloring(Coloring(g2, p, {c2}));
  r.identity = induce(g2, g1, alpha1) == alpha2;
  return r;
}

bool motive_equal(const MotiveExpr& a, const MotiveExpr& b) {
  const bool quotient_terms = !a.terms.empty() || !b.terms.empty();
  if (quotient_terms && a.cover_tag != b.cover_tag) {
    throw MotiveError("cannot compare motives over covers '" + a.cover_tag + "' and '" + b.cover_tag + "'");
  }
  return a.terms == b.terms && a.free_terms == b.free_terms;
}

std::string render(const MotiveExpr& e) {
  std::string out;
  for (const auto& [c, coef] : e.terms) {
    std::string symbol;
    if (c == 0) {
      symbol = "[V/{1}]";
    } else {
      symbol = "[V/Q(order=" + std::to_string(e.group->cyclic_classes()[c].order()) +
               ",rep=" + std::to_string(e.group->class_generator(c)) + ")]";
    }
    out += to_string(coef) + "\t" + symbol + "\n";
  }
  for (const auto& [name, coef] : e.free_terms) out += to_string(coef) + "\t[" + name + "]\n";
  return out;
}

}  // namespace galmot
