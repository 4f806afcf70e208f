#pragma once

#include <map>
#include <string>
#include <variant>

#include "galmot/class_function.hpp"
#include "galmot/coloring.hpp"
#include "galmot/group.hpp"
#include "galmot/rational.hpp"

namespace galmot {

/// A formal Q-linear combination of quotient symbols [V/Q] over one cover,
/// keyed by the G-conjugacy class of Q, plus free symbols such as [W] or
/// [W x G] that are evaluated by registered counters. [V] is the trivial-class
/// term. Zero coefficients are never stored.
struct MotiveExpr {
  std::string cover_tag;
  GroupPtr group;
  std::map<ClassId, Rational> terms;
  std::map<std::string, Rational> free_terms;

  void add_term(ClassId c, const Rational& coef);
  void add_free(const std::string& symbol, const Rational& coef);
  MotiveExpr& operator+=(const MotiveExpr& other);
  MotiveExpr& operator-=(const MotiveExpr& other);
  MotiveExpr& operator*=(const Rational& s);
};

/// mu(X(V -> W, C)): the Artin expansion of alpha_C rendered as sum c_Q [V/Q].
MotiveExpr motive_of_cover(const Coloring& c, const std::string& cover_tag);

/// Why the recursion could not determine a term: (*) was needed for the
/// quotient G_0/Q but its order is not P-smooth.
struct StarUnavailable {
  std::size_t group_order;     // |G_0|
  std::size_t subgroup_order;  // |Q|
  std::string reason;
};

/// The expression for mu(X(V -> W, Q^G)) obtained by running the uniqueness
/// argument forward: pass to the normalizer while Q is not normal, then use (*)
/// on V/Q -> V/G_0 and subtract the contributions of smaller cyclic subgroups.
std::variant<MotiveExpr, StarUnavailable> uniqueness_recursion(const GroupPtr& g, ClassId cls, const PrimeSet& p,
                                                               const std::string& cover_tag);

struct InductionReport {
  Rational ratio1;  // |C_1| / |G_1|
  Rational ratio2;  // |C_2| / |G_2|
  bool hypothesis = false;  // ratio1 == ratio2
  bool identity = false;    // Ind_{G_1}^{G_2} alpha_{C_1} == alpha_{C_2}
};

/// C_1 is the single class `c1` of g1 (a class of g1.group), C_2 = C_1^{G_2}.
InductionReport check_induction_identity(const GroupPtr& g2, const EmbeddedSubgroup& g1, ClassId c1,
                                         const PrimeSet& p);

/// Coefficientwise equality. Throws MotiveError when the cover tags differ and
/// either side has quotient terms.
bool motive_equal(const MotiveExpr& a, const MotiveExpr& b);

/// Lines `coef<TAB>[V/Q(order=m,rep=i)]` sorted by class, the trivial class as
/// `[V/{1}]`, then free symbols as `coef<TAB>[name]`.
std::string render(const MotiveExpr& e);

}  // namespace galmot
