#pragma once

#include <string>
#include <vector>

#include "galmot/coloring.hpp"
#include "galmot/group.hpp"
#include "galmot/rational.hpp"

namespace galmot {

/// A Q-central function: one rational value per conjugacy class of cyclic
/// subgroups, evaluated at g through the class of <g>.
class QCentralFunction {
 public:
  /// values[c] for ClassId c; throws GroupMismatch on a size mismatch.
  QCentralFunction(GroupPtr group, std::vector<Rational> values);
  static QCentralFunction constant(GroupPtr group, const Rational& value);

  const GroupPtr& group() const { return group_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at_class(ClassId c) const { return values_[c]; }
  const Rational& operator()(Elem g) const { return values_[group_->class_of_element(g)]; }

  QCentralFunction& operator+=(const QCentralFunction& other);
  QCentralFunction& operator-=(const QCentralFunction& other);
  QCentralFunction& operator*=(const Rational& s);
  friend QCentralFunction operator+(QCentralFunction a, const QCentralFunction& b) { return a += b; }
  friend QCentralFunction operator-(QCentralFunction a, const QCentralFunction& b) { return a -= b; }
  friend QCentralFunction operator*(const Rational& s, QCentralFunction a) { return a *= s; }

  bool operator==(const QCentralFunction& other) const;

 private:
  void check_same_group(const QCentralFunction& other) const;

  GroupPtr group_;
  std::vector<Rational> values_;
};

/// alpha(g) = 1 if ppart(<g>, P) lies in C, else 0; P is the coloring's prime set.
QCentralFunction alpha_from_coloring(const Coloring& c);

/// |G| at the identity, 0 elsewhere.
QCentralFunction regular_character(const GroupPtr& g);

/// alpha o pi for alpha on pi.target.
QCentralFunction pullback(const QCentralFunction& alpha, const Homomorphism& pi);

/// Ind_H^G alpha(g) = (1/|H|) sum over x in G with x g x^{-1} in H of alpha(x g x^{-1}),
/// where alpha lives on h.group. Q-centrality of the result is verified.
QCentralFunction induce(const GroupPtr& g, const EmbeddedSubgroup& h, const QCentralFunction& alpha);
QCentralFunction induce(const GroupPtr& g, const Subgroup& h, const QCentralFunction& alpha);

/// g -> number of left cosets xH with g x H = x H.
QCentralFunction permutation_character(const GroupPtr& g, const Subgroup& h);

/// Coefficients c_Q, indexed by ClassId, with alpha = sum_Q c_Q * permutation_character(G, Q).
std::vector<Rational> artin_expand(const QCentralFunction& alpha);

/// sum_Q c_Q * permutation_character(G, Q).
QCentralFunction artin_recombine(const GroupPtr& g, const std::vector<Rational>& coefficients);

/// TSV rows `order<TAB>rep<TAB>value` with a `#` header.
std::string to_tsv(const QCentralFunction& alpha);

}  // namespace galmot
