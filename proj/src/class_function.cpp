#include "galmot/class_function.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "galmot/error.hpp"

namespace galmot {

QCentralFunction::QCentralFunction(GroupPtr group, std::vector<Rational> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_->cyclic_classes().size()) {
    throw GroupMismatch("class function has " + std::to_string(values_.size()) + " values, group has " +
                        std::to_string(group_->cyclic_classes().size()) + " classes");
  }
}

QCentralFunction QCentralFunction::constant(GroupPtr group, const Rational& value) {
  const std::size_t n = group->cyclic_classes().size();
  return QCentralFunction(std::move(group), std::vector<Rational>(n, value));
}

void QCentralFunction::check_same_group(const QCentralFunction& other) const {
  if (!same_group(*group_, *other.group_)) throw GroupMismatch("class functions live on different groups");
}

QCentralFunction& QCentralFunction::operator+=(const QCentralFunction& other) {
  check_same_group(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

QCentralFunction& QCentralFunction::operator-=(const QCentralFunction& other) {
  check_same_group(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

QCentralFunction& QCentralFunction::operator*=(const Rational& s) {
  for (auto& v : values_) v *= s;
  return *this;
}

bool QCentralFunction::operator==(const QCentralFunction& other) const {
  return same_group(*group_, *other.group_) && values_ == other.values_;
}

QCentralFunction alpha_from_coloring(const Coloring& c) {
  const FiniteGroup& g = *c.group();
  std::vector<Rational> values;
  for (const auto& cls : g.cyclic_classes()) {
    values.emplace_back(c.contains_subgroup(ppart(g, cls.representative, c.prime_set())) ? 1 : 0);
  }
  return QCentralFunction(c.group(), std::move(values));
}

QCentralFunction regular_character(const GroupPtr& g) {
  std::vector<Rational> values(g->cyclic_classes().size(), Rational(0));
  values[0] = Rational(g->order());
  return QCentralFunction(g, std::move(values));
}

QCentralFunction pullback(const QCentralFunction& alpha, const Homomorphism& pi) {
  if (!same_group(*alpha.group(), *pi.target)) throw GroupMismatch("pullback: alpha does not live on G/H");
  std::vector<Rational> values;
  for (ClassId c = 0; c < pi.source->cyclic_classes().size(); ++c) {
    values.push_back(alpha(pi(pi.source->class_generator(c))));
  }
  return QCentralFunction(pi.source, std::move(values));
}

QCentralFunction induce(const GroupPtr& g, const EmbeddedSubgroup& h, const QCentralFunction& alpha) {
  if (!same_group(*alpha.group(), *h.group)) throw GroupMismatch("induce: alpha does not live on H");
  const Rational scale(1, static_cast<long long>(h.group->order()));
  std::vector<Rational> by_element(g->order());
  for (Elem a = 0; a < g->order(); ++a) {
    Rational sum = 0;
    for (Elem x = 0; x < g->order(); ++x) {
      if (auto local = h.from_parent(g->conjugate(a, x))) sum += alpha(*local);
    }
    by_element[a] = sum * scale;
  }
  std::vector<Rational> values;
  for (ClassId c = 0; c < g->cyclic_classes().size(); ++c) values.push_back(by_element[g->class_generator(c)]);
  for (Elem a = 0; a < g->order(); ++a) {
    if (by_element[a] != values[g->class_of_element(a)]) {
      throw std::logic_error("induced function is not Q-central");
    }
  }
  return QCentralFunction(g, std::move(values));
}

QCentralFunction induce(const GroupPtr& g, const Subgroup& h, const QCentralFunction& alpha) {
  return induce(g, subgroup_as_group(*g, h), alpha);
}

QCentralFunction permutation_character(const GroupPtr& g, const Subgroup& h) {
  if (!is_subgroup(*g, h)) throw GroupError("permutation_character: not a subgroup");
  constexpr Elem kUnassigned = static_cast<Elem>(-1);
  std::vector<Elem> coset_of(g->order(), kUnassigned);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g->order(); ++x) {
    if (coset_of[x] != kUnassigned) continue;
    for (Elem a : h.members) coset_of[g->mul(x, a)] = static_cast<Elem>(reps.size());
    reps.push_back(x);
  }
  std::vector<Rational> values;
  for (ClassId c = 0; c < g->cyclic_classes().size(); ++c) {
    const Elem a = g->class_generator(c);
    long long fixed = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) fixed += coset_of[g->mul(a, reps[i])] == i;
    values.emplace_back(fixed);
  }
  return QCentralFunction(g, std::move(values));
}

std::vector<Rational> artin_expand(const QCentralFunction& alpha) {
  const GroupPtr& g = alpha.group();
  const auto& classes = g->cyclic_classes();
  const std::size_t n = classes.size();
  std::vector<QCentralFunction> basis;
  for (const auto& cls : classes) basis.push_back(permutation_character(g, cls.representative));

  std::vector<ClassId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](ClassId a, ClassId b) { return classes[a].order() > classes[b].order(); });

  std::vector<Rational> coeffs(n, Rational(0));
  std::vector<bool> solved(n, false);
  for (ClassId c : order) {
    Rational residual = alpha.at_class(c);
    for (ClassId other = 0; other < n; ++other) {
      if (other == c) continue;
      const Rational& entry = basis[other].at_class(c);
      if (entry == 0) continue;
      if (!solved[other]) throw std::logic_error("Artin system is not triangular");
      residual -= coeffs[other] * entry;
    }
    const Rational& pivot = basis[c].at_class(c);
    if (pivot == 0) throw std::logic_error("zero pivot in Artin expansion");
    coeffs[c] = residual / pivot;
    solved[c] = true;
  }
  return coeffs;
}

QCentralFunction artin_recombine(const GroupPtr& g, const std::vector<Rational>& coefficients) {
  auto out = QCentralFunction::constant(g, 0);
  for (ClassId c = 0; c < coefficients.size(); ++c) {
    if (coefficients[c] == 0) continue;
    out += coefficients[c] * permutation_character(g, g->cyclic_classes()[c].representative);
  }
  return out;
}

std::string to_tsv(const QCentralFunction& alpha) {
  std::string out = "# order\trep\tvalue\n";
  const auto& g = *alpha.group();
  for (ClassId c = 0; c < g.cyclic_classes().size(); ++c) {
    out += std::to_string(g.cyclic_classes()[c].order()) + "\t" + std::to_string(g.class_generator(c)) + "\t" +
           to_string(alpha.at_class(c)) + "\n";
  }
  return out;
}

}  // namespace galmot
