#include "galmot/coloring.hpp"

#include <algorithm>
#include <cctype>

#include "galmot/error.hpp"

namespace galmot {

Coloring::Coloring(GroupPtr group, PrimeSet primes, std::vector<ClassId> classes)
    : group_(std::move(group)), primes_(std::move(primes)), classes_(std::move(classes)) {
  std::sort(classes_.begin(), classes_.end());
  classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
  const auto& all = group_->cyclic_classes();
  for (ClassId c : classes_) {
    if (c >= all.size()) throw ColoringError("class id " + std::to_string(c) + " out of range");
    if (!primes_.is_smooth(all[c].order())) {
      throw ColoringError("class of order " + std::to_string(all[c].order()) + " is not permitted for P = " +
                          primes_.to_string());
    }
  }
}

Coloring Coloring::empty(GroupPtr group, PrimeSet primes) {
  return Coloring(std::move(group), std::move(primes), {});
}

Coloring Coloring::trivial(GroupPtr group, PrimeSet primes) {
  return Coloring(std::move(group), std::move(primes), {0});
}

Coloring Coloring::full(GroupPtr group, PrimeSet primes) {
  auto classes = psub(*group, primes);
  return Coloring(std::move(group), std::move(primes), std::move(classes));
}

bool Coloring::contains(ClassId c) const { return std::binary_search(classes_.begin(), classes_.end(), c); }

std::string Coloring::to_spec() const {
  std::string out = "classes=[";
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(group_->cyclic_classes()[classes_[i]].order()) + "@" +
           std::to_string(group_->class_generator(classes_[i]));
  }
  return out + "]";
}

bool Coloring::operator==(const Coloring& other) const {
  return same_group(*group_, *other.group_) && primes_ == other.primes_ && classes_ == other.classes_;
}

void IotaSpec::validate() const {
  if (n == 0) throw ColoringError("iota exponent must be positive");
  if (!p2.is_subset_of(p1)) {
    throw ColoringError("iota needs p2 within p1, got p1 = " + p1.to_string() + ", p2 = " + p2.to_string());
  }
}

IotaSpec compose(const IotaSpec& outer, const IotaSpec& inner) {
  outer.validate();
  inner.validate();
  if (!(inner.p1 == outer.p2)) throw ColoringError("iota specs are not composable");
  return IotaSpec{outer.p1, inner.p2, outer.n * inner.n};
}

Coloring refine_coloring(const Homomorphism& pi, const Coloring& c) {
  if (!same_group(*pi.target, *c.group())) throw GroupMismatch("coloring does not live on the target of pi");
  if (!pi.is_surjective()) throw GroupError("refine_coloring needs a surjection");
  std::vector<ClassId> out;
  for (ClassId k : psub(*pi.source, c.prime_set())) {
    const auto& rep = pi.source->cyclic_classes()[k].representative;
    if (c.contains_subgroup(pi.image(rep))) out.push_back(k);
  }
  return Coloring(pi.source, c.prime_set(), std::move(out));
}

Coloring restrict_coloring(const Coloring& c, const EmbeddedSubgroup& h) {
  std::vector<ClassId> out;
  const auto& local = h.group->cyclic_classes();
  for (ClassId k = 0; k < local.size(); ++k) {
    if (c.contains_subgroup(h.lift(local[k].representative))) out.push_back(k);
  }
  return Coloring(h.group, c.prime_set(), std::move(out));
}

Coloring theta_coloring(const IotaSpec& iota, const Coloring& c2) {
  iota.validate();
  if (!(c2.prime_set() == iota.p2)) {
    throw ColoringError("coloring prime set " + c2.prime_set().to_string() + " does not match p2 = " +
                        iota.p2.to_string());
  }
  const FiniteGroup& g = *c2.group();
  std::vector<ClassId> out;
  for (ClassId k : psub(g, iota.p1)) {
    const auto& q = g.cyclic_classes()[k].representative;
    if (c2.contains_subgroup(ppart(g, power_subgroup(g, q, iota.n), iota.p2))) out.push_back(k);
  }
  return Coloring(c2.group(), iota.p1, std::move(out));
}

namespace {

class ColoringSpecParser {
 public:
  ColoringSpecParser(const std::string& text, const GroupPtr& group, const PrimeSet& primes)
      : text_(text), group_(group), primes_(primes) {}

  Coloring parse() {
    if (text_ == "trivial") return Coloring::trivial(group_, primes_);
    if (text_ == "full") return Coloring::full(group_, primes_);
    if (text_ == "empty") return Coloring::empty(group_, primes_);
    if (consume("order=")) {
      const std::size_t m = number();
      end();
      std::vector<ClassId> out;
      for (ClassId k : psub(*group_, primes_)) {
        if (group_->cyclic_classes()[k].order() == m) out.push_back(k);
      }
      if (out.empty()) throw ColoringError("no permitted class of order " + std::to_string(m));
      return Coloring(group_, primes_, std::move(out));
    }
    if (consume("classes=[")) {
      std::vector<ClassId> out;
      if (!consume("]")) {
        do {
          const std::size_t at = pos_;
          const std::size_t order = number();
          expect("@");
          const std::size_t rep = number();
          auto k = group_->find_class(order, static_cast<Elem>(rep));
          if (!k) {
            throw ColoringError("no class " + std::to_string(order) + "@" + std::to_string(rep) +
                                " (at position " + std::to_string(at) + ")");
          }
          out.push_back(*k);
        } while (consume(","));
        expect("]");
      }
      end();
      return Coloring(group_, primes_, std::move(out));
    }
    throw ParseError("unknown coloring spec", 0);
  }

 private:
  bool consume(const std::string& token) {
    if (text_.compare(pos_, token.size(), token) == 0) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& token) {
    if (!consume(token)) throw ParseError("expected '" + token + "' in coloring spec", pos_);
  }

  void end() {
    if (pos_ != text_.size()) throw ParseError("trailing characters in coloring spec", pos_);
  }

  std::size_t number() {
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > 1'000'000) throw ParseError("number too large in coloring spec", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number in coloring spec", start);
    return value;
  }

  const std::string& text_;
  const GroupPtr& group_;
  const PrimeSet& primes_;
  std::size_t pos_ = 0;
};

}  // namespace

Coloring parse_coloring_spec(const std::string& text, const GroupPtr& group, const PrimeSet& primes) {
  return ColoringSpecParser(text, group, primes).parse();
}

}  // namespace galmot
