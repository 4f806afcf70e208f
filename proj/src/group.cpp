#include "galmot/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "galmot/error.hpp"

namespace galmot {

namespace {

std::string cycle_label(const std::vector<Elem>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = perm[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

void check_order(std::size_t order) {
  if (order == 0) throw GroupError("group order must be positive");
  if (order > kMaxGroupOrder) {
    throw GroupError("group order " + std::to_string(order) + " exceeds ceiling " +
                     std::to_string(kMaxGroupOrder));
  }
}

}  // namespace

bool Subgroup::contains(Elem g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::includes(other.members.begin(), other.members.end(), members.begin(), members.end());
}

bool SubgroupClass::contains(const Subgroup& h) const {
  return std::binary_search(orbit.begin(), orbit.end(), h);
}

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Elem> table, std::vector<std::string> labels)
    : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
  check_order(order_);
  if (table_.size() != order_ * order_) throw GroupError("multiplication table has wrong size");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < order_; ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != order_) throw GroupError("label count does not match group order");
  validate();
  compute_structure();
}

void FiniteGroup::validate() const {
  for (Elem e : table_) {
    if (e >= order_) throw GroupError("table entry out of range");
  }
  for (Elem a = 0; a < order_; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) throw GroupError("element 0 is not a two-sided identity");
  }
  for (Elem a = 0; a < order_; ++a) {
    bool found = false;
    for (Elem b = 0; b < order_ && !found; ++b) {
      if (mul(a, b) == 0) {
        if (mul(b, a) != 0) throw GroupError("inverse is not two-sided");
        found = true;
      }
    }
    if (!found) throw GroupError("element " + std::to_string(a) + " has no inverse");
  }
  // Light's associativity test over a greedy generating set: the elements g
  // with (xg)y = x(gy) for all x, y form a closed subset, so checking a set
  // that generates the whole group under right multiplication suffices.
  std::vector<Elem> gens;
  std::vector<bool> reached(order_, false);
  reached[0] = true;
  std::size_t reached_count = 1;
  for (Elem g = 0; g < order_ && reached_count < order_; ++g) {
    if (reached[g]) continue;
    gens.push_back(g);
    std::vector<Elem> frontier;
    for (Elem x = 0; x < order_; ++x) {
      if (reached[x]) frontier.push_back(x);
    }
    while (!frontier.empty()) {
      std::vector<Elem> next;
      for (Elem x : frontier) {
        for (Elem s : gens) {
          Elem y = mul(x, s);
          if (!reached[y]) {
            reached[y] = true;
            ++reached_count;
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  for (Elem g : gens) {
    for (Elem x = 0; x < order_; ++x) {
      const Elem xg = mul(x, g);
      for (Elem y = 0; y < order_; ++y) {
        if (mul(xg, y) != mul(x, mul(g, y))) throw GroupError("multiplication is not associative");
      }
    }
  }
}

void FiniteGroup::compute_structure() {
  inverse_.assign(order_, 0);
  for (Elem a = 0; a < order_; ++a) {
    for (Elem b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        break;
      }
    }
  }

  element_order_.assign(order_, 0);
  std::map<std::vector<Elem>, std::size_t> index;
  std::vector<Elem> generator_of;
  cyclic_of_.assign(order_, 0);
  for (Elem g = 0; g < order_; ++g) {
    std::vector<Elem> members{0};
    for (Elem x = g; x != 0; x = mul(x, g)) members.push_back(x);
    element_order_[g] = members.size();
    std::sort(members.begin(), members.end());
    auto [it, inserted] = index.try_emplace(members, cyclic_.size());
    if (inserted) {
      cyclic_.push_back(Subgroup{members});
      generator_of.push_back(g);
    }
    cyclic_of_[g] = it->second;
  }

  // Conjugacy orbits of cyclic subgroups: conjugating a generator suffices.
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<bool> assigned(cyclic_.size(), false);
  for (std::size_t c = 0; c < cyclic_.size(); ++c) {
    if (assigned[c]) continue;
    std::set<std::size_t> orbit;
    for (Elem x = 0; x < order_; ++x) orbit.insert(cyclic_of_[conjugate(generator_of[c], x)]);
    for (auto id : orbit) assigned[id] = true;
    orbits.emplace_back(orbit.begin(), orbit.end());
  }

  for (auto& ids : orbits) {
    SubgroupClass cls;
    for (auto id : ids) cls.orbit.push_back(cyclic_[id]);
    std::sort(cls.orbit.begin(), cls.orbit.end());
    cls.representative = cls.orbit.front();
    classes_.push_back(std::move(cls));
  }
  std::sort(classes_.begin(), classes_.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.representative < b.representative;
  });

  class_of_cyclic_.assign(cyclic_.size(), 0);
  class_generator_.assign(classes_.size(), 0);
  for (ClassId k = 0; k < classes_.size(); ++k) {
    for (const auto& member : classes_[k].orbit) class_of_cyclic_[index.at(member.members)] = k;
  }
  for (ClassId k = 0; k < classes_.size(); ++k) {
    for (Elem g = 0; g < order_; ++g) {
      if (cyclic_subgroup(g) == classes_[k].representative) {
        class_generator_[k] = g;
        break;
      }
    }
  }
}

Elem FiniteGroup::pow(Elem a, std::uint64_t n) const {
  n %= element_order_[a];
  Elem r = 0;
  Elem base = a;
  while (n) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

ClassId FiniteGroup::class_of(const Subgroup& h) const {
  auto gen = cyclic_generator(*this, h);
  if (!gen) throw GroupError("subgroup is not cyclic");
  return class_of_element(*gen);
}

std::optional<ClassId> FiniteGroup::find_class(std::size_t order, Elem rep_index) const {
  for (ClassId k = 0; k < classes_.size(); ++k) {
    if (classes_[k].order() == order && class_generator_[k] == rep_index) return k;
  }
  return std::nullopt;
}

FiniteGroup FiniteGroup::cyclic(std::size_t m) {
  check_order(m);
  std::vector<Elem> table(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = static_cast<Elem>((a + b) % m);
  }
  return FiniteGroup(m, std::move(table));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  if (n < 1 || n > 5) throw GroupError("symmetric group degree must be in 1..5");
  std::vector<std::vector<Elem>> perms;
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<Elem>, Elem> index;
  for (Elem i = 0; i < perms.size(); ++i) index[perms[i]] = i;

  const std::size_t order = perms.size();
  std::vector<Elem> table(order * order);
  std::vector<Elem> composed(n);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t i = 0; i < n; ++i) composed[i] = perms[a][perms[b][i]];
      table[a * order + b] = index.at(composed);
    }
  }
  std::vector<std::string> labels;
  for (const auto& perm : perms) labels.push_back(cycle_label(perm));
  return FiniteGroup(order, std::move(table), std::move(labels));
}

FiniteGroup FiniteGroup::dihedral(std::size_t m) {
  check_order(2 * m);
  const std::size_t order = 2 * m;
  std::vector<Elem> table(order * order);
  // s^f r^a * s^e r^b = s^(f+e) r^((-1)^e a + b)
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t f = x / m, a = x % m;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t e = y / m, b = y % m;
      const std::size_t rot = ((e ? m - a : a) + b) % m;
      table[x * order + y] = static_cast<Elem>(((f + e) % 2) * m + rot);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t f = x / m, a = x % m;
    std::string l = f ? "s" : "";
    if (a) l += (f ? " r^" : "r^") + std::to_string(a);
    labels.push_back(l.empty() ? "e" : l);
  }
  return FiniteGroup(order, std::move(table), std::move(labels));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  check_order(na * nb);
  const std::size_t order = na * nb;
  std::vector<Elem> table(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    for (std::size_t y = 0; y < order; ++y) {
      const Elem first = a.mul(static_cast<Elem>(x / nb), static_cast<Elem>(y / nb));
      const Elem second = b.mul(static_cast<Elem>(x % nb), static_cast<Elem>(y % nb));
      table[x * order + y] = static_cast<Elem>(first * nb + second);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < order; ++x) {
    labels.push_back("(" + a.label(static_cast<Elem>(x / nb)) + "," +
                     b.label(static_cast<Elem>(x % nb)) + ")");
  }
  return FiniteGroup(order, std::move(table), std::move(labels));
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) { return &a == &b || a == b; }

Homomorphism::Homomorphism(GroupPtr src, GroupPtr tgt, std::vector<Elem> m)
    : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
  if (map.size() != source->order()) throw GroupError("homomorphism map has wrong size");
  for (Elem e : map) {
    if (e >= target->order()) throw GroupError("homomorphism image out of range");
  }
  for (Elem a = 0; a < source->order(); ++a) {
    for (Elem b = 0; b < source->order(); ++b) {
      if (map[source->mul(a, b)] != target->mul(map[a], map[b])) {
        throw GroupError("map is not a homomorphism");
      }
    }
  }
}

bool Homomorphism::is_surjective() const {
  std::vector<bool> hit(target->order(), false);
  for (Elem e : map) hit[e] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

Subgroup Homomorphism::kernel() const {
  Subgroup k;
  for (Elem g = 0; g < map.size(); ++g) {
    if (map[g] == 0) k.members.push_back(g);
  }
  return k;
}

Subgroup Homomorphism::image(const Subgroup& h) const {
  std::set<Elem> img;
  for (Elem g : h.members) img.insert(map[g]);
  return Subgroup{{img.begin(), img.end()}};
}

std::optional<Elem> EmbeddedSubgroup::from_parent(Elem g) const {
  auto it = std::lower_bound(to_parent.begin(), to_parent.end(), g);
  if (it == to_parent.end() || *it != g) return std::nullopt;
  return static_cast<Elem>(it - to_parent.begin());
}

Subgroup EmbeddedSubgroup::lift(const Subgroup& h) const {
  Subgroup out;
  for (Elem g : h.members) out.members.push_back(to_parent[g]);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

Subgroup EmbeddedSubgroup::restrict(const Subgroup& h) const {
  Subgroup out;
  for (Elem g : h.members) {
    auto local = from_parent(g);
    if (!local) throw GroupError("subgroup is not contained in the embedded subgroup");
    out.members.push_back(*local);
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (h.members.empty() || h.members.front() != 0) return false;
  if (!std::is_sorted(h.members.begin(), h.members.end())) return false;
  if (std::adjacent_find(h.members.begin(), h.members.end()) != h.members.end()) return false;
  if (h.members.back() >= g.order()) return false;
  for (Elem a : h.members) {
    for (Elem b : h.members) {
      if (!h.contains(g.mul(a, b))) return false;
    }
  }
  return true;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup h{std::move(members)};
  if (!is_subgroup(g, h)) throw GroupError("element set is not a subgroup");
  return h;
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& generators) {
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> members{0};
  in[0] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Elem s : generators) {
      Elem y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

Subgroup trivial_subgroup() { return Subgroup{{0}}; }

Subgroup whole_group(const FiniteGroup& g) {
  Subgroup h;
  h.members.resize(g.order());
  std::iota(h.members.begin(), h.members.end(), 0);
  return h;
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Elem x) {
  Subgroup out;
  out.members.reserve(h.order());
  for (Elem a : h.members) out.members.push_back(g.conjugate(a, x));
  std::sort(out.members.begin(), out.members.end());
  return out;
}

std::optional<Elem> cyclic_generator(const FiniteGroup& g, const Subgroup& h) {
  for (Elem a : h.members) {
    if (a < g.order() && g.element_order(a) == h.order() && g.cyclic_subgroup(a) == h) return a;
  }
  return std::nullopt;
}

EmbeddedSubgroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
  if (!is_subgroup(g, h)) throw GroupError("not a subgroup");
  const std::size_t n = h.order();
  EmbeddedSubgroup out;
  out.to_parent = h.members;
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(g.label(h.members[i]));
    for (std::size_t j = 0; j < n; ++j) {
      const Elem prod = g.mul(h.members[i], h.members[j]);
      table[i * n + j] = static_cast<Elem>(
          std::lower_bound(h.members.begin(), h.members.end(), prod) - h.members.begin());
    }
  }
  out.group = share(FiniteGroup(n, std::move(table), std::move(labels)));
  return out;
}

const std::vector<SubgroupClass>& cyclic_subgroup_classes(const FiniteGroup& g) {
  return g.cyclic_classes();
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  if (!is_subgroup(g, h)) throw GroupError("normalizer: argument is not a subgroup");
  Subgroup out;
  for (Elem x = 0; x < g.order(); ++x) {
    if (conjugate(g, h, x) == h) out.members.push_back(x);
  }
  return out;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem a : h.members) {
      if (!h.contains(g.conjugate(a, x))) return false;
    }
  }
  return true;
}

Homomorphism quotient(const GroupPtr& g, const Subgroup& n) {
  if (!is_subgroup(*g, n)) throw GroupError("quotient: argument is not a subgroup");
  if (!is_normal(*g, n)) throw GroupError("quotient: subgroup is not normal");
  const std::size_t order = g->order();
  constexpr Elem kUnassigned = static_cast<Elem>(-1);
  std::vector<Elem> coset_of(order, kUnassigned);
  std::vector<Elem> reps;
  for (Elem x = 0; x < order; ++x) {
    if (coset_of[x] != kUnassigned) continue;
    const auto id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem a : n.members) coset_of[g->mul(x, a)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> table(m * m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(g->label(reps[i]) + "N");
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = coset_of[g->mul(reps[i], reps[j])];
  }
  auto q = share(FiniteGroup(m, std::move(table), std::move(labels)));
  return Homomorphism(g, std::move(q), std::move(coset_of));
}

Subgroup power_subgroup(const FiniteGroup& g, const Subgroup& q, std::uint64_t n) {
  if (n == 0) throw GroupError("power_subgroup: exponent must be positive");
  if (!cyclic_generator(g, q)) throw GroupError("power_subgroup: subgroup is not cyclic");
  std::set<Elem> out;
  for (Elem a : q.members) out.insert(g.pow(a, n));
  return Subgroup{{out.begin(), out.end()}};
}

Subgroup ppart(const FiniteGroup& g, const Subgroup& q, const PrimeSet& p) {
  auto gen = cyclic_generator(g, q);
  if (!gen) throw GroupError("ppart: subgroup is not cyclic");
  const std::uint64_t part = p.smooth_part(q.order());
  return g.cyclic_subgroup(g.pow(*gen, q.order() / part));
}

std::vector<ClassId> psub(const FiniteGroup& g, const PrimeSet& p) {
  std::vector<ClassId> out;
  for (ClassId k = 0; k < g.cyclic_classes().size(); ++k) {
    if (p.is_smooth(g.cyclic_classes()[k].order())) out.push_back(k);
  }
  return out;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> found;
  std::vector<Elem> cyclic_gens;
  for (const auto& cls : g.cyclic_classes()) {
    for (const auto& h : cls.orbit) {
      found.insert(h);
      cyclic_gens.push_back(*cyclic_generator(g, h));
    }
  }
  std::vector<Subgroup> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& h : frontier) {
      for (Elem c : cyclic_gens) {
        if (h.contains(c)) continue;
        std::vector<Elem> gens = h.members;
        gens.push_back(c);
        Subgroup joined = generated_subgroup(g, gens);
        if (found.insert(joined).second) next.push_back(std::move(joined));
      }
    }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

namespace {

class GroupSpecParser {
 public:
  explicit GroupSpecParser(const std::string& text) : text_(text) {}

  FiniteGroup parse() {
    FiniteGroup g = parse_spec();
    if (pos_ != text_.size()) throw ParseError("trailing characters in group spec", pos_);
    return g;
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
    if (!consume(token)) throw ParseError("expected '" + token + "' in group spec", pos_);
  }

  std::size_t number() {
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > 1'000'000) throw ParseError("number too large in group spec", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number in group spec", start);
    if (value == 0) throw ParseError("group parameter must be positive", start);
    return value;
  }

  FiniteGroup parse_spec() {
    const std::size_t start = pos_;
    if (consume("cyclic:")) return FiniteGroup::cyclic(number());
    if (consume("sym:")) {
      const std::size_t at = pos_;
      const std::size_t n = number();
      if (n > 5) throw ParseError("sym degree must be at most 5", at);
      return FiniteGroup::symmetric(n);
    }
    if (consume("dihedral:")) return FiniteGroup::dihedral(number());
    if (consume("prod(")) {
      FiniteGroup a = parse_spec();
      expect(",");
      FiniteGroup b = parse_spec();
      expect(")");
      return FiniteGroup::product(a, b);
    }
    throw ParseError("unknown group constructor", start);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

FiniteGroup parse_group_spec(const std::string& text) { return GroupSpecParser(text).parse(); }

std::vector<NamedGroup> group_fleet(std::size_t max_order) {
  std::vector<std::string> specs;
  for (std::size_t m = 1; m <= max_order; ++m) specs.push_back("cyclic:" + std::to_string(m));
  for (std::size_t n = 3, fact = 6; n <= 5 && fact <= max_order; ++n, fact *= n) {
    specs.push_back("sym:" + std::to_string(n));
  }
  for (std::size_t m = 2; 2 * m <= max_order; ++m) specs.push_back("dihedral:" + std::to_string(m));

  struct Factor {
    std::string spec;
    std::size_t order;
  };
  std::vector<Factor> factors;
  for (std::size_t m = 2; m <= 12; ++m) factors.push_back({"cyclic:" + std::to_string(m), m});
  for (std::size_t m = 2; m <= 6; ++m) factors.push_back({"dihedral:" + std::to_string(m), 2 * m});
  factors.push_back({"sym:3", 6});
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i; j < factors.size(); ++j) {
      if (factors[i].order * factors[j].order <= max_order) {
        specs.push_back("prod(" + factors[i].spec + "," + factors[j].spec + ")");
      }
    }
  }
  for (std::size_t m : {2, 4, 6}) {
    if (4 * m <= max_order) {
      specs.push_back("prod(cyclic:2,prod(cyclic:2,cyclic:" + std::to_string(m) + "))");
    }
  }

  std::vector<NamedGroup> fleet;
  for (const auto& spec : specs) fleet.push_back({spec, share(parse_group_spec(spec))});
  return fleet;
}

}  // namespace galmot
