#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galmot/prime_set.hpp"

namespace galmot {

using Elem = std::uint32_t;
/// Index into FiniteGroup::cyclic_classes().
using ClassId = std::size_t;

inline constexpr std::size_t kMaxGroupOrder = 1024;

/// A subgroup as the sorted set of its member indices. The parent group is
/// always passed alongside; member index 0 is the identity.
struct Subgroup {
  std::vector<Elem> members;

  std::size_t order() const { return members.size(); }
  bool contains(Elem g) const;
  bool is_subset_of(const Subgroup& other) const;

  auto operator<=>(const Subgroup&) const = default;
};

/// A conjugacy class of subgroups, with the lexicographically least member as
/// its canonical representative.
struct SubgroupClass {
  Subgroup representative;
  std::vector<Subgroup> orbit;  // sorted lexicographically

  std::size_t order() const { return representative.order(); }
  std::size_t size() const { return orbit.size(); }
  bool contains(const Subgroup& h) const;
};

/// A finite group stored as its full multiplication table.
///
/// Element 0 is the identity. Validation at construction checks the identity,
/// two-sided inverses and associativity (Light's test over a generating set).
/// The cyclic-subgroup structure (every <g>, and the conjugacy classes of these
/// subgroups sorted by (order, canonical representative)) is precomputed, so
/// the object is immutable after construction.
class FiniteGroup {
 public:
  /// Explicit table, row-major: table[a * order + b] = a*b.
  FiniteGroup(std::size_t order, std::vector<Elem> table, std::vector<std::string> labels = {});

  static FiniteGroup cyclic(std::size_t m);
  /// S_n, n <= 5; elements are the permutations of {0..n-1} in lexicographic
  /// order of their one-line notation; (a*b)(i) = a(b(i)).
  static FiniteGroup symmetric(std::size_t n);
  /// Order 2m; index k is r^k, index m+k is s r^k, with s r s = r^{-1}.
  static FiniteGroup dihedral(std::size_t m);
  /// Index of (a, b) is a * |B| + b.
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  std::size_t order() const { return order_; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem pow(Elem a, std::uint64_t n) const;
  /// x g x^{-1}
  Elem conjugate(Elem g, Elem x) const { return mul(mul(x, g), inverse_[x]); }
  std::size_t element_order(Elem a) const { return element_order_[a]; }
  const std::string& label(Elem a) const { return labels_[a]; }

  /// <g> as a sorted subgroup.
  const Subgroup& cyclic_subgroup(Elem g) const { return cyclic_[cyclic_of_[g]]; }
  const std::vector<SubgroupClass>& cyclic_classes() const { return classes_; }
  /// Class of <g>.
  ClassId class_of_element(Elem g) const { return class_of_cyclic_[cyclic_of_[g]]; }
  /// Class of a cyclic subgroup; throws GroupError if h is not one.
  ClassId class_of(const Subgroup& h) const;
  /// Least element index generating the class representative (the "rep index").
  Elem class_generator(ClassId c) const { return class_generator_[c]; }
  /// ClassId of the class with this order and rep index, if any.
  std::optional<ClassId> find_class(std::size_t order, Elem rep_index) const;

  bool operator==(const FiniteGroup& other) const {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  void validate() const;
  void compute_structure();

  std::size_t order_;
  std::vector<Elem> table_;
  std::vector<std::string> labels_;
  std::vector<Elem> inverse_;
  std::vector<std::size_t> element_order_;
  std::vector<Subgroup> cyclic_;
  std::vector<std::size_t> cyclic_of_;
  std::vector<ClassId> class_of_cyclic_;
  std::vector<SubgroupClass> classes_;
  std::vector<Elem> class_generator_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// True if the pointers agree or the tables are identical.
bool same_group(const FiniteGroup& a, const FiniteGroup& b);

/// A group homomorphism, checked exhaustively at construction.
struct Homomorphism {
  GroupPtr source;
  GroupPtr target;
  std::vector<Elem> map;

  Homomorphism(GroupPtr source, GroupPtr target, std::vector<Elem> map);
  Elem operator()(Elem g) const { return map[g]; }
  bool is_surjective() const;
  Subgroup kernel() const;
  /// Image of a subgroup of the source.
  Subgroup image(const Subgroup& h) const;
};

/// A subgroup H <= G re-presented as a group in its own right; element i of
/// `group` is H.members[i] in the parent.
struct EmbeddedSubgroup {
  GroupPtr group;
  std::vector<Elem> to_parent;

  /// Index of a parent element inside `group`, or nullopt.
  std::optional<Elem> from_parent(Elem g) const;
  /// Subgroup of `group` mapped back to parent indices.
  Subgroup lift(const Subgroup& h) const;
  /// Parent subgroup (contained in H) expressed in `group` indices.
  Subgroup restrict(const Subgroup& h) const;
};

// Construction helpers.

/// Validates closure and returns the subgroup; throws GroupError otherwise.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> members);
bool is_subgroup(const FiniteGroup& g, const Subgroup& h);
Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& generators);
Subgroup trivial_subgroup();
Subgroup whole_group(const FiniteGroup& g);
/// x H x^{-1}
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Elem x);
std::optional<Elem> cyclic_generator(const FiniteGroup& g, const Subgroup& h);
EmbeddedSubgroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h);

// Operations.

const std::vector<SubgroupClass>& cyclic_subgroup_classes(const FiniteGroup& g);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
/// Cosets numbered by their least element; throws GroupError if n is not normal.
Homomorphism quotient(const GroupPtr& g, const Subgroup& n);
/// {q^n : q in Q}; Q must be cyclic.
Subgroup power_subgroup(const FiniteGroup& g, const Subgroup& q, std::uint64_t n);
/// Largest subgroup of cyclic Q with P-smooth order.
Subgroup ppart(const FiniteGroup& g, const Subgroup& q, const PrimeSet& p);
/// Classes of cyclic subgroups with P-smooth order, ascending ClassId.
std::vector<ClassId> psub(const FiniteGroup& g, const PrimeSet& p);
/// Every subgroup of g, sorted. Intended for small groups (tests, suites).
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);

/// Parses the group-spec grammar: cyclic:m, sym:n, dihedral:m, prod(<spec>,<spec>).
FiniteGroup parse_group_spec(const std::string& text);

/// The deterministic fleet of constructor-built groups of order <= max_order,
/// each with its group-spec string.
struct NamedGroup {
  std::string spec;
  GroupPtr group;
};
std::vector<NamedGroup> group_fleet(std::size_t max_order);

}  // namespace galmot
