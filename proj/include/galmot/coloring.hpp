#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "galmot/group.hpp"
#include "galmot/prime_set.hpp"

namespace galmot {

/// A conjugation-closed set of permitted cyclic subgroups of G, stored as the
/// ClassIds of their conjugacy classes.
class Coloring {
 public:
  /// Throws ColoringError if a class id is out of range or not permitted for P.
  Coloring(GroupPtr group, PrimeSet primes, std::vector<ClassId> classes);

  static Coloring empty(GroupPtr group, PrimeSet primes);
  /// Only the trivial subgroup.
  static Coloring trivial(GroupPtr group, PrimeSet primes);
  /// psub(G, P).
  static Coloring full(GroupPtr group, PrimeSet primes);

  const GroupPtr& group() const { return group_; }
  const PrimeSet& prime_set() const { return primes_; }
  /// Ascending.
  const std::vector<ClassId>& classes() const { return classes_; }
  bool contains(ClassId c) const;
  /// For a cyclic subgroup of the group.
  bool contains_subgroup(const Subgroup& q) const { return contains(group_->class_of(q)); }

  /// `classes=[<order>@<rep-index>,...]`
  std::string to_spec() const;

  bool operator==(const Coloring& other) const;

 private:
  GroupPtr group_;
  PrimeSet primes_;
  std::vector<ClassId> classes_;
};

/// An injection Gal_2 -> Gal_1 of the form (factor inclusion) then sigma -> sigma^n,
/// with Gal_i = prod_{p in p_i} Z_p.
struct IotaSpec {
  PrimeSet p1;
  PrimeSet p2;
  std::uint64_t n = 1;

  /// Throws ColoringError unless p2 is contained in p1 and n >= 1.
  void validate() const;
};

/// iota followed by inner: Gal_3 -> Gal_2 -> Gal_1 where inner maps Gal_3 into Gal_2.
IotaSpec compose(const IotaSpec& outer, const IotaSpec& inner);

/// C' = {Q in psub(G', P) : pi(Q) in C} for a surjection pi: G' -> G.
Coloring refine_coloring(const Homomorphism& pi, const Coloring& c);

/// Classes of C lying inside H, re-classified under H-conjugacy; the result is
/// a coloring of h.group.
Coloring restrict_coloring(const Coloring& c, const EmbeddedSubgroup& h);

/// C_1 = {Q in psub(G, p1) : ppart(Q^n, p2) in C_2}.
Coloring theta_coloring(const IotaSpec& iota, const Coloring& c2);

/// Parses `classes=[<order>@<rep-index>,...]`, `trivial`, `full`, `empty`, or
/// `order=<m>` (every permitted class of order m). Throws ParseError on
/// malformed text and ColoringError when a named class does not exist.
Coloring parse_coloring_spec(const std::string& text, const GroupPtr& group, const PrimeSet& primes);

}  // namespace galmot
