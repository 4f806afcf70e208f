#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galmot/class_function.hpp"
#include "galmot/coloring.hpp"
#include "galmot/ffield.hpp"
#include "galmot/group.hpp"
#include "galmot/motive.hpp"
#include "galmot/rational.hpp"

namespace galmot {

/// Largest number of candidate tuples a single enumeration may visit.
inline constexpr std::uint64_t kCandidateBudget = 10'000'000;

class ConcreteCover;
using CoverPtr = std::shared_ptr<const ConcreteCover>;

/// An explicit Galois cover V -> W.
///
///  - Kummer(m): V = {(x, y) : y^m = x, x != 0}, W = {x != 0}, group Z/m with
///    k acting by y -> zeta^k y, where zeta = g^((q-1)/m) for the primitive
///    element g of F_q. Good q: q = 1 mod m.
///  - Roots(n), n <= 4: V = ordered tuples of distinct roots, W = monic
///    squarefree degree-n polynomials (coefficients c_0..c_{n-1} of
///    x^n + sum c_i x^i), group S_n acting on the right by (v.g)_i = v_{g(i)}.
///    Good q: characteristic > n.
///  - Product(A, B): componentwise, group A x B.
class ConcreteCover {
 public:
  enum class Family { Kummer, Roots, Product };

  static CoverPtr kummer(std::size_t m);
  static CoverPtr roots(std::size_t n);
  static CoverPtr product(CoverPtr a, CoverPtr b);

  Family family() const { return family_; }
  /// m for Kummer, n for Roots, 0 for products.
  std::size_t parameter() const { return parameter_; }
  const CoverPtr& left() const { return left_; }
  const CoverPtr& right() const { return right_; }
  const GroupPtr& group() const { return group_; }
  /// Canonical cover-spec string, e.g. `prod(kummer:m=2,roots:n=3)`.
  const std::string& tag() const { return tag_; }
  /// Number of coordinates of a point of W.
  std::size_t w_dimension() const;

  /// Why q is not a good prime power for this cover, or nullopt when it is.
  std::optional<std::string> bad_reason(std::uint64_t q) const;
  bool good(std::uint64_t q) const { return !bad_reason(q); }

 private:
  ConcreteCover() = default;

  Family family_ = Family::Kummer;
  std::size_t parameter_ = 0;
  CoverPtr left_, right_;
  GroupPtr group_;
  std::string tag_;
};

/// Parses `kummer:m=<m>`, `roots:n=<n>`, `prod(<spec>,<spec>)`; throws ParseError.
CoverPtr parse_cover_spec(const std::string& text);

struct FiberHistogram {
  /// fiber size -> number of points w_2 of X_2 with that fiber size
  std::map<std::uint64_t, std::uint64_t> sizes;
  /// |G_2||C_1| / (|C_2||G_1|)
  Rational predicted;
  std::uint64_t x2_points = 0;

  bool constant_and_predicted() const;
};

struct DensityRow {
  ClassId cls;
  std::size_t order;
  Elem rep;
  std::uint64_t count;
  Rational observed;
  Rational predicted;
};

struct DensityTable {
  /// Set when q is not good for the cover; rows are then empty.
  std::optional<std::string> refused;
  std::uint64_t total = 0;
  std::vector<DensityRow> rows;
};

namespace detail {
class CoverNode;
}

/// A cover over F_q with memoized counts. Not thread-safe; use one per worker.
///
/// Only P = all is realizable here: every coloring passed in must use the
/// prime set `all`, since Frobenius topologically generates the whole of Ẑ.
class CoverOverField {
 public:
  /// Throws BadPrime when q is not good for the cover.
  CoverOverField(CoverPtr cover, std::uint64_t q);
  ~CoverOverField();
  CoverOverField(CoverOverField&&) noexcept;
  CoverOverField& operator=(CoverOverField&&) noexcept;

  const ConcreteCover& cover() const { return *cover_; }
  const GroupPtr& group() const { return cover_->group(); }
  std::uint64_t q() const { return q_; }

  /// Class of <g> where Frob_q(v) = v.g for a preimage v of the etale point w.
  ClassId artin_symbol(const std::vector<FqElem>& w);
  /// The element g itself, for Frob_{q^n} and the canonical preimage of w.
  Elem frobenius_element(const std::vector<FqElem>& w, std::uint64_t n = 1);
  bool is_etale(const std::vector<FqElem>& w);

  /// Number of etale points of W(F_q) per Artin class.
  std::vector<std::uint64_t> artin_table();
  std::uint64_t count_definable(const Coloring& c);
  /// #W(F_q) on the etale locus.
  std::uint64_t etale_count();

  /// #{v in V(F_{q^ord g}) : Frob_q(v) = v.g}.
  std::uint64_t fixed_count(Elem g);
  /// (1/|G|) sum_g alpha(g) fixed_count(g); terms with alpha(g) = 0 are skipped.
  Rational weighted_count(const QCentralFunction& alpha);
  /// (1/|Q|) sum_{g in Q} fixed_count(g).
  std::uint64_t quotient_count(const Subgroup& q);

  /// #{w in W(F_q) etale : Artin class of w over F_{q^n} lies in C2}.
  std::uint64_t theta_direct_count(const Coloring& c2, std::uint64_t n);

  FiberHistogram fiber_histogram(const EmbeddedSubgroup& g1, ClassId c1);
  /// Dec(v) for each v in the fiber over w, tallied.
  std::map<Subgroup, std::uint64_t> decomposition_counts(const std::vector<FqElem>& w);

  DensityTable density_table();

 private:
  std::vector<std::uint64_t> frobenius_histogram(std::uint64_t n);
  void require_all(const Coloring& c) const;

  CoverPtr cover_;
  std::uint64_t q_;
  std::unique_ptr<detail::CoverNode> root_;
  std::map<std::uint64_t, std::vector<std::uint64_t>> histograms_;
  std::vector<std::optional<std::uint64_t>> fixed_;
};

/// Sum of coefficient * quotient_count over the quotient symbols, plus free
/// symbols evaluated by `counters`. `V` and `W` are always registered.
using FreeCounters = std::map<std::string, std::function<Rational()>>;
Rational realize_count(const MotiveExpr& e, CoverOverField& cf, const FreeCounters& counters = {});

/// Density table for a possibly bad q: refuses with a reason instead of throwing.
DensityTable density_table(const CoverPtr& cover, std::uint64_t q);

}  // namespace galmot
