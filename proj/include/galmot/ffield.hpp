#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace galmot {

/// Largest field size the library will construct.
inline constexpr std::uint64_t kFieldCeiling = std::uint64_t{1} << 21;

/// A field element, identified by its packed index: the coefficients over the
/// base field in the polynomial basis, written in base |base|, constant term
/// least significant. Index 0 is zero and index 1 is one.
using FqElem = std::uint32_t;

class Fq;
using FieldPtr = std::shared_ptr<const Fq>;

/// F_{p^k}, built either as the prime field or as a simple extension of a base
/// field by the least monic irreducible polynomial over that base.
///
/// Elements of the base field (and of every field below it in the tower) keep
/// their index inside the extension, so embedding is the identity on indices.
/// Multiplication goes through log/exp tables over a primitive element.
class Fq {
 public:
  std::uint64_t characteristic() const { return p_; }
  /// Degree over the prime field.
  unsigned degree() const { return k_; }
  std::uint64_t size() const { return size_; }
  /// nullptr for a prime field.
  const FieldPtr& base() const { return base_; }
  std::uint64_t base_size() const { return base_ ? base_->size() : size_; }
  /// Degree over base(); 1 for a prime field.
  unsigned relative_degree() const { return rel_degree_; }
  /// Monic modulus over the base, constant term first (x for a prime field).
  const std::vector<FqElem>& modulus() const { return modulus_; }

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint64_t e = std::uint64_t{log_[a]} + log_[b];
    if (e >= size_ - 1) e -= size_ - 1;
    return exp_[e];
  }
  /// Throws FieldError for zero.
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, std::uint64_t n) const;

  FqElem primitive_element() const { return exp_.size() > 1 ? exp_[1] : 1; }
  /// Discrete log to the primitive element; a must be nonzero.
  std::uint32_t log(FqElem a) const { return log_[a]; }
  FqElem exp(std::uint64_t e) const { return exp_[e % (size_ - 1)]; }

  /// x -> x^q where q is the size of a subfield (q = p^j, j | degree()).
  FqElem relative_frobenius(FqElem x, std::uint64_t q) const;
  /// Elements fixed by x -> x^s, in index order; s must be a subfield size.
  std::vector<FqElem> subfield(std::uint64_t s) const;

  /// Coefficients over base(), constant term first, relative_degree() entries.
  std::vector<FqElem> coefficients(FqElem a) const;
  FqElem from_coefficients(const std::vector<FqElem>& coeffs) const;
  /// `3` in a prime field, otherwise a polynomial in x over the base.
  std::string to_string(FqElem a) const;

  Fq(std::uint64_t p);
  Fq(FieldPtr base, unsigned d);

 private:
  std::vector<FqElem> poly_mulmod(const std::vector<FqElem>& a, const std::vector<FqElem>& b) const;
  FqElem slow_mul(FqElem a, FqElem b) const;
  FqElem slow_pow(FqElem a, std::uint64_t n) const;
  void build_tables();
  void check_subfield_size(std::uint64_t q) const;

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t size_;
  FieldPtr base_;
  unsigned rel_degree_;
  std::vector<FqElem> modulus_;
  std::vector<FqElem> exp_;
  std::vector<std::uint32_t> log_;
};

/// The prime field F_p; cached.
FieldPtr prime_field(std::uint64_t p);
/// F_{p^k} as a simple extension of F_p; cached. Throws FieldError when p is
/// not prime and CeilingExceeded past kFieldCeiling.
FieldPtr make_field(std::uint64_t p, unsigned k);
/// The field of size |base|^d built directly over `base`; cached.
FieldPtr extend(const FieldPtr& base, unsigned d);
/// F_q for a prime power q.
FieldPtr field_of_size(std::uint64_t q);

}  // namespace galmot
