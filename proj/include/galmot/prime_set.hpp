#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace galmot {

/// The set P of primes with Gal = prod_{p in P} Z_p. `all()` is Gal = Ẑ.
class PrimeSet {
 public:
  static PrimeSet all();
  /// Throws GroupError if any entry is not prime. Sorted and deduplicated.
  static PrimeSet of(std::vector<std::uint64_t> primes);
  static PrimeSet none() { return of({}); }

  bool is_all() const { return all_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }

  bool contains(std::uint64_t p) const;
  /// Every prime factor of n lies in P.
  bool is_smooth(std::uint64_t n) const;
  /// Largest divisor of n all of whose prime factors lie in P.
  std::uint64_t smooth_part(std::uint64_t n) const;
  bool is_subset_of(const PrimeSet& other) const;

  /// `all` or `{2,3}`.
  std::string to_string() const;

  bool operator==(const PrimeSet&) const = default;

 private:
  PrimeSet(bool all, std::vector<std::uint64_t> primes) : all_(all), primes_(std::move(primes)) {}
  bool all_;
  std::vector<std::uint64_t> primes_;
};

}  // namespace galmot
