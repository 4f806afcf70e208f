#include "galmot/prime_set.hpp"

#include <algorithm>

#include "galmot/error.hpp"
#include "galmot/numtheory.hpp"

namespace galmot {

PrimeSet PrimeSet::all() { return PrimeSet(true, {}); }

PrimeSet PrimeSet::of(std::vector<std::uint64_t> primes) {
  for (auto p : primes) {
    if (!is_prime(p)) throw GroupError("prime set entry " + std::to_string(p) + " is not prime");
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return PrimeSet(false, std::move(primes));
}

bool PrimeSet::contains(std::uint64_t p) const {
  return all_ || std::binary_search(primes_.begin(), primes_.end(), p);
}

bool PrimeSet::is_smooth(std::uint64_t n) const { return smooth_part(n) == n; }

std::uint64_t PrimeSet::smooth_part(std::uint64_t n) const {
  if (all_) return n;
  std::uint64_t part = 1;
  for (auto p : primes_) {
    while (n % p == 0) {
      n /= p;
      part *= p;
    }
  }
  return part;
}

bool PrimeSet::is_subset_of(const PrimeSet& other) const {
  if (other.all_) return true;
  if (all_) return false;
  return std::includes(other.primes_.begin(), other.primes_.end(), primes_.begin(), primes_.end());
}

std::string PrimeSet::to_string() const {
  if (all_) return "all";
  std::string s = "{";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(primes_[i]);
  }
  return s + "}";
}

}  // namespace galmot
