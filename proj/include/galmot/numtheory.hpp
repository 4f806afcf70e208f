#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace galmot {

bool is_prime(std::uint64_t n);

/// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Returns (p, k) with n = p^k, or nullopt when n is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n);

/// base^exp, or nullopt on overflow past `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp,
                                         std::uint64_t limit = UINT64_MAX);

std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace galmot
