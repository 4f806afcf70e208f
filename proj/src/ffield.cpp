#include "galmot/ffield.hpp"

#include <map>
#include <mutex>

#include "galmot/error.hpp"
#include "galmot/numtheory.hpp"

namespace galmot {

namespace {

using Poly = std::vector<FqElem>;  // over a base field, constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic h.
Poly poly_rem_monic(const Fq& f, Poly a, const Poly& h) {
  const std::size_t dh = h.size() - 1;
  trim(a);
  while (a.size() > dh) {
    const FqElem lead = a.back();
    const std::size_t shift = a.size() - 1 - dh;
    for (std::size_t i = 0; i < dh; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(lead, h[i]));
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly monic_from_index(std::uint64_t index, std::size_t degree, std::uint64_t base_size) {
  Poly h(degree + 1, 0);
  for (std::size_t i = 0; i < degree; ++i) {
    h[i] = static_cast<FqElem>(index % base_size);
    index /= base_size;
  }
  h[degree] = 1;
  return h;
}

bool irreducible_by_trial_division(const Fq& base, const Poly& f) {
  const std::size_t d = f.size() - 1;
  for (std::size_t e = 1; e <= d / 2; ++e) {
    const std::uint64_t count = *checked_pow(base.size(), static_cast<unsigned>(e));
    for (std::uint64_t j = 0; j < count; ++j) {
      if (poly_rem_monic(base, f, monic_from_index(j, e, base.size())).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Fq::Fq(std::uint64_t p) : p_(p), k_(1), size_(p), rel_degree_(1), modulus_{0, 1} {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (p > kFieldCeiling) throw CeilingExceeded("field size exceeds ceiling", 1);
  build_tables();
}

Fq::Fq(FieldPtr base, unsigned d)
    : p_(base->characteristic()), k_(base->degree() * d), base_(std::move(base)), rel_degree_(d) {
  if (d == 0) throw FieldError("extension degree must be positive");
  auto size = checked_pow(base_->size(), d, kFieldCeiling);
  if (!size) {
    throw CeilingExceeded("field of size " + std::to_string(base_->size()) + "^" + std::to_string(d) +
                              " exceeds ceiling " + std::to_string(kFieldCeiling),
                          d);
  }
  size_ = *size;
  for (std::uint64_t j = 0; j < size_; ++j) {
    Poly f = monic_from_index(j, d, base_->size());
    if (irreducible_by_trial_division(*base_, f)) {
      modulus_ = std::move(f);
      break;
    }
  }
  if (modulus_.empty()) throw FieldError("no irreducible polynomial found");
  build_tables();
}

std::vector<FqElem> Fq::poly_mulmod(const Poly& a, const Poly& b) const {
  const Fq& f = *base_;
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
  }
  Poly r = poly_rem_monic(f, std::move(prod), modulus_);
  r.resize(rel_degree_, 0);
  return r;
}

FqElem Fq::slow_mul(FqElem a, FqElem b) const {
  if (!base_) return static_cast<FqElem>(std::uint64_t{a} * b % p_);
  return from_coefficients(poly_mulmod(coefficients(a), coefficients(b)));
}

FqElem Fq::slow_pow(FqElem a, std::uint64_t n) const {
  FqElem r = 1;
  while (n) {
    if (n & 1) r = slow_mul(r, a);
    a = slow_mul(a, a);
    n >>= 1;
  }
  return r;
}

void Fq::build_tables() {
  const std::uint64_t order = size_ - 1;
  const auto factors = prime_factors(order);
  FqElem gen = 0;
  for (FqElem c = 1; c < size_; ++c) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(c, order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = c;
      break;
    }
  }
  if (gen == 0) throw FieldError("no primitive element found");
  exp_.assign(order, 0);
  log_.assign(size_, 0);
  FqElem x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, gen);
  }
  if (x != 1) throw FieldError("primitive element has wrong order");
}

FqElem Fq::add(FqElem a, FqElem b) const {
  if (p_ == 2) return a ^ b;
  if (k_ == 1) return static_cast<FqElem>((std::uint64_t{a} + b) % p_);
  FqElem r = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    r += static_cast<FqElem>((a % p_ + b % p_) % p_) * place;
    a /= static_cast<FqElem>(p_);
    b /= static_cast<FqElem>(p_);
    place *= static_cast<FqElem>(p_);
  }
  return r;
}

FqElem Fq::neg(FqElem a) const {
  if (p_ == 2) return a;
  if (k_ == 1) return a == 0 ? 0 : static_cast<FqElem>(p_ - a);
  FqElem r = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    r += static_cast<FqElem>((p_ - a % p_) % p_) * place;
    a /= static_cast<FqElem>(p_);
    place *= static_cast<FqElem>(p_);
  }
  return r;
}

FqElem Fq::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem Fq::inv(FqElem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
}

FqElem Fq::pow(FqElem a, std::uint64_t n) const {
  if (n == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = size_ - 1;
  const unsigned __int128 e = static_cast<unsigned __int128>(log_[a]) * (n % order);
  return exp_[static_cast<std::uint64_t>(e % order)];
}

void Fq::check_subfield_size(std::uint64_t q) const {
  auto pp = prime_power(q);
  if (!pp || pp->first != p_ || k_ % pp->second != 0) {
    throw FieldError(std::to_string(q) + " is not the size of a subfield of F_" + std::to_string(size_));
  }
}

FqElem Fq::relative_frobenius(FqElem x, std::uint64_t q) const {
  check_subfield_size(q);
  return pow(x, q);
}

std::vector<FqElem> Fq::subfield(std::uint64_t s) const {
  check_subfield_size(s);
  std::vector<FqElem> out;
  for (FqElem x = 0; x < size_; ++x) {
    if (pow(x, s) == x) out.push_back(x);
  }
  return out;
}

std::vector<FqElem> Fq::coefficients(FqElem a) const {
  const std::uint64_t b = base_size();
  std::vector<FqElem> c(rel_degree_);
  for (unsigned i = 0; i < rel_degree_; ++i) {
    c[i] = static_cast<FqElem>(a % b);
    a = static_cast<FqElem>(a / b);
  }
  return c;
}

FqElem Fq::from_coefficients(const std::vector<FqElem>& coeffs) const {
  const std::uint64_t b = base_size();
  std::uint64_t r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * b + coeffs[i];
  return static_cast<FqElem>(r);
}

std::string Fq::to_string(FqElem a) const {
  if (!base_) return std::to_string(a);
  if (a == 0) return "0";
  const auto c = coefficients(a);
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string coeff = base_->to_string(c[i]);
    if (base_->base()) coeff = "(" + coeff + ")";
    if (i == 0) {
      out += coeff;
    } else {
      if (c[i] != 1) out += coeff + "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out;
}

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FieldPtr prime_field(std::uint64_t p) {
  static std::map<std::uint64_t, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Fq>(p);
  cache.emplace(p, f);
  return f;
}

FieldPtr extend(const FieldPtr& base, unsigned d) {
  if (d == 0) throw FieldError("extension degree must be positive");
  if (d == 1) return base;
  if (!checked_pow(base->size(), d, kFieldCeiling)) {
    throw CeilingExceeded("field of size " + std::to_string(base->size()) + "^" + std::to_string(d) +
                              " exceeds ceiling " + std::to_string(kFieldCeiling),
                          d);
  }
  static std::map<std::pair<const Fq*, unsigned>, FieldPtr> cache;
  // Construction happens under the lock; it is short and avoids duplicate tables.
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto key = std::make_pair(base.get(), d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Fq>(base, d);
  cache.emplace(key, f);
  return f;
}

FieldPtr make_field(std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw FieldError("field degree must be positive");
  if (!checked_pow(p, k, kFieldCeiling)) {
    throw CeilingExceeded("field of size " + std::to_string(p) + "^" + std::to_string(k) +
                              " exceeds ceiling " + std::to_string(kFieldCeiling),
                          k);
  }
  return extend(prime_field(p), k);
}

FieldPtr field_of_size(std::uint64_t q) {
  auto pp = prime_power(q);
  if (!pp) throw FieldError(std::to_string(q) + " is not a prime power");
  return make_field(pp->first, pp->second);
}

}  // namespace galmot
