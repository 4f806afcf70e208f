#include "galmot/covers.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_map>

#include "galmot/error.hpp"
#include "galmot/numtheory.hpp"

namespace galmot {

// ---------------------------------------------------------------------------
// ConcreteCover

CoverPtr ConcreteCover::kummer(std::size_t m) {
  if (m == 0) throw GeometryError("Kummer cover needs m >= 1");
  auto c = std::shared_ptr<ConcreteCover>(new ConcreteCover());
  c->family_ = Family::Kummer;
  c->parameter_ = m;
  c->group_ = share(FiniteGroup::cyclic(m));
  c->tag_ = "kummer:m=" + std::to_string(m);
  return c;
}

CoverPtr ConcreteCover::roots(std::size_t n) {
  if (n == 0 || n > 4) throw GeometryError("roots cover needs 1 <= n <= 4");
  auto c = std::shared_ptr<ConcreteCover>(new ConcreteCover());
  c->family_ = Family::Roots;
  c->parameter_ = n;
  c->group_ = share(FiniteGroup::symmetric(n));
  c->tag_ = "roots:n=" + std::to_string(n);
  return c;
}

CoverPtr ConcreteCover::product(CoverPtr a, CoverPtr b) {
  auto c = std::shared_ptr<ConcreteCover>(new ConcreteCover());
  c->family_ = Family::Product;
  c->group_ = share(FiniteGroup::product(*a->group(), *b->group()));
  c->tag_ = "prod(" + a->tag() + "," + b->tag() + ")";
  c->left_ = std::move(a);
  c->right_ = std::move(b);
  return c;
}

std::size_t ConcreteCover::w_dimension() const {
  switch (family_) {
    case Family::Kummer:
      return 1;
    case Family::Roots:
      return parameter_;
    case Family::Product:
      return left_->w_dimension() + right_->w_dimension();
  }
  return 0;
}

std::optional<std::string> ConcreteCover::bad_reason(std::uint64_t q) const {
  auto pp = prime_power(q);
  if (!pp) return std::to_string(q) + " is not a prime power";
  switch (family_) {
    case Family::Kummer:
      if (q % parameter_ != 1 % parameter_) {
        return "q = " + std::to_string(q) + " is not 1 mod " + std::to_string(parameter_) +
               ", so the m-th roots of unity are not in F_q";
      }
      return std::nullopt;
    case Family::Roots:
      if (pp->first <= parameter_) {
        return "characteristic " + std::to_string(pp->first) + " divides " + std::to_string(parameter_) + "!";
      }
      return std::nullopt;
    case Family::Product:
      if (auto r = left_->bad_reason(q)) return r;
      return right_->bad_reason(q);
  }
  return std::nullopt;
}

namespace {

class CoverSpecParser {
 public:
  explicit CoverSpecParser(const std::string& text) : text_(text) {}

  CoverPtr parse() {
    CoverPtr c = parse_spec();
    if (pos_ != text_.size()) throw ParseError("trailing characters in cover spec", pos_);
    return c;
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
    if (!consume(token)) throw ParseError("expected '" + token + "' in cover spec", pos_);
  }

  std::size_t number(std::size_t lo, std::size_t hi) {
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > 1'000'000) throw ParseError("number too large in cover spec", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number in cover spec", start);
    if (value < lo || value > hi) {
      throw ParseError("value " + std::to_string(value) + " outside " + std::to_string(lo) + ".." +
                           std::to_string(hi),
                       start);
    }
    return value;
  }

  CoverPtr parse_spec() {
    const std::size_t start = pos_;
    if (consume("kummer:m=")) return ConcreteCover::kummer(number(1, kMaxGroupOrder));
    if (consume("roots:n=")) return ConcreteCover::roots(number(1, 4));
    if (consume("prod(")) {
      CoverPtr a = parse_spec();
      expect(",");
      CoverPtr b = parse_spec();
      expect(")");
      if (a->group()->order() * b->group()->order() > kMaxGroupOrder) {
        throw ParseError("product group exceeds order ceiling", start);
      }
      return ConcreteCover::product(std::move(a), std::move(b));
    }
    throw ParseError("unknown cover family", start);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

CoverPtr parse_cover_spec(const std::string& text) { return CoverSpecParser(text).parse(); }

// ---------------------------------------------------------------------------
// Polynomials over F_q, constant term first, no trailing zeros.

namespace {

using Poly = std::vector<FqElem>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

FqElem eval(const Fq& f, const Poly& a, FqElem x) {
  FqElem r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
  return r;
}

Poly rem(const Fq& f, Poly a, const Poly& b) {
  trim(a);
  const FqElem lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const FqElem factor = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(factor, b[i]));
    trim(a);
  }
  return a;
}

Poly gcd(const Fq& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly derivative(const Fq& f, const Poly& a) {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) {
    // i * a_i with i reduced into the prime field, whose elements keep their index.
    d.push_back(f.mul(static_cast<FqElem>(i % f.characteristic()), a[i]));
  }
  trim(d);
  return d;
}

// a / (x - r) for a root r.
Poly deflate(const Fq& f, const Poly& a, FqElem r) {
  Poly out(a.size() - 1);
  FqElem carry = 0;
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    carry = f.add(f.mul(carry, r), a[i + 1]);
    out[i] = carry;
  }
  return out;
}

Poly mul(const Fq& f, const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  return out;
}

// Packs the non-leading coefficients of a monic polynomial over F_q.
std::uint64_t pack(const Poly& monic, std::uint64_t q) {
  std::uint64_t key = 0;
  for (std::size_t i = monic.size() - 1; i-- > 0;) key = key * q + monic[i];
  return key;
}

std::uint64_t pow_u64(std::uint64_t base, std::uint64_t exp) {
  auto r = checked_pow(base, static_cast<unsigned>(exp));
  if (!r) throw FieldError("exponent overflow");
  return *r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Nodes: one per cover family, over a fixed F_q.

namespace detail {

struct Fiber {
  FieldPtr field;
  std::vector<std::vector<FqElem>> points;  // points[h] = v.h
};

class CoverNode {
 public:
  CoverNode(std::uint64_t q, FieldPtr f) : q_(q), f_(std::move(f)) {}
  virtual ~CoverNode() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::size_t group_order() const = 0;
  virtual bool is_etale(const FqElem* w) = 0;
  virtual void for_each_etale(const std::function<void(const std::vector<FqElem>&)>& fn) = 0;
  virtual std::vector<std::uint64_t> frobenius_histogram(std::uint64_t n) = 0;
  virtual Elem frobenius_element(const FqElem* w, std::uint64_t n) = 0;
  virtual std::uint64_t fixed_count(Elem g) = 0;
  virtual Fiber fiber(const FqElem* w) = 0;

 protected:
  std::uint64_t q_;
  FieldPtr f_;
};

namespace {

void check_budget(std::uint64_t candidates, const std::string& what) {
  if (candidates > kCandidateBudget) {
    throw BudgetExceeded(what + " needs " + std::to_string(candidates) + " candidates, budget is " +
                         std::to_string(kCandidateBudget));
  }
}

class KummerNode : public CoverNode {
 public:
  KummerNode(std::size_t m, std::uint64_t q, FieldPtr f) : CoverNode(q, std::move(f)), m_(m) {
    const FqElem zeta = f_->exp((q_ - 1) / m_);
    FqElem z = 1;
    for (std::size_t k = 0; k < m_; ++k, z = f_->mul(z, zeta)) zeta_pow_.push_back(z);
  }

  std::size_t dimension() const override { return 1; }
  std::size_t group_order() const override { return m_; }

  bool is_etale(const FqElem* w) override { return w[0] != 0 && w[0] < q_; }

  void for_each_etale(const std::function<void(const std::vector<FqElem>&)>& fn) override {
    std::vector<FqElem> w(1);
    for (FqElem x = 1; x < q_; ++x) {
      w[0] = x;
      fn(w);
    }
  }

  // For any y with y^m = x: Frob_{q^n}(y) / y = y^(q^n - 1) = x^((q^n - 1)/m), a
  // power of zeta computable inside F_q.
  Elem frobenius_element(const FqElem* w, std::uint64_t n) override {
    if (!is_etale(w)) throw GeometryError("point is outside the etale locus x != 0");
    const std::uint64_t qn = pow_u64(q_, n);
    const FqElem ratio = f_->pow(w[0], ((qn - 1) / m_) % (q_ - 1));
    for (std::size_t k = 0; k < m_; ++k) {
      if (zeta_pow_[k] == ratio) return static_cast<Elem>(k);
    }
    throw GeometryError("Frobenius ratio is not an m-th root of unity");
  }

  std::vector<std::uint64_t> frobenius_histogram(std::uint64_t n) override {
    std::vector<std::uint64_t> hist(m_, 0);
    for (FqElem x = 1; x < q_; ++x) ++hist[frobenius_element(&x, n)];
    return hist;
  }

  std::uint64_t fixed_count(Elem k) override {
    const std::size_t e = m_ / std::gcd<std::size_t>(m_, k);
    FieldPtr ext = extend(f_, static_cast<unsigned>(e));
    check_budget(ext->size(), "Kummer fixed-point count over F_" + std::to_string(ext->size()));
    const FqElem zk = zeta_pow_[k];
    std::uint64_t count = 0;
    for (FqElem y = 1; y < ext->size(); ++y) {
      if (ext->pow(y, q_) != ext->mul(zk, y)) continue;
      const FqElem x = ext->pow(y, m_);
      if (x != 0 && ext->pow(x, q_) == x) ++count;
    }
    return count;
  }

  Fiber fiber(const FqElem* w) override {
    if (!is_etale(w)) throw GeometryError("point is outside the etale locus x != 0");
    for (std::size_t d = 1; d <= m_; ++d) {
      if (m_ % d) continue;
      FieldPtr ext = extend(f_, static_cast<unsigned>(d));
      const std::uint32_t log_x = ext->log(w[0]);
      if (log_x % m_) continue;
      const FqElem y = ext->exp(log_x / m_);
      Fiber fib{ext, {}};
      for (std::size_t k = 0; k < m_; ++k) fib.points.push_back({w[0], ext->mul(zeta_pow_[k], y)});
      return fib;
    }
    throw GeometryError("no preimage within degree bound");
  }

 private:
  std::size_t m_;
  std::vector<FqElem> zeta_pow_;
};

class RootsNode : public CoverNode {
 public:
  RootsNode(std::size_t n, std::uint64_t q, FieldPtr f) : CoverNode(q, std::move(f)), n_(n) {
    std::vector<int> p(n_);
    std::iota(p.begin(), p.end(), 0);
    do {
      perm_index_[p] = static_cast<Elem>(perms_.size());
      perms_.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  std::size_t dimension() const override { return n_; }
  std::size_t group_order() const override { return perms_.size(); }

  bool is_etale(const FqElem* w) override {
    Poly f = monic(w);
    return degree(gcd(*f_, f, derivative(*f_, f))) == 0;
  }

  void for_each_etale(const std::function<void(const std::vector<FqElem>&)>& fn) override {
    const std::uint64_t total = pow_u64(q_, n_);
    check_budget(total, "enumerating W(F_" + std::to_string(q_) + ") for roots:n=" + std::to_string(n_));
    std::vector<FqElem> w(n_, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
      std::uint64_t rest = t;
      for (std::size_t i = 0; i < n_; ++i, rest /= q_) w[i] = static_cast<FqElem>(rest % q_);
      if (is_etale(w.data())) fn(w);
    }
  }

  Elem frobenius_element(const FqElem* w, std::uint64_t n) override {
    auto [ext, v] = preimage(w);
    std::vector<int> g(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      FqElem image = v[i];
      for (std::uint64_t j = 0; j < n; ++j) image = ext->pow(image, q_);
      auto it = std::find(v.begin(), v.end(), image);
      if (it == v.end()) throw GeometryError("Frobenius does not permute the roots");
      g[i] = static_cast<int>(it - v.begin());
    }
    return perm_index_.at(g);
  }

  std::vector<std::uint64_t> frobenius_histogram(std::uint64_t n) override {
    std::vector<std::uint64_t> hist(perms_.size(), 0);
    for_each_etale([&](const std::vector<FqElem>& w) { ++hist[frobenius_element(w.data(), n)]; });
    return hist;
  }

  std::uint64_t fixed_count(Elem g) override {
    const auto& perm = perms_[g];
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<bool> seen(n_, false);
    std::size_t e = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (seen[i]) continue;
      std::vector<std::size_t> cycle;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
        seen[j] = true;
        cycle.push_back(j);
      }
      e = lcm_u64(e, cycle.size());
      cycles.push_back(std::move(cycle));
    }
    FieldPtr ext = extend(f_, static_cast<unsigned>(e));
    // A cycle (i, g(i), g^2(i), ...) forces v_{g^j(i)} = v_i^{q^j} with v_i in F_{q^len}.
    std::vector<std::vector<FqElem>> choices;
    std::uint64_t candidates = 1;
    for (const auto& cycle : cycles) {
      choices.push_back(ext->subfield(pow_u64(q_, cycle.size())));
      candidates *= choices.back().size();
    }
    check_budget(candidates, "roots fixed-point count");
    std::vector<std::size_t> odometer(cycles.size(), 0);
    std::vector<FqElem> v(n_);
    std::uint64_t count = 0;
    for (std::uint64_t t = 0; t < candidates; ++t) {
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        FqElem x = choices[c][odometer[c]];
        for (std::size_t idx : cycles[c]) {
          v[idx] = x;
          x = ext->pow(x, q_);
        }
      }
      bool ok = true;
      for (std::size_t i = 0; i < n_ && ok; ++i) {
        if (ext->pow(v[i], q_) != v[static_cast<std::size_t>(perm[i])]) ok = false;
        for (std::size_t j = i + 1; j < n_ && ok; ++j) ok = v[i] != v[j];
      }
      count += ok;
      for (std::size_t c = 0; c < odometer.size(); ++c) {
        if (++odometer[c] < choices[c].size()) break;
        odometer[c] = 0;
      }
    }
    return count;
  }

  Fiber fiber(const FqElem* w) override {
    auto [ext, v] = preimage(w);
    Fiber fib{ext, {}};
    for (const auto& perm : perms_) {
      std::vector<FqElem> point(n_);
      for (std::size_t i = 0; i < n_; ++i) point[i] = v[static_cast<std::size_t>(perm[i])];
      fib.points.push_back(std::move(point));
    }
    return fib;
  }

 private:
  Poly monic(const FqElem* w) const {
    Poly f(w, w + n_);
    f.push_back(1);
    return f;
  }

  // One root, in F_{q^e}, of each monic irreducible polynomial of degree e over F_q.
  const std::unordered_map<std::uint64_t, FqElem>& root_index(std::size_t e) {
    auto it = root_index_.find(e);
    if (it != root_index_.end()) return it->second;
    FieldPtr ext = extend(f_, static_cast<unsigned>(e));
    std::unordered_map<std::uint64_t, FqElem> index;
    std::vector<std::uint64_t> proper;
    for (std::size_t j = 1; j < e; ++j) {
      if (e % j == 0) proper.push_back(pow_u64(q_, j));
    }
    for (FqElem x = 0; x < ext->size(); ++x) {
      bool smaller = false;
      for (auto s : proper) smaller = smaller || ext->pow(x, s) == x;
      if (smaller) continue;
      Poly minpoly{1};
      FqElem conj = x;
      for (std::size_t j = 0; j < e; ++j, conj = ext->pow(conj, q_)) {
        minpoly = mul(*ext, minpoly, Poly{ext->neg(conj), 1});
      }
      for (FqElem c : minpoly) {
        if (c >= q_) throw GeometryError("minimal polynomial has coefficients outside F_q");
      }
      index.try_emplace(pack(minpoly, q_), x);
    }
    return root_index_.emplace(e, std::move(index)).first->second;
  }

  // Roots in F_{q^2} of each product of two distinct irreducible quadratics.
  const std::unordered_map<std::uint64_t, std::pair<FqElem, FqElem>>& quadratic_pairs() {
    if (quad_pairs_) return *quad_pairs_;
    const auto& quads = root_index(2);
    std::vector<std::pair<std::uint64_t, FqElem>> list(quads.begin(), quads.end());
    std::sort(list.begin(), list.end());
    std::unordered_map<std::uint64_t, std::pair<FqElem, FqElem>> pairs;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Poly a{static_cast<FqElem>(list[i].first % q_), static_cast<FqElem>(list[i].first / q_), 1};
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const Poly b{static_cast<FqElem>(list[j].first % q_), static_cast<FqElem>(list[j].first / q_), 1};
        pairs.emplace(pack(mul(*f_, a, b), q_), std::make_pair(list[i].second, list[j].second));
      }
    }
    quad_pairs_ = std::move(pairs);
    return *quad_pairs_;
  }

  // The roots of f, in the smallest field of the form F_{q^d} holding them all;
  // F_q-rational roots come first.
  std::pair<FieldPtr, std::vector<FqElem>> preimage(const FqElem* w) {
    Poly h = monic(w);
    if (degree(gcd(*f_, h, derivative(*f_, h))) != 0) {
      throw GeometryError("polynomial is not squarefree");
    }
    std::vector<FqElem> roots;
    FieldPtr ext = f_;
    while (degree(h) > 0) {
      const int d = degree(h);
      if (d == 1) {
        roots.push_back(f_->neg(h[0]));
        break;
      }
      const auto& index = root_index(static_cast<std::size_t>(d));
      if (auto it = index.find(pack(h, q_)); it != index.end()) {
        ext = extend(f_, static_cast<unsigned>(d));
        FqElem r = it->second;
        for (int j = 0; j < d; ++j, r = ext->pow(r, q_)) roots.push_back(r);
        break;
      }
      if (d == 4) {
        const auto& pairs = quadratic_pairs();
        if (auto it = pairs.find(pack(h, q_)); it != pairs.end()) {
          ext = extend(f_, 2);
          for (FqElem r : {it->second.first, it->second.second}) {
            roots.push_back(r);
            roots.push_back(ext->pow(r, q_));
          }
          break;
        }
      }
      bool found = false;
      for (FqElem x = 0; x < q_ && !found; ++x) {
        if (eval(*f_, h, x) == 0) {
          roots.push_back(x);
          h = deflate(*f_, h, x);
          found = true;
        }
      }
      if (!found) throw GeometryError("no preimage within degree bound");
    }
    return {ext, roots};
  }

  std::size_t n_;
  std::vector<std::vector<int>> perms_;
  std::map<std::vector<int>, Elem> perm_index_;
  std::map<std::size_t, std::unordered_map<std::uint64_t, FqElem>> root_index_;
  std::optional<std::unordered_map<std::uint64_t, std::pair<FqElem, FqElem>>> quad_pairs_;
};

class ProductNode : public CoverNode {
 public:
  ProductNode(std::unique_ptr<CoverNode> a, std::unique_ptr<CoverNode> b, std::uint64_t q, FieldPtr f)
      : CoverNode(q, std::move(f)), a_(std::move(a)), b_(std::move(b)) {}

  std::size_t dimension() const override { return a_->dimension() + b_->dimension(); }
  std::size_t group_order() const override { return a_->group_order() * b_->group_order(); }

  bool is_etale(const FqElem* w) override { return a_->is_etale(w) && b_->is_etale(w + a_->dimension()); }

  void for_each_etale(const std::function<void(const std::vector<FqElem>&)>& fn) override {
    std::vector<std::vector<FqElem>> right;
    b_->for_each_etale([&](const std::vector<FqElem>& w) { right.push_back(w); });
    a_->for_each_etale([&](const std::vector<FqElem>& w1) {
      std::vector<FqElem> w = w1;
      for (const auto& w2 : right) {
        w.resize(w1.size());
        w.insert(w.end(), w2.begin(), w2.end());
        fn(w);
      }
    });
  }

  std::vector<std::uint64_t> frobenius_histogram(std::uint64_t n) override {
    const auto ha = a_->frobenius_histogram(n);
    const auto hb = b_->frobenius_histogram(n);
    std::vector<std::uint64_t> out;
    for (auto x : ha) {
      for (auto y : hb) out.push_back(x * y);
    }
    return out;
  }

  Elem frobenius_element(const FqElem* w, std::uint64_t n) override {
    return static_cast<Elem>(a_->frobenius_element(w, n) * b_->group_order() +
                             b_->frobenius_element(w + a_->dimension(), n));
  }

  std::uint64_t fixed_count(Elem g) override {
    const auto nb = static_cast<Elem>(b_->group_order());
    return a_->fixed_count(g / nb) * b_->fixed_count(g % nb);
  }

  Fiber fiber(const FqElem*) override {
    throw GeometryError("explicit fibers are not available for product covers");
  }

 private:
  std::unique_ptr<CoverNode> a_, b_;
};

std::unique_ptr<CoverNode> make_node(const ConcreteCover& c, std::uint64_t q, const FieldPtr& f) {
  switch (c.family()) {
    case ConcreteCover::Family::Kummer:
      return std::make_unique<KummerNode>(c.parameter(), q, f);
    case ConcreteCover::Family::Roots:
      return std::make_unique<RootsNode>(c.parameter(), q, f);
    case ConcreteCover::Family::Product:
      return std::make_unique<ProductNode>(make_node(*c.left(), q, f), make_node(*c.right(), q, f), q, f);
  }
  throw GeometryError("unknown cover family");
}

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------
// CoverOverField

CoverOverField::CoverOverField(CoverPtr cover, std::uint64_t q) : cover_(std::move(cover)), q_(q) {
  if (auto reason = cover_->bad_reason(q)) throw BadPrime(*reason);
  root_ = detail::make_node(*cover_, q_, field_of_size(q_));
  fixed_.assign(cover_->group()->order(), std::nullopt);
}

CoverOverField::~CoverOverField() = default;
CoverOverField::CoverOverField(CoverOverField&&) noexcept = default;
CoverOverField& CoverOverField::operator=(CoverOverField&&) noexcept = default;

bool CoverOverField::is_etale(const std::vector<FqElem>& w) {
  if (w.size() != root_->dimension()) throw GeometryError("point has the wrong number of coordinates");
  for (FqElem x : w) {
    if (x >= q_) throw GeometryError("coordinate outside F_q");
  }
  return root_->is_etale(w.data());
}

Elem CoverOverField::frobenius_element(const std::vector<FqElem>& w, std::uint64_t n) {
  if (!is_etale(w)) throw GeometryError("point is outside the etale locus");
  return root_->frobenius_element(w.data(), n);
}

ClassId CoverOverField::artin_symbol(const std::vector<FqElem>& w) {
  return group()->class_of_element(frobenius_element(w, 1));
}

std::vector<std::uint64_t> CoverOverField::frobenius_histogram(std::uint64_t n) {
  auto it = histograms_.find(n);
  if (it != histograms_.end()) return it->second;
  return histograms_.emplace(n, root_->frobenius_histogram(n)).first->second;
}

void CoverOverField::require_all(const Coloring& c) const {
  if (!c.prime_set().is_all()) {
    throw ColoringError("finite fields only realize P = all, got " + c.prime_set().to_string());
  }
  if (!same_group(*c.group(), *group())) throw GroupMismatch("coloring is not over the cover's group");
}

std::vector<std::uint64_t> CoverOverField::artin_table() {
  const auto hist = frobenius_histogram(1);
  std::vector<std::uint64_t> out(group()->cyclic_classes().size(), 0);
  for (Elem g = 0; g < hist.size(); ++g) out[group()->class_of_element(g)] += hist[g];
  return out;
}

std::uint64_t CoverOverField::count_definable(const Coloring& c) {
  require_all(c);
  const auto table = artin_table();
  std::uint64_t total = 0;
  for (ClassId k : c.classes()) total += table[k];
  return total;
}

std::uint64_t CoverOverField::etale_count() {
  const auto hist = frobenius_histogram(1);
  return std::accumulate(hist.begin(), hist.end(), std::uint64_t{0});
}

std::uint64_t CoverOverField::fixed_count(Elem g) {
  if (!fixed_[g]) fixed_[g] = root_->fixed_count(g);
  return *fixed_[g];
}

Rational CoverOverField::weighted_count(const QCentralFunction& alpha) {
  if (!same_group(*alpha.group(), *group())) throw GroupMismatch("class function is not over the cover's group");
  Rational sum = 0;
  for (Elem g = 0; g < group()->order(); ++g) {
    const Rational& a = alpha(g);
    if (a != 0) sum += a * fixed_count(g);
  }
  return sum / group()->order();
}

std::uint64_t CoverOverField::quotient_count(const Subgroup& q) {
  if (!is_subgroup(*group(), q)) throw GroupError("quotient_count: not a subgroup");
  std::uint64_t sum = 0;
  for (Elem g : q.members) sum += fixed_count(g);
  if (sum % q.order() != 0) {
    throw GeometryError("Frobenius-stable orbit count is not an integer: " + std::to_string(sum) + "/" +
                        std::to_string(q.order()));
  }
  return sum / q.order();
}

std::uint64_t CoverOverField::theta_direct_count(const Coloring& c2, std::uint64_t n) {
  require_all(c2);
  if (n == 0) throw ColoringError("theta exponent must be positive");
  auto qn = checked_pow(q_, static_cast<unsigned>(n), kFieldCeiling);
  if (!qn) {
    throw CeilingExceeded(std::to_string(q_) + "^" + std::to_string(n) + " exceeds field ceiling",
                          static_cast<std::size_t>(n));
  }
  if (auto reason = cover_->bad_reason(*qn)) throw BadPrime(*reason);
  const auto hist = frobenius_histogram(n);
  std::uint64_t total = 0;
  for (Elem g = 0; g < hist.size(); ++g) {
    if (c2.contains(group()->class_of_element(g))) total += hist[g];
  }
  return total;
}

namespace {

// a_h for every h, where Frob_q(v.h) = (v.h).a_h, found by matching points.
std::vector<Elem> fiber_frobenius(const FiniteGroup& g, const detail::Fiber& fib, std::uint64_t q) {
  std::map<std::vector<FqElem>, Elem> where;
  for (Elem h = 0; h < fib.points.size(); ++h) {
    if (!where.emplace(fib.points[h], h).second) throw GeometryError("action is not free on the fiber");
  }
  std::vector<Elem> a(fib.points.size());
  for (Elem h = 0; h < fib.points.size(); ++h) {
    std::vector<FqElem> image = fib.points[h];
    for (auto& x : image) x = fib.field->pow(x, q);
    auto it = where.find(image);
    if (it == where.end()) throw GeometryError("Frobenius does not preserve the fiber");
    a[h] = g.mul(g.inv(h), it->second);
  }
  return a;
}

}  // namespace

FiberHistogram CoverOverField::fiber_histogram(const EmbeddedSubgroup& g1, ClassId c1) {
  const FiniteGroup& g = *group();
  const auto& cls1 = g1.group->cyclic_classes().at(c1);
  const ClassId c2 = g.class_of(g1.lift(cls1.representative));
  FiberHistogram out;
  out.predicted = Rational(static_cast<long long>(g.order() * cls1.size()),
                           static_cast<long long>(g.cyclic_classes()[c2].size() * g1.group->order()));
  root_->for_each_etale([&](const std::vector<FqElem>& w) {
    if (g.class_of_element(root_->frobenius_element(w.data(), 1)) != c2) return;
    ++out.x2_points;
    const auto fib = root_->fiber(w.data());
    const auto a = fiber_frobenius(g, fib, q_);
    // G_1-orbits in the fiber are {v.h.t : t in G_1}; one is Frobenius-stable
    // iff a_h lies in G_1, and its Artin class over V/G_1 is that of <a_h> in G_1.
    std::vector<bool> done(g.order(), false);
    std::uint64_t size = 0;
    for (Elem h = 0; h < g.order(); ++h) {
      if (done[h]) continue;
      for (Elem t : g1.to_parent) done[g.mul(h, t)] = true;
      auto local = g1.from_parent(a[h]);
      if (local && g1.group->class_of_element(*local) == c1) ++size;
    }
    ++out.sizes[size];
  });
  return out;
}

std::map<Subgroup, std::uint64_t> CoverOverField::decomposition_counts(const std::vector<FqElem>& w) {
  if (!is_etale(w)) throw GeometryError("point is outside the etale locus");
  const auto fib = root_->fiber(w.data());
  const auto a = fiber_frobenius(*group(), fib, q_);
  std::map<Subgroup, std::uint64_t> out;
  for (Elem x : a) ++out[group()->cyclic_subgroup(x)];
  return out;
}

DensityTable CoverOverField::density_table() {
  DensityTable t;
  const auto table = artin_table();
  t.total = std::accumulate(table.begin(), table.end(), std::uint64_t{0});
  const FiniteGroup& g = *group();
  std::vector<long long> elements(table.size(), 0);
  for (Elem x = 0; x < g.order(); ++x) ++elements[g.class_of_element(x)];
  for (ClassId c = 0; c < table.size(); ++c) {
    DensityRow row{c, g.cyclic_classes()[c].order(), g.class_generator(c), table[c], Rational(0),
                   Rational(elements[c], static_cast<long long>(g.order()))};
    if (t.total) row.observed = Rational(static_cast<long long>(table[c]), static_cast<long long>(t.total));
    t.rows.push_back(row);
  }
  return t;
}

DensityTable density_table(const CoverPtr& cover, std::uint64_t q) {
  if (auto reason = cover->bad_reason(q)) {
    DensityTable t;
    t.refused = *reason;
    return t;
  }
  CoverOverField cf(cover, q);
  return cf.density_table();
}

bool FiberHistogram::constant_and_predicted() const {
  if (sizes.empty()) return true;
  return sizes.size() == 1 && Rational(static_cast<long long>(sizes.begin()->first)) == predicted;
}

Rational realize_count(const MotiveExpr& e, CoverOverField& cf, const FreeCounters& counters) {
  if (!e.terms.empty()) {
    if (e.cover_tag != cf.cover().tag()) {
      throw MotiveError("motive over '" + e.cover_tag + "' evaluated on cover '" + cf.cover().tag() + "'");
    }
    if (!same_group(*e.group, *cf.group())) throw GroupMismatch("motive group differs from the cover group");
  }
  Rational total = 0;
  for (const auto& [c, coef] : e.terms) {
    total += coef * cf.quotient_count(cf.group()->cyclic_classes()[c].representative);
  }
  for (const auto& [name, coef] : e.free_terms) {
    if (auto it = counters.find(name); it != counters.end()) {
      total += coef * it->second();
    } else if (name == "V") {
      total += coef * cf.fixed_count(0);
    } else if (name == "W") {
      total += coef * cf.etale_count();
    } else {
      throw MotiveError("no counter registered for [" + name + "]");
    }
  }
  return total;
}

}  // namespace galmot
