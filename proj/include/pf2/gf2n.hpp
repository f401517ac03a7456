#pragma once

// Binary field arithmetic GF(2^n) in polynomial basis.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "pf2/errors.hpp"

namespace pf2 {

inline constexpr unsigned kMaxDegree = 32;
// Log/antilog tables are built up to this degree (8 MiB at n = 20).
inline constexpr unsigned kMaxTableDegree = 20;
// Exhaustive element sweeps are refused above this degree.
inline constexpr unsigned kMaxSweepDegree = 24;

// Polynomials over GF(2) packed into an integer, bit i = coefficient of x^i.
namespace gf2x {

inline int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

inline std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

// a * b mod m, for deg a, deg b < deg m <= 63.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t top = std::uint64_t{1} << degree(m);
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1U;
    a <<= 1U;
    if (a & top) a ^= m;
  }
  return r;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// Ben-Or test: p of degree n is irreducible iff gcd(x^(2^i) - x, p) = 1 for
// every i <= n/2.
inline bool is_irreducible(std::uint64_t p) {
  const int n = degree(p);
  if (n < 1) return false;
  if (n == 1) return true;
  if ((p & 1U) == 0) return false;
  std::uint64_t h = 2;  // x
  for (int i = 1; i <= n / 2; ++i) {
    h = mulmod(h, h, p);
    if (gcd(h ^ 2U, p) != 1) return false;
  }
  return true;
}

// Numerically smallest irreducible polynomial of degree n with constant term 1.
inline std::uint64_t smallest_irreducible(unsigned n) {
  for (std::uint64_t p = (std::uint64_t{1} << n) | 1U;; p += 2) {
    if (is_irreducible(p)) return p;
  }
}

}  // namespace gf2x

// A field element as an n-bit polynomial-basis vector. Carries no field
// reference; arithmetic other than addition goes through GF2n.
struct Fe {
  std::uint32_t bits = 0;

  constexpr bool is_zero() const { return bits == 0; }
  friend constexpr auto operator<=>(Fe, Fe) = default;
};

// Addition is XOR in every binary field.
constexpr Fe operator+(Fe a, Fe b) { return Fe{a.bits ^ b.bits}; }
constexpr Fe& operator+=(Fe& a, Fe b) {
  a.bits ^= b.bits;
  return a;
}

// GF(2^n) with the smallest irreducible modulus of degree n. Equal n means
// equal spec.
class FieldSpec {
 public:
  explicit FieldSpec(unsigned n) : n_(n) {
    if (n < 1 || n > kMaxDegree) {
      throw usage_error("field degree must be in [1, " + std::to_string(kMaxDegree) + "], got " +
                        std::to_string(n));
    }
    modulus_ = gf2x::smallest_irreducible(n);
  }

  unsigned n() const { return n_; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  unsigned n_;
  std::uint64_t modulus_ = 0;
};

class GF2n {
 public:
  explicit GF2n(unsigned n) : spec_(n) {
    order_ = static_cast<std::uint32_t>(spec_.size() - 1);
    generator_ = find_generator();
    if (n <= kMaxTableDegree) build_tables();
  }

  // Shared immutable instance per degree.
  static std::shared_ptr<const GF2n> get(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, std::shared_ptr<const GF2n>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const GF2n>(n);
    return slot;
  }

  const FieldSpec& spec() const { return spec_; }
  unsigned degree() const { return spec_.n(); }
  std::uint64_t size() const { return spec_.size(); }
  // Multiplicative group order 2^n - 1.
  std::uint32_t order() const { return order_; }
  bool has_tables() const { return !log_.empty(); }

  static constexpr Fe zero() { return Fe{0}; }
  static constexpr Fe one() { return Fe{1}; }
  Fe generator() const { return generator_; }

  bool contains(Fe x) const { return static_cast<std::uint64_t>(x.bits) < size(); }

  Fe element(std::uint64_t bits) const {
    if (bits >= size()) {
      throw usage_error("value 0x" + hex(bits) + " is not an element of GF(2^" + std::to_string(degree()) + ")");
    }
    return Fe{static_cast<std::uint32_t>(bits)};
  }

  static constexpr Fe add(Fe x, Fe y) { return x + y; }

  Fe mul(Fe x, Fe y) const {
    if (x.bits == 0 || y.bits == 0) return Fe{0};
    if (has_tables()) return Fe{exp_[log_[x.bits] + log_[y.bits]]};
    return Fe{static_cast<std::uint32_t>(gf2x::mulmod(x.bits, y.bits, spec_.modulus()))};
  }

  Fe sqr(Fe x) const { return mul(x, x); }

  Fe inv(Fe x) const {
    if (x.bits == 0) throw domain_error("inverse of zero");
    if (has_tables()) return Fe{exp_[(order_ - log_[x.bits]) % order_]};
    return pow(x, order_ - 1);
  }

  Fe div(Fe x, Fe y) const { return mul(x, inv(y)); }

  // Square-and-multiply; 0^0 = 1.
  Fe pow(Fe x, std::uint64_t e) const {
    if (e == 0) return one();
    if (x.bits == 0) return zero();
    if (has_tables()) {
      const std::uint64_t l = (static_cast<std::uint64_t>(log_[x.bits]) * (e % order_)) % order_;
      return Fe{exp_[l]};
    }
    Fe r = one();
    Fe b = x;
    while (e != 0) {
      if (e & 1U) r = mul(r, b);
      b = sqr(b);
      e >>= 1U;
    }
    return r;
  }

  // x^(2^j).
  Fe frob2(Fe x, unsigned j) const {
    j %= degree();
    if (j == 0 || x.bits <= 1) return x;
    if (has_tables()) {
      const std::uint64_t l = (static_cast<std::uint64_t>(log_[x.bits]) << j) % order_;
      return Fe{exp_[l]};
    }
    for (unsigned i = 0; i < j; ++i) x = sqr(x);
    return x;
  }

  // Unique square root (squaring is a bijection in characteristic 2).
  Fe sqrt(Fe x) const { return frob2(x, degree() - 1); }

  // Absolute trace to GF(2); returns 0 or 1.
  Fe abs_trace(Fe x) const {
    Fe t = x;
    Fe y = x;
    for (unsigned i = 1; i < degree(); ++i) {
      y = sqr(y);
      t += y;
    }
    return t;
  }

  static std::string hex(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
      s.push_back(digits[v & 0xFU]);
      v >>= 4U;
    }
    std::reverse(s.begin(), s.end());
    return s;
  }

 private:
  Fe find_generator() const {
    if (order_ == 1) return one();
    std::vector<std::uint32_t> primes;
    std::uint64_t r = order_;
    for (std::uint64_t p = 2; p * p <= r; ++p) {
      if (r % p == 0) {
        primes.push_back(static_cast<std::uint32_t>(p));
        while (r % p == 0) r /= p;
      }
    }
    if (r > 1) primes.push_back(static_cast<std::uint32_t>(r));
    for (std::uint32_t g = 2;; ++g) {
      const Fe cand{g};
      bool primitive = true;
      for (auto p : primes) {
        if (slow_pow(cand, order_ / p) == one()) {
          primitive = false;
          break;
        }
      }
      if (primitive) return cand;
    }
  }

  Fe slow_pow(Fe x, std::uint64_t e) const {
    std::uint64_t r = 1;
    std::uint64_t b = x.bits;
    while (e != 0) {
      if (e & 1U) r = gf2x::mulmod(r, b, spec_.modulus());
      b = gf2x::mulmod(b, b, spec_.modulus());
      e >>= 1U;
    }
    return Fe{static_cast<std::uint32_t>(r)};
  }

  void build_tables() {
    log_.assign(size(), 0);
    exp_.assign(2 * static_cast<std::size_t>(order_) + 1, 0);
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < order_; ++i) {
      exp_[i] = static_cast<std::uint32_t>(v);
      exp_[i + order_] = static_cast<std::uint32_t>(v);
      log_[v] = i;
      v = gf2x::mulmod(v, generator_.bits, spec_.modulus());
    }
    exp_[2 * static_cast<std::size_t>(order_)] = exp_[0];
  }

  FieldSpec spec_;
  std::uint32_t order_ = 0;
  Fe generator_{};
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

// A field element bound to its field. Operators reject operands from
// different fields with usage_error.
class FieldElement {
 public:
  FieldElement(std::shared_ptr<const GF2n> field, std::uint64_t bits)
      : field_(std::move(field)), value_(field_->element(bits)) {}
  FieldElement(std::shared_ptr<const GF2n> field, Fe value) : field_(std::move(field)), value_(value) {
    if (!field_->contains(value_)) throw usage_error("element out of range for its field");
  }

  const GF2n& field() const { return *field_; }
  Fe value() const { return value_; }
  std::uint32_t bits() const { return value_.bits; }

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    check_same(x, y);
    return {x.field_, x.value_ + y.value_};
  }
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    check_same(x, y);
    return {x.field_, x.field_->mul(x.value_, y.value_)};
  }
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    check_same(x, y);
    return {x.field_, x.field_->div(x.value_, y.value_)};
  }
  FieldElement inv() const { return {field_, field_->inv(value_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    check_same(x, y);
    return x.value_ == y.value_;
  }

 private:
  static void check_same(const FieldElement& x, const FieldElement& y) {
    if (!(x.field_->spec() == y.field_->spec())) {
      throw usage_error("arithmetic between GF(2^" + std::to_string(x.field_->degree()) + ") and GF(2^" +
                        std::to_string(y.field_->degree()) + ") elements");
    }
  }

  std::shared_ptr<const GF2n> field_;
  Fe value_;
};

}  // namespace pf2
