#pragma once

// Dembowski-Ostrom polynomials sum c x^(2^u + 2^v) over GF(q^k).

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pf2/errors.hpp"
#include "pf2/fields.hpp"

namespace pf2 {

class DOPoly {
 public:
  explicit DOPoly(std::shared_ptr<const Tower> tower) : tower_(std::move(tower)) {}

  const Tower& tower() const { return *tower_; }
  const std::shared_ptr<const Tower>& tower_ptr() const { return tower_; }
  const GF2n& field() const { return tower_->field(); }

  // Adds c x^(2^u + 2^v); u == v gives the linear term x^(2^(u+1)).
  DOPoly& add_term(Fe c, unsigned u, unsigned v) {
    const unsigned n = tower_->n();
    if (u >= n || v >= n) throw usage_error("DO term exponents need 0 <= u, v < n");
    return add_exponent(c, (std::uint64_t{1} << u) + (std::uint64_t{1} << v));
  }

  // Adds c x^e after reducing e into [1, 2^n - 1]; e must then be a sum of
  // one or two powers of two.
  DOPoly& add_exponent(Fe c, std::uint64_t e) {
    if (!field().contains(c)) throw usage_error("DO coefficient outside the field");
    if (e == 0) throw usage_error("constant terms are not Dembowski-Ostrom");
    const std::uint64_t order = field().order();
    e = (e - 1) % order + 1;
    if (std::popcount(e) > 2) {
      throw usage_error("exponent " + std::to_string(e) + " is not a sum of two powers of two");
    }
    if (c.is_zero()) return *this;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
  }

  // Exponent -> nonzero coefficient, ascending by exponent.
  const std::map<std::uint64_t, Fe>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient of x^e (zero if absent).
  Fe coeff(std::uint64_t e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Fe{} : it->second;
  }

  Fe operator()(Fe x) const {
    const GF2n& f = field();
    Fe acc{};
    for (const auto& [e, c] : terms_) {
      // x^(2^u) * x^(2^v) through Frobenius.
      const unsigned u = static_cast<unsigned>(std::countr_zero(e));
      const std::uint64_t rest = e & (e - 1);
      const Fe xu = f.frob2(x, u);
      const Fe mono = rest == 0 ? xu : f.mul(xu, f.frob2(x, static_cast<unsigned>(std::countr_zero(rest))));
      acc += f.mul(c, mono);
    }
    return acc;
  }

  // Values at every field element; n <= kMaxSweepDegree.
  std::vector<std::uint32_t> table() const {
    if (tower_->n() > kMaxSweepDegree) throw budget_error("value table needs n <= 24");
    const GF2n& f = field();
    std::vector<std::uint32_t> out(f.size(), 0);
    for (const auto& [e, c] : terms_) {
      for (std::uint64_t x = 1; x < f.size(); ++x) {
        out[x] ^= f.mul(c, f.pow(Fe{static_cast<std::uint32_t>(x)}, e)).bits;
      }
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "0x" << GF2n::hex(c.bits) << "*x^" << e;
    }
    return os.str();
  }

  friend bool operator==(const DOPoly& a, const DOPoly& b) {
    return a.tower_->n() == b.tower_->n() && a.terms_ == b.terms_;
  }

 private:
  std::shared_ptr<const Tower> tower_;
  std::map<std::uint64_t, Fe> terms_;
};

// (u, v) with u <= v for a stored exponent; a lone power of two 2^j is
// reported as (j - 1, j - 1) modulo n.
inline std::pair<unsigned, unsigned> exponent_pair(std::uint64_t e, unsigned n) {
  const unsigned u = static_cast<unsigned>(std::countr_zero(e));
  const std::uint64_t rest = e & (e - 1);
  if (rest == 0) {
    const unsigned j = (u + n - 1) % n;
    return {j, j};
  }
  return {u, static_cast<unsigned>(std::countr_zero(rest))};
}

}  // namespace pf2
