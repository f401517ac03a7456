#pragma once

// Sparse multivariate polynomials over GF(2^n) with at most 8 variables and
// per-variable degree at most 255, plus normalized linear forms.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pf2/errors.hpp"
#include "pf2/gf2n.hpp"

namespace pf2 {

inline constexpr unsigned kMaxVars = 8;

using Exponents = std::vector<unsigned>;

class MvPoly {
 public:
  MvPoly(std::shared_ptr<const GF2n> field, unsigned nvars) : field_(std::move(field)), nvars_(nvars) {
    if (nvars_ == 0 || nvars_ > kMaxVars) throw usage_error("MvPoly needs 1..8 variables");
  }

  static MvPoly constant(std::shared_ptr<const GF2n> field, unsigned nvars, Fe c) {
    MvPoly p(std::move(field), nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }

  static MvPoly variable(std::shared_ptr<const GF2n> field, unsigned nvars, unsigned i) {
    MvPoly p(std::move(field), nvars);
    Exponents e(nvars, 0);
    if (i >= nvars) throw usage_error("variable index out of range");
    e[i] = 1;
    p.add_term(e, GF2n::one());
    return p;
  }

  const GF2n& field() const { return *field_; }
  const std::shared_ptr<const GF2n>& field_ptr() const { return field_; }
  unsigned nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Packed exponent key -> nonzero coefficient; ascending keys order the
  // monomials lexicographically with X_0 most significant.
  const std::map<std::uint64_t, Fe>& terms() const { return terms_; }

  std::uint64_t pack(const Exponents& e) const {
    if (e.size() != nvars_) throw usage_error("exponent tuple has the wrong length");
    std::uint64_t key = 0;
    for (unsigned i = 0; i < nvars_; ++i) {
      if (e[i] > 255) throw usage_error("per-variable degree above 255");
      key = key << 8U | e[i];
    }
    return key;
  }

  Exponents unpack(std::uint64_t key) const {
    Exponents e(nvars_);
    for (unsigned i = nvars_; i-- > 0;) {
      e[i] = static_cast<unsigned>(key & 0xFFU);
      key >>= 8U;
    }
    return e;
  }

  static unsigned key_degree(std::uint64_t key) {
    unsigned d = 0;
    for (; key != 0; key >>= 8U) d += static_cast<unsigned>(key & 0xFFU);
    return d;
  }

  MvPoly& add_term(const Exponents& e, Fe c) { return add_key(pack(e), c); }

  MvPoly& add_key(std::uint64_t key, Fe c) {
    if (!field_->contains(c)) throw usage_error("MvPoly coefficient outside the field");
    if (c.is_zero()) return *this;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
  }

  Fe coeff(const Exponents& e) const {
    auto it = terms_.find(pack(e));
    return it == terms_.end() ? Fe{} : it->second;
  }

  // Max total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, static_cast<int>(key_degree(key)));
    return d;
  }

  bool is_homogeneous() const {
    const int d = degree();
    for (const auto& [key, c] : terms_) {
      if (static_cast<int>(key_degree(key)) != d) return false;
    }
    return true;
  }

  MvPoly operator+(const MvPoly& o) const {
    check_compatible(o);
    MvPoly r = *this;
    for (const auto& [key, c] : o.terms_) r.add_key(key, c);
    return r;
  }

  MvPoly& operator+=(const MvPoly& o) {
    check_compatible(o);
    for (const auto& [key, c] : o.terms_) add_key(key, c);
    return *this;
  }

  MvPoly operator*(const MvPoly& o) const {
    check_compatible(o);
    MvPoly r(field_, nvars_);
    for (const auto& [ka, ca] : terms_) {
      for (const auto& [kb, cb] : o.terms_) r.add_key(add_keys(ka, kb), field_->mul(ca, cb));
    }
    return r;
  }

  MvPoly scaled(Fe s) const {
    MvPoly r(field_, nvars_);
    for (const auto& [key, c] : terms_) r.add_key(key, field_->mul(s, c));
    return r;
  }

  MvPoly pow(unsigned e) const {
    MvPoly r = constant(field_, nvars_, GF2n::one());
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  Fe eval(const std::vector<Fe>& x) const {
    if (x.size() != nvars_) throw usage_error("evaluation point has the wrong length");
    Fe acc{};
    for (const auto& [key, c] : terms_) {
      Fe t = c;
      const Exponents e = unpack(key);
      for (unsigned i = 0; i < nvars_ && !t.is_zero(); ++i) {
        if (e[i] != 0) t = field_->mul(t, field_->pow(x[i], e[i]));
      }
      acc += t;
    }
    return acc;
  }

  // P(images[0], ..., images[nvars-1]); all images share one ring.
  MvPoly substitute(const std::vector<MvPoly>& images) const {
    if (images.size() != nvars_) throw usage_error("substitution needs one image per variable");
    const MvPoly& ring = images.front();
    std::vector<std::vector<MvPoly>> powers(nvars_);
    const std::vector<int> maxdeg = max_degrees();
    for (unsigned i = 0; i < nvars_; ++i) {
      ring.check_compatible(images[i]);
      powers[i].push_back(constant(ring.field_, ring.nvars_, GF2n::one()));
      for (int d = 1; d <= maxdeg[i]; ++d) powers[i].push_back(powers[i].back() * images[i]);
    }
    MvPoly r(ring.field_, ring.nvars_);
    for (const auto& [key, c] : terms_) {
      const Exponents e = unpack(key);
      MvPoly t = constant(ring.field_, ring.nvars_, c);
      for (unsigned i = 0; i < nvars_; ++i) {
        if (e[i] != 0) t = t * powers[i][e[i]];
      }
      r += t;
    }
    return r;
  }

  // Adds one variable X_n so every term reaches total degree deg(P).
  MvPoly homogenize() const {
    if (nvars_ + 1 > kMaxVars) throw usage_error("homogenize: too many variables");
    MvPoly r(field_, nvars_ + 1);
    const int d = degree();
    for (const auto& [key, c] : terms_) {
      Exponents e = unpack(key);
      e.push_back(static_cast<unsigned>(d) - key_degree(key));
      r.add_term(e, c);
    }
    return r;
  }

  // Coefficients mapped through fn into another field.
  template <class Fn>
  MvPoly map_coeffs(std::shared_ptr<const GF2n> target, Fn&& fn) const {
    MvPoly r(std::move(target), nvars_);
    for (const auto& [key, c] : terms_) r.add_key(key, fn(c));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    static constexpr const char* names[] = {"X0", "X1", "X2", "X3", "X4", "X5", "X6", "X7"};
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      const Exponents e = unpack(it->first);
      os << "0x" << GF2n::hex(it->second.bits);
      for (unsigned i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        os << "*" << names[i];
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

  friend bool operator==(const MvPoly& a, const MvPoly& b) {
    return a.nvars_ == b.nvars_ && a.field_->spec() == b.field_->spec() && a.terms_ == b.terms_;
  }

  void check_compatible(const MvPoly& o) const {
    if (nvars_ != o.nvars_ || !(field_->spec() == o.field_->spec())) {
      throw usage_error("MvPoly operands live in different rings");
    }
  }

 private:
  std::uint64_t add_keys(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < nvars_; ++i) {
      const unsigned shift = 8U * i;
      const std::uint64_t s = (a >> shift & 0xFFU) + (b >> shift & 0xFFU);
      if (s > 255) throw usage_error("per-variable degree above 255");
      r |= s << shift;
    }
    return r;
  }

  std::vector<int> max_degrees() const {
    std::vector<int> d(nvars_, 0);
    for (const auto& [key, c] : terms_) {
      const Exponents e = unpack(key);
      for (unsigned i = 0; i < nvars_; ++i) d[i] = std::max(d[i], static_cast<int>(e[i]));
    }
    return d;
  }

  std::shared_ptr<const GF2n> field_;
  unsigned nvars_;
  std::map<std::uint64_t, Fe> terms_;
};

// sum c_i X_i scaled so the first nonzero coefficient is 1.
class LinearForm {
 public:
  LinearForm(const GF2n& field, std::vector<Fe> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || coeffs_.size() > kMaxVars) throw usage_error("linear form needs 1..8 coefficients");
    std::size_t p = 0;
    while (p < coeffs_.size() && coeffs_[p].is_zero()) ++p;
    if (p == coeffs_.size()) throw usage_error("linear form is identically zero");
    const Fe inv = field.inv(coeffs_[p]);
    for (auto& c : coeffs_) c = field.mul(c, inv);
    pivot_ = static_cast<unsigned>(p);
  }

  const std::vector<Fe>& coeffs() const { return coeffs_; }
  unsigned pivot() const { return pivot_; }
  unsigned nvars() const { return static_cast<unsigned>(coeffs_.size()); }

  MvPoly to_poly(std::shared_ptr<const GF2n> field) const {
    MvPoly p(std::move(field), nvars());
    for (unsigned i = 0; i < nvars(); ++i) {
      Exponents e(nvars(), 0);
      e[i] = 1;
      p.add_term(e, coeffs_[i]);
    }
    return p;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (unsigned i = 0; i < nvars(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      if (coeffs_[i] != GF2n::one()) os << "0x" << GF2n::hex(coeffs_[i].bits) << "*";
      os << "X" << i;
    }
    return os.str();
  }

  friend auto operator<=>(const LinearForm& a, const LinearForm& b) { return a.coeffs_ <=> b.coeffs_; }
  friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Fe> coeffs_;
  unsigned pivot_ = 0;
};

// Exact quotient P / l, or nullopt when l does not divide P. Terms carrying
// the pivot variable are cancelled one at a time against l (monic there).
inline std::optional<MvPoly> divide_linear(const MvPoly& p, const LinearForm& l) {
  if (l.nvars() != p.nvars()) throw usage_error("linear form and polynomial differ in variable count");
  const unsigned n = p.nvars();
  const unsigned piv = l.pivot();
  const unsigned shift = 8U * (n - 1 - piv);
  const GF2n& f = p.field();
  MvPoly rest = p;
  MvPoly quot(p.field_ptr(), n);
  MvPoly remainder(p.field_ptr(), n);
  while (!rest.is_zero()) {
    // Largest key carries the highest pivot power among terms with the same
    // leading variables, but any term works; take the last one.
    auto it = std::prev(rest.terms().end());
    const std::uint64_t key = it->first;
    const Fe c = it->second;
    if ((key >> shift & 0xFFU) == 0) {
      remainder.add_key(key, c);
      rest.add_key(key, c);
      continue;
    }
    const std::uint64_t qkey = key - (std::uint64_t{1} << shift);
    quot.add_key(qkey, c);
    for (unsigned j = 0; j < n; ++j) {
      if (l.coeffs()[j].is_zero()) continue;
      rest.add_key(qkey + (std::uint64_t{1} << (8U * (n - 1 - j))), f.mul(c, l.coeffs()[j]));
    }
  }
  if (!remainder.is_zero()) return std::nullopt;
  return quot;
}

}  // namespace pf2
