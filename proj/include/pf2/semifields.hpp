#pragma once

// Commutative presemifields over GF(2^n), isotopes with identity, and nuclei.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pf2/dopoly.hpp"
#include "pf2/errors.hpp"
#include "pf2/fields.hpp"
#include "pf2/parallel.hpp"
#include "pf2/planarity.hpp"

namespace pf2 {

inline constexpr unsigned kMaxPresemifieldTableDegree = 12;
inline constexpr unsigned kMaxNucleiDegree = 10;

class Presemifield {
 public:
  using MulFn = std::function<Fe(Fe, Fe)>;

  Presemifield(std::shared_ptr<const GF2n> field, std::string kind, MulFn mul)
      : field_(std::move(field)), kind_(std::move(kind)), mul_(std::move(mul)) {}

  const GF2n& field() const { return *field_; }
  const std::shared_ptr<const GF2n>& field_ptr() const { return field_; }
  unsigned n() const { return field_->degree(); }
  std::uint64_t size() const { return field_->size(); }
  const std::string& kind() const { return kind_; }

  Fe mul(Fe x, Fe y) const {
    if (table_) return Fe{(*table_)[(static_cast<std::size_t>(x.bits) << n()) | y.bits]};
    return mul_(x, y);
  }
  Fe operator()(Fe x, Fe y) const { return mul(x, y); }

  // Two-sided identity, when known.
  const std::optional<Fe>& identity() const { return identity_; }
  Presemifield& set_identity(Fe e) {
    identity_ = e;
    return *this;
  }

  bool has_table() const { return table_ != nullptr; }
  const std::vector<std::uint32_t>& table() const {
    if (!table_) throw usage_error("multiplication table not materialized");
    return *table_;
  }

  // Row-major 2^n x 2^n product table.
  Presemifield& materialize() {
    if (table_) return *this;
    if (n() > kMaxPresemifieldTableDegree) {
      throw budget_error("multiplication tables need n <= " + std::to_string(kMaxPresemifieldTableDegree));
    }
    const std::size_t size = static_cast<std::size_t>(this->size());
    auto t = std::make_shared<std::vector<std::uint32_t>>(size * size);
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t y = 0; y < size; ++y) {
        (*t)[x * size + y] = mul_(Fe{static_cast<std::uint32_t>(x)}, Fe{static_cast<std::uint32_t>(y)}).bits;
      }
    }
    table_ = std::move(t);
    return *this;
  }

 private:
  std::shared_ptr<const GF2n> field_;
  std::string kind_;
  MulFn mul_;
  std::optional<Fe> identity_;
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
};

// ---------------------------------------------------------------------------
// Axioms

// x*y equals the sum of e_i*y over the set bits e_i of x, for every x, y,
// and symmetrically in y. Exact; 2^(2n) products.
inline bool is_biadditive(const Presemifield& p) {
  if (p.n() > kMaxPresemifieldTableDegree) throw budget_error("biadditivity check needs n <= 12");
  const std::uint32_t size = static_cast<std::uint32_t>(p.size());
  for (std::uint32_t y = 0; y < size; ++y) {
    const Fe fy{y};
    for (std::uint32_t x = 1; x < size; ++x) {
      const std::uint32_t low = x & (~x + 1);
      const Fe split = p.mul(Fe{x ^ low}, fy) + p.mul(Fe{low}, fy);
      if (p.mul(Fe{x}, fy) != split) return false;
      const Fe splitr = p.mul(fy, Fe{x ^ low}) + p.mul(fy, Fe{low});
      if (p.mul(fy, Fe{x}) != splitr) return false;
    }
  }
  return true;
}

// For biadditive products: every y -> x*y (x != 0) has trivial kernel.
inline bool has_no_zero_divisors(const Presemifield& p) {
  if (p.n() > kMaxPresemifieldTableDegree) throw budget_error("zero-divisor check needs n <= 12");
  const unsigned n = p.n();
  const std::uint32_t size = static_cast<std::uint32_t>(p.size());
  std::vector<std::uint32_t> rows(n);
  for (std::uint32_t x = 1; x < size; ++x) {
    for (unsigned i = 0; i < n; ++i) rows[i] = p.mul(Fe{x}, Fe{1U << i}).bits;
    if (!detail::full_rank(rows.data(), n)) return false;
  }
  return true;
}

// Basis-pair commutativity; exact for biadditive products.
inline bool is_commutative(const Presemifield& p) {
  for (unsigned i = 0; i < p.n(); ++i) {
    for (unsigned j = i + 1; j < p.n(); ++j) {
      if (p.mul(Fe{1U << i}, Fe{1U << j}) != p.mul(Fe{1U << j}, Fe{1U << i})) return false;
    }
  }
  return true;
}

inline bool is_two_sided_identity(const Presemifield& p, Fe e) {
  const std::uint32_t size = static_cast<std::uint32_t>(p.size());
  for (std::uint32_t z = 0; z < size; ++z) {
    if (p.mul(e, Fe{z}) != Fe{z} || p.mul(Fe{z}, e) != Fe{z}) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

inline Presemifield field_presemifield(std::shared_ptr<const GF2n> field) {
  const GF2n* f = field.get();
  Presemifield p(std::move(field), "field", [f](Fe x, Fe y) { return f->mul(x, y); });
  p.set_identity(GF2n::one());
  return p;
}

// x*y = xy + f(x+y) + f(x) + f(y).
inline Presemifield presemifield_from_planar(const DOPoly& f) {
  if (!is_planar_linearized(f)) throw domain_error("polynomial is not planar: " + f.to_string());
  const GF2n* field = &f.field();
  Presemifield::MulFn mul;
  if (f.tower().n() <= kMaxTableDegree) {
    auto vals = std::make_shared<const std::vector<std::uint32_t>>(f.table());
    mul = [vals, field](Fe x, Fe y) {
      const auto& v = *vals;
      return field->mul(x, y) + Fe{v[x.bits ^ y.bits] ^ v[x.bits] ^ v[y.bits]};
    };
  } else {
    mul = [f, field](Fe x, Fe y) { return field->mul(x, y) + f(x + y) + f(x) + f(y); };
  }
  Presemifield p(f.tower().field_ptr(), "planar", std::move(mul));
  if (p.n() <= kMaxPresemifieldTableDegree && !has_no_zero_divisors(p)) {
    throw internal_error("planar polynomial produced zero divisors: " + f.to_string());
  }
  return p;
}

inline Fe knuth_mul(const GF2n& f, Fe x, Fe y) {
  const Fe s = (f.abs_trace(y).is_zero() ? Fe{} : x) + (f.abs_trace(x).is_zero() ? Fe{} : y);
  return f.mul(x, y) + f.sqr(s);
}

inline Presemifield knuth_presemifield(std::shared_ptr<const GF2n> field) {
  if (field->degree() % 2 == 0) throw usage_error("Knuth presemifield needs odd n");
  const GF2n* f = field.get();
  return Presemifield(std::move(field), "knuth", [f](Fe x, Fe y) { return knuth_mul(*f, x, y); });
}

// F = F_0 > F_1 > ... > F_t given by the degrees of F_1..F_t, with one
// nonzero zeta per step.
struct KantorChain {
  std::vector<unsigned> degrees;
  std::vector<Fe> zetas;
};

inline void validate_kantor_chain(const GF2n& f, const KantorChain& c) {
  const unsigned n = f.degree();
  if (c.degrees.empty()) throw usage_error("Kantor chain needs at least one subfield");
  if (c.degrees.size() != c.zetas.size()) throw usage_error("Kantor chain needs one zeta per subfield");
  unsigned prev = n;
  for (unsigned d : c.degrees) {
    if (d == 0 || d >= prev || prev % d != 0) {
      throw usage_error("Kantor chain degrees must strictly decrease and divide: " + std::to_string(d) +
                        " under " + std::to_string(prev));
    }
    prev = d;
  }
  if ((n / prev) % 2 == 0) throw usage_error("Kantor chain needs [F:F_t] odd");
  for (Fe z : c.zetas) {
    if (z.is_zero() || !f.contains(z)) throw usage_error("Kantor zetas must be nonzero field elements");
  }
}

// Relative trace GF(2^n) -> GF(2^d).
inline Fe relative_trace(const GF2n& f, Fe x, unsigned d) {
  Fe t{};
  for (unsigned j = 0; j < f.degree(); j += d) t += f.frob2(x, j);
  return t;
}

inline Fe kantor_mul(const GF2n& f, const KantorChain& c, Fe x, Fe y) {
  Fe sx{}, sy{};
  for (std::size_t i = 0; i < c.degrees.size(); ++i) {
    sx += relative_trace(f, f.mul(c.zetas[i], x), c.degrees[i]);
    sy += relative_trace(f, f.mul(c.zetas[i], y), c.degrees[i]);
  }
  return f.mul(x, y) + f.sqr(f.mul(x, sy) + f.mul(y, sx));
}

inline Presemifield kantor_presemifield(std::shared_ptr<const GF2n> field, KantorChain chain) {
  validate_kantor_chain(*field, chain);
  const GF2n* f = field.get();
  return Presemifield(std::move(field), "kantor",
                      [f, c = std::move(chain)](Fe x, Fe y) { return kantor_mul(*f, c, x, y); });
}

namespace detail {

// Inverse of z -> g(z) as a lookup table; internal error if g is not a bijection.
template <class G>
std::shared_ptr<const std::vector<std::uint32_t>> inverse_table(std::uint64_t size, G&& g, const char* what) {
  if (size > (std::uint64_t{1} << kMaxTableDegree)) throw budget_error(std::string(what) + " inversion needs n <= 20");
  auto inv = std::make_shared<std::vector<std::uint32_t>>(size, 0);
  std::vector<char> hit(size, 0);
  for (std::uint64_t z = 0; z < size; ++z) {
    const std::uint32_t img = g(Fe{static_cast<std::uint32_t>(z)}).bits;
    if (hit[img]) throw internal_error(std::string(what) + " is not invertible");
    hit[img] = 1;
    (*inv)[img] = static_cast<std::uint32_t>(z);
  }
  return inv;
}

}  // namespace detail

// u * v = R_e^-1(u) * L_e^-1(v) with R_e(x) = x*e, L_e(y) = e*y; identity e*e.
inline Presemifield to_semifield(const Presemifield& p, Fe e) {
  if (e.is_zero()) throw usage_error("isotope element e must be nonzero");
  auto rinv = detail::inverse_table(p.size(), [&](Fe x) { return p.mul(x, e); }, "R_e");
  auto linv = detail::inverse_table(p.size(), [&](Fe y) { return p.mul(e, y); }, "L_e");
  Presemifield s(p.field_ptr(), p.kind() + "-isotope", [p, rinv, linv](Fe u, Fe v) {
    return p.mul(Fe{(*rinv)[u.bits]}, Fe{(*linv)[v.bits]});
  });
  const Fe id = p.mul(e, e);
  if (!is_two_sided_identity(s, id)) throw internal_error("isotope is not unital");
  s.set_identity(id);
  return s;
}

// x o y = L^-1(x*y) with L(x) = x*1; identity 1.
inline Presemifield to_semifield_l_inverse(const Presemifield& p) {
  auto linv = detail::inverse_table(p.size(), [&](Fe x) { return p.mul(x, GF2n::one()); }, "L");
  Presemifield s(p.field_ptr(), p.kind() + "-linv",
                 [p, linv](Fe x, Fe y) { return Fe{(*linv)[p.mul(x, y).bits]}; });
  if (!is_two_sided_identity(s, GF2n::one())) throw internal_error("L^-1 construction is not unital");
  s.set_identity(GF2n::one());
  return s;
}

// ---------------------------------------------------------------------------
// Nuclei

struct NucleiReport {
  std::uint64_t order = 0;
  std::vector<Fe> left, middle, right;
  bool is_associative = false;
  bool is_field = false;
};

// Each nucleus by its associativity identity over all (x, y), with early exit.
inline NucleiReport nuclei(const Presemifield& s, unsigned threads = 1) {
  if (s.n() > kMaxNucleiDegree) throw budget_error("nuclei need n <= " + std::to_string(kMaxNucleiDegree));
  if (!s.identity()) throw usage_error("nuclei need a presemifield with identity");
  Presemifield t = s;
  t.materialize();
  const std::uint32_t size = static_cast<std::uint32_t>(t.size());
  const std::uint32_t* tab = t.table().data();
  const unsigned n = t.n();
  auto m = [&](std::uint32_t x, std::uint32_t y) { return tab[(static_cast<std::size_t>(x) << n) | y]; };

  std::vector<char> in_left(size, 0), in_mid(size, 0), in_right(size, 0);
  parallel_for(size, threads, [&](std::size_t ai) {
    const auto a = static_cast<std::uint32_t>(ai);
    bool l = true, mid = true, r = true;
    for (std::uint32_t x = 0; x < size && (l || mid || r); ++x) {
      for (std::uint32_t y = 0; y < size && (l || mid || r); ++y) {
        if (l && m(m(a, x), y) != m(a, m(x, y))) l = false;
        if (mid && m(m(x, a), y) != m(x, m(a, y))) mid = false;
        if (r && m(m(x, y), a) != m(x, m(y, a))) r = false;
      }
    }
    in_left[ai] = l;
    in_mid[ai] = mid;
    in_right[ai] = r;
  });

  NucleiReport rep;
  rep.order = size;
  for (std::uint32_t a = 0; a < size; ++a) {
    if (in_left[a]) rep.left.push_back(Fe{a});
    if (in_mid[a]) rep.middle.push_back(Fe{a});
    if (in_right[a]) rep.right.push_back(Fe{a});
  }
  rep.is_associative = rep.left.size() == size;
  rep.is_field = rep.is_associative && is_commutative(t);
  return rep;
}

// ---------------------------------------------------------------------------
// The omega example H = w x^(q+1) + x^(q^2+1) + w^2 x^(q^3+1) over GF(q^4),
// m even, w^2 + w + 1 = 0.

inline Fe cube_root_of_unity(const GF2n& f) {
  for (std::uint64_t b = 2; b < f.size(); ++b) {
    const Fe w{static_cast<std::uint32_t>(b)};
    if (f.sqr(w) + w + GF2n::one() == Fe{}) return w;
  }
  throw domain_error("GF(2^" + std::to_string(f.degree()) + ") has no primitive cube root of unity");
}

inline std::shared_ptr<const Tower> omega_tower(unsigned m) {
  if (m == 0 || m % 2 != 0) throw usage_error("omega example needs m even");
  return Tower::get(m, 4);
}

inline DOPoly omega_h_poly(unsigned m) {
  auto t = omega_tower(m);
  const GF2n& f = t->field();
  const Fe w = cube_root_of_unity(f);
  DOPoly h(t);
  h.add_term(w, m, 0).add_term(GF2n::one(), 2 * m, 0).add_term(f.sqr(w), 3 * m, 0);
  return h;
}

namespace detail {

struct OmegaCtx {
  std::shared_ptr<const Tower> t;
  Fe w, w2;

  Fe q(Fe x, unsigned j) const { return t->frobq(x, j); }
  Fe mul(Fe a, Fe b) const { return t->field().mul(a, b); }

  // c0 z^q + c1 z^(q^2) + c2 z^(q^3).
  Fe lin3(Fe c0, Fe c1, Fe c2, Fe z) const { return mul(c0, q(z, 1)) + mul(c1, q(z, 2)) + mul(c2, q(z, 3)); }

  // The displayed presemifield expansion.
  Fe star(Fe x, Fe y) const {
    return mul(x, y) + mul(w, mul(q(x, 1), y) + mul(x, q(y, 1))) + (mul(q(x, 2), y) + mul(x, q(y, 2))) +
           mul(w2, mul(q(x, 3), y) + mul(x, q(y, 3)));
  }

  Fe l_inverse(Fe x) const { return x + mul(w2, q(x, 1)) + q(x, 2) + mul(w, q(x, 3)); }

  Fe y1(Fe y) const { return lin3(w2, w, GF2n::one(), y); }
  Fe y2(Fe y) const { return lin3(w, GF2n::one(), w2, y); }
  Fe y3(Fe y) const { return lin3(GF2n::one(), w2, w, y); }

  // The displayed expansion of x o y.
  Fe circ(Fe x, Fe y) const { return mul(x, y) + mul(q(x, 1), y1(y)) + mul(q(x, 2), y2(y)) + mul(q(x, 3), y3(y)); }

  std::array<Fe, 4> a_terms(Fe x, Fe y) const {
    const Fe z = circ(x, y);
    return {z, lin3(w2, w, GF2n::one(), z), lin3(w, GF2n::one(), w2, z), lin3(GF2n::one(), w2, w, z)};
  }

  std::array<Fe, 4> b_terms(Fe x, Fe y) const {
    const Fe one = GF2n::one();
    auto xl = [&](Fe c0, Fe c1, Fe c2, Fe c3) {
      return mul(c0, x) + mul(c1, q(x, 1)) + mul(c2, q(x, 2)) + mul(c3, q(x, 3));
    };
    const Fe Y1 = y1(y), Y2 = y2(y), Y3 = y3(y);
    const Fe b0 = mul(x, y) + mul(xl(w, Fe{}, one, w2), Y1) + mul(xl(one, w2, Fe{}, w), Y2) +
                  mul(xl(w2, w, one, Fe{}), Y3);
    const Fe b1 = mul(xl(Fe{}, w2, w, one), y) + mul(q(x, 1), Y1) + mul(xl(w2, w, Fe{}, one), Y2) +
                  mul(xl(w, one, w2, Fe{}), Y3);
    const Fe b2 = mul(xl(Fe{}, w, one, w2), y) + mul(xl(one, Fe{}, w2, w), Y1) + mul(q(x, 2), Y2) +
                  mul(xl(one, w2, w, Fe{}), Y3);
    const Fe b3 = mul(xl(Fe{}, one, w2, w), y) + mul(xl(w2, Fe{}, w, one), Y1) + mul(xl(w, one, Fe{}, w2), Y2) +
                  mul(q(x, 3), Y3);
    return {b0, b1, b2, b3};
  }
};

inline OmegaCtx omega_ctx(unsigned m) {
  auto t = omega_tower(m);
  const Fe w = cube_root_of_unity(t->field());
  return {t, w, t->field().sqr(w)};
}

}  // namespace detail

// The semifield x o y from the displayed closed form; identity 1.
inline Presemifield omega_semifield(unsigned m) {
  auto ctx = detail::omega_ctx(m);
  Presemifield s(ctx.t->field_ptr(), "omega", [ctx](Fe x, Fe y) { return ctx.circ(x, y); });
  s.set_identity(GF2n::one());
  return s;
}

// The closed-form L^-1(x) = x + w^2 x^q + x^(q^2) + w x^(q^3).
inline Fe omega_l_inverse(unsigned m, Fe x) { return detail::omega_ctx(m).l_inverse(x); }

// Verifies the displayed * expansion against H, x o y = L^-1(x*y), and
// A_i = B_i for i = 0..3: over all pairs for m = 2, over basis pairs for m = 4
// (every expression is biadditive).
inline bool check_ai_bi_identity(unsigned m) {
  if (m == 0 || m % 2 != 0 || m > 4) throw usage_error("A_i = B_i check needs m in {2, 4}");
  const auto ctx = detail::omega_ctx(m);
  const DOPoly h = omega_h_poly(m);
  const unsigned n = ctx.t->n();
  std::vector<Fe> xs;
  if (m == 2) {
    for (std::uint32_t x = 0; x < (1U << n); ++x) xs.push_back(Fe{x});
  } else {
    for (unsigned i = 0; i < n; ++i) xs.push_back(Fe{1U << i});
  }
  const GF2n& f = ctx.t->field();
  for (Fe x : xs) {
    for (Fe y : xs) {
      const Fe star = ctx.star(x, y);
      if (star != f.mul(x, y) + h(x + y) + h(x) + h(y)) return false;
      if (ctx.circ(x, y) != ctx.l_inverse(star)) return false;
      if (ctx.a_terms(x, y) != ctx.b_terms(x, y)) return false;
    }
  }
  return true;
}

}  // namespace pf2
