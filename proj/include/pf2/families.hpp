#pragma once

// Coefficient families: the four shapes P1..P4 with their parametrized
// planar members, and the known monomial/binomial families.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pf2/criteria.hpp"
#include "pf2/dopoly.hpp"
#include "pf2/errors.hpp"
#include "pf2/fields.hpp"

namespace pf2 {

enum class Family {
  P1,
  P2,
  P3,
  P4a,
  P4b,
  SZMonomial,
  SZGeneralized,
  ScherrZieve,
  Hu2,
  Hu3,
  Knuth,
};

inline constexpr std::array<std::pair<Family, std::string_view>, 11> kFamilyNames{{
    {Family::P1, "P1"},
    {Family::P2, "P2"},
    {Family::P3, "P3"},
    {Family::P4a, "P4a"},
    {Family::P4b, "P4b"},
    {Family::SZMonomial, "SZ-monomial"},
    {Family::SZGeneralized, "SZ-generalized"},
    {Family::ScherrZieve, "ScherrZieve"},
    {Family::Hu2, "Hu2"},
    {Family::Hu3, "Hu3"},
    {Family::Knuth, "Knuth"},
}};

inline std::string family_name(Family f) {
  for (const auto& [tag, name] : kFamilyNames) {
    if (tag == f) return std::string(name);
  }
  throw internal_error("unnamed family");
}

inline Family parse_family(std::string_view s) {
  for (const auto& [tag, name] : kFamilyNames) {
    if (name == s) return tag;
  }
  throw usage_error("unknown family '" + std::string(s) + "'");
}

// Number of Fe parameters each family takes.
inline unsigned family_arity(Family f) {
  switch (f) {
    case Family::P2: return 2;
    case Family::Hu2:
    case Family::Hu3:
    case Family::Knuth: return 0;
    default: return 1;
  }
}

// Tower degree k the family lives over; 0 means any (Knuth uses m = 1).
inline unsigned family_k(Family f) {
  switch (f) {
    case Family::P1:
    case Family::SZMonomial:
    case Family::SZGeneralized: return 2;
    case Family::P2:
    case Family::P3:
    case Family::ScherrZieve:
    case Family::Hu2:
    case Family::Hu3: return 3;
    case Family::P4a:
    case Family::P4b: return 4;
    case Family::Knuth: return 0;
  }
  return 0;
}

struct FamilyParams {
  Family family;
  std::vector<Fe> params;
  std::shared_ptr<const Tower> tower;
};

// Shape builders.
inline DOPoly p1_poly(std::shared_ptr<const Tower> t, Fe a, Fe b) {
  const std::uint64_t q = t->q();
  DOPoly f(t);
  f.add_exponent(a, q + 1).add_exponent(b, 2 * (q + 1));
  return f;
}

inline DOPoly p2_poly(std::shared_ptr<const Tower> t, Fe a, Fe b, Fe c) {
  const std::uint64_t q = t->q();
  DOPoly f(t);
  f.add_exponent(a, q + 1).add_exponent(b, q * q + q).add_exponent(c, q * q + 1);
  return f;
}

inline DOPoly p3_poly(std::shared_ptr<const Tower> t, Fe a, Fe b, Fe c) {
  const std::uint64_t q = t->q();
  DOPoly f(t);
  f.add_exponent(a, 2 * (q + 1)).add_exponent(b, 2 * (q * q + q)).add_exponent(c, 2 * (q * q + 1));
  return f;
}

inline DOPoly p4_poly(std::shared_ptr<const Tower> t, Fe a, Fe b, Fe c) {
  const std::uint64_t q = t->q();
  DOPoly f(t);
  f.add_exponent(a, q + 1).add_exponent(b, q * q + 1).add_exponent(c, q * q * q + 1);
  return f;
}

namespace detail {

inline void require_tower(const FamilyParams& p) {
  if (!p.tower) throw usage_error("family parameters need a tower");
  const unsigned k = family_k(p.family);
  if (k != 0 && p.tower->k() != k) {
    throw usage_error(family_name(p.family) + " lives over GF(q^" + std::to_string(k) + "), got k = " +
                      std::to_string(p.tower->k()));
  }
  if (p.params.size() != family_arity(p.family)) {
    throw usage_error(family_name(p.family) + " takes " + std::to_string(family_arity(p.family)) +
                      " parameter(s), got " + std::to_string(p.params.size()));
  }
  for (Fe x : p.params) {
    if (!p.tower->field().contains(x)) throw usage_error("family parameter outside the field");
  }
}

// x^(q^i) products: sum of q-powers as an exponent.
inline Fe qpow(const Tower& t, Fe x, std::initializer_list<unsigned> js) {
  const GF2n& f = t.field();
  Fe r = GF2n::one();
  for (unsigned j : js) r = f.mul(r, t.frobq(x, j));
  return r;
}

}  // namespace detail

// Delta = u v^q + u^q v^(q^2) + u^(q^2) v + u^(1+q+q^2) + v^(1+q+q^2).
inline Fe p2_delta(const Tower& t, Fe u, Fe v) {
  const GF2n& f = t.field();
  return f.mul(u, t.frobq(v)) + f.mul(t.frobq(u), t.frobq(v, 2)) + f.mul(t.frobq(u, 2), v) + t.norm(u) + t.norm(v);
}

// Empty when admissible, otherwise the violated condition.
inline std::optional<std::string> admissibility_violation(const FamilyParams& p) {
  detail::require_tower(p);
  const Tower& t = *p.tower;
  const GF2n& f = t.field();
  const unsigned m = t.m();
  switch (p.family) {
    case Family::P1:
      if (f.mul(p.params[0], t.frobq(p.params[0])) == GF2n::one()) return "P1 needs 1 + s^(1+q) != 0";
      return std::nullopt;
    case Family::P2:
      if (p2_delta(t, p.params[0], p.params[1]) == GF2n::one()) return "P2 needs Delta != 1";
      return std::nullopt;
    case Family::P3: return std::nullopt;
    case Family::P4a:
      if (f.mul(p.params[0], t.frobq(p.params[0], 2)) == GF2n::one()) return "P4a needs 1 + s1^(1+q^2) != 0";
      return std::nullopt;
    case Family::P4b:
      if (t.norm(p.params[0]) == GF2n::one()) return "P4b needs 1 + s2^(1+q+q^2+q^3) != 0";
      return std::nullopt;
    case Family::SZMonomial: {
      const Fe c = p.params[0];
      if (c.is_zero()) return "SZ-monomial needs c != 0";
      if (!t.in_base(c)) return "SZ-monomial needs c in GF(q)";
      if (!t.base_abs_trace(c).is_zero()) return "SZ-monomial needs Tr(c) = 0";
      return std::nullopt;
    }
    case Family::SZGeneralized: {
      const Fe c = p.params[0];
      if (c.is_zero()) return "SZ-generalized needs c != 0";
      if (!t.base_abs_trace(t.norm(c)).is_zero()) return "SZ-generalized needs Tr(c^(q+1)) = 0";
      return std::nullopt;
    }
    case Family::ScherrZieve: {
      const Fe c = p.params[0];
      const std::uint64_t q = t.q();
      const std::uint64_t e = q * q + q + 1;
      if (m % 2 != 0) return "ScherrZieve needs m even";
      if (c.is_zero()) return "ScherrZieve needs c != 0";
      if (f.pow(c, e) != GF2n::one()) return "ScherrZieve needs c^(q^2+q+1) = 1";
      if (f.pow(c, e / 3) == GF2n::one()) return "ScherrZieve needs c^((q^2+q+1)/3) != 1";
      return std::nullopt;
    }
    case Family::Hu2:
      if (m % 3 == 2) return "Hu2 needs m != 2 mod 3";
      return std::nullopt;
    case Family::Hu3:
      if (m % 3 == 1) return "Hu3 needs m != 1 mod 3";
      return std::nullopt;
    case Family::Knuth:
      if (t.n() % 2 == 0) return "Knuth needs odd n";
      return std::nullopt;
  }
  return std::nullopt;
}

inline bool is_admissible(const FamilyParams& p) { return !admissibility_violation(p).has_value(); }

// The planar member of the family's shape for the given parameters.
inline DOPoly family_coeffs(const FamilyParams& p) {
  if (auto why = admissibility_violation(p)) throw domain_error(*why);
  const auto& tp = p.tower;
  const Tower& t = *tp;
  const GF2n& f = t.field();
  const std::uint64_t q = t.q();
  switch (p.family) {
    case Family::P1: {
      const Fe s = p.params[0];
      const Fe a = f.div(t.frobq(s), GF2n::one() + f.mul(s, t.frobq(s)));
      return p1_poly(tp, a, Fe{});
    }
    case Family::P2: {
      const Fe u = p.params[0], v = p.params[1];
      const Fe d = GF2n::one() + p2_delta(t, u, v);
      const Fe uq = t.frobq(u), uq2 = t.frobq(u, 2), vq = t.frobq(v), vq2 = t.frobq(v, 2);
      const Fe a = t.frobq(v) + f.mul(uq, uq2) + f.mul(uq2, f.mul(v, vq));
      const Fe b = f.mul(uq2, vq);
      const Fe c = f.mul(vq, vq2) + uq2 + f.mul(f.mul(u, uq2), vq);
      return p2_poly(tp, f.div(a, d), f.div(b, d), f.div(c, d));
    }
    case Family::P3: {
      const Fe a = p.params[0];
      return p3_poly(tp, a, Fe{}, t.frobq(a));
    }
    case Family::P4a: {
      const Fe s = p.params[0];
      const Fe b = f.div(t.frobq(s, 2), GF2n::one() + f.mul(s, t.frobq(s, 2)));
      return p4_poly(tp, Fe{}, b, Fe{});
    }
    case Family::P4b: {
      const Fe s = p.params[0];
      const Fe d = GF2n::one() + t.norm(s);
      const Fe a = f.div(detail::qpow(t, s, {1, 2, 3}), d);
      const Fe b = f.div(detail::qpow(t, s, {2, 3}), d);
      const Fe c = f.div(t.frobq(s, 3), d);
      return p4_poly(tp, a, b, c);
    }
    case Family::SZMonomial:
    case Family::SZGeneralized: {
      DOPoly g(tp);
      g.add_exponent(p.params[0], q + 1);
      return g;
    }
    case Family::ScherrZieve: {
      DOPoly g(tp);
      g.add_exponent(p.params[0], q * q + q);
      return g;
    }
    case Family::Hu2: {
      DOPoly g(tp);
      g.add_exponent(GF2n::one(), q + 1).add_exponent(GF2n::one(), q * q + q);
      return g;
    }
    case Family::Hu3: {
      DOPoly g(tp);
      g.add_exponent(GF2n::one(), q * q + 1).add_exponent(GF2n::one(), q * q + q);
      return g;
    }
    case Family::Knuth: {
      // (x Tr(x))^2 = sum_i x^(2 + 2^(i+1)).
      DOPoly g(tp);
      for (unsigned i = 0; i < t.n(); ++i) g.add_term(GF2n::one(), 1, (i + 1) % t.n());
      return g;
    }
  }
  throw internal_error("unhandled family");
}

// The (a, b[, c]) tuple of a shape polynomial, read back from its terms.
inline std::vector<Fe> shape_tuple(Family family, const DOPoly& f) {
  const std::uint64_t q = f.tower().q();
  const std::uint64_t order = f.field().order();
  auto at = [&](std::uint64_t e) { return f.coeff((e - 1) % order + 1); };
  switch (family) {
    case Family::P1: return {at(q + 1), at(2 * (q + 1))};
    case Family::P2: return {at(q + 1), at(q * q + q), at(q * q + 1)};
    case Family::P3: return {at(2 * (q + 1)), at(2 * (q * q + q)), at(2 * (q * q + 1))};
    case Family::P4a:
    case Family::P4b: return {at(q + 1), at(q * q + 1), at(q * q * q + 1)};
    default: throw usage_error(family_name(family) + " has no (a, b, c) shape");
  }
}

inline DOPoly shape_poly(Family family, std::shared_ptr<const Tower> t, const std::vector<Fe>& tuple) {
  auto need = [&](std::size_t n) {
    if (tuple.size() != n) throw usage_error(family_name(family) + " shape takes " + std::to_string(n) + " coefficients");
  };
  switch (family) {
    case Family::P1: need(2); return p1_poly(std::move(t), tuple[0], tuple[1]);
    case Family::P2: need(3); return p2_poly(std::move(t), tuple[0], tuple[1], tuple[2]);
    case Family::P3: need(3); return p3_poly(std::move(t), tuple[0], tuple[1], tuple[2]);
    case Family::P4a:
    case Family::P4b: need(3); return p4_poly(std::move(t), tuple[0], tuple[1], tuple[2]);
    default: throw usage_error(family_name(family) + " has no (a, b, c) shape");
  }
}

// M = {c in GF(q^2) : Tr_{q/2}(c^(1+q)) = 0}, ascending.
inline std::vector<Fe> m_set(const Tower& t) {
  detail::require_k(t, 2);
  std::vector<Fe> out;
  for (std::uint64_t x = 0; x < t.field().size(); ++x) {
    const Fe c{static_cast<std::uint32_t>(x)};
    if (t.base_abs_trace(t.norm(c)).is_zero()) out.push_back(c);
  }
  return out;
}

// N = {s^q / (1 + s^(1+q)) : s^(1+q) != 1}, ascending and deduplicated.
inline std::vector<Fe> n_set(const Tower& t) {
  detail::require_k(t, 2);
  const GF2n& f = t.field();
  std::vector<Fe> out;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    const Fe s{static_cast<std::uint32_t>(x)};
    const Fe nrm = t.norm(s);
    if (nrm == GF2n::one()) continue;
    out.push_back(f.div(t.frobq(s), GF2n::one() + nrm));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// s -> s^q / (1 + s^(1+q)) is 2-to-1 on GF(q^2)* minus mu_(q+1), with fibres
// {s, 1/s^q}.
inline bool two_to_one_check(const Tower& t) {
  detail::require_k(t, 2);
  const GF2n& f = t.field();
  std::map<Fe, std::vector<Fe>> fibres;
  for (std::uint64_t x = 1; x < f.size(); ++x) {
    const Fe s{static_cast<std::uint32_t>(x)};
    const Fe nrm = t.norm(s);
    if (nrm == GF2n::one()) continue;
    fibres[f.div(t.frobq(s), GF2n::one() + nrm)].push_back(s);
  }
  for (const auto& [image, pre] : fibres) {
    if (image.is_zero() || pre.size() != 2) return false;
    if (f.inv(t.frobq(pre[0])) != pre[1]) return false;
  }
  return true;
}

}  // namespace pf2
