#pragma once

// Root-free criteria for DO polynomials over GF(q^k), k = 2, 3, 4, and the
// maps between DOPoly terms and the coefficient slots c_{j,i} they use.
//   k = 2: F = sum_{i<m} c_i x^(2^(m+i) + 2^i)
//   k = 3: F = sum_{i<2m} c1_i x^(2^(m+i) + 2^i) + sum_{i<m} c2_i x^(2^(2m+i) + 2^i)
//   k = 4: F = sum_{i<3m} c1_i x^(2^i (q+1)) + sum_{i<2m} c2_i x^(2^i (q^2+1))
//            + sum_{i<m} c3_i x^(2^i (q^3+1))
// Linear terms x^(2^j) never affect planarity and are dropped.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pf2/dopoly.hpp"
#include "pf2/errors.hpp"
#include "pf2/fields.hpp"

namespace pf2 {

struct SlotsK2 {
  std::vector<Fe> c;
};

struct SlotsK3 {
  std::vector<Fe> c1;
  std::vector<Fe> c2;
};

struct SlotsK4 {
  std::vector<Fe> c1;
  std::vector<Fe> c2;
  std::vector<Fe> c3;
};

namespace detail {

inline void require_k(const Tower& t, unsigned k) {
  if (t.k() != k) {
    throw usage_error("criterion needs a degree-" + std::to_string(k) + " tower, got k = " + std::to_string(t.k()));
  }
}

inline void require_len(const std::vector<Fe>& v, std::size_t len, const char* name) {
  if (v.size() != len) {
    throw usage_error(std::string(name) + " needs " + std::to_string(len) + " coefficients, got " +
                      std::to_string(v.size()));
  }
}

// (c x)^(2^j), j taken modulo n.
inline Fe twist(const GF2n& f, Fe c, Fe x, unsigned j) { return f.frob2(f.mul(c, x), j); }

// Cyclic distance class of a quadratic exponent: returns (start, gap) with
// the pair {start, start + gap} and gap a multiple of m below n.
struct SlotKey {
  unsigned start;
  unsigned gap;
};

inline SlotKey slot_key(std::uint64_t e, unsigned m, unsigned n) {
  auto [u, v] = exponent_pair(e, n);
  const unsigned d = v - u;
  if (d % m != 0) {
    throw usage_error("exponent " + std::to_string(e) + " does not fit the 2^i (q^j + 1) slot shape");
  }
  return {u, d};
}

inline void check_field(const Tower& t, const std::vector<Fe>& v) {
  for (Fe c : v) {
    if (!t.field().contains(c)) throw usage_error("slot coefficient outside GF(q^k)");
  }
}

}  // namespace detail

inline SlotsK2 slots_k2(const DOPoly& f) {
  const Tower& t = f.tower();
  detail::require_k(t, 2);
  const unsigned m = t.m(), n = t.n();
  SlotsK2 s{std::vector<Fe>(m)};
  for (const auto& [e, c] : f.terms()) {
    if (std::popcount(e) == 1) continue;
    auto key = detail::slot_key(e, m, n);
    s.c[key.start] += c;
  }
  return s;
}

inline SlotsK3 slots_k3(const DOPoly& f) {
  const Tower& t = f.tower();
  detail::require_k(t, 3);
  const unsigned m = t.m(), n = t.n();
  SlotsK3 s{std::vector<Fe>(2 * m), std::vector<Fe>(m)};
  for (const auto& [e, c] : f.terms()) {
    if (std::popcount(e) == 1) continue;
    auto key = detail::slot_key(e, m, n);
    if (key.gap == m) {
      s.c1[key.start] += c;
    } else {
      s.c2[key.start] += c;
    }
  }
  return s;
}

inline SlotsK4 slots_k4(const DOPoly& f) {
  const Tower& t = f.tower();
  detail::require_k(t, 4);
  const unsigned m = t.m(), n = t.n();
  SlotsK4 s{std::vector<Fe>(3 * m), std::vector<Fe>(2 * m), std::vector<Fe>(m)};
  for (const auto& [e, c] : f.terms()) {
    if (std::popcount(e) == 1) continue;
    auto key = detail::slot_key(e, m, n);
    if (key.gap == m) {
      s.c1[key.start] += c;
    } else if (key.gap == 2 * m) {
      s.c2[key.start] += c;
    } else {
      s.c3[key.start] += c;
    }
  }
  return s;
}

inline DOPoly from_slots(std::shared_ptr<const Tower> t, const SlotsK2& s) {
  detail::require_k(*t, 2);
  const unsigned m = t->m();
  detail::require_len(s.c, m, "c");
  detail::check_field(*t, s.c);
  DOPoly f(t);
  for (unsigned i = 0; i < m; ++i) f.add_term(s.c[i], i, m + i);
  return f;
}

inline DOPoly from_slots(std::shared_ptr<const Tower> t, const SlotsK3& s) {
  detail::require_k(*t, 3);
  const unsigned m = t->m();
  detail::require_len(s.c1, 2 * m, "c1");
  detail::require_len(s.c2, m, "c2");
  detail::check_field(*t, s.c1);
  detail::check_field(*t, s.c2);
  DOPoly f(t);
  for (unsigned i = 0; i < 2 * m; ++i) f.add_term(s.c1[i], i, m + i);
  for (unsigned i = 0; i < m; ++i) f.add_term(s.c2[i], i, 2 * m + i);
  return f;
}

inline DOPoly from_slots(std::shared_ptr<const Tower> t, const SlotsK4& s) {
  detail::require_k(*t, 4);
  const unsigned m = t->m();
  detail::require_len(s.c1, 3 * m, "c1");
  detail::require_len(s.c2, 2 * m, "c2");
  detail::require_len(s.c3, m, "c3");
  detail::check_field(*t, s.c1);
  detail::check_field(*t, s.c2);
  detail::check_field(*t, s.c3);
  DOPoly f(t);
  for (unsigned i = 0; i < 3 * m; ++i) f.add_term(s.c1[i], i, m + i);
  for (unsigned i = 0; i < 2 * m; ++i) f.add_term(s.c2[i], i, 2 * m + i);
  for (unsigned i = 0; i < m; ++i) f.add_term(s.c3[i], i, 3 * m + i);
  return f;
}

// x^(q+1) + sum (c_i x)^(2^(m-i+1)) + sum (c_i x)^(2^(2m-i+1)).
inline Fe g_value_k2(const Tower& t, const SlotsK2& s, Fe x) {
  detail::require_k(t, 2);
  const unsigned m = t.m();
  detail::require_len(s.c, m, "c");
  const GF2n& f = t.field();
  Fe g = f.mul(x, t.frobq(x));
  for (unsigned i = 0; i < m; ++i) {
    if (s.c[i].is_zero()) continue;
    g += detail::twist(f, s.c[i], x, m - i + 1);
    g += detail::twist(f, s.c[i], x, 2 * m - i + 1);
  }
  return g;
}

// x^(q^2+q+1) + Tr(x^q A2^2).
inline Fe g_value_k3(const Tower& t, const SlotsK3& s, Fe x) {
  detail::require_k(t, 3);
  const unsigned m = t.m();
  detail::require_len(s.c1, 2 * m, "c1");
  detail::require_len(s.c2, m, "c2");
  const GF2n& f = t.field();
  Fe a2{};
  for (unsigned i = 0; i < m; ++i) a2 += detail::twist(f, s.c2[i], x, 3 * m - i);
  for (unsigned i = 0; i < 2 * m; ++i) a2 += detail::twist(f, s.c1[i], x, 2 * m - i);
  return t.norm(x) + t.trace(f.mul(t.frobq(x), f.sqr(a2)));
}

// N(x) + A2^(2q+2) + A3^(2q^2+2) + A3^(2q^3+2q) + x^(q^2+1) A2^(2q)
//   + x^(q^3+q) A2^2 + Tr(x^(q^2+q) A3^2).
inline Fe g_value_k4(const Tower& t, const SlotsK4& s, Fe x) {
  detail::require_k(t, 4);
  const unsigned m = t.m();
  detail::require_len(s.c1, 3 * m, "c1");
  detail::require_len(s.c2, 2 * m, "c2");
  detail::require_len(s.c3, m, "c3");
  const GF2n& f = t.field();
  Fe a2{}, a3{};
  for (unsigned i = 0; i < 2 * m; ++i) {
    a2 += detail::twist(f, s.c2[i], x, 4 * m - i);
    a2 += detail::twist(f, s.c2[i], x, 2 * m - i);
  }
  for (unsigned i = 0; i < m; ++i) a3 += detail::twist(f, s.c3[i], x, 4 * m - i);
  for (unsigned i = 0; i < 3 * m; ++i) a3 += detail::twist(f, s.c1[i], x, 3 * m - i);
  const Fe a2sq = f.sqr(a2), a3sq = f.sqr(a3);
  Fe g = t.norm(x);
  g += f.mul(t.frobq(a2sq), a2sq);
  g += f.mul(t.frobq(a3sq, 2), a3sq);
  g += f.mul(t.frobq(a3sq, 3), t.frobq(a3sq, 1));
  g += f.mul(f.mul(t.frobq(x, 2), x), t.frobq(a2sq));
  g += f.mul(f.mul(t.frobq(x, 3), t.frobq(x)), a2sq);
  g += t.trace(f.mul(f.mul(t.frobq(x, 2), t.frobq(x)), a3sq));
  return g;
}

namespace detail {

template <class Eval>
bool no_nonzero_root(const Tower& t, Eval&& eval) {
  if (t.n() > kMaxSweepDegree) throw budget_error("criterion sweep needs n <= 24");
  const std::uint64_t size = t.field().size();
  for (std::uint64_t x = 1; x < size; ++x) {
    if (eval(Fe{static_cast<std::uint32_t>(x)}).is_zero()) return false;
  }
  return true;
}

}  // namespace detail

inline bool g_criterion_k2(const Tower& t, const SlotsK2& s) {
  g_value_k2(t, s, Fe{});
  return detail::no_nonzero_root(t, [&](Fe x) { return g_value_k2(t, s, x); });
}

inline bool g_criterion_k3(const Tower& t, const SlotsK3& s) {
  g_value_k3(t, s, Fe{});
  return detail::no_nonzero_root(t, [&](Fe x) { return g_value_k3(t, s, x); });
}

inline bool g_criterion_k4(const Tower& t, const SlotsK4& s) {
  g_value_k4(t, s, Fe{});
  return detail::no_nonzero_root(t, [&](Fe x) { return g_value_k4(t, s, x); });
}

// g(x) for a DOPoly of matching shape, dispatched on k.
inline Fe g_value(const DOPoly& f, Fe x) {
  const Tower& t = f.tower();
  switch (t.k()) {
    case 2: return g_value_k2(t, slots_k2(f), x);
    case 3: return g_value_k3(t, slots_k3(f), x);
    case 4: return g_value_k4(t, slots_k4(f), x);
    default: throw usage_error("g criterion exists only for k = 2, 3, 4");
  }
}

inline bool g_criterion(const DOPoly& f) {
  const Tower& t = f.tower();
  switch (t.k()) {
    case 2: return g_criterion_k2(t, slots_k2(f));
    case 3: return g_criterion_k3(t, slots_k3(f));
    case 4: return g_criterion_k4(t, slots_k4(f));
    default: throw usage_error("g criterion exists only for k = 2, 3, 4");
  }
}

}  // namespace pf2
