#pragma once

// Hypersurfaces G attached to the P1..P4 shapes, their normal-basis
// specialization over GF(q), point counting, linear factor search and the
// explicit Lang-Weil bound.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pf2/dopoly.hpp"
#include "pf2/errors.hpp"
#include "pf2/families.hpp"
#include "pf2/fields.hpp"
#include "pf2/mvpoly.hpp"
#include "pf2/parallel.hpp"

namespace pf2 {

// The shape of a DOPoly among P1..P4 (P4a stands for the P4 shape). P2 wins
// when the P2 and P3 exponent sets coincide (m = 1).
inline Family detect_shape(const DOPoly& f) {
  const Tower& t = f.tower();
  const std::uint64_t q = t.q();
  const std::uint64_t order = t.field().order();
  auto norm = [&](std::uint64_t e) { return (e - 1) % order + 1; };
  auto within = [&](std::initializer_list<std::uint64_t> es) {
    for (const auto& [e, c] : f.terms()) {
      bool hit = false;
      for (auto x : es) hit = hit || norm(x) == e;
      if (!hit) return false;
    }
    return true;
  };
  switch (t.k()) {
    case 2:
      if (within({q + 1, 2 * (q + 1)})) return Family::P1;
      break;
    case 3:
      if (within({q + 1, q * q + q, q * q + 1})) return Family::P2;
      if (within({2 * (q + 1), 2 * (q * q + q), 2 * (q * q + 1)})) return Family::P3;
      break;
    case 4:
      if (within({q + 1, q * q + 1, q * q * q + 1})) return Family::P4a;
      break;
    default: break;
  }
  throw usage_error("polynomial " + f.to_string() + " is not of shape P1, P2, P3 or P4");
}

// G in k variables (X, Y, T, S) for the shape with coefficients (a, b[, c]).
inline MvPoly build_G(Family shape, const std::shared_ptr<const Tower>& tp, const std::vector<Fe>& tuple) {
  const Tower& t = *tp;
  const GF2n& f = t.field();
  const auto& fp = t.field_ptr();
  auto fq = [&](Fe x, unsigned j) { return t.frobq(x, j); };
  auto sq = [&](Fe x) { return f.sqr(x); };
  const Fe one = GF2n::one();
  switch (shape) {
    case Family::P1: {
      if (t.k() != 2 || tuple.size() != 2) throw usage_error("P1 G needs k = 2 and (a, b)");
      const Fe a = tuple[0], b = tuple[1];
      MvPoly g(fp, 2);
      g.add_term({1, 1}, one);
      g.add_term({2, 0}, sq(a));
      g.add_term({0, 2}, sq(fq(a, 1)));
      g.add_term({1, 0}, b);
      g.add_term({0, 1}, fq(b, 1));
      return g;
    }
    case Family::P2: {
      if (t.k() != 3 || tuple.size() != 3) throw usage_error("P2 G needs k = 3 and (a, b, c)");
      const Fe a = tuple[0], b = tuple[1], c = tuple[2];
      MvPoly g(fp, 3);
      g.add_term({3, 0, 0}, sq(b));
      g.add_term({0, 3, 0}, sq(fq(b, 1)));
      g.add_term({0, 0, 3}, sq(fq(b, 2)));
      g.add_term({2, 1, 0}, sq(c));
      g.add_term({0, 2, 1}, sq(fq(c, 1)));
      g.add_term({1, 0, 2}, sq(fq(c, 2)));
      g.add_term({2, 0, 1}, sq(a));
      g.add_term({1, 2, 0}, sq(fq(a, 1)));
      g.add_term({0, 1, 2}, sq(fq(a, 2)));
      g.add_term({1, 1, 1}, one);
      return g;
    }
    case Family::P3: {
      if (t.k() != 3 || tuple.size() != 3) throw usage_error("P3 G needs k = 3 and (a, b, c)");
      const Fe a = tuple[0], b = tuple[1], c = tuple[2];
      MvPoly g(fp, 3);
      g.add_term({1, 1, 0}, c + fq(a, 1));
      g.add_term({0, 1, 1}, fq(c, 1) + fq(a, 2));
      g.add_term({1, 0, 1}, fq(c, 2) + a);
      g.add_term({2, 0, 0}, b);
      g.add_term({0, 2, 0}, fq(b, 1));
      g.add_term({0, 0, 2}, fq(b, 2));
      g.add_term({1, 1, 1}, one);
      return g;
    }
    case Family::P4a:
    case Family::P4b: {
      if (t.k() != 4 || tuple.size() != 3) throw usage_error("P4 G needs k = 4 and (a, b, c)");
      // Squared Frobenius images a_j = a^(2 q^j), likewise b_j, c_j.
      std::vector<Fe> A(4), B(4), C(4);
      for (unsigned j = 0; j < 4; ++j) {
        A[j] = sq(fq(tuple[0], j));
        B[j] = sq(fq(tuple[1], j));
        C[j] = sq(fq(tuple[2], j));
      }
      auto m = [&](Fe x, Fe y) { return f.mul(x, y); };
      MvPoly g(fp, 4);
      g.add_term({1, 1, 1, 1}, one);
      g.add_term({2, 2, 0, 0}, m(B[1], B[0]) + m(A[1], C[0]));
      g.add_term({2, 0, 0, 2}, m(B[3], B[0]) + m(A[0], C[3]));
      g.add_term({0, 2, 2, 0}, m(B[1], B[2]) + m(A[2], C[1]));
      g.add_term({0, 0, 2, 2}, m(B[2], B[3]) + m(A[3], C[2]));
      g.add_term({2, 0, 2, 0}, m(C[2], C[0]) + m(A[2], A[0]));
      g.add_term({0, 2, 0, 2}, m(C[1], C[3]) + m(A[1], A[3]));
      g.add_term({2, 1, 0, 1}, B[0]);
      g.add_term({1, 2, 1, 0}, B[1]);
      g.add_term({0, 1, 2, 1}, B[2]);
      g.add_term({1, 0, 1, 2}, B[3]);
      g.add_term({2, 1, 1, 0}, C[0]);
      g.add_term({0, 2, 1, 1}, C[1]);
      g.add_term({1, 0, 2, 1}, C[2]);
      g.add_term({1, 1, 0, 2}, C[3]);
      g.add_term({2, 0, 1, 1}, A[0]);
      g.add_term({1, 2, 0, 1}, A[1]);
      g.add_term({1, 1, 2, 0}, A[2]);
      g.add_term({0, 1, 1, 2}, A[3]);
      return g;
    }
    default: throw usage_error("G is defined for P1, P2, P3 and P4 shapes only");
  }
}

inline MvPoly build_G(const DOPoly& f) {
  const Family shape = detect_shape(f);
  return build_G(shape, f.tower_ptr(), shape_tuple(shape, f));
}

// G(e, e^q, ..., e^(q^(k-1))).
inline Fe eval_orbit(const MvPoly& g, const Tower& t, Fe e) {
  if (g.nvars() != t.k()) throw usage_error("orbit evaluation needs nvars = k");
  std::vector<Fe> x(t.k());
  for (unsigned j = 0; j < t.k(); ++j) x[j] = t.frobq(e, j);
  return g.eval(x);
}

inline bool orbit_has_zero(const MvPoly& g, const Tower& t) {
  if (t.n() > kMaxSweepDegree) throw budget_error("orbit sweep needs n <= 24");
  for (std::uint64_t e = 1; e < t.field().size(); ++e) {
    if (eval_orbit(g, t, Fe{static_cast<std::uint32_t>(e)}).is_zero()) return true;
  }
  return false;
}

// The conjugate G^q: coefficients raised to q and X_j moved to X_(j+1 mod k).
inline MvPoly frobenius_conjugate(const MvPoly& g, const Tower& t) {
  const unsigned k = g.nvars();
  MvPoly r(g.field_ptr(), k);
  for (const auto& [key, c] : g.terms()) {
    const Exponents e = g.unpack(key);
    Exponents s(k);
    for (unsigned j = 0; j < k; ++j) s[(j + 1) % k] = e[j];
    r.add_term(s, t.frobq(c));
  }
  return r;
}

inline LinearForm frobenius_conjugate(const LinearForm& l, const Tower& t) {
  const unsigned k = l.nvars();
  std::vector<Fe> c(k);
  for (unsigned j = 0; j < k; ++j) c[(j + 1) % k] = t.frobq(l.coeffs()[j]);
  return {t.field(), std::move(c)};
}

namespace detail {

// Psi over GF(q^k) before retyping: Y_j = sum_i xi^(q^(i+j)) X_i.
inline MvPoly normal_substitution(const MvPoly& g, const Tower& t) {
  const unsigned k = t.k();
  if (g.nvars() != k) throw usage_error("specialization needs nvars = k");
  std::vector<MvPoly> ys;
  for (unsigned j = 0; j < k; ++j) {
    MvPoly y(t.field_ptr(), k);
    for (unsigned i = 0; i < k; ++i) {
      Exponents e(k, 0);
      e[i] = 1;
      y.add_term(e, t.frobq(t.normal_element(), i + j));
    }
    ys.push_back(std::move(y));
  }
  return g.substitute(ys);
}

inline MvPoly retype_to_base(const MvPoly& psi, const Tower& t) {
  return psi.map_coeffs(t.base_ptr(), [&](Fe c) {
    if (!t.in_base(c)) {
      throw internal_error("normal specialization produced coefficient 0x" + GF2n::hex(c.bits) + " outside GF(q)");
    }
    return t.restrict(c);
  });
}

}  // namespace detail

// Psi(X_0, ..., X_{k-1}) = G(Y_0, ..., Y_{k-1}) retyped over GF(q).
inline MvPoly specialize_normal(const MvPoly& g, const Tower& t) {
  return detail::retype_to_base(detail::normal_substitution(g, t), t);
}

// Some t0 with t0^(q-1) = a1, or domain_error when a1 is not a (q-1)-th power.
inline Fe solve_q_minus_1_root(const Tower& t, Fe a1) {
  const GF2n& f = t.field();
  for (std::uint64_t x = 1; x < f.size(); ++x) {
    const Fe c{static_cast<std::uint32_t>(x)};
    if (f.div(t.frobq(c), c) == a1) return c;
  }
  throw domain_error("no t with t^(q-1) = a1");
}

// Specialization for a G whose expanded coefficients satisfy c = a1 c^q: the
// result is t0 * Psi with t0^(q-1) = a1, which lies over GF(q).
inline MvPoly specialize_normal_scaled(const MvPoly& g, const Tower& t, Fe a1) {
  const Fe t0 = solve_q_minus_1_root(t, a1);
  return detail::retype_to_base(detail::normal_substitution(g, t).scaled(t0), t);
}

// x in GF(q)^k (base representation) -> sum x_i xi^(q^i) in GF(q^k).
inline Fe normal_combination(const Tower& t, const std::vector<Fe>& x) {
  const GF2n& f = t.field();
  Fe acc{};
  for (unsigned i = 0; i < x.size(); ++i) acc += f.mul(t.embed(x[i]), t.frobq(t.normal_element(), i));
  return acc;
}

inline constexpr std::uint64_t kDefaultCountBudget = std::uint64_t{1} << 26;

namespace detail {

inline std::uint64_t point_space(const MvPoly& p, std::uint64_t budget) {
  const std::uint64_t q = p.field().size();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < p.nvars(); ++i) {
    if (total > budget / q) throw budget_error("point count exceeds the enumeration budget");
    total *= q;
  }
  return total;
}

inline std::vector<Fe> point_of(std::uint64_t idx, std::uint64_t q, unsigned n) {
  std::vector<Fe> x(n);
  for (unsigned i = n; i-- > 0;) {
    x[i] = Fe{static_cast<std::uint32_t>(idx % q)};
    idx /= q;
  }
  return x;
}

template <class Pred>
std::uint64_t count_blocks(std::uint64_t total, unsigned threads, Pred&& pred) {
  const std::uint64_t blocks = std::min<std::uint64_t>(total, 64);
  const std::uint64_t per = (total + blocks - 1) / blocks;
  std::vector<std::uint64_t> partial(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::uint64_t end = std::min(total, (b + 1) * per);
    for (std::uint64_t i = b * per; i < end; ++i) partial[b] += pred(i) ? 1 : 0;
  });
  std::uint64_t sum = 0;
  for (auto v : partial) sum += v;
  return sum;
}

}  // namespace detail

// Zeros of P in GF^nvars over its own coefficient field.
inline std::uint64_t count_points_affine(const MvPoly& p, unsigned threads = 1,
                                         std::uint64_t budget = kDefaultCountBudget) {
  const std::uint64_t total = detail::point_space(p, budget);
  const std::uint64_t q = p.field().size();
  return detail::count_blocks(total, threads,
                              [&](std::uint64_t i) { return p.eval(detail::point_of(i, q, p.nvars())).is_zero(); });
}

// Zeros in projective space, one representative per point (first nonzero
// coordinate equal to 1).
inline std::uint64_t count_points_projective(const MvPoly& p, unsigned threads = 1,
                                             std::uint64_t budget = kDefaultCountBudget) {
  if (!p.is_homogeneous()) throw usage_error("projective count needs a homogeneous polynomial");
  const std::uint64_t total = detail::point_space(p, budget);
  const std::uint64_t q = p.field().size();
  return detail::count_blocks(total, threads, [&](std::uint64_t i) {
    const auto x = detail::point_of(i, q, p.nvars());
    auto lead = std::find_if(x.begin(), x.end(), [](Fe c) { return !c.is_zero(); });
    if (lead == x.end() || *lead != GF2n::one()) return false;
    return p.eval(x).is_zero();
  });
}

struct Factorization {
  std::vector<std::pair<LinearForm, unsigned>> factors;
  MvPoly remainder;
  std::uint64_t nodes = 0;
};

inline MvPoly reconstruct(const Factorization& fz) {
  MvPoly r = fz.remainder;
  for (const auto& [l, mult] : fz.factors) r = r * l.to_poly(r.field_ptr()).pow(mult);
  return r;
}

inline constexpr std::uint64_t kDefaultFactorBudget = std::uint64_t{1} << 22;

// All linear forms over the coefficient field of G dividing G. For each pivot
// p the form is X_p + sum_{j>p} C_j X_j with symbolic C_j; substituting it
// for X_p and grouping by X-monomial gives coefficient polynomials K(C) that
// must all vanish. The C_j are assigned left to right and a branch is cut as
// soon as some K depending only on assigned C_j is nonzero.
inline Factorization linear_factor_search(const MvPoly& g, std::uint64_t budget = kDefaultFactorBudget) {
  if (g.is_zero()) throw usage_error("factor search on the zero polynomial");
  if (g.degree() > 4) throw usage_error("factor search supports degree <= 4");
  const unsigned n = g.nvars();
  if (n > 4) throw usage_error("factor search supports at most 4 variables");
  const auto& fp = g.field_ptr();
  const std::uint64_t size = g.field().size();
  std::vector<LinearForm> found;
  std::uint64_t nodes = 0;

  for (unsigned p = 0; p < n; ++p) {
    const unsigned nc = n - 1 - p;
    const unsigned ring = n + nc;
    // X_i -> X_i in the extended ring, X_p -> sum C_j X_j.
    std::vector<MvPoly> img;
    for (unsigned i = 0; i < n; ++i) {
      if (i != p) {
        img.push_back(MvPoly::variable(fp, ring, i));
        continue;
      }
      MvPoly x(fp, ring);
      for (unsigned j = p + 1; j < n; ++j) {
        Exponents e(ring, 0);
        e[j] = 1;
        e[n + (j - p - 1)] = 1;
        x.add_term(e, GF2n::one());
      }
      img.push_back(std::move(x));
    }
    const MvPoly r = g.substitute(img);

    // Group by X-part; each group is a polynomial in the C variables.
    std::map<std::uint64_t, MvPoly> groups;
    const unsigned cvars = std::max(nc, 1U);
    for (const auto& [key, c] : r.terms()) {
      const Exponents e = r.unpack(key);
      const std::uint64_t xkey = key >> (8U * nc);
      Exponents ce(cvars, 0);
      for (unsigned j = 0; j < nc; ++j) ce[j] = e[n + j];
      groups.try_emplace(xkey, fp, cvars).first->second.add_term(ce, c);
    }
    // Constraints bucketed by the last C they involve; -1 means constant.
    std::vector<std::vector<const MvPoly*>> by_depth(nc);
    bool impossible = false;
    for (const auto& [xkey, k] : groups) {
      int last = -1;
      for (const auto& [ck, c] : k.terms()) {
        const Exponents ce = k.unpack(ck);
        for (unsigned j = 0; j < nc; ++j) {
          if (ce[j] != 0) last = std::max(last, static_cast<int>(j));
        }
      }
      if (last < 0) {
        impossible = true;
        break;
      }
      by_depth[static_cast<unsigned>(last)].push_back(&k);
    }
    if (impossible) continue;

    std::vector<Fe> cv(cvars);
    auto dfs = [&](auto&& self, unsigned depth) -> void {
      if (++nodes > budget) throw budget_error("linear factor search exceeded its node budget");
      if (depth == nc) {
        std::vector<Fe> coeffs(n);
        coeffs[p] = GF2n::one();
        for (unsigned j = 0; j < nc; ++j) coeffs[p + 1 + j] = cv[j];
        found.emplace_back(g.field(), std::move(coeffs));
        return;
      }
      for (std::uint64_t v = 0; v < size; ++v) {
        cv[depth] = Fe{static_cast<std::uint32_t>(v)};
        bool ok = true;
        for (const MvPoly* k : by_depth[depth]) {
          if (!k->eval(cv).is_zero()) {
            ok = false;
            break;
          }
        }
        if (ok) self(self, depth + 1);
      }
      cv[depth] = Fe{};
    };
    dfs(dfs, 0);
  }

  Factorization out{{}, g, nodes};
  for (const auto& l : found) {
    unsigned mult = 0;
    while (auto q = divide_linear(out.remainder, l)) {
      out.remainder = std::move(*q);
      ++mult;
    }
    if (mult == 0) throw internal_error("linear factor " + l.to_string() + " failed exact division");
    out.factors.emplace_back(l, mult);
  }
  if (!(reconstruct(out) == g)) throw internal_error("factor reconstruction mismatch");
  return out;
}

namespace detail {

using u128 = unsigned __int128;

inline u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > (~u128{0}) / a) throw usage_error("Lang-Weil bound overflows 128-bit arithmetic");
  return a * b;
}

inline u128 ipow(u128 b, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

// Smallest r with r^root * den >= num.
inline std::uint64_t ceil_root_ratio(u128 num, u128 den, unsigned root) {
  std::uint64_t lo = 0, hi = 1;
  auto ok = [&](std::uint64_t r) {
    u128 v = den;
    for (unsigned i = 0; i < root; ++i) {
      if (r != 0 && v > (~u128{0}) / r) return true;
      v *= r;
    }
    return v >= num;
  };
  while (!ok(hi)) hi *= 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace detail

// (d-1)(d-2) q^(k-3/2) + 5 d^(13/3) q^(k-2) for a degree-d hypersurface in
// P^k, each fractional power rounded up with exact integer roots.
inline std::uint64_t langweil_rhs(unsigned d, unsigned k, std::uint64_t q) {
  using detail::u128;
  if (d == 0 || q < 2) throw usage_error("Lang-Weil bound needs d >= 1 and q >= 2");
  // First term squared: (d-1)^2 (d-2)^2 q^(2k-3).
  const u128 lin = static_cast<u128>(d - 1) * (d >= 2 ? d - 2 : 0);
  u128 num1 = detail::checked_mul(lin, lin);
  u128 den1 = 1;
  if (2 * k >= 3) {
    num1 = detail::checked_mul(num1, detail::ipow(q, 2 * k - 3));
  } else {
    den1 = detail::ipow(q, 3 - 2 * k);
  }
  // Second term cubed: 125 d^13 q^(3(k-2)).
  u128 num2 = detail::checked_mul(125, detail::ipow(d, 13));
  u128 den2 = 1;
  if (k >= 2) {
    num2 = detail::checked_mul(num2, detail::ipow(q, 3 * (k - 2)));
  } else {
    den2 = detail::ipow(q, 3 * (2 - k));
  }
  return detail::ceil_root_ratio(num1, den1, 2) + detail::ceil_root_ratio(num2, den2, 3);
}

struct LangWeilReport {
  std::uint64_t q = 0;
  unsigned k = 0;  // projective dimension, nvars - 1
  unsigned d = 0;
  std::uint64_t count = 0;
  std::uint64_t expected = 0;  // q^(k-1)
  std::uint64_t deviation = 0;
  std::uint64_t rhs = 0;
  bool certified = false;
  bool within_bound = false;
  // rhs >= q^(k-1): the bound alone cannot force a rational point.
  bool vacuous = false;
  // (q-1) * projective count == nonzero affine zeros.
  bool affine_agrees = false;
  // Only asserted for certified inputs; uncertified reports are data.
  bool passed() const { return affine_agrees && (!certified || within_bound); }
};

inline LangWeilReport langweil_check(const MvPoly& phom, bool certified_irreducible, unsigned threads = 1) {
  if (!phom.is_homogeneous() || phom.is_zero()) throw usage_error("Lang-Weil check needs a nonzero homogeneous form");
  if (phom.nvars() < 2) throw usage_error("Lang-Weil check needs at least two variables");
  LangWeilReport r;
  r.q = phom.field().size();
  r.k = phom.nvars() - 1;
  r.d = static_cast<unsigned>(phom.degree());
  r.count = count_points_projective(phom, threads);
  r.expected = 1;
  for (unsigned i = 0; i + 1 < r.k; ++i) r.expected *= r.q;
  r.deviation = r.count > r.expected ? r.count - r.expected : r.expected - r.count;
  r.rhs = langweil_rhs(r.d, r.k, r.q);
  r.certified = certified_irreducible;
  r.within_bound = r.deviation <= r.rhs;
  r.vacuous = r.rhs >= r.expected;
  const std::uint64_t affine = count_points_affine(phom, threads);
  // The origin is always an affine zero of a homogeneous form of degree >= 1.
  r.affine_agrees = affine >= 1 && (affine - 1) == (r.q - 1) * r.count;
  return r;
}

}  // namespace pf2
