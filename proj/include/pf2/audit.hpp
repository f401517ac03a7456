#pragma once

// Exhaustive sweeps over family parameters and shape coefficient spaces.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pf2/dopoly.hpp"
#include "pf2/errors.hpp"
#include "pf2/families.hpp"
#include "pf2/fields.hpp"
#include "pf2/parallel.hpp"
#include "pf2/planarity.hpp"

namespace pf2 {

enum class AuditMode { Sufficiency, Converse };

inline std::string mode_name(AuditMode m) { return m == AuditMode::Sufficiency ? "sufficiency" : "converse"; }

inline AuditMode parse_mode(const std::string& s) {
  if (s == "sufficiency") return AuditMode::Sufficiency;
  if (s == "converse") return AuditMode::Converse;
  throw usage_error("unknown audit mode '" + s + "' (expected sufficiency or converse)");
}

struct SweepOptions {
  unsigned threads = 1;
  // Upper bound on the number of candidates a sweep may visit.
  std::uint64_t budget = std::uint64_t{1} << 24;
};

using Tuple = std::vector<Fe>;

struct AuditReport {
  std::string family;
  std::uint64_t q = 0;
  unsigned k = 0;
  std::string mode;
  std::uint64_t tested = 0;
  // Planar coefficient tuples, ascending.
  std::vector<Tuple> planar;
  // Converse: planar tuples outside the family's parametrized image.
  std::vector<Tuple> extras;
  // Sufficiency: admissible parameters whose polynomial is not planar.
  std::vector<Tuple> failures;
};

namespace detail {

inline std::uint64_t checked_power(std::uint64_t base, unsigned exp, std::uint64_t budget, const std::string& what) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > budget / base) throw budget_error(what + " exceeds the sweep budget of " + std::to_string(budget));
    r *= base;
  }
  if (r > budget) throw budget_error(what + " exceeds the sweep budget of " + std::to_string(budget));
  return r;
}

// Digit expansion of index i in base `size`, most significant first.
inline Tuple decode(std::uint64_t i, std::uint64_t size, unsigned len) {
  Tuple out(len);
  for (unsigned j = len; j-- > 0;) {
    out[j] = Fe{static_cast<std::uint32_t>(i % size)};
    i /= size;
  }
  return out;
}

inline bool planar_confirmed(const DOPoly& f) { return is_planar_linearized(f) && is_planar_bruteforce(f); }

inline unsigned shape_arity(Family f) { return f == Family::P1 ? 2 : 3; }

inline void require_shape_family(Family f) {
  switch (f) {
    case Family::P1:
    case Family::P2:
    case Family::P3:
    case Family::P4a:
    case Family::P4b: return;
    default: throw usage_error("audits cover P1, P2, P3, P4a, P4b only");
  }
}

struct ParamSweep {
  std::vector<Tuple> params;
  std::vector<DOPoly> polys;
};

// Admissible parameters of a family with their polynomials, ascending.
inline ParamSweep admissible_members(Family family, const std::shared_ptr<const Tower>& t, const SweepOptions& opt) {
  const unsigned arity = family_arity(family);
  const std::uint64_t size = t->field().size();
  const std::uint64_t count = checked_power(size, arity, opt.budget, family_name(family) + " parameter space");
  ParamSweep out;
  for (std::uint64_t i = 0; i < count; ++i) {
    FamilyParams p{family, decode(i, size, arity), t};
    if (!is_admissible(p)) continue;
    out.polys.push_back(family_coeffs(p));
    out.params.push_back(std::move(p.params));
  }
  return out;
}

inline void sort_unique(std::vector<Tuple>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

// Sufficiency: every admissible parameter must give a planar polynomial
// (brute force); failures are listed. Converse: every tuple of the shape is
// tested, planar ones are split into family members and extras.
inline AuditReport exhaustive_family_audit(Family family, const std::shared_ptr<const Tower>& t, AuditMode mode,
                                           const SweepOptions& opt = {}) {
  detail::require_shape_family(family);
  if (t->k() != family_k(family)) {
    throw usage_error(family_name(family) + " needs k = " + std::to_string(family_k(family)));
  }
  if (t->n() > kMaxBruteforceDegree) throw budget_error("audit needs n <= 20");
  AuditReport r;
  r.family = family_name(family);
  r.q = t->q();
  r.k = t->k();
  r.mode = mode_name(mode);

  if (mode == AuditMode::Sufficiency) {
    auto members = detail::admissible_members(family, t, opt);
    std::vector<char> ok(members.polys.size(), 0);
    parallel_for(ok.size(), opt.threads, [&](std::size_t i) { ok[i] = is_planar_bruteforce(members.polys[i]); });
    r.tested = ok.size();
    for (std::size_t i = 0; i < ok.size(); ++i) {
      if (ok[i]) {
        r.planar.push_back(shape_tuple(family, members.polys[i]));
      } else {
        r.failures.push_back(members.params[i]);
      }
    }
    detail::sort_unique(r.planar);
    return r;
  }

  // The family image; P4a and P4b share one shape, so the image is their union.
  std::set<Tuple> image;
  const std::vector<Family> parts =
      (family == Family::P4a || family == Family::P4b) ? std::vector<Family>{Family::P4a, Family::P4b}
                                                        : std::vector<Family>{family};
  for (Family part : parts) {
    for (const auto& poly : detail::admissible_members(part, t, opt).polys) image.insert(shape_tuple(part, poly));
  }

  const unsigned arity = detail::shape_arity(family);
  const std::uint64_t size = t->field().size();
  const std::uint64_t count = detail::checked_power(size, arity, opt.budget, family_name(family) + " shape space");
  std::vector<char> ok(count, 0);
  parallel_for(count, opt.threads, [&](std::size_t i) {
    ok[i] = detail::planar_confirmed(shape_poly(family, t, detail::decode(i, size, arity)));
  });
  r.tested = count;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!ok[i]) continue;
    Tuple tup = detail::decode(i, size, arity);
    if (!image.count(tup)) r.extras.push_back(tup);
    r.planar.push_back(std::move(tup));
  }
  return r;
}

struct Problem27Report {
  unsigned m = 0;
  unsigned support_size = 0;
  std::uint64_t tested = 0;
  // Planar coefficient vectors (c_0, ..., c_{m-1}), ascending.
  std::vector<Tuple> planar;
  // Planar vectors with some c_i != 0 for i >= 1.
  std::vector<Tuple> candidates;
};

// Sweeps F = sum_i c_i x^(2^(m+i) + 2^i) over GF(q^2) for coefficient vectors
// with at most support_size nonzero entries.
inline Problem27Report problem27_search(const std::shared_ptr<const Tower>& t, unsigned support_size,
                                        const SweepOptions& opt = {}) {
  if (t->k() != 2) throw usage_error("problem27 search needs k = 2");
  if (support_size > 3) throw usage_error("problem27 support size must be at most 3");
  if (t->n() > kMaxBruteforceDegree) throw budget_error("problem27 search needs n <= 20");
  const unsigned m = t->m();
  const std::uint64_t nonzero = t->field().size() - 1;

  // Total = sum_j C(m, j) nonzero^j, checked against the budget.
  std::uint64_t total = 0;
  {
    std::uint64_t binom = 1;
    for (unsigned j = 0; j <= std::min(support_size, m); ++j) {
      if (j > 0) binom = binom * (m - j + 1) / j;
      total += binom * detail::checked_power(nonzero, j, opt.budget, "problem27 sweep");
      if (total > opt.budget) throw budget_error("problem27 sweep exceeds the sweep budget");
    }
  }

  std::vector<Tuple> vectors;
  vectors.reserve(total);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    const unsigned pc = static_cast<unsigned>(std::popcount(mask));
    if (pc > support_size) continue;
    std::vector<unsigned> slots;
    for (unsigned i = 0; i < m; ++i) {
      if (mask >> i & 1U) slots.push_back(i);
    }
    std::vector<std::uint32_t> digits(pc, 1);
    while (true) {
      Tuple v(m);
      for (unsigned j = 0; j < pc; ++j) v[slots[j]] = Fe{digits[j]};
      vectors.push_back(std::move(v));
      unsigned j = 0;
      while (j < pc && digits[j] == nonzero) digits[j++] = 1;
      if (j == pc) break;
      ++digits[j];
    }
  }
  std::sort(vectors.begin(), vectors.end());

  std::vector<char> ok(vectors.size(), 0);
  parallel_for(vectors.size(), opt.threads,
               [&](std::size_t i) { ok[i] = detail::planar_confirmed(from_slots(t, SlotsK2{vectors[i]})); });

  Problem27Report r;
  r.m = m;
  r.support_size = support_size;
  r.tested = vectors.size();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!ok[i]) continue;
    const bool off_shape = std::any_of(vectors[i].begin() + 1, vectors[i].end(), [](Fe c) { return !c.is_zero(); });
    if (off_shape) r.candidates.push_back(vectors[i]);
    r.planar.push_back(vectors[i]);
  }
  return r;
}

}  // namespace pf2
