#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "pf2/dopoly.hpp"
#include "pf2/errors.hpp"
#include "pf2/gf2n.hpp"

namespace pf2 {

inline constexpr unsigned kMaxBruteforceDegree = 20;

// x -> f(x+a) + f(x) + a x is a bijection for every a != 0, checked by
// stamping every image into a 2^n bitmap.
inline bool is_planar_bruteforce(const DOPoly& f) {
  const unsigned n = f.tower().n();
  if (n > kMaxBruteforceDegree) throw budget_error("brute-force planarity needs n <= 20");
  const GF2n& field = f.field();
  const std::vector<std::uint32_t> t = f.table();
  const std::uint32_t size = static_cast<std::uint32_t>(field.size());
  std::vector<std::uint32_t> stamp(size, 0);
  for (std::uint32_t a = 1; a < size; ++a) {
    for (std::uint32_t x = 0; x < size; ++x) {
      const std::uint32_t y = t[x ^ a] ^ t[x] ^ field.mul(Fe{a}, Fe{x}).bits;
      if (stamp[y] == a) return false;
      stamp[y] = a;
    }
  }
  return true;
}

namespace detail {

// Rank of n row vectors over GF(2), by an xor basis keyed on leading bit.
inline bool full_rank(const std::uint32_t* rows, unsigned n) {
  std::uint32_t basis[32] = {};
  for (unsigned i = 0; i < n; ++i) {
    std::uint32_t v = rows[i];
    while (v != 0) {
      const unsigned top = 31U - static_cast<unsigned>(std::countl_zero(v));
      if (basis[top] == 0) {
        basis[top] = v;
        break;
      }
      v ^= basis[top];
    }
    if (v == 0) return false;
  }
  return true;
}

}  // namespace detail

// L_a(x) = f(x+a) + f(x) + f(a) + a x has GF(2)-rank n for every a != 0.
// L_a(e_i) is bilinear in (e_i, a), so a Gray-code walk over a updates the n
// image vectors with one xor each.
inline bool is_planar_linearized(const DOPoly& f) {
  const unsigned n = f.tower().n();
  const GF2n& field = f.field();
  std::vector<Fe> fe(n);
  for (unsigned i = 0; i < n; ++i) fe[i] = f(Fe{std::uint32_t{1} << i});
  // k[j][i] = L_{e_j}(e_i).
  std::vector<std::vector<std::uint32_t>> k(n, std::vector<std::uint32_t>(n));
  for (unsigned j = 0; j < n; ++j) {
    const Fe ej{std::uint32_t{1} << j};
    for (unsigned i = 0; i < n; ++i) {
      const Fe ei{std::uint32_t{1} << i};
      const Fe b = i == j ? Fe{} : f(ei + ej) + fe[i] + fe[j];
      k[j][i] = (b + field.mul(ej, ei)).bits;
    }
  }
  std::uint32_t rows[32] = {};
  const std::uint64_t size = field.size();
  for (std::uint64_t g = 1; g < size; ++g) {
    const unsigned j = static_cast<unsigned>(std::countr_zero(g));
    for (unsigned i = 0; i < n; ++i) rows[i] ^= k[j][i];
    if (!detail::full_rank(rows, n)) return false;
  }
  return true;
}

}  // namespace pf2
