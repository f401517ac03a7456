#pragma once

// Exact linear algebra over GF(2^n), plus GF(2)-linear algebra on bit vectors.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pf2/errors.hpp"
#include "pf2/gf2n.hpp"

namespace pf2 {

using Matrix = std::vector<std::vector<Fe>>;

// Fraction-free (Bareiss) elimination. Every division is exact, so the
// result equals the cofactor expansion.
inline Fe determinant(const GF2n& f, Matrix a) {
  const std::size_t n = a.size();
  if (n == 0) return GF2n::one();
  for (const auto& row : a) {
    if (row.size() != n) throw usage_error("determinant: matrix is not square");
  }
  Fe prev = GF2n::one();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    if (a[p][p].is_zero()) {
      std::size_t r = p + 1;
      while (r < n && a[r][p].is_zero()) ++r;
      if (r == n) return GF2n::zero();
      std::swap(a[p], a[r]);  // sign change is invisible in characteristic 2
    }
    for (std::size_t i = p + 1; i < n; ++i) {
      for (std::size_t j = p + 1; j < n; ++j) {
        const Fe num = f.mul(a[i][j], a[p][p]) + f.mul(a[i][p], a[p][j]);
        a[i][j] = f.div(num, prev);
      }
      a[i][p] = GF2n::zero();
    }
    prev = a[p][p];
  }
  return a[n - 1][n - 1];
}

// Unique solution of a x = b, or nullopt when a is singular.
inline std::optional<std::vector<Fe>> solve(const GF2n& f, Matrix a, std::vector<Fe> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw usage_error("solve: dimension mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    const Fe inv = f.inv(a[c][c]);
    for (std::size_t j = c; j < n; ++j) a[c][j] = f.mul(a[c][j], inv);
    b[c] = f.mul(b[c], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Fe factor = a[r][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] += f.mul(factor, a[c][j]);
      b[r] += f.mul(factor, b[c]);
    }
  }
  return b;
}

namespace gf2 {

// Rank over GF(2) of a set of bit vectors.
inline unsigned rank(std::vector<std::uint64_t> rows) {
  unsigned r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == 0) continue;
    ++r;
    const std::uint64_t low = rows[i] & (~rows[i] + 1);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j] & low) rows[j] ^= rows[i];
    }
  }
  return r;
}

// Basis of the kernel of the GF(2)-linear map sending basis vector e_i to
// images[i] (n <= 32).
inline std::vector<std::uint32_t> kernel_basis(const std::vector<std::uint32_t>& images) {
  const std::size_t n = images.size();
  // High half: image, low half: preimage combination.
  std::vector<std::uint64_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = (std::uint64_t{images[i]} << 32U) | (std::uint64_t{1} << i);
  std::size_t next = 0;
  for (int bit = 63; bit >= 32 && next < n; --bit) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    std::size_t piv = next;
    while (piv < n && !(rows[piv] & mask)) ++piv;
    if (piv == n) continue;
    std::swap(rows[piv], rows[next]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != next && (rows[r] & mask)) rows[r] ^= rows[next];
    }
    ++next;
  }
  std::vector<std::uint32_t> basis;
  for (std::size_t r = next; r < n; ++r) basis.push_back(static_cast<std::uint32_t>(rows[r]));
  return basis;
}

// All 2^|basis| elements of the span, ascending.
inline std::vector<std::uint32_t> span(const std::vector<std::uint32_t>& basis) {
  std::vector<std::uint32_t> out{0};
  for (auto v : basis) {
    const std::size_t sz = out.size();
    for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] ^ v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gf2
}  // namespace pf2
