#pragma once

// q-linearized polynomials L(x) = sum_{i<k} a_i x^(q^i) over GF(q^k).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pf2/errors.hpp"
#include "pf2/fields.hpp"
#include "pf2/linalg.hpp"

namespace pf2 {

class LinearizedPoly {
 public:
  LinearizedPoly(std::shared_ptr<const Tower> tower, std::vector<Fe> coeffs)
      : tower_(std::move(tower)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != tower_->k()) {
      throw usage_error("linearized polynomial needs exactly k = " + std::to_string(tower_->k()) +
                        " coefficients, got " + std::to_string(coeffs_.size()));
    }
    for (Fe c : coeffs_) {
      if (!tower_->field().contains(c)) throw usage_error("linearized coefficient outside GF(q^k)");
    }
  }

  static LinearizedPoly identity(std::shared_ptr<const Tower> t) {
    std::vector<Fe> c(t->k());
    c[0] = GF2n::one();
    return {std::move(t), std::move(c)};
  }

  // x + x^q + ... + x^(q^(k-1)).
  static LinearizedPoly trace_map(std::shared_ptr<const Tower> t) {
    std::vector<Fe> c(t->k(), GF2n::one());
    return {std::move(t), std::move(c)};
  }

  const Tower& tower() const { return *tower_; }
  const std::shared_ptr<const Tower>& tower_ptr() const { return tower_; }
  const std::vector<Fe>& coeffs() const { return coeffs_; }

  Fe operator()(Fe x) const {
    const GF2n& f = tower_->field();
    Fe acc{};
    Fe xp = x;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i > 0) xp = tower_->frobq(xp);
      acc += f.mul(coeffs_[i], xp);
    }
    return acc;
  }

  friend bool operator==(const LinearizedPoly& a, const LinearizedPoly& b) {
    return a.tower_->m() == b.tower_->m() && a.tower_->k() == b.tower_->k() && a.coeffs_ == b.coeffs_;
  }

 private:
  std::shared_ptr<const Tower> tower_;
  std::vector<Fe> coeffs_;
};

// Row r, column c holds a_{(c - r) mod k}^(q^r).
inline Matrix dickson_matrix(const LinearizedPoly& l) {
  const Tower& t = l.tower();
  const unsigned k = t.k();
  Matrix m(k, std::vector<Fe>(k));
  for (unsigned r = 0; r < k; ++r) {
    for (unsigned c = 0; c < k; ++c) m[r][c] = t.frobq(l.coeffs()[(c + k - r) % k], r);
  }
  return m;
}

inline Fe dickson_det(const LinearizedPoly& l) { return determinant(l.tower().field(), dickson_matrix(l)); }

inline bool is_permutation(const LinearizedPoly& l) { return !dickson_det(l).is_zero(); }

// a o b, i.e. x -> a(b(x)).
inline LinearizedPoly compose(const LinearizedPoly& a, const LinearizedPoly& b) {
  const Tower& t = a.tower();
  const GF2n& f = t.field();
  const unsigned k = t.k();
  std::vector<Fe> c(k);
  for (unsigned j = 0; j < k; ++j) {
    for (unsigned i = 0; i < k; ++i) c[(i + j) % k] += f.mul(a.coeffs()[j], t.frobq(b.coeffs()[i], j));
  }
  return {a.tower_ptr(), std::move(c)};
}

// All roots of L: a GF(q)-subspace, ascending.
inline std::vector<Fe> kernel(const LinearizedPoly& l) {
  const unsigned n = l.tower().n();
  std::vector<std::uint32_t> images(n);
  for (unsigned i = 0; i < n; ++i) images[i] = l(Fe{std::uint32_t{1} << i}).bits;
  std::vector<Fe> out;
  for (auto v : gf2::span(gf2::kernel_basis(images))) out.push_back(Fe{v});
  return out;
}

// The unique L' with L'(L(x)) = x. Solves sum_j b_j a_{(t-j) mod k}^(q^j) =
// [t == 0] for the coefficients b_j of L'.
inline LinearizedPoly inverse_map(const LinearizedPoly& l) {
  const Tower& t = l.tower();
  const unsigned k = t.k();
  Matrix m(k, std::vector<Fe>(k));
  for (unsigned row = 0; row < k; ++row) {
    for (unsigned j = 0; j < k; ++j) m[row][j] = t.frobq(l.coeffs()[(row + k - j) % k], j);
  }
  std::vector<Fe> rhs(k);
  rhs[0] = GF2n::one();
  auto sol = solve(t.field(), std::move(m), std::move(rhs));
  if (!sol) throw domain_error("inverse_map: L is not a permutation (Dickson determinant is zero)");
  return {l.tower_ptr(), std::move(*sol)};
}

// Debugging route for inverse_map: L' is pinned by its values on the normal
// basis, L'(L(xi^(q^i))) = xi^(q^i), a k x k Moore system.
inline LinearizedPoly inverse_map_by_interpolation(const LinearizedPoly& l) {
  const Tower& t = l.tower();
  const unsigned k = t.k();
  Matrix m(k, std::vector<Fe>(k));
  std::vector<Fe> rhs(k);
  for (unsigned i = 0; i < k; ++i) {
    const Fe x = t.frobq(t.normal_element(), i);
    const Fe y = l(x);
    for (unsigned j = 0; j < k; ++j) m[i][j] = t.frobq(y, j);
    rhs[i] = x;
  }
  auto sol = solve(t.field(), std::move(m), std::move(rhs));
  if (!sol) throw domain_error("inverse_map: L is not a permutation");
  return {l.tower_ptr(), std::move(*sol)};
}

}  // namespace pf2
