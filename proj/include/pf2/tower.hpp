#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "pf2/errors.hpp"
#include "pf2/gf2n.hpp"
#include "pf2/linalg.hpp"

namespace pf2 {

// GF(2^(m k)) viewed as GF(q^k) over GF(q), q = 2^m. The q-subfield is also
// available as its own GF(2^m) through an explicit embedding.
class Tower {
 public:
  // Shared immutable instance per (m, k).
  static std::shared_ptr<const Tower> get(unsigned m, unsigned k) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const Tower>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{m, k}];
    if (!slot) slot = std::make_shared<const Tower>(m, k);
    return slot;
  }

  Tower(unsigned m, unsigned k) : m_(m), k_(k) {
    if (m < 1 || k < 1 || m * k > kMaxDegree) {
      throw usage_error("tower needs m, k >= 1 and m*k <= " + std::to_string(kMaxDegree));
    }
    field_ = GF2n::get(m * k);
    base_ = GF2n::get(m);
    build_embedding();
    normal_ = search_normal_element();
  }

  unsigned m() const { return m_; }
  unsigned k() const { return k_; }
  unsigned n() const { return m_ * k_; }
  std::uint64_t q() const { return std::uint64_t{1} << m_; }

  const GF2n& field() const { return *field_; }
  const std::shared_ptr<const GF2n>& field_ptr() const { return field_; }
  // GF(2^m) with its own modulus.
  const GF2n& base() const { return *base_; }
  const std::shared_ptr<const GF2n>& base_ptr() const { return base_; }

  // x^(q^j).
  Fe frobq(Fe x, unsigned j = 1) const { return field_->frob2(x, (m_ * (j % k_)) % n()); }

  Fe trace(Fe x) const {
    Fe t = x;
    Fe y = x;
    for (unsigned j = 1; j < k_; ++j) {
      y = frobq(y);
      t += y;
    }
    return t;
  }

  Fe norm(Fe x) const {
    Fe t = x;
    Fe y = x;
    for (unsigned j = 1; j < k_; ++j) {
      y = frobq(y);
      t = field_->mul(t, y);
    }
    return t;
  }

  bool in_base(Fe x) const { return frobq(x) == x; }

  // Tr_{GF(q)/GF(2)} of an element of the q-subfield.
  Fe base_abs_trace(Fe y) const {
    if (!in_base(y)) throw usage_error("base_abs_trace: argument is not in the q-subfield");
    Fe t = y;
    Fe z = y;
    for (unsigned i = 1; i < m_; ++i) {
      z = field_->sqr(z);
      t += z;
    }
    return t;
  }

  // All x with x^q = x, ascending.
  std::vector<Fe> subfield_members() const {
    std::vector<Fe> out;
    out.reserve(embedding_.size());
    for (const auto& [big, small] : embedding_) out.push_back(big);
    return out;
  }

  // All delta with norm 1, ascending; for k = 2 this is mu_{q+1}.
  std::vector<Fe> mu_set() const {
    const std::uint64_t count = (field_->size() - 1) / (q() - 1);
    const Fe h = field_->pow(field_->generator(), q() - 1);
    std::vector<Fe> out;
    out.reserve(count);
    Fe v = GF2n::one();
    for (std::uint64_t i = 0; i < count; ++i) {
      out.push_back(v);
      v = field_->mul(v, h);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Smallest xi (by encoding) whose q-Frobenius orbit is a GF(q)-basis.
  Fe normal_element() const { return normal_; }

  // True iff {x, x^q, ..., x^(q^(k-1))} is linearly independent over GF(q):
  // det(x^(q^((i+j) mod k))) != 0.
  bool is_normal(Fe x) const;

  Fe embed(Fe small) const {
    if (!base_->contains(small)) throw usage_error("embed: value is not in GF(2^m)");
    return image_[small.bits];
  }

  Fe restrict(Fe big) const {
    auto it = std::lower_bound(embedding_.begin(), embedding_.end(), std::pair{big, Fe{}},
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == embedding_.end() || it->first != big) {
      throw usage_error("restrict: element 0x" + GF2n::hex(big.bits) + " is not in the q-subfield");
    }
    return it->second;
  }

 private:
  void build_embedding() {
    // q-subfield = {0} plus the subgroup of order q - 1.
    std::vector<Fe> members{GF2n::zero()};
    const Fe h = field_->pow(field_->generator(), (field_->size() - 1) / (q() - 1));
    Fe v = GF2n::one();
    for (std::uint64_t i = 0; i + 1 < q(); ++i) {
      members.push_back(v);
      v = field_->mul(v, h);
    }
    // Root of the GF(2^m) modulus inside the q-subfield.
    const std::uint64_t mod = base_->spec().modulus();
    Fe root{};
    bool found = false;
    for (Fe r : members) {
      Fe acc{};
      Fe p = GF2n::one();
      for (unsigned i = 0; i <= m_; ++i) {
        if ((mod >> i) & 1U) acc += p;
        p = field_->mul(p, r);
      }
      if (acc.is_zero()) {
        root = r;
        found = true;
        break;
      }
    }
    if (!found) throw internal_error("no root of the base modulus in the q-subfield");
    image_.resize(q());
    for (std::uint64_t b = 0; b < q(); ++b) {
      Fe acc{};
      Fe p = GF2n::one();
      for (unsigned i = 0; i < m_; ++i) {
        if ((b >> i) & 1U) acc += p;
        p = field_->mul(p, root);
      }
      image_[b] = acc;
      embedding_.emplace_back(acc, Fe{static_cast<std::uint32_t>(b)});
    }
    std::sort(embedding_.begin(), embedding_.end());
  }

  Fe search_normal_element() const {
    for (std::uint64_t b = 1; b < field_->size(); ++b) {
      const Fe x{static_cast<std::uint32_t>(b)};
      if (is_normal(x)) return x;
    }
    throw internal_error("no normal element found");
  }

  unsigned m_;
  unsigned k_;
  std::shared_ptr<const GF2n> field_;
  std::shared_ptr<const GF2n> base_;
  std::vector<Fe> image_;
  std::vector<std::pair<Fe, Fe>> embedding_;  // (big, small), sorted by big
  Fe normal_{};
};

inline bool Tower::is_normal(Fe x) const {
  std::vector<std::vector<Fe>> mat(k_, std::vector<Fe>(k_));
  for (unsigned i = 0; i < k_; ++i) {
    for (unsigned j = 0; j < k_; ++j) mat[i][j] = frobq(x, (i + j) % k_);
  }
  return !determinant(*field_, std::move(mat)).is_zero();
}

}  // namespace pf2
