#pragma once

// Incremental walk over every coefficient tuple of a q-polynomial space.
// Partial sums sum_{i<l} a_i x^{q^i} are kept for every nonzero x, so each
// tuple costs one Zech addition per x for the last coefficient only.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qlinset/gf.hpp"

namespace qlinset::detail {

/// Element with position `key` in the total order (0 is zero).
inline FieldElem elem_from_key(std::uint32_t key) noexcept {
  return key == 0 ? FieldElem::zero() : FieldElem::from_index(key - 1);
}

class PolyWalker {
 public:
  explicit PolyWalker(const FieldCtx& field) : F_(field), n_(field.n()), order_(field.order()) {
    xpow_.assign(n_, std::vector<std::uint32_t>(order_));
    for (std::uint32_t i = 0; i < n_; ++i) {
      std::uint32_t mult = F_.qpow_mod(i);
      for (std::uint32_t k = 0; k < order_; ++k) xpow_[i][k] = F_.mul_mod(k, mult);
    }
    partial_.assign(n_, std::vector<FieldElem>(order_, FieldElem::zero()));
    coeffs_.assign(n_, FieldElem::zero());
  }

  /// xpow(i)[k] is the index of (g^k)^{q^i}.
  const std::vector<std::uint32_t>& xpow(std::uint32_t i) const noexcept { return xpow_[i]; }

  /// Adds c * x^{q^i} to every entry of `sums` (indexed by log x).
  void accumulate(std::vector<FieldElem>& sums, FieldElem c, std::uint32_t i) const noexcept {
    if (c.is_zero()) return;
    const auto& xp = xpow_[i];
    const std::uint32_t ci = c.index();
    for (std::uint32_t k = 0; k < order_; ++k)
      sums[k] = F_.add(sums[k], FieldElem::from_index(F_.add_mod(ci, xp[k])));
  }

  /// Visits every tuple whose first coefficient has order key `first_key`, in
  /// lexicographic order of (a_1, ..., a_{n-2}). `leaf(coeffs, partial)`
  /// receives the prefix (the last slot is left as zero) and the partial sums
  /// over a_0..a_{n-2}; it enumerates a_{n-1} itself. Requires n >= 2.
  template <class Leaf>
  void walk_first(std::uint32_t first_key, Leaf&& leaf) {
    coeffs_.assign(n_, FieldElem::zero());
    coeffs_[0] = elem_from_key(first_key);
    std::fill(partial_[1].begin(), partial_[1].end(), FieldElem::zero());
    accumulate(partial_[1], coeffs_[0], 0);
    recurse(1, leaf);
  }

 private:
  template <class Leaf>
  void recurse(std::uint32_t level, Leaf& leaf) {
    if (level == n_ - 1) {
      coeffs_[level] = FieldElem::zero();
      leaf(static_cast<const std::vector<FieldElem>&>(coeffs_),
           static_cast<const std::vector<FieldElem>&>(partial_[level]));
      return;
    }
    const std::uint32_t size = F_.size();
    for (std::uint32_t key = 0; key < size; ++key) {
      coeffs_[level] = elem_from_key(key);
      partial_[level + 1] = partial_[level];
      accumulate(partial_[level + 1], coeffs_[level], level);
      recurse(level + 1, leaf);
    }
  }

  const FieldCtx& F_;
  std::uint32_t n_;
  std::uint32_t order_;
  std::vector<std::vector<std::uint32_t>> xpow_;
  std::vector<std::vector<FieldElem>> partial_;
  std::vector<FieldElem> coeffs_;
};

/// Strict F_q-linearity of a coefficient tuple (nonzero, and no proper
/// divisor s > 1 of n kills every coefficient off the multiples of s).
inline bool tuple_strictly_linear(const std::vector<FieldElem>& c) noexcept {
  const std::uint32_t n = static_cast<std::uint32_t>(c.size());
  if (std::all_of(c.begin(), c.end(), [](FieldElem e) { return e.is_zero(); })) return false;
  for (std::uint32_t s = 2; s <= n; ++s) {
    if (n % s != 0) continue;
    bool all_zero = true;
    for (std::uint32_t i = 0; i < n && all_zero; ++i)
      if (i % s != 0 && !c[i].is_zero()) all_zero = false;
    if (all_zero) return false;
  }
  return true;
}

}  // namespace qlinset::detail
