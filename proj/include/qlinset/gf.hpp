#pragma once

// Table-driven arithmetic for the tower F_p ⊆ F_q ⊆ F_{q^s} ⊆ F_{q^n}, q = p^h.
//
// Only the top field F_{p^{hn}} is materialised. Elements are stored as
// discrete logarithms with respect to a fixed primitive root g of the modulus,
// so multiplication, inversion and Frobenius powers are index arithmetic and
// addition goes through a single Zech-logarithm table. Subfields are the
// fixed sets of the corresponding Frobenius powers.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlinset/error.hpp"

namespace qlinset {

/// Element of a FieldCtx: either zero or g^k with 0 <= k < p^{hn}-1.
class FieldElem {
 public:
  static constexpr std::uint32_t kZeroRaw = 0xFFFFFFFFu;

  constexpr FieldElem() noexcept = default;

  static constexpr FieldElem zero() noexcept { return FieldElem(); }
  static constexpr FieldElem from_index(std::uint32_t k) noexcept { return FieldElem(k); }

  constexpr bool is_zero() const noexcept { return raw_ == kZeroRaw; }
  /// Discrete log; only meaningful for nonzero elements.
  constexpr std::uint32_t index() const noexcept { return raw_; }
  /// Position in the total order: zero is 0, g^k is k+1. Also the bitset slot.
  constexpr std::uint32_t key() const noexcept { return raw_ + 1u; }

  friend constexpr bool operator==(FieldElem a, FieldElem b) noexcept { return a.raw_ == b.raw_; }
  friend constexpr std::strong_ordering operator<=>(FieldElem a, FieldElem b) noexcept {
    return a.key() <=> b.key();
  }

 private:
  constexpr explicit FieldElem(std::uint32_t raw) noexcept : raw_(raw) {}
  std::uint32_t raw_ = kZeroRaw;
};

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Largest supported field size p^{hn}.
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 24;

/// Builds F_{p^{hn}}. Without an override the modulus is the lexicographically
/// least primitive polynomial of degree hn over F_p (coefficients compared
/// from the constant term upwards). An override lists c_0..c_{hn-1} and may
/// include the leading 1; it must be primitive.
FieldPtr build_field(std::uint32_t p, std::uint32_t h, std::uint32_t n,
                     const std::optional<std::vector<std::uint32_t>>& modulus = std::nullopt);

bool is_prime(std::uint64_t v) noexcept;
std::vector<std::uint64_t> prime_factors(std::uint64_t v);
std::vector<std::uint32_t> divisors(std::uint32_t v);

class FieldCtx {
 public:
  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t h() const noexcept { return h_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  /// Degree hn of the top field over F_p.
  std::uint32_t degree() const noexcept { return h_ * n_; }
  /// Number of elements p^{hn}.
  std::uint32_t size() const noexcept { return size_; }
  /// Multiplicative order p^{hn} - 1.
  std::uint32_t order() const noexcept { return order_; }
  /// Monic modulus c_0..c_{hn}, constant term first.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  FieldElem zero() const noexcept { return FieldElem::zero(); }
  FieldElem one() const noexcept { return FieldElem::from_index(0); }
  FieldElem generator() const noexcept { return FieldElem::from_index(order_ == 1 ? 0 : 1 % order_); }
  FieldElem gpow(std::uint64_t k) const noexcept {
    return FieldElem::from_index(static_cast<std::uint32_t>(k % order_));
  }
  /// Image of the integer v under Z -> F_p.
  FieldElem from_int(std::int64_t v) const;

  // Arithmetic. Everything is inline: these are the inner loops of every search.
  FieldElem add(FieldElem a, FieldElem b) const noexcept {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::uint32_t ia = a.index();
    std::uint32_t ib = b.index();
    std::uint32_t diff = ib >= ia ? ib - ia : ib + order_ - ia;
    std::int32_t z = zech_[diff];
    if (z < 0) return FieldElem::zero();
    return FieldElem::from_index(add_mod(ia, static_cast<std::uint32_t>(z)));
  }
  FieldElem neg(FieldElem a) const noexcept {
    if (a.is_zero() || p_ == 2) return a;
    return FieldElem::from_index(add_mod(a.index(), order_ / 2));
  }
  FieldElem sub(FieldElem a, FieldElem b) const noexcept { return add(a, neg(b)); }
  FieldElem mul(FieldElem a, FieldElem b) const noexcept {
    if (a.is_zero() || b.is_zero()) return FieldElem::zero();
    return FieldElem::from_index(add_mod(a.index(), b.index()));
  }
  FieldElem inv(FieldElem a) const {
    if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return FieldElem::from_index(a.index() == 0 ? 0 : order_ - a.index());
  }
  FieldElem div(FieldElem a, FieldElem b) const {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    if (a.is_zero()) return a;
    std::uint32_t ia = a.index();
    std::uint32_t ib = b.index();
    return FieldElem::from_index(ia >= ib ? ia - ib : ia + order_ - ib);
  }
  /// a^e with 0^0 = 1.
  FieldElem pow(FieldElem a, std::uint64_t e) const noexcept {
    if (e == 0) return one();
    if (a.is_zero()) return a;
    return FieldElem::from_index(mul_mod(a.index(), e % order_));
  }
  /// a^(-e) for nonzero a.
  FieldElem pow_neg(FieldElem a, std::uint64_t e) const { return pow(inv(a), e); }

  /// x^{p^e}; e is taken modulo hn.
  FieldElem frobenius(FieldElem x, std::uint32_t e) const noexcept {
    if (x.is_zero()) return x;
    return FieldElem::from_index(mul_mod(x.index(), ppow_[e % degree()]));
  }
  /// x^{q^i}; i is taken modulo n.
  FieldElem frob_q(FieldElem x, std::uint32_t i) const noexcept { return frobenius(x, h_ * (i % n_)); }
  /// q^i mod (p^{hn}-1), the index multiplier of x -> x^{q^i}.
  std::uint32_t qpow_mod(std::uint32_t i) const noexcept { return ppow_[(h_ * (i % n_)) % degree()]; }

  /// Tr_{q^n/q^s}; s must divide n.
  FieldElem trace_rel(FieldElem x, std::uint32_t s) const;
  /// N_{q^n/q^s}; s must divide n.
  FieldElem norm_rel(FieldElem x, std::uint32_t s) const;
  FieldElem trace(FieldElem x) const { return trace_rel(x, 1); }
  FieldElem norm(FieldElem x) const { return norm_rel(x, 1); }

  /// Smallest d | hn with x^{p^d} = x (degree of the generated subfield over F_p).
  std::uint32_t subfield_degree(FieldElem x) const noexcept;
  /// True iff x lies in F_{q^s}.
  bool in_subfield(FieldElem x, std::uint32_t s) const noexcept {
    return frobenius(x, h_ * s) == x;
  }
  /// All elements of F_{q^s} in increasing order.
  std::vector<FieldElem> subfield_elements(std::uint32_t s) const;

  /// Additive representation: base-p digits of the coordinate vector with
  /// respect to the polynomial basis 1, X, ..., X^{hn-1} over F_p.
  std::uint32_t to_vector(FieldElem x) const noexcept {
    return x.is_zero() ? 0u : antilog_[x.index()];
  }
  FieldElem from_vector(std::uint32_t v) const noexcept {
    return v == 0 ? FieldElem::zero() : FieldElem::from_index(log_[v]);
  }

  /// F_q-basis g^0, ..., g^{n-1} of F_{q^n}.
  const std::vector<FieldElem>& fq_basis() const noexcept { return fq_basis_; }
  /// Coordinates (in F_q) of x with respect to fq_basis().
  std::vector<FieldElem> coordinates(FieldElem x) const;

  /// "p^h^n/c_0,...,c_{hn}".
  std::string spec_string() const;
  /// "0" or "g^k".
  std::string format(FieldElem x) const;
  /// Accepts "0", "1", "g", "g^k" (k reduced modulo the group order).
  FieldElem parse(std::string_view text) const;

  std::uint32_t add_mod(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= order_ ? s - order_ : s;
  }
  std::uint32_t mul_mod(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint32_t>((a * b) % order_);
  }

 private:
  friend FieldPtr build_field(std::uint32_t, std::uint32_t, std::uint32_t,
                              const std::optional<std::vector<std::uint32_t>>&);
  FieldCtx(std::uint32_t p, std::uint32_t h, std::uint32_t n, std::vector<std::uint32_t> modulus);
  void build_tables();
  void build_coordinates();

  std::uint32_t p_;
  std::uint32_t h_;
  std::uint32_t n_;
  std::uint32_t q_;
  std::uint32_t size_;
  std::uint32_t order_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> log_;      // vector -> index (slot 0 unused)
  std::vector<std::uint32_t> antilog_;  // index -> vector
  std::vector<std::int32_t> zech_;      // k -> log(1 + g^k), -1 for zero
  std::vector<std::uint32_t> ppow_;     // e -> p^e mod order, e in [0, hn]
  std::vector<FieldElem> fq_basis_;
  std::vector<FieldElem> dual_basis_;   // Tr(basis_i * dual_j) = delta_ij
};

}  // namespace qlinset
