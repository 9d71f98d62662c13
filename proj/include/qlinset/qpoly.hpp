#pragma once

// q-polynomials f(x) = sum_{i<n} a_i x^{q^i} over F_{q^n}, i.e. the
// F_q-linear maps of F_{q^n}, with composition taken modulo x^{q^n} - x.

#include <string>
#include <string_view>
#include <vector>

#include "qlinset/gf.hpp"
#include "qlinset/linalg.hpp"

namespace qlinset {

class QPoly {
 public:
  /// Zero polynomial.
  explicit QPoly(FieldPtr ctx);
  /// Coefficients a_0..a_{n-1}; the length must equal n.
  QPoly(FieldPtr ctx, std::vector<FieldElem> coeffs);

  static QPoly identity(FieldPtr ctx);
  /// c * x^{q^k}.
  static QPoly monomial(FieldPtr ctx, FieldElem c, std::uint32_t k);
  /// Tr_{q^n/q}(x) = x + x^q + ... + x^{q^{n-1}}.
  static QPoly trace(FieldPtr ctx);
  /// Parses "a0,a1,...,a{n-1}" in element notation.
  static QPoly parse(FieldPtr ctx, std::string_view text);

  const FieldCtx& field() const noexcept { return *ctx_; }
  const FieldPtr& field_ptr() const noexcept { return ctx_; }
  std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(coeffs_.size()); }
  const std::vector<FieldElem>& coeffs() const noexcept { return coeffs_; }
  FieldElem operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const noexcept;
  /// Number of nonzero coefficients.
  std::size_t weight() const noexcept;
  std::string to_string() const;

  friend bool operator==(const QPoly& a, const QPoly& b) noexcept { return a.coeffs_ == b.coeffs_; }
  /// Lexicographic on (a_0, ..., a_{n-1}) using the element order.
  friend auto operator<=>(const QPoly& a, const QPoly& b) noexcept { return a.coeffs_ <=> b.coeffs_; }

 private:
  FieldPtr ctx_;
  std::vector<FieldElem> coeffs_;
};

FieldElem eval(const QPoly& f, FieldElem x);
QPoly add(const QPoly& f, const QPoly& g);
QPoly scale(const QPoly& f, FieldElem c);
/// f(g(x)) reduced modulo x^{q^n} - x.
QPoly compose(const QPoly& f, const QPoly& g);
/// The adjoint with respect to (x, y) -> Tr(xy).
QPoly adjoint(const QPoly& f);
/// Applies x -> x^{p^e} to every coefficient.
QPoly frobenius_coeffs(const QPoly& f, std::uint32_t e);

/// Matrix over F_q of the map in the basis ctx.fq_basis(): column j holds the
/// coordinates of f(basis_j).
Matrix as_matrix(const QPoly& f);
std::uint32_t kernel_dim(const QPoly& f);
bool is_invertible(const QPoly& f);
/// Throws NotInvertible.
QPoly inverse(const QPoly& f);
/// The unique q-polynomial h with h(inputs_j) = outputs_j, where inputs is an
/// F_q-basis of F_{q^n}.
QPoly interpolate(FieldPtr ctx, const std::vector<FieldElem>& inputs, const std::vector<FieldElem>& outputs);

/// Largest s | n such that a_i = 0 whenever s does not divide i.
/// Throws ZeroPolynomial.
std::uint32_t max_field_of_linearity(const QPoly& f);
/// Nonzero with maximum field of linearity F_q.
bool is_strictly_linear(const QPoly& f);

/// f(lambda x)/lambda: coefficient i becomes a_i lambda^{q^i - 1}. Throws ZeroScalar.
QPoly scale_conjugate(const QPoly& f, FieldElem lambda);

/// Throws FieldMismatch unless both polynomials live over the same context.
void require_same_field(const QPoly& f, const QPoly& g);

}  // namespace qlinset
