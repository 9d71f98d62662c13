#pragma once

// The semilinear group ΓL(2, q^n) acting on graphs of q-polynomials, and the
// induced Möbius-semilinear action z -> (c + d z^σ)/(a + b z^σ) on PG(1, q^n).

#include <optional>
#include <string>

#include "qlinset/gf.hpp"
#include "qlinset/imageset.hpp"
#include "qlinset/qpoly.hpp"

namespace qlinset {

/// (x, y) -> [[a, b], [c, d]] (x^σ, y^σ) with σ: x -> x^{p^e}.
class SemilinearMap {
 public:
  /// Throws NotInvertible when ad - bc = 0.
  SemilinearMap(FieldPtr ctx, FieldElem a, FieldElem b, FieldElem c, FieldElem d, std::uint32_t sigma_exp = 0);

  static SemilinearMap identity(FieldPtr ctx);
  /// Parses "[[a,b],[c,d]];sigma=p^e" (the sigma part is optional).
  static SemilinearMap parse(FieldPtr ctx, std::string_view text);

  const FieldCtx& field() const noexcept { return *ctx_; }
  const FieldPtr& field_ptr() const noexcept { return ctx_; }
  FieldElem a() const noexcept { return a_; }
  FieldElem b() const noexcept { return b_; }
  FieldElem c() const noexcept { return c_; }
  FieldElem d() const noexcept { return d_; }
  std::uint32_t sigma_exp() const noexcept { return e_; }
  FieldElem det() const noexcept;

  /// Same projective map, scaled so the first nonzero of (a, b, c, d) is 1.
  SemilinearMap canonical() const;
  SemilinearMap inverse() const;

  /// Image of the vector (x, y).
  std::pair<FieldElem, FieldElem> apply(FieldElem x, FieldElem y) const noexcept;
  /// Image of the point (1 : z), or of (0 : 1) for INF.
  ProjValue apply(ProjValue z) const;

  /// "[[a,b],[c,d]];sigma=p^e".
  std::string to_string() const;

  friend bool operator==(const SemilinearMap& x, const SemilinearMap& y) noexcept {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_ && x.e_ == y.e_;
  }

 private:
  FieldPtr ctx_;
  FieldElem a_, b_, c_, d_;
  std::uint32_t e_;
};

/// outer ∘ inner (inner applied first).
SemilinearMap compose(const SemilinearMap& outer, const SemilinearMap& inner);

/// b = 0, or -(a/b)^{σ^{-1}} is not in Im(f(x)/x).
bool is_admissible(const QPoly& f, const SemilinearMap& phi);
/// f_φ = h_f ∘ k_f^{-1}. Throws NotAdmissible.
QPoly transform_poly(const QPoly& f, const SemilinearMap& phi);
/// True iff {(x, g(x))} = {φ(u, f(u))}.
bool graph_maps_to(const QPoly& f, const SemilinearMap& phi, const QPoly& g);

PointSet moebius_image(const PointSet& s, const SemilinearMap& phi);
PointSet moebius_image(const ImageSet& s, const SemilinearMap& phi);

/// Searches for φ with moebius_image(S, φ) = T (INF-free). Sizes that differ
/// give nullopt; |S| < 3 throws DegenerateSet. The returned witness is the
/// first in (σ, t1, t2, t3) order, canonicalised, and re-verified.
std::optional<SemilinearMap> find_set_equivalence(const ImageSet& s, const ImageSet& t, unsigned threads = 0);

}  // namespace qlinset
