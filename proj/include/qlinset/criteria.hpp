#pragma once

// Same-image criteria: the coefficient identities e0-e6 for n = 5, the trace
// and pseudoregulus tests, the monomial classification, and the full
// classifiers for n <= 5.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qlinset/gf.hpp"
#include "qlinset/moebius.hpp"
#include "qlinset/qpoly.hpp"

namespace qlinset {

struct ERelationReport {
  std::array<bool, 7> holds{};
  std::array<FieldElem, 7> lhs{};
  std::array<FieldElem, 7> rhs{};

  bool all() const noexcept;
};

/// Evaluates e0..e6 on the coefficients of f (left) and g (right). Throws
/// WrongDegree unless n = 5.
ERelationReport check_e_relations(const QPoly& f, const QPoly& g);

/// Sum of (f(x)/x)^d agrees with g for every d in [1, q^n - 1].
bool power_sums_all_equal(const QPoly& f, const QPoly& g);

struct Trace5Witness {
  SemilinearMap phi;
  FieldElem lambda;
};

/// Some φ maps f to Tr(λ^{q^4} x)/λ^{q^4} iff a_1a_2a_3a_4 != 0, the two
/// ratio conditions hold and N(a_1) = N(a_2). Throws WrongDegree.
std::optional<Trace5Witness> trace5_test(const QPoly& f);

struct PseudoalgResult {
  enum class Kind { Cond1Witness, Cond2Witness, TraceFallback, None } kind = Kind::None;
  /// Set for the two witness kinds; f_φ then has the image of x^{q-1}.
  std::optional<SemilinearMap> phi;
};

std::string_view pseudoalg_kind_name(PseudoalgResult::Kind kind) noexcept;

/// Throws WrongDegree, and PreconditionViolated if some a_1..a_4 is zero.
/// A witness that fails re-verification raises Inconsistent.
PseudoalgResult pseudoalg_test(const QPoly& f);

struct MonomialMatch {
  FieldElem beta;
  std::uint32_t s;
};

/// f = α x^{q^k} with 1 <= k <= n-1. When the images agree, g must be
/// β x^{q^s} with gcd(s, n) = gcd(k, n) and equal relative norms over
/// F_{q^t}. Throws NotMonomial, ImagesDiffer, or Inconsistent.
MonomialMatch monomial_classify(const QPoly& f, const QPoly& g);

struct MonomialPair {
  SemilinearMap phi;
  std::uint32_t i;
  std::uint32_t j;
  FieldElem alpha;
  FieldElem beta;
};
struct ScalarConjugate {
  FieldElem lambda;
};
struct AdjointScalarConjugate {
  FieldElem lambda;
};
struct ImagesDiffer {};
struct Inconsistent {
  std::string diagnostic;
};

using ClassifyOutcome = std::variant<MonomialPair, ScalarConjugate, AdjointScalarConjugate, ImagesDiffer, Inconsistent>;

std::string_view outcome_name(const ClassifyOutcome& outcome) noexcept;
nlohmann::json to_json(const ClassifyOutcome& outcome, const FieldCtx& ctx);
nlohmann::json to_json(const ERelationReport& report, const FieldCtx& ctx);

/// First λ (by index) with g = f(λx)/λ, then first with g = f̂(λx)/λ.
std::optional<ClassifyOutcome> scan_scalar_conjugates(const QPoly& f, const QPoly& g);

/// 2 <= n <= 4. Throws WrongDegree, NotStrictlyLinear, ImagesDiffer.
ClassifyOutcome classify_n_le_4(const QPoly& f, const QPoly& g, unsigned threads = 0);
/// n = 5. Throws WrongDegree, NotStrictlyLinear, ImagesDiffer.
ClassifyOutcome classify_n5(const QPoly& f, const QPoly& g, unsigned threads = 0);

/// True iff the outcome's witness rebuilds g from f (or ImagesDiffer is
/// correct). Inconsistent never verifies.
bool verify_outcome(const QPoly& f, const QPoly& g, const ClassifyOutcome& outcome);

/// Every strictly F_q-linear g with Im(g(x)/x) = Im(f(x)/x), in lexicographic
/// order. Requires (q^n)^n <= 2^26 (TooLargeForExhaustive) and f strictly
/// linear (NotStrictlyLinear).
std::vector<QPoly> exhaustive_same_image(const QPoly& f, unsigned threads = 0);

}  // namespace qlinset
