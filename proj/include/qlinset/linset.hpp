#pragma once

// Rank-n linear sets L_f = { <(x, f(x))> : x != 0 } of PG(1, q^n), the known
// maximum scattered families, and PΓL-equivalence via the image sets.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlinset/imageset.hpp"
#include "qlinset/moebius.hpp"
#include "qlinset/qpoly.hpp"

namespace qlinset {

/// (1 : m) is stored as m, (0 : 1) as INF.
using ProjPoint = ProjValue;

class LinearSet {
 public:
  explicit LinearSet(PointSet points, std::optional<QPoly> source = std::nullopt);

  const FieldCtx& field() const noexcept { return points_.field(); }
  const FieldPtr& field_ptr() const noexcept { return points_.field_ptr(); }
  const PointSet& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool contains(ProjPoint p) const noexcept { return points_.contains(p); }
  const std::optional<QPoly>& source() const noexcept { return source_; }

  friend bool operator==(const LinearSet& a, const LinearSet& b) noexcept { return a.points_ == b.points_; }

 private:
  PointSet points_;
  std::optional<QPoly> source_;
};

LinearSet linear_set(const QPoly& f);
/// |L| = (q^n - 1)/(q - 1). Throws NoSource for sets not built from a polynomial.
bool is_max_scattered(const LinearSet& l);

enum class Family { Fs, Gsd, Hsd, Kb };

/// Parses "f_s", "g_sδ"/"g_sd", "h_sδ"/"h_sd", "k_b".
Family parse_family(std::string_view name);
std::string_view family_name(Family family) noexcept;

/// f_s = x^{q^s}; g_{s,δ} = δ x^{q^s} + x^{q^{n-s}}; h_{s,δ} = δ x^{q^s} +
/// x^{q^{s+n/2}}; k_b = x^q + x^{q^3} + b x^{q^5}. `param` is δ or b and is
/// ignored for f_s. Throws InvalidParameters naming the failed condition.
QPoly family(const FieldPtr& ctx, Family family, std::uint32_t s, FieldElem param = FieldElem::zero());

/// Witness φ with moebius_image(Im f, φ) = Im(x^{q-1}), if any. Throws NotStrictlyLinear.
std::optional<SemilinearMap> is_pseudoregulus_type(const QPoly& f, unsigned threads = 0);
/// Witness φ with moebius_image(Im f, φ) = Im g, if any. Throws NotStrictlyLinear.
std::optional<SemilinearMap> pgammal_equivalent(const QPoly& f, const QPoly& g, unsigned threads = 0);

struct NewExampleOptions {
  bool all_mu = false;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct MuVerdict {
  FieldElem mu;
  FieldElem norm;
  std::optional<SemilinearMap> witness;
  double seconds = 0;
};

struct ControlResult {
  std::string name;
  std::string source;
  std::string target;
  std::optional<SemilinearMap> witness;
  bool verified = false;
  double seconds = 0;
};

struct NewExampleReport {
  FieldElem delta;
  FieldElem delta_norm;
  std::string polynomial;
  std::size_t points = 0;
  bool max_scattered = false;
  bool all_mu = false;
  std::vector<MuVerdict> mus;
  std::vector<ControlResult> controls;

  /// Maximum scattered, no μ equivalent, every control verified.
  bool passed() const noexcept;
  nlohmann::json to_json(const FieldCtx& ctx, bool with_timing = true) const;
};

/// Throws PreconditionViolated naming the first failing condition among
/// n = 5, q > 2, N(δ) != 0, N(δ) != 1, N(δ)^5 != 1.
void check_new_example_preconditions(const FieldCtx& ctx, FieldElem delta);

/// Checks g_{2,δ} against g_{1,μ} over the chosen μ. Requires n = 5, q > 2,
/// N(δ) not in {0, 1} and N(δ)^5 != 1; throws PreconditionViolated otherwise.
NewExampleReport verify_new_example(const FieldPtr& ctx, FieldElem delta, const NewExampleOptions& options = {});

}  // namespace qlinset
