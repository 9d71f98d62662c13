#pragma once

// Image sets Im(f(x)/x) of q-polynomials, their power sums, and the
// exhaustive/sampled size survey.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlinset/gf.hpp"
#include "qlinset/qpoly.hpp"

namespace qlinset {

/// A point of PG(1, q^n) in affine form: (1 : m) is the element m and
/// (0 : 1) is the marker INF.
class ProjValue {
 public:
  constexpr ProjValue(FieldElem value) noexcept : value_(value) {}  // NOLINT(implicit)
  static constexpr ProjValue inf() noexcept { return ProjValue(); }

  constexpr bool is_inf() const noexcept { return inf_; }
  constexpr FieldElem value() const noexcept { return value_; }

  friend constexpr bool operator==(ProjValue, ProjValue) noexcept = default;

 private:
  constexpr ProjValue() noexcept : inf_(true) {}
  FieldElem value_;
  bool inf_ = false;
};

/// Dense subset of F_{q^n} ∪ {INF}. Field elements use slot key(); INF uses
/// the slot just past the last element.
class PointSet {
 public:
  explicit PointSet(FieldPtr ctx);

  const FieldCtx& field() const noexcept { return *ctx_; }
  const FieldPtr& field_ptr() const noexcept { return ctx_; }

  bool contains(FieldElem x) const noexcept { return test(x.key()); }
  bool contains(ProjValue v) const noexcept { return test(slot(v)); }
  bool contains_inf() const noexcept { return test(inf_slot()); }
  /// Returns true if the point was new.
  bool insert(ProjValue v) noexcept;
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Finite members in increasing element order.
  std::vector<FieldElem> elements() const;
  /// Smallest finite members, at most `count` of them.
  std::vector<FieldElem> smallest(std::size_t count) const;

  friend bool operator==(const PointSet& a, const PointSet& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  std::uint32_t inf_slot() const noexcept { return ctx_->size(); }
  std::uint32_t slot(ProjValue v) const noexcept { return v.is_inf() ? inf_slot() : v.value().key(); }
  bool test(std::uint32_t s) const noexcept { return (words_[s >> 6] >> (s & 63)) & 1u; }

  FieldPtr ctx_;
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Im(f(x)/x) = { f(x)/x : x != 0 }. Never contains INF.
class ImageSet {
 public:
  /// Throws InvalidArgument if `points` contains INF.
  explicit ImageSet(PointSet points, bool from_zero_map = false);

  const FieldCtx& field() const noexcept { return points_.field(); }
  const FieldPtr& field_ptr() const noexcept { return points_.field_ptr(); }
  const PointSet& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool contains(FieldElem x) const noexcept { return points_.contains(x); }
  std::vector<FieldElem> elements() const { return points_.elements(); }
  /// The source was the zero map (image {0}).
  bool from_zero_map() const noexcept { return from_zero_map_; }

  friend bool operator==(const ImageSet& a, const ImageSet& b) noexcept { return a.points_ == b.points_; }

 private:
  PointSet points_;
  bool from_zero_map_;
};

/// Window [q^{n-1}+1, (q^n-1)/(q-1)] for strictly F_q-linear maps.
struct DirectionBounds {
  std::uint64_t lower;
  std::uint64_t upper;
};
DirectionBounds direction_bounds(const FieldCtx& ctx);

ImageSet image_of_ratio(const QPoly& f);
bool images_equal(const QPoly& f, const QPoly& g);

/// Distinct values of f(x)/x with their multiplicities reduced mod p.
std::vector<std::pair<FieldElem, std::uint32_t>> ratio_multiset(const QPoly& f);
/// sum_{x != 0} (f(x)/x)^d for 1 <= d <= q^n - 1.
FieldElem power_sum(const QPoly& f, std::uint64_t d);

struct SurveyMode {
  enum class Kind { Exhaustive, Sample } kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static SurveyMode exhaustive() { return {}; }
  static SurveyMode sample(std::uint64_t n, std::uint64_t seed) { return {Kind::Sample, n, seed}; }
};

struct SurveyBin {
  std::uint64_t count = 0;
  /// Lex-least polynomial with this image size among those visited.
  std::vector<FieldElem> representative;
};

struct SurveyResult {
  std::map<std::uint64_t, SurveyBin> bins;  // image size -> bin
  std::uint64_t polynomials = 0;            // strictly linear polynomials visited

  /// CSV rows "size,count,representative".
  std::string to_csv(const FieldCtx& ctx) const;
};

/// Histogram of |Im(f(x)/x)| over strictly F_q-linear f. Exhaustive mode
/// requires (q^n)^n <= 2^32 and throws TooLargeForExhaustive otherwise.
SurveyResult survey_image_sizes(const FieldPtr& ctx, const SurveyMode& mode, unsigned threads = 0);

}  // namespace qlinset
