#include "qlinset/imageset.hpp"

#include <bit>
#include <random>
#include <sstream>

#include "poly_walk.hpp"
#include "qlinset/parallel.hpp"

namespace qlinset {

PointSet::PointSet(FieldPtr ctx) : ctx_(std::move(ctx)) { words_.assign((ctx_->size() + 1 + 63) / 64, 0); }

bool PointSet::insert(ProjValue v) noexcept {
  std::uint32_t s = slot(v);
  std::uint64_t bit = std::uint64_t{1} << (s & 63);
  if (words_[s >> 6] & bit) return false;
  words_[s >> 6] |= bit;
  ++size_;
  return true;
}

std::vector<FieldElem> PointSet::elements() const { return smallest(size_); }

std::vector<FieldElem> PointSet::smallest(std::size_t count) const {
  std::vector<FieldElem> out;
  const std::uint32_t limit = inf_slot();
  for (std::size_t w = 0; w < words_.size() && out.size() < count; ++w) {
    std::uint64_t word = words_[w];
    while (word && out.size() < count) {
      std::uint32_t s = static_cast<std::uint32_t>(w * 64 + std::countr_zero(word));
      word &= word - 1;
      if (s >= limit) break;
      out.push_back(detail::elem_from_key(s));
    }
  }
  return out;
}

ImageSet::ImageSet(PointSet points, bool from_zero_map)
    : points_(std::move(points)), from_zero_map_(from_zero_map) {
  if (points_.contains_inf()) throw Error(ErrorKind::InvalidArgument, "image sets never contain INF");
}

DirectionBounds direction_bounds(const FieldCtx& ctx) {
  std::uint64_t q = ctx.q();
  std::uint64_t qn1 = 1;
  for (std::uint32_t i = 0; i + 1 < ctx.n(); ++i) qn1 *= q;
  std::uint64_t qn = qn1 * q;
  return {qn1 + 1, (qn - 1) / (q - 1)};
}

namespace {

// Calls fn(k, ratio) with ratio = f(g^k)/g^k for every k.
template <class Fn>
void for_each_ratio(const QPoly& f, Fn&& fn) {
  const FieldCtx& F = f.field();
  const std::uint32_t n = f.n();
  std::vector<std::uint32_t> mult(n);
  for (std::uint32_t i = 0; i < n; ++i) mult[i] = F.qpow_mod(i);
  for (std::uint32_t k = 0; k < F.order(); ++k) {
    FieldElem acc = F.zero();
    for (std::uint32_t i = 0; i < n; ++i) {
      if (f[i].is_zero()) continue;
      acc = F.add(acc, FieldElem::from_index(F.add_mod(f[i].index(), F.mul_mod(k, mult[i]))));
    }
    fn(k, acc.is_zero() ? acc : FieldElem::from_index(acc.index() >= k ? acc.index() - k : acc.index() + F.order() - k));
  }
}

}  // namespace

ImageSet image_of_ratio(const QPoly& f) {
  PointSet points(f.field_ptr());
  for_each_ratio(f, [&](std::uint32_t, FieldElem r) { points.insert(r); });
  return ImageSet(std::move(points), f.is_zero());
}

bool images_equal(const QPoly& f, const QPoly& g) {
  require_same_field(f, g);
  return image_of_ratio(f) == image_of_ratio(g);
}

std::vector<std::pair<FieldElem, std::uint32_t>> ratio_multiset(const QPoly& f) {
  const FieldCtx& F = f.field();
  std::vector<std::uint32_t> counts(F.size(), 0);
  for_each_ratio(f, [&](std::uint32_t, FieldElem r) { counts[r.key()] = (counts[r.key()] + 1) % F.p(); });
  std::vector<std::pair<FieldElem, std::uint32_t>> out;
  for (std::uint32_t key = 0; key < F.size(); ++key)
    if (counts[key] != 0) out.emplace_back(detail::elem_from_key(key), counts[key]);
  return out;
}

FieldElem power_sum(const QPoly& f, std::uint64_t d) {
  const FieldCtx& F = f.field();
  if (d == 0 || d > F.order())
    throw Error(ErrorKind::InvalidArgument, "power sum exponent must lie in [1, q^n - 1]");
  FieldElem acc = F.zero();
  for (const auto& [value, count] : ratio_multiset(f))
    acc = F.add(acc, F.mul(F.from_int(count), F.pow(value, d)));
  return acc;
}

std::string SurveyResult::to_csv(const FieldCtx& ctx) const {
  std::ostringstream os;
  os << "size,count,representative\n";
  for (const auto& [size, bin] : bins) {
    os << size << ',' << bin.count << ",\"";
    for (std::size_t i = 0; i < bin.representative.size(); ++i)
      os << (i ? "," : "") << ctx.format(bin.representative[i]);
    os << "\"\n";
  }
  return os.str();
}

namespace {

void record(SurveyResult& out, std::uint64_t size, const std::vector<FieldElem>& coeffs) {
  auto& bin = out.bins[size];
  if (bin.count == 0 || coeffs < bin.representative) bin.representative = coeffs;
  ++bin.count;
  ++out.polynomials;
}

void merge(SurveyResult& into, const SurveyResult& part) {
  into.polynomials += part.polynomials;
  for (const auto& [size, bin] : part.bins) {
    auto& dst = into.bins[size];
    if (dst.count == 0 || bin.representative < dst.representative) dst.representative = bin.representative;
    dst.count += bin.count;
  }
}

SurveyResult survey_exhaustive(const FieldPtr& ctx, unsigned threads) {
  const FieldCtx& F = *ctx;
  const std::uint32_t n = F.n();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    total *= F.size();
    if (total > (std::uint64_t{1} << 32))
      throw Error(ErrorKind::TooLargeForExhaustive, "(q^n)^n exceeds 2^32 for " + F.spec_string());
  }
  SurveyResult result;
  if (n < 2) return result;

  std::vector<SurveyResult> parts(F.size());
  parallel_for(F.size(), threads, [&](std::size_t first_key) {
    detail::PolyWalker walker(F);
    std::vector<std::uint32_t> stamp(F.size(), 0);
    std::uint32_t epoch = 0;
    const auto& last_pow = walker.xpow(n - 1);
    SurveyResult& part = parts[first_key];
    std::vector<FieldElem> full(n);
    walker.walk_first(static_cast<std::uint32_t>(first_key), [&](const std::vector<FieldElem>& prefix,
                                                                 const std::vector<FieldElem>& partial) {
      full = prefix;
      for (std::uint32_t key = 0; key < F.size(); ++key) {
        FieldElem a = detail::elem_from_key(key);
        full[n - 1] = a;
        if (!detail::tuple_strictly_linear(full)) continue;
        ++epoch;
        std::uint64_t distinct = 0;
        for (std::uint32_t k = 0; k < F.order(); ++k) {
          FieldElem v = a.is_zero() ? partial[k]
                                    : F.add(partial[k], FieldElem::from_index(F.add_mod(a.index(), last_pow[k])));
          std::uint32_t slot = v.is_zero() ? 0 : F.add_mod(v.index(), F.order() - k) + 1;
          if (stamp[slot] != epoch) {
            stamp[slot] = epoch;
            ++distinct;
          }
        }
        record(part, distinct, full);
      }
    });
  });
  for (const auto& part : parts) merge(result, part);
  return result;
}

}  // namespace

SurveyResult survey_image_sizes(const FieldPtr& ctx, const SurveyMode& mode, unsigned threads) {
  if (mode.kind == SurveyMode::Kind::Exhaustive) return survey_exhaustive(ctx, threads);
  SurveyResult result;
  const FieldCtx& F = *ctx;
  if (F.n() < 2) return result;
  std::mt19937_64 rng(mode.seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, F.size() - 1);
  for (std::uint64_t s = 0; s < mode.samples;) {
    std::vector<FieldElem> c(F.n());
    for (auto& e : c) e = detail::elem_from_key(pick(rng));
    if (!detail::tuple_strictly_linear(c)) continue;
    QPoly f(ctx, c);
    record(result, image_of_ratio(f).size(), c);
    ++s;
  }
  return result;
}

}  // namespace qlinset
