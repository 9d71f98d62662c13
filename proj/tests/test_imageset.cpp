#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracle.hpp"
#include "qlinset/imageset.hpp"

using namespace qlinset;

namespace {

std::set<FieldElem> as_set(const ImageSet& s) {
  auto e = s.elements();
  return {e.begin(), e.end()};
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(ImageSet, MatchesDirectComputation) {
  for (auto ctx : {build_field(2, 1, 4), build_field(3, 1, 3), build_field(2, 2, 3), build_field(2, 1, 5)}) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 25; ++t) {
      QPoly f = oracle::random_poly(ctx, rng);
      ImageSet img = image_of_ratio(f);
      EXPECT_EQ(as_set(img), oracle::image(f)) << f.to_string();
      EXPECT_FALSE(img.points().contains_inf());
    }
  }
}

TEST(ImageSet, KnownSizes) {
  auto k2 = build_field(2, 1, 5);
  EXPECT_EQ(image_of_ratio(QPoly::trace(k2)).size(), 17u);
  EXPECT_EQ(image_of_ratio(QPoly::monomial(k2, k2->one(), 1)).size(), 31u);
  auto k3 = build_field(3, 1, 5);
  EXPECT_EQ(image_of_ratio(QPoly::monomial(k3, k3->one(), 1)).size(), 121u);
  auto b = direction_bounds(*k3);
  EXPECT_EQ(b.lower, 82u);
  EXPECT_EQ(b.upper, 121u);
  ImageSet zero = image_of_ratio(QPoly(k3));
  EXPECT_TRUE(zero.from_zero_map());
  EXPECT_EQ(zero.size(), 1u);
  EXPECT_TRUE(zero.contains(k3->zero()));
}

TEST(ImageSet, PowerSumsAndMultiset) {
  auto ctx = build_field(3, 1, 3);
  const FieldCtx& F = *ctx;
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    QPoly f = oracle::random_poly(ctx, rng);
    std::map<FieldElem, std::uint32_t> counts;
    for (FieldElem x : oracle::all_elements(F))
      if (!x.is_zero()) ++counts[F.div(oracle::naive_eval(f, x), x)];
    auto ms = ratio_multiset(f);
    ASSERT_EQ(ms.size(), counts.size());
    for (auto [v, m] : ms) EXPECT_EQ(m, counts[v] % F.p());
    for (std::uint64_t d = 1; d < F.size(); ++d) {
      FieldElem acc = F.zero();
      for (FieldElem x : oracle::all_elements(F))
        if (!x.is_zero()) acc = oracle::add(F, acc, oracle::pow(F, F.div(oracle::naive_eval(f, x), x), d));
      ASSERT_EQ(power_sum(f, d), acc) << "d = " << d;
    }
  }
}

TEST(ImageSet, ImagesEqual) {
  auto ctx = build_field(2, 1, 4);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    QPoly f = oracle::random_poly(ctx, rng), g = oracle::random_poly(ctx, rng);
    EXPECT_EQ(images_equal(f, g), oracle::image(f) == oracle::image(g));
    EXPECT_TRUE(images_equal(f, adjoint(f)));
  }
}

TEST(Survey, ExhaustiveMatchesPerPolynomialOracle) {
  auto ctx = build_field(2, 1, 4);
  const FieldCtx& F = *ctx;
  auto all = oracle::all_elements(F);
  std::map<std::uint64_t, std::uint64_t> expected;
  std::uint64_t total = 0;
  for (FieldElem a0 : all)
    for (FieldElem a1 : all)
      for (FieldElem a2 : all)
        for (FieldElem a3 : all) {
          QPoly f(ctx, {a0, a1, a2, a3});
          if (f.is_zero()) continue;
          // Strictly linear: not F_{q^2}-linear, checked on one witness c in F_4 \ F_2.
          FieldElem c = F.subfield_elements(2).back();
          bool f4_linear = true;
          for (FieldElem x : all)
            if (oracle::naive_eval(f, F.mul(c, x)) != F.mul(c, oracle::naive_eval(f, x))) f4_linear = false;
          if (f4_linear) continue;
          ++total;
          ++expected[oracle::image(f).size()];
        }
  SurveyResult r = survey_image_sizes(ctx, SurveyMode::exhaustive(), 2);
  EXPECT_EQ(r.polynomials, total);
  EXPECT_EQ(total, 65280u);
  std::map<std::uint64_t, std::uint64_t> got;
  for (const auto& [size, bin] : r.bins) {
    got[size] = bin.count;
    QPoly rep(ctx, bin.representative);
    EXPECT_EQ(image_of_ratio(rep).size(), size);
    EXPECT_GE(size, 9u);
    EXPECT_LE(size, 15u);
  }
  EXPECT_EQ(got, expected);
  EXPECT_NE(r.to_csv(F).find("15,"), std::string::npos);
}

TEST(Survey, SampleIsDeterministic) {
  auto ctx = build_field(3, 1, 5);
  auto a = survey_image_sizes(ctx, SurveyMode::sample(300, 42), 2);
  auto b = survey_image_sizes(ctx, SurveyMode::sample(300, 42), 1);
  EXPECT_EQ(a.polynomials, 300u);
  EXPECT_EQ(a.to_csv(*ctx), b.to_csv(*ctx));
  for (const auto& [size, bin] : a.bins) {
    EXPECT_GE(size, 82u);
    EXPECT_LE(size, 121u);
  }
}

TEST(Survey, Errors) {
  auto ctx = build_field(3, 1, 5);
  EXPECT_EQ(kind_of([&] { survey_image_sizes(ctx, SurveyMode::exhaustive()); }), ErrorKind::TooLargeForExhaustive);
  PointSet with_inf(ctx);
  EXPECT_TRUE(with_inf.insert(ProjValue::inf()));
  EXPECT_FALSE(with_inf.insert(ProjValue::inf()));
  EXPECT_EQ(kind_of([&] { ImageSet bad(with_inf); }), ErrorKind::InvalidArgument);
}

TEST(PointSet, OrderedElements) {
  auto ctx = build_field(2, 1, 4);
  PointSet s(ctx);
  for (std::uint32_t k : {7u, 3u, 11u}) s.insert(FieldElem::from_index(k));
  s.insert(ctx->zero());
  EXPECT_EQ(s.size(), 4u);
  auto e = s.elements();
  EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
  EXPECT_EQ(s.smallest(2), std::vector<FieldElem>(e.begin(), e.begin() + 2));
}
