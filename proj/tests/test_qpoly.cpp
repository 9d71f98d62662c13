#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "qlinset/qpoly.hpp"

using namespace qlinset;

namespace {

// Largest s | n such that f(c x) = c f(x) for every c in F_{q^s}, by brute force.
std::uint32_t linearity_by_brute_force(const QPoly& f) {
  const FieldCtx& F = f.field();
  std::uint32_t best = 1;
  for (std::uint32_t s : divisors(f.n())) {
    bool ok = true;
    for (FieldElem c : F.subfield_elements(s))
      for (FieldElem x : oracle::all_elements(F))
        if (ok && oracle::naive_eval(f, F.mul(c, x)) != F.mul(c, oracle::naive_eval(f, x))) ok = false;
    if (ok) best = s;
  }
  return best;
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

TEST(QPoly, EvalMatchesPowering) {
  for (auto ctx : {build_field(2, 1, 4), build_field(3, 1, 3), build_field(2, 2, 2)}) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
      QPoly f = oracle::random_poly(ctx, rng);
      for (FieldElem x : oracle::all_elements(*ctx)) ASSERT_EQ(eval(f, x), oracle::naive_eval(f, x));
    }
  }
}

TEST(QPoly, ComposeIsFunctionComposition) {
  auto ctx = build_field(3, 1, 3);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    QPoly f = oracle::random_poly(ctx, rng), g = oracle::random_poly(ctx, rng);
    QPoly fg = compose(f, g);
    for (FieldElem x : oracle::all_elements(*ctx)) ASSERT_EQ(eval(fg, x), eval(f, eval(g, x)));
  }
}

TEST(QPoly, AdjointBilinearIdentityExhaustive) {
  auto ctx = build_field(2, 1, 4);
  const FieldCtx& F = *ctx;
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    QPoly f = oracle::random_poly(ctx, rng);
    QPoly fh = adjoint(f);
    EXPECT_EQ(adjoint(fh), f);
    for (FieldElem x : oracle::all_elements(F))
      for (FieldElem y : oracle::all_elements(F))
        ASSERT_EQ(F.trace(F.mul(x, eval(f, y))), F.trace(F.mul(y, eval(fh, x))));
  }
  EXPECT_EQ(adjoint(QPoly::trace(ctx)), QPoly::trace(ctx));
  EXPECT_EQ(adjoint(QPoly::monomial(ctx, F.one(), 1)), QPoly::monomial(ctx, F.one(), 3));
}

TEST(QPoly, InverseAndKernel) {
  auto ctx = build_field(3, 1, 3);
  const FieldCtx& F = *ctx;
  std::mt19937_64 rng(9);
  int invertible = 0;
  for (int t = 0; t < 60; ++t) {
    QPoly f = oracle::random_poly(ctx, rng);
    std::uint32_t roots = 0;
    for (FieldElem x : oracle::all_elements(F)) roots += eval(f, x).is_zero();
    std::uint32_t expected = 1;
    for (std::uint32_t i = 0; i < kernel_dim(f); ++i) expected *= F.q();
    EXPECT_EQ(roots, expected);
    EXPECT_EQ(is_invertible(f), roots == 1);
    if (is_invertible(f)) {
      ++invertible;
      QPoly g = inverse(f);
      EXPECT_EQ(compose(f, g), QPoly::identity(ctx));
      EXPECT_EQ(compose(g, f), QPoly::identity(ctx));
    } else {
      EXPECT_EQ(kind_of([&] { inverse(f); }), ErrorKind::NotInvertible);
    }
  }
  EXPECT_GT(invertible, 0);
  EXPECT_EQ(kernel_dim(QPoly::trace(ctx)), 2u);
}

TEST(QPoly, InterpolateRecoversMap) {
  auto ctx = build_field(2, 1, 5);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    QPoly f = oracle::random_poly(ctx, rng);
    std::vector<FieldElem> out;
    for (FieldElem b : ctx->fq_basis()) out.push_back(eval(f, b));
    EXPECT_EQ(interpolate(ctx, ctx->fq_basis(), out), f);
  }
}

TEST(QPoly, FieldOfLinearity) {
  auto ctx = build_field(2, 1, 4);
  const FieldCtx& F = *ctx;
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    std::vector<FieldElem> c(4);
    for (std::uint32_t i = 0; i < 4; ++i)
      c[i] = (t % 3 == 0 && i % 2 == 1) ? F.zero() : oracle::random_elem(F, rng);
    QPoly f(ctx, c);
    if (f.is_zero()) continue;
    EXPECT_EQ(max_field_of_linearity(f), linearity_by_brute_force(f)) << f.to_string();
    EXPECT_EQ(is_strictly_linear(f), linearity_by_brute_force(f) == 1);
  }
  EXPECT_EQ(max_field_of_linearity(QPoly::monomial(ctx, F.generator(), 0)), 4u);
  EXPECT_EQ(kind_of([&] { max_field_of_linearity(QPoly(ctx)); }), ErrorKind::ZeroPolynomial);
}

TEST(QPoly, ScaleConjugate) {
  auto ctx = build_field(3, 1, 3);
  const FieldCtx& F = *ctx;
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    QPoly f = oracle::random_poly(ctx, rng);
    FieldElem l = oracle::random_nonzero(F, rng);
    QPoly g = scale_conjugate(f, l);
    for (FieldElem x : oracle::all_elements(F)) ASSERT_EQ(eval(g, x), F.div(eval(f, F.mul(l, x)), l));
  }
  EXPECT_EQ(kind_of([&] { scale_conjugate(QPoly::trace(ctx), F.zero()); }), ErrorKind::ZeroScalar);
}

TEST(QPoly, ParseAndErrors) {
  auto ctx = build_field(2, 1, 3);
  QPoly f = QPoly::parse(ctx, "0,1,g^3");
  EXPECT_EQ(f.to_string(), "0,g^0,g^3");
  EXPECT_EQ(QPoly::parse(ctx, f.to_string()), f);
  EXPECT_EQ(f.weight(), 2u);
  EXPECT_EQ(kind_of([&] { QPoly::parse(ctx, "0,1"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] { QPoly::parse(ctx, "0,x,1"); }), ErrorKind::ParseError);
  auto other = build_field(2, 1, 3);
  EXPECT_EQ(kind_of([&] { compose(f, QPoly::trace(other)); }), ErrorKind::FieldMismatch);
  EXPECT_TRUE(QPoly::monomial(ctx, ctx->one(), 1) < QPoly::trace(ctx));
}
