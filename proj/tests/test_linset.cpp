#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "qlinset/linset.hpp"

using namespace qlinset;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

// Points <(x, f(x))> normalised to (1 : f(x)/x), computed from scratch.
std::set<FieldElem> points_by_hand(const QPoly& f) {
  const FieldCtx& F = f.field();
  std::set<FieldElem> out;
  for (FieldElem x : oracle::all_elements(F))
    if (!x.is_zero()) out.insert(F.div(oracle::naive_eval(f, x), x));
  return out;
}

FieldElem element_with_norm(const FieldCtx& F, FieldElem target) {
  for (std::uint32_t k = 0; k < F.order(); ++k)
    if (F.norm(FieldElem::from_index(k)) == target) return FieldElem::from_index(k);
  return F.zero();
}

}  // namespace

TEST(LinearSet, PointsMatchDefinition) {
  for (auto ctx : {build_field(2, 1, 4), build_field(3, 1, 3), build_field(2, 1, 5)}) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
      QPoly f = oracle::random_strict_poly(ctx, rng);
      LinearSet l = linear_set(f);
      auto e = l.points().elements();
      EXPECT_EQ(std::set<FieldElem>(e.begin(), e.end()), points_by_hand(f));
      EXPECT_EQ(l.size(), image_of_ratio(f).size());
      EXPECT_FALSE(l.contains(ProjPoint::inf()));
      EXPECT_LE(l.size(), direction_bounds(*ctx).upper);
      EXPECT_EQ(linear_set(adjoint(f)), l);
      EXPECT_EQ(linear_set(scale_conjugate(f, oracle::random_nonzero(*ctx, rng))), l);
    }
  }
}

TEST(LinearSet, KnownSizes) {
  auto k3 = build_field(3, 1, 5);
  EXPECT_EQ(linear_set(QPoly::monomial(k3, k3->gpow(4), 0)).size(), 1u);
  EXPECT_TRUE(linear_set(QPoly::monomial(k3, k3->gpow(4), 0)).contains(k3->gpow(4)));
  LinearSet lq = linear_set(QPoly::monomial(k3, k3->one(), 1));
  EXPECT_EQ(lq.size(), 121u);
  EXPECT_TRUE(is_max_scattered(lq));
  auto k2 = build_field(2, 1, 5);
  LinearSet lt = linear_set(QPoly::trace(k2));
  EXPECT_EQ(lt.size(), 17u);
  EXPECT_FALSE(is_max_scattered(lt));
  EXPECT_EQ(kind_of([&] { is_max_scattered(LinearSet(lt.points())); }), ErrorKind::NoSource);
}

TEST(Families, Construction) {
  auto k3 = build_field(3, 1, 5);
  const FieldCtx& F = *k3;
  FieldElem d = element_with_norm(F, F.from_int(2));
  QPoly g = family(k3, Family::Gsd, 2, d);
  EXPECT_EQ(g, QPoly(k3, {F.zero(), F.zero(), d, F.one(), F.zero()}));
  EXPECT_TRUE(is_max_scattered(linear_set(g)));
  QPoly f2 = family(k3, Family::Fs, 2);
  EXPECT_EQ(f2, QPoly::monomial(k3, F.one(), 2));
  EXPECT_EQ(parse_family("g_sδ"), Family::Gsd);
  EXPECT_EQ(family_name(parse_family("k_b")), "k_b");
  EXPECT_EQ(kind_of([] { parse_family("z"); }), ErrorKind::InvalidParameters);
  for (auto ctx : {build_field(2, 1, 5), k3}) {
    for (std::uint32_t s = 1; s < 5; ++s) {
      LinearSet l = linear_set(family(ctx, Family::Fs, s));
      EXPECT_EQ(l, linear_set(family(ctx, Family::Fs, 1)));
      EXPECT_TRUE(is_max_scattered(l));
      EXPECT_TRUE(is_pseudoregulus_type(family(ctx, Family::Fs, s)).has_value());
    }
  }
}

TEST(Families, ParameterValidation) {
  auto k2 = build_field(2, 1, 5);
  for (FieldElem d : oracle::all_elements(*k2))
    EXPECT_EQ(kind_of([&] { family(k2, Family::Gsd, 1, d); }), ErrorKind::InvalidParameters);
  auto k3 = build_field(3, 1, 5);
  EXPECT_EQ(kind_of([&] { family(k3, Family::Fs, 5); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([&] { family(k3, Family::Gsd, 2, k3->one()); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([&] { family(k3, Family::Hsd, 1, k3->generator()); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([&] { family(k3, Family::Kb, 0, k3->one()); }), ErrorKind::InvalidParameters);
  try {
    family(k3, Family::Gsd, 2, k3->one());
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("N(delta)"), std::string::npos);
  }

  auto k6 = build_field(2, 1, 6);
  const FieldCtx& F6 = *k6;
  FieldElem d6 = F6.zero();
  for (FieldElem x : oracle::all_elements(F6)) {
    FieldElem nr = F6.norm_rel(x, 3);
    if (!nr.is_zero() && nr != F6.one()) {
      d6 = x;
      break;
    }
  }
  QPoly h = family(k6, Family::Hsd, 1, d6);
  EXPECT_EQ(h[1], d6);
  EXPECT_EQ(h[4], F6.one());
  EXPECT_EQ(kind_of([&] { family(k6, Family::Hsd, 3, d6); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(linear_set(h).size(), image_of_ratio(h).size());

  auto k4 = build_field(2, 2, 6);
  const FieldCtx& F4 = *k4;
  std::vector<FieldElem> roots;
  for (FieldElem b : oracle::all_elements(F4))
    if (F4.add(F4.mul(b, b), b) == F4.one()) roots.push_back(b);
  ASSERT_EQ(roots.size(), 2u);
  for (FieldElem b : roots) {
    QPoly k = family(k4, Family::Kb, 0, b);
    EXPECT_EQ(k[5], b);
    EXPECT_EQ(linear_set(k).size(), image_of_ratio(k).size());
  }
  EXPECT_EQ(kind_of([&] { family(k4, Family::Kb, 0, F4.generator()); }), ErrorKind::InvalidParameters);
  auto k7 = build_field(7, 1, 6);
  FieldElem b7 = k7->zero();
  for (FieldElem b : oracle::all_elements(*k7))
    if (k7->add(k7->mul(b, b), b) == k7->one()) b7 = b;
  EXPECT_EQ(kind_of([&] { family(k7, Family::Kb, 0, b7); }), ErrorKind::InvalidParameters);
}

TEST(Equivalence, PseudoregulusAndPGammaL) {
  auto k2 = build_field(2, 1, 5);
  EXPECT_TRUE(is_pseudoregulus_type(QPoly::monomial(k2, k2->one(), 2)).has_value());
  EXPECT_FALSE(is_pseudoregulus_type(QPoly::trace(k2)).has_value());
  EXPECT_EQ(kind_of([&] { is_pseudoregulus_type(QPoly::monomial(k2, k2->one(), 0)); }),
            ErrorKind::NotStrictlyLinear);

  auto k3 = build_field(3, 1, 5);
  const FieldCtx& F = *k3;
  FieldElem mu = element_with_norm(F, F.from_int(2));
  QPoly g1 = family(k3, Family::Gsd, 1, mu);
  EXPECT_FALSE(is_pseudoregulus_type(g1).has_value());
  auto id = pgammal_equivalent(g1, scale_conjugate(g1, F.gpow(11)));
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(moebius_image(image_of_ratio(g1), *id), image_of_ratio(g1).points());
  EXPECT_TRUE(pgammal_equivalent(g1, adjoint(g1)).has_value());

  FieldElem delta = element_with_norm(F, F.from_int(2));
  QPoly g2 = family(k3, Family::Gsd, 2, delta);
  EXPECT_FALSE(pgammal_equivalent(g2, g1).has_value());
}

TEST(Equivalence, TransportedPolynomials) {
  auto ctx = build_field(3, 1, 3);
  const FieldCtx& F = *ctx;
  std::mt19937_64 rng(14);
  int checked = 0;
  while (checked < 15) {
    QPoly f = oracle::random_strict_poly(ctx, rng);
    FieldElem a = oracle::random_elem(F, rng), b = oracle::random_elem(F, rng);
    FieldElem c = oracle::random_elem(F, rng), d = oracle::random_elem(F, rng);
    if (F.sub(F.mul(a, d), F.mul(b, c)).is_zero()) continue;
    SemilinearMap m(ctx, a, b, c, d, checked % F.degree());
    if (!is_admissible(f, m)) continue;
    QPoly g = transform_poly(f, m);
    if (!is_strictly_linear(g)) continue;
    ++checked;
    auto w = pgammal_equivalent(f, g);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(moebius_image(image_of_ratio(f), *w), image_of_ratio(g).points());
  }
}

TEST(NewExample, Preconditions) {
  auto k3 = build_field(3, 1, 5);
  const FieldCtx& F = *k3;
  auto pre_kind = [](const FieldCtx& ctx, FieldElem d) {
    return kind_of([&] { check_new_example_preconditions(ctx, d); });
  };
  EXPECT_EQ(pre_kind(F, element_with_norm(F, F.one())), ErrorKind::PreconditionViolated);
  EXPECT_EQ(pre_kind(F, F.zero()), ErrorKind::PreconditionViolated);
  EXPECT_EQ(pre_kind(F, element_with_norm(F, F.from_int(2))), ErrorKind::InvalidArgument);

  auto k2 = build_field(2, 1, 5);
  EXPECT_EQ(pre_kind(*k2, k2->generator()), ErrorKind::PreconditionViolated);
  EXPECT_EQ(pre_kind(*build_field(3, 1, 4), F.one()), ErrorKind::PreconditionViolated);

  // F_4^* has order 3, so a generator t satisfies t^5 = t^2 != 1.
  auto k4 = build_field(2, 2, 5);
  const FieldCtx& F4 = *k4;
  FieldElem t = F4.zero();
  for (FieldElem x : F4.subfield_elements(1))
    if (!x.is_zero() && x != F4.one()) t = x;
  ASSERT_FALSE(t.is_zero());
  EXPECT_NE(oracle::pow(F4, t, 5), F4.one());
  EXPECT_EQ(pre_kind(F4, element_with_norm(F4, t)), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { verify_new_example(k3, element_with_norm(F, F.one())); }),
            ErrorKind::PreconditionViolated);
}

TEST(NewExample, SampledRun) {
  auto k3 = build_field(3, 1, 5);
  const FieldCtx& F = *k3;
  FieldElem delta = element_with_norm(F, F.from_int(2));
  NewExampleReport r = verify_new_example(k3, delta, {false, 3, 0});
  EXPECT_TRUE(r.max_scattered);
  EXPECT_EQ(r.points, 121u);
  EXPECT_EQ(r.mus.size(), 8u);
  for (const auto& v : r.mus) {
    EXPECT_FALSE(v.witness.has_value());
    EXPECT_NE(F.norm(v.mu), F.one());
  }
  EXPECT_EQ(r.controls.size(), 3u);
  for (const auto& c : r.controls) EXPECT_TRUE(c.verified) << c.name;
  EXPECT_TRUE(r.passed());
  auto j = r.to_json(F, false);
  EXPECT_EQ(j["mu_tested"], 8);
  EXPECT_FALSE(j["verdicts"][0].contains("seconds"));
  EXPECT_EQ(j, verify_new_example(k3, delta, {false, 3, 1}).to_json(F, false));
}
