#include "qlinset/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "poly_walk.hpp"
#include "qlinset/criteria.hpp"
#include "qlinset/imageset.hpp"
#include "qlinset/linset.hpp"
#include "qlinset/moebius.hpp"

namespace qlinset {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxListedFalsifiers = 20;

class Rng {
 public:
  Rng(const FieldCtx& field, std::uint64_t seed) : F_(field), gen_(seed) {}

  std::uint32_t below(std::uint32_t n) { return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(gen_); }
  FieldElem elem() { return detail::elem_from_key(below(F_.size())); }
  FieldElem nonzero() { return FieldElem::from_index(below(F_.order())); }
  std::mt19937_64& engine() { return gen_; }

  /// Random nonzero q-polynomial; with probability 1/4 the support is
  /// restricted to multiples of a random divisor of n.
  QPoly poly(const FieldPtr& ctx, bool allow_subfield = false) {
    const std::uint32_t n = F_.n();
    std::uint32_t step = 1;
    if (allow_subfield && below(4) == 0) {
      auto ds = divisors(n);
      step = ds[below(static_cast<std::uint32_t>(ds.size()))];
    }
    while (true) {
      std::vector<FieldElem> c(n, FieldElem::zero());
      for (std::uint32_t i = 0; i < n; i += step) c[i] = elem();
      QPoly f(ctx, std::move(c));
      if (!f.is_zero()) return f;
    }
  }

  QPoly strict_poly(const FieldPtr& ctx) {
    while (true) {
      QPoly f = poly(ctx);
      if (is_strictly_linear(f)) return f;
    }
  }

  SemilinearMap map(const FieldPtr& ctx, bool semilinear = true) {
    while (true) {
      FieldElem a = elem(), b = elem(), c = elem(), d = elem();
      if (F_.sub(F_.mul(a, d), F_.mul(b, c)).is_zero()) continue;
      return SemilinearMap(ctx, a, b, c, d, semilinear ? below(F_.degree()) : 0);
    }
  }

  SemilinearMap admissible_map(const QPoly& f, bool semilinear = true) {
    while (true) {
      SemilinearMap phi = map(f.field_ptr(), semilinear);
      if (is_admissible(f, phi)) return phi;
    }
  }

 private:
  const FieldCtx& F_;
  std::mt19937_64 gen_;
};

struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;

  json to_json() const { return {{"checked", checked}, {"failed", failed}}; }
};

class Context {
 public:
  Context(SuiteReport& report, const RunConfig& config)
      : report_(report), config_(config), F(*config.field), ctx(config.field), rng(*config.field, config.seed) {}

  void check(Tally& tally, bool ok, const std::function<std::string()>& describe) {
    ++tally.checked;
    if (ok) return;
    ++tally.failed;
    falsifier(describe());
  }
  void falsifier(const std::string& what) {
    ++falsifier_count_;
    if (report_.falsifiers.size() < kMaxListedFalsifiers) report_.falsifiers.push_back(what);
  }
  std::uint64_t falsifier_count() const noexcept { return falsifier_count_; }
  std::uint64_t samples(std::uint64_t fallback) const { return config_.samples.value_or(fallback); }
  bool exhaustive(bool fallback) const { return config_.exhaustive.value_or(fallback); }
  const RunConfig& config() const noexcept { return config_; }
  json& checks() { return report_.checks; }
  SuiteReport& report() { return report_; }

  void require_n(std::uint32_t lo, std::uint32_t hi) const {
    if (F.n() < lo || F.n() > hi)
      throw Error(ErrorKind::WrongDegree, "suite needs " + std::to_string(lo) + " <= n <= " + std::to_string(hi) +
                                              ", got n = " + std::to_string(F.n()));
  }

 private:
  SuiteReport& report_;
  const RunConfig& config_;
  std::uint64_t falsifier_count_ = 0;

 public:
  const FieldCtx& F;
  const FieldPtr& ctx;
  Rng rng;
};

std::uint64_t qn_power(const FieldCtx& F) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < F.n(); ++i) total *= F.size();
  return total;
}

// --- bounds / survey ---------------------------------------------------------

void suite_bounds(Context& c) {
  const bool exhaustive = c.exhaustive(qn_power(c.F) <= (std::uint64_t{1} << 20));
  SurveyMode mode = exhaustive ? SurveyMode::exhaustive() : SurveyMode::sample(c.samples(10000), c.config().seed);
  SurveyResult survey = survey_image_sizes(c.ctx, mode, c.config().threads);
  DirectionBounds window = direction_bounds(c.F);
  Tally tally;
  json sizes = json::array();
  for (const auto& [size, bin] : survey.bins) {
    sizes.push_back(size);
    for (std::uint64_t i = 0; i < bin.count; ++i)
      c.check(tally, size >= window.lower && size <= window.upper, [&] {
        return "image size " + std::to_string(size) + " outside the window, e.g. " +
               QPoly(c.ctx, bin.representative).to_string();
      });
  }
  c.checks() = {{"mode", exhaustive ? "exhaustive" : "sampled"},
                {"polynomials", survey.polynomials},
                {"window", {window.lower, window.upper}},
                {"sizes", sizes},
                {"in_window", tally.to_json()}};
}

void suite_survey_n4(Context& c) {
  c.require_n(4, 4);
  const bool exhaustive = c.exhaustive(true);
  SurveyMode mode = exhaustive ? SurveyMode::exhaustive() : SurveyMode::sample(c.samples(10000), c.config().seed);
  SurveyResult survey = survey_image_sizes(c.ctx, mode, c.config().threads);
  const std::uint64_t q = c.F.q();
  const std::set<std::uint64_t> expected{q * q * q + 1, q * q * q + q * q - q + 1, q * q * q + q * q + 1,
                                         q * q * q + q * q + q + 1};
  std::set<std::uint64_t> seen;
  for (const auto& [size, bin] : survey.bins) seen.insert(size);
  for (auto s : seen)
    if (!expected.count(s)) c.falsifier("unexpected image size " + std::to_string(s));
  if (exhaustive)
    for (auto s : expected)
      if (!seen.count(s)) c.falsifier("size " + std::to_string(s) + " never occurs");
  json bins = json::array();
  for (const auto& [size, bin] : survey.bins) {
    std::vector<std::string> rep;
    for (auto e : bin.representative) rep.push_back(c.F.format(e));
    bins.push_back({{"size", size}, {"count", bin.count}, {"representative", rep}});
  }
  c.checks() = {{"mode", exhaustive ? "exhaustive" : "sampled"},
                {"polynomials", survey.polynomials},
                {"expected_sizes", expected},
                {"sizes", seen},
                {"bins", bins}};
  c.report().csv = survey.to_csv(c.F);
}

// --- properties --------------------------------------------------------------

std::string pair_text(const QPoly& f, const QPoly& g) { return "f = " + f.to_string() + ", g = " + g.to_string(); }

void property_adjoint(Context& c, json& out, std::uint64_t count) {
  Tally involution, bilinear, images;
  for (std::uint64_t t = 0; t < count; ++t) {
    QPoly f = c.rng.poly(c.ctx, true);
    QPoly fh = adjoint(f);
    c.check(involution, adjoint(fh) == f, [&] { return "adjoint is not an involution on " + f.to_string(); });
    FieldElem x = c.rng.elem(), y = c.rng.elem();
    c.check(bilinear, c.F.trace(c.F.mul(x, eval(f, y))) == c.F.trace(c.F.mul(y, eval(fh, x))),
            [&] { return "Tr(x f(y)) != Tr(y f^(x)) for f = " + f.to_string(); });
    QPoly fl = scale_conjugate(f, c.rng.nonzero());
    ImageSet im = image_of_ratio(f);
    c.check(images, im == image_of_ratio(fh) && im == image_of_ratio(fl),
            [&] { return "Im f, Im f^, Im f_lambda differ for f = " + f.to_string(); });
  }
  out["adjoint_involution"] = involution.to_json();
  out["bilinear_identity"] = bilinear.to_json();
  out["image_adjoint_scaling"] = images.to_json();
}

void property_transport(Context& c, json& out, std::uint64_t count) {
  Tally consistency, action, linearity;
  for (std::uint64_t t = 0; t < count; ++t) {
    QPoly f = c.rng.poly(c.ctx, true);
    SemilinearMap phi = c.rng.admissible_map(f);
    QPoly fp = transform_poly(f, phi);
    c.check(consistency,
            image_of_ratio(fp).points() == moebius_image(image_of_ratio(f), phi) && graph_maps_to(f, phi, fp),
            [&] { return "transport of " + f.to_string() + " by " + phi.to_string() + " is inconsistent"; });

    SemilinearMap p1 = c.rng.map(c.ctx), p2 = c.rng.map(c.ctx);
    SemilinearMap p21 = compose(p2, p1);
    FieldElem x = c.rng.elem(), y = c.rng.elem();
    auto [x1, y1] = p1.apply(x, y);
    ProjValue z = c.rng.below(c.F.size() + 1) == 0 ? ProjValue::inf() : ProjValue(c.rng.elem());
    bool ok = p21.apply(x, y) == p2.apply(x1, y1) && p1.inverse().apply(x1, y1) == std::pair{x, y} &&
              p21.apply(z) == p2.apply(p1.apply(z)) && p1.inverse().apply(p1.apply(z)) == z;
    c.check(action, ok, [&] { return "action fails for " + p2.to_string() + " after " + p1.to_string(); });

    QPoly g = t % 2 ? scale_conjugate(adjoint(f), c.rng.nonzero()) : scale_conjugate(f, c.rng.nonzero());
    c.check(linearity, images_equal(f, g) && max_field_of_linearity(f) == max_field_of_linearity(g),
            [&] { return "field of linearity differs: " + pair_text(f, g); });
    QPoly gp = transform_poly(g, phi);
    bool same_linearity = fp.is_zero() || gp.is_zero() ? fp.is_zero() && gp.is_zero()
                                                       : max_field_of_linearity(fp) == max_field_of_linearity(gp);
    c.check(linearity, images_equal(fp, gp) && same_linearity,
            [&] { return "field of linearity differs after transport: " + pair_text(fp, gp); });
  }
  out["moebius_transform"] = consistency.to_json();
  out["group_action"] = action.to_json();
  out["field_of_linearity"] = linearity.to_json();
}

void suite_adjoint(Context& c) { property_adjoint(c, c.checks(), c.samples(1000)); }

void suite_properties(Context& c) {
  property_adjoint(c, c.checks(), c.samples(1000));
  property_transport(c, c.checks(), c.samples(1000));
}

// --- n = 5 criteria ------------------------------------------------------------

QPoly random_full_support(Context& c) {
  std::vector<FieldElem> coeffs{c.rng.elem(), c.rng.nonzero(), c.rng.nonzero(), c.rng.nonzero(), c.rng.nonzero()};
  return QPoly(c.ctx, std::move(coeffs));
}

struct HarnessEntry {
  std::string name;
  QPoly f;
  std::vector<QPoly> same;
};

std::vector<HarnessEntry> n5_harness(Context& c) {
  std::vector<HarnessEntry> out;
  out.push_back({"Tr", QPoly::trace(c.ctx), {}});
  out.push_back({"x^q", QPoly::monomial(c.ctx, c.F.one(), 1), {}});
  out.push_back({"random", random_full_support(c), {}});
  for (auto& e : out) e.same = exhaustive_same_image(e.f, c.config().threads);
  return out;
}

void check_erelations(Context& c, Tally& eq, Tally& ps, const QPoly& f, const QPoly& g) {
  ERelationReport r = check_e_relations(f, g);
  c.check(eq, r.all(), [&] {
    std::string bad;
    for (std::size_t k = 0; k < 7; ++k)
      if (!r.holds[k]) bad += " e" + std::to_string(k);
    return "relations" + bad + " fail for " + pair_text(f, g);
  });
  c.check(ps, power_sums_all_equal(f, g), [&] { return "power sums differ for " + pair_text(f, g); });
}

void suite_erelations(Context& c) {
  c.require_n(5, 5);
  Tally eq, ps;
  const std::uint64_t count = c.samples(1000);
  for (std::uint64_t t = 0; t < count; ++t) {
    QPoly f = c.rng.poly(c.ctx);
    check_erelations(c, eq, ps, f, scale_conjugate(f, c.rng.nonzero()));
    check_erelations(c, eq, ps, f, scale_conjugate(adjoint(f), c.rng.nonzero()));
  }
  c.checks()["constructed_pairs"] = {{"e_relations", eq.to_json()}, {"power_sums", ps.to_json()}};
  if (c.exhaustive(c.F.q() == 2)) {
    Tally heq, hps;
    for (const auto& e : n5_harness(c))
      for (const auto& g : e.same) check_erelations(c, heq, hps, e.f, g);
    c.checks()["exhaustive_harness"] = {{"e_relations", heq.to_json()}, {"power_sums", hps.to_json()}};
  }
}

FieldElem qpow_product(const FieldCtx& F, FieldElem x, std::initializer_list<std::uint32_t> ks) {
  FieldElem acc = F.one();
  for (auto k : ks) acc = F.mul(acc, F.frob_q(x, k));
  return acc;
}

// a_0 + a_1 (x^q + α x^{q^2} + α^{q+1} x^{q^3} + α^{1+q+q^2} x^{q^4}).
QPoly cond1_poly(Context& c, FieldElem a0, FieldElem a1, FieldElem alpha) {
  const FieldCtx& F = c.F;
  return QPoly(c.ctx, {a0, a1, F.mul(a1, alpha), F.mul(a1, qpow_product(F, alpha, {0, 1})),
                       F.mul(a1, qpow_product(F, alpha, {0, 1, 2}))});
}

// a_3 (α x^q + α^{1+q+q^3} x^{q^2} + x^{q^3} + α^{1+q^3} x^{q^4}) + a_0 x.
QPoly cond2_poly(Context& c, FieldElem a0, FieldElem a3, FieldElem alpha) {
  const FieldCtx& F = c.F;
  return QPoly(c.ctx, {a0, F.mul(a3, alpha), F.mul(a3, qpow_product(F, alpha, {0, 1, 3})), a3,
                       F.mul(a3, qpow_product(F, alpha, {0, 3}))});
}

FieldElem random_with_norm(Context& c, bool norm_one) {
  while (true) {
    FieldElem x = c.rng.nonzero();
    if ((c.F.norm(x) == c.F.one()) == norm_one) return x;
  }
}

void suite_trace5(Context& c) {
  c.require_n(5, 5);
  const std::uint64_t count = c.samples(100);
  const QPoly tr = QPoly::trace(c.ctx);
  const ImageSet tr_image = image_of_ratio(tr);
  const ImageSet pseudo = image_of_ratio(QPoly::monomial(c.ctx, c.F.one(), 1));
  Tally round_trip, cond1;
  for (std::uint64_t t = 0; t < count; ++t) {
    SemilinearMap phi = c.rng.admissible_map(tr, false);
    QPoly f = transform_poly(tr, phi);
    auto w = trace5_test(f);
    c.check(round_trip, w && image_of_ratio(transform_poly(f, w->phi)) == tr_image,
            [&] { return "trace test rejects " + f.to_string() + " built with " + phi.to_string(); });
  }
  for (std::uint64_t t = 0; t < count; ++t) {
    if (c.F.q() == 2) break;
    QPoly f = cond1_poly(c, c.rng.elem(), c.rng.nonzero(), random_with_norm(c, false));
    PseudoalgResult r = pseudoalg_test(f);
    bool ok = !trace5_test(f) && r.kind == PseudoalgResult::Kind::Cond1Witness &&
              image_of_ratio(transform_poly(f, *r.phi)) == pseudo;
    c.check(cond1, ok, [&] { return "condition 1 not confirmed for " + f.to_string(); });
  }
  c.checks() = {{"trace_round_trip", round_trip.to_json()}, {"norm_failure_to_pseudoregulus", cond1.to_json()}};
}

void suite_pseudoalg(Context& c) {
  c.require_n(5, 5);
  const std::uint64_t count = c.samples(100);
  const ImageSet pseudo = image_of_ratio(QPoly::monomial(c.ctx, c.F.one(), 1));
  const ImageSet tr_image = image_of_ratio(QPoly::trace(c.ctx));
  Tally cond1, cond2, fallback, none;
  using Kind = PseudoalgResult::Kind;
  auto witness_ok = [&](const QPoly& f, const PseudoalgResult& r, Kind want) {
    return r.kind == want && r.phi && image_of_ratio(transform_poly(f, *r.phi)) == pseudo;
  };
  for (std::uint64_t t = 0; t < count; ++t) {
    if (c.F.q() > 2) {
      QPoly f1 = cond1_poly(c, c.rng.elem(), c.rng.nonzero(), random_with_norm(c, false));
      c.check(cond1, witness_ok(f1, pseudoalg_test(f1), Kind::Cond1Witness),
              [&] { return "condition 1 witness fails for " + f1.to_string(); });
      QPoly f2 = cond2_poly(c, c.rng.elem(), c.rng.nonzero(), random_with_norm(c, false));
      PseudoalgResult r2 = pseudoalg_test(f2);
      // Both ratio systems can hold at once; condition 1 is tested first.
      bool ok2 = witness_ok(f2, r2, Kind::Cond2Witness) || witness_ok(f2, r2, Kind::Cond1Witness);
      c.check(cond2, ok2, [&] { return "condition 2 witness fails for " + f2.to_string(); });
    }
    QPoly f3 = t % 2 ? cond1_poly(c, c.rng.elem(), c.rng.nonzero(), random_with_norm(c, true))
                     : cond2_poly(c, c.rng.elem(), c.rng.nonzero(), random_with_norm(c, true));
    PseudoalgResult r3 = pseudoalg_test(f3);
    auto w = trace5_test(f3);
    c.check(fallback,
            r3.kind == Kind::TraceFallback && w && image_of_ratio(transform_poly(f3, w->phi)) == tr_image,
            [&] { return "equal norms do not fall back to the trace for " + f3.to_string(); });
    QPoly f4 = random_full_support(c);
    PseudoalgResult r4 = pseudoalg_test(f4);
    if (r4.kind != Kind::None) continue;
    ImageSet im4 = image_of_ratio(f4);
    c.check(none, !(im4 == pseudo), [&] { return "None for " + f4.to_string() + " yet its image is pseudoregulus"; });
  }
  c.checks() = {{"cond1", cond1.to_json()},
                {"cond2", cond2.to_json()},
                {"trace_fallback", fallback.to_json()},
                {"none", none.to_json()}};
}

// --- classification harnesses ---------------------------------------------------

void record_outcome(Context& c, Tally& tally, std::map<std::string, std::uint64_t>& names, const QPoly& f,
                    const QPoly& g, const ClassifyOutcome& o) {
  names[std::string(outcome_name(o))]++;
  c.check(tally, verify_outcome(f, g, o), [&] {
    return std::string(outcome_name(o)) + " for " + pair_text(f, g) + ": " + to_json(o, c.F).dump();
  });
}

void suite_thm_n4(Context& c) {
  c.require_n(2, 4);
  const std::uint64_t want = c.samples(20);
  if (qn_power(c.F) > (std::uint64_t{1} << 26))
    throw Error(ErrorKind::TooLargeForExhaustive, "(q^n)^n exceeds 2^26 for " + c.F.spec_string());
  // Every strictly linear f, shuffled by the seed.
  std::vector<QPoly> pool;
  std::vector<FieldElem> coeffs(c.F.n());
  for (std::uint64_t code = 0; code < qn_power(c.F); ++code) {
    std::uint64_t v = code;
    for (auto& e : coeffs) {
      e = detail::elem_from_key(static_cast<std::uint32_t>(v % c.F.size()));
      v /= c.F.size();
    }
    if (detail::tuple_strictly_linear(coeffs)) pool.emplace_back(c.ctx, coeffs);
  }
  std::shuffle(pool.begin(), pool.end(), c.rng.engine());
  if (pool.size() > want) pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(want), pool.end());

  Tally witnesses;
  std::map<std::string, std::uint64_t> names;
  std::uint64_t pairs = 0;
  for (const auto& f : pool)
    for (const auto& g : exhaustive_same_image(f, c.config().threads)) {
      ++pairs;
      record_outcome(c, witnesses, names, f, g, classify_n_le_4(f, g, c.config().threads));
    }
  if (c.F.n() == 2)
    for (const auto& [name, n] : names)
      if (name != "ScalarConjugate") c.falsifier(std::to_string(n) + " outcomes of type " + name + " at n = 2");
  c.checks() = {{"sampled_f", pool.size()}, {"pairs", pairs}, {"outcomes", names}, {"verified", witnesses.to_json()}};
}

void suite_thm_main_q2(Context& c) {
  c.require_n(5, 5);
  Tally witnesses, eq, ps;
  json per_f = json::array();
  for (const auto& e : n5_harness(c)) {
    std::map<std::string, std::uint64_t> names;
    for (const auto& g : e.same) {
      record_outcome(c, witnesses, names, e.f, g, classify_n5(e.f, g, c.config().threads));
      check_erelations(c, eq, ps, e.f, g);
    }
    per_f.push_back({{"name", e.name}, {"f", e.f.to_string()}, {"same_image", e.same.size()}, {"outcomes", names}});
    if (e.name == "Tr" && e.same.size() != c.F.order())
      c.falsifier("Tr has " + std::to_string(e.same.size()) + " same-image polynomials, expected " +
                  std::to_string(c.F.order()));
    if (e.name == "x^q") {
      std::vector<QPoly> expected;
      for (std::uint32_t s = 1; s < 5; ++s)
        for (std::uint32_t k = 0; k < c.F.order(); ++k)
          if (c.F.norm(FieldElem::from_index(k)) == c.F.one())
            expected.push_back(QPoly::monomial(c.ctx, FieldElem::from_index(k), s));
      std::sort(expected.begin(), expected.end());
      if (expected != e.same)
        c.falsifier("same-image set of x^q is not {beta x^{q^s} : N(beta) = 1} (" + std::to_string(e.same.size()) +
                    " found, " + std::to_string(expected.size()) + " expected)");
      per_f.back()["expected"] = expected.size();
    }
  }
  c.checks() = {{"harness", per_f},
                {"verified", witnesses.to_json()},
                {"e_relations", eq.to_json()},
                {"power_sums", ps.to_json()}};
}

void suite_new_linset(Context& c) {
  c.require_n(5, 5);
  const FieldCtx& F = c.F;
  std::optional<FieldElem> delta;
  for (std::uint32_t k = 0; k < F.order() && !delta; ++k) {
    FieldElem d = FieldElem::from_index(k);
    FieldElem nd = F.norm(d);
    if (nd != F.one() && F.pow(nd, 5) != F.one()) delta = d;
  }
  if (!delta) throw Error(ErrorKind::PreconditionViolated, "no delta with N(delta)^5 != 1 in " + F.spec_string());
  NewExampleReport r = verify_new_example(c.ctx, *delta, {c.config().all_mu, c.config().seed, c.config().threads});
  c.checks() = r.to_json(F, true);
  if (!r.max_scattered) c.falsifier("L_{g_2delta} has " + std::to_string(r.points) + " points");
  for (const auto& v : r.mus)
    if (v.witness) c.falsifier("g_2delta equivalent to g_1mu for mu = " + F.format(v.mu) + " via " + v.witness->to_string());
  for (const auto& ctl : r.controls)
    if (!ctl.verified) c.falsifier("positive control '" + ctl.name + "' found no verified witness");
}

const std::map<std::string, void (*)(Context&)>& registry() {
  static const std::map<std::string, void (*)(Context&)> table{
      {"bounds", suite_bounds},     {"adjoint", suite_adjoint},         {"erelations", suite_erelations},
      {"trace5", suite_trace5},     {"pseudoalg", suite_pseudoalg},     {"thm-n4", suite_thm_n4},
      {"thm-main-q2", suite_thm_main_q2}, {"new-linset", suite_new_linset}, {"survey-n4", suite_survey_n4},
      {"properties", suite_properties}};
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"bounds",      "adjoint",    "erelations", "trace5",     "pseudoalg",
                                              "thm-n4",      "thm-main-q2", "new-linset", "survey-n4", "properties"};
  return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& config) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
  SuiteReport report;
  report.suite = name;
  auto start = std::chrono::steady_clock::now();
  Context c(report, config);
  try {
    it->second(c);
    report.passed = c.falsifier_count() == 0;
  } catch (const Error& e) {
    report.guard_violation = true;
    report.passed = false;
    report.checks["error"] = e.what();
  }
  report.checks["falsifier_count"] = c.falsifier_count();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json report_json(const std::string& command, const RunConfig& config, const SuiteReport& report) {
  json cfg{{"seed", config.seed}, {"all_mu", config.all_mu}};
  cfg["exhaustive"] = config.exhaustive ? json(*config.exhaustive) : json();
  cfg["samples"] = config.samples ? json(*config.samples) : json();
  return {{"schema", "qlinset-report/1"},
          {"command", command},
          {"suite", report.suite},
          {"field", config.field->spec_string()},
          {"config", cfg},
          {"passed", report.passed},
          {"guard_violation", report.guard_violation},
          {"falsifiers", report.falsifiers},
          {"checks", report.checks},
          {"timing", {{"seconds", report.seconds}}}};
}

}  // namespace qlinset
