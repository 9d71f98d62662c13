#include "qlinset/linset.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "qlinset/parallel.hpp"

namespace qlinset {

namespace {

void invalid(const std::string& what) { throw Error(ErrorKind::InvalidParameters, what); }

void require_strict(const QPoly& f) {
  if (!is_strictly_linear(f))
    throw Error(ErrorKind::NotStrictlyLinear, f.to_string() + " is not strictly F_q-linear");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

LinearSet::LinearSet(PointSet points, std::optional<QPoly> source)
    : points_(std::move(points)), source_(std::move(source)) {}

LinearSet linear_set(const QPoly& f) { return LinearSet(image_of_ratio(f).points(), f); }

bool is_max_scattered(const LinearSet& l) {
  if (!l.source()) throw Error(ErrorKind::NoSource, "linear set was not built from a q-polynomial");
  return l.size() == direction_bounds(l.field()).upper;
}

Family parse_family(std::string_view name) {
  if (name == "f_s") return Family::Fs;
  if (name == "g_sδ" || name == "g_sd") return Family::Gsd;
  if (name == "h_sδ" || name == "h_sd") return Family::Hsd;
  if (name == "k_b") return Family::Kb;
  throw Error(ErrorKind::InvalidParameters, "unknown family '" + std::string(name) + "'");
}

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::Fs:
      return "f_s";
    case Family::Gsd:
      return "g_sd";
    case Family::Hsd:
      return "h_sd";
    case Family::Kb:
      break;
  }
  return "k_b";
}

QPoly family(const FieldPtr& ctx, Family fam, std::uint32_t s, FieldElem param) {
  const FieldCtx& F = *ctx;
  const std::uint32_t n = F.n();
  std::vector<FieldElem> c(n, FieldElem::zero());
  switch (fam) {
    case Family::Fs:
      if (s == 0 || s >= n || std::gcd(s, n) != 1) invalid("f_s needs gcd(s, n) = 1 with 0 < s < n");
      c[s] = F.one();
      break;
    case Family::Gsd: {
      if (n < 4) invalid("g_sd needs n >= 4");
      if (s == 0 || s >= n || std::gcd(s, n) != 1) invalid("g_sd needs gcd(s, n) = 1 with 0 < s < n");
      FieldElem nd = F.norm(param);
      if (nd.is_zero() || nd == F.one()) invalid("g_sd needs N(delta) not in {0, 1}");
      c[s] = param;
      c[n - s] = F.one();
      break;
    }
    case Family::Hsd: {
      if (n != 6 && n != 8) invalid("h_sd needs n in {6, 8}");
      if (s == 0 || s >= n / 2 || std::gcd(s, n / 2) != 1) invalid("h_sd needs gcd(s, n/2) = 1 with 0 < s < n/2");
      FieldElem nd = F.norm_rel(param, n / 2);
      if (nd.is_zero() || nd == F.one()) invalid("h_sd needs N_{q^n/q^{n/2}}(delta) not in {0, 1}");
      c[s] = param;
      c[s + n / 2] = F.one();
      break;
    }
    case Family::Kb: {
      if (n != 6) invalid("k_b needs n = 6");
      if (F.add(F.mul(param, param), param) != F.one()) invalid("k_b needs b^2 + b = 1");
      std::uint32_t r = F.q() % 5;
      if (r != 0 && r != 1 && r != 4) invalid("k_b needs q = 0, 1 or -1 (mod 5)");
      c[1] = F.one();
      c[3] = F.one();
      c[5] = param;
      break;
    }
  }
  return QPoly(ctx, std::move(c));
}

std::optional<SemilinearMap> is_pseudoregulus_type(const QPoly& f, unsigned threads) {
  require_strict(f);
  return find_set_equivalence(image_of_ratio(f), image_of_ratio(QPoly::monomial(f.field_ptr(), f.field().one(), 1)),
                              threads);
}

std::optional<SemilinearMap> pgammal_equivalent(const QPoly& f, const QPoly& g, unsigned threads) {
  require_same_field(f, g);
  require_strict(f);
  require_strict(g);
  return find_set_equivalence(image_of_ratio(f), image_of_ratio(g), threads);
}

bool NewExampleReport::passed() const noexcept {
  return max_scattered && std::none_of(mus.begin(), mus.end(), [](const MuVerdict& v) { return v.witness.has_value(); }) &&
         std::all_of(controls.begin(), controls.end(), [](const ControlResult& c) { return c.verified; });
}

nlohmann::json NewExampleReport::to_json(const FieldCtx& ctx, bool with_timing) const {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : mus) {
    nlohmann::json row{{"mu", ctx.format(v.mu)},
                       {"norm", ctx.format(v.norm)},
                       {"equivalent", v.witness.has_value()},
                       {"witness", v.witness ? nlohmann::json(v.witness->to_string()) : nlohmann::json()}};
    if (with_timing) row["seconds"] = v.seconds;
    verdicts.push_back(row);
  }
  nlohmann::json ctrl = nlohmann::json::array();
  for (const auto& c : controls) {
    nlohmann::json row{{"name", c.name},
                       {"source", c.source},
                       {"target", c.target},
                       {"witness", c.witness ? nlohmann::json(c.witness->to_string()) : nlohmann::json()},
                       {"verified", c.verified}};
    if (with_timing) row["seconds"] = c.seconds;
    ctrl.push_back(row);
  }
  return {{"field", ctx.spec_string()},
          {"delta", ctx.format(delta)},
          {"delta_norm", ctx.format(delta_norm)},
          {"polynomial", polynomial},
          {"points", points},
          {"max_scattered", max_scattered},
          {"mu_mode", all_mu ? "all" : "sampled"},
          {"mu_tested", mus.size()},
          {"verdicts", verdicts},
          {"controls", ctrl},
          {"passed", passed()}};
}

void check_new_example_preconditions(const FieldCtx& F, FieldElem delta) {
  auto pre = [](const std::string& what) { throw Error(ErrorKind::PreconditionViolated, what); };
  if (F.n() != 5) pre("n = " + std::to_string(F.n()) + ", expected 5");
  if (F.q() <= 2) pre("q > 2 is required");
  const FieldElem nd = F.norm(delta);
  if (nd.is_zero()) pre("N(delta) = 0");
  if (nd == F.one()) pre("N(delta) = 1");
  if (F.pow(nd, 5) == F.one()) pre("N(delta)^5 = 1");
}

NewExampleReport verify_new_example(const FieldPtr& ctx, FieldElem delta, const NewExampleOptions& options) {
  const FieldCtx& F = *ctx;
  check_new_example_preconditions(F, delta);
  const FieldElem nd = F.norm(delta);

  NewExampleReport report;
  report.delta = delta;
  report.delta_norm = nd;
  report.all_mu = options.all_mu;
  const QPoly g2 = family(ctx, Family::Gsd, 2, delta);
  report.polynomial = g2.to_string();
  const LinearSet l = linear_set(g2);
  report.points = l.size();
  report.max_scattered = is_max_scattered(l);

  std::vector<FieldElem> admissible;
  for (std::uint32_t k = 0; k < F.order(); ++k) {
    FieldElem mu = FieldElem::from_index(k);
    if (F.norm(mu) != F.one()) admissible.push_back(mu);
  }
  std::mt19937_64 rng(options.seed);
  std::vector<FieldElem> mus;
  if (options.all_mu) {
    mus = admissible;
  } else {
    // The smallest μ of each norm class, then seeded random picks up to eight.
    for (FieldElem mu : admissible)
      if (std::none_of(mus.begin(), mus.end(), [&](FieldElem m) { return F.norm(m) == F.norm(mu); }))
        mus.push_back(mu);
    std::vector<FieldElem> rest;
    for (FieldElem mu : admissible)
      if (std::find(mus.begin(), mus.end(), mu) == mus.end()) rest.push_back(mu);
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t i = 0; mus.size() < 8 && i < rest.size(); ++i) mus.push_back(rest[i]);
  }

  report.mus.resize(mus.size());
  const ImageSet img2 = image_of_ratio(g2);
  parallel_for(mus.size(), options.threads, [&](std::size_t i) {
    auto start = std::chrono::steady_clock::now();
    QPoly g1 = family(ctx, Family::Gsd, 1, mus[i]);
    report.mus[i] = {mus[i], F.norm(mus[i]), find_set_equivalence(img2, image_of_ratio(g1), 1), 0};
    report.mus[i].seconds = seconds_since(start);
  });

  auto random_nonzero = [&] {
    return FieldElem::from_index(std::uniform_int_distribution<std::uint32_t>(0, F.order() - 1)(rng));
  };
  auto random_elem = [&] {
    std::uint32_t key = std::uniform_int_distribution<std::uint32_t>(0, F.order())(rng);
    return key == 0 ? FieldElem::zero() : FieldElem::from_index(key - 1);
  };
  auto random_admissible = [&](const QPoly& f) {
    while (true) {
      FieldElem a = random_elem(), b = random_elem(), c = random_elem(), d = random_elem();
      if (F.sub(F.mul(a, d), F.mul(b, c)).is_zero()) continue;
      SemilinearMap phi(ctx, a, b, c, d, std::uniform_int_distribution<std::uint32_t>(0, F.degree() - 1)(rng));
      if (is_admissible(f, phi)) return phi;
    }
  };
  auto control = [&](std::string name, const QPoly& source, const QPoly& target) {
    auto start = std::chrono::steady_clock::now();
    ControlResult c{std::move(name), source.to_string(), target.to_string(), std::nullopt, false, 0};
    c.witness = pgammal_equivalent(source, target, options.threads);
    c.verified = c.witness && moebius_image(image_of_ratio(source), *c.witness) == image_of_ratio(target).points();
    c.seconds = seconds_since(start);
    report.controls.push_back(std::move(c));
  };

  const QPoly g1 = family(ctx, Family::Gsd, 1, mus.front());
  control("scalings of g_1mu", scale_conjugate(g1, random_nonzero()), scale_conjugate(g1, random_nonzero()));
  control("g_1mu transported", g1, transform_poly(g1, random_admissible(g1)));
  control("g_2delta transported", g2, transform_poly(g2, random_admissible(g2)));
  return report;
}

}  // namespace qlinset
