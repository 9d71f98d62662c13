#include "qlinset/criteria.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "poly_walk.hpp"
#include "qlinset/imageset.hpp"
#include "qlinset/parallel.hpp"

namespace qlinset {

namespace {

void require_n5(const QPoly& f) {
  if (f.n() != 5) throw Error(ErrorKind::WrongDegree, "n = " + std::to_string(f.n()) + ", expected 5");
}

void require_strict(const QPoly& f, const char* which) {
  if (!is_strictly_linear(f))
    throw Error(ErrorKind::NotStrictlyLinear, std::string(which) + " = " + f.to_string() + " is not strictly F_q-linear");
}

// A monomial in a_1..a_4 written as "i:ks ..." where the factor i:ks stands
// for a_i raised to sum_{k in ks} q^k.
FieldElem eval_term(const FieldCtx& F, const QPoly& f, std::string_view term) {
  FieldElem acc = F.one();
  std::istringstream in{std::string(term)};
  std::string factor;
  while (in >> factor) {
    FieldElem base = f[static_cast<std::size_t>(factor[0] - '0')];
    for (std::size_t c = 2; c < factor.size(); ++c)
      acc = F.mul(acc, F.frob_q(base, static_cast<std::uint32_t>(factor[c] - '0')));
  }
  return acc;
}

FieldElem eval_sum(const FieldCtx& F, const QPoly& f, std::initializer_list<std::string_view> terms) {
  FieldElem acc = F.zero();
  for (auto t : terms) acc = F.add(acc, eval_term(F, f, t));
  return acc;
}

FieldElem e_side(const FieldCtx& F, const QPoly& f, int k) {
  switch (k) {
    case 0:
      return f[0];
    case 1:
      return eval_sum(F, f, {"1:0 4:1"});
    case 2:
      return eval_sum(F, f, {"2:0 3:2"});
    case 3:
      return eval_sum(F, f, {"1:01 3:2", "2:0 4:12"});
    case 4:
      return eval_sum(F, f, {"1:0 2:13", "3:03 4:1"});
    case 5:
      return eval_sum(F, f,
                      {"1:012 2:3", "2:01 3:23", "1:1 3:023", "1:2 2:0 3:3 4:1", "2:013 4:2", "1:1 2:3 3:0 4:2",
                       "1:0 2:1 3:2 4:3", "1:02 4:13", "3:0 4:123"});
    default: {
      FieldElem norms = F.zero();
      for (std::size_t i = 1; i <= 4; ++i) norms = F.add(norms, F.norm(f[i]));
      FieldElem inner = eval_sum(F, f,
                                 {"1:1 2:234 3:0", "1:13 2:4 3:02", "1:12 2:34 4:0", "1:124 3:3 4:0", "2:1 3:234 4:0",
                                  "1:2 3:34 4:01", "2:13 3:4 4:02", "1:2 2:4 4:013"});
      return F.add(norms, F.trace(inner));
    }
  }
}

FieldElem ratio(const FieldCtx& F, FieldElem num, FieldElem den) { return F.div(num, den); }

FieldElem qpow_sum(const FieldCtx& F, FieldElem x, std::initializer_list<std::uint32_t> ks) {
  FieldElem acc = F.one();
  for (auto k : ks) acc = F.mul(acc, F.frob_q(x, k));
  return acc;
}

bool trace5_ratios(const FieldCtx& F, const QPoly& f) {
  return F.frob_q(ratio(F, f[1], f[2]), 1) == ratio(F, f[2], f[3]) &&
         F.frob_q(ratio(F, f[2], f[3]), 1) == ratio(F, f[3], f[4]);
}

bool cond2_ratios(const FieldCtx& F, const QPoly& f) {
  return F.frob_q(ratio(F, f[4], f[1]), 2) == ratio(F, f[1], f[3]) &&
         F.frob_q(ratio(F, f[1], f[2]), 2) == ratio(F, f[3], f[4]);
}

SemilinearMap matmul(const FieldPtr& ctx, std::array<FieldElem, 4> x, std::array<FieldElem, 4> y) {
  const FieldCtx& F = *ctx;
  return SemilinearMap(ctx, F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])), F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
                       F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])), F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3])), 0);
}

// Index of the single nonzero coefficient, if f is a monomial.
std::optional<std::uint32_t> monomial_degree(const QPoly& f) {
  if (f.weight() != 1) return std::nullopt;
  for (std::uint32_t i = 0; i < f.n(); ++i)
    if (!f[i].is_zero()) return i;
  return std::nullopt;
}

bool transforms_to(const QPoly& f, const SemilinearMap& phi, const QPoly& target) {
  if (!is_admissible(f, phi)) return false;
  return transform_poly(f, phi) == target;
}

}  // namespace

bool ERelationReport::all() const noexcept {
  return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

ERelationReport check_e_relations(const QPoly& f, const QPoly& g) {
  require_n5(f);
  require_same_field(f, g);
  const FieldCtx& F = f.field();
  ERelationReport r;
  for (int k = 0; k < 7; ++k) {
    r.lhs[k] = e_side(F, f, k);
    r.rhs[k] = e_side(F, g, k);
    r.holds[k] = r.lhs[k] == r.rhs[k];
  }
  return r;
}

bool power_sums_all_equal(const QPoly& f, const QPoly& g) {
  require_same_field(f, g);
  const FieldCtx& F = f.field();
  auto mf = ratio_multiset(f);
  auto mg = ratio_multiset(g);
  auto sum = [&](const auto& ms, std::uint64_t d) {
    FieldElem acc = F.zero();
    for (const auto& [v, c] : ms) acc = F.add(acc, F.mul(F.from_int(c), F.pow(v, d)));
    return acc;
  };
  for (std::uint64_t d = 1; d <= F.order(); ++d)
    if (sum(mf, d) != sum(mg, d)) return false;
  return true;
}

std::optional<Trace5Witness> trace5_test(const QPoly& f) {
  require_n5(f);
  const FieldCtx& F = f.field();
  for (std::size_t i = 1; i <= 4; ++i)
    if (f[i].is_zero()) return std::nullopt;
  if (!trace5_ratios(F, f) || F.norm(f[1]) != F.norm(f[2])) return std::nullopt;

  // λ^{q-1} = a_2/a_1; norm-1 elements are exactly the (q-1)-th powers.
  FieldElem alpha2 = F.div(f[2], f[1]);
  FieldElem lambda = FieldElem::from_index(alpha2.index() / (F.q() - 1));
  FieldElem l4 = F.div(lambda, F.frob_q(lambda, 4));  // λ^{1-q^4}
  SemilinearMap phi(f.field_ptr(), F.one(), F.zero(), F.sub(F.one(), F.div(F.mul(l4, f[0]), f[1])),
                    F.div(l4, f[1]), 0);
  QPoly expected = scale_conjugate(QPoly::trace(f.field_ptr()), F.frob_q(lambda, 4));
  if (!transforms_to(f, phi, expected))
    throw Error(ErrorKind::Inconsistent, "trace witness " + phi.to_string() + " does not reproduce the trace");
  return Trace5Witness{phi, lambda};
}

std::string_view pseudoalg_kind_name(PseudoalgResult::Kind kind) noexcept {
  switch (kind) {
    case PseudoalgResult::Kind::Cond1Witness:
      return "Cond1Witness";
    case PseudoalgResult::Kind::Cond2Witness:
      return "Cond2Witness";
    case PseudoalgResult::Kind::TraceFallback:
      return "TraceFallback";
    case PseudoalgResult::Kind::None:
      break;
  }
  return "None";
}

PseudoalgResult pseudoalg_test(const QPoly& f) {
  require_n5(f);
  const FieldCtx& F = f.field();
  for (std::size_t i = 1; i <= 4; ++i)
    if (f[i].is_zero())
      throw Error(ErrorKind::PreconditionViolated, "a_" + std::to_string(i) + " = 0 in " + f.to_string());
  const FieldPtr& ctx = f.field_ptr();
  const ImageSet pseudo = image_of_ratio(QPoly::monomial(ctx, F.one(), 1));

  auto verified = [&](PseudoalgResult::Kind kind, const SemilinearMap& phi) {
    if (!is_admissible(f, phi) || !(image_of_ratio(transform_poly(f, phi)) == pseudo))
      throw Error(ErrorKind::Inconsistent, std::string(pseudoalg_kind_name(kind)) + " matrix " + phi.to_string() +
                                               " does not reach the image of x^{q-1}");
    return PseudoalgResult{kind, phi};
  };

  if (trace5_ratios(F, f)) {
    if (F.norm(f[1]) == F.norm(f[2])) return {PseudoalgResult::Kind::TraceFallback, std::nullopt};
    FieldElem a2 = F.div(f[2], f[1]);
    FieldElem a0 = F.div(f[0], f[1]);
    SemilinearMap phi = matmul(ctx, {F.one(), F.frob_q(a2, 4), qpow_sum(F, a2, {0, 1, 2, 3}), F.one()},
                               {F.one(), F.zero(), F.neg(a0), F.inv(f[1])});
    return verified(PseudoalgResult::Kind::Cond1Witness, phi);
  }
  if (cond2_ratios(F, f)) {
    if (F.norm(f[1]) == F.norm(f[3])) return {PseudoalgResult::Kind::TraceFallback, std::nullopt};
    FieldElem a1 = F.div(f[1], f[3]);
    FieldElem a0 = F.div(f[0], f[3]);
    SemilinearMap phi = matmul(ctx, {qpow_sum(F, a1, {0, 1, 3, 4}), F.one(), F.one(), F.frob_q(a1, 2)},
                               {F.one(), F.zero(), F.neg(a0), F.inv(f[3])});
    return verified(PseudoalgResult::Kind::Cond2Witness, phi);
  }
  return {};
}

MonomialMatch monomial_classify(const QPoly& f, const QPoly& g) {
  require_same_field(f, g);
  const FieldCtx& F = f.field();
  auto k = monomial_degree(f);
  if (!k || *k == 0) throw Error(ErrorKind::NotMonomial, f.to_string() + " is not α x^{q^k} with 1 <= k <= n-1");
  if (!images_equal(f, g)) throw Error(ErrorKind::ImagesDiffer, "images of f and g differ");
  const std::uint32_t n = f.n();
  const std::uint32_t t = std::gcd(*k, n);
  auto s = monomial_degree(g);
  if (!s) throw Error(ErrorKind::Inconsistent, "same image as a monomial but g = " + g.to_string() + " is not one");
  FieldElem alpha = f[*k];
  FieldElem beta = g[*s];
  if (std::gcd(*s, n) != t)
    throw Error(ErrorKind::Inconsistent, "gcd(" + std::to_string(*s) + ", n) != gcd(" + std::to_string(*k) + ", n)");
  if (F.norm_rel(alpha, t) != F.norm_rel(beta, t))
    throw Error(ErrorKind::Inconsistent, "relative norms of " + F.format(alpha) + " and " + F.format(beta) + " differ");
  return {beta, *s};
}

std::string_view outcome_name(const ClassifyOutcome& outcome) noexcept {
  static constexpr std::string_view names[] = {"MonomialPair", "ScalarConjugate", "AdjointScalarConjugate",
                                               "ImagesDiffer", "Inconsistent"};
  return names[outcome.index()];
}

nlohmann::json to_json(const ClassifyOutcome& outcome, const FieldCtx& ctx) {
  nlohmann::json j{{"outcome", outcome_name(outcome)}, {"field", ctx.spec_string()}};
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, MonomialPair>) {
          j["phi"] = o.phi.to_string();
          j["i"] = o.i;
          j["j"] = o.j;
          j["alpha"] = ctx.format(o.alpha);
          j["beta"] = ctx.format(o.beta);
        } else if constexpr (std::is_same_v<T, ScalarConjugate> || std::is_same_v<T, AdjointScalarConjugate>) {
          j["lambda"] = ctx.format(o.lambda);
        } else if constexpr (std::is_same_v<T, Inconsistent>) {
          j["diagnostic"] = o.diagnostic;
        }
      },
      outcome);
  return j;
}

nlohmann::json to_json(const ERelationReport& report, const FieldCtx& ctx) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < 7; ++k)
    rows.push_back({{"eq", "e" + std::to_string(k)},
                    {"holds", report.holds[k]},
                    {"lhs", ctx.format(report.lhs[k])},
                    {"rhs", ctx.format(report.rhs[k])}});
  return {{"all_hold", report.all()}, {"relations", rows}};
}

std::optional<ClassifyOutcome> scan_scalar_conjugates(const QPoly& f, const QPoly& g) {
  require_same_field(f, g);
  const FieldCtx& F = f.field();
  const std::uint32_t n = f.n();
  auto matches = [&](const QPoly& base, FieldElem lambda) {
    for (std::uint32_t i = 0; i < n; ++i) {
      FieldElem c = base[i].is_zero() ? base[i] : F.mul(base[i], F.div(F.frob_q(lambda, i), lambda));
      if (c != g[i]) return false;
    }
    return true;
  };
  for (std::uint32_t k = 0; k < F.order(); ++k)
    if (matches(f, FieldElem::from_index(k))) return ScalarConjugate{FieldElem::from_index(k)};
  QPoly fh = adjoint(f);
  for (std::uint32_t k = 0; k < F.order(); ++k)
    if (matches(fh, FieldElem::from_index(k))) return AdjointScalarConjugate{FieldElem::from_index(k)};
  return std::nullopt;
}

ClassifyOutcome classify_n_le_4(const QPoly& f, const QPoly& g, unsigned) {
  require_same_field(f, g);
  if (f.n() < 2 || f.n() > 4) throw Error(ErrorKind::WrongDegree, "n = " + std::to_string(f.n()) + ", expected 2..4");
  require_strict(f, "f");
  require_strict(g, "g");
  if (!images_equal(f, g)) throw Error(ErrorKind::ImagesDiffer, "images of f and g differ");
  if (auto hit = scan_scalar_conjugates(f, g)) return *hit;
  return Inconsistent{"no λ with g = f(λx)/λ or g = f̂(λx)/λ"};
}

ClassifyOutcome classify_n5(const QPoly& f, const QPoly& g, unsigned threads) {
  require_n5(f);
  require_same_field(f, g);
  require_strict(f, "f");
  require_strict(g, "g");
  if (!images_equal(f, g)) throw Error(ErrorKind::ImagesDiffer, "images of f and g differ");
  if (auto hit = scan_scalar_conjugates(f, g)) return *hit;

  const FieldCtx& F = f.field();
  const FieldPtr& ctx = f.field_ptr();
  std::vector<std::uint32_t> nonzero;
  for (std::uint32_t i = 1; i <= 4; ++i)
    if (!f[i].is_zero()) nonzero.push_back(i);

  std::optional<SemilinearMap> phi;
  std::string route;
  try {
    if (nonzero.size() == 4) {
      PseudoalgResult pr = pseudoalg_test(f);
      route = std::string(pseudoalg_kind_name(pr.kind));
      if (pr.kind == PseudoalgResult::Kind::TraceFallback)
        return Inconsistent{"f is equivalent to the trace, yet no λ relates g to f"};
      phi = pr.phi;
    } else if (nonzero.size() == 1) {
      FieldElem ai = f[nonzero[0]];
      phi = SemilinearMap(ctx, F.one(), F.zero(), F.neg(F.div(f[0], ai)), F.inv(ai), 0);
      route = "monomial normalisation";
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconsistent) throw;
    return Inconsistent{e.what()};
  }
  if (!phi) {
    ImageSet pseudo = image_of_ratio(QPoly::monomial(ctx, F.one(), 1));
    phi = find_set_equivalence(image_of_ratio(f), pseudo, threads);
    if (!phi) {
      if (route == "None")
        return Inconsistent{"neither λ-conjugate nor of pseudoregulus type (pseudoregulus test: None)"};
      return Inconsistent{"neither λ-conjugate nor of pseudoregulus type (set search found no map)"};
    }
    if (route == "None")
      return Inconsistent{"pseudoregulus test returned None but the set search found " + phi->to_string()};
    route = "set search";
  }

  QPoly fp = transform_poly(f, *phi);
  QPoly gp = transform_poly(g, *phi);
  auto i = monomial_degree(fp);
  if (!i || *i == 0) return Inconsistent{route + " map sends f to the non-monomial " + fp.to_string()};
  try {
    MonomialMatch m = monomial_classify(fp, gp);
    if (m.s == 0) return Inconsistent{route + " map sends g to a scalar map"};
    return MonomialPair{*phi, *i, m.s, fp[*i], m.beta};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconsistent) throw;
    return Inconsistent{route + ": " + e.what()};
  }
}

bool verify_outcome(const QPoly& f, const QPoly& g, const ClassifyOutcome& outcome) {
  require_same_field(f, g);
  const FieldCtx& F = f.field();
  return std::visit(
      [&](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ScalarConjugate>) {
          return scale_conjugate(f, o.lambda) == g;
        } else if constexpr (std::is_same_v<T, AdjointScalarConjugate>) {
          return scale_conjugate(adjoint(f), o.lambda) == g;
        } else if constexpr (std::is_same_v<T, MonomialPair>) {
          return images_equal(f, g) && F.norm(o.alpha) == F.norm(o.beta) &&
                 transforms_to(f, o.phi, QPoly::monomial(f.field_ptr(), o.alpha, o.i)) &&
                 transforms_to(g, o.phi, QPoly::monomial(f.field_ptr(), o.beta, o.j));
        } else if constexpr (std::is_same_v<T, ImagesDiffer>) {
          return !images_equal(f, g);
        } else {
          return false;
        }
      },
      outcome);
}

std::vector<QPoly> exhaustive_same_image(const QPoly& f, unsigned threads) {
  const FieldCtx& F = f.field();
  const std::uint32_t n = f.n();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    total *= F.size();
    if (total > (std::uint64_t{1} << 26))
      throw Error(ErrorKind::TooLargeForExhaustive, "(q^n)^n exceeds 2^26 for " + F.spec_string());
  }
  require_strict(f, "f");
  if (n < 2) return {};

  const ImageSet target = image_of_ratio(f);
  const PointSet& tset = target.points();
  const std::size_t want = target.size();
  std::vector<std::vector<QPoly>> parts(F.size());
  parallel_for(F.size(), threads, [&](std::size_t first_key) {
    detail::PolyWalker walker(F);
    std::vector<std::uint32_t> stamp(F.size(), 0);
    std::uint32_t epoch = 0;
    const auto& last_pow = walker.xpow(n - 1);
    std::vector<FieldElem> full(n);
    walker.walk_first(static_cast<std::uint32_t>(first_key), [&](const std::vector<FieldElem>& prefix,
                                                                 const std::vector<FieldElem>& partial) {
      full = prefix;
      for (std::uint32_t key = 0; key < F.size(); ++key) {
        FieldElem a = detail::elem_from_key(key);
        ++epoch;
        std::size_t distinct = 0;
        bool inside = true;
        for (std::uint32_t k = 0; k < F.order(); ++k) {
          FieldElem v = a.is_zero() ? partial[k]
                                    : F.add(partial[k], FieldElem::from_index(F.add_mod(a.index(), last_pow[k])));
          FieldElem r = v.is_zero() ? v : FieldElem::from_index(F.add_mod(v.index(), F.order() - k));
          if (!tset.contains(r)) {
            inside = false;
            break;
          }
          if (stamp[r.key()] != epoch) {
            stamp[r.key()] = epoch;
            ++distinct;
          } else if (distinct + (F.order() - k - 1) < want) {
            inside = false;
            break;
          }
        }
        if (!inside || distinct != want) continue;
        full[n - 1] = a;
        if (detail::tuple_strictly_linear(full)) parts[first_key].emplace_back(f.field_ptr(), full);
      }
    });
  });
  std::vector<QPoly> out;
  for (auto& part : parts)
    for (auto& g : part) out.push_back(std::move(g));
  return out;
}

}  // namespace qlinset
