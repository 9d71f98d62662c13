// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qlinset/criteria.hpp"
#include "qlinset/suites.hpp"

using namespace qlinset;
using nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

SuiteReport suite(const std::string& name, const std::string& field, std::optional<std::uint64_t> samples = {},
                  bool all_mu = false) {
  unsigned p = 0, h = 0, n = 0;
  std::sscanf(field.c_str(), "%u,%u,%u", &p, &h, &n);
  RunConfig c;
  c.field = build_field(p, h, n);
  c.samples = samples;
  c.all_mu = all_mu;
  return run_suite(name, c);
}

bool clean(const json& check) { return check.value("failed", 1) == 0 && check.value("checked", 0) > 0; }

void expect_suite(Outcome& o, const SuiteReport& r, const std::string& label) {
  o.require(r.passed, label + " did not pass");
  o.require(!r.guard_violation, label + " hit a guard");
  o.require(r.checks.value("falsifier_count", 1) == 0, label + " reported falsifiers");
}

json thm_main_checks;

Outcome criterion1() {
  Outcome o;
  SuiteReport a = suite("bounds", "2,1,4");
  expect_suite(o, a, "bounds(2,1,4)");
  o.require(a.checks["mode"] == "exhaustive", "(2,4) run was not exhaustive");
  o.require(a.checks["window"] == json::array({9, 15}), "window at (2,4) is not [9,15]");
  o.require(clean(a.checks["in_window"]), "sizes outside [9,15]");
  SuiteReport b = suite("bounds", "3,1,5", 10000);
  expect_suite(o, b, "bounds(3,1,5)");
  o.require(b.checks["window"] == json::array({82, 121}), "window at (3,5) is not [82,121]");
  o.require(b.checks["in_window"].value("checked", 0) == 10000, "fewer than 10^4 samples at (3,5)");
  o.require(clean(b.checks["in_window"]), "sizes outside [82,121]");
  return o;
}

Outcome criterion2() {
  Outcome o;
  SuiteReport r = suite("survey-n4", "2,1,4");
  expect_suite(o, r, "survey-n4");
  o.require(r.checks["mode"] == "exhaustive", "survey was not exhaustive");
  o.require(r.checks["sizes"] == json::array({9, 11, 13, 15}), "size spectrum " + r.checks["sizes"].dump());
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const char* field : {"2,1,2", "2,1,3", "2,1,4"}) {
    SuiteReport r = suite("thm-n4", field);
    const std::string label = std::string("thm-n4(") + field + ")";
    expect_suite(o, r, label);
    o.require(clean(r.checks["verified"]), label + " witnesses failed re-verification");
    o.require(!r.checks["outcomes"].contains("Inconsistent"), label + " returned Inconsistent");
    if (std::string(field) == "2,1,2") {
      o.require(r.checks["outcomes"].size() == 1 && r.checks["outcomes"].contains("ScalarConjugate"),
                "n=2 outcomes not all ScalarConjugate");
    } else {
      o.require(r.checks.value("sampled_f", 0) == 20, label + " did not sample 20 f");
    }
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  SuiteReport r = suite("thm-main-q2", "2,1,5");
  expect_suite(o, r, "thm-main-q2");
  thm_main_checks = r.checks;
  o.require(clean(r.checks["verified"]), "witnesses failed re-verification");
  for (const auto& h : r.checks["harness"]) {
    o.require(!h["outcomes"].contains("Inconsistent"), h["name"].get<std::string>() + " has Inconsistent outcomes");
    if (h["name"] == "random") {
      std::string f = h["f"];
      o.require(std::count(f.begin(), f.end(), ',') == 4, "random f malformed");
    }
  }

  // Independent reconstruction of the two named equal-image sets.
  auto ctx = build_field(2, 1, 5);
  const FieldCtx& F = *ctx;
  QPoly tr = QPoly::trace(ctx);
  std::set<QPoly> want_tr;
  for (std::uint32_t k = 0; k < F.order(); ++k) want_tr.insert(scale_conjugate(tr, FieldElem::from_index(k)));
  auto got_tr = exhaustive_same_image(tr);
  o.require(got_tr.size() == 31 && std::set<QPoly>(got_tr.begin(), got_tr.end()) == want_tr,
            "Tr equal-image set is not the 31 Tr(lx)/l");
  std::set<QPoly> want_xq;
  for (std::uint32_t s = 1; s <= 4; ++s)
    for (std::uint32_t k = 0; k < F.order(); ++k) {
      FieldElem beta = FieldElem::from_index(k);
      if (F.norm(beta) == F.one()) want_xq.insert(QPoly::monomial(ctx, beta, s));
    }
  auto got_xq = exhaustive_same_image(QPoly::monomial(ctx, F.one(), 1));
  o.require(std::set<QPoly>(got_xq.begin(), got_xq.end()) == want_xq,
            "x^q equal-image set differs from {b x^(q^s) : N(b) = 1}");
  return o;
}

Outcome criterion5() {
  Outcome o;
  SuiteReport t = suite("trace5", "3,1,5", 100);
  expect_suite(o, t, "trace5");
  o.require(t.checks["trace_round_trip"].value("checked", 0) == 100 && clean(t.checks["trace_round_trip"]),
            "trace round trip");
  o.require(t.checks["norm_failure_to_pseudoregulus"].value("checked", 0) == 100 &&
                clean(t.checks["norm_failure_to_pseudoregulus"]),
            "norm-failing constructions");
  return o;
}

Outcome criterion6() {
  Outcome o;
  SuiteReport r = suite("erelations", "3,1,5", 1000);
  expect_suite(o, r, "erelations(3,1,5)");
  const json& c = r.checks["constructed_pairs"];
  o.require(c["e_relations"].value("checked", 0) >= 1000 && clean(c["e_relations"]), "e0-e6 on constructed pairs");
  o.require(c["power_sums"].value("checked", 0) >= 1000 && clean(c["power_sums"]), "power sums on constructed pairs");
  o.require(!thm_main_checks.is_null() && clean(thm_main_checks["e_relations"]),
            "e0-e6 over the q=2 harness of criterion 4");
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (bool all_mu : {false, true}) {
    SuiteReport r = suite("new-linset", "3,1,5", {}, all_mu);
    const std::string label = all_mu ? "all-mu" : "sampled";
    expect_suite(o, r, label);
    const json& c = r.checks;
    o.require(c.value("points", 0) == 121 && c.value("max_scattered", false), label + ": not 121 points");
    o.require(c["delta_norm"] == "g^121", label + ": N(delta) != 2");
    std::size_t tested = c.value("mu_tested", 0);
    o.require(all_mu ? tested == 121 : tested == 8, label + ": mu count " + std::to_string(tested));
    for (const auto& v : c["verdicts"]) o.require(!v["equivalent"].get<bool>(), label + ": mu " + v["mu"].dump());
    o.require(c["controls"].size() == 3, label + ": controls missing");
    for (const auto& ctl : c["controls"]) o.require(ctl["verified"].get<bool>(), label + ": " + ctl["name"].dump());
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const char* field : {"2,1,5", "3,1,5", "2,2,5"}) {
    SuiteReport r = suite("properties", field);
    const std::string label = std::string("properties(") + field + ")";
    expect_suite(o, r, label);
    for (const char* prop : {"adjoint_involution", "bilinear_identity", "image_adjoint_scaling", "moebius_transform",
                             "group_action", "field_of_linearity"})
      o.require(r.checks[prop].value("checked", 0) >= 1000 && clean(r.checks[prop]), label + " " + prop);
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "direction bounds", 60, criterion1},
      {2, "size spectrum at (2,4)", 60, criterion2},
      {3, "n <= 4 completeness", 300, criterion3},
      {4, "n = 5 completeness at q = 2", 900, criterion4},
      {5, "trace round trip at q = 3", 120, criterion5},
      {6, "power sums and e0-e6", 300, criterion6},
      {7, "new example at q = 3", 1800, criterion7},
      {8, "property suites", 120, criterion8},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget) o.require(false, "over time budget");
    failed += !o.ok;
    std::printf("%s criterion %d (%s) %.1fs / %.0fs%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
