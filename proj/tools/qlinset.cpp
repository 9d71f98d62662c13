// qlinset: field construction, image sets, classification and the
// verification suites.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlinset/criteria.hpp"
#include "qlinset/imageset.hpp"
#include "qlinset/suites.hpp"

namespace {

using nlohmann::json;
using namespace qlinset;

constexpr int kExitFalsifier = 1;
constexpr int kExitGuard = 2;

struct Options {
  std::string field;
  std::string modulus;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string suite;
  bool exhaustive = false;
  std::optional<std::uint64_t> samples;
  bool all_mu = false;
  std::string poly;
  bool elements = false;
  std::string f;
  std::string g;
};

std::vector<std::uint32_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(static_cast<std::uint32_t>(std::stoul(item, &used)));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, std::string("bad ") + what + " entry '" + item + "' at position " +
                                             std::to_string(out.size()));
    }
  }
  return out;
}

FieldPtr make_field(const Options& o) {
  auto phn = parse_list(o.field, "--field");
  if (phn.size() != 3) throw Error(ErrorKind::ParseError, "--field expects p,h,n");
  std::optional<std::vector<std::uint32_t>> modulus;
  if (!o.modulus.empty()) modulus = parse_list(o.modulus, "--modulus");
  return build_field(phn[0], phn[1], phn[2], modulus);
}

RunConfig make_config(const Options& o) {
  RunConfig c;
  c.field = make_field(o);
  c.seed = o.seed;
  c.threads = o.threads;
  if (o.exhaustive) c.exhaustive = true;
  if (o.samples) {
    c.samples = o.samples;
    if (!o.exhaustive) c.exhaustive = false;
  }
  c.all_mu = o.all_mu;
  return c;
}

std::filesystem::path output_path(const Options& o, const std::string& stem) {
  if (!o.out.empty()) return o.out;
  if (const char* dir = std::getenv("QLINSET_OUT_DIR"); dir && *dir) return std::filesystem::path(dir) / (stem + ".json");
  return {};
}

void emit(const Options& o, const std::string& stem, const json& report, const std::optional<std::string>& csv = {}) {
  std::cout << report.dump(2) << '\n';
  auto path = output_path(o, stem);
  if (path.empty()) return;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream(path) << report.dump(2) << '\n';
  if (csv) {
    auto csv_path = path;
    csv_path.replace_extension(".csv");
    std::ofstream(csv_path) << *csv;
  }
}

json header(const std::string& command, const FieldCtx& F) {
  return {{"schema", "qlinset-report/1"}, {"command", command}, {"field", F.spec_string()}};
}

int cmd_field(const Options& o) {
  FieldPtr ctx = make_field(o);
  json r = header("field", *ctx);
  r["p"] = ctx->p();
  r["h"] = ctx->h();
  r["n"] = ctx->n();
  r["q"] = ctx->q();
  r["size"] = ctx->size();
  r["modulus"] = ctx->modulus();
  emit(o, "field", r);
  return 0;
}

int cmd_image(const Options& o) {
  FieldPtr ctx = make_field(o);
  const FieldCtx& F = *ctx;
  QPoly f = QPoly::parse(ctx, o.poly);
  ImageSet im = image_of_ratio(f);
  DirectionBounds w = direction_bounds(F);
  json r = header("image", F);
  r["f"] = f.to_string();
  r["size"] = im.size();
  r["window"] = {w.lower, w.upper};
  r["strictly_linear"] = is_strictly_linear(f);
  r["max_field_of_linearity"] = f.is_zero() ? json() : json(max_field_of_linearity(f));
  if (!is_strictly_linear(f)) r["note"] = "not strictly F_q-linear";
  if (o.elements) {
    std::vector<std::string> els;
    for (auto e : im.elements()) els.push_back(F.format(e));
    r["elements"] = els;
  }
  emit(o, "image", r);
  return 0;
}

int cmd_classify(const Options& o) {
  FieldPtr ctx = make_field(o);
  const FieldCtx& F = *ctx;
  const std::uint32_t n = F.n();
  if (n < 2 || n > 5) throw Error(ErrorKind::WrongDegree, "classification needs 2 <= n <= 5");
  QPoly f = QPoly::parse(ctx, o.f);
  QPoly g = QPoly::parse(ctx, o.g);
  ClassifyOutcome outcome = ImagesDiffer{};
  try {
    outcome = n == 5 ? classify_n5(f, g, o.threads) : classify_n_le_4(f, g, o.threads);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ImagesDiffer) throw;
  }
  json r = header("classify", F);
  r["f"] = f.to_string();
  r["g"] = g.to_string();
  r["result"] = to_json(outcome, F);
  r["verified"] = verify_outcome(f, g, outcome);
  if (n == 5) r["e_relations"] = to_json(check_e_relations(f, g), F);
  emit(o, "classify", r);
  return std::holds_alternative<Inconsistent>(outcome) ? kExitFalsifier : 0;
}

int cmd_verify(const Options& o) {
  RunConfig config = make_config(o);
  SuiteReport report = run_suite(o.suite, config);
  emit(o, "verify-" + o.suite, report_json("verify", config, report), report.csv);
  std::cerr << "suite " << o.suite << ": " << (report.passed ? "PASS" : "FAIL") << '\n';
  if (report.guard_violation) return kExitGuard;
  return report.passed ? 0 : kExitFalsifier;
}

int cmd_survey(const Options& o) {
  RunConfig config = make_config(o);
  const bool exhaustive = config.exhaustive.value_or(true);
  SurveyMode mode = exhaustive ? SurveyMode::exhaustive() : SurveyMode::sample(*config.samples, config.seed);
  SurveyResult s = survey_image_sizes(config.field, mode, config.threads);
  const FieldCtx& F = *config.field;
  json r = header("survey", F);
  r["mode"] = exhaustive ? "exhaustive" : "sampled";
  r["seed"] = config.seed;
  r["polynomials"] = s.polynomials;
  json bins = json::array();
  for (const auto& [size, bin] : s.bins) bins.push_back({{"size", size}, {"count", bin.count}});
  r["bins"] = bins;
  emit(o, "survey", r, s.to_csv(F));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image sets of q-polynomials and linear sets of PG(1, q^n)"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "p,h,n")->required();
    sub->add_option("--modulus", o.modulus, "c0,...,c_{hn} (monic, primitive)");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    sub->add_option("--out", o.out, "report path (JSON)");
  };

  auto* field = app.add_subcommand("field", "construct a field and print its modulus");
  common(field);
  auto* image = app.add_subcommand("image", "image set of f(x)/x");
  common(image);
  image->add_option("--poly", o.poly, "coefficients a0,...,a{n-1}")->required();
  image->add_flag("--elements", o.elements, "list the image elements");
  auto* classify = app.add_subcommand("classify", "classify a pair with equal images");
  common(classify);
  classify->add_option("--f", o.f, "coefficients of f")->required();
  classify->add_option("--g", o.g, "coefficients of g")->required();
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("--suite", o.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  auto* mode_ex = verify->add_flag("--exhaustive", o.exhaustive, "exhaustive mode");
  verify->add_option("--samples", o.samples, "sample count")->excludes(mode_ex);
  verify->add_flag("--all-mu", o.all_mu, "test every admissible mu (new-linset)");
  auto* survey = app.add_subcommand("survey", "histogram of image sizes");
  common(survey);
  auto* survey_ex = survey->add_flag("--exhaustive", o.exhaustive, "exhaustive mode (default)");
  survey->add_option("--samples", o.samples, "sample count")->excludes(survey_ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitGuard;
  }

  try {
    if (*field) return cmd_field(o);
    if (*image) return cmd_image(o);
    if (*classify) return cmd_classify(o);
    if (*verify) return cmd_verify(o);
    return cmd_survey(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  }
}
