#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(QLINSET_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string& args, int expected_code = 0) {
  Result r = run(args);
  EXPECT_EQ(r.code, expected_code) << args;
  return json::parse(r.out);
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("qlinset-cli-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, Field) {
  json j = run_json("field --field 2,1,5");
  EXPECT_EQ(j["schema"], "qlinset-report/1");
  EXPECT_EQ(j["field"], "2^1^5/1,0,0,1,0,1");
  EXPECT_EQ(j["size"], 32);
  EXPECT_EQ(run("field --field 4,1,2").code, 2);
  EXPECT_EQ(run("field --field 2,1,4 --modulus 1,1,1,1,1").code, 2);
  EXPECT_EQ(run("field --field 2,1").code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
}

TEST(Cli, Image) {
  json tr = run_json("image --field 2,1,5 --poly 1,1,1,1,1");
  EXPECT_EQ(tr["size"], 17);
  EXPECT_EQ(tr["window"], json::array({17, 31}));
  json xq = run_json("image --field 3,1,5 --poly 0,1,0,0,0 --elements");
  EXPECT_EQ(xq["size"], 121);
  EXPECT_EQ(xq["elements"].size(), 121u);
  json id = run_json("image --field 2,1,4 --poly g,0,0,0");
  EXPECT_EQ(id["strictly_linear"], false);
  EXPECT_EQ(id["max_field_of_linearity"], 4);
  EXPECT_EQ(run("image --field 2,1,4 --poly 1,2").code, 2);
}

TEST(Cli, Classify) {
  json m = run_json("classify --field 2,1,5 --f 0,1,0,0,0 --g 0,0,g^6,0,0");
  EXPECT_EQ(m["result"]["outcome"], "MonomialPair");
  EXPECT_EQ(m["verified"], true);
  EXPECT_EQ(m["e_relations"]["all_hold"], true);
  json d = run_json("classify --field 2,1,5 --f 0,1,0,0,0 --g 1,1,1,1,1");
  EXPECT_EQ(d["result"]["outcome"], "ImagesDiffer");
  EXPECT_EQ(d["e_relations"]["all_hold"], false);
  json s = run_json("classify --field 2,1,4 --f 0,1,0,0 --g 0,0,0,1");
  EXPECT_EQ(s["result"]["outcome"], "AdjointScalarConjugate");
  EXPECT_FALSE(s.contains("e_relations"));
  EXPECT_EQ(run("classify --field 2,1,6 --f 0,1,0,0,0,0 --g 0,1,0,0,0,0").code, 2);
  EXPECT_EQ(run("classify --field 2,1,4 --f 1,0,0,0 --g 1,0,0,0").code, 2);
}

TEST(Cli, VerifyIsDeterministicAndPersists) {
  fs::path dir = scratch("verify");
  std::string env = "QLINSET_OUT_DIR=" + dir.string();
  Result a = run("verify --field 2,1,4 --suite survey-n4 --threads 2", env);
  Result b = run("verify --field 2,1,4 --suite survey-n4 --threads 1");
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  json ja = json::parse(a.out), jb = json::parse(b.out);
  EXPECT_EQ(ja["passed"], true);
  ja.erase("timing");
  jb.erase("timing");
  ja["config"].erase("threads");
  jb["config"].erase("threads");
  EXPECT_EQ(ja, jb);
  EXPECT_TRUE(fs::exists(dir / "verify-survey-n4.json"));
  std::string csv = slurp(dir / "verify-survey-n4.csv");
  EXPECT_NE(csv.find("size,count,representative"), std::string::npos);
  EXPECT_EQ(json::parse(slurp(dir / "verify-survey-n4.json"))["suite"], "survey-n4");
}

TEST(Cli, VerifySuitesAndExitCodes) {
  EXPECT_EQ(run("verify --field 2,1,4 --suite adjoint --samples 50").code, 0);
  EXPECT_EQ(run("verify --field 3,1,5 --suite trace5 --samples 10").code, 0);
  EXPECT_EQ(run("verify --field 2,1,5 --suite new-linset").code, 2);
  EXPECT_EQ(run("verify --field 2,1,4 --suite nope").code, 2);
  EXPECT_EQ(run("verify --field 2,1,4 --suite bounds --exhaustive --samples 3").code, 2);
}

TEST(Cli, SurveyWithOut) {
  fs::path dir = scratch("survey");
  fs::path out = dir / "nested" / "s.json";
  Result r = run("survey --field 2,1,3 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  json j = json::parse(slurp(out));
  EXPECT_EQ(j, json::parse(r.out));
  EXPECT_EQ(j["mode"], "exhaustive");
  std::uint64_t total = 0;
  for (const auto& b : j["bins"]) total += b["count"].get<std::uint64_t>();
  EXPECT_EQ(total, j["polynomials"].get<std::uint64_t>());
  EXPECT_TRUE(fs::exists(dir / "nested" / "s.csv"));
  json s = run_json("survey --field 3,1,5 --samples 100 --seed 9");
  EXPECT_EQ(s["mode"], "sampled");
  EXPECT_EQ(s["polynomials"], 100);
  EXPECT_EQ(run("survey --field 3,1,5").code, 2);
}
