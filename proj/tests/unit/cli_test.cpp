#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "tatecalc/catalog.hpp"
#include "tatecalc/tate.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = tatecalc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, MotivePoly) {
  const auto r = run({"motive", "gl", "--n", "2", "--format", "poly"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1 + t*u + t^3*u^2 + t^4*u^3\n");
}

TEST(Cli, MotiveTableAndJson) {
  const auto t = run({"motive", "gr", "--m", "2", "--n", "4"});
  EXPECT_EQ(t.out, "p\tq\tmult\n0\t0\t1\n2\t1\t1\n4\t2\t2\n6\t3\t1\n8\t4\t1\n");
  const auto j = run({"motive", "a", "--sig", "1,2,4", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(tatecalc::motive_from_json(nlohmann::json::parse(j.out)), tatecalc::catalog::motive_a({1, 2, 4}));
  EXPECT_EQ(run({"motive", "x", "--m", "1", "--sig", "1,2", "--format", "poly"}).out, "t*u + t^3*u^2\n");
  EXPECT_EQ(run({"motive", "v", "--m", "1", "--n", "3", "--format", "poly"}).out, "1 + t^5*u^3\n");
  EXPECT_EQ(run({"motive", "fl", "--sig", "0,1,2", "--format", "poly"}).out, "1 + t^2*u\n");
}

TEST(Cli, VerifySplitting) {
  const auto r = run({"verify", "splitting", "--n", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "PASS (1023 summands matched)\n");
}

TEST(Cli, VerifyEverything) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "adjoint", "--n", "3"},
           {"verify", "dual-exterior", "--n", "4"},
           {"verify", "thom", "--n", "5"},
           {"verify", "qseries", "--n", "12"},
           {"verify", "bijection", "--sig", "2,3,5"},
           {"verify", "ss", "--sig", "2,4", "--max-weight", "6"},
           {"verify", "rank", "--sig", "1,2,3", "--max-weight", "10"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args[1] << "\n" << r.out << r.err;
    EXPECT_EQ(r.out.rfind("PASS", 0), 0u) << r.out;
    const auto rj = run([&] {
      auto a = args;
      a.insert(a.end(), {"--format", "json"});
      return a;
    }());
    EXPECT_EQ(rj.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(rj.out)["passed"].get<bool>());
  }
}

TEST(Cli, E2TableAndSvg) {
  const auto path = std::filesystem::temp_directory_path() / "tatecalc_cli_e2.svg";
  std::filesystem::remove(path);
  const auto r = run({"e2", "--sig", "1,2", "--max-weight", "4", "--svg", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("α′2"), std::string::npos);
  EXPECT_NE(r.out.find("θ1"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(path));
  const auto first = slurp(path);
  run({"e2", "--sig", "1,2", "--max-weight", "4", "--svg", path.string()});
  EXPECT_EQ(slurp(path), first);
  std::filesystem::remove(path);
}

TEST(Cli, E2Targets) {
  const auto r = run({"e2", "targets", "--sig", "1,2", "--max-weight", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("α′2 (0,3,2) tch=1:  d2 -> θ1^2"), std::string::npos) << r.out;
  const auto j = run({"e2", "targets", "--sig", "1,2", "--max-weight", "4", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["targets"][0]["pages"][0]["targets"][0], "θ1^2");
}

TEST(Cli, ChartToStdout) {
  const auto r = run({"chart", "--sig", "2,4", "--max-weight", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("<?xml", 0), 0u);
  EXPECT_EQ(run({"chart", "--sig", "2,4", "--max-weight", "6"}).out, r.out);
}

TEST(Cli, CoactionStiefel) {
  const auto r = run({"coaction", "stiefel", "--m", "2", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("α[2] ↦ 1⊗α[2] + ρ[2]⊗1"), std::string::npos);
  EXPECT_NE(r.out.find("α[3] ↦ 1⊗α[3]"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"motive"},
           {"motive", "gl"},
           {"motive", "gl", "--n", "x"},
           {"motive", "gl", "--n", "2", "--format", "xml"},
           {"motive", "gr", "--m", "5", "--n", "3"},
           {"motive", "a", "--sig", "3,2"},
           {"verify", "splitting", "--n", "0"},
           {"verify", "splitting", "--n", "3", "--format", "poly"},
           {"verify", "ss", "--sig", "1,4", "--max-weight", "2"},
           {"verify", "rank", "--sig", "3"},
           {"e2", "--sig", "1,2", "--max-weight", "-1"},
           {"e2", "--sig", "1,2", "--variant", "half"},
           {"frobnicate"},
           {"motive", "gl", "--n", "2", "--bogus"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "<empty>" : args[0]) << " " << r.err;
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
  }
  const auto sig = run({"motive", "a", "--sig", "3,2"});
  EXPECT_NE(sig.err.find("strictly increasing"), std::string::npos);
  const auto m = run({"motive", "gr", "--m", "5", "--n", "3"});
  EXPECT_NE(m.err.find("--m"), std::string::npos);
}

TEST(Cli, MaxWeightFromEnvironment) {
  ::setenv("TATECALC_MAX_WEIGHT", "3", 1);
  const auto env = run({"e2", "--sig", "1,2"});
  ::unsetenv("TATECALC_MAX_WEIGHT");
  EXPECT_NE(env.out.find("weight <= 3"), std::string::npos) << env.out;
  const auto flag = run({"e2", "--sig", "1,2", "--max-weight", "5"});
  EXPECT_NE(flag.out.find("weight <= 5"), std::string::npos);
  ::setenv("TATECALC_MAX_WEIGHT", "abc", 1);
  EXPECT_EQ(run({"e2", "--sig", "1,2"}).code, 2);
  ::unsetenv("TATECALC_MAX_WEIGHT");
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, RepeatedInvocationsAreByteIdentical) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"motive", "a", "--sig", "2,3,5", "--format", "json"},
           {"verify", "adjoint", "--n", "4", "--format", "json"},
           {"verify", "ss", "--sig", "3,5", "--max-weight", "8"},
           {"e2", "targets", "--sig", "2,4", "--max-weight", "6", "--format", "json"},
       }) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}
