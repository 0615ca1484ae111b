#include "mutclass/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace mutclass;

namespace {

struct Run {
  int status = -1;
  std::string out;
  Json json() const { return Json::parse(out); }
};

// runs the binary with `input` on stdin; stderr is discarded
Run run(const std::string& args, const std::string& input = "") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto in = dir / ("mutclass_cli_" + std::to_string(::getpid()) + ".json");
  {
    std::ofstream f(in);
    f << input;
  }
  const std::string cmd = std::string(MUTCLASS_CLI) + " " + args + " < " + in.string() + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::filesystem::remove(in);
  return r;
}

const std::string a2 = R"({"m":2,"n":2,"rows":[[0,1],[-1,0]]})";
const std::string affine_a1 = R"({"m":2,"n":2,"rows":[[0,2],[-2,0]]})";

}  // namespace

TEST(Cli, ClassifyA2) {
  auto r = run("classify", a2);
  ASSERT_EQ(r.status, 0) << r.out;
  const Json j = r.json();
  EXPECT_EQ(j["finite_type"], true);
  EXPECT_EQ(j["family"], "A");
  EXPECT_EQ(j["rank"], 2);
  auto c3 = run("classify", emit_matrix(ExtendedMatrix(dynkin_matrix(Family::C, 3))));
  EXPECT_EQ(c3.json()["family"], "C");
}

TEST(Cli, VerifyTheoremAffineA1) {
  auto r = run("verify-theorem --budget 1000", affine_a1);
  ASSERT_EQ(r.status, 0) << r.out;
  const Json j = r.json();
  EXPECT_EQ(j["consistent"], true);
  EXPECT_EQ(j["lhs"], "infinite");
  const auto expected = verify_theorem(ExchangeMatrix{{0, 2}, {-2, 0}});
  EXPECT_EQ(j["rhs_certificate"], to_string(expected.rhs.certificate->kind));
  EXPECT_EQ(j["certificate_verified"], true);
}

TEST(Cli, UsageErrors) {
  auto r = run("frobnicate", a2);
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.json()["error"], "UsageError");
  EXPECT_EQ(run("", a2).status, 2);
  EXPECT_EQ(run("mutate", a2).status, 2);
  EXPECT_EQ(run("mutate --at 1 --seq 1,2", a2).status, 2);
  EXPECT_EQ(run("mutate --seq 1,x", a2).status, 2);
  EXPECT_EQ(run("catalog --family Q --rank 2").status, 2);
  EXPECT_EQ(run("enumerate --budget 0", a2).status, 2);
}

TEST(Cli, Mutate) {
  auto r = run("mutate --at 1", a2);
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.json()["rows"].dump(), "[[0,-1],[1,0]]");
  auto p = emit_matrix(principal_extension(ExchangeMatrix{{0, 1}, {-1, 0}}));
  auto s = run("mutate --seq 1,2,1", p);
  ASSERT_EQ(s.status, 0);
  EXPECT_EQ(parse_document(s.json()).matrix, principal_extension(ExchangeMatrix{{0, 1}, {-1, 0}}).mutate({0, 1, 0}));
  auto frozen = run("mutate --at 3", p);
  EXPECT_EQ(frozen.status, 1);
  EXPECT_EQ(frozen.json()["error"], "FrozenIndexError");
  EXPECT_EQ(run("mutate --at 5", p).status, 1);
}

TEST(Cli, DomainErrorsAreJson) {
  auto bad = run("classify", R"({"rows":[[0,1,0],[-1,0,2],[0,1,0]]})");
  EXPECT_EQ(bad.status, 1);
  EXPECT_EQ(bad.json()["error"], "DocumentError");
  EXPECT_EQ(bad.json()["location"], "(2,3)");
  auto malformed = run("classify", "{");
  EXPECT_EQ(malformed.status, 1);
  EXPECT_EQ(malformed.json()["error"], "DocumentError");
  EXPECT_EQ(run("minimal", R"({"rows":[[0,0],[0,0]]})").status, 1);
}

TEST(Cli, EnumerateAndBudget) {
  auto closed = run("enumerate --principal", a2);
  ASSERT_EQ(closed.status, 0);
  EXPECT_EQ(closed.json()["outcome"], "Closed");
  EXPECT_EQ(closed.json()["labeled_count"],
            explore_extended_class(principal_extension(ExchangeMatrix{{0, 1}, {-1, 0}})).labeled_count);
  auto exhausted = run("enumerate --principal --budget 2", a2);
  EXPECT_EQ(exhausted.status, 3);
  EXPECT_EQ(exhausted.json()["outcome"], "BudgetExhausted");
  EXPECT_EQ(run("verify-theorem --budget 2", emit_matrix(ExtendedMatrix(dynkin_matrix(Family::A, 3)))).status, 3);
  auto parallel = run("--jobs 4 enumerate --principal", a2);
  EXPECT_EQ(parallel.json()["labeled_count"], closed.json()["labeled_count"]);
}

TEST(Cli, MinimalCatalogCompanionDot) {
  auto m = run("minimal", affine_a1);
  ASSERT_EQ(m.status, 0);
  EXPECT_EQ(m.json()["minimal_infinite"], true);
  EXPECT_EQ(run("minimal", a2).json()["minimal_infinite"], false);

  auto cat = run("catalog --family D --rank 4 --affine");
  ASSERT_EQ(cat.status, 0);
  const Json c = cat.json();
  EXPECT_EQ(parse_document(c).matrix.principal(), extended_dynkin_matrix(Family::D, 4));
  EXPECT_EQ(c["gcm"]["null_root"].size(), 5u);
  EXPECT_EQ(c["label"]["label"], "~D4");
  EXPECT_EQ(run("catalog --family E --rank 9").status, 1);

  auto comp = run("companion", affine_a1);
  ASSERT_EQ(comp.status, 0);
  EXPECT_EQ(comp.json()["admissible"], true);
  EXPECT_EQ(comp.json()["definiteness"]["corank"], 1);

  // an explicit non-admissible companion of the oriented triangle
  const auto check = std::filesystem::temp_directory_path() / "mutclass_cli_check.json";
  {
    std::ofstream f(check);
    f << R"({"rows":[[2,-1,-1],[-1,2,-1],[-1,-1,2]]})";
  }
  auto triangle = R"({"rows":[[0,-1,1],[1,0,-1],[-1,1,0]]})";
  auto checked = run("companion --check " + check.string(), triangle);
  EXPECT_EQ(checked.status, 1);
  EXPECT_EQ(checked.json()["admissible"], false);
  EXPECT_EQ(checked.json()["violating_cycle"].size(), 3u);
  std::filesystem::remove(check);

  auto dot = run("dot", affine_a1);
  ASSERT_EQ(dot.status, 0);
  EXPECT_EQ(dot.out, emit_dot(diagram_of(ExchangeMatrix{{0, 2}, {-2, 0}})));
}

TEST(Cli, OutputIsDeterministic) {
  const std::string doc = emit_matrix(principal_extension(dynkin_matrix(Family::B, 3)));
  auto a = run("enumerate", doc), b = run("enumerate", doc);
  EXPECT_EQ(a.out, b.out);
  auto p = run("--pretty classify", a2);
  EXPECT_NE(p.out.find("\n  \"finite_type\""), std::string::npos);
  EXPECT_EQ(p.json(), run("classify", a2).json());
}
