#include "oracles.hpp"
#include "mutclass/io.hpp"

#include <gtest/gtest.h>

using namespace mutclass;

namespace {

std::string error_location(const std::string& text) {
  try {
    parse_matrix(text);
  } catch (const DocumentError& e) {
    return e.where();
  }
  return "<accepted>";
}

}  // namespace

TEST(Document, RoundTripPrincipalA2) {
  const auto e = principal_extension(ExchangeMatrix{{0, 1}, {-1, 0}});
  const std::string text = emit_matrix(e, "A2");
  EXPECT_EQ(text, R"({"m":4,"n":2,"rows":[[0,1],[-1,0],[1,0],[0,1]],"name":"A2"})");
  const auto doc = parse_matrix(text);
  EXPECT_EQ(doc.matrix, e);
  EXPECT_EQ(doc.name, "A2");
  EXPECT_EQ(emit_matrix(doc.matrix, doc.name), text);
}

TEST(Document, RoundTripRandomExtendedMatrices) {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 5;
    ExtendedMatrix e = principal_extension(ExchangeMatrix(oracle::random_exchange(rng, n, 3)));
    e = e.mutate(oracle::random_sequence(rng, n, t % 9));
    const std::string text = emit_matrix(e);
    const auto back = parse_matrix(text);
    ASSERT_EQ(back.matrix, e);
    EXPECT_EQ(emit_matrix(back.matrix), text);
  }
}

TEST(Document, MandNOptional) {
  auto doc = parse_matrix(R"({"rows":[[0,2],[-1,0],[1,1]]})");
  EXPECT_EQ(doc.matrix.rows(), 3u);
  EXPECT_EQ(doc.matrix.mutable_count(), 2u);
}

TEST(Document, Rejections) {
  EXPECT_EQ(error_location(R"({"rows":[[0,1],[-1]]})"), "rows[2]");
  EXPECT_EQ(error_location(R"({"rows":[[0,1,0],[-1,0,2],[0,1,0]]})"), "(2,3)");
  EXPECT_EQ(error_location(R"({"m":3,"rows":[[0,1],[-1,0]]})"), "m");
  EXPECT_EQ(error_location(R"({"n":1,"rows":[[0,1],[-1,0]]})"), "n");
  EXPECT_EQ(error_location(R"({"rows":[[0,1,2],[-1,0,0]]})"), "rows");
  EXPECT_EQ(error_location(R"({"rows":[[0,"x"],[-1,0]]})"), "rows[1][2]");
  EXPECT_EQ(error_location(R"({"rows":[[0,1.5],[-1,0]]})"), "rows[1][2]");
  EXPECT_EQ(error_location(R"({"rows":[]})"), "rows");
  EXPECT_EQ(error_location(R"([1,2])"), "");
  EXPECT_EQ(error_location(R"({"rows":[[0,1],[-1,0]],"name":3})"), "name");
  EXPECT_THROW(parse_matrix("{\"rows\": [[0,1],"), DocumentError);
  try {
    parse_matrix(R"({"rows":[[0,1,0],[-1,0,2],[0,1,0]]})");
    FAIL();
  } catch (const DocumentError& e) {
    EXPECT_NE(std::string(e.what()).find("(2,3)"), std::string::npos);
  }
}

TEST(Document, LargeIntegersAreStrings) {
  const Integer big = (Integer(1) << 70) + 3;
  IntMatrix m{{0, 1}, {-1, 0}, {0, 0}};
  m(2, 0) = big;
  m(2, 1) = -big;
  const ExtendedMatrix e(m, 2);
  const std::string text = emit_matrix(e);
  EXPECT_NE(text.find("\"" + to_string(big) + "\""), std::string::npos);
  EXPECT_NE(text.find("\"-" + to_string(big) + "\""), std::string::npos);
  EXPECT_EQ(parse_matrix(text).matrix, e);
  // the boundary stays numeric
  const Integer safe = (Integer(1) << 53) - 1;
  EXPECT_TRUE(integer_json(safe).is_number_integer());
  EXPECT_TRUE(integer_json(safe + 1).is_string());
  EXPECT_TRUE(integer_json(-safe).is_number_integer());
}

TEST(Document, GrowthWitnessSurvivesRoundTrip) {
  // entries grow exponentially past the safe range along the growth walk
  ExtendedMatrix t(IntMatrix{{0, -5}, {1, 0}, {-1, 5}}, 2);
  std::vector<std::size_t> seq;
  growth_trajectory(t, 120, &seq);
  const auto end = t.mutate(seq);
  Integer largest = 0;
  for (const auto& x : end.entries().data()) largest = abs(x) > largest ? abs(x) : largest;
  ASSERT_GT(largest, Integer(1) << 53);
  EXPECT_EQ(parse_matrix(emit_matrix(end)).matrix, end);
}

TEST(Dot, WeightLabelsAndFrozenBoxes) {
  Diagram g(2);
  g.set_edge(0, 1, 4);
  EXPECT_EQ(emit_dot(g), "digraph G {\n  1;\n  2;\n  1 -> 2 [label=\"4\"];\n}\n");
  Diagram h(2);
  h.set_edge(1, 0, 1);
  EXPECT_EQ(emit_dot(h), "digraph G {\n  1;\n  2;\n  2 -> 1;\n}\n");
  const auto p = diagram_of(principal_extension(ExchangeMatrix{{0, 1}, {-1, 0}}));
  const std::string dot = emit_dot(p);
  EXPECT_NE(dot.find("  3 [shape=box];"), std::string::npos);
  EXPECT_NE(dot.find("  4 [shape=box];"), std::string::npos);
  EXPECT_EQ(dot.find("  1 [shape=box];"), std::string::npos);
  EXPECT_EQ(emit_dot(p), dot);
}

TEST(Dot, OneLinePerArrow) {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 50; ++t) {
    const Diagram g = diagram_of(ExchangeMatrix(oracle::random_exchange(rng, 2 + t % 4, 3)));
    const std::string dot = emit_dot(g);
    std::size_t arrows = 0;
    for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 1)) ++arrows;
    EXPECT_EQ(arrows, g.edges().size());
  }
}

TEST(Reports, DiagramAndClassify) {
  const ExchangeMatrix a2{{0, 1}, {-1, 0}};
  const Json d = diagram_json(diagram_of(a2));
  EXPECT_EQ(d.dump(),
            R"({"vertices":[{"id":1,"frozen":false},{"id":2,"frozen":false}],"edges":[{"from":2,"to":1,"weight":1}],"max_weight":1})");
  const Json c = classify_json(a2);
  EXPECT_EQ(c["finite_type"], true);
  EXPECT_EQ(c["family"], "A");
  EXPECT_EQ(c["rank"], 2);
  const Json w = classify_json(ExchangeMatrix{{0, 2}, {-2, 0}});
  EXPECT_EQ(w["finite_type"], false);
  EXPECT_EQ(w["witness_max_weight"], 4);
  EXPECT_EQ(classify_json(dynkin_matrix(Family::C, 3))["family"], "C");
}

TEST(Reports, TheoremAndCertificate) {
  const Json t = theorem_json(verify_theorem(ExchangeMatrix{{0, 2}, {-2, 0}}));
  EXPECT_EQ(t["consistent"], true);
  EXPECT_EQ(t["lhs"], "infinite");
  EXPECT_EQ(t["rhs"], "InfiniteCertificate");
  EXPECT_EQ(t["rhs_certificate"], "AcyclicWeight4Attachment");
  const Json& cert = t["report"]["certificate"];
  // the witness document parses back and replays from the root
  const auto witness = parse_document(cert["witness"]).matrix;
  std::vector<std::size_t> path;
  for (const auto& k : cert["path"]) path.push_back(k.get<std::size_t>() - 1);
  EXPECT_EQ(principal_extension(ExchangeMatrix{{0, 2}, {-2, 0}}).mutate(path), witness);
}

TEST(Reports, CompanionRadical) {
  Companion a(IntMatrix{{2, -2}, {-2, 2}}, ExchangeMatrix{{0, 2}, {-2, 0}});
  const Json j = companion_json(a);
  EXPECT_EQ(j["definiteness"]["corank"], 1);
  ASSERT_EQ(j["radical"].size(), 1u);
  EXPECT_EQ(j["radical"][0]["vector"].dump(), "[1,1]");
  EXPECT_EQ(j["radical"][0]["sincere"], true);
  EXPECT_EQ(error_json("usage", "bad", "x").dump(), R"({"error":"usage","message":"bad","location":"x"})");
}
