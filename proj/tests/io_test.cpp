#include <gtest/gtest.h>

#include "iwmu/errors.hpp"
#include "iwmu/io.hpp"

namespace iwmu {
namespace {

TEST(ModuleFile, RoundTrip) {
  const GroundTruth gt{1, {1, 2}, {Garnish{1}}, 11};
  for (const auto& group : {GroupSpec::abelian(2, 2), GroupSpec::metacyclic(3)}) {
    const auto sm = make_module(gt, group, {group.p, 2, 1});
    const Presentation back = parse_module(write_module(sm.presentation));
    EXPECT_EQ(back.group, sm.presentation.group);
    EXPECT_EQ(back.ring, sm.presentation.ring);
    EXPECT_EQ(back.matrix, sm.presentation.matrix);
    EXPECT_EQ(back.pi_exponent, sm.presentation.pi_exponent);
  }
}

TEST(ModuleFile, BigCoefficientsStayExact) {
  const std::string text = R"({"ring": {"p": 3, "e": 1, "f": 1}, "group": {"kind": "abelian", "r": 1},
    "gens": 1, "rels": 1, "matrix": [[[{"c": ["-123456789012345678901234567890"], "e": [2]}]]]})";
  const Presentation p = parse_module(text);
  ASSERT_EQ(p.matrix(0, 0).terms().size(), 1u);
  EXPECT_EQ(p.matrix(0, 0).terms()[0].coeff[0], Integer("-123456789012345678901234567890"));
  EXPECT_NE(write_module(p).find("\"-123456789012345678901234567890\""), std::string::npos);
}

TEST(ModuleFile, SyntaxErrorsCarryPosition) {
  try {
    parse_module("{\n  \"ring\": {\"p\": 3,,}\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 19);  // the second comma
  }
}

TEST(ModuleFile, SchemaErrorsNameThePath) {
  auto message = [](const std::string& text) {
    try {
      parse_module(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  const std::string head = R"({"ring": {"p": 3, "e": 1, "f": 1}, "group": {"kind": "abelian", "r": 1}, )";
  EXPECT_NE(message(head + R"("gens": 1, "rels": 1, "matrix": [[[{"c": ["x1"], "e": [0]}]]]})")
                .find("/matrix/0/0/0/c/0"),
            std::string::npos);
  EXPECT_NE(message(head + R"("gens": 2, "rels": 1, "matrix": [[[]]]})").find("/matrix/0"), std::string::npos);
  EXPECT_NE(message(head + R"("gens": 1, "rels": 1, "matrix": [[[{"c": ["1"], "e": [0, 1]}]]]})")
                .find("invalid module"),
            std::string::npos);
  EXPECT_NE(message(R"({"ring": {"p": 3, "e": 1, "f": 1}, "group": {"kind": "free", "r": 1}})").find("/group/kind"),
            std::string::npos);
}

TEST(CorpusFile, CarriesGroundTruth) {
  const GroundTruth gt{2, {3}, {Garnish{0}}, 5};
  const auto sm = make_module(gt, GroupSpec::abelian(3, 2));
  const CorpusEntry entry = parse_corpus_entry(write_corpus_entry(sm, gt));
  ASSERT_TRUE(entry.truth);
  EXPECT_EQ(entry.truth->free_rank, 2);
  EXPECT_EQ(entry.truth->alphas, gt.alphas);
  EXPECT_EQ(entry.truth->garnish, gt.garnish);
  EXPECT_EQ(entry.truth->seed, 5u);
  EXPECT_EQ(entry.log, sm.log);
  EXPECT_EQ(entry.presentation.matrix, sm.presentation.matrix);
}

TEST(TowerFile, CsvRoundTrip) {
  const std::vector<std::int64_t> mu{1, 2};
  const auto t = synthetic_tower(2, 2, mu, std::vector<int>{0, 1, 2}, 1, std::uint64_t{3});
  const auto back = parse_tower_csv(write_tower_csv(t), "x");
  EXPECT_EQ(back.p, 2);
  EXPECT_EQ(back.r, 2);
  EXPECT_EQ(back.data, t.data);
}

TEST(TowerFile, CsvErrors) {
  try {
    parse_tower_csv("# p=2,r=1\nn,m,ord\n1,0,2\n1,1,x\n", "t");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_EQ(e.column(), 5);
  }
  EXPECT_THROW(parse_tower_csv("n,m,ord\n1,0,2\n", "t"), ParseError);
  EXPECT_THROW(parse_tower_csv("# p=2,r=1\nn,ord\n", "t"), ParseError);
  EXPECT_THROW(parse_tower_csv("# p=2,r=1\nn,m,ord\n1,0,2\n1,0,3\n", "t"), ParseError);
}

TEST(TowerFile, Json) {
  const auto t = parse_tower_json(R"({"p": 3, "r": 1, "rows": [{"n": 1, "m": 0, "ord": 2},
                                                              {"n": 1, "m": 1, "ord": 6}]})",
                                  "t");
  EXPECT_EQ(t.p, 3);
  EXPECT_EQ(t.data.at({1, 1}), 6);
}

}  // namespace
}  // namespace iwmu
