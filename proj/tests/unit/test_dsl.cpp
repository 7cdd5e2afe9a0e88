#include <gtest/gtest.h>

#include <random>

#include "fuzz.hpp"
#include "ratho/corpus.hpp"
#include "ratho/dsl.hpp"

using namespace ratho;

namespace {

ParseError parse_failure(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return ParseError(ParseError::Kind::kSemantic, 0, 0, "none");
}

}  // namespace

TEST(Dsl, SphereExampleIsCorpusEqual) {
  auto m = parse_model("algebra S4 { gen w4:4; gen w7:7; d w7 = -w4*w4; }");
  ASSERT_EQ(m.algebras.size(), 1u);
  EXPECT_EQ(m.algebras[0], corpus_entry("S4").dgca);
  EXPECT_EQ(m.algebras[0].name(), "S4");
}

TEST(Dsl, TrailingStarIsASyntaxErrorAtTheStar) {
  std::string text = "algebra S4 { gen w4:4; gen w7:7;\n  d w7 = -w4*w4*; }";
  auto e = parse_failure(text);
  EXPECT_EQ(e.kind(), ParseError::Kind::kSyntax);
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 16);
  EXPECT_EQ(std::string(e.what()).substr(0, 5), "2:16:");
}

TEST(Dsl, ErrorKinds) {
  EXPECT_EQ(parse_failure("algebra A { gen x:1; d x = 0.5*x; }").kind(), ParseError::Kind::kLexical);
  EXPECT_EQ(parse_failure("algebra A { gen x:1; d y = 0; }").kind(), ParseError::Kind::kUnknownName);
  EXPECT_EQ(parse_failure("algebra A { gen x:1, u:2; d x = u*u; }").kind(), ParseError::Kind::kDegreeMismatch);
  EXPECT_EQ(parse_failure("algebra A { gen x:1, y:3, u:2; d y = x*x*u; }").kind(), ParseError::Kind::kOddSquare);
  EXPECT_EQ(parse_failure("algebra A { gen x:1, u:2, y:3; d y = (x*u)^2; }").kind(), ParseError::Kind::kOddSquare);
  EXPECT_EQ(parse_failure("algebra A { gen x:1; gen x:3; }").kind(), ParseError::Kind::kSemantic);
  EXPECT_EQ(parse_failure("algebra A { gen x:1 }").kind(), ParseError::Kind::kSyntax);
  EXPECT_EQ(parse_failure("morphism f : A -> B { }").kind(), ParseError::Kind::kUnknownName);
  EXPECT_EQ(parse_failure("algebra A { gen x:1; }\nmorphism f : A -> A { x = x*x; }").kind(),
            ParseError::Kind::kOddSquare);
  EXPECT_EQ(parse_failure("algebra A { gen x:1, u:2; }\nmorphism f : A -> A { x = u; }").kind(),
            ParseError::Kind::kDegreeMismatch);
}

TEST(Dsl, ErrorLocations) {
  auto e = parse_failure("algebra A {\n  gen x:1;\n  d x = z;\n}");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 9);
  auto lex = parse_failure("algebra A { gen x:1; }\n  $");
  EXPECT_EQ(lex.line(), 2);
  EXPECT_EQ(lex.column(), 3);
}

TEST(Dsl, DeclarationsAndDefaults) {
  auto m = parse_model(R"(# comment
algebra A { gen a:2, b:3; d b = a^2; }
matrix M { [a, 0]; [0, 2*a]; }
twist H = b;
morphism f : A -> A { a = 1/2*a; }
)");
  ASSERT_EQ(m.matrices.size(), 1u);
  EXPECT_EQ(m.matrices[0].algebra, "A");
  EXPECT_EQ(m.twists[0].algebra, "A");
  const Dgca& A = m.algebras[0];
  EXPECT_EQ(m.find_morphism("f")->map.image("b"), A.zero());
  EXPECT_EQ(m.find_morphism("f")->map.image("a"), Rational(1, 2) * A.gen("a"));
  EXPECT_EQ(A.differential("a"), A.zero());
}

TEST(Dsl, UsePullsInCorpusAlgebras) {
  auto m = parse_model("use S4;\ntwist H : S4 = w7;\n");
  ASSERT_EQ(m.imported.size(), 1u);
  EXPECT_TRUE(m.algebras.empty());
  EXPECT_EQ(m.twists[0].value, m.imported[0].gen("w7"));
  EXPECT_EQ(parse_model(print_model(m)), m);
}

TEST(Dsl, ParseExpression) {
  auto g = make_generators({{"x", 1}, {"u", 2}});
  auto p = parse_expression("-(u + 3/2)^2 * x", g);
  auto u = Polynomial::generator(g, "u"), x = Polynomial::generator(g, "x");
  EXPECT_EQ(p, -((u * u + Rational(3) * u + Polynomial::constant(g, Rational(9, 4))) * x));
}

TEST(Dsl, RoundTripOnCorpus) {
  for (const auto& e : corpus()) {
    auto printed = print_model(e.model);
    auto again = parse_model(printed);
    EXPECT_EQ(again, e.model) << e.name;
    EXPECT_EQ(print_model(again), printed) << e.name;
    EXPECT_EQ(parse_model(e.source), e.model) << e.name;
  }
}

TEST(Dsl, RoundTripOnGeneratedFiles) {
  std::mt19937_64 rng(20261014);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = fuzz::random_model(rng);
    auto printed = print_model(m);
    ModelFile again;
    ASSERT_NO_THROW(again = parse_model(printed)) << printed;
    EXPECT_EQ(again, m) << printed;
    EXPECT_EQ(print_model(again), printed);
  }
}

TEST(Dsl, MutatedFilesFailCleanly) {
  std::mt19937_64 rng(404);
  int rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto text = fuzz::mutate(print_model(fuzz::random_model(rng)), rng);
    try {
      auto m = parse_model(text);
      EXPECT_EQ(parse_model(print_model(m)), m) << text;
    } catch (const ParseError& e) {
      ++rejected;
      EXPECT_GE(e.line(), 1) << text;
      EXPECT_GE(e.column(), 1) << text;
    }
  }
  EXPECT_GT(rejected, 100);
}
