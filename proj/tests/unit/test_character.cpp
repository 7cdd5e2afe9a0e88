#include <gtest/gtest.h>

#include "ratho/character.hpp"
#include "ratho/corpus.hpp"
#include "ratho/errors.hpp"

using namespace ratho;

TEST(Flat, LineDataAreClosedForms) {
  const Dgca& S3 = corpus_entry("S3").dgca;
  EXPECT_TRUE(verify_flat(line_datum(S3, 2, S3.gen("w3"))).pass());
  const Dgca& S4 = corpus_entry("S4").dgca;
  auto bad = verify_flat(line_datum(S4, 6, S4.gen("w7")));
  ASSERT_EQ(bad.failures.size(), 1u);
  EXPECT_EQ(bad.failures[0].generator, "c");
  EXPECT_EQ(bad.failures[0].residual, pow(S4.gen("w4"), 2));  // F(dc) - dF(c) = 0 - (-w4^2)
}

TEST(Flat, SphereValuedDataSatisfyTheBianchiSystem) {
  // S^4-valued forms on CE(lS^4) itself: the identity is flat, the zero w7 is not.
  const Dgca& S4 = corpus_entry("S4").dgca;
  FlatFormDatum F{S4, S4, AlgebraMorphism::identity(S4.generators())};
  EXPECT_TRUE(verify_flat(F).pass());
  F.assignment = AlgebraMorphism::from_assignment(S4.generators(), S4.generators(), {{"w4", S4.gen("w4")}}, true);
  auto r = verify_flat(F);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].generator, "w7");
}

TEST(Concordance, ConstantAndReversed) {
  const Dgca& CP2 = corpus_entry("CP2").dgca;
  auto F = line_datum(CP2, 1, CP2.gen("f2"));
  auto C = constant_concordance(F);
  EXPECT_TRUE(verify_concordance(C).pass());
  EXPECT_TRUE(extract_line_witness(C).is_zero());

  auto f2 = CP2.gen("f2");
  auto L = linear_concordance(CP2, 5, CP2.zero(), pow(f2, 3), CP2.gen("h5"));
  EXPECT_TRUE(verify_concordance(L).pass());
  auto R = reversed(L);
  EXPECT_TRUE(verify_concordance(R).pass());
  EXPECT_EQ(R.start.image(0), pow(f2, 3));
  EXPECT_EQ(CP2.apply_d(extract_line_witness(R)), -pow(f2, 3));
}

TEST(Concordance, LinearConstructionRequiresAPrimitive) {
  const Dgca& CP2 = corpus_entry("CP2").dgca;
  auto f2 = CP2.gen("f2");
  EXPECT_THROW(linear_concordance(CP2, 5, CP2.zero(), pow(f2, 3), CP2.zero()), PreconditionError);
}

TEST(Concordance, ExtractionRecoversAPrimitive) {
  const Dgca& CP2 = corpus_entry("CP2").dgca;
  auto f2 = CP2.gen("f2");
  auto F0 = Rational(2) * pow(f2, 3), F1 = Rational(-1, 3) * pow(f2, 3);
  auto C = decide_concordance(line_datum(CP2, 5, F0), line_datum(CP2, 5, F1));
  ASSERT_TRUE(C);
  EXPECT_TRUE(verify_concordance(*C).pass());
  EXPECT_EQ(CP2.apply_d(extract_line_witness(*C)), F1 - F0);
  EXPECT_FALSE(decide_concordance(line_datum(CP2, 1, f2), line_datum(CP2, 1, Rational(2) * f2)));
}

TEST(Concordance, BrokenEndpointsAreReported) {
  const Dgca& CP2 = corpus_entry("CP2").dgca;
  auto f2 = CP2.gen("f2");
  auto C = linear_concordance(CP2, 5, CP2.zero(), pow(f2, 3), CP2.gen("h5"));
  C.end = line_datum(CP2, 5, CP2.zero()).assignment;
  auto r = verify_concordance(C);
  ASSERT_EQ(r.endpoints.size(), 1u);
  EXPECT_EQ(r.endpoints[0].endpoint, "ev1");
}

TEST(Concordance, NonLineCoefficientsAreVerificationOnly) {
  const Dgca& S4 = corpus_entry("S4").dgca;
  FlatFormDatum F{S4, S4, AlgebraMorphism::identity(S4.generators())};
  EXPECT_THROW(decide_concordance(F, F), VerificationOnlyError);
}

TEST(LineQuotient, ClassesMatchCohomology) {
  struct Case {
    const char* name;
    int n;
    std::size_t points;
    std::size_t classes;
  };
  for (const auto& c : std::vector<Case>{{"S3", 2, 5, 5}, {"S3", 0, 1, 1}, {"T3", 0, 125, 125},
                                         {"T3", 1, 125, 125}, {"T3", 2, 5, 5}, {"CP2", 3, 5, 5}}) {
    auto r = line_quotient(corpus_entry(c.name).dgca, c.n, 2);
    EXPECT_TRUE(r.pass()) << c.name << " n=" << c.n;
    EXPECT_EQ(r.lattice_points, c.points) << c.name << " n=" << c.n;
    EXPECT_EQ(r.concordance_classes, c.classes) << c.name << " n=" << c.n;
  }
}

TEST(LineQuotient, ExactFormsCollapse) {
  // In CP2, Z^6 is spanned by f2^3, which is exact: one class for the whole lattice.
  auto r = line_quotient(corpus_entry("CP2").dgca, 5, 2);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.lattice_points, 5u);
  EXPECT_EQ(r.concordance_classes, 1u);
  EXPECT_EQ(r.cohomology_dimension, 0u);
}

TEST(TwistedKu1, DataAndConcordance) {
  const Dgca& T3 = corpus_entry("T3").dgca;
  auto x = T3.gen("x"), y = T3.gen("y"), z = T3.gen("z");
  auto H = x * y * z;
  auto F0 = x + Rational(2) * y;
  EXPECT_TRUE(verify_twisted_flat(twisted_ku1_datum(T3, H, F0)).pass());
  // D(1) = -H, so F0 - H is twisted-cohomologous to F0.
  auto F1 = F0 - H;
  auto C = decide_twisted_ku1_concordance(T3, H, F0, F1);
  ASSERT_TRUE(C);
  EXPECT_TRUE(verify_concordance(*C).pass());
  auto h = extract_twisted_ku1_witness(*C);
  EXPECT_EQ(T3.apply_d(h) - H * h, F1 - F0);
  EXPECT_FALSE(decide_twisted_ku1_concordance(T3, H, F0, x));
}

TEST(TwistedKu1, TriangleFailure) {
  const Dgca& S3 = corpus_entry("S3").dgca;
  auto w = S3.gen("w3");
  auto T = twisted_ku1_datum(S3, w, w);
  EXPECT_TRUE(verify_twisted_flat(T).pass());
  // Sending h3 to zero instead of the twist breaks the triangle.
  T.assignment = AlgebraMorphism::from_assignment(T.bundle.total().generators(), S3.generators(),
                                                  {{"h3", S3.zero()}, {"f3", w}}, true);
  auto r = verify_twisted_flat(T);
  EXPECT_FALSE(r.pass());
  ASSERT_EQ(r.triangle.size(), 1u);
  EXPECT_EQ(r.triangle[0].generator, "h3");
}

TEST(TwistedKu1, BridgeOnTheTorus) {
  const Dgca& T3 = corpus_entry("T3").dgca;
  auto r = twisted_ku1_bridge(T3, T3.gen("x") * T3.gen("y") * T3.gen("z"), 1);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.twisted_classes, 3u);
  EXPECT_EQ(r.concordance_classes, r.cohomology_classes);
  EXPECT_EQ(r.mismatches, 0u);
}

TEST(TwistedKu1, CofiberIsUntwisted) {
  EXPECT_EQ(cofiber(twisted_ku1_bundle(9)), ku1_algebra(9));
}

TEST(Twistorial, PresetVerifies) {
  auto P = preset_twistorial();
  auto r = verify_twistorial(P);
  EXPECT_TRUE(r.d_squared.pass());
  EXPECT_TRUE(r.datum.pass());
  EXPECT_TRUE(r.pushforward.pass());
  ASSERT_TRUE(r.charge_witness);
  EXPECT_TRUE(r.witness_is_H3);
  EXPECT_TRUE(r.pass());
  const Dgca& U = r.untwisted;
  EXPECT_EQ(U.differential("H3"), U.gen("G4") - pow(U.gen("F2"), 2));
  EXPECT_EQ(U.differential("G7"), Rational(-1, 2) * pow(U.gen("G4"), 2));
}

TEST(Twistorial, CorpusFileMatchesPreset) {
  auto P = preset_twistorial();
  const auto& model = corpus_entry("twistorial").model;
  ASSERT_NE(model.find_algebra("twistorial"), nullptr);
  EXPECT_EQ(*model.find_algebra("twistorial"), P.omega);
  EXPECT_EQ(model.find_morphism("phi")->map, P.datum.assignment);
}

TEST(Twistorial, BrokenTriangleIsDetected) {
  auto P = preset_twistorial();
  const Dgca& E = P.datum.bundle.total();
  std::map<std::string, Polynomial> map;
  for (std::size_t i = 0; i < E.size(); ++i) map[E.gens()[i].name] = P.datum.assignment.image(i);
  map["half_p1"] = P.omega.gen("q");
  P.datum.assignment = AlgebraMorphism::from_assignment(E.generators(), P.omega.generators(), map);
  auto r = verify_twistorial(P);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.datum.triangle.empty());
}
