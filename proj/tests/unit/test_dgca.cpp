#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "ratho/corpus.hpp"
#include "ratho/dgca.hpp"
#include "ratho/errors.hpp"
#include "ratho/random.hpp"

using namespace ratho;

namespace {

std::vector<std::size_t> dims(const Dgca& A, int hi) {
  std::vector<std::size_t> out;
  for (const auto& s : cohomology(A, 0, hi)) out.push_back(s.dimension);
  return out;
}

std::vector<std::size_t> indicator(int hi, std::initializer_list<int> degrees) {
  std::vector<std::size_t> out(hi + 1, 0);
  for (int d : degrees) out[d] = 1;
  return out;
}

}  // namespace

TEST(Dgca, CorpusSatisfiesDSquared) {
  for (const auto& e : corpus())
    for (const auto& A : e.model.algebras) EXPECT_TRUE(check_d_squared(A).pass()) << e.name << "/" << A.name();
}

TEST(Dgca, DSquaredFailureNamesTheGenerator) {
  auto g = make_generators({{"a", 1}, {"b", 2}, {"c", 2}});
  auto a = Polynomial::generator(g, 0), b = Polynomial::generator(g, 1);
  Dgca A("bad", g, {b, Polynomial(g), a * b});
  auto r = check_d_squared(A);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].generator, 2u);
  EXPECT_EQ(r.failures[0].residual, b * b);
}

TEST(Dgca, DifferentialIsADerivation) {
  std::mt19937_64 rng(5);
  for (const char* name : {"CP2", "twistor", "string_su2", "ku1_twisted"}) {
    const Dgca& A = corpus_entry(name).dgca;
    for (int trial = 0; trial < 15; ++trial) {
      int p = 1 + trial % 6;
      auto x = random_homogeneous(A.generators(), p, rng);
      auto y = random_element(A.generators(), 0, 8, rng);
      Rational sign = p % 2 ? -1 : 1;
      EXPECT_EQ(A.apply_d(x * y), A.apply_d(x) * y + sign * (x * A.apply_d(y))) << name;
      EXPECT_TRUE(A.apply_d(A.apply_d(y)).is_zero()) << name;
    }
  }
}

TEST(Dgca, DifferentialAgreesWithWordOracle) {
  std::mt19937_64 rng(9);
  for (const auto& e : corpus()) {
    auto W = oracle::from_dgca(e.dgca);
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_element(e.dgca.generators(), 0, 9, rng);
      EXPECT_EQ(oracle::from_poly(e.dgca.apply_d(x)), oracle::differential(W, oracle::from_poly(x))) << e.name;
    }
  }
}

TEST(Dgca, SphereAndProjectiveCohomology) {
  EXPECT_EQ(dims(corpus_entry("S3").dgca, 9), indicator(9, {0, 3}));
  EXPECT_EQ(dims(corpus_entry("S4").dgca, 12), indicator(12, {0, 4}));
  EXPECT_EQ(dims(corpus_entry("S2").dgca, 10), indicator(10, {0, 2}));
  EXPECT_EQ(dims(corpus_entry("CP3").dgca, 8), indicator(8, {0, 2, 4, 6}));
  EXPECT_EQ(dims(corpus_entry("CP1").dgca, 8), indicator(8, {0, 2}));
}

TEST(Dgca, CohomologyMatchesDenseOracleOnCorpus) {
  for (const auto& e : corpus()) {
    bool has_degree_zero = false;
    for (const auto& g : e.dgca.gens()) has_degree_zero = has_degree_zero || g.degree == 0;
    if (has_degree_zero) continue;
    int hi = 10;
    EXPECT_EQ(dims(e.dgca, hi), oracle::cohomology_dims(oracle::from_dgca(e.dgca), 0, hi)) << e.name;
  }
}

TEST(Dgca, RepresentativesAreClosedAndNotExact) {
  const Dgca& A = corpus_entry("CP3").dgca;
  for (const auto& s : cohomology(A, 0, 8))
    for (const auto& r : s.representatives) {
      EXPECT_TRUE(A.apply_d(r).is_zero());
      EXPECT_FALSE(is_exact(A, r).has_value()) << r.to_string();
    }
}

TEST(Dgca, ExactnessWitness) {
  const Dgca& A = corpus_entry("S4").dgca;
  auto w4 = A.gen("w4");
  auto target = pow(w4, 2);
  auto h = is_exact(A, target);
  ASSERT_TRUE(h);
  EXPECT_EQ(A.apply_d(*h), target);
  EXPECT_FALSE(is_exact(A, w4));
  EXPECT_THROW(is_exact(A, A.gen("w7")), PreconditionError);
}

TEST(Dgca, ChainMapsAndQuasiIsomorphisms) {
  const Dgca& A = corpus_entry("S4").dgca;
  auto id = AlgebraMorphism::identity(A.generators());
  EXPECT_FALSE(chain_map_failure(A, A, id));
  EXPECT_TRUE(is_quasi_iso(A, A, id, 0, 12).quasi_iso());
  auto bad = AlgebraMorphism::from_assignment(A.generators(), A.generators(), {{"w4", A.gen("w4")}}, true);
  auto w = chain_map_failure(A, A, bad);
  ASSERT_TRUE(w);
  EXPECT_EQ(A.gens()[w->generator].name, "w7");
  EXPECT_THROW(is_quasi_iso(A, A, bad, 0, 8), PreconditionError);
}

TEST(Dgca, KunnethForTensorProducts) {
  const Dgca& S4 = corpus_entry("S4").dgca;
  const Dgca& S3 = corpus_entry("S3").dgca;
  Dgca P = tensor(S4, S3);
  auto a = dims(S4, 10), b = dims(S3, 10), p = dims(P, 10);
  for (int n = 0; n <= 10; ++n) {
    std::size_t expected = 0;
    for (int i = 0; i <= n; ++i) expected += a[i] * b[n - i];
    EXPECT_EQ(p[n], expected) << n;
  }
  auto inc = inclusion_by_name(S3, P);
  EXPECT_FALSE(chain_map_failure(S3, P, inc));
}
