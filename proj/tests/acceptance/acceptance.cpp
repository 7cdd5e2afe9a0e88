// Acceptance suite: one PASS/FAIL line per criterion. Exits 1 if any fails.

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "cli_cases.hpp"
#include "commands.hpp"
#include "fuzz.hpp"
#include "oracle.hpp"
#include "ratho/character.hpp"
#include "ratho/chern_weil.hpp"
#include "ratho/corpus.hpp"
#include "ratho/dsl.hpp"
#include "ratho/linfty.hpp"
#include "ratho/minimal_model.hpp"
#include "ratho/random.hpp"
#include "ratho/simplicial_forms.hpp"
#include "ratho/twisted_derham.hpp"
#include "schema_check.hpp"

using namespace ratho;

namespace {

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && first_.empty()) first_ = what;
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  const std::string& first_failure() const { return first_; }

 private:
  bool ok_ = true;
  std::string first_;
};

struct Criterion {
  int id;
  std::string title;
  std::optional<double> seconds;  // runtime cap
  std::function<void(Check&)> body;
};

Polynomial product_of(const Dgca& A, const std::string& names) {
  Polynomial p = A.one();
  for (char c : names) p = p * A.gen(std::string(1, c));
  return p;
}

std::vector<std::size_t> dims(const Dgca& A, int hi) {
  std::vector<std::size_t> out;
  for (const auto& s : cohomology(A, 0, hi)) out.push_back(s.dimension);
  return out;
}

std::vector<std::size_t> indicator(int hi, std::set<int> nonzero) {
  std::vector<std::size_t> out(hi + 1, 0);
  for (int n : nonzero) out[n] = 1;
  return out;
}

Dgca symbols(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  return symbol_algebra(names);
}

CurvatureMatrix generic_antisymmetric(const Dgca& S, std::size_t n) {
  PolyMatrix M(n, std::vector<Polynomial>(n, S.zero()));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      M[i][j] = S.gen(k);
      M[j][i] = -S.gen(k++);
    }
  return CurvatureMatrix(S.generators(), M, true);
}

CurvatureMatrix random_matrix(const Dgca& S, std::size_t n, std::mt19937_64& rng, bool antisymmetric) {
  RandomElementOptions opts;
  opts.max_terms = 2;
  opts.coefficient_bound = 2;
  PolyMatrix M(n, std::vector<Polynomial>(n, S.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = antisymmetric ? i + 1 : 0; j < n; ++j) {
      M[i][j] = random_homogeneous(S.generators(), 2, rng, opts);
      if (antisymmetric) M[j][i] = -M[i][j];
    }
  return CurvatureMatrix(S.generators(), M, antisymmetric);
}

Polynomial truncate(const Polynomial& p, int top) {
  Polynomial out(p.generators());
  for (int d : p.degrees())
    if (d <= top) out += p.component(d);
  return out;
}

const Dgca* find(const std::string& file, const std::string& algebra) {
  return corpus_entry(file).model.find_algebra(algebra);
}

void corpus_soundness(Check& c) {
  std::vector<std::pair<std::string, std::string>> required = {
      {"S2", "S2"}, {"S3", "S3"}, {"S4", "S4"}, {"S5", "S5"}, {"CP1", "CP1"}, {"CP2", "CP2"}, {"CP3", "CP3"},
      {"string_su2", "string_su2"}, {"ku1", "ku1"}, {"ku1_twisted", "ku1_twisted"}, {"twistor", "twistor"},
      {"twistor", "bsp2"}, {"heisenberg", "heisenberg"}, {"su2", "su2"}};
  for (int n = 0; n <= 8; ++n) required.push_back({"b" + std::to_string(n), "b" + std::to_string(n)});
  for (const auto& [file, name] : required) {
    const Dgca* A = find(file, name);
    c.require(A != nullptr, "missing " + file + "/" + name);
    if (A) c.require(check_d_squared(*A).pass(), "d^2 != 0 on " + name);
  }
  for (const auto& e : corpus())
    for (const auto& A : e.model.algebras) c.require(check_d_squared(A).pass(), "d^2 != 0 on " + e.name);
  const Dgca* ku = find("ku1", "ku1");
  if (ku) c.require(ku->gens()[ku->size() - 1].degree == 9, "ku1 not truncated at degree 9");
}

void sphere_cohomology(Check& c) {
  c.require(dims(corpus_entry("S3").dgca, 9) == indicator(9, {0, 3}), "S3");
  c.require(dims(corpus_entry("S4").dgca, 12) == indicator(12, {0, 4}), "S4");
  c.require(dims(corpus_entry("CP3").dgca, 8) == indicator(8, {0, 2, 4, 6}), "CP3");
}

void minimal_model_reconstruction(Check& c) {
  const Dgca& A = corpus_entry("twistor_cofiber").dgca;
  auto r = minimal_model(A, 8);
  c.require(r.generator_counts == std::map<int, int>{{2, 1}, {7, 1}}, "generator counts");
  if (r.model.size() != 2) return;
  auto f4 = pow(r.model.gen(std::size_t{0}), 4);
  const auto& dh = r.model.differential(1);
  Rational coeff = dh.coefficient(f4.terms().begin()->first);
  c.require(coeff != 0 && dh == coeff * f4, "dh7 = c f2^4 with c != 0");
  c.require(!chain_map_failure(r.model, A, r.comparison), "comparison is a chain map");
  c.require(is_quasi_iso(r.model, A, r.comparison, 0, 8).quasi_iso(), "quasi-iso through degree 8");
  c.require(r.certificate.quasi_iso(), "certificate");
}

void sullivan(Check& c) {
  const Dgca& su2 = corpus_entry("su2").dgca;
  auto cert = is_sullivan(su2);
  c.require(!cert.is_sullivan() && cert.cycle.size() == 4 && cert.cycle.front() == cert.cycle.back(),
            "su2 3-cycle");
  for (std::size_t i = 0; i + 1 < cert.cycle.size(); ++i)
    c.require(oracle::depends(su2, cert.cycle[i], cert.cycle[i + 1]), "su2 cycle edge");
  auto h = is_sullivan(corpus_entry("heisenberg").dgca);
  c.require(h.is_sullivan() && h.order == std::vector<std::size_t>{0, 1, 2}, "heisenberg order");
  for (const auto& e : corpus())
    for (const auto& A : e.model.algebras) {
      if (A.size() > 7) continue;
      auto s = is_sullivan(A);
      c.require(s.is_sullivan() == oracle::sullivan_order_by_permutation(A).has_value(), "brute force " + A.name());
      if (!s.is_sullivan()) continue;
      std::vector<std::size_t> pos(A.size());
      for (std::size_t i = 0; i < s.order.size(); ++i) pos[s.order[i]] = i;
      for (std::size_t g = 0; g < A.size(); ++g)
        for (std::size_t k = 0; k < A.size(); ++k)
          if (oracle::depends(A, g, k)) c.require(pos[k] < pos[g], "order on " + A.name());
    }
}

void linfty(Check& c) {
  for (const auto& e : corpus())
    for (const auto& A : e.model.algebras) {
      auto L = brackets_from_ce(A);
      c.require(ce_from_brackets(L, A.name()) == A, "roundtrip " + A.name());
    }
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    auto L = fuzz::random_bracket_table(rng);
    c.require(L.basis.size() <= 4, "basis size");
    Dgca A = ce_from_brackets(L);
    bool jacobi = check_jacobi(L).pass();
    c.require(jacobi == check_d_squared(A).pass(), "check_jacobi vs check_d_squared");
    auto W = oracle::from_dgca(A);
    bool dense = true;
    for (std::size_t g = 0; g < A.size(); ++g)
      dense = dense && oracle::differential(W, oracle::differential(W, {{{static_cast<int>(g)}, 1}})).empty();
    c.require(jacobi == dense, "check_jacobi vs word d^2");
  }
}

void twisted_oracle(Check& c) {
  const Dgca& S3 = corpus_entry("S3").dgca;
  const Dgca& T3 = corpus_entry("T3").dgca;
  struct Case {
    const Dgca* A;
    Polynomial H;
    std::vector<std::size_t> expected;
  };
  std::vector<Case> cases = {{&S3, S3.gen("w3"), {0, 0}}, {&S3, S3.zero(), {1, 1}}, {&T3, product_of(T3, "xyz"), {3, 3}}};
  std::size_t total = 0;
  for (int n = 0; n <= 3; ++n) total += oracle::words_of_degree(oracle::from_dgca(T3), n).size();
  c.require(total == 8, "T3 has an 8-dimensional total space");
  std::mt19937_64 rng(31);
  for (const auto& k : cases) {
    TwistedComplex C(*k.A, k.H, 1);
    auto H = twisted_cohomology(C);
    c.require(H.dimensions() == k.expected && !H.approximate, k.A->name() + " H=" + k.H.to_string());
    c.require(H.dimensions() == oracle::twisted_dims(oracle::from_dgca(*k.A), oracle::from_poly(k.H), 1),
              "oracle " + k.A->name());
    for (int trial = 0; trial < 30; ++trial) {
      auto x = random_element(k.A->generators(), 0, C.top_degree(), rng);
      c.require(twisted_d(C, twisted_d(C, x)).is_zero(), "D^2 on " + k.A->name());
    }
  }
}

void chern_weil(Check& c) {
  for (std::size_t n : {2u, 4u}) {
    Dgca S = symbols(static_cast<int>(n * (n - 1) / 2));
    auto Phi = generic_antisymmetric(S, n);
    auto pf = pfaffian(Phi);
    c.require(pf * pf == determinant(Phi.entries(), S.generators()), "Pf^2 = det");
    c.require(pf == oracle::pfaffian_by_permutations(Phi.entries(), S.generators()), "Pf oracle");
  }
  std::mt19937_64 rng(12);
  Dgca S = symbols(3);
  for (int trial = 0; trial < 5; ++trial) {
    auto Phi = random_matrix(S, 3, rng, false);
    auto ck = chern_forms(Phi, 4);
    std::vector<Polynomial> e{S.one()};
    e.insert(e.end(), ck.begin(), ck.end());
    for (unsigned k = 1; k <= 4; ++k) {
      Polynomial rhs = S.zero();
      for (unsigned i = 1; i <= k; ++i) rhs.axpy(i % 2 ? 1 : -1, e[k - i] * trace_power(Phi, i));
      c.require(Rational(k) * e[k] == rhs, "Newton k=" + std::to_string(k));
    }
    c.require(determinant(Phi.entries(), S.generators()) == oracle::det_by_permutations(Phi.entries(), S.generators()),
              "det oracle");
  }
  for (int trial = 0; trial < 4; ++trial) {
    auto A = random_matrix(S, 2, rng, false), B = random_matrix(S, 3, rng, false);
    c.require(chern_character(CurvatureMatrix::block_sum(A, B), 8) == chern_character(A, 8) + chern_character(B, 8),
              "ch additivity");
    auto P = random_matrix(S, 2, rng, true), Q = random_matrix(S, 4, rng, true);
    c.require(truncate(total_pontrjagin_form(CurvatureMatrix::block_sum(P, Q)), 8) ==
                  truncate(total_pontrjagin_form(P) * total_pontrjagin_form(Q), 8),
              "Whitney");
  }
  auto g = make_generators({{"p1", 4}, {"p2", 8}});
  auto p1 = Polynomial::generator(g, 0), p2 = Polynomial::generator(g, 1);
  c.require(Rational(48) * i8(p1, p2) + Rational(1, 4) * (p1 * p1) == p2, "I8");
}

void stokes(Check& c) {
  std::mt19937_64 rng(77);
  for (const auto& e : corpus()) {
    CylinderAlgebra C(e.dgca);
    int top = 0;
    for (const auto& g : e.dgca.gens()) top += g.degree;
    top = std::min(top, 10);
    for (int trial = 0; trial < 30; ++trial) {
      auto w = random_element(C.algebra().generators(), 0, top + 1, rng);
      auto b = random_element(e.dgca.generators(), 0, top, rng);
      c.require(stokes_residual(C, w).is_zero(), "Stokes on " + e.name);
      c.require(projection_residual(C, b, w).is_zero(), "projection on " + e.name);
    }
  }
}

void line_subsumption(Check& c) {
  for (auto [name, n] : std::vector<std::pair<std::string, int>>{{"S3", 2}, {"T3", 0}, {"T3", 1}, {"T3", 2}}) {
    const Dgca& A = corpus_entry(name).dgca;
    auto r = line_quotient(A, n, 2);
    std::string label = name + " n=" + std::to_string(n);
    c.require(r.pass(), label);
    c.require(r.pairs_checked > 0, label + " pairs");
    std::size_t h = oracle::cohomology_dims(oracle::from_dgca(A), n + 1, n + 1)[0];
    std::size_t classes = 1;
    for (std::size_t i = 0; i < h; ++i) classes *= 5;
    c.require(r.cohomology_dimension == h && r.concordance_classes == classes, label + " class count");
  }
}

void twisted_bridge(Check& c) {
  const Dgca& T3 = corpus_entry("T3").dgca;
  auto H = product_of(T3, "xyz");
  auto r = twisted_ku1_bridge(T3, H, 1);
  c.require(r.pass(), "bridge report");
  c.require(r.twisted_classes == oracle::twisted_dims(oracle::from_dgca(T3), oracle::from_poly(H), 1)[1],
            "odd residue dimension");
  c.require(r.lattice_points > 1 && r.concordance_classes > 1, "nontrivial lattice");
}

void twistorial(Check& c) {
  auto r = verify_twistorial(preset_twistorial());
  c.require(r.d_squared.pass(), "d^2");
  c.require(r.datum.pass(), "twistor leg");
  c.require(r.pushforward.pass(), "S4 leg");
  c.require(r.charge_witness.has_value() && r.witness_is_H3, "charge witness H3");
  c.require(r.pass(), "overall");
}

void cli_contract(Check& c) {
  for (const auto& e : corpus()) {
    auto printed = print_model(e.model);
    auto again = parse_model(printed);
    c.require(again == e.model && print_model(again) == printed, "round trip " + e.name);
  }
  std::mt19937_64 rng(20261014);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = fuzz::random_model(rng);
    auto printed = print_model(m);
    try {
      c.require(parse_model(printed) == m, "fuzzed round trip");
    } catch (const Error& e) {
      c.require(false, std::string("fuzzed file rejected: ") + e.what());
    }
  }
  std::ifstream in(RATHO_SCHEMA_PATH);
  c.require(bool(in), "schema file");
  if (!in) return;
  auto schema = nlohmann::json::parse(in);
  auto dir = std::filesystem::temp_directory_path() / ("ratho_acceptance_" + std::to_string(::getpid()));
  cli_cases::write_fixtures(dir);
  std::set<std::string> covered;
  for (auto k : cli_cases::contract(dir)) {
    std::ostringstream out, err;
    std::string label;
    for (const auto& a : k.args) label += a + " ";
    c.require(cli::run(k.args, out, err) == k.code, "exit code: " + label);
    if (k.code == 2) continue;
    k.args.push_back("--json");
    std::ostringstream jout, jerr;
    int code = cli::run(k.args, jout, jerr);
    c.require(code == k.code, "json exit code: " + label);
    try {
      auto doc = nlohmann::json::parse(jout.str());
      c.require(schema::validate(schema, doc).empty(), "schema: " + label);
      c.require(doc["result"]["pass"] == (code == 0), "pass flag: " + label);
    } catch (const nlohmann::json::exception&) {
      c.require(false, "json parse: " + label);
    }
    covered.insert(k.args[0]);
  }
  std::filesystem::remove_all(dir);
  for (const auto& name : cli::command_names()) c.require(covered.count(name) > 0, "no case for " + name);
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "corpus soundness", 1.0, corpus_soundness},
      {2, "sphere and projective cohomology", 2.0, sphere_cohomology},
      {3, "minimal model of the twistor cofiber", 10.0, minimal_model_reconstruction},
      {4, "Sullivan condition", std::nullopt, sullivan},
      {5, "L-infinity round trip and Jacobi", std::nullopt, linfty},
      {6, "twisted cohomology oracle", 1.0, twisted_oracle},
      {7, "Chern-Weil identities", 2.0, chern_weil},
      {8, "Stokes and projection formulas", std::nullopt, stokes},
      {9, "line coefficients recover de Rham cohomology", 5.0, line_subsumption},
      {10, "twisted ku1 bridge", 10.0, twisted_bridge},
      {11, "twistorial preset", 1.0, twistorial},
      {12, "CLI contract", std::nullopt, cli_contract},
  };
  // Parse the corpus once so the first timed criterion does not pay for it.
  corpus();
  int failures = 0;
  for (const auto& k : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      k.body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (k.seconds && elapsed > *k.seconds) check.require(false, "over time limit");
    std::ostringstream line;
    line << (check.ok() ? "PASS" : "FAIL") << "  [" << k.id << "] " << k.title << "  (" << std::fixed;
    line.precision(1);
    line << elapsed * 1e3 << " ms";
    if (k.seconds) line << " / limit " << *k.seconds * 1e3 << " ms";
    line << ")";
    if (!check.ok()) line << "  " << check.first_failure();
    std::cout << line.str() << std::endl;
    failures += !check.ok();
  }
  return failures ? 1 : 0;
}
