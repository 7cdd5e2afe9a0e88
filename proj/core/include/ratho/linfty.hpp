#pragma once

// The Chevalley-Eilenberg <-> L-infinity dictionary, Sullivan (nilpotency)
// certificates, minimality, and Whitehead summaries.
//
// Conventions. Generator g_i of CE degree n corresponds to a basis element v_i
// of degree n-1. For a non-decreasing index tuple a = (a_1..a_k) the symmetric
// bracket {v_a1,...,v_ak} has c-component equal to the coefficient of the
// canonical monomial g_a1*...*g_ak in d(g_c). The stored (skew) bracket is
//
//   [v_a1,...,v_ak] = (-1)^(k + sum_{i <= k/2} deg v_ai) {v_a1,...,v_ak}.
//
// Worked example, su(2) with d t1 = t2*t3, d t2 = -t1*t3, d t3 = t1*t2 (all
// v_i in degree 0): {v1,v2} = v3, sign (-1)^(2+0) = +1, so [v1,v2] = v3,
// [v1,v3] = -v2, [v2,v3] = v1. For S^4 (d w7 = -w4^2, v3 := dual of w4):
// {v3,v3} = -v6 and the sign (-1)^(2+3) = -1 gives [v3,v3] = v6.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratho/dgca.hpp"

namespace ratho {

struct LInfinityBasisElement {
  std::string name;  // name of the dual CE generator
  int degree = 0;    // CE degree - 1

  friend bool operator==(const LInfinityBasisElement&, const LInfinityBasisElement&) = default;
};

struct LInfinityStructure {
  std::vector<LInfinityBasisElement> basis;
  /// Non-decreasing index tuple -> coefficient vector over the basis (skew convention).
  std::map<std::vector<std::size_t>, std::vector<Rational>> brackets;

  std::size_t size() const { return basis.size(); }
  /// Nonzero brackets of the given arity.
  std::size_t count(std::size_t arity) const;
  /// Sign (-1)^(k + sum_{i<=k/2} deg a_i) relating the skew and symmetric brackets.
  int skew_sign(const std::vector<std::size_t>& args) const;
  /// [a_1,...,a_k] for arbitrary argument order, using graded symmetry of {...}.
  std::vector<Rational> bracket(const std::vector<std::size_t>& args) const;
  /// {a_1,...,a_k} for arbitrary argument order.
  std::vector<Rational> symmetric_bracket(const std::vector<std::size_t>& args) const;

  friend bool operator==(const LInfinityStructure&, const LInfinityStructure&) = default;
};

/// Reads brackets off the word-length-k parts of the differential. Requires d^2 = 0.
LInfinityStructure brackets_from_ce(const Dgca& A);

/// Inverse of brackets_from_ce. Throws PreconditionError on degree bookkeeping violations.
Dgca ce_from_brackets(const LInfinityStructure& L, std::string name = "CE");

/// Jacobi failures are reported as the d^2 residuals of the dual generators.
DSquaredReport check_jacobi(const LInfinityStructure& L);

/// How Lie structure constants f[a][b][c] (= f_ab^c) are read.
enum class LieInput {
  kOrderedPairs,   // d t^c = sum_{a<b} f_ab^c t^a t^b
  kUnorderedSum,   // d t^c = sum_{a,b} f_ab^c t^b t^a, taken literally
};

/// CE algebra of a Lie algebra on generators named names[i] (degree 1).
Dgca ce_of_lie_algebra(const std::vector<std::string>& names,
                       const std::vector<std::vector<std::vector<Rational>>>& f,
                       LieInput convention = LieInput::kOrderedPairs, std::string name = "CE");

struct SullivanCertificate {
  std::vector<std::size_t> order;  // witness order when Sullivan
  std::vector<std::size_t> cycle;  // g0 -> g1 -> ... -> g0 (first repeated at the end)
  bool is_sullivan() const { return cycle.empty(); }
};

/// Dependency digraph: g depends on every generator occurring in d(g). Self-loops are cycles.
SullivanCertificate is_sullivan(const Dgca& A);
/// Same, restricted to the generators with relevant[i] set; dependencies on the rest are ignored.
SullivanCertificate is_sullivan_relative(const Dgca& A, const std::vector<bool>& relative);

struct MinimalityReport {
  bool minimal = false;
  std::vector<std::size_t> offenders;
};

MinimalityReport is_minimal(const Dgca& A);

/// CE degree -> number of generators (dim pi_n (x) Q). Throws PreconditionError
/// unless A is minimal with all generators in degree >= 2.
std::map<int, int> whitehead_summary(const Dgca& A);

}  // namespace ratho
