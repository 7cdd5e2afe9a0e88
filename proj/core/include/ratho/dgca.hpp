#pragma once

// Semi-free differential graded-commutative algebras: the differential is a
// degree +1 derivation determined by its values on generators.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratho/algebra.hpp"
#include "ratho/linear_span.hpp"

namespace ratho {

class Dgca {
 public:
  Dgca() = default;
  /// differentials[i] = d(generator i); each must be homogeneous of degree |g|+1 or zero.
  Dgca(std::string name, GeneratorSetPtr gens, std::vector<Polynomial> differentials);

  static Dgca ground(std::string name = "Q");

  const std::string& name() const { return name_; }
  const GeneratorSetPtr& generators() const { return gens_; }
  const GeneratorSet& gens() const { return *gens_; }
  std::size_t size() const { return gens_->size(); }
  const std::vector<Polynomial>& differentials() const { return d_; }
  const Polynomial& differential(std::size_t i) const { return d_[i]; }
  const Polynomial& differential(std::string_view name) const { return d_[gens_->index_of(name)]; }

  Polynomial gen(std::string_view name) const { return Polynomial::generator(gens_, name); }
  Polynomial gen(std::size_t i) const { return Polynomial::generator(gens_, i); }
  Polynomial one() const { return Polynomial::one(gens_); }
  Polynomial zero() const { return Polynomial(gens_); }

  /// Graded Leibniz extension of the generator assignment.
  Polynomial apply_d(const Polynomial& p) const;

  Dgca renamed(std::string name) const;

  /// Same generators and same differential.
  friend bool operator==(const Dgca& a, const Dgca& b);

 private:
  std::string name_;
  GeneratorSetPtr gens_;
  std::vector<Polynomial> d_;
};

Polynomial apply_d(const Dgca& A, const Polynomial& p);

struct DSquaredFailure {
  std::size_t generator;
  Polynomial residual;  // d(d(g))
};

struct DSquaredReport {
  std::vector<DSquaredFailure> failures;
  bool pass() const { return failures.empty(); }
};

DSquaredReport check_d_squared(const Dgca& A);

/// One degree of the cochain cohomology of A.
struct CohomologySlice {
  int degree = 0;
  std::size_t dimension = 0;
  std::vector<Polynomial> representatives;
  std::vector<Monomial> basis;          // monomial basis of A^n used
  std::vector<Polynomial> cocycles;     // basis of ker d_n, echelon order
  LinearSpan<Polynomial> boundaries;    // im d_{n-1}, witnesses are preimages
  std::size_t rank_out = 0;             // rank of d_n : A^n -> A^{n+1}
};

/// Cohomology in degrees lo..hi inclusive. Degree-0 generators require polybound;
/// then cocycles have degree-0 exponents <= polybound and primitives may reach
/// polybound + 1, i.e. the image of H(A_P) in H(A_{P+1}).
std::vector<CohomologySlice> cohomology(const Dgca& A, int lo, int hi,
                                        std::optional<int> polybound = std::nullopt);
CohomologySlice cohomology_slice(const Dgca& A, int n, std::optional<int> polybound = std::nullopt);

/// Returns q with dq = p, or nullopt if p is not exact (within the slice).
/// Throws PreconditionError if p is not closed or not homogeneous.
std::optional<Polynomial> is_exact(const Dgca& A, const Polynomial& p,
                                   std::optional<int> polybound = std::nullopt);

struct ChainMapWitness {
  std::size_t generator;
  Polynomial residual;  // d(phi g) - phi(d g)
};

/// nullopt when phi commutes with the differentials on every generator.
std::optional<ChainMapWitness> chain_map_failure(const Dgca& source, const Dgca& target,
                                                 const AlgebraMorphism& phi);

struct QuasiIsoDegree {
  int degree;
  std::size_t source_dimension;
  std::size_t target_dimension;
  std::size_t induced_rank;
  bool bijective() const {
    return source_dimension == target_dimension && induced_rank == source_dimension;
  }
};

struct QuasiIsoReport {
  int lo = 0;
  int hi = 0;
  std::vector<QuasiIsoDegree> degrees;
  bool quasi_iso() const {
    for (const auto& d : degrees)
      if (!d.bijective()) return false;
    return true;
  }
};

/// Range-bounded quasi-isomorphism certification. Throws PreconditionError if
/// phi is not a chain map.
QuasiIsoReport is_quasi_iso(const Dgca& source, const Dgca& target, const AlgebraMorphism& phi, int lo,
                            int hi, std::optional<int> source_polybound = std::nullopt,
                            std::optional<int> target_polybound = std::nullopt);

/// A (x) B. Generator names must be disjoint unless rename is supplied, which
/// maps each name of B to the name used in the product.
Dgca tensor(const Dgca& A, const Dgca& B,
            const std::function<std::string(const std::string&)>& rename = {});

/// Dgca morphism from a generator-wise inclusion: every generator of sub appears in total by name.
AlgebraMorphism inclusion_by_name(const Dgca& sub, const Dgca& total);

}  // namespace ratho
