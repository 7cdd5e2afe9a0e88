#pragma once

// Free graded-commutative algebras over Q: generators, Koszul-signed monomials,
// polynomials and multiplicative generator assignments.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ratho {

using Rational = mpq_class;

std::string to_string(const Rational& q);

struct Generator {
  std::string name;
  int degree = 0;

  bool odd() const { return degree % 2 != 0; }
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// An ordered, immutable list of generators. The declaration order is the
/// canonical monomial order.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  explicit GeneratorSet(std::vector<Generator> gens);

  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }
  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws StructuralError if the name is unknown.
  std::size_t index_of(std::string_view name) const;

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) { return a.gens_ == b.gens_; }

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, std::size_t> index_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

GeneratorSetPtr make_generators(std::vector<Generator> gens);

/// True when both pointers denote the same generator list (identical or equal).
bool same_generators(const GeneratorSetPtr& a, const GeneratorSetPtr& b);

/// Exponent vector over a fixed generator set. Odd generators carry exponent <= 1.
struct Monomial {
  std::vector<std::uint32_t> exponents;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exponents(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exponents(std::move(e)) {}

  std::size_t size() const { return exponents.size(); }
  std::uint32_t operator[](std::size_t i) const { return exponents[i]; }
  std::uint32_t& operator[](std::size_t i) { return exponents[i]; }
  bool is_unit() const;
  /// Total exponent (number of generator factors).
  std::uint32_t word_length() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

int degree_of(const GeneratorSet& gens, const Monomial& m);

struct SignedMonomial {
  int sign = 1;
  Monomial monomial;
};

/// Canonical product m1*m2 with its Koszul sign, or nullopt if an odd generator repeats.
std::optional<SignedMonomial> normalize_product(const GeneratorSet& gens, const Monomial& m1,
                                                const Monomial& m2);

/// Exact rational linear combination of canonical monomials. Zero coefficients
/// are never stored.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(GeneratorSetPtr gens);

  static Polynomial constant(GeneratorSetPtr gens, const Rational& c);
  static Polynomial one(GeneratorSetPtr gens) { return constant(std::move(gens), 1); }
  static Polynomial generator(GeneratorSetPtr gens, std::size_t index);
  static Polynomial generator(GeneratorSetPtr gens, std::string_view name);
  static Polynomial term(GeneratorSetPtr gens, Monomial m, const Rational& c = 1);

  const GeneratorSetPtr& generators() const { return gens_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  /// Degrees of the monomials present.
  std::set<int> degrees() const;
  /// True for zero and for single-degree polynomials.
  bool is_homogeneous() const;
  /// Degree of a nonzero homogeneous polynomial; nullopt otherwise.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous_of(int degree) const;
  /// Part of the given degree.
  Polynomial component(int degree) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  /// this += c * other
  Polynomial& axpy(const Rational& c, const Polynomial& other);
  void add_term(const Monomial& m, const Rational& c);
  void scale(const Rational& c) { *this *= c; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  /// Generator sets compared by content.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void check_compatible(const Polynomial& other) const;

  GeneratorSetPtr gens_;
  Terms terms_;
};

Polynomial operator*(const Polynomial& p, const Polynomial& q);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, unsigned k);

/// Re-expresses p over a target generator set; index_map[i] is the target index of source generator i.
Polynomial remap(const Polynomial& p, const GeneratorSetPtr& target,
                 const std::vector<std::size_t>& index_map);
/// Re-expresses p over a target set containing every generator of p's set by name.
Polynomial embed(const Polynomial& p, const GeneratorSetPtr& target);

/// Canonical monomials of total degree n. Degree-0 generators require polybound,
/// which caps their total exponent. Throws UnboundedSliceError otherwise.
std::vector<Monomial> basis_of_degree(const GeneratorSet& gens, int n,
                                      std::optional<int> polybound = std::nullopt);

/// Degree-preserving assignment generator -> polynomial, extended multiplicatively.
class AlgebraMorphism {
 public:
  AlgebraMorphism() = default;
  /// images[i] is the image of source generator i; each must be homogeneous of that degree or zero.
  AlgebraMorphism(GeneratorSetPtr source, GeneratorSetPtr target, std::vector<Polynomial> images);

  static AlgebraMorphism identity(const GeneratorSetPtr& gens);
  /// Builds from a name-indexed assignment. Missing generators map to zero when
  /// missing_to_zero is set; otherwise they are an error.
  static AlgebraMorphism from_assignment(GeneratorSetPtr source, GeneratorSetPtr target,
                                         const std::map<std::string, Polynomial>& assignment,
                                         bool missing_to_zero = false);

  const GeneratorSetPtr& source() const { return source_; }
  const GeneratorSetPtr& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }
  const Polynomial& image(std::size_t i) const { return images_[i]; }
  const Polynomial& image(std::string_view name) const;

  Polynomial apply(const Polynomial& p) const;
  Polynomial operator()(const Polynomial& p) const { return apply(p); }

  friend bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b);

 private:
  GeneratorSetPtr source_;
  GeneratorSetPtr target_;
  std::vector<Polynomial> images_;
};

Polynomial apply_morphism(const AlgebraMorphism& phi, const Polynomial& p);

/// (g o f), first f then g.
AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f);

}  // namespace ratho
