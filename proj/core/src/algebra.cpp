#include "ratho/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "ratho/errors.hpp"

namespace ratho {

std::string to_string(const Rational& q) { return q.get_str(); }

GeneratorSet::GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].degree < 0)
      throw StructuralError("generator '" + gens_[i].name + "' has negative degree");
    if (!index_.emplace(gens_[i].name, i).second)
      throw StructuralError("duplicate generator name '" + gens_[i].name + "'");
  }
}

std::optional<std::size_t> GeneratorSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GeneratorSet::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw StructuralError("unknown generator '" + std::string(name) + "'");
  return *i;
}

GeneratorSetPtr make_generators(std::vector<Generator> gens) {
  return std::make_shared<const GeneratorSet>(std::move(gens));
}

bool same_generators(const GeneratorSetPtr& a, const GeneratorSetPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool Monomial::is_unit() const {
  return std::all_of(exponents.begin(), exponents.end(), [](auto e) { return e == 0; });
}

std::uint32_t Monomial::word_length() const {
  std::uint32_t n = 0;
  for (auto e : exponents) n += e;
  return n;
}

int degree_of(const GeneratorSet& gens, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<int>(m[i]) * gens[i].degree;
  return d;
}

std::optional<SignedMonomial> normalize_product(const GeneratorSet& gens, const Monomial& m1,
                                                const Monomial& m2) {
  if (m1.size() != gens.size() || m2.size() != gens.size())
    throw StructuralError("monomials over different generator sets");
  SignedMonomial out{1, Monomial(gens.size())};
  // Each odd factor of m2 moves left past the odd factors of m1 that sit after it.
  std::size_t inversions = 0;
  std::size_t odd_after = 0;
  for (std::size_t i = gens.size(); i-- > 0;) {
    if (gens[i].odd()) {
      if (m1[i] && m2[i]) return std::nullopt;
      if (m2[i]) inversions += odd_after;
      if (m1[i]) ++odd_after;
    }
    out.monomial[i] = m1[i] + m2[i];
  }
  if (inversions % 2) out.sign = -1;
  return out;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(GeneratorSetPtr gens) : gens_(std::move(gens)) {}

Polynomial Polynomial::constant(GeneratorSetPtr gens, const Rational& c) {
  Polynomial p(gens);
  p.add_term(Monomial(gens->size()), c);
  return p;
}

Polynomial Polynomial::generator(GeneratorSetPtr gens, std::size_t index) {
  if (index >= gens->size()) throw StructuralError("generator index out of range");
  Monomial m(gens->size());
  m[index] = 1;
  return term(std::move(gens), std::move(m));
}

Polynomial Polynomial::generator(GeneratorSetPtr gens, std::string_view name) {
  auto i = gens->index_of(name);
  return generator(std::move(gens), i);
}

Polynomial Polynomial::term(GeneratorSetPtr gens, Monomial m, const Rational& c) {
  if (m.size() != gens->size()) throw StructuralError("monomial size does not match generator set");
  for (std::size_t i = 0; i < m.size(); ++i)
    if ((*gens)[i].odd() && m[i] > 1) return Polynomial(std::move(gens));
  Polynomial p(std::move(gens));
  p.add_term(m, c);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<int> Polynomial::degrees() const {
  std::set<int> out;
  for (const auto& [m, c] : terms_) out.insert(degree_of(*gens_, m));
  return out;
}

bool Polynomial::is_homogeneous() const { return degrees().size() <= 1; }

std::optional<int> Polynomial::homogeneous_degree() const {
  auto ds = degrees();
  if (ds.size() != 1) return std::nullopt;
  return *ds.begin();
}

bool Polynomial::is_homogeneous_of(int degree) const {
  for (const auto& [m, c] : terms_)
    if (degree_of(*gens_, m) != degree) return false;
  return true;
}

Polynomial Polynomial::component(int degree) const {
  Polynomial out(gens_);
  for (const auto& [m, c] : terms_)
    if (degree_of(*gens_, m) == degree) out.terms_.emplace(m, c);
  return out;
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (!same_generators(gens_, other.gens_))
    throw StructuralError("polynomials over different generator sets");
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::axpy(const Rational& c, const Polynomial& other) {
  if (sgn(c) == 0 || other.is_zero()) return *this;
  if (!gens_) gens_ = other.gens_;
  check_compatible(other);
  for (const auto& [m, oc] : other.terms_) add_term(m, c * oc);
  return *this;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) { return axpy(1, other); }
Polynomial& Polynomial::operator-=(const Polynomial& other) { return axpy(-1, other); }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  out *= -1;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return same_generators(a.gens_, b.gens_) && a.terms_ == b.terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = m.is_unit();
    bool wrote = false;
    if (unit || mag != 1) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (wrote) os << "*";
      os << (*gens_)[i].name;
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero()) return Polynomial(p.generators() ? p.generators() : q.generators());
  if (q.is_zero()) return Polynomial(p.generators());
  if (!same_generators(p.generators(), q.generators()))
    throw StructuralError("polynomials over different generator sets");
  const auto& gens = *p.generators();
  Polynomial out(p.generators());
  for (const auto& [m1, c1] : p.terms())
    for (const auto& [m2, c2] : q.terms()) {
      auto prod = normalize_product(gens, m1, m2);
      if (!prod) continue;
      Rational c = c1 * c2;
      if (prod->sign < 0) c = -c;
      out.add_term(prod->monomial, c);
    }
  return out;
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial result = Polynomial::one(p.generators());
  Polynomial base = p;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

Polynomial remap(const Polynomial& p, const GeneratorSetPtr& target,
                 const std::vector<std::size_t>& index_map) {
  Polynomial out(target);
  if (p.is_zero()) return out;
  const auto& src = *p.generators();
  if (index_map.size() != src.size()) throw StructuralError("index map size mismatch");
  // The relative order of odd generators may change; rebuild each term as an ordered product.
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if ((*target)[index_map[i]].degree != src[i].degree)
        throw StructuralError("remap changes the degree of '" + src[i].name + "'");
      Monomial g(target->size());
      g[index_map[i]] = m[i];
      t = t * Polynomial::term(target, g);
    }
    out += t;
  }
  return out;
}

Polynomial embed(const Polynomial& p, const GeneratorSetPtr& target) {
  if (p.is_zero()) return Polynomial(target);
  if (same_generators(p.generators(), target)) return p;
  const auto& src = *p.generators();
  std::vector<std::size_t> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) map[i] = target->index_of(src[i].name);
  return remap(p, target, map);
}

namespace {

void enumerate_basis(const GeneratorSet& gens, std::size_t i, int remaining, int zero_budget,
                     Monomial& current, std::vector<Monomial>& out) {
  if (i == gens.size()) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const auto& g = gens[i];
  std::uint32_t max_e;
  if (g.degree == 0) {
    max_e = static_cast<std::uint32_t>(zero_budget);
  } else if (g.odd()) {
    max_e = remaining >= g.degree ? 1 : 0;
  } else {
    max_e = static_cast<std::uint32_t>(remaining / g.degree);
  }
  for (std::uint32_t e = 0; e <= max_e; ++e) {
    current[i] = e;
    int rem = remaining - static_cast<int>(e) * g.degree;
    int zb = g.degree == 0 ? zero_budget - static_cast<int>(e) : zero_budget;
    enumerate_basis(gens, i + 1, rem, zb, current, out);
  }
  current[i] = 0;
}

}  // namespace

std::vector<Monomial> basis_of_degree(const GeneratorSet& gens, int n, std::optional<int> polybound) {
  std::vector<Monomial> out;
  if (n < 0) return out;
  bool has_zero = std::any_of(gens.begin(), gens.end(), [](const Generator& g) { return g.degree == 0; });
  if (has_zero && !polybound)
    throw UnboundedSliceError("unbounded slice: degree-0 generators present without a polynomial bound");
  Monomial current(gens.size());
  enumerate_basis(gens, 0, n, polybound.value_or(0), current, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

AlgebraMorphism::AlgebraMorphism(GeneratorSetPtr source, GeneratorSetPtr target,
                                 std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->size())
    throw StructuralError("morphism needs one image per source generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    auto& img = images_[i];
    if (img.is_zero()) {
      img = Polynomial(target_);
      continue;
    }
    if (!same_generators(img.generators(), target_))
      throw StructuralError("image of '" + (*source_)[i].name + "' is not over the target generators");
    if (!img.is_homogeneous_of((*source_)[i].degree))
      throw StructuralError("image of '" + (*source_)[i].name + "' is not homogeneous of degree " +
                            std::to_string((*source_)[i].degree));
  }
}

AlgebraMorphism AlgebraMorphism::identity(const GeneratorSetPtr& gens) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < gens->size(); ++i) images.push_back(Polynomial::generator(gens, i));
  return AlgebraMorphism(gens, gens, std::move(images));
}

AlgebraMorphism AlgebraMorphism::from_assignment(GeneratorSetPtr source, GeneratorSetPtr target,
                                                 const std::map<std::string, Polynomial>& assignment,
                                                 bool missing_to_zero) {
  for (const auto& [name, img] : assignment) source->index_of(name);
  std::vector<Polynomial> images;
  for (const auto& g : *source) {
    auto it = assignment.find(g.name);
    if (it == assignment.end()) {
      if (!missing_to_zero) throw StructuralError("no image assigned to '" + g.name + "'");
      images.emplace_back(target);
    } else {
      images.push_back(it->second);
    }
  }
  return AlgebraMorphism(std::move(source), std::move(target), std::move(images));
}

const Polynomial& AlgebraMorphism::image(std::string_view name) const {
  return images_[source_->index_of(name)];
}

Polynomial AlgebraMorphism::apply(const Polynomial& p) const {
  Polynomial out(target_);
  if (p.is_zero()) return out;
  if (!same_generators(p.generators(), source_))
    throw StructuralError("polynomial is not over the morphism's source generators");
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(target_, c);
    for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i)
      if (m[i]) t = t * pow(images_[i], m[i]);
    out += t;
  }
  return out;
}

bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b) {
  return same_generators(a.source_, b.source_) && same_generators(a.target_, b.target_) &&
         a.images_ == b.images_;
}

Polynomial apply_morphism(const AlgebraMorphism& phi, const Polynomial& p) { return phi.apply(p); }

AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f) {
  if (!same_generators(f.target(), g.source()))
    throw StructuralError("cannot compose: target of first map is not source of second");
  std::vector<Polynomial> images;
  for (const auto& img : f.images()) images.push_back(g.apply(img));
  return AlgebraMorphism(f.source(), g.target(), std::move(images));
}

}  // namespace ratho
