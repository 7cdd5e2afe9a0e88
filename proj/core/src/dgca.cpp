#include "ratho/dgca.hpp"

#include <algorithm>
#include <set>

#include "ratho/errors.hpp"

namespace ratho {

Dgca::Dgca(std::string name, GeneratorSetPtr gens, std::vector<Polynomial> differentials)
    : name_(std::move(name)), gens_(std::move(gens)), d_(std::move(differentials)) {
  if (d_.size() != gens_->size())
    throw StructuralError("dgca '" + name_ + "' needs one differential per generator");
  for (std::size_t i = 0; i < d_.size(); ++i) {
    auto& di = d_[i];
    if (di.is_zero()) {
      di = Polynomial(gens_);
      continue;
    }
    if (!same_generators(di.generators(), gens_))
      throw StructuralError("differential of '" + (*gens_)[i].name + "' is over other generators");
    if (!di.is_homogeneous_of((*gens_)[i].degree + 1))
      throw StructuralError("differential of '" + (*gens_)[i].name + "' is not homogeneous of degree " +
                            std::to_string((*gens_)[i].degree + 1));
  }
}

Dgca Dgca::ground(std::string name) { return Dgca(std::move(name), make_generators({}), {}); }

Dgca Dgca::renamed(std::string name) const {
  Dgca out = *this;
  out.name_ = std::move(name);
  return out;
}

bool operator==(const Dgca& a, const Dgca& b) {
  return same_generators(a.gens_, b.gens_) && a.d_ == b.d_;
}

Polynomial Dgca::apply_d(const Polynomial& p) const {
  Polynomial out(gens_);
  if (p.is_zero()) return out;
  if (!same_generators(p.generators(), gens_))
    throw StructuralError("polynomial is not over the generators of '" + name_ + "'");
  const auto& gens = *gens_;
  for (const auto& [m, c] : p.terms()) {
    // d(prefix * g^e * suffix) = (-1)^{|prefix|} prefix * d(g^e) * suffix
    Monomial prefix(gens.size());
    int prefix_degree = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (!m[i]) continue;
      if (!d_[i].is_zero()) {
        Monomial rest = m;
        for (std::size_t j = 0; j <= i; ++j) rest[j] = 0;
        Monomial lower(gens.size());
        lower[i] = m[i] - 1;
        Rational coef = c * Rational(static_cast<long>(m[i]));
        if (prefix_degree % 2) coef = -coef;
        Polynomial t = Polynomial::term(gens_, prefix, coef) * Polynomial::term(gens_, lower) * d_[i] *
                       Polynomial::term(gens_, rest);
        out += t;
      }
      prefix[i] = m[i];
      prefix_degree += static_cast<int>(m[i]) * gens[i].degree;
    }
  }
  return out;
}

Polynomial apply_d(const Dgca& A, const Polynomial& p) { return A.apply_d(p); }

DSquaredReport check_d_squared(const Dgca& A) {
  DSquaredReport report;
  for (std::size_t i = 0; i < A.size(); ++i) {
    Polynomial dd = A.apply_d(A.differential(i));
    if (!dd.is_zero()) report.failures.push_back({i, std::move(dd)});
  }
  return report;
}

namespace {

// Boundaries landing in the slice spanned by basis. Under a polynomial bound P
// the preimages range over exponents up to P + 1: an element t^P dt is a cocycle
// of the bounded slice whose primitive t^{P+1} / (P + 1) lies just outside it.
LinearSpan<Polynomial> boundaries_in(const Dgca& A, int n, const std::vector<Monomial>& basis,
                                     std::optional<int> polybound) {
  LinearSpan<Polynomial> out;
  if (!polybound) {
    for (const auto& b : basis_of_degree(A.gens(), n - 1)) {
      Polynomial pre = Polynomial::term(A.generators(), b);
      Polynomial img = A.apply_d(pre);
      out.insert(std::move(img), std::move(pre));
    }
    return out;
  }
  std::set<Monomial> in_slice(basis.begin(), basis.end());
  LinearSpan<Polynomial> outside;
  for (const auto& b : basis_of_degree(A.gens(), n - 1, *polybound + 1)) {
    Polynomial pre = Polynomial::term(A.generators(), b);
    Polynomial img = A.apply_d(pre), spill(A.generators());
    for (const auto& [m, c] : img.terms())
      if (!in_slice.count(m)) spill += c * Polynomial::term(A.generators(), m);
    if (auto combo = outside.insert(std::move(spill), std::move(pre))) out.insert(A.apply_d(*combo), *combo);
  }
  return out;
}

}  // namespace

CohomologySlice cohomology_slice(const Dgca& A, int n, std::optional<int> polybound) {
  CohomologySlice slice;
  slice.degree = n;
  slice.basis = basis_of_degree(A.gens(), n, polybound);

  LinearSpan<Polynomial> image_of_d;
  for (const auto& b : slice.basis) {
    Polynomial basis_elem = Polynomial::term(A.generators(), b);
    if (auto rel = image_of_d.insert(A.apply_d(basis_elem), basis_elem)) slice.cocycles.push_back(*rel);
  }
  slice.rank_out = image_of_d.rank();

  slice.boundaries = boundaries_in(A, n, slice.basis, polybound);

  LinearSpan<> classes;
  for (const auto& row : slice.boundaries.rows()) classes.insert(row.value);
  for (const auto& z : slice.cocycles)
    if (!classes.insert(z)) slice.representatives.push_back(z);
  slice.dimension = slice.representatives.size();
  return slice;
}

std::vector<CohomologySlice> cohomology(const Dgca& A, int lo, int hi, std::optional<int> polybound) {
  std::vector<CohomologySlice> out;
  for (int n = std::max(lo, 0); n <= hi; ++n) out.push_back(cohomology_slice(A, n, polybound));
  return out;
}

std::optional<Polynomial> is_exact(const Dgca& A, const Polynomial& p, std::optional<int> polybound) {
  if (p.is_zero()) return A.zero();
  auto deg = p.homogeneous_degree();
  if (!deg) throw PreconditionError("is_exact needs a homogeneous element");
  if (!A.apply_d(p).is_zero()) throw PreconditionError("is_exact needs a closed element");
  std::optional<int> bound = polybound;
  if (bound)
    for (const auto& [m, c] : p.terms()) {
      int e = 0;
      for (std::size_t i = 0; i < A.size(); ++i)
        if (A.gens()[i].degree == 0) e += static_cast<int>(m[i]);
      bound = std::max(*bound, e);
    }
  auto span = boundaries_in(A, *deg, bound ? basis_of_degree(A.gens(), *deg, bound) : std::vector<Monomial>{}, bound);
  auto red = span.reduce(p, A.zero());
  if (!red.residual.is_zero()) return std::nullopt;
  // p - sum c_i d(b_i) = 0 with witness = -sum c_i b_i
  return -red.witness;
}

std::optional<ChainMapWitness> chain_map_failure(const Dgca& source, const Dgca& target,
                                                 const AlgebraMorphism& phi) {
  if (!same_generators(phi.source(), source.generators()) ||
      !same_generators(phi.target(), target.generators()))
    throw StructuralError("morphism does not match the given algebras");
  for (std::size_t i = 0; i < source.size(); ++i) {
    Polynomial r = target.apply_d(phi.image(i)) - phi.apply(source.differential(i));
    if (!r.is_zero()) return ChainMapWitness{i, std::move(r)};
  }
  return std::nullopt;
}

QuasiIsoReport is_quasi_iso(const Dgca& source, const Dgca& target, const AlgebraMorphism& phi, int lo,
                            int hi, std::optional<int> source_polybound, std::optional<int> target_polybound) {
  if (auto w = chain_map_failure(source, target, phi))
    throw PreconditionError("not a chain map at generator '" + source.gens()[w->generator].name +
                            "': residual " + w->residual.to_string());
  QuasiIsoReport report;
  report.lo = lo;
  report.hi = hi;
  for (int n = std::max(lo, 0); n <= hi; ++n) {
    auto hs = cohomology_slice(source, n, source_polybound);
    auto ht = cohomology_slice(target, n, target_polybound);
    LinearSpan<> span;
    for (const auto& row : ht.boundaries.rows()) span.insert(row.value);
    std::size_t rank = 0;
    for (const auto& r : hs.representatives)
      if (!span.insert(phi.apply(r))) ++rank;
    report.degrees.push_back({n, hs.dimension, ht.dimension, rank});
  }
  return report;
}

Dgca tensor(const Dgca& A, const Dgca& B, const std::function<std::string(const std::string&)>& rename) {
  std::vector<Generator> gens = A.gens().generators();
  std::vector<std::size_t> b_index;
  for (const auto& g : B.gens()) {
    std::string name = rename ? rename(g.name) : g.name;
    if (A.gens().find(name))
      throw StructuralError("tensor: generator name '" + name + "' occurs in both factors");
    b_index.push_back(gens.size());
    gens.push_back({name, g.degree});
  }
  auto product = make_generators(std::move(gens));
  std::vector<std::size_t> a_index(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) a_index[i] = i;
  std::vector<Polynomial> d;
  for (const auto& da : A.differentials()) d.push_back(remap(da, product, a_index));
  for (const auto& db : B.differentials()) d.push_back(remap(db, product, b_index));
  std::string name = A.name() + "*" + B.name();
  return Dgca(std::move(name), product, std::move(d));
}

AlgebraMorphism inclusion_by_name(const Dgca& sub, const Dgca& total) {
  std::vector<Polynomial> images;
  for (const auto& g : sub.gens()) {
    auto j = total.gens().find(g.name);
    if (!j) throw StructuralError("generator '" + g.name + "' missing from '" + total.name() + "'");
    if (total.gens()[*j].degree != g.degree)
      throw StructuralError("generator '" + g.name + "' has a different degree in '" + total.name() + "'");
    images.push_back(total.gen(*j));
  }
  return AlgebraMorphism(sub.generators(), total.generators(), std::move(images));
}

}  // namespace ratho
