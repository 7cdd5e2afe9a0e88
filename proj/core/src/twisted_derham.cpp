#include "ratho/twisted_derham.hpp"

#include "ratho/errors.hpp"

namespace ratho {

TwistedComplex::TwistedComplex(Dgca base, Polynomial twist, int period, std::optional<int> truncation)
    : base_(std::move(base)), twist_(std::move(twist)), period_(period) {
  if (period_ < 0) throw PreconditionError("twisted complex: period must be >= 0");
  if (twist_.is_zero()) {
    twist_ = base_.zero();
  } else {
    if (!same_generators(twist_.generators(), base_.generators()))
      throw StructuralError("twist is not over the generators of '" + base_.name() + "'");
    if (!twist_.is_homogeneous_of(2 * period_ + 1))
      throw PreconditionError("twist must be homogeneous of degree " + std::to_string(2 * period_ + 1));
    if (!base_.apply_d(twist_).is_zero()) throw PreconditionError("twist is not closed");
  }
  bool all_odd = true;
  int total = 0;
  for (const auto& g : base_.gens()) {
    if (g.degree == 0) throw UnboundedSliceError("twisted complex: degree-0 generator '" + g.name + "'");
    all_odd = all_odd && g.odd();
    total += g.degree;
  }
  if (!all_odd && !truncation)
    throw UnboundedSliceError("twisted complex over '" + base_.name() +
                              "' is infinite-dimensional; supply a truncation degree");
  top_ = total;
  truncated_ = false;
  if (truncation) {
    if (*truncation < 0) throw PreconditionError("truncation degree must be >= 0");
    if (!all_odd || *truncation < total) {
      top_ = *truncation;
      truncated_ = true;
    }
  }
}

int TwistedComplex::residue_count() const { return period_ == 0 ? top_ + 1 : 2 * period_; }

int TwistedComplex::residue_of(int degree) const { return period_ == 0 ? degree : degree % (2 * period_); }

std::vector<int> TwistedComplex::degrees_of(int residue) const {
  std::vector<int> out;
  if (period_ == 0) {
    if (residue >= 0 && residue <= top_) out.push_back(residue);
    return out;
  }
  for (int k = residue; k <= top_; k += 2 * period_) out.push_back(k);
  return out;
}

TwistedComplex TwistedComplex::scaled(const Rational& c) const {
  TwistedComplex out = *this;
  out.twist_ *= c;
  if (sgn(c) == 0) out.twist_ = base_.zero();
  return out;
}

Polynomial twisted_d(const TwistedComplex& C, const Polynomial& x) {
  Polynomial out = C.base().apply_d(x) - C.twist() * x;
  if (!C.truncated()) return out;
  Polynomial kept(C.base().generators());
  for (const auto& [m, c] : out.terms())
    if (degree_of(C.base().gens(), m) <= C.top_degree()) kept.add_term(m, c);
  return kept;
}

namespace {

std::vector<Polynomial> residue_basis(const TwistedComplex& C, int residue) {
  std::vector<Polynomial> out;
  for (int k : C.degrees_of(residue))
    for (const auto& m : basis_of_degree(C.base().gens(), k))
      out.push_back(Polynomial::term(C.base().generators(), m));
  return out;
}

int previous_residue(const TwistedComplex& C, int residue) {
  if (C.period() == 0) return residue - 1;
  return (residue + C.modulus() - 1) % C.modulus();
}

LinearSpan<Polynomial> boundary_span(const TwistedComplex& C, int residue) {
  LinearSpan<Polynomial> span;
  int prev = previous_residue(C, residue);
  if (prev < 0) return span;
  for (const auto& b : residue_basis(C, prev)) span.insert(twisted_d(C, b), b);
  return span;
}

int single_residue(const TwistedComplex& C, const Polynomial& x) {
  std::optional<int> r;
  for (int k : x.degrees()) {
    if (k > C.top_degree()) throw PreconditionError("element exceeds the top degree of the complex");
    int rk = C.residue_of(k);
    if (r && *r != rk) throw PreconditionError("element mixes residues " + std::to_string(*r) + " and " +
                                               std::to_string(rk));
    r = rk;
  }
  return r.value_or(0);
}

}  // namespace

TwistedSlice twisted_cohomology_slice(const TwistedComplex& C, int residue) {
  if (residue < 0 || residue >= C.residue_count())
    throw PreconditionError("residue " + std::to_string(residue) + " out of range");
  TwistedSlice slice;
  slice.residue = residue;
  LinearSpan<Polynomial> image;
  std::vector<Polynomial> cocycles;
  for (const auto& b : residue_basis(C, residue))
    if (auto rel = image.insert(twisted_d(C, b), b)) cocycles.push_back(*rel);
  slice.cocycle_dimension = cocycles.size();
  auto boundaries = boundary_span(C, residue);
  slice.boundary_dimension = boundaries.rank();
  LinearSpan<> classes;
  for (const auto& row : boundaries.rows()) {
    classes.insert(row.value);
    slice.boundaries.push_back(row.value);
  }
  for (const auto& z : cocycles)
    if (!classes.insert(z)) slice.representatives.push_back(z);
  slice.cocycles = std::move(cocycles);
  slice.dimension = slice.representatives.size();
  if (C.truncated()) {
    int reach = C.twist().is_zero() ? 1 : 2 * C.period() + 1;
    for (int k : C.degrees_of(residue))
      if (k + reach > C.top_degree()) slice.boundary_affected = true;
  }
  return slice;
}

std::vector<std::size_t> TwistedCohomology::dimensions() const {
  std::vector<std::size_t> out;
  for (const auto& s : slices) out.push_back(s.dimension);
  return out;
}

TwistedCohomology twisted_cohomology(const TwistedComplex& C) {
  TwistedCohomology out;
  out.approximate = C.truncated();
  for (int r = 0; r < C.residue_count(); ++r) out.slices.push_back(twisted_cohomology_slice(C, r));
  return out;
}

std::optional<Polynomial> twisted_exact(const TwistedComplex& C, const Polynomial& x) {
  if (x.is_zero()) return C.base().zero();
  int residue = single_residue(C, x);
  if (!twisted_d(C, x).is_zero()) throw PreconditionError("twisted_exact needs a twisted-closed element");
  auto span = boundary_span(C, residue);
  auto red = span.reduce(x, C.base().zero());
  if (!red.residual.is_zero()) return std::nullopt;
  return -red.witness;
}

TwistedClass make_twisted_class(const TwistedComplex& C, Polynomial rep) {
  if (rep.is_zero()) rep = C.base().zero();
  if (!same_generators(rep.generators(), C.base().generators()))
    throw StructuralError("representative is not over the generators of '" + C.base().name() + "'");
  int residue = single_residue(C, rep);
  if (!twisted_d(C, rep).is_zero()) throw PreconditionError("representative is not twisted-closed");
  return {residue, std::move(rep)};
}

namespace {

Polynomial truncate(const TwistedComplex& C, const Polynomial& p) {
  Polynomial out(C.base().generators());
  for (const auto& [m, c] : p.terms())
    if (degree_of(C.base().gens(), m) <= C.top_degree()) out.add_term(m, c);
  return out;
}

int next_residue(const TwistedComplex& C, int residue, int shift) {
  if (C.period() == 0) return residue + shift;
  return (residue + shift) % C.modulus();
}

}  // namespace

TwistedClass op_wedge_twist(const TwistedComplex& C, const TwistedClass& cls) {
  auto in = make_twisted_class(C, cls.representative);
  Polynomial out = truncate(C, in.representative * C.twist());
  return {next_residue(C, in.residue, 2 * C.period() + 1), std::move(out)};
}

TwistedClass op_wedge_square(const TwistedComplex& C, const TwistedClass& cls) {
  auto in = make_twisted_class(C, cls.representative);
  if (in.residue % 2) throw PreconditionError("op_wedge_square needs an even-residue class");
  auto doubled = C.scaled(2);
  Polynomial sq = truncate(doubled, in.representative * in.representative);
  return {next_residue(C, in.residue, in.residue), std::move(sq)};
}

TwistedClass op_square_then_twist(const TwistedComplex& C, const TwistedClass& cls) {
  return op_wedge_twist(C.scaled(2), op_wedge_square(C, cls));
}

}  // namespace ratho
