#include "ratho/character.hpp"

#include <set>

#include "ratho/chern_weil.hpp"
#include "ratho/errors.hpp"

namespace ratho {

FlatnessReport verify_flat(const FlatFormDatum& F) {
  const auto& phi = F.assignment;
  if (!same_generators(phi.source(), F.coefficients.generators()) ||
      !same_generators(phi.target(), F.target.generators()))
    throw StructuralError("flat datum: assignment does not match the coefficient and target algebras");
  FlatnessReport report;
  for (std::size_t i = 0; i < F.coefficients.size(); ++i) {
    Polynomial r = phi.apply(F.coefficients.differential(i)) - F.target.apply_d(phi.image(i));
    if (!r.is_zero()) report.failures.push_back({F.coefficients.gens()[i].name, std::move(r)});
  }
  return report;
}

namespace {

std::vector<TriangleFailure> triangle_failures(const RelativeExtension& bundle, const AlgebraMorphism& total,
                                               const AlgebraMorphism& base, const CylinderAlgebra* cyl) {
  std::vector<TriangleFailure> out;
  const auto& B = bundle.base();
  for (std::size_t i = 0; i < B.size(); ++i) {
    Polynomial expected = cyl ? cyl->pull(base.image(i)) : base.image(i);
    Polynomial r = total.apply(bundle.inclusion().image(i)) - expected;
    if (!r.is_zero()) out.push_back({B.gens()[i].name, std::move(r)});
  }
  return out;
}

}  // namespace

TwistedFlatReport verify_twisted_flat(const TwistedFlatFormDatum& T) {
  if (!(T.twist.coefficients == T.bundle.base()))
    throw StructuralError("twisted datum: twist is not defined on the base of the coefficient bundle");
  TwistedFlatReport report;
  report.twist = verify_flat(T.twist);
  report.total = verify_flat({T.bundle.total(), T.twist.target, T.assignment});
  report.triangle = triangle_failures(T.bundle, T.assignment, T.twist.assignment, nullptr);
  return report;
}

ConcordanceReport verify_concordance(const ConcordanceDatum& C) {
  ConcordanceReport report;
  const auto& cyl = C.cylinder;
  report.cylinder = verify_flat({C.coefficients, cyl.algebra(), C.assignment});
  auto endpoint = [&](const char* label, const AlgebraMorphism& ev, const AlgebraMorphism& expected) {
    for (std::size_t i = 0; i < C.coefficients.size(); ++i) {
      Polynomial r = ev.apply(C.assignment.image(i)) - expected.image(i);
      if (!r.is_zero()) report.endpoints.push_back({label, C.coefficients.gens()[i].name, std::move(r)});
    }
  };
  endpoint("ev0", cyl.ev0(), C.start);
  endpoint("ev1", cyl.ev1(), C.end);
  if (C.bundle) {
    if (!C.twist) throw StructuralError("twisted concordance without a twist");
    report.twist = triangle_failures(*C.bundle, C.assignment, *C.twist, &cyl);
  }
  return report;
}

ConcordanceDatum constant_concordance(const FlatFormDatum& F) {
  CylinderAlgebra cyl(F.target);
  auto assignment = compose(cyl.inclusion(), F.assignment);
  return {F.coefficients, cyl, assignment, F.assignment, F.assignment, std::nullopt, std::nullopt};
}

ConcordanceDatum reversed(const ConcordanceDatum& C) {
  ConcordanceDatum out = C;
  out.assignment = compose(C.cylinder.reversal(), C.assignment);
  std::swap(out.start, out.end);
  return out;
}

Dgca line_algebra(int n) {
  if (n < 0) throw PreconditionError("line algebra degree must be >= 0");
  auto gs = make_generators({{"c", n + 1}});
  return Dgca("b" + std::to_string(n), gs, {Polynomial(gs)});
}

FlatFormDatum line_datum(const Dgca& Omega, int n, const Polynomial& form) {
  Dgca b = line_algebra(n);
  Polynomial f = form.is_zero() ? Omega.zero() : form;
  return {b, Omega, AlgebraMorphism(b.generators(), Omega.generators(), {f})};
}

ConcordanceDatum linear_concordance(const Dgca& Omega, int n, const Polynomial& F0, const Polynomial& F1,
                                    const Polynomial& h) {
  Polynomial diff = F1 - F0;
  if (!(Omega.apply_d(h.is_zero() ? Omega.zero() : h) == diff))
    throw PreconditionError("linear_concordance: dh differs from F1 - F0");
  auto start = line_datum(Omega, n, F0);
  auto end = line_datum(Omega, n, F1);
  CylinderAlgebra cyl(Omega);
  Polynomial t = cyl.t();
  Polynomial value = (cyl.algebra().one() - t) * cyl.pull(start.assignment.image(0)) +
                     t * cyl.pull(end.assignment.image(0)) + cyl.dt() * cyl.pull(h);
  AlgebraMorphism assignment(start.coefficients.generators(), cyl.algebra().generators(), {value});
  return {start.coefficients, cyl, assignment, start.assignment, end.assignment, std::nullopt, std::nullopt};
}

Polynomial extract_line_witness(const ConcordanceDatum& C) {
  return fiber_integrate(C.cylinder, C.assignment.image(0));
}

namespace {

bool is_line_algebra(const Dgca& A) {
  return A.size() == 1 && A.differential(0).is_zero() && A.gens()[0].degree >= 1;
}

using ClassKey = Polynomial::Terms;

ClassKey class_key(const LinearSpan<>& boundaries, const Polynomial& x) {
  return boundaries.reduce(x).residual.terms();
}

template <class Decide, class Extract>
void compare_classes(const std::vector<Polynomial>& points, const LinearSpan<>& boundaries, Decide decide,
                     Extract extraction_ok, std::size_t& concordance_classes, std::size_t& cohomology_classes,
                     std::size_t& pairs, std::size_t& mismatches, std::size_t& extraction_failures,
                     std::vector<Polynomial>* reps_out) {
  std::vector<std::size_t> reps;
  std::set<ClassKey> keys;
  for (std::size_t p = 0; p < points.size(); ++p) {
    ClassKey key = class_key(boundaries, points[p]);
    keys.insert(key);
    bool joined = false;
    for (auto r : reps) {
      ++pairs;
      auto datum = decide(points[r], points[p]);
      bool cohomologous = class_key(boundaries, points[r]) == key;
      if (datum.has_value() != cohomologous) ++mismatches;
      if (datum) {
        if (!extraction_ok(*datum, points[r], points[p])) ++extraction_failures;
        joined = true;
        break;
      }
    }
    if (!joined) reps.push_back(p);
  }
  concordance_classes = reps.size();
  cohomology_classes = keys.size();
  if (reps_out)
    for (auto r : reps) reps_out->push_back(points[r]);
}

std::vector<Polynomial> lattice_points(const std::vector<Polynomial>& basis, const Polynomial& zero,
                                       int lattice) {
  if (lattice < 0) throw PreconditionError("lattice bound must be >= 0");
  double count = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) count *= 2 * lattice + 1;
  if (count > 200000) throw BudgetExceededError("lattice has too many points");
  std::vector<Polynomial> out{zero};
  for (const auto& z : basis) {
    std::vector<Polynomial> next;
    for (const auto& p : out)
      for (int a = -lattice; a <= lattice; ++a) {
        Polynomial q = p;
        q.axpy(a, z);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::optional<ConcordanceDatum> decide_concordance(const FlatFormDatum& F0, const FlatFormDatum& F1,
                                                   std::optional<int> polybound) {
  if (!(F0.coefficients == F1.coefficients) || !(F0.target == F1.target))
    throw StructuralError("decide_concordance: data over different algebras");
  if (!is_line_algebra(F0.coefficients))
    throw VerificationOnlyError("concordance is decided only for line coefficients and twisted ku1; "
                                "use verify_concordance with an explicit cylinder datum");
  if (!verify_flat(F0).pass() || !verify_flat(F1).pass())
    throw PreconditionError("decide_concordance: endpoints are not flat");
  const Dgca& Omega = F0.target;
  int n = F0.coefficients.gens()[0].degree - 1;
  Polynomial a = F0.assignment.image(0);
  Polynomial b = F1.assignment.image(0);
  auto h = is_exact(Omega, b - a, polybound);
  if (!h) return std::nullopt;
  return linear_concordance(Omega, n, a, b, *h);
}

LineQuotientReport line_quotient(const Dgca& Omega, int n, int lattice, std::optional<int> polybound) {
  LineQuotientReport report;
  report.n = n;
  auto slice = cohomology_slice(Omega, n + 1, polybound);
  report.cohomology_dimension = slice.dimension;
  LinearSpan<> boundaries;
  for (const auto& row : slice.boundaries.rows()) boundaries.insert(row.value);
  auto points = lattice_points(slice.cocycles, Omega.zero(), lattice);
  report.lattice_points = points.size();
  auto decide = [&](const Polynomial& a, const Polynomial& b) {
    return decide_concordance(line_datum(Omega, n, a), line_datum(Omega, n, b), polybound);
  };
  auto extraction_ok = [&](const ConcordanceDatum& C, const Polynomial& a, const Polynomial& b) {
    if (!verify_concordance(C).pass()) return false;
    Polynomial h = extract_line_witness(C);
    return Omega.apply_d(h) == b - a;
  };
  compare_classes(points, boundaries, decide, extraction_ok, report.concordance_classes,
                  report.cohomology_classes, report.pairs_checked, report.mismatches, report.extraction_failures,
                  &report.class_representatives);
  return report;
}

// ---------------------------------------------------------------------------

Dgca ku1_algebra(int top_degree) {
  std::vector<Generator> gens;
  for (int k = 1; k <= top_degree; k += 2) gens.push_back({"f" + std::to_string(k), k});
  auto gs = make_generators(std::move(gens));
  return Dgca("ku1", gs, std::vector<Polynomial>(gs->size(), Polynomial(gs)));
}

RelativeExtension twisted_ku1_bundle(int top_degree) {
  auto bs = make_generators({{"h3", 3}});
  Dgca base("b2", bs, {Polynomial(bs)});
  std::vector<Generator> gens{{"h3", 3}};
  for (int k = 1; k <= top_degree; k += 2) gens.push_back({"f" + std::to_string(k), k});
  auto gs = make_generators(std::move(gens));
  std::vector<Polynomial> d(gs->size(), Polynomial(gs));
  for (std::size_t i = 2; i < gs->size(); ++i)
    d[i] = Polynomial::generator(gs, 0) * Polynomial::generator(gs, i - 1);
  return RelativeExtension(base, Dgca("ku1_twisted", gs, std::move(d)));
}

TwistedFlatFormDatum twisted_ku1_datum(const Dgca& Omega, const Polynomial& H, const Polynomial& F,
                                       int top_degree) {
  auto bundle = twisted_ku1_bundle(top_degree);
  Polynomial h = H.is_zero() ? Omega.zero() : H;
  FlatFormDatum twist{bundle.base(), Omega, AlgebraMorphism(bundle.base().generators(), Omega.generators(), {h})};
  std::vector<Polynomial> images{h};
  for (int k = 1; k <= top_degree; k += 2) images.push_back(F.is_zero() ? Omega.zero() : F.component(k));
  AlgebraMorphism assignment(bundle.total().generators(), Omega.generators(), std::move(images));
  return {bundle, twist, assignment};
}

namespace {

Polynomial up_to_degree(const Polynomial& p, const GeneratorSetPtr& gens, int top) {
  Polynomial out(gens);
  for (const auto& [m, c] : p.terms())
    if (degree_of(*gens, m) <= top) out.add_term(m, c);
  return out;
}

}  // namespace

ConcordanceDatum twisted_ku1_concordance(const Dgca& Omega, const Polynomial& H, const Polynomial& F0,
                                         const Polynomial& F1, const Polynomial& h, int top_degree) {
  const auto& gs = Omega.generators();
  Polynomial hh = h.is_zero() ? Omega.zero() : h;
  for (int k : hh.degrees())
    if (k % 2) throw PreconditionError("twisted_ku1_concordance: h must be even");
  Polynomial Hh = H.is_zero() ? Omega.zero() : H;
  Polynomial lhs = up_to_degree(Omega.apply_d(hh) - Hh * hh, gs, top_degree);
  Polynomial rhs = up_to_degree(F1 - F0, gs, top_degree);
  if (!(lhs == rhs)) throw PreconditionError("twisted_ku1_concordance: (d - H) h differs from F1 - F0");
  auto start = twisted_ku1_datum(Omega, Hh, F0, top_degree);
  auto end = twisted_ku1_datum(Omega, Hh, F1, top_degree);
  CylinderAlgebra cyl(Omega);
  Polynomial t = cyl.t();
  Polynomial one_minus_t = cyl.algebra().one() - t;
  std::vector<Polynomial> images{cyl.pull(Hh)};
  for (int k = 1; k <= top_degree; k += 2) {
    Polynomial a = F0.is_zero() ? Omega.zero() : F0.component(k);
    Polynomial b = F1.is_zero() ? Omega.zero() : F1.component(k);
    images.push_back(one_minus_t * cyl.pull(a) + t * cyl.pull(b) + cyl.dt() * cyl.pull(hh.component(k - 1)));
  }
  const auto& E = start.bundle.total();
  AlgebraMorphism assignment(E.generators(), cyl.algebra().generators(), std::move(images));
  return {E, cyl, assignment, start.assignment, end.assignment, start.bundle, start.twist.assignment};
}

Polynomial extract_twisted_ku1_witness(const ConcordanceDatum& C) {
  Polynomial h = C.cylinder.base().zero();
  for (std::size_t i = 0; i < C.coefficients.size(); ++i)
    if (C.coefficients.gens()[i].name != "h3") h += fiber_integrate(C.cylinder, C.assignment.image(i));
  return h;
}

std::optional<ConcordanceDatum> decide_twisted_ku1_concordance(const Dgca& Omega, const Polynomial& H,
                                                               const Polynomial& F0, const Polynomial& F1,
                                                               int top_degree) {
  TwistedComplex C(Omega, H, 1, top_degree);
  const auto& gs = Omega.generators();
  Polynomial diff = up_to_degree(F1 - F0, gs, C.top_degree());
  auto h = twisted_exact(C, diff);
  if (!h) return std::nullopt;
  return twisted_ku1_concordance(Omega, H, F0, F1, *h, top_degree);
}

TwistedBridgeReport twisted_ku1_bridge(const Dgca& Omega, const Polynomial& H, int lattice) {
  TwistedComplex C(Omega, H, 1);
  int top = C.top_degree();
  int ku_top = top % 2 ? top : top - 1;
  if (ku_top < 1) ku_top = 1;
  auto slice = twisted_cohomology_slice(C, 1);
  TwistedBridgeReport report;
  report.twisted_classes = slice.dimension;
  LinearSpan<> boundaries;
  for (const auto& b : slice.boundaries) boundaries.insert(b);
  auto points = lattice_points(slice.cocycles, Omega.zero(), lattice);
  report.lattice_points = points.size();
  for (const auto& F : points)
    if (!verify_twisted_flat(twisted_ku1_datum(Omega, C.twist(), F, ku_top)).pass()) ++report.flat_failures;
  auto decide = [&](const Polynomial& a, const Polynomial& b) {
    return decide_twisted_ku1_concordance(Omega, C.twist(), a, b, ku_top);
  };
  auto extraction_ok = [&](const ConcordanceDatum& D, const Polynomial& a, const Polynomial& b) {
    if (!verify_concordance(D).pass()) return false;
    Polynomial h = extract_twisted_ku1_witness(D);
    return twisted_d(C, h) == b - a;
  };
  std::size_t pairs = 0;
  compare_classes(points, boundaries, decide, extraction_ok, report.concordance_classes,
                  report.cohomology_classes, pairs, report.mismatches, report.extraction_failures, nullptr);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

Polynomial g(const GeneratorSetPtr& gs, const char* name) { return Polynomial::generator(gs, name); }

}  // namespace

RelativeExtension twistor_relative_model() {
  Dgca base = inv_ring_sp2();
  auto gs = make_generators(
      {{"half_p1", 4}, {"chi8", 8}, {"f2", 2}, {"h3", 3}, {"w4", 4}, {"w7", 7}});
  Polynomial p = g(gs, "half_p1");
  Polynomial w4 = g(gs, "w4");
  Polynomial f2 = g(gs, "f2");
  std::vector<Polynomial> d(gs->size(), Polynomial(gs));
  d[3] = w4 - Rational(1, 2) * p - f2 * f2;
  d[5] = -(w4 * w4) + Rational(1, 4) * (p * p) - g(gs, "chi8");
  return RelativeExtension(base, Dgca("twistor", gs, std::move(d)));
}

RelativeExtension s4_relative_model() {
  Dgca base = inv_ring_sp2();
  auto gs = make_generators({{"half_p1", 4}, {"chi8", 8}, {"w4", 4}, {"w7", 7}});
  Polynomial p = g(gs, "half_p1");
  Polynomial w4 = g(gs, "w4");
  std::vector<Polynomial> d(gs->size(), Polynomial(gs));
  d[3] = -(w4 * w4) + Rational(1, 4) * (p * p) - g(gs, "chi8");
  return RelativeExtension(base, Dgca("s4_sp2", gs, std::move(d)));
}

TwistorialPreset preset_twistorial() {
  auto gs = make_generators({{"F2", 2}, {"H3", 3}, {"G4", 4}, {"q", 4}, {"e8", 8}, {"G7", 7}});
  Polynomial F2 = g(gs, "F2"), G4 = g(gs, "G4"), q = g(gs, "q"), e8 = g(gs, "e8");
  std::vector<Polynomial> d(gs->size(), Polynomial(gs));
  d[1] = G4 - q - F2 * F2;
  d[5] = Rational(1, 2) * (-((G4 - q) * (G4 + q)) - e8);
  Dgca omega("twistorial", gs, std::move(d));

  Dgca base = inv_ring_sp2();
  FlatFormDatum twist{base, omega,
                      AlgebraMorphism::from_assignment(base.generators(), gs, {{"half_p1", 2 * q}, {"chi8", e8}})};
  auto tw = twistor_relative_model();
  auto full = AlgebraMorphism::from_assignment(tw.total().generators(), gs,
                                              {{"half_p1", 2 * q},
                                               {"chi8", e8},
                                               {"f2", F2},
                                               {"h3", g(gs, "H3")},
                                               {"w4", G4},
                                               {"w7", 2 * g(gs, "G7")}});
  auto s4 = s4_relative_model();
  auto push = AlgebraMorphism::from_assignment(
      s4.total().generators(), gs, {{"half_p1", 2 * q}, {"chi8", e8}, {"w4", G4}, {"w7", 2 * g(gs, "G7")}});
  return {omega, {tw, twist, full}, {s4, twist, push}};
}

TwistorialReport verify_twistorial(const TwistorialPreset& P) {
  TwistorialReport report;
  report.d_squared = check_d_squared(P.omega);
  report.datum = verify_twisted_flat(P.datum);
  report.pushforward = verify_twisted_flat(P.pushforward);
  const auto& gs = P.omega.generators();
  Polynomial charge = P.omega.gen("G4") - P.omega.gen("q") - P.omega.gen("F2") * P.omega.gen("F2");
  report.charge_witness = is_exact(P.omega, charge);
  report.witness_is_H3 = report.charge_witness && *report.charge_witness == P.omega.gen("H3");
  std::vector<Generator> kept;
  for (const auto& x : P.omega.gens())
    if (x.name != "q" && x.name != "e8") kept.push_back(x);
  auto ks = make_generators(std::move(kept));
  auto project = AlgebraMorphism::from_assignment(gs, ks,
                                                  {{"F2", g(ks, "F2")},
                                                   {"H3", g(ks, "H3")},
                                                   {"G4", g(ks, "G4")},
                                                   {"G7", g(ks, "G7")}},
                                                  true);
  std::vector<Polynomial> d;
  for (const auto& x : *ks) d.push_back(project.apply(P.omega.differential(x.name)));
  report.untwisted = Dgca("twistorial_untwisted", ks, std::move(d));
  return report;
}

}  // namespace ratho
