#include "ratho/simplicial_forms.hpp"

#include "ratho/errors.hpp"

namespace ratho {

Dgca simplex_algebra(int n) {
  if (n < 0) throw PreconditionError("simplex dimension must be >= 0");
  std::vector<Generator> gens;
  for (int i = 0; i < n; ++i) gens.push_back({"t" + std::to_string(i), 0});
  for (int i = 0; i < n; ++i) gens.push_back({"th" + std::to_string(i), 1});
  auto gs = make_generators(std::move(gens));
  std::vector<Polynomial> d(gs->size(), Polynomial(gs));
  for (int i = 0; i < n; ++i) d[i] = Polynomial::generator(gs, static_cast<std::size_t>(n + i));
  return Dgca("Delta" + std::to_string(n), gs, std::move(d));
}

Polynomial barycentric(const Dgca& simplex, int n, int i) {
  if (i < 0 || i > n) throw PreconditionError("barycentric index out of range");
  if (i < n) return simplex.gen(static_cast<std::size_t>(i));
  Polynomial out = simplex.one();
  for (int j = 0; j < n; ++j) out -= simplex.gen(static_cast<std::size_t>(j));
  return out;
}

AlgebraMorphism simplicial_pullback(const std::vector<int>& vertex_map, int n) {
  if (vertex_map.empty()) throw PreconditionError("vertex map must be nonempty");
  const int m = static_cast<int>(vertex_map.size()) - 1;
  for (std::size_t k = 0; k < vertex_map.size(); ++k) {
    if (vertex_map[k] < 0 || vertex_map[k] > n) throw PreconditionError("vertex map value out of range");
    if (k && vertex_map[k] < vertex_map[k - 1]) throw PreconditionError("vertex map must be monotone");
  }
  Dgca source = simplex_algebra(n);
  Dgca target = simplex_algebra(m);
  std::vector<Polynomial> images(source.size(), target.zero());
  for (int j = 0; j < n; ++j) {
    Polynomial img = target.zero();
    for (int i = 0; i <= m; ++i)
      if (vertex_map[static_cast<std::size_t>(i)] == j) img += barycentric(target, m, i);
    images[static_cast<std::size_t>(n + j)] = target.apply_d(img);
    images[static_cast<std::size_t>(j)] = std::move(img);
  }
  return AlgebraMorphism(source.generators(), target.generators(), std::move(images));
}

AlgebraMorphism face_pullback(int i, int n) {
  if (n < 1) throw PreconditionError("face_pullback needs n >= 1");
  if (i < 0 || i > n) throw PreconditionError("face index out of range");
  std::vector<int> f;
  for (int k = 0; k < n; ++k) f.push_back(k < i ? k : k + 1);
  return simplicial_pullback(f, n);
}

AlgebraMorphism degeneracy_pullback(int i, int n) {
  if (n < 0) throw PreconditionError("degeneracy_pullback needs n >= 0");
  if (i < 0 || i > n) throw PreconditionError("degeneracy index out of range");
  std::vector<int> f;
  for (int k = 0; k <= n + 1; ++k) f.push_back(k <= i ? k : k - 1);
  return simplicial_pullback(f, n);
}

CylinderAlgebra::CylinderAlgebra(Dgca base) : base_(std::move(base)) {
  cylinder_ = tensor(base_, simplex_algebra(1)).renamed(base_.name() + "[t,dt]");
  t_index_ = base_.size();
  dt_index_ = base_.size() + 1;
  inclusion_ = inclusion_by_name(base_, cylinder_);
  auto make_ev = [&](const Rational& value) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < base_.size(); ++i) images.push_back(base_.gen(i));
    images.push_back(Polynomial::constant(base_.generators(), value));
    images.push_back(base_.zero());
    return AlgebraMorphism(cylinder_.generators(), base_.generators(), std::move(images));
  };
  ev0_ = make_ev(0);
  ev1_ = make_ev(1);
  std::vector<Polynomial> rev;
  for (std::size_t i = 0; i < base_.size(); ++i) rev.push_back(cylinder_.gen(i));
  rev.push_back(cylinder_.one() - t());
  rev.push_back(-dt());
  reversal_ = AlgebraMorphism(cylinder_.generators(), cylinder_.generators(), std::move(rev));
}

Polynomial fiber_integrate(const CylinderAlgebra& C, const Polynomial& w) {
  const auto& base = C.base();
  Polynomial out = base.zero();
  if (w.is_zero()) return out;
  if (!same_generators(w.generators(), C.algebra().generators()))
    throw StructuralError("fiber_integrate: element is not on the cylinder");
  for (const auto& [m, c] : w.terms()) {
    if (!m[C.dt_index()]) continue;
    Monomial b(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) b[i] = m[i];
    Rational coef = c / Rational(static_cast<long>(m[C.t_index()]) + 1);
    if (degree_of(base.gens(), b) % 2) coef = -coef;
    out.add_term(b, coef);
  }
  return out;
}

Polynomial stokes_residual(const CylinderAlgebra& C, const Polynomial& w) {
  const auto& base = C.base();
  Polynomial lhs = base.apply_d(fiber_integrate(C, w));
  Polynomial rhs = C.ev1().apply(w) - C.ev0().apply(w) - fiber_integrate(C, C.algebra().apply_d(w));
  return lhs - rhs;
}

bool check_stokes(const CylinderAlgebra& C, const Polynomial& w) { return stokes_residual(C, w).is_zero(); }

Polynomial projection_residual(const CylinderAlgebra& C, const Polynomial& b, const Polynomial& a) {
  Polynomial lhs = fiber_integrate(C, C.pull(b) * a);
  Polynomial rhs = C.base().zero();
  for (int k : b.degrees()) {
    Polynomial part = b.component(k) * fiber_integrate(C, a);
    rhs.axpy(k % 2 ? -1 : 1, part);
  }
  return lhs - rhs;
}

bool check_projection(const CylinderAlgebra& C, const Polynomial& b, const Polynomial& a) {
  return projection_residual(C, b, a).is_zero();
}

}  // namespace ratho
