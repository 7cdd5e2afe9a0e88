#include "ratho/chern_weil.hpp"

#include <unordered_map>

#include "ratho/errors.hpp"

namespace ratho {

CurvatureMatrix::CurvatureMatrix(GeneratorSetPtr ambient, std::vector<std::vector<Polynomial>> entries,
                                 bool antisymmetric)
    : ambient_(std::move(ambient)), entries_(std::move(entries)), antisymmetric_(antisymmetric) {
  const std::size_t n = entries_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i].size() != n) throw StructuralError("curvature matrix must be square");
    for (auto& e : entries_[i]) {
      if (e.is_zero()) {
        e = Polynomial(ambient_);
        continue;
      }
      if (!same_generators(e.generators(), ambient_))
        throw StructuralError("curvature entry is over other generators");
      if (!e.is_homogeneous_of(2)) throw StructuralError("curvature entries must have degree 2");
    }
  }
  if (antisymmetric_)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(entries_[i][j] + entries_[j][i]).is_zero())
          throw StructuralError("curvature matrix flagged antisymmetric is not");
}

CurvatureMatrix CurvatureMatrix::zero(GeneratorSetPtr ambient, std::size_t n) {
  std::vector<std::vector<Polynomial>> e(n, std::vector<Polynomial>(n, Polynomial(ambient)));
  return CurvatureMatrix(std::move(ambient), std::move(e), true);
}

CurvatureMatrix CurvatureMatrix::diagonal(GeneratorSetPtr ambient, const std::vector<Polynomial>& diag) {
  const std::size_t n = diag.size();
  std::vector<std::vector<Polynomial>> e(n, std::vector<Polynomial>(n, Polynomial(ambient)));
  for (std::size_t i = 0; i < n; ++i) e[i][i] = diag[i];
  return CurvatureMatrix(std::move(ambient), std::move(e));
}

CurvatureMatrix CurvatureMatrix::block_sum(const CurvatureMatrix& a, const CurvatureMatrix& b) {
  if (!same_generators(a.ambient_, b.ambient_)) throw StructuralError("block sum over different ambients");
  const std::size_t n = a.size() + b.size();
  std::vector<std::vector<Polynomial>> e(n, std::vector<Polynomial>(n, Polynomial(a.ambient_)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) e[i][j] = a(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) e[a.size() + i][a.size() + j] = b(i, j);
  return CurvatureMatrix(a.ambient_, std::move(e), a.antisymmetric_ && b.antisymmetric_);
}

CurvatureMatrix CurvatureMatrix::conjugated(const std::vector<std::vector<Rational>>& P,
                                            const std::vector<std::vector<Rational>>& Q) const {
  const std::size_t n = size();
  std::vector<std::vector<Polynomial>> e(n, std::vector<Polynomial>(n, Polynomial(ambient_)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Rational c = P.at(i).at(k) * Q.at(l).at(j);
          if (sgn(c) != 0) e[i][j].axpy(c, entries_[k][l]);
        }
  return CurvatureMatrix(ambient_, std::move(e));
}

Polynomial determinant(const PolyMatrix& M, const GeneratorSetPtr& ambient) {
  const std::size_t n = M.size();
  if (n > 20) throw BudgetExceededError("determinant: size too large");
  std::unordered_map<std::uint32_t, Polynomial> memo;
  // minor(mask) = determinant of rows popcount(mask).. over the columns not in mask.
  auto minor = [&](auto&& self, std::uint32_t mask) -> Polynomial {
    std::size_t row = static_cast<std::size_t>(__builtin_popcount(mask));
    if (row == n) return Polynomial::one(ambient);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    Polynomial out(ambient);
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) continue;
      if (!M[row][j].is_zero()) {
        Polynomial t = M[row][j] * self(self, mask | (1u << j));
        out.axpy(sign, t);
      }
      sign = -sign;
    }
    memo.emplace(mask, out);
    return out;
  };
  return minor(minor, 0);
}

PolyMatrix matrix_product(const PolyMatrix& A, const PolyMatrix& B, const GeneratorSetPtr& ambient) {
  const std::size_t n = A.size();
  PolyMatrix C(n, std::vector<Polynomial>(n, Polynomial(ambient)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (A[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!B[k][j].is_zero()) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

Polynomial trace(const PolyMatrix& M, const GeneratorSetPtr& ambient) {
  Polynomial out(ambient);
  for (std::size_t i = 0; i < M.size(); ++i) out += M[i][i];
  return out;
}

Polynomial trace_power(const CurvatureMatrix& Phi, unsigned k) {
  const auto& amb = Phi.ambient();
  if (k == 0) return Polynomial::constant(amb, static_cast<long>(Phi.size()));
  PolyMatrix P = Phi.entries();
  for (unsigned i = 1; i < k; ++i) P = matrix_product(P, Phi.entries(), amb);
  return trace(P, amb);
}

Polynomial total_chern_form(const CurvatureMatrix& Phi) {
  PolyMatrix M = Phi.entries();
  for (std::size_t i = 0; i < M.size(); ++i) M[i][i] += Polynomial::one(Phi.ambient());
  return determinant(M, Phi.ambient());
}

std::vector<Polynomial> chern_forms(const CurvatureMatrix& Phi, unsigned kmax) {
  Polynomial total = total_chern_form(Phi);
  std::vector<Polynomial> out;
  for (unsigned k = 1; k <= kmax; ++k) out.push_back(total.component(static_cast<int>(2 * k)));
  return out;
}

Polynomial chern_character(const CurvatureMatrix& Phi, unsigned degree_cutoff) {
  const auto& amb = Phi.ambient();
  Polynomial out = Polynomial::constant(amb, static_cast<long>(Phi.size()));
  PolyMatrix P = Phi.entries();
  Rational factorial = 1;
  for (unsigned k = 1; 2 * k <= degree_cutoff; ++k) {
    if (k > 1) P = matrix_product(P, Phi.entries(), amb);
    factorial *= k;
    out.axpy(Rational(1) / factorial, trace(P, amb));
  }
  return out;
}

std::vector<Polynomial> pontrjagin_forms(const CurvatureMatrix& Phi, unsigned kmax) {
  if (!Phi.antisymmetric()) throw PreconditionError("pontrjagin_forms needs an antisymmetric matrix");
  Polynomial total = total_chern_form(Phi);
  std::vector<Polynomial> out;
  for (unsigned k = 1; k <= kmax; ++k) out.push_back(total.component(static_cast<int>(4 * k)));
  return out;
}

Polynomial total_pontrjagin_form(const CurvatureMatrix& Phi) {
  if (!Phi.antisymmetric()) throw PreconditionError("pontrjagin_forms needs an antisymmetric matrix");
  // det(1 + Phi) has no components in degrees 2 mod 4 for antisymmetric Phi.
  return total_chern_form(Phi);
}

Polynomial pfaffian(const CurvatureMatrix& Phi) {
  if (!Phi.antisymmetric()) throw PreconditionError("pfaffian needs an antisymmetric matrix");
  const std::size_t n = Phi.size();
  if (n % 2) throw PreconditionError("pfaffian needs an even-size matrix");
  if (n > 20) throw BudgetExceededError("pfaffian: size too large");
  const auto& amb = Phi.ambient();
  std::unordered_map<std::uint32_t, Polynomial> memo;
  auto pf = [&](auto&& self, std::uint32_t remaining) -> Polynomial {
    if (remaining == 0) return Polynomial::one(amb);
    if (auto it = memo.find(remaining); it != memo.end()) return it->second;
    std::size_t i = static_cast<std::size_t>(__builtin_ctz(remaining));
    Polynomial out(amb);
    int sign = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(remaining & (1u << j))) continue;
      if (!Phi(i, j).is_zero()) out.axpy(sign, Phi(i, j) * self(self, remaining & ~(1u << i) & ~(1u << j)));
      sign = -sign;
    }
    memo.emplace(remaining, out);
    return out;
  };
  return pf(pf, n == 0 ? 0u : static_cast<std::uint32_t>((1ull << n) - 1));
}

Polynomial euler_form(const CurvatureMatrix& Phi) { return pfaffian(Phi); }

Polynomial i8(const Polynomial& p1, const Polynomial& p2) {
  if (!p1.is_homogeneous_of(4)) throw PreconditionError("i8: p1 must have degree 4");
  if (!p2.is_homogeneous_of(8)) throw PreconditionError("i8: p2 must have degree 8");
  Polynomial out = p2 - Rational(1, 4) * (p1 * p1);
  out *= Rational(1, 48);
  return out;
}

Dgca inv_ring_sp2() {
  auto gs = make_generators({{"half_p1", 4}, {"chi8", 8}});
  return Dgca("bsp2", gs, {Polynomial(gs), Polynomial(gs)});
}

Dgca symbol_algebra(const std::vector<std::string>& names, std::string name) {
  std::vector<Generator> gens;
  for (const auto& s : names) gens.push_back({s, 2});
  auto gs = make_generators(std::move(gens));
  return Dgca(std::move(name), gs, std::vector<Polynomial>(gs->size(), Polynomial(gs)));
}

}  // namespace ratho
