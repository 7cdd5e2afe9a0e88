#pragma once

// Characteristic forms of curvature matrices whose entries are degree-2
// elements (hence commute). Entries are taken pre-normalized: they stand for
// iF/2pi (complex case) or the matching real rescaling, so all coefficients are
// rational. The Euler form is the Pfaffian of the normalized matrix; the
// classical (-1)^k / ((4 pi)^k k!) prefactor is left to the caller, including
// its sign for odd k.

#include <vector>

#include "ratho/dgca.hpp"

namespace ratho {

class CurvatureMatrix {
 public:
  CurvatureMatrix() = default;
  /// Throws StructuralError unless square with entries homogeneous of degree 2
  /// (or zero) over the ambient generators, and antisymmetric when flagged.
  CurvatureMatrix(GeneratorSetPtr ambient, std::vector<std::vector<Polynomial>> entries,
                  bool antisymmetric = false);

  static CurvatureMatrix zero(GeneratorSetPtr ambient, std::size_t n);
  static CurvatureMatrix diagonal(GeneratorSetPtr ambient, const std::vector<Polynomial>& diag);
  /// Block direct sum; the antisymmetric flag survives if both carry it.
  static CurvatureMatrix block_sum(const CurvatureMatrix& a, const CurvatureMatrix& b);

  std::size_t size() const { return entries_.size(); }
  const GeneratorSetPtr& ambient() const { return ambient_; }
  bool antisymmetric() const { return antisymmetric_; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<std::vector<Polynomial>>& entries() const { return entries_; }

  /// P * Phi * Q for rational matrices P, Q.
  CurvatureMatrix conjugated(const std::vector<std::vector<Rational>>& P,
                             const std::vector<std::vector<Rational>>& Q) const;

 private:
  GeneratorSetPtr ambient_;
  std::vector<std::vector<Polynomial>> entries_;
  bool antisymmetric_ = false;
};

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Determinant of a square matrix with pairwise commuting entries (Laplace
/// expansion along rows with memoized minors).
Polynomial determinant(const PolyMatrix& M, const GeneratorSetPtr& ambient);
PolyMatrix matrix_product(const PolyMatrix& A, const PolyMatrix& B, const GeneratorSetPtr& ambient);
Polynomial trace(const PolyMatrix& M, const GeneratorSetPtr& ambient);
/// tr(Phi^k); k = 0 gives the size.
Polynomial trace_power(const CurvatureMatrix& Phi, unsigned k);

/// det(1 + Phi), inhomogeneous.
Polynomial total_chern_form(const CurvatureMatrix& Phi);
/// [c_1 .. c_kmax]; indices beyond the size give zero.
std::vector<Polynomial> chern_forms(const CurvatureMatrix& Phi, unsigned kmax);
/// n + sum_{k=1..K} tr(Phi^k)/k!, with cutoff = 2K.
Polynomial chern_character(const CurvatureMatrix& Phi, unsigned degree_cutoff);
/// [p_1 .. p_kmax], p_k = degree-4k part of det(1 + Phi) for antisymmetric Phi.
std::vector<Polynomial> pontrjagin_forms(const CurvatureMatrix& Phi, unsigned kmax);
/// 1 + p_1 + p_2 + ...
Polynomial total_pontrjagin_form(const CurvatureMatrix& Phi);
/// Pf(Phi) for antisymmetric Phi of even size.
Polynomial pfaffian(const CurvatureMatrix& Phi);
Polynomial euler_form(const CurvatureMatrix& Phi);
/// (p2 - p1^2/4)/48.
Polynomial i8(const Polynomial& p1, const Polynomial& p2);

/// Q[half_p1 (deg 4), chi8 (deg 8)], d = 0: the invariant polynomials of sp(2).
/// In terms of Pontrjagin classes of the associated rank-5 (or rank-8 real)
/// bundle, chi8 = p2/2 - (p1/2)^2; this relation is a property of the chosen
/// generators, not of the presentation.
Dgca inv_ring_sp2();

/// Ambient algebra for symbolic matrices: polynomial generators of degree 2.
Dgca symbol_algebra(const std::vector<std::string>& names, std::string name = "Sym");

}  // namespace ratho
