#pragma once

// Polynomial differential forms on standard simplices and the interval
// cylinder A[t, dt] with fiber integration over [0, 1].
//
// Delta^n has free generators t0..t{n-1} (degree 0) and th0..th{n-1}
// (degree 1, d ti = thi); the last barycentric coordinate t_n = 1 - sum ti is
// eliminated. On the cylinder, ev0 restricts to t = 0 (the face opposite
// vertex 0 of Delta^1) and ev1 to t = 1.

#include <string>
#include <vector>

#include "ratho/dgca.hpp"

namespace ratho {

Dgca simplex_algebra(int n);

/// Barycentric coordinate t_i of Delta^n, 0 <= i <= n, with t_n eliminated.
Polynomial barycentric(const Dgca& simplex, int n, int i);

/// Pullback along the simplicial map Delta^m -> Delta^n given by the monotone
/// vertex map f : [m] -> [n]: t_j -> sum over f(i) = j of t_i.
AlgebraMorphism simplicial_pullback(const std::vector<int>& vertex_map, int n);

/// Dual of the i-th coface [n-1] -> [n] (skipping vertex i): Delta^n -> Delta^{n-1}.
AlgebraMorphism face_pullback(int i, int n);
/// Dual of the i-th codegeneracy [n+1] -> [n] (hitting i twice): Delta^n -> Delta^{n+1}.
AlgebraMorphism degeneracy_pullback(int i, int n);

class CylinderAlgebra {
 public:
  /// Throws StructuralError if the base already uses the names t0 or th0.
  explicit CylinderAlgebra(Dgca base);

  const Dgca& base() const { return base_; }
  const Dgca& algebra() const { return cylinder_; }
  Polynomial t() const { return cylinder_.gen(t_index_); }
  Polynomial dt() const { return cylinder_.gen(dt_index_); }
  std::size_t t_index() const { return t_index_; }
  std::size_t dt_index() const { return dt_index_; }

  /// A -> A[t, dt]
  const AlgebraMorphism& inclusion() const { return inclusion_; }
  /// A[t, dt] -> A at t = 0 and t = 1.
  const AlgebraMorphism& ev0() const { return ev0_; }
  const AlgebraMorphism& ev1() const { return ev1_; }
  /// t -> 1 - t.
  const AlgebraMorphism& reversal() const { return reversal_; }

  Polynomial pull(const Polynomial& a) const { return inclusion_.apply(a); }

 private:
  Dgca base_;
  Dgca cylinder_;
  std::size_t t_index_ = 0;
  std::size_t dt_index_ = 0;
  AlgebraMorphism inclusion_;
  AlgebraMorphism ev0_;
  AlgebraMorphism ev1_;
  AlgebraMorphism reversal_;
};

/// Integration over the fiber [0, 1]: dt is moved to the front with its Koszul
/// sign and then t^k dt integrates to 1/(k+1). With this,
///   d(int w) = ev1(w) - ev0(w) - int(dw)  and  int(b * w) = (-1)^|b| b * int(w).
Polynomial fiber_integrate(const CylinderAlgebra& C, const Polynomial& w);

/// d(int w) - (ev1 w - ev0 w - int dw); zero when the Stokes formula holds.
Polynomial stokes_residual(const CylinderAlgebra& C, const Polynomial& w);
bool check_stokes(const CylinderAlgebra& C, const Polynomial& w);
/// b in the base, a on the cylinder.
Polynomial projection_residual(const CylinderAlgebra& C, const Polynomial& b, const Polynomial& a);
bool check_projection(const CylinderAlgebra& C, const Polynomial& b, const Polynomial& a);

}  // namespace ratho
