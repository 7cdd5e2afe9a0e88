#pragma once

// Twisted de Rham complexes (Omega, d - H wedge) with H closed of degree 2r+1,
// folded 2r-periodically. r = 0 is the non-periodic degree-1 twist.

#include <optional>
#include <vector>

#include "ratho/dgca.hpp"

namespace ratho {

class TwistedComplex {
 public:
  /// truncation caps the total degree; required unless every generator is odd.
  TwistedComplex(Dgca base, Polynomial twist, int period, std::optional<int> truncation = std::nullopt);

  const Dgca& base() const { return base_; }
  const Polynomial& twist() const { return twist_; }
  int period() const { return period_; }
  /// 2r, or 0 for the non-periodic case.
  int modulus() const { return 2 * period_; }
  /// Number of graded pieces: 2r residues, or top_degree()+1 degrees when r = 0.
  int residue_count() const;
  int top_degree() const { return top_; }
  bool truncated() const { return truncated_; }
  /// Residue of a degree.
  int residue_of(int degree) const;
  /// Degrees in [0, top_degree()] folding to the residue.
  std::vector<int> degrees_of(int residue) const;

  /// Same base and period, twist scaled by c.
  TwistedComplex scaled(const Rational& c) const;

 private:
  Dgca base_;
  Polynomial twist_;
  int period_;
  int top_;
  bool truncated_;
};

/// dx - H*x, with components above the truncation dropped.
Polynomial twisted_d(const TwistedComplex& C, const Polynomial& x);

struct TwistedSlice {
  int residue = 0;
  std::size_t dimension = 0;
  std::vector<Polynomial> representatives;
  std::vector<Polynomial> cocycles;    // basis of the kernel of D
  std::vector<Polynomial> boundaries;  // echelon basis of the image of D
  std::size_t cocycle_dimension = 0;
  std::size_t boundary_dimension = 0;
  /// Truncated complexes cannot vouch for classes touching the top degree.
  bool boundary_affected = false;
};

struct TwistedCohomology {
  std::vector<TwistedSlice> slices;  // indexed by residue
  bool approximate = false;
  std::vector<std::size_t> dimensions() const;
};

TwistedCohomology twisted_cohomology(const TwistedComplex& C);
TwistedSlice twisted_cohomology_slice(const TwistedComplex& C, int residue);

/// Returns y with D y = x, or nullopt. Throws PreconditionError unless x is
/// D-closed with all degrees in one residue.
std::optional<Polynomial> twisted_exact(const TwistedComplex& C, const Polynomial& x);

struct TwistedClass {
  int residue = 0;
  Polynomial representative;
};

/// Validates closedness and residue of rep.
TwistedClass make_twisted_class(const TwistedComplex& C, Polynomial rep);

/// rep -> rep * H, residue + 1.
TwistedClass op_wedge_twist(const TwistedComplex& C, const TwistedClass& cls);
/// rep -> rep * rep, a class of C.scaled(2). Even residues only.
TwistedClass op_wedge_square(const TwistedComplex& C, const TwistedClass& cls);
/// op_wedge_twist in the 2H complex after op_wedge_square.
TwistedClass op_square_then_twist(const TwistedComplex& C, const TwistedClass& cls);

}  // namespace ratho
