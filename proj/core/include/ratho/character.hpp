#pragma once

// Flat and twisted-flat L-infinity valued form data as DGCA maps out of
// Chevalley-Eilenberg algebras, their concordances through the cylinder, and
// the two families where concordance is decidable: line coefficients b^n and
// twisted ku1.

#include <optional>
#include <string>
#include <vector>

#include "ratho/dgca.hpp"
#include "ratho/minimal_model.hpp"
#include "ratho/simplicial_forms.hpp"
#include "ratho/twisted_derham.hpp"

namespace ratho {

struct FlatFormDatum {
  Dgca coefficients;  // CE(g)
  Dgca target;        // Omega
  AlgebraMorphism assignment;
};

struct BianchiFailure {
  std::string generator;
  Polynomial residual;  // F(d g) - d F(g)
};

struct FlatnessReport {
  std::vector<BianchiFailure> failures;
  bool pass() const { return failures.empty(); }
};

/// Checks every generator's differential relation on the assigned forms.
FlatnessReport verify_flat(const FlatFormDatum& F);

struct TwistedFlatFormDatum {
  RelativeExtension bundle;   // CE(b) inside CE(b^)
  FlatFormDatum twist;        // CE(b) -> Omega
  AlgebraMorphism assignment;  // CE(b^) -> Omega
};

struct TriangleFailure {
  std::string generator;  // base generator
  Polynomial residual;    // assignment(g) - twist(g)
};

struct TwistedFlatReport {
  FlatnessReport twist;
  FlatnessReport total;
  std::vector<TriangleFailure> triangle;
  bool pass() const { return twist.pass() && total.pass() && triangle.empty(); }
};

TwistedFlatReport verify_twisted_flat(const TwistedFlatFormDatum& T);

/// A datum on the cylinder over Omega. In the twisted case, base generators of
/// the bundle must be assigned the pullback of the twist.
struct ConcordanceDatum {
  Dgca coefficients;
  CylinderAlgebra cylinder;
  AlgebraMorphism assignment;  // coefficients -> cylinder
  AlgebraMorphism start;       // coefficients -> Omega
  AlgebraMorphism end;
  std::optional<RelativeExtension> bundle;
  std::optional<AlgebraMorphism> twist;  // bundle base -> Omega
};

struct EndpointFailure {
  std::string endpoint;  // "ev0" or "ev1"
  std::string generator;
  Polynomial residual;
};

struct ConcordanceReport {
  FlatnessReport cylinder;
  std::vector<EndpointFailure> endpoints;
  std::vector<TriangleFailure> twist;
  bool pass() const { return cylinder.pass() && endpoints.empty() && twist.empty(); }
};

ConcordanceReport verify_concordance(const ConcordanceDatum& C);

/// Pullback of F along the projection: a concordance from F to F.
ConcordanceDatum constant_concordance(const FlatFormDatum& F);
/// The same concordance run backwards (t -> 1 - t).
ConcordanceDatum reversed(const ConcordanceDatum& C);

/// b^n R: one closed generator c of degree n+1.
Dgca line_algebra(int n);
FlatFormDatum line_datum(const Dgca& Omega, int n, const Polynomial& form);

/// (1-t) F0 + t F1 + dt * h. Throws PreconditionError unless dh = F1 - F0.
ConcordanceDatum linear_concordance(const Dgca& Omega, int n, const Polynomial& F0, const Polynomial& F1,
                                    const Polynomial& h);
/// int over [0,1] of the datum's value on c.
Polynomial extract_line_witness(const ConcordanceDatum& C);

/// Concordance decision. Supported for line coefficients (via exactness of
/// F1 - F0); anything else raises VerificationOnlyError.
std::optional<ConcordanceDatum> decide_concordance(const FlatFormDatum& F0, const FlatFormDatum& F1,
                                                   std::optional<int> polybound = std::nullopt);

struct LineQuotientReport {
  int n = 0;
  std::size_t cohomology_dimension = 0;  // dim H^{n+1}
  std::size_t lattice_points = 0;
  std::size_t concordance_classes = 0;
  std::size_t cohomology_classes = 0;   // distinct classes among lattice points
  std::size_t pairs_checked = 0;
  std::size_t mismatches = 0;            // concordant != cohomologous
  std::size_t extraction_failures = 0;   // int of a concordance not a primitive of F1 - F0
  std::vector<Polynomial> class_representatives;
  bool pass() const {
    return mismatches == 0 && extraction_failures == 0 && concordance_classes == cohomology_classes;
  }
};

/// Enumerates the closed (n+1)-forms sum a_i z_i over a cocycle basis with
/// a_i in [-lattice, lattice] and compares concordance with cohomology.
LineQuotientReport line_quotient(const Dgca& Omega, int n, int lattice = 2,
                                 std::optional<int> polybound = std::nullopt);

// --- twisted ku1 -----------------------------------------------------------

/// ku1 truncated at top_degree: f1, f3, ... all closed.
Dgca ku1_algebra(int top_degree = 9);
/// Base Q[h3] inside h3, f1, f3, ... with d f_{2k+1} = h3 f_{2k-1}.
RelativeExtension twisted_ku1_bundle(int top_degree = 9);

/// Twisted datum over Omega with h3 -> H and f_{2k+1} -> degree-(2k+1) part of F.
TwistedFlatFormDatum twisted_ku1_datum(const Dgca& Omega, const Polynomial& H, const Polynomial& F,
                                       int top_degree = 9);

/// (1-t) F0 + t F1 + dt * h componentwise, h even with (d - H) h = F1 - F0.
ConcordanceDatum twisted_ku1_concordance(const Dgca& Omega, const Polynomial& H, const Polynomial& F0,
                                         const Polynomial& F1, const Polynomial& h, int top_degree = 9);
/// sum over k of int f_{2k+1}; recovers h.
Polynomial extract_twisted_ku1_witness(const ConcordanceDatum& C);

/// Decides concordance via twisted exactness of F1 - F0 in (Omega, H), r = 1.
std::optional<ConcordanceDatum> decide_twisted_ku1_concordance(const Dgca& Omega, const Polynomial& H,
                                                               const Polynomial& F0, const Polynomial& F1,
                                                               int top_degree = 9);

struct TwistedBridgeReport {
  std::size_t lattice_points = 0;
  std::size_t twisted_classes = 0;   // odd-residue dimension
  std::size_t concordance_classes = 0;
  std::size_t cohomology_classes = 0;
  std::size_t flat_failures = 0;
  std::size_t mismatches = 0;
  std::size_t extraction_failures = 0;
  bool pass() const {
    return flat_failures == 0 && mismatches == 0 && extraction_failures == 0 &&
           concordance_classes == cohomology_classes;
  }
};

/// Twisted ku1 data over a finite Omega: odd twisted cocycles with lattice
/// coefficients, concordance against twisted cohomology classes.
TwistedBridgeReport twisted_ku1_bridge(const Dgca& Omega, const Polynomial& H, int lattice = 1);

// --- twistorial preset -----------------------------------------------------

/// Relative model over inv_ring_sp2(): f2, h3, w4, w7 with
///   d h3 = w4 - half_p1/2 - f2^2,   d w7 = -w4^2 + half_p1^2/4 - chi8.
RelativeExtension twistor_relative_model();
/// Relative model over inv_ring_sp2(): w4, w7 with the same d w7.
RelativeExtension s4_relative_model();

struct TwistorialPreset {
  Dgca omega;  // F2, H3, G4, q, e8, G7
  TwistedFlatFormDatum datum;        // over the twistor model
  TwistedFlatFormDatum pushforward;  // over the S^4 model, restricted to G4, G7, q, e8
};

TwistorialPreset preset_twistorial();

struct TwistorialReport {
  DSquaredReport d_squared;
  TwistedFlatReport datum;
  TwistedFlatReport pushforward;
  std::optional<Polynomial> charge_witness;  // primitive of G4 - q - F2^2
  bool witness_is_H3 = false;
  Dgca untwisted;  // q = e8 = 0
  bool pass() const {
    return d_squared.pass() && datum.pass() && pushforward.pass() && charge_witness && witness_is_H3;
  }
};

TwistorialReport verify_twistorial(const TwistorialPreset& P);

}  // namespace ratho
