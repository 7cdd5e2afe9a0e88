#pragma once

// Degreewise construction of minimal Sullivan models of cohomologically
// 1-connected DGCAs, verification of relative Sullivan extensions, cofibers.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratho/dgca.hpp"
#include "ratho/linfty.hpp"

namespace ratho {

struct MinimalModelOptions {
  std::optional<int> polybound;          // for degree-0 generators of the input
  std::size_t max_generators = 64;
  std::size_t max_slice_dimension = 50000;
  /// When set, cohomology representatives are visited in a seeded pseudo-random
  /// order instead of echelon order. The presentation changes, the counts do not.
  std::optional<std::uint64_t> shuffle_seed;
};

struct MinimalModelResult {
  Dgca model;
  AlgebraMorphism comparison;  // model -> input
  int degree_bound = 0;
  std::map<int, int> generator_counts;
  QuasiIsoReport certificate;  // is_quasi_iso(comparison, [0, degree_bound])
};

/// New generators in degree n are named "v<n>_<k>".
MinimalModelResult minimal_model(const Dgca& A, int degree_bound, const MinimalModelOptions& options = {});

/// Base B inside total E, generator-wise; d_E restricts to d_B on base generators.
class RelativeExtension {
 public:
  RelativeExtension(Dgca base, Dgca total);

  const Dgca& base() const { return base_; }
  const Dgca& total() const { return total_; }
  const AlgebraMorphism& inclusion() const { return inclusion_; }
  /// is_new()[i] is set for total generators not in the base.
  const std::vector<bool>& is_new() const { return is_new_; }
  std::vector<std::size_t> new_generators() const;

 private:
  Dgca base_;
  Dgca total_;
  AlgebraMorphism inclusion_;
  std::vector<bool> is_new_;
};

struct RelativeReport {
  std::optional<std::string> chain_map_failure;  // leg 0: inclusion, target, triangle
  SullivanCertificate relative_order;            // leg (i)
  std::vector<std::size_t> linear_offenders;     // leg (ii), total-generator indices
  std::optional<QuasiIsoReport> quasi_iso;       // leg (iii), absent when leg 0 fails

  bool structural_pass() const { return !chain_map_failure && relative_order.is_sullivan(); }
  bool minimal_pass() const { return linear_offenders.empty(); }
  bool quasi_iso_pass() const { return quasi_iso && quasi_iso->quasi_iso(); }
  bool pass() const { return structural_pass() && minimal_pass() && quasi_iso_pass(); }
};

/// Verifies a supplied relative model: target : E -> A over base_map : B -> A.
RelativeReport verify_relative(const RelativeExtension& ext, const Dgca& A, const AlgebraMorphism& target,
                               const AlgebraMorphism& base_map, int degree_bound,
                               std::optional<int> polybound = std::nullopt);

/// The new generators with all base generators set to zero.
Dgca cofiber(const RelativeExtension& ext, std::string name = {});

}  // namespace ratho
