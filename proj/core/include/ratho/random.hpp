#pragma once

// Seeded random elements for property checks and the CLI's randomized commands.

#include <optional>
#include <random>

#include "ratho/algebra.hpp"

namespace ratho {

struct RandomElementOptions {
  std::size_t max_terms = 4;
  long coefficient_bound = 3;       // numerators in [-bound, bound], denominators in [1, 2]
  std::optional<int> polybound = 3;  // cap on degree-0 exponents
};

/// Random combination of basis monomials of degree n (zero if the slice is empty).
Polynomial random_homogeneous(const GeneratorSetPtr& gens, int n, std::mt19937_64& rng,
                              const RandomElementOptions& options = {});

/// Sum of random homogeneous parts in degrees lo..hi.
Polynomial random_element(const GeneratorSetPtr& gens, int lo, int hi, std::mt19937_64& rng,
                          const RandomElementOptions& options = {});

}  // namespace ratho
