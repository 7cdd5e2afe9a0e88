#pragma once

// Random model files for round-trip and robustness checks.

#include <random>
#include <string>

#include "ratho/dsl.hpp"
#include "ratho/linfty.hpp"

namespace fuzz {

/// One to three algebras with random generators and differentials (d^2 = 0 is
/// not enforced), plus random morphisms, matrices and twists between them.
ratho::ModelFile random_model(std::mt19937_64& rng);

/// Applies a few random character-level edits.
std::string mutate(const std::string& text, std::mt19937_64& rng);

/// Bracket table honoring degree bookkeeping: basis of size 1..4 in degrees
/// 0..2, arity 1..3, repeated arguments only on odd basis elements. The
/// generalized Jacobi identity holds for some tables and fails for others.
ratho::LInfinityStructure random_bracket_table(std::mt19937_64& rng);

}  // namespace fuzz
