#include "ratho/random.hpp"

namespace ratho {

Polynomial random_homogeneous(const GeneratorSetPtr& gens, int n, std::mt19937_64& rng,
                              const RandomElementOptions& options) {
  Polynomial out(gens);
  bool has_degree_zero = false;
  for (const auto& g : *gens) has_degree_zero = has_degree_zero || g.degree == 0;
  auto basis = basis_of_degree(*gens, n, has_degree_zero ? options.polybound : std::nullopt);
  if (basis.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<long> num(-options.coefficient_bound, options.coefficient_bound);
  std::uniform_int_distribution<long> den(1, 2);
  std::uniform_int_distribution<std::size_t> count(1, options.max_terms);
  for (std::size_t k = count(rng); k > 0; --k) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    out.add_term(basis[pick(rng)], c);
  }
  return out;
}

Polynomial random_element(const GeneratorSetPtr& gens, int lo, int hi, std::mt19937_64& rng,
                          const RandomElementOptions& options) {
  Polynomial out(gens);
  for (int n = lo; n <= hi; ++n) out += random_homogeneous(gens, n, rng, options);
  return out;
}

}  // namespace ratho
