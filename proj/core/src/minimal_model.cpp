#include "ratho/minimal_model.hpp"

#include <algorithm>
#include <random>

#include "ratho/errors.hpp"

namespace ratho {

namespace {

struct ModelState {
  std::vector<Generator> gens;
  std::vector<Polynomial> differentials;  // over the previous generator set, re-embedded on rebuild
  std::vector<Polynomial> images;         // over the target's generators
  Dgca model = Dgca::ground("M");

  void adjoin(std::vector<Generator> new_gens, std::vector<Polynomial> new_d, std::vector<Polynomial> new_images) {
    if (new_gens.empty()) return;
    for (auto& g : new_gens) gens.push_back(std::move(g));
    for (auto& d : new_d) differentials.push_back(std::move(d));
    for (auto& p : new_images) images.push_back(std::move(p));
    auto gs = make_generators(gens);
    std::vector<Polynomial> d;
    for (const auto& p : differentials) d.push_back(embed(p, gs));
    differentials = d;
    model = Dgca("M", gs, std::move(d));
  }

  AlgebraMorphism comparison(const GeneratorSetPtr& target) const {
    return AlgebraMorphism(model.generators(), target, images);
  }
};

void check_budget(const CohomologySlice& s, const MinimalModelOptions& o) {
  if (s.basis.size() > o.max_slice_dimension)
    throw BudgetExceededError("slice of degree " + std::to_string(s.degree) + " has dimension " +
                              std::to_string(s.basis.size()) + " > cap " + std::to_string(o.max_slice_dimension));
}

}  // namespace

MinimalModelResult minimal_model(const Dgca& A, int degree_bound, const MinimalModelOptions& options) {
  if (degree_bound < 0) throw PreconditionError("minimal_model needs a non-negative degree bound");
  const auto pb = options.polybound;
  if (cohomology_slice(A, 0, pb).dimension != 1)
    throw PreconditionError("minimal_model needs H^0(A) = Q");
  if (cohomology_slice(A, 1, pb).dimension != 0)
    throw PreconditionError("minimal_model needs H^1(A) = 0 (simply connected input)");

  std::mt19937_64 rng(options.shuffle_seed.value_or(0));
  auto ordered = [&](std::vector<Polynomial> v) {
    if (options.shuffle_seed) std::shuffle(v.begin(), v.end(), rng);
    return v;
  };

  ModelState state;
  const auto& tg = A.generators();
  for (int n = 2; n <= degree_bound; ++n) {
    // Surject onto H^n(A).
    auto phi = state.comparison(tg);
    auto hm = cohomology_slice(state.model, n);
    auto ha = cohomology_slice(A, n, pb);
    check_budget(ha, options);
    LinearSpan<> reached;
    for (const auto& row : ha.boundaries.rows()) reached.insert(row.value);
    for (const auto& r : hm.representatives)
      if (reached.insert(phi.apply(r)))
        throw Error("minimal_model: induced map lost injectivity in degree " + std::to_string(n));
    std::vector<Generator> closed;
    std::vector<Polynomial> closed_images;
    for (const auto& a : ordered(ha.representatives)) {
      if (reached.insert(a)) continue;
      closed.push_back({"v" + std::to_string(n) + "_" + std::to_string(closed.size() + 1), n});
      closed_images.push_back(a);
    }
    std::vector<Polynomial> zero_d(closed.size(), Polynomial());
    std::size_t added = closed.size();
    state.adjoin(std::move(closed), std::move(zero_d), std::move(closed_images));

    // Kill the kernel of H^{n+1}(M) -> H^{n+1}(A).
    phi = state.comparison(tg);
    auto hm1 = cohomology_slice(state.model, n + 1);
    auto ha1 = cohomology_slice(A, n + 1, pb);
    check_budget(ha1, options);
    LinearSpan<WitnessPair> relations;
    for (const auto& row : ha1.boundaries.rows())
      relations.insert(row.value, WitnessPair{state.model.zero(), row.witness});
    std::vector<Generator> killers;
    std::vector<Polynomial> killer_d;
    std::vector<Polynomial> killer_images;
    for (const auto& z : ordered(hm1.representatives)) {
      auto rel = relations.insert(phi.apply(z), WitnessPair{z, A.zero()});
      if (!rel) continue;
      // phi(rel.first) = -d(rel.second)
      killers.push_back({"v" + std::to_string(n) + "_" + std::to_string(added + killers.size() + 1), n});
      killer_d.push_back(rel->first);
      killer_images.push_back(-rel->second);
    }
    state.adjoin(std::move(killers), std::move(killer_d), std::move(killer_images));
    if (state.gens.size() > options.max_generators)
      throw BudgetExceededError("minimal_model: more than " + std::to_string(options.max_generators) +
                                " generators");
  }

  MinimalModelResult result;
  result.model = state.model;
  result.comparison = state.comparison(tg);
  result.degree_bound = degree_bound;
  for (const auto& g : state.gens) ++result.generator_counts[g.degree];
  result.certificate = is_quasi_iso(result.model, A, result.comparison, 0, degree_bound, std::nullopt, pb);
  if (!result.certificate.quasi_iso())
    throw Error("minimal_model: constructed comparison map failed quasi-iso certification");
  return result;
}

// ---------------------------------------------------------------------------

RelativeExtension::RelativeExtension(Dgca base, Dgca total)
    : base_(std::move(base)), total_(std::move(total)) {
  inclusion_ = inclusion_by_name(base_, total_);
  is_new_.assign(total_.size(), true);
  for (std::size_t i = 0; i < base_.size(); ++i) {
    auto j = total_.gens().index_of(base_.gens()[i].name);
    is_new_[j] = false;
    if (total_.differential(j) != inclusion_.apply(base_.differential(i)))
      throw StructuralError("relative extension: d of base generator '" + base_.gens()[i].name +
                            "' differs in the total algebra");
  }
}

std::vector<std::size_t> RelativeExtension::new_generators() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < is_new_.size(); ++i)
    if (is_new_[i]) out.push_back(i);
  return out;
}

RelativeReport verify_relative(const RelativeExtension& ext, const Dgca& A, const AlgebraMorphism& target,
                               const AlgebraMorphism& base_map, int degree_bound, std::optional<int> polybound) {
  RelativeReport report;
  const auto& E = ext.total();
  const auto& B = ext.base();
  if (auto w = chain_map_failure(B, E, ext.inclusion())) {
    report.chain_map_failure = "inclusion at '" + B.gens()[w->generator].name + "'";
  } else if (auto w2 = chain_map_failure(E, A, target)) {
    report.chain_map_failure = "target at '" + E.gens()[w2->generator].name + "'";
  } else if (auto w3 = chain_map_failure(B, A, base_map)) {
    report.chain_map_failure = "base map at '" + B.gens()[w3->generator].name + "'";
  } else {
    auto composite = compose(target, ext.inclusion());
    for (std::size_t i = 0; i < B.size(); ++i)
      if (composite.image(i) != base_map.image(i)) {
        report.chain_map_failure = "triangle at '" + B.gens()[i].name + "'";
        break;
      }
  }
  report.relative_order = is_sullivan_relative(E, ext.is_new());
  for (auto g : ext.new_generators()) {
    for (const auto& [m, c] : E.differential(g).terms()) {
      if (m.word_length() != 1) continue;
      std::size_t i = 0;
      while (!m[i]) ++i;
      if (ext.is_new()[i]) {
        report.linear_offenders.push_back(g);
        break;
      }
    }
  }
  if (!report.chain_map_failure)
    report.quasi_iso = is_quasi_iso(E, A, target, 0, degree_bound, std::nullopt, polybound);
  return report;
}

Dgca cofiber(const RelativeExtension& ext, std::string name) {
  const auto& E = ext.total();
  std::vector<Generator> gens;
  for (auto i : ext.new_generators()) gens.push_back(E.gens()[i]);
  auto gs = make_generators(std::move(gens));
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < E.size(); ++i)
    images.push_back(ext.is_new()[i] ? Polynomial::generator(gs, E.gens()[i].name) : Polynomial(gs));
  AlgebraMorphism project(E.generators(), gs, std::move(images));
  std::vector<Polynomial> d;
  for (auto i : ext.new_generators()) d.push_back(project.apply(E.differential(i)));
  if (name.empty()) name = E.name() + "_cofiber";
  return Dgca(std::move(name), gs, std::move(d));
}

}  // namespace ratho
