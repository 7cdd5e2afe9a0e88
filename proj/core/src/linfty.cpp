#include "ratho/linfty.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ratho/errors.hpp"

namespace ratho {

std::size_t LInfinityStructure::count(std::size_t arity) const {
  std::size_t n = 0;
  for (const auto& [key, v] : brackets)
    if (key.size() == arity && std::any_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) != 0; }))
      ++n;
  return n;
}

int LInfinityStructure::skew_sign(const std::vector<std::size_t>& args) const {
  long exponent = static_cast<long>(args.size());
  for (std::size_t i = 0; i < args.size() / 2; ++i) exponent += basis[args[i]].degree;
  return (exponent % 2 == 0) ? 1 : -1;
}

std::vector<Rational> LInfinityStructure::symmetric_bracket(const std::vector<std::size_t>& args) const {
  std::vector<Rational> zero(basis.size());
  std::vector<std::size_t> sorted = args;
  int sign = 1;
  // Insertion sort; swapping two elements of odd shifted degree costs a sign.
  for (std::size_t i = 1; i < sorted.size(); ++i)
    for (std::size_t j = i; j > 0 && sorted[j - 1] > sorted[j]; --j) {
      if ((basis[sorted[j - 1]].degree + 1) % 2 && (basis[sorted[j]].degree + 1) % 2) sign = -sign;
      std::swap(sorted[j - 1], sorted[j]);
    }
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1] && (basis[sorted[i]].degree + 1) % 2) return zero;
  auto it = brackets.find(sorted);
  if (it == brackets.end()) return zero;
  int skew = skew_sign(sorted);
  std::vector<Rational> out = it->second;
  for (auto& q : out) q *= sign * skew;
  return out;
}

std::vector<Rational> LInfinityStructure::bracket(const std::vector<std::size_t>& args) const {
  auto out = symmetric_bracket(args);
  int s = skew_sign(args);
  for (auto& q : out) q *= s;
  return out;
}

LInfinityStructure brackets_from_ce(const Dgca& A) {
  if (!check_d_squared(A).pass())
    throw PreconditionError("brackets_from_ce: d^2 != 0 on '" + A.name() + "'");
  LInfinityStructure L;
  for (const auto& g : A.gens()) L.basis.push_back({g.name, g.degree - 1});
  for (std::size_t c = 0; c < A.size(); ++c) {
    for (const auto& [m, coef] : A.differential(c).terms()) {
      std::vector<std::size_t> key;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::uint32_t e = 0; e < m[i]; ++e) key.push_back(i);
      auto& vec = L.brackets[key];
      if (vec.empty()) vec.assign(A.size(), Rational(0));
      vec[c] = coef * L.skew_sign(key);
    }
  }
  return L;
}

Dgca ce_from_brackets(const LInfinityStructure& L, std::string name) {
  std::vector<Generator> gens;
  for (const auto& b : L.basis) gens.push_back({b.name, b.degree + 1});
  auto gs = make_generators(std::move(gens));
  std::vector<Polynomial> d(L.size(), Polynomial(gs));
  for (const auto& [key, vec] : L.brackets) {
    if (vec.size() != L.size()) throw PreconditionError("bracket coefficient vector has the wrong length");
    if (key.empty()) throw PreconditionError("brackets must have arity >= 1");
    if (!std::is_sorted(key.begin(), key.end()) || key.back() >= L.size())
      throw PreconditionError("bracket keys must be non-decreasing basis indices");
    Monomial m(L.size());
    int input_degree = 0;
    for (auto i : key) {
      ++m[i];
      input_degree += L.basis[i].degree;
    }
    int skew = L.skew_sign(key);
    Polynomial mono = Polynomial::term(gs, m);
    for (std::size_t c = 0; c < vec.size(); ++c) {
      if (sgn(vec[c]) == 0) continue;
      if (L.basis[c].degree != input_degree + static_cast<int>(key.size()) - 2)
        throw PreconditionError("bracket into '" + L.basis[c].name + "' violates degree bookkeeping");
      if (mono.is_zero())
        throw PreconditionError("nonzero bracket on a repeated odd element '" + L.basis[key[0]].name + "'");
      d[c].axpy(vec[c] * skew, mono);
    }
  }
  return Dgca(std::move(name), gs, std::move(d));
}

DSquaredReport check_jacobi(const LInfinityStructure& L) { return check_d_squared(ce_from_brackets(L)); }

Dgca ce_of_lie_algebra(const std::vector<std::string>& names,
                       const std::vector<std::vector<std::vector<Rational>>>& f, LieInput convention,
                       std::string name) {
  const std::size_t n = names.size();
  std::vector<Generator> gens;
  for (const auto& s : names) gens.push_back({s, 1});
  auto gs = make_generators(std::move(gens));
  std::vector<Polynomial> d(n, Polynomial(gs));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Rational& k = f.at(a).at(b).at(c);
        if (sgn(k) == 0) continue;
        if (convention == LieInput::kOrderedPairs) {
          if (a < b) d[c].axpy(k, Polynomial::generator(gs, a) * Polynomial::generator(gs, b));
        } else {
          d[c].axpy(k, Polynomial::generator(gs, b) * Polynomial::generator(gs, a));
        }
      }
  return Dgca(std::move(name), gs, std::move(d));
}

namespace {

std::vector<std::vector<std::size_t>> dependencies(const Dgca& A) {
  std::vector<std::vector<std::size_t>> deps(A.size());
  for (std::size_t g = 0; g < A.size(); ++g) {
    std::set<std::size_t> s;
    for (const auto& [m, c] : A.differential(g).terms())
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) s.insert(i);
    deps[g].assign(s.begin(), s.end());
  }
  return deps;
}

// Depth-first search preferring to extend the path; a cycle is closed at the
// earliest stack position reachable from the deepest node.
std::vector<std::size_t> find_cycle(const std::vector<std::vector<std::size_t>>& adj,
                                    const std::vector<bool>& active) {
  const std::size_t n = adj.size();
  enum class State { kNew, kOnStack, kDone };
  std::vector<State> state(n, State::kNew);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> position(n, 0);
  std::function<std::vector<std::size_t>(std::size_t)> visit = [&](std::size_t u) -> std::vector<std::size_t> {
    state[u] = State::kOnStack;
    position[u] = stack.size();
    stack.push_back(u);
    for (auto v : adj[u]) {
      if (!active[v] || state[v] != State::kNew) continue;
      auto c = visit(v);
      if (!c.empty()) return c;
    }
    std::optional<std::size_t> earliest;
    for (auto v : adj[u])
      if (active[v] && state[v] == State::kOnStack && (!earliest || position[v] < *earliest))
        earliest = position[v];
    if (earliest) {
      std::vector<std::size_t> cycle(stack.begin() + static_cast<std::ptrdiff_t>(*earliest), stack.end());
      cycle.push_back(stack[*earliest]);
      return cycle;
    }
    stack.pop_back();
    state[u] = State::kDone;
    return {};
  };
  for (std::size_t u = 0; u < n; ++u)
    if (active[u] && state[u] == State::kNew) {
      auto c = visit(u);
      if (!c.empty()) return c;
    }
  return {};
}

}  // namespace

SullivanCertificate is_sullivan_relative(const Dgca& A, const std::vector<bool>& relative) {
  auto deps = dependencies(A);
  const std::size_t n = A.size();
  SullivanCertificate cert;
  // Kahn's algorithm, smallest index first.
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<std::size_t>> dependents(n);
  for (std::size_t g = 0; g < n; ++g) {
    if (!relative[g]) continue;
    for (auto h : deps[g]) {
      if (!relative[h]) continue;
      ++pending[g];
      dependents[h].push_back(g);
    }
  }
  std::set<std::size_t> ready;
  for (std::size_t g = 0; g < n; ++g)
    if (relative[g] && pending[g] == 0) ready.insert(g);
  while (!ready.empty()) {
    auto g = *ready.begin();
    ready.erase(ready.begin());
    cert.order.push_back(g);
    for (auto h : dependents[g])
      if (--pending[h] == 0) ready.insert(h);
  }
  std::size_t active_count = static_cast<std::size_t>(std::count(relative.begin(), relative.end(), true));
  if (cert.order.size() != active_count) {
    cert.order.clear();
    cert.cycle = find_cycle(deps, relative);
  }
  return cert;
}

SullivanCertificate is_sullivan(const Dgca& A) { return is_sullivan_relative(A, std::vector<bool>(A.size(), true)); }

MinimalityReport is_minimal(const Dgca& A) {
  std::set<std::size_t> offenders;
  auto deps = dependencies(A);
  for (std::size_t g = 0; g < A.size(); ++g) {
    if (A.gens()[g].degree == 0) offenders.insert(g);
    for (const auto& [m, c] : A.differential(g).terms())
      if (m.word_length() == 1) offenders.insert(g);
    // A monotone Sullivan order forbids depending on a higher-degree generator.
    for (auto h : deps[g])
      if (A.gens()[h].degree > A.gens()[g].degree) offenders.insert(g);
  }
  // Within one degree the dependencies must be acyclic.
  std::set<int> degrees;
  for (const auto& g : A.gens()) degrees.insert(g.degree);
  for (int deg : degrees) {
    std::vector<bool> active(A.size());
    for (std::size_t g = 0; g < A.size(); ++g) active[g] = A.gens()[g].degree == deg;
    auto cert = is_sullivan_relative(A, active);
    for (auto g : cert.cycle) offenders.insert(g);
  }
  return {offenders.empty(), std::vector<std::size_t>(offenders.begin(), offenders.end())};
}

std::map<int, int> whitehead_summary(const Dgca& A) {
  for (const auto& g : A.gens())
    if (g.degree < 2) throw PreconditionError("whitehead_summary needs all generators in degree >= 2");
  if (!is_minimal(A).minimal) throw PreconditionError("whitehead_summary needs a minimal algebra");
  std::map<int, int> out;
  for (const auto& g : A.gens()) ++out[g.degree];
  return out;
}

}  // namespace ratho
