#pragma once

// Incremental exact row reduction over polynomial-valued vectors. Coordinates
// are monomials; the pivot of a vector is its smallest monomial, which gives the
// deterministic "first nonzero column" pivoting used throughout.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ratho/algebra.hpp"

namespace ratho {

struct NoWitness {
  void axpy(const Rational&, const NoWitness&) {}
  void scale(const Rational&) {}
};

/// Two-component witness, used when a relation must be split into a part in
/// one algebra and a part in another.
struct WitnessPair {
  Polynomial first;
  Polynomial second;

  void axpy(const Rational& c, const WitnessPair& o) {
    first.axpy(c, o.first);
    second.axpy(c, o.second);
  }
  void scale(const Rational& c) {
    first *= c;
    second *= c;
  }
};

/// Echelon basis of a span of polynomials. Each stored vector carries a witness
/// that is transformed by the same row operations, so linear relations among
/// the inserted vectors can be read back.
template <class Witness = NoWitness>
class LinearSpan {
 public:
  struct Row {
    Polynomial value;  // leading coefficient normalized to 1
    Witness witness;
  };

  struct Reduction {
    Polynomial residual;
    Witness witness;  // witness of the input minus combinations of stored witnesses
  };

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }

  /// Reduces v against the basis without modifying the span.
  Reduction reduce(Polynomial v, Witness w = {}) const {
    auto it = v.terms().begin();
    while (it != v.terms().end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      const Row& row = rows_[p->second];
      Rational c = -it->second;
      Monomial key = it->first;
      v.axpy(c, row.value);
      w.axpy(c, row.witness);
      // Only monomials larger than the pivot change.
      it = v.terms().upper_bound(key);
    }
    return {std::move(v), std::move(w)};
  }

  bool contains(const Polynomial& v) const { return reduce(v).residual.is_zero(); }

  /// Inserts v; returns nullopt if v was independent, otherwise the reduced
  /// witness of the dependency (input witness minus the combination spent).
  std::optional<Witness> insert(Polynomial v, Witness w = {}) {
    auto red = reduce(std::move(v), std::move(w));
    if (red.residual.is_zero()) return std::move(red.witness);
    const auto& lead = *red.residual.terms().begin();
    Monomial key = lead.first;
    Rational inv = 1 / lead.second;
    red.residual *= inv;
    red.witness.scale(inv);
    pivots_.emplace(key, rows_.size());
    rows_.push_back({std::move(red.residual), std::move(red.witness)});
    return std::nullopt;
  }

 private:
  std::vector<Row> rows_;
  std::map<Monomial, std::size_t> pivots_;
};

}  // namespace ratho
