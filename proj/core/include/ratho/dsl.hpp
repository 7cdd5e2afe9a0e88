#pragma once

// The .dgca model description language.
//
//   file     := decl*
//   decl     := "algebra" NAME "{" (gen | deq)* "}"
//             | "morphism" NAME ":" NAME "->" NAME "{" (NAME "=" expr ";")* "}"
//             | "matrix" NAME [":" NAME] "{" ("[" expr ("," expr)* "]" ";")* "}"
//             | "twist" NAME [":" NAME] "=" expr ";"
//             | "use" NAME ";"
//   gen      := "gen" NAME ":" INT ("," NAME ":" INT)* ";"
//   deq      := "d" NAME "=" expr ";"
//   expr     := ["+"|"-"] term (("+"|"-") term)*
//   term     := factor ("*" factor)*
//   factor   := atom ["^" INT]
//   atom     := INT ["/" INT] | NAME | "(" expr ")"
//
// "#" starts a comment to the end of the line. Generators not given a "d"
// equation are closed; morphism generators not assigned map to zero. Matrix and
// twist declarations default to the most recent algebra.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ratho/dgca.hpp"
#include "ratho/errors.hpp"

namespace ratho {

struct MorphismDecl {
  std::string name;
  std::string source;
  std::string target;
  AlgebraMorphism map;
  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

struct MatrixDecl {
  std::string name;
  std::string algebra;
  std::vector<std::vector<Polynomial>> rows;
  friend bool operator==(const MatrixDecl&, const MatrixDecl&) = default;
};

struct TwistDecl {
  std::string name;
  std::string algebra;
  Polynomial value;
  friend bool operator==(const TwistDecl&, const TwistDecl&) = default;
};

struct ModelFile {
  std::vector<std::string> uses;
  std::vector<Dgca> imported;  // algebras brought in by "use", not printed
  std::vector<Dgca> algebras;
  std::vector<MorphismDecl> morphisms;
  std::vector<MatrixDecl> matrices;
  std::vector<TwistDecl> twists;

  /// Declared algebras first, then imported ones.
  const Dgca* find_algebra(std::string_view name) const;
  const MorphismDecl* find_morphism(std::string_view name) const;
  const MatrixDecl* find_matrix(std::string_view name) const;
  const TwistDecl* find_twist(std::string_view name) const;

  /// Abstract form: declarations (imported algebras excluded).
  friend bool operator==(const ModelFile& a, const ModelFile& b);
};

class ParseError : public Error {
 public:
  enum class Kind { kLexical, kSyntax, kUnknownName, kDegreeMismatch, kOddSquare, kSemantic };

  ParseError(Kind kind, int line, int column, const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  int line_;
  int column_;
  std::string detail_;
};

std::string_view to_string(ParseError::Kind kind);

/// Resolves "use NAME;" to the algebras it provides.
using ImportResolver = std::function<std::vector<Dgca>(const std::string& name)>;

/// The default resolver looks names up in the built-in corpus.
ModelFile parse_model(std::string_view text);
ModelFile parse_model(std::string_view text, const ImportResolver& resolver);

/// Parses an expression over the given generators.
Polynomial parse_expression(std::string_view text, const GeneratorSetPtr& gens);

std::string print_model(const ModelFile& file);
std::string print_algebra(const Dgca& A);

}  // namespace ratho
