#include "ratho/dsl.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "ratho/corpus.hpp"

namespace ratho {

std::string_view to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::kLexical: return "lexical error";
    case ParseError::Kind::kSyntax: return "syntax error";
    case ParseError::Kind::kUnknownName: return "unknown name";
    case ParseError::Kind::kDegreeMismatch: return "degree mismatch";
    case ParseError::Kind::kOddSquare: return "odd square";
    case ParseError::Kind::kSemantic: return "semantic error";
  }
  return "error";
}

ParseError::ParseError(Kind kind, int line, int column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + std::string(to_string(kind)) + ": " +
            message),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(message) {}

namespace {

using Kind = ParseError::Kind;

enum class Tok { kName, kInt, kPunct, kEnd };

struct Token {
  Tok type;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::kName, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.')
        throw ParseError(Kind::kLexical, line, col + static_cast<int>(j - i),
                         "decimal numbers are not accepted; write rationals as p/q");
      out.push_back({Tok::kInt, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::kPunct, "->", l, cl});
      advance(2);
      continue;
    }
    static const std::string punct = "{}()[]:;,=+-*/^";
    if (punct.find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Tok::kPunct, std::string(1, static_cast<char>(c)), l, cl});
      advance(1);
      continue;
    }
    std::string shown = c < 0x80 && std::isprint(c) ? std::string(1, static_cast<char>(c))
                                                     : "byte 0x" + [&] {
                                                         std::ostringstream os;
                                                         os << std::hex << static_cast<int>(c);
                                                         return os.str();
                                                       }();
    throw ParseError(Kind::kLexical, line, col, "unexpected character '" + shown + "'");
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"algebra", "gen", "d", "morphism", "matrix", "twist", "use"};
  return k;
}

struct Value {
  Polynomial poly;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const ImportResolver* resolver) : toks_(std::move(toks)), resolver_(resolver) {}

  ModelFile file() {
    ModelFile out;
    while (peek().type != Tok::kEnd) {
      const Token& t = peek();
      if (t.type != Tok::kName) fail(Kind::kSyntax, t, "expected a declaration, found '" + t.text + "'");
      if (t.text == "algebra") {
        algebra(out);
      } else if (t.text == "morphism") {
        morphism(out);
      } else if (t.text == "matrix") {
        matrix(out);
      } else if (t.text == "twist") {
        twist(out);
      } else if (t.text == "use") {
        use(out);
      } else {
        fail(Kind::kSyntax, t, "expected a declaration, found '" + t.text + "'");
      }
    }
    return out;
  }

  Polynomial standalone_expression(const GeneratorSetPtr& gens) {
    Polynomial p = expr(gens);
    if (peek().type != Tok::kEnd) fail(Kind::kSyntax, peek(), "unexpected '" + peek().text + "' after expression");
    return p;
  }

 private:
  [[noreturn]] void fail(Kind k, const Token& t, const std::string& msg) const {
    throw ParseError(k, t.line, t.column, msg);
  }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(const char* p) {
    if (peek().type == Tok::kPunct && peek().text == p) {
      next();
      return true;
    }
    return false;
  }
  const Token& expect(const char* p) {
    if (peek().type != Tok::kPunct || peek().text != p)
      fail(Kind::kSyntax, peek(), std::string("expected '") + p + "', found " + describe(peek()));
    return next();
  }
  static std::string describe(const Token& t) {
    if (t.type == Tok::kEnd) return "end of input";
    return "'" + t.text + "'";
  }
  const Token& name(const char* what) {
    if (peek().type != Tok::kName) fail(Kind::kSyntax, peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }
  long integer(const char* what) {
    if (peek().type != Tok::kInt) fail(Kind::kSyntax, peek(), std::string("expected ") + what + ", found " + describe(peek()));
    const Token& t = next();
    if (t.text.size() > 6) fail(Kind::kSemantic, t, "integer too large");
    return std::stol(t.text);
  }

  void check_new_name(const ModelFile& f, const Token& t) const {
    if (keywords().count(t.text)) fail(Kind::kSemantic, t, "'" + t.text + "' is a keyword");
    bool taken = false;
    for (const auto& a : f.algebras) taken = taken || a.name() == t.text;
    taken = taken || f.find_morphism(t.text) || f.find_matrix(t.text) || f.find_twist(t.text);
    if (taken) fail(Kind::kSemantic, t, "duplicate declaration '" + t.text + "'");
  }

  const Dgca& algebra_ref(const ModelFile& f, const Token& t) const {
    const Dgca* a = f.find_algebra(t.text);
    if (!a) fail(Kind::kUnknownName, t, "unknown algebra '" + t.text + "'");
    return *a;
  }

  void use(ModelFile& f) {
    next();
    const Token& n = name("a corpus name");
    expect(";");
    if (!resolver_ || !*resolver_) fail(Kind::kUnknownName, n, "no corpus available for '" + n.text + "'");
    std::vector<Dgca> algs;
    try {
      algs = (*resolver_)(n.text);
    } catch (const Error& e) {
      fail(Kind::kUnknownName, n, e.what());
    }
    f.uses.push_back(n.text);
    for (auto& a : algs) f.imported.push_back(std::move(a));
  }

  void algebra(ModelFile& f) {
    next();
    const Token& n = name("an algebra name");
    check_new_name(f, n);
    expect("{");
    std::vector<Generator> gens;
    std::vector<std::size_t> gen_tokens;
    struct Equation {
      std::size_t name_token;
      std::size_t expr_token;
    };
    std::vector<Equation> eqs;
    while (!accept("}")) {
      const Token& kw = peek();
      if (kw.type == Tok::kName && kw.text == "gen") {
        next();
        do {
          std::size_t ti = pos_;
          const Token& g = name("a generator name");
          if (keywords().count(g.text)) fail(Kind::kSemantic, g, "'" + g.text + "' is a keyword");
          for (const auto& e : gens)
            if (e.name == g.text) fail(Kind::kSemantic, g, "duplicate generator '" + g.text + "'");
          expect(":");
          long deg = integer("a degree");
          gens.push_back({g.text, static_cast<int>(deg)});
          gen_tokens.push_back(ti);
        } while (accept(","));
        expect(";");
      } else if (kw.type == Tok::kName && kw.text == "d") {
        next();
        std::size_t ni = pos_;
        name("a generator name");
        expect("=");
        std::size_t ei = pos_;
        skip_to_semicolon();
        eqs.push_back({ni, ei});
      } else {
        fail(Kind::kSyntax, kw, "expected 'gen', 'd' or '}', found " + describe(kw));
      }
    }
    auto gs = make_generators(gens);
    std::vector<Polynomial> d(gs->size(), Polynomial(gs));
    std::vector<bool> seen(gs->size(), false);
    std::size_t resume = pos_;
    for (const auto& eq : eqs) {
      const Token& gt = toks_[eq.name_token];
      auto idx = gs->find(gt.text);
      if (!idx) fail(Kind::kUnknownName, gt, "unknown generator '" + gt.text + "' in algebra '" + n.text + "'");
      if (seen[*idx]) fail(Kind::kSemantic, gt, "second differential for '" + gt.text + "'");
      seen[*idx] = true;
      pos_ = eq.expr_token;
      const Token& et = peek();
      Polynomial p = expr(gs);
      expect(";");
      int want = (*gs)[*idx].degree + 1;
      if (!p.is_homogeneous_of(want))
        fail(Kind::kDegreeMismatch, et, "d " + gt.text + " must have degree " + std::to_string(want));
      d[*idx] = std::move(p);
    }
    pos_ = resume;
    f.algebras.emplace_back(n.text, gs, std::move(d));
  }

  void skip_to_semicolon() {
    while (peek().type != Tok::kEnd && !(peek().type == Tok::kPunct && (peek().text == ";" || peek().text == "}")))
      next();
    if (peek().type == Tok::kEnd || peek().text != ";") {
      // Report the real syntax problem from the expression parser if there is one.
      expect(";");
    }
    next();
  }

  void morphism(ModelFile& f) {
    next();
    const Token& n = name("a morphism name");
    check_new_name(f, n);
    expect(":");
    const Token& st = name("a source algebra");
    expect("->");
    const Token& tt = name("a target algebra");
    const Dgca src = algebra_ref(f, st);
    const Dgca tgt = algebra_ref(f, tt);
    expect("{");
    std::map<std::string, Polynomial> assignment;
    while (!accept("}")) {
      const Token& g = name("a generator name");
      auto idx = src.gens().find(g.text);
      if (!idx) fail(Kind::kUnknownName, g, "unknown generator '" + g.text + "' in algebra '" + src.name() + "'");
      if (assignment.count(g.text)) fail(Kind::kSemantic, g, "second assignment for '" + g.text + "'");
      expect("=");
      const Token& et = peek();
      Polynomial p = expr(tgt.generators());
      expect(";");
      if (!p.is_homogeneous_of(src.gens()[*idx].degree))
        fail(Kind::kDegreeMismatch, et,
             "image of " + g.text + " must have degree " + std::to_string(src.gens()[*idx].degree));
      assignment.emplace(g.text, std::move(p));
    }
    auto map = AlgebraMorphism::from_assignment(src.generators(), tgt.generators(), assignment, true);
    f.morphisms.push_back({n.text, src.name(), tgt.name(), std::move(map)});
  }

  const Dgca& ambient(const ModelFile& f, const Token& decl) {
    if (accept(":")) return algebra_ref(f, name("an algebra name"));
    if (f.algebras.empty() && f.imported.empty()) fail(Kind::kSemantic, decl, "no algebra declared before '" + decl.text + "'");
    return f.algebras.empty() ? f.imported.back() : f.algebras.back();
  }

  void matrix(ModelFile& f) {
    next();
    const Token& n = name("a matrix name");
    check_new_name(f, n);
    const Dgca A = ambient(f, n);
    expect("{");
    MatrixDecl m{n.text, A.name(), {}};
    while (!accept("}")) {
      const Token& open = expect("[");
      std::vector<Polynomial> row;
      do {
        Polynomial p = expr(A.generators());
        row.push_back(p.is_zero() ? A.zero() : std::move(p));
      } while (accept(","));
      expect("]");
      expect(";");
      if (!m.rows.empty() && row.size() != m.rows.front().size())
        fail(Kind::kSemantic, open, "matrix rows must have equal length");
      m.rows.push_back(std::move(row));
    }
    f.matrices.push_back(std::move(m));
  }

  void twist(ModelFile& f) {
    next();
    const Token& n = name("a twist name");
    check_new_name(f, n);
    const Dgca A = ambient(f, n);
    expect("=");
    Polynomial p = expr(A.generators());
    expect(";");
    f.twists.push_back({n.text, A.name(), p.is_zero() ? A.zero() : std::move(p)});
  }

  // --- expressions ---

  Polynomial expr(const GeneratorSetPtr& gs) {
    Polynomial out(gs);
    int sign = 1;
    if (accept("-")) sign = -1;
    else accept("+");
    out.axpy(sign, term(gs));
    while (true) {
      if (accept("+")) {
        out += term(gs);
      } else if (accept("-")) {
        out -= term(gs);
      } else {
        break;
      }
    }
    return out;
  }

  Polynomial term(const GeneratorSetPtr& gs) {
    Polynomial out = factor(gs);
    while (peek().type == Tok::kPunct && peek().text == "*") {
      const Token& star = next();
      if (!starts_factor(peek())) fail(Kind::kSyntax, star, "expected a factor after '*'");
      const Token& at = peek();
      Polynomial rhs = factor(gs);
      bool both = !out.is_zero() && !rhs.is_zero();
      out = out * rhs;
      if (both && out.is_zero()) fail(Kind::kOddSquare, at, "product vanishes: repeated odd factor");
    }
    return out;
  }

  static bool starts_factor(const Token& t) {
    return t.type == Tok::kName || t.type == Tok::kInt || (t.type == Tok::kPunct && t.text == "(");
  }

  Polynomial factor(const GeneratorSetPtr& gs) {
    const Token& at = peek();
    Polynomial base = atom(gs);
    if (peek().type == Tok::kPunct && peek().text == "^") {
      const Token& caret = next();
      if (peek().type != Tok::kInt) fail(Kind::kSyntax, caret, "expected an integer exponent after '^'");
      long e = integer("an exponent");
      if (e >= 2 && !base.is_zero()) {
        auto deg = base.homogeneous_degree();
        if (deg && *deg % 2) fail(Kind::kOddSquare, at, "power of an odd element");
      }
      Polynomial p = pow(base, static_cast<unsigned>(e));
      if (p.is_zero() && !base.is_zero() && e > 0) fail(Kind::kOddSquare, at, "power vanishes");
      return p;
    }
    return base;
  }

  Polynomial atom(const GeneratorSetPtr& gs) {
    const Token& t = peek();
    if (t.type == Tok::kInt) {
      next();
      mpz_class num(t.text);
      mpz_class den = 1;
      if (peek().type == Tok::kPunct && peek().text == "/") {
        const Token& slash = next();
        if (peek().type != Tok::kInt) fail(Kind::kSyntax, slash, "expected an integer denominator after '/'");
        den = mpz_class(next().text);
        if (den == 0) fail(Kind::kSemantic, slash, "division by zero");
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial::constant(gs, q);
    }
    if (t.type == Tok::kName) {
      next();
      auto idx = gs->find(t.text);
      if (!idx) fail(Kind::kUnknownName, t, "unknown generator '" + t.text + "'");
      return Polynomial::generator(gs, *idx);
    }
    if (t.type == Tok::kPunct && t.text == "(") {
      next();
      Polynomial p = expr(gs);
      expect(")");
      return p;
    }
    fail(Kind::kSyntax, t, "expected a number, generator or '(', found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ImportResolver* resolver_;
};

}  // namespace

const Dgca* ModelFile::find_algebra(std::string_view name) const {
  for (const auto& a : algebras)
    if (a.name() == name) return &a;
  for (auto it = imported.rbegin(); it != imported.rend(); ++it)
    if (it->name() == name) return &*it;
  return nullptr;
}

const MorphismDecl* ModelFile::find_morphism(std::string_view name) const {
  for (const auto& m : morphisms)
    if (m.name == name) return &m;
  return nullptr;
}

const MatrixDecl* ModelFile::find_matrix(std::string_view name) const {
  for (const auto& m : matrices)
    if (m.name == name) return &m;
  return nullptr;
}

const TwistDecl* ModelFile::find_twist(std::string_view name) const {
  for (const auto& t : twists)
    if (t.name == name) return &t;
  return nullptr;
}

bool operator==(const ModelFile& a, const ModelFile& b) {
  if (a.uses != b.uses || a.algebras.size() != b.algebras.size()) return false;
  for (std::size_t i = 0; i < a.algebras.size(); ++i)
    if (a.algebras[i].name() != b.algebras[i].name() || !(a.algebras[i] == b.algebras[i])) return false;
  return a.morphisms == b.morphisms && a.matrices == b.matrices && a.twists == b.twists;
}

ModelFile parse_model(std::string_view text) {
  ImportResolver resolver = [](const std::string& name) { return corpus_entry(name).model.algebras; };
  return parse_model(text, resolver);
}

ModelFile parse_model(std::string_view text, const ImportResolver& resolver) {
  Parser p(lex(text), &resolver);
  return p.file();
}

Polynomial parse_expression(std::string_view text, const GeneratorSetPtr& gens) {
  Parser p(lex(text), nullptr);
  return p.standalone_expression(gens);
}

std::string print_algebra(const Dgca& A) {
  std::ostringstream os;
  os << "algebra " << A.name() << " {\n";
  for (const auto& g : A.gens()) os << "  gen " << g.name << ":" << g.degree << ";\n";
  for (std::size_t i = 0; i < A.size(); ++i)
    if (!A.differential(i).is_zero()) os << "  d " << A.gens()[i].name << " = " << A.differential(i).to_string() << ";\n";
  os << "}\n";
  return os.str();
}

std::string print_model(const ModelFile& file) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << "\n";
    first = false;
  };
  if (!file.uses.empty()) {
    sep();
    for (const auto& u : file.uses) os << "use " << u << ";\n";
  }
  for (const auto& a : file.algebras) {
    sep();
    os << print_algebra(a);
  }
  for (const auto& m : file.morphisms) {
    sep();
    os << "morphism " << m.name << " : " << m.source << " -> " << m.target << " {\n";
    const auto& src = *m.map.source();
    for (std::size_t i = 0; i < src.size(); ++i)
      if (!m.map.image(i).is_zero()) os << "  " << src[i].name << " = " << m.map.image(i).to_string() << ";\n";
    os << "}\n";
  }
  for (const auto& m : file.matrices) {
    sep();
    os << "matrix " << m.name << " : " << m.algebra << " {\n";
    for (const auto& row : m.rows) {
      os << "  [";
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << row[j].to_string();
      os << "];\n";
    }
    os << "}\n";
  }
  for (const auto& t : file.twists) {
    sep();
    os << "twist " << t.name << " : " << t.algebra << " = " << t.value.to_string() << ";\n";
  }
  return os.str();
}

}  // namespace ratho
