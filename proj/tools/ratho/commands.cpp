#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "ratho/character.hpp"
#include "ratho/chern_weil.hpp"
#include "ratho/corpus.hpp"
#include "ratho/dgca.hpp"
#include "ratho/dsl.hpp"
#include "ratho/errors.hpp"
#include "ratho/linfty.hpp"
#include "ratho/minimal_model.hpp"
#include "ratho/random.hpp"
#include "ratho/simplicial_forms.hpp"
#include "ratho/twisted_derham.hpp"

namespace ratho::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string input;
  bool json = false;
  std::string out;
  std::string algebra;
  std::optional<int> max_degree;
  std::optional<int> polybound;
  std::string twist;
  std::optional<int> period;
  std::string morphism;
  std::string matrix;
  std::optional<unsigned> kmax;
  std::string rep;
  std::string op;
  std::string base;
  std::string twist_map;
  std::string start;
  std::string end;
  std::optional<int> line_degree;
  int lattice = 2;
  int trials = 30;
  std::uint64_t seed = 1;
  bool list = false;
  std::string show;
};

struct Outcome {
  bool pass = true;
  json result = json::object();
  json witnesses = json::array();
  std::ostringstream text;
};

std::string str(const Polynomial& p) { return p.to_string(); }

json poly_list(const std::vector<Polynomial>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(str(p));
  return a;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

ModelFile load_input(const Flags& f) {
  if (f.input.empty()) throw UsageError("missing input: give a .dgca file or corpus:NAME");
  if (f.input.rfind("corpus:", 0) == 0) {
    try {
      return corpus_entry(f.input.substr(7)).model;
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  std::ifstream in(f.input);
  if (!in) throw UsageError("cannot read '" + f.input + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

const Dgca& pick_algebra(const ModelFile& m, const std::string& name) {
  if (!name.empty()) {
    const Dgca* a = m.find_algebra(name);
    if (!a) throw UsageError("unknown algebra '" + name + "'");
    return *a;
  }
  if (!m.algebras.empty()) return m.algebras.back();
  if (!m.imported.empty()) return m.imported.back();
  throw UsageError("input declares no algebra");
}

const MorphismDecl& pick_morphism(const ModelFile& m, const std::string& name, const char* flag) {
  if (name.empty()) {
    if (m.morphisms.empty()) throw UsageError(std::string("input declares no morphism; pass ") + flag);
    return m.morphisms.front();
  }
  const MorphismDecl* d = m.find_morphism(name);
  if (!d) throw UsageError("unknown morphism '" + name + "'");
  return *d;
}

const MatrixDecl& pick_matrix(const ModelFile& m, const std::string& name) {
  if (name.empty()) {
    if (m.matrices.empty()) throw UsageError("input declares no matrix; pass --matrix");
    return m.matrices.front();
  }
  const MatrixDecl* d = m.find_matrix(name);
  if (!d) throw UsageError("unknown matrix '" + name + "'");
  return *d;
}

// Malformed matrices are usage errors; a well-formed matrix that is not
// antisymmetric is a mathematical failure of the pontrjagin/euler/i8 input.
CurvatureMatrix build_matrix(const ModelFile& m, const MatrixDecl& d, bool antisymmetric) {
  const Dgca& A = pick_algebra(m, d.algebra);
  CurvatureMatrix plain;
  try {
    plain = CurvatureMatrix(A.generators(), d.rows, false);
  } catch (const StructuralError& e) {
    throw UsageError(e.what());
  }
  if (!antisymmetric) return plain;
  try {
    return CurvatureMatrix(A.generators(), d.rows, true);
  } catch (const StructuralError& e) {
    throw PreconditionError(e.what());
  }
}

std::string combination(const LInfinityStructure& L, const std::vector<Rational>& v) {
  std::vector<Generator> gens;
  for (const auto& b : L.basis) gens.push_back({b.name, 0});
  auto gs = make_generators(std::move(gens));
  Polynomial out(gs);
  for (std::size_t i = 0; i < v.size(); ++i) out.axpy(v[i], Polynomial::generator(gs, i));
  return out.to_string();
}

// --- commands ----------------------------------------------------------------

void cmd_check(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  std::vector<const Dgca*> algebras;
  if (!f.algebra.empty()) {
    algebras.push_back(&pick_algebra(m, f.algebra));
  } else {
    for (const auto& a : m.algebras) algebras.push_back(&a);
    if (algebras.empty()) algebras.push_back(&pick_algebra(m, ""));
  }
  json alist = json::array();
  for (const Dgca* a : algebras) {
    auto r = check_d_squared(*a);
    alist.push_back({{"name", a->name()}, {"generators", a->size()}, {"d_squared_zero", r.pass()}});
    if (r.pass()) {
      o.text << a->name() << ": d^2 = 0 (" << a->size() << " generators)\n";
    } else {
      o.pass = false;
      for (const auto& fail : r.failures) {
        const auto& g = a->gens()[fail.generator].name;
        o.text << a->name() << ": d^2 " << g << " = " << str(fail.residual) << " != 0\n";
        o.witnesses.push_back(
            {{"kind", "d_squared"}, {"algebra", a->name()}, {"generator", g}, {"residual", str(fail.residual)}});
      }
    }
  }
  json mlist = json::array();
  for (const auto& md : m.morphisms) {
    auto w = chain_map_failure(pick_algebra(m, md.source), pick_algebra(m, md.target), md.map);
    mlist.push_back({{"name", md.name}, {"chain_map", !w.has_value()}});
    if (!w) {
      o.text << md.name << ": chain map\n";
    } else {
      o.pass = false;
      const auto& g = (*md.map.source())[w->generator].name;
      o.text << md.name << ": not a chain map at " << g << ", residual " << str(w->residual) << "\n";
      o.witnesses.push_back(
          {{"kind", "chain_map"}, {"morphism", md.name}, {"generator", g}, {"residual", str(w->residual)}});
    }
  }
  o.result["algebras"] = alist;
  o.result["morphisms"] = mlist;
}

void cmd_cohomology(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const Dgca& A = pick_algebra(m, f.algebra);
  int hi = f.max_degree.value_or(10);
  json dims = json::array();
  json reps = json::object();
  o.text << "cohomology of " << A.name() << ", degrees 0.." << hi << "\n";
  for (const auto& s : cohomology(A, 0, hi, f.polybound)) {
    dims.push_back(s.dimension);
    std::vector<std::string> r;
    for (const auto& p : s.representatives) r.push_back(str(p));
    reps[std::to_string(s.degree)] = r;
    o.text << "  H^" << s.degree << " = " << s.dimension;
    if (s.dimension) o.text << "   [" << join(r, ", ") << "]";
    o.text << "\n";
  }
  o.result["algebra"] = A.name();
  o.result["dimensions"] = dims;
  o.result["representatives"] = reps;
}

void cmd_minimal_model(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const Dgca& A = pick_algebra(m, f.algebra);
  int N = f.max_degree.value_or(8);
  MinimalModelOptions opts;
  opts.polybound = f.polybound;
  if (f.seed != 1) opts.shuffle_seed = f.seed;
  auto r = minimal_model(A, N, opts);
  o.pass = r.certificate.quasi_iso();
  json counts = json::object();
  for (const auto& [deg, n] : r.generator_counts) counts[std::to_string(deg)] = n;
  json comparison = json::object();
  for (std::size_t i = 0; i < r.model.size(); ++i) comparison[r.model.gens()[i].name] = str(r.comparison.image(i));
  o.result["model"] = print_algebra(r.model.renamed(A.name() + "_min"));
  o.result["generator_counts"] = counts;
  o.result["comparison"] = comparison;
  o.result["certified_through"] = N;
  o.text << print_algebra(r.model.renamed(A.name() + "_min"));
  o.text << "comparison map to " << A.name() << ":\n";
  for (std::size_t i = 0; i < r.model.size(); ++i)
    o.text << "  " << r.model.gens()[i].name << " -> " << str(r.comparison.image(i)) << "\n";
  o.text << "quasi-isomorphism through degree " << N << ": " << (o.pass ? "yes" : "no") << "\n";
}

void cmd_brackets(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const Dgca& A = pick_algebra(m, f.algebra);
  auto d2 = check_d_squared(A);
  if (!d2.pass()) {
    o.pass = false;
    for (const auto& fail : d2.failures)
      o.witnesses.push_back({{"kind", "d_squared"},
                             {"generator", A.gens()[fail.generator].name},
                             {"residual", str(fail.residual)}});
    o.text << A.name() << ": d^2 != 0, no L-infinity structure\n";
    return;
  }
  auto L = brackets_from_ce(A);
  json list = json::array();
  o.text << "L-infinity brackets of " << A.name() << " (basis element = dual of generator, degree - 1)\n";
  for (const auto& [key, vec] : L.brackets) {
    std::vector<std::string> args;
    for (auto i : key) args.push_back(L.basis[i].name);
    std::string value = combination(L, vec);
    if (value == "0") continue;
    list.push_back({{"arity", key.size()}, {"arguments", args}, {"value", value}});
    o.text << "  [" << join(args, ", ") << "] = " << value << "\n";
  }
  json basis = json::array();
  for (const auto& b : L.basis) basis.push_back({{"name", b.name}, {"degree", b.degree}});
  o.result["basis"] = basis;
  o.result["brackets"] = list;
}

void cmd_is_sullivan(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const Dgca& A = pick_algebra(m, f.algebra);
  auto cert = is_sullivan(A);
  o.pass = cert.is_sullivan();
  auto names = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(A.gens()[i].name);
    return out;
  };
  if (o.pass) {
    o.result["order"] = names(cert.order);
    o.text << A.name() << " is Sullivan; order: " << join(names(cert.order), ", ") << "\n";
  } else {
    o.result["cycle"] = names(cert.cycle);
    o.witnesses.push_back({{"kind", "cycle"}, {"generators", names(cert.cycle)}});
    o.text << A.name() << " is not Sullivan; dependency cycle: " << join(names(cert.cycle), " -> ") << "\n";
  }
}

void cmd_is_minimal(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const Dgca& A = pick_algebra(m, f.algebra);
  auto r = is_minimal(A);
  o.pass = r.minimal;
  std::vector<std::string> off;
  for (auto i : r.offenders) off.push_back(A.gens()[i].name);
  o.result["offenders"] = off;
  for (const auto& g : off) o.witnesses.push_back({{"kind", "offender"}, {"generator", g}});
  if (o.pass) {
    o.text << A.name() << " is minimal\n";
    json wh = json::object();
    bool whitehead = true;
    for (const auto& g : A.gens()) whitehead = whitehead && g.degree >= 2;
    if (whitehead) {
      for (const auto& [deg, n] : whitehead_summary(A)) {
        wh[std::to_string(deg)] = n;
        o.text << "  rational pi_" << deg << " has rank " << n << "\n";
      }
      o.result["whitehead"] = wh;
    }
  } else {
    o.text << A.name() << " is not minimal; offending generators: " << join(off, ", ") << "\n";
  }
}

TwistedComplex build_twisted(const ModelFile& m, const Flags& f, std::string& twist_name) {
  const TwistDecl* t = nullptr;
  if (!f.twist.empty()) {
    t = m.find_twist(f.twist);
    if (!t) throw UsageError("unknown twist '" + f.twist + "'");
  } else {
    for (const auto& d : m.twists)
      if (f.algebra.empty() || d.algebra == f.algebra) {
        t = &d;
        break;
      }
  }
  const Dgca& A = pick_algebra(m, t && f.algebra.empty() ? t->algebra : f.algebra);
  bool all_odd = true;
  for (const auto& g : A.gens()) all_odd = all_odd && g.odd();
  if (!all_odd && !f.max_degree) throw UsageError("'" + A.name() + "' has even generators; pass --max-degree");
  if (t && t->algebra != A.name()) throw UsageError("twist '" + t->name + "' lives on '" + t->algebra + "'");
  Polynomial H = t ? t->value : A.zero();
  twist_name = t ? t->name : "0";
  int period;
  if (f.period) {
    period = *f.period;
  } else if (!H.is_zero()) {
    auto deg = H.homogeneous_degree();
    if (!deg || *deg % 2 == 0) throw UsageError("twist must be homogeneous of odd degree");
    period = (*deg - 1) / 2;
  } else {
    period = 1;
  }
  return TwistedComplex(A, H, period, f.max_degree);
}

void cmd_twisted_cohomology(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  std::string tname;
  auto C = build_twisted(m, f, tname);
  auto H = twisted_cohomology(C);
  json slices = json::array();
  o.text << "twisted cohomology of (" << C.base().name() << ", d - " << str(C.twist()) << "), period "
         << C.period() << (H.approximate ? ", truncated at degree " + std::to_string(C.top_degree()) : "")
         << "\n";
  for (const auto& s : H.slices) {
    slices.push_back({{"residue", s.residue},
                      {"dimension", s.dimension},
                      {"representatives", poly_list(s.representatives)},
                      {"boundary_affected", s.boundary_affected}});
    std::vector<std::string> r;
    for (const auto& p : s.representatives) r.push_back(str(p));
    o.text << "  residue " << s.residue << ": " << s.dimension;
    if (s.dimension) o.text << "   [" << join(r, ", ") << "]";
    if (s.boundary_affected) o.text << "   (boundary-affected)";
    o.text << "\n";
  }
  o.result["algebra"] = C.base().name();
  o.result["twist"] = str(C.twist());
  o.result["period"] = C.period();
  o.result["dimensions"] = H.dimensions();
  o.result["approximate"] = H.approximate;
  o.result["slices"] = slices;
}

void cmd_twisted_op(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  std::string tname;
  auto C = build_twisted(m, f, tname);
  if (f.rep.empty()) throw UsageError("twisted-op needs --rep EXPR");
  Polynomial rep = parse_expression(f.rep, C.base().generators());
  auto in = make_twisted_class(C, rep);
  TwistedClass out;
  Rational scale = 1;
  if (f.op == "wedge-twist") {
    out = op_wedge_twist(C, in);
  } else if (f.op == "wedge-square") {
    out = op_wedge_square(C, in);
    scale = 2;
  } else if (f.op == "square-then-twist") {
    out = op_square_then_twist(C, in);
    scale = 2;
  } else {
    throw UsageError("--op must be wedge-twist, wedge-square or square-then-twist");
  }
  auto target = C.scaled(scale);
  bool closed = twisted_d(target, out.representative).is_zero();
  bool zero_class = closed && twisted_exact(target, out.representative).has_value();
  o.pass = closed;
  o.result["op"] = f.op;
  o.result["input"] = {{"residue", in.residue}, {"representative", str(in.representative)}};
  o.result["output"] = {{"residue", out.residue},
                        {"representative", str(out.representative)},
                        {"twist", str(target.twist())},
                        {"twisted_closed", closed},
                        {"zero_class", zero_class}};
  o.text << f.op << ": [" << str(in.representative) << "] -> [" << str(out.representative) << "] in (d - "
         << str(target.twist()) << ")-cohomology, residue " << out.residue << (zero_class ? " (zero class)" : "")
         << "\n";
}

void cmd_chern(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const auto& d = pick_matrix(m, f.matrix);
  auto Phi = build_matrix(m, d, false);
  unsigned kmax = f.kmax.value_or(static_cast<unsigned>(Phi.size()));
  auto c = chern_forms(Phi, kmax);
  auto ch = chern_character(Phi, 2 * kmax);
  o.result["matrix"] = d.name;
  o.result["chern"] = poly_list(c);
  o.result["chern_character"] = str(ch);
  for (unsigned k = 1; k <= kmax; ++k) o.text << "c_" << k << " = " << str(c[k - 1]) << "\n";
  o.text << "ch = " << str(ch) << "\n";
}

void cmd_pontrjagin(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const auto& d = pick_matrix(m, f.matrix);
  auto Phi = build_matrix(m, d, true);
  unsigned kmax = f.kmax.value_or(static_cast<unsigned>(Phi.size() / 2));
  auto p = pontrjagin_forms(Phi, kmax);
  o.result["matrix"] = d.name;
  o.result["pontrjagin"] = poly_list(p);
  for (unsigned k = 1; k <= kmax; ++k) o.text << "p_" << k << " = " << str(p[k - 1]) << "\n";
}

void cmd_euler(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const auto& d = pick_matrix(m, f.matrix);
  auto Phi = build_matrix(m, d, true);
  auto e = euler_form(Phi);
  o.result["matrix"] = d.name;
  o.result["euler"] = str(e);
  o.text << "Pf = " << str(e) << "\n";
}

void cmd_i8(const Flags& f, Outcome& o) {
  Polynomial p1, p2, I;
  if (!f.input.empty()) {
    ModelFile m = load_input(f);
    const auto& d = pick_matrix(m, f.matrix);
    auto Phi = build_matrix(m, d, true);
    auto p = pontrjagin_forms(Phi, 2);
    p1 = p[0];
    p2 = p[1];
    o.result["matrix"] = d.name;
  } else {
    auto gs = make_generators({{"p1", 4}, {"p2", 8}});
    p1 = Polynomial::generator(gs, 0);
    p2 = Polynomial::generator(gs, 1);
  }
  I = i8(p1, p2);
  Polynomial identity = Rational(48) * I + Rational(1, 4) * (p1 * p1) - p2;
  o.pass = identity.is_zero();
  o.result["p1"] = str(p1);
  o.result["p2"] = str(p2);
  o.result["i8"] = str(I);
  o.text << "I8 = " << str(I) << "\n";
}

void cmd_verify_flat(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const auto& md = pick_morphism(m, f.morphism, "--morphism");
  FlatFormDatum F{pick_algebra(m, md.source), pick_algebra(m, md.target), md.map};
  auto r = verify_flat(F);
  o.pass = r.pass();
  for (const auto& fail : r.failures) {
    o.witnesses.push_back({{"kind", "bianchi"}, {"generator", fail.generator}, {"residual", str(fail.residual)}});
    o.text << "Bianchi identity for " << fail.generator << " fails: F(d " << fail.generator << ") - d F("
           << fail.generator << ") = " << str(fail.residual) << "\n";
  }
  o.result["morphism"] = md.name;
  o.result["failures"] = r.failures.size();
  if (o.pass) o.text << md.name << ": flat " << md.source << "-valued forms on " << md.target << "\n";
}

void report_flatness(const char* leg, const FlatnessReport& r, Outcome& o) {
  for (const auto& fail : r.failures) {
    o.witnesses.push_back(
        {{"kind", "bianchi"}, {"leg", leg}, {"generator", fail.generator}, {"residual", str(fail.residual)}});
    o.text << leg << ": Bianchi identity for " << fail.generator << " fails, residual " << str(fail.residual)
           << "\n";
  }
}

void report_triangle(const char* leg, const std::vector<TriangleFailure>& t, Outcome& o) {
  for (const auto& fail : t) {
    o.witnesses.push_back(
        {{"kind", "triangle"}, {"leg", leg}, {"generator", fail.generator}, {"residual", str(fail.residual)}});
    o.text << leg << ": restriction to " << fail.generator << " differs from the twist by " << str(fail.residual)
           << "\n";
  }
}

const MorphismDecl& find_twist_map(const ModelFile& m, const Flags& f, const std::string& base,
                                   const std::string& target) {
  if (!f.twist_map.empty()) return pick_morphism(m, f.twist_map, "--twist-map");
  for (const auto& md : m.morphisms)
    if (md.source == base && md.target == target) return md;
  throw UsageError("no morphism " + base + " -> " + target + "; pass --twist-map");
}

void cmd_verify_twisted(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const auto& md = pick_morphism(m, f.morphism, "--morphism");
  if (f.base.empty()) throw UsageError("verify-twisted needs --base NAME");
  const Dgca& base = pick_algebra(m, f.base);
  const Dgca& total = pick_algebra(m, md.source);
  const Dgca& omega = pick_algebra(m, md.target);
  const auto& tw = find_twist_map(m, f, base.name(), omega.name());
  RelativeExtension bundle(base, total);
  auto order = is_sullivan_relative(total, bundle.is_new());
  TwistedFlatFormDatum T{bundle, {base, omega, tw.map}, md.map};
  auto r = verify_twisted_flat(T);
  o.pass = r.pass() && order.is_sullivan();
  report_flatness("twist", r.twist, o);
  report_flatness("total", r.total, o);
  report_triangle("triangle", r.triangle, o);
  if (!order.is_sullivan()) {
    std::vector<std::string> cyc;
    for (auto i : order.cycle) cyc.push_back(total.gens()[i].name);
    o.witnesses.push_back({{"kind", "relative_cycle"}, {"generators", cyc}});
    o.text << "coefficient bundle is not relative Sullivan: " << join(cyc, " -> ") << "\n";
  }
  o.result["morphism"] = md.name;
  o.result["twist_map"] = tw.name;
  o.result["base"] = base.name();
  o.result["twist_flat"] = r.twist.pass();
  o.result["total_flat"] = r.total.pass();
  o.result["triangle"] = r.triangle.empty();
  if (o.pass)
    o.text << md.name << ": flat " << tw.name << "-twisted " << total.name() << "-valued forms on " << omega.name()
           << "\n";
}

AlgebraMorphism onto_cylinder(const AlgebraMorphism& map, const CylinderAlgebra& cyl, const std::string& name) {
  const auto& want = cyl.algebra().gens();
  const auto& have = *map.target();
  if (!(want == have))
    throw UsageError("target of '" + name + "' must be the base algebra followed by gen t0:0, th0:1 (d t0 = th0)");
  std::vector<Polynomial> images;
  for (const auto& p : map.images()) images.push_back(p.is_zero() ? cyl.algebra().zero() : embed(p, cyl.algebra().generators()));
  return AlgebraMorphism(map.source(), cyl.algebra().generators(), std::move(images));
}

void cmd_verify_concordance(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const auto& md = pick_morphism(m, f.morphism, "--morphism");
  if (f.start.empty() || f.end.empty()) throw UsageError("verify-concordance needs --start and --end morphisms");
  const auto& s = pick_morphism(m, f.start, "--start");
  const auto& e = pick_morphism(m, f.end, "--end");
  if (s.source != md.source || e.source != md.source || s.target != e.target)
    throw UsageError("--start and --end must share the coefficient algebra of --morphism and a target");
  const Dgca& coeff = pick_algebra(m, md.source);
  const Dgca& omega = pick_algebra(m, s.target);
  if (!(pick_algebra(m, md.target).differentials().size() == omega.size() + 2))
    throw UsageError("target of '" + md.name + "' must extend '" + omega.name() + "' by t0, th0");
  CylinderAlgebra cyl(omega);
  if (!(pick_algebra(m, md.target) == cyl.algebra()))
    throw UsageError("target of '" + md.name + "' must be " + omega.name() + " with gen t0:0, th0:1 and d t0 = th0");
  ConcordanceDatum C{coeff, cyl, onto_cylinder(md.map, cyl, md.name), s.map, e.map, std::nullopt, std::nullopt};
  if (!f.base.empty()) {
    const Dgca& base = pick_algebra(m, f.base);
    const auto& tw = find_twist_map(m, f, base.name(), omega.name());
    C.bundle = RelativeExtension(base, coeff);
    C.twist = tw.map;
  }
  auto r = verify_concordance(C);
  o.pass = r.pass();
  report_flatness("cylinder", r.cylinder, o);
  for (const auto& fail : r.endpoints) {
    o.witnesses.push_back({{"kind", "endpoint"},
                           {"endpoint", fail.endpoint},
                           {"generator", fail.generator},
                           {"residual", str(fail.residual)}});
    o.text << fail.endpoint << ": restriction of " << fail.generator << " differs by " << str(fail.residual) << "\n";
  }
  report_triangle("twist", r.twist, o);
  o.result["morphism"] = md.name;
  o.result["cylinder_flat"] = r.cylinder.pass();
  o.result["endpoints"] = r.endpoints.empty();
  if (o.pass) o.text << md.name << ": concordance from " << s.name << " to " << e.name << "\n";
}

void cmd_line_quotient(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const Dgca& A = pick_algebra(m, f.algebra);
  if (!f.line_degree) throw UsageError("line-quotient needs --line-degree N");
  auto r = line_quotient(A, *f.line_degree, f.lattice, f.polybound);
  o.pass = r.pass();
  o.result["algebra"] = A.name();
  o.result["line_degree"] = r.n;
  o.result["cohomology_dimension"] = r.cohomology_dimension;
  o.result["lattice_points"] = r.lattice_points;
  o.result["concordance_classes"] = r.concordance_classes;
  o.result["cohomology_classes"] = r.cohomology_classes;
  o.result["pairs_checked"] = r.pairs_checked;
  o.result["mismatches"] = r.mismatches;
  o.result["extraction_failures"] = r.extraction_failures;
  o.text << "b^" << r.n << "-valued flat data on " << A.name() << ": " << r.lattice_points << " lattice points, "
         << r.concordance_classes << " concordance classes, " << r.cohomology_classes
         << " classes in H^" << r.n + 1 << " (dim " << r.cohomology_dimension << ")\n";
  if (r.mismatches) o.text << "  " << r.mismatches << " pairs where concordance and cohomology disagree\n";
  if (r.extraction_failures) o.text << "  " << r.extraction_failures << " concordances without a valid primitive\n";
}

void cmd_stokes_check(const Flags& f, Outcome& o) {
  ModelFile m = load_input(f);
  const Dgca& A = pick_algebra(m, f.algebra);
  CylinderAlgebra cyl(A);
  int top = 0;
  bool finite = true;
  for (const auto& g : A.gens()) {
    top += g.degree;
    finite = finite && g.odd();
  }
  if (!finite) top = 6;
  top = f.max_degree.value_or(top);
  std::mt19937_64 rng(f.seed);
  RandomElementOptions opts;
  opts.polybound = f.polybound.value_or(3);
  int stokes_fail = 0, projection_fail = 0;
  for (int i = 0; i < f.trials; ++i) {
    Polynomial w = random_element(cyl.algebra().generators(), 0, top + 1, rng, opts);
    Polynomial a = random_element(cyl.algebra().generators(), 0, top + 1, rng, opts);
    Polynomial b = random_element(A.generators(), 0, top, rng, opts);
    auto sr = stokes_residual(cyl, w);
    auto pr = projection_residual(cyl, b, a);
    if (!sr.is_zero()) {
      ++stokes_fail;
      o.witnesses.push_back({{"kind", "stokes"}, {"element", str(w)}, {"residual", str(sr)}});
    }
    if (!pr.is_zero()) {
      ++projection_fail;
      o.witnesses.push_back({{"kind", "projection"}, {"base", str(b)}, {"element", str(a)}, {"residual", str(pr)}});
    }
  }
  o.pass = stokes_fail == 0 && projection_fail == 0;
  o.result["algebra"] = A.name();
  o.result["trials"] = f.trials;
  o.result["stokes_failures"] = stokes_fail;
  o.result["projection_failures"] = projection_fail;
  o.text << "Stokes and projection formulas on " << cyl.algebra().name() << ": " << f.trials << " trials, "
         << stokes_fail << " Stokes failures, " << projection_fail << " projection failures\n";
}

void cmd_corpus(const Flags& f, Outcome& o) {
  if (!f.show.empty()) {
    const CorpusEntry* e = nullptr;
    try {
      e = &corpus_entry(f.show);
    } catch (const Error& err) {
      throw UsageError(err.what());
    }
    o.result["name"] = e->name;
    o.result["citation"] = e->citation;
    o.result["source"] = e->source;
    o.text << e->source;
    return;
  }
  json list = json::array();
  for (const auto& e : corpus()) {
    list.push_back({{"name", e.name}, {"citation", e.citation}, {"generators", e.dgca.size()}});
    o.text << e.name << std::string(e.name.size() < 18 ? 18 - e.name.size() : 1, ' ') << e.citation << "\n";
  }
  o.result["entries"] = list;
}

struct Command {
  std::string name;
  std::string help;
  std::function<void(const Flags&, Outcome&)> run;
  std::vector<std::string> options;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"check", "check d^2 = 0 on every algebra and the chain-map property of every morphism", cmd_check, {}},
      {"cohomology", "cohomology dimensions and representatives", cmd_cohomology, {"max-degree", "polybound"}},
      {"minimal-model", "minimal Sullivan model with certified comparison map", cmd_minimal_model,
       {"max-degree", "polybound", "seed"}},
      {"brackets", "L-infinity brackets read off the differential", cmd_brackets, {}},
      {"is-sullivan", "Sullivan order or a dependency cycle", cmd_is_sullivan, {}},
      {"is-minimal", "minimality check and Whitehead ranks", cmd_is_minimal, {}},
      {"twisted-cohomology", "cohomology of d - H, folded by the period", cmd_twisted_cohomology,
       {"twist", "period", "max-degree"}},
      {"twisted-op", "wedge-twist, wedge-square or square-then-twist on a twisted class", cmd_twisted_op,
       {"twist", "period", "max-degree", "rep", "op"}},
      {"chern", "Chern forms and Chern character of a matrix", cmd_chern, {"matrix", "kmax"}},
      {"pontrjagin", "Pontrjagin forms of an antisymmetric matrix", cmd_pontrjagin, {"matrix", "kmax"}},
      {"euler", "Pfaffian (Euler form) of an antisymmetric matrix", cmd_euler, {"matrix"}},
      {"i8", "I8 = (p2 - p1^2/4)/48, symbolic or from a matrix", cmd_i8, {"matrix"}},
      {"verify-flat", "Bianchi identities of a morphism out of a CE algebra", cmd_verify_flat, {"morphism"}},
      {"verify-twisted", "twisted Bianchi identities and triangle over a base", cmd_verify_twisted,
       {"morphism", "base", "twist-map"}},
      {"verify-concordance", "check a cylinder datum between two flat data", cmd_verify_concordance,
       {"morphism", "start", "end", "base", "twist-map"}},
      {"line-quotient", "concordance classes of line-valued data against cohomology", cmd_line_quotient,
       {"line-degree", "lattice", "polybound"}},
      {"stokes-check", "randomized Stokes and projection formulas on the cylinder", cmd_stokes_check,
       {"trials", "seed", "max-degree", "polybound"}},
      {"corpus", "list the built-in models or show one", cmd_corpus, {"list", "show"}},
  };
  return list;
}

void add_options(CLI::App& sub, const Command& c, Flags& f) {
  if (c.name != "corpus") sub.add_option("input", f.input, "model file (.dgca) or corpus:NAME");
  sub.add_flag("--json", f.json, "emit JSON");
  sub.add_option("--out", f.out, "write output to FILE");
  if (c.name != "corpus" && c.name != "i8") sub.add_option("--algebra", f.algebra, "algebra to use (default: last declared)");
  for (const auto& opt : c.options) {
    if (opt == "max-degree") sub.add_option("--max-degree", f.max_degree, "top degree");
    if (opt == "polybound") sub.add_option("--polybound", f.polybound, "cap on the exponents of degree-0 generators");
    if (opt == "twist") sub.add_option("--twist", f.twist, "twist declaration to use");
    if (opt == "period") sub.add_option("--period", f.period, "period r of the 2r-periodic complex");
    if (opt == "matrix") sub.add_option("--matrix", f.matrix, "matrix declaration to use");
    if (opt == "kmax") sub.add_option("--kmax", f.kmax, "number of classes");
    if (opt == "rep") sub.add_option("--rep", f.rep, "class representative (expression)");
    if (opt == "op") sub.add_option("--op", f.op, "wedge-twist | wedge-square | square-then-twist")->required();
    if (opt == "morphism") sub.add_option("--morphism", f.morphism, "morphism declaration to use");
    if (opt == "base") sub.add_option("--base", f.base, "base algebra of the coefficient bundle");
    if (opt == "twist-map") sub.add_option("--twist-map", f.twist_map, "twist morphism base -> target");
    if (opt == "start") sub.add_option("--start", f.start, "datum at t = 0");
    if (opt == "end") sub.add_option("--end", f.end, "datum at t = 1");
    if (opt == "line-degree") sub.add_option("--line-degree", f.line_degree, "n of the line algebra b^n");
    if (opt == "lattice") sub.add_option("--lattice", f.lattice, "coefficient bound L, lattice [-L, L]");
    if (opt == "trials") sub.add_option("--trials", f.trials, "random trials");
    if (opt == "seed") sub.add_option("--seed", f.seed, "random seed");
    if (opt == "list") sub.add_flag("--list", f.list, "list entries (default)");
    if (opt == "show") sub.add_option("--show", f.show, "print the source of an entry");
  }
}

json inputs_of(const std::string& command, const Flags& f) {
  json in = json::object();
  if (!f.input.empty()) in["input"] = f.input;
  if (!f.algebra.empty()) in["algebra"] = f.algebra;
  if (f.max_degree) in["max_degree"] = *f.max_degree;
  if (f.polybound) in["polybound"] = *f.polybound;
  if (!f.twist.empty()) in["twist"] = f.twist;
  if (f.period) in["period"] = *f.period;
  if (!f.matrix.empty()) in["matrix"] = f.matrix;
  if (f.kmax) in["kmax"] = *f.kmax;
  if (!f.rep.empty()) in["rep"] = f.rep;
  if (!f.op.empty()) in["op"] = f.op;
  if (!f.morphism.empty()) in["morphism"] = f.morphism;
  if (!f.base.empty()) in["base"] = f.base;
  if (!f.twist_map.empty()) in["twist_map"] = f.twist_map;
  if (!f.start.empty()) in["start"] = f.start;
  if (!f.end.empty()) in["end"] = f.end;
  if (f.line_degree) in["line_degree"] = *f.line_degree;
  if (command == "line-quotient") in["lattice"] = f.lattice;
  if (command == "stokes-check") {
    in["trials"] = f.trials;
    in["seed"] = f.seed;
  }
  if (!f.show.empty()) in["show"] = f.show;
  return in;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : commands()) out.push_back(c.name);
    return out;
  }();
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ratho: exact rational homotopy computations on finitely presented DGCAs"};
  app.name("ratho");
  app.require_subcommand(1, 1);
  Flags flags;
  std::map<CLI::App*, const Command*> by_app;
  for (const auto& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_options(*sub, c, flags);
    by_app[sub] = &c;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  const Command* cmd = nullptr;
  for (auto* sub : app.get_subcommands()) cmd = by_app[sub];
  if (!cmd) return kUsage;

  Outcome o;
  try {
    cmd->run(flags, o);
  } catch (const ParseError& e) {
    err << (flags.input.empty() ? std::string("<input>") : flags.input) << ":" << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "ratho " << cmd->name << ": " << e.what() << "\n";
    return kUsage;
  } catch (const UnboundedSliceError& e) {
    err << "ratho " << cmd->name << ": " << e.what() << " (use --polybound or --max-degree)\n";
    return kUsage;
  } catch (const StructuralError& e) {
    err << "ratho " << cmd->name << ": " << e.what() << "\n";
    return kUsage;
  } catch (const VerificationOnlyError& e) {
    err << "ratho " << cmd->name << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    // Mathematical preconditions (non-closed representatives, d^2 != 0, ...)
    o.pass = false;
    o.witnesses.push_back({{"kind", "error"}, {"message", e.what()}});
    o.text << "fail: " << e.what() << "\n";
  }
  o.result["pass"] = o.pass;

  std::string payload;
  if (flags.json) {
    json doc = json::object();
    doc["command"] = cmd->name;
    doc["inputs"] = inputs_of(cmd->name, flags);
    doc["result"] = o.result;
    doc["witnesses"] = o.witnesses;
    payload = doc.dump(2) + "\n";
  } else {
    payload = o.text.str();
  }
  if (!flags.out.empty()) {
    std::ofstream file(flags.out);
    if (!file) {
      err << "ratho: cannot write '" << flags.out << "'\n";
      return kUsage;
    }
    file << payload;
  } else {
    out << payload;
  }
  return o.pass ? kPass : kFail;
}

}  // namespace ratho::cli
