// Job-file parsing, task execution, and report rendering.
#include "torsionlab/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "torsionlab/analysis.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/random_complexes.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {
namespace {

// ---- tokens ----------------------------------------------------------------

struct Token {
  enum Kind { kIdent, kInt, kPunct, kEnd };
  Kind kind = kEnd;
  std::string text;
  int line = 1;
  int col = 1;
  size_t offset = 0;  // byte position in the original text
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(const std::string& text) {
  static const std::string punct = ";:={}[],()+-*/^";
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    t.offset = i;
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t.kind = Token::kIdent;
      t.text = text.substr(i, j - i);
      col += static_cast<int>(j - i);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      t.kind = Token::kInt;
      t.text = text.substr(i, j - i);
      col += static_cast<int>(j - i);
      i = j;
    } else if (punct.find(c) != std::string::npos) {
      t.kind = Token::kPunct;
      t.text = std::string(1, c);
      ++col;
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line,
                       col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::kEnd;
  end.line = line;
  end.col = col;
  end.offset = text.size();
  out.push_back(end);
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Token::kEnd) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::kEnd; }

  bool accept_punct(char c) {
    if (peek().kind == Token::kPunct && peek().text[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token& expect_punct(char c) {
    if (peek().kind != Token::kPunct || peek().text[0] != c) {
      throw ParseError(std::string("expected '") + c + "'", peek().line,
                       peek().col);
    }
    return next();
  }
  const Token& expect_ident(const std::string& what) {
    if (peek().kind != Token::kIdent) {
      throw ParseError("expected " + what, peek().line, peek().col);
    }
    return next();
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

long parse_long(const Token& t) {
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(t.text.c_str(), &end, 10);
  if (errno != 0 || end == nullptr || *end != '\0') {
    throw ParseError("integer out of range", t.line, t.col);
  }
  return v;
}

// Signed integer: optional sign token, then digits.
long expect_int(TokenStream& ts, const std::string& what) {
  long sign = 1;
  if (ts.accept_punct('-')) {
    sign = -1;
  } else {
    ts.accept_punct('+');
  }
  const Token& t = ts.peek();
  if (t.kind != Token::kInt) {
    throw ParseError("expected " + what, t.line, t.col);
  }
  ts.next();
  return sign * parse_long(t);
}

// ---- expression engine -----------------------------------------------------
// Values are dense univariate polynomials (ascending, trailing zeros
// trimmed, empty = zero) in an optional indeterminate; plain scalars are
// the degree-zero case.

using UniPoly = std::vector<FieldScalar>;

void trim(UniPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

class ExprParser {
 public:
  ExprParser(TokenStream& ts, TowerPtr tower, std::string indet)
      : ts_(ts), tower_(std::move(tower)), indet_(std::move(indet)) {}

  UniPoly parse() { return expr(); }

 private:
  UniPoly constant(const FieldScalar& c) const {
    UniPoly p;
    if (!c.is_zero()) p.push_back(c);
    return p;
  }

  UniPoly add(UniPoly a, const UniPoly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), FieldScalar::zero(tower_));
    for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
    trim(a);
    return a;
  }
  UniPoly neg(UniPoly a) const {
    for (auto& c : a) c = -c;
    return a;
  }
  UniPoly mul(const UniPoly& a, const UniPoly& b) const {
    if (a.empty() || b.empty()) return {};
    UniPoly out(a.size() + b.size() - 1, FieldScalar::zero(tower_));
    for (size_t i = 0; i < a.size(); ++i) {
      for (size_t j = 0; j < b.size(); ++j) {
        out[i + j] = out[i + j] + a[i] * b[j];
      }
    }
    trim(out);
    return out;
  }

  UniPoly expr() {
    UniPoly acc = term();
    for (;;) {
      if (ts_.accept_punct('+')) {
        acc = add(std::move(acc), term());
      } else if (ts_.accept_punct('-')) {
        acc = add(std::move(acc), neg(term()));
      } else {
        return acc;
      }
    }
  }

  UniPoly term() {
    UniPoly acc = unary();
    for (;;) {
      if (ts_.accept_punct('*')) {
        acc = mul(acc, unary());
      } else if (ts_.accept_punct('/')) {
        const Token& at = ts_.peek();
        UniPoly d = unary();
        if (d.size() > 1) {
          throw ParseError("cannot divide by a non-constant here", at.line,
                           at.col);
        }
        if (d.empty()) {
          throw ParseError("division by zero in expression", at.line, at.col);
        }
        FieldScalar inv = d[0].inverse();
        for (auto& c : acc) c = c * inv;
      } else {
        return acc;
      }
    }
  }

  UniPoly unary() {
    if (ts_.accept_punct('-')) return neg(unary());
    if (ts_.accept_punct('+')) return unary();
    return power();
  }

  UniPoly power() {
    UniPoly base = atom();
    if (!ts_.accept_punct('^')) return base;
    const Token& at = ts_.peek();
    long e = expect_int(ts_, "an integer exponent");
    if (base.size() > 1) {
      if (e < 0) {
        throw ParseError("negative exponent of a non-constant", at.line,
                         at.col);
      }
      UniPoly acc = constant(FieldScalar::one(tower_));
      for (long i = 0; i < e; ++i) acc = mul(acc, base);
      return acc;
    }
    FieldScalar c = base.empty() ? FieldScalar::zero(tower_) : base[0];
    if (c.is_zero() && e <= 0) {
      throw ParseError("zero to a non-positive power", at.line, at.col);
    }
    return constant(c.pow(static_cast<int>(e)));
  }

  UniPoly atom() {
    const Token& t = ts_.peek();
    if (t.kind == Token::kInt) {
      ts_.next();
      return constant(FieldScalar::integer(tower_, parse_long(t)));
    }
    if (t.kind == Token::kIdent) {
      ts_.next();
      if (!indet_.empty() && t.text == indet_) {
        UniPoly p(2, FieldScalar::zero(tower_));
        p[1] = FieldScalar::one(tower_);
        return p;
      }
      if (tower_->symbol_index(t.text) < 0) {
        throw ParseError("undeclared symbol '" + t.text + "'", t.line, t.col);
      }
      return constant(FieldScalar::symbol(tower_, t.text));
    }
    if (t.kind == Token::kPunct && t.text[0] == '(') {
      ts_.next();
      UniPoly inner = expr();
      ts_.expect_punct(')');
      return inner;
    }
    throw ParseError("expected a value", t.line, t.col);
  }

  TokenStream& ts_;
  TowerPtr tower_;
  std::string indet_;
};

FieldScalar scalar_expr(TokenStream& ts, const TowerPtr& tower) {
  const Token& at = ts.peek();
  UniPoly p = ExprParser(ts, tower, "").parse();
  if (p.size() > 1) {
    throw ParseError("expected a scalar expression", at.line, at.col);
  }
  return p.empty() ? FieldScalar::zero(tower) : p[0];
}

// ---- small literal parsers -------------------------------------------------

std::vector<std::vector<FieldScalar>> matrix_literal(TokenStream& ts,
                                                     const TowerPtr& tower) {
  const Token& open = ts.expect_punct('[');
  std::vector<std::vector<FieldScalar>> rows;
  for (;;) {
    ts.expect_punct('[');
    std::vector<FieldScalar> row;
    for (;;) {
      row.push_back(scalar_expr(ts, tower));
      if (!ts.accept_punct(',')) break;
    }
    ts.expect_punct(']');
    rows.push_back(std::move(row));
    if (!ts.accept_punct(',')) break;
  }
  ts.expect_punct(']');
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw ParseError("matrix rows have unequal lengths", open.line, open.col);
    }
  }
  return rows;
}

Matrix<FieldScalar> to_scalar_matrix(
    const std::vector<std::vector<FieldScalar>>& rows, const TowerPtr& tower) {
  int nr = static_cast<int>(rows.size());
  int nc = static_cast<int>(rows.front().size());
  Matrix<FieldScalar> m(nr, nc, FieldScalar::zero(tower));
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      m.at(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
  }
  return m;
}

Matrix<long> to_long_matrix(const std::vector<std::vector<FieldScalar>>& rows,
                            const Token& at) {
  int nr = static_cast<int>(rows.size());
  int nc = static_cast<int>(rows.front().size());
  Matrix<long> m(nr, nc, 0L);
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      const FieldScalar& v = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (!v.is_rational()) {
        throw ParseError("matrix entries must be integers here", at.line,
                         at.col);
      }
      Rational q = v.as_rational();
      if (q.get_den() != 1) {
        throw ParseError("matrix entries must be integers here", at.line,
                         at.col);
      }
      if (!q.get_num().fits_slong_p()) {
        throw ParseError("integer out of range", at.line, at.col);
      }
      m.at(r, c) = q.get_num().get_si();
    }
  }
  return m;
}

// ---- job grammar -----------------------------------------------------------

struct PhiAssign {
  std::string gen;
  std::vector<int> exps;
  int line = 0;
};

struct RhoAssign {
  std::string gen;
  std::vector<std::vector<FieldScalar>> rows;
  int line = 0;
  int col = 0;
};

const std::set<std::string>& task_kinds() {
  static const std::set<std::string> kinds{
      "wada",     "complex_torsion", "alexander",        "reciprocity",
      "derivative", "covering",      "fibered",          "abelian_check",
      "multiplicativity", "conjugation"};
  return kinds;
}

const std::set<std::string>& options_for(const std::string& kind) {
  static const std::map<std::string, std::set<std::string>> table{
      {"wada", {"name", "remove"}},
      {"complex_torsion", {"name"}},
      {"alexander", {"name"}},
      {"reciprocity", {"name", "b"}},
      {"derivative", {"name", "a_exponents", "reduce"}},
      {"covering", {"name", "m"}},
      {"fibered", {"name", "matrix", "phi1"}},
      {"abelian_check", {"name", "xi"}},
      {"multiplicativity", {"name", "trials", "max_dim"}},
      {"conjugation", {"name", "trials"}},
  };
  return table.at(kind);
}

void check_new_symbol(const Job& job, const Token& t) {
  if (job.tower->symbol_index(t.text) >= 0) {
    throw ParseError("symbol '" + t.text + "' is already declared", t.line,
                     t.col);
  }
  for (const auto& v : job.vars) {
    if (v == t.text) {
      throw ParseError("'" + t.text + "' is already a torsion variable",
                       t.line, t.col);
    }
  }
}

std::vector<int> phi_monomial(TokenStream& ts, const Job& job) {
  std::vector<int> exps(job.vars.size(), 0);
  const Token& first = ts.peek();
  if (first.kind == Token::kInt && first.text == "1") {
    ts.next();
    return exps;
  }
  bool any = false;
  for (;;) {
    const Token& t = ts.peek();
    if (t.kind != Token::kIdent) break;
    ts.next();
    int idx = -1;
    for (size_t i = 0; i < job.vars.size(); ++i) {
      if (job.vars[i] == t.text) idx = static_cast<int>(i);
    }
    if (idx < 0) {
      throw ParseError("'" + t.text + "' is not a torsion variable", t.line,
                       t.col);
    }
    long e = 1;
    if (ts.accept_punct('^')) e = expect_int(ts, "an integer exponent");
    exps[static_cast<size_t>(idx)] += static_cast<int>(e);
    any = true;
    ts.accept_punct('*');
  }
  if (!any) {
    throw ParseError("expected a monomial in the torsion variables",
                     first.line, first.col);
  }
  return exps;
}

TaskDecl task_statement(TokenStream& ts, Job& job, const Token& kind_tok) {
  if (!task_kinds().count(kind_tok.text)) {
    throw ParseError("unknown task kind '" + kind_tok.text + "'",
                     kind_tok.line, kind_tok.col);
  }
  TaskDecl t;
  t.kind = kind_tok.text;
  t.name = kind_tok.text;
  t.line = kind_tok.line;
  const std::set<std::string>& allowed = options_for(t.kind);
  ts.expect_punct('{');
  while (!ts.accept_punct('}')) {
    const Token& key = ts.expect_ident("an option name");
    if (!allowed.count(key.text)) {
      throw ParseError("option '" + key.text + "' is not valid for task kind '" +
                           t.kind + "'",
                       key.line, key.col);
    }
    ts.expect_punct('=');
    if (key.text == "name") {
      t.name = ts.expect_ident("a task name").text;
    } else if (key.text == "remove") {
      t.remove = ts.expect_ident("a generator name").text;
    } else if (key.text == "b") {
      long b = expect_int(ts, "a boundary-component count");
      if (b < 1) {
        throw ParseError("b must be >= 1", key.line, key.col);
      }
      t.boundary_components = static_cast<int>(b);
    } else if (key.text == "a_exponents" || key.text == "reduce") {
      std::vector<int> list;
      while (ts.peek().kind == Token::kInt ||
             (ts.peek().kind == Token::kPunct && ts.peek().text[0] == '-')) {
        list.push_back(static_cast<int>(expect_int(ts, "an integer")));
      }
      if (list.empty()) {
        throw ParseError("expected a list of integers", key.line, key.col);
      }
      if (key.text == "a_exponents") {
        t.a_exponents = std::move(list);
      } else {
        t.reduce = std::move(list);
      }
    } else if (key.text == "m") {
      long m = expect_int(ts, "a covering order");
      if (m < 1) throw ParseError("m must be >= 1", key.line, key.col);
      t.cover_order = static_cast<int>(m);
    } else if (key.text == "xi") {
      t.xi = scalar_expr(ts, job.tower);
    } else if (key.text == "matrix") {
      t.matrix = to_scalar_matrix(matrix_literal(ts, job.tower), job.tower);
      if (t.matrix->rows != t.matrix->cols) {
        throw ParseError("the monodromy matrix must be square", key.line,
                         key.col);
      }
    } else if (key.text == "phi1") {
      t.phi1 = to_long_matrix(matrix_literal(ts, job.tower), key);
      if (t.phi1->rows != t.phi1->cols) {
        throw ParseError("phi1 must be square", key.line, key.col);
      }
    } else if (key.text == "trials") {
      long n = expect_int(ts, "a trial count");
      if (n < 1) throw ParseError("trials must be >= 1", key.line, key.col);
      t.trials = static_cast<int>(n);
    } else if (key.text == "max_dim") {
      long n = expect_int(ts, "a dimension bound");
      if (n < 2) throw ParseError("max_dim must be >= 2", key.line, key.col);
      t.max_dim = static_cast<int>(n);
    }
    ts.expect_punct(';');
  }
  // Required options per kind.
  if (t.kind == "derivative" && t.a_exponents.empty()) {
    throw ParseError("task derivative needs a_exponents", t.line, 1);
  }
  if (t.kind == "covering" && !t.cover_order) {
    throw ParseError("task covering needs m", t.line, 1);
  }
  if (t.kind == "abelian_check" && !t.xi) {
    throw ParseError("task abelian_check needs xi", t.line, 1);
  }
  if (t.kind == "fibered" && (!t.matrix || !t.phi1)) {
    throw ParseError("task fibered needs matrix and phi1", t.line, 1);
  }
  for (const auto& prev : job.tasks) {
    if (prev.name == t.name) {
      throw ParseError("duplicate task name '" + t.name +
                           "'; give one of them a name = ... option",
                       t.line, 1);
    }
  }
  return t;
}

}  // namespace

FieldScalar parse_scalar(const std::string& text, const TowerPtr& tower) {
  TokenStream ts(tokenize(text));
  FieldScalar v = scalar_expr(ts, tower);
  if (!ts.at_end()) {
    throw ParseError("unexpected trailing input", ts.peek().line,
                     ts.peek().col);
  }
  return v;
}

Job parse_job_text(const std::string& text) {
  TokenStream ts(tokenize(text));
  Job job;
  job.tower = FieldTower::rationals();

  std::string pres_src;
  int pres_src_lines = 1;  // current line count of pres_src (1-based)
  std::vector<PhiAssign> phi_assigns;
  std::vector<RhoAssign> rho_assigns;

  while (!ts.at_end()) {
    const Token head = ts.expect_ident("a statement keyword");
    if (head.text == "vars") {
      while (!ts.accept_punct(';')) {
        const Token& name = ts.expect_ident("a variable name");
        check_new_symbol(job, name);
        job.vars.push_back(name.text);
      }
      if (job.vars.empty()) {
        throw ParseError("vars needs at least one name", head.line, head.col);
      }
    } else if (head.text == "extend") {
      const Token& name = ts.expect_ident("an extension symbol");
      check_new_symbol(job, name);
      ts.expect_punct(':');
      std::vector<FieldScalar> coeffs;
      if (ts.peek().kind == Token::kIdent && ts.peek().text == "cyclotomic") {
        ts.next();
        long m = expect_int(ts, "a cyclotomic index");
        if (m < 3) {
          throw ParseError(
              "cyclotomic needs an index >= 3 (lower ones have degree < 2)",
              head.line, head.col);
        }
        for (const Rational& c : cyclotomic_polynomial(static_cast<int>(m))) {
          coeffs.push_back(FieldScalar::from_rational(job.tower, c));
        }
      } else {
        UniPoly p = ExprParser(ts, job.tower, "x").parse();
        coeffs = p;
      }
      ts.expect_punct(';');
      if (coeffs.size() < 3) {
        throw ParseError("the minimal polynomial must have degree >= 2",
                         head.line, head.col);
      }
      if (!coeffs.back().is_one()) {
        throw ParseError("the minimal polynomial must be monic", head.line,
                         head.col);
      }
      job.tower = adjoin_extension(job.tower, name.text, coeffs);
    } else if (head.text == "params") {
      std::vector<std::string> names;
      while (!ts.accept_punct(';')) {
        const Token& name = ts.expect_ident("a parameter name");
        check_new_symbol(job, name);
        names.push_back(name.text);
      }
      if (names.empty()) {
        throw ParseError("params needs at least one name", head.line,
                         head.col);
      }
      job.tower = job.tower->with_params(names);
    } else if (head.text == "gens" || head.text == "let" ||
               head.text == "rel") {
      // Forward the raw statement to the presentation parser, placed at its
      // original line so its diagnostics carry job-file line numbers.
      size_t start = head.offset;
      const Token* semi = nullptr;
      while (!ts.at_end()) {
        const Token& t = ts.next();
        if (t.kind == Token::kPunct && t.text[0] == ';') {
          semi = &t;
          break;
        }
      }
      if (semi == nullptr) {
        throw ParseError("statement not terminated by ';'", head.line,
                         head.col);
      }
      while (pres_src_lines < head.line) {
        pres_src += '\n';
        ++pres_src_lines;
      }
      std::string slice = text.substr(start, semi->offset + 1 - start);
      for (char c : slice) {
        if (c == '\n') ++pres_src_lines;
      }
      if (!pres_src.empty() && pres_src.back() != '\n') pres_src += ' ';
      pres_src += slice;
    } else if (head.text == "phi") {
      PhiAssign a;
      a.gen = ts.expect_ident("a generator name").text;
      a.line = head.line;
      ts.expect_punct('=');
      if (job.vars.empty()) {
        throw ParseError("phi assignment before any vars statement", head.line,
                         head.col);
      }
      a.exps = phi_monomial(ts, job);
      ts.expect_punct(';');
      phi_assigns.push_back(std::move(a));
    } else if (head.text == "rho") {
      RhoAssign a;
      const Token& gen = ts.expect_ident("a generator name");
      a.gen = gen.text;
      a.line = head.line;
      a.col = head.col;
      ts.expect_punct('=');
      a.rows = matrix_literal(ts, job.tower);
      ts.expect_punct(';');
      if (a.rows.size() != 2 || a.rows.front().size() != 2) {
        throw ParseError("rho needs a 2x2 matrix", head.line, head.col);
      }
      rho_assigns.push_back(std::move(a));
    } else if (head.text == "task") {
      const Token& kind = ts.expect_ident("a task kind");
      job.tasks.push_back(task_statement(ts, job, kind));
    } else {
      throw ParseError("unknown statement '" + head.text + "'", head.line,
                       head.col);
    }
  }

  // ---- resolution against the finished presentation and tower ----

  if (!pres_src.empty()) job.pres = parse_presentation(pres_src);

  if (!phi_assigns.empty()) {
    if (!job.pres) {
      throw ParseError("phi assignment without a gens statement",
                       phi_assigns.front().line, 1);
    }
    AbelianizationMap phi;
    phi.vars = job.vars;
    phi.images.assign(job.pres->generators.size(),
                      std::vector<int>(job.vars.size(), 0));
    std::vector<bool> seen(job.pres->generators.size(), false);
    for (const auto& a : phi_assigns) {
      int idx = job.pres->generator_index(a.gen);
      if (idx < 0) {
        throw ParseError("phi for undeclared generator '" + a.gen + "'",
                         a.line, 1);
      }
      if (seen[static_cast<size_t>(idx)]) {
        throw ParseError("duplicate phi assignment for '" + a.gen + "'",
                         a.line, 1);
      }
      seen[static_cast<size_t>(idx)] = true;
      phi.images[static_cast<size_t>(idx)] = a.exps;
    }
    for (size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        throw ParseError(
            "no phi assignment for generator '" + job.pres->generators[i] + "'",
            phi_assigns.back().line, 1);
      }
    }
    job.phi = std::move(phi);
  }

  if (!rho_assigns.empty()) {
    if (!job.pres) {
      throw ParseError("rho assignment without a gens statement",
                       rho_assigns.front().line, 1);
    }
    SL2Rep rep;
    rep.tower = job.tower;
    rep.images.assign(job.pres->generators.size(),
                      Mat2::identity(job.tower));
    std::vector<bool> seen(job.pres->generators.size(), false);
    for (const auto& a : rho_assigns) {
      int idx = job.pres->generator_index(a.gen);
      if (idx < 0) {
        throw ParseError("rho for undeclared generator '" + a.gen + "'",
                         a.line, 1);
      }
      if (seen[static_cast<size_t>(idx)]) {
        throw ParseError("duplicate rho assignment for '" + a.gen + "'",
                         a.line, 1);
      }
      seen[static_cast<size_t>(idx)] = true;
      Mat2 m;
      m.a = a.rows[0][0].lift_to(job.tower);
      m.b = a.rows[0][1].lift_to(job.tower);
      m.c = a.rows[1][0].lift_to(job.tower);
      m.d = a.rows[1][1].lift_to(job.tower);
      if (!m.det().is_one()) {
        throw ParseError("rho matrix for '" + a.gen +
                             "' must have determinant 1",
                         a.line, a.col);
      }
      rep.images[static_cast<size_t>(idx)] = m;
    }
    for (size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        throw ParseError(
            "no rho assignment for generator '" + job.pres->generators[i] + "'",
            rho_assigns.back().line, 1);
      }
    }
    job.rep = std::move(rep);
  }

  for (auto& t : job.tasks) {
    if (t.remove) {
      if (!job.pres || job.pres->generator_index(*t.remove) < 0) {
        throw ParseError("remove names an undeclared generator '" + *t.remove +
                             "'",
                         t.line, 1);
      }
    }
    if (t.xi) t.xi = t.xi->lift_to(job.tower);
    if (t.matrix) {
      for (int r = 0; r < t.matrix->rows; ++r) {
        for (int c = 0; c < t.matrix->cols; ++c) {
          t.matrix->at(r, c) = t.matrix->at(r, c).lift_to(job.tower);
        }
      }
    }
  }

  return job;
}

Job parse_job_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot read job file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_job_text(buf.str());
}

// ---- task execution --------------------------------------------------------

namespace {

struct RunCache {
  std::optional<TorsionResult> wada;
  std::optional<LaurentPoly> wada_poly;
};

void fill_from_torsion(TaskOutcome& out, const TorsionResult& r) {
  out.ambiguity = r.ambiguity;
  for (const auto& n : r.notes) out.notes.push_back(n);
  if (auto p = is_polynomial(r.value)) {
    out.poly = *p;
  } else {
    out.value = r.value;
  }
}

TorsionJobInput job_input(const Job& job, const TaskDecl* t) {
  TorsionJobInput in{*job.pres, *job.rep, *job.phi, std::nullopt, std::nullopt};
  if (t != nullptr && t->remove) {
    in.removed_generator = job.pres->generator_index(*t->remove);
  }
  return in;
}

const TorsionResult& cached_wada(const Job& job, RunCache& cache,
                                 std::vector<std::string>& notes) {
  if (!cache.wada) {
    if (!job.pres || !job.rep || !job.phi) {
      throw ValidationError(
          "this task needs the adjoint torsion, but the job declares no "
          "presentation / representation / weights");
    }
    cache.wada = wada_torsion(job_input(job, nullptr));
    notes.push_back("computed the adjoint torsion with default options");
  }
  return *cache.wada;
}

const LaurentPoly& cached_wada_poly(const Job& job, RunCache& cache,
                                    std::vector<std::string>& notes) {
  const TorsionResult& r = cached_wada(job, cache, notes);
  if (!cache.wada_poly) {
    auto p = is_polynomial(r.value);
    if (!p) {
      throw ValidationError(
          "the adjoint torsion of this job is not a polynomial; this task "
          "needs a polynomial value");
    }
    cache.wada_poly = *p;
  }
  return *cache.wada_poly;
}

Mat2 random_sl2_int(std::mt19937& rng, const TowerPtr& tower) {
  std::uniform_int_distribution<int> nf(1, 4), mi(-2, 2), side(0, 1);
  Mat2 p = Mat2::identity(tower);
  int n = nf(rng);
  for (int i = 0; i < n; ++i) {
    int m = mi(rng);
    if (m == 0) m = 1;
    Mat2 e = Mat2::identity(tower);
    if (side(rng) == 0) {
      e.b = FieldScalar::integer(tower, m);
    } else {
      e.c = FieldScalar::integer(tower, m);
    }
    p = p * e;
  }
  return p;
}

void run_wada(const Job& job, const TaskDecl& t, const RunOptions& opts,
              RunCache& cache, TaskOutcome& out) {
  TorsionResult r = wada_torsion(job_input(job, &t));
  fill_from_torsion(out, r);
  cache.wada = r;
  cache.wada_poly.reset();
  if (auto p = is_polynomial(r.value)) cache.wada_poly = *p;

  if (!opts.check_invariants) return;
  TwistedMap tm(*job.pres, *job.rep, *job.phi);
  TorsionResult ct = torsion_of_complex(build_complex_from_presentation(tm));
  if (auto u = unit_equivalent(ct.value, r.value)) {
    out.notes.push_back("invariant check: chain-complex torsion agrees (" +
                        u->str(job.vars) + ")");
  } else {
    out.ok = false;
    out.notes.push_back(
        "invariant check FAILED: chain-complex torsion differs: " +
        ct.value.str());
  }
  for (size_t k = 0; k < job.pres->generators.size(); ++k) {
    TorsionJobInput in = job_input(job, nullptr);
    in.removed_generator = static_cast<int>(k);
    const std::string& g = job.pres->generators[k];
    try {
      TorsionResult rk = wada_torsion(in);
      if (unit_equivalent(rk.value, r.value)) {
        out.notes.push_back("invariant check: removing generator " + g +
                            " agrees");
      } else {
        out.ok = false;
        out.notes.push_back("invariant check FAILED: removing generator " + g +
                            " gives " + rk.value.str());
      }
    } catch (const DegenerateDenominator&) {
      out.notes.push_back("invariant check: generator " + g +
                          " has a singular denominator; skipped");
    }
  }
}

void run_reciprocity(const Job& job, const TaskDecl& t, RunCache& cache,
                     TaskOutcome& out) {
  const LaurentPoly& delta = cached_wada_poly(job, cache, out.notes);
  SignContext ctx;
  if (t.boundary_components) {
    ctx.boundary_components = *t.boundary_components;
    ctx.manifold = *t.boundary_components == 1 ? ManifoldClass::kKnotExterior
                                               : ManifoldClass::kLinkExterior;
  }
  ReciprocityReport rr = reciprocity(delta, ctx);
  out.notes.push_back("Delta(1/t) = (" + rr.unit.str(job.vars) +
                      ") * Delta(t)");
  if (rr.observed_sign != 0) {
    out.notes.push_back("observed duality sign: " +
                        std::to_string(rr.observed_sign));
  }
  if (rr.expected_sign) {
    out.notes.push_back("expected duality sign: " +
                        std::to_string(*rr.expected_sign));
    if (!rr.sign_matches) {
      out.notes.push_back(
          "observed and expected signs disagree (recorded, not treated as a "
          "failure)");
    }
  }
  for (const auto& n : rr.notes) out.notes.push_back(n);
}

void run_derivative(const Job& job, const TaskDecl& t, RunCache& cache,
                    TaskOutcome& out) {
  const LaurentPoly& delta = cached_wada_poly(job, cache, out.notes);
  out.scalar = derivative_formula(delta, t.a_exponents, t.reduce);
  out.ambiguity.sign_free = true;
  out.notes.push_back(
      "limit of the torsion over the boundary factors, defined up to sign");
}

void run_covering(const Job& job, const TaskDecl& t, RunCache& cache,
                  TaskOutcome& out) {
  const LaurentPoly& delta = cached_wada_poly(job, cache, out.notes);
  CoveringReport cr = covering_formula(delta, *t.cover_order);
  out.poly = cr.value;
  out.ambiguity = cr.ambiguity;
  for (const auto& n : cr.notes) out.notes.push_back(n);
}

void run_abelian_check(const Job& job, const TaskDecl& t, TaskOutcome& out) {
  FactorizationReport fr = abelian_factorization(*job.pres, *job.phi, *t.xi);
  out.ok = fr.equal;
  out.notes.push_back("torsion at the diagonal representation: " +
                      fr.lhs.str());
  out.notes.push_back("product-formula value: " + fr.rhs.str());
  if (fr.unit) {
    out.notes.push_back("sides agree up to the unit " + fr.unit->str(job.vars));
  } else if (!fr.equal) {
    out.notes.push_back("sides are NOT unit-equivalent");
  }
  for (const auto& n : fr.notes) out.notes.push_back(n);
}

void run_multiplicativity(const Job& job, const TaskDecl& t,
                          const RunOptions& opts, TaskOutcome& out) {
  (void)job;
  int trials = t.trials.value_or(100);
  int max_dim = t.max_dim.value_or(4);
  int part = max_dim / 2;
  std::mt19937 rng(static_cast<unsigned long>(opts.seed));
  TowerPtr q = FieldTower::rationals();
  std::vector<std::string> tvars{"t"};
  int bad = 0;
  std::string first_failure;
  for (int iter = 0; iter < trials; ++iter) {
    int n = 2 + static_cast<int>(rng() % 2);
    BasedChainComplex sub = random_based_complex(rng, q, tvars, n, part);
    BasedChainComplex quot =
        random_based_complex(rng, q, tvars, n, max_dim - part);
    TwistedSumSES ts = random_twisted_sum(rng, sub, quot);
    MultiplicativityReport rep =
        multiplicativity_check(sub, ts.total, quot, ts.incl, ts.proj);
    if (!rep.equal) {
      ++bad;
      if (first_failure.empty()) {
        first_failure = "first failure at iteration " + std::to_string(iter);
      }
    }
  }
  out.ok = bad == 0;
  out.notes.push_back(std::to_string(trials - bad) + "/" +
                      std::to_string(trials) +
                      " random twisted-sum short exact sequences satisfied "
                      "the product identity (seed " +
                      std::to_string(opts.seed) + ", dims <= " +
                      std::to_string(max_dim) + ")");
  if (!first_failure.empty()) out.notes.push_back(first_failure);
}

void run_conjugation(const Job& job, const TaskDecl& t, const RunOptions& opts,
                     RunCache& cache, TaskOutcome& out) {
  int trials = t.trials.value_or(20);
  const TorsionResult& base = cached_wada(job, cache, out.notes);
  std::mt19937 rng(static_cast<unsigned long>(opts.seed));
  int bad = 0;
  std::string first_failure;
  for (int iter = 0; iter < trials; ++iter) {
    Mat2 p = random_sl2_int(rng, job.tower);
    Mat2 pinv = p.inverse_det1();
    SL2Rep conj = *job.rep;
    for (auto& img : conj.images) img = p * img * pinv;
    TorsionJobInput in{*job.pres, conj, *job.phi, std::nullopt, std::nullopt};
    TorsionResult r = wada_torsion(in);
    if (!unit_equivalent(r.value, base.value)) {
      ++bad;
      if (first_failure.empty()) {
        first_failure = "first failure at iteration " + std::to_string(iter);
      }
    }
  }
  out.ok = bad == 0;
  out.notes.push_back(
      std::to_string(trials - bad) + "/" + std::to_string(trials) +
      " conjugated representations gave a unit-equivalent torsion (seed " +
      std::to_string(opts.seed) + ")");
  if (!first_failure.empty()) out.notes.push_back(first_failure);
}

bool kind_needs_presentation(const std::string& kind) {
  return kind == "wada" || kind == "complex_torsion" || kind == "alexander" ||
         kind == "abelian_check" || kind == "conjugation" ||
         kind == "reciprocity" || kind == "derivative" || kind == "covering";
}

bool kind_needs_rep(const std::string& kind) {
  return kind == "wada" || kind == "complex_torsion" ||
         kind == "conjugation" || kind == "reciprocity" ||
         kind == "derivative" || kind == "covering";
}

}  // namespace

bool JobReport::all_ok() const {
  for (const auto& t : tasks) {
    if (!t.ok) return false;
  }
  return true;
}

JobReport run_job(const Job& job, const RunOptions& opts) {
  std::vector<const TaskDecl*> chosen;
  if (opts.selected.empty()) {
    for (const auto& t : job.tasks) chosen.push_back(&t);
  } else {
    std::set<std::string> wanted(opts.selected.begin(), opts.selected.end());
    for (const auto& t : job.tasks) {
      if (wanted.count(t.name)) {
        chosen.push_back(&t);
        wanted.erase(t.name);
      }
    }
    if (!wanted.empty()) {
      throw ValidationError("unknown task: " + *wanted.begin());
    }
  }

  bool needs_pres = false, needs_rep = false;
  for (const TaskDecl* t : chosen) {
    needs_pres = needs_pres || kind_needs_presentation(t->kind);
    needs_rep = needs_rep || kind_needs_rep(t->kind);
  }
  if (needs_pres && (!job.pres || !job.phi)) {
    throw ValidationError(
        "the selected tasks need a presentation with phi assignments");
  }
  if (needs_rep && !job.rep) {
    throw ValidationError("the selected tasks need rho assignments");
  }

  JobReport report;
  report.seed = opts.seed;
  if (job.pres && job.rep && job.phi) {
    ValidationReport vr = validate_representation(*job.rep, *job.phi, *job.pres);
    if (!vr.ok()) {
      throw ValidationError("representation validation failed: " + vr.str());
    }
    report.warnings = vr.warnings;
  }

  RunCache cache;
  for (const TaskDecl* t : chosen) {
    TaskOutcome out;
    out.name = t->name;
    out.kind = t->kind;
    try {
      if (t->kind == "wada") {
        run_wada(job, *t, opts, cache, out);
      } else if (t->kind == "complex_torsion") {
        TwistedMap tm(*job.pres, *job.rep, *job.phi);
        fill_from_torsion(
            out, torsion_of_complex(build_complex_from_presentation(tm)));
      } else if (t->kind == "alexander") {
        out.poly = classical_alexander(*job.pres, *job.phi);
        out.ambiguity.sign_free = true;
        out.ambiguity.monomial_free = true;
        out.notes.push_back(
            "normalized to minimum degree zero with positive leading "
            "coefficient");
      } else if (t->kind == "reciprocity") {
        run_reciprocity(job, *t, cache, out);
      } else if (t->kind == "derivative") {
        run_derivative(job, *t, cache, out);
      } else if (t->kind == "covering") {
        run_covering(job, *t, cache, out);
      } else if (t->kind == "fibered") {
        fill_from_torsion(out, fibered_torsion(*t->matrix, *t->phi1));
      } else if (t->kind == "abelian_check") {
        run_abelian_check(job, *t, out);
      } else if (t->kind == "multiplicativity") {
        run_multiplicativity(job, *t, opts, out);
      } else if (t->kind == "conjugation") {
        run_conjugation(job, *t, opts, cache, out);
      }
    } catch (const TorsionError& e) {
      out.ok = false;
      out.notes.push_back(std::string("error: ") + e.what());
    }
    report.tasks.push_back(std::move(out));
  }
  return report;
}

// ---- rendering -------------------------------------------------------------

namespace {

std::string value_label(const std::string& kind) {
  if (kind == "alexander") return "Delta";
  if (kind == "derivative") return "T_lambda";
  return "torsion";
}

std::string ambiguity_annotation(const Ambiguity& a,
                                 const std::vector<std::string>& vars) {
  if (!a.sign_free && !a.monomial_free) return "exact";
  if (a.sign_free && !a.monomial_free) return "up to sign";
  std::string mono;
  if (vars.size() == 1) {
    mono = vars[0] + "^m";
  } else {
    for (size_t i = 0; i < vars.size(); ++i) {
      if (i > 0) mono += "*";
      mono += vars[i] + "^" + std::string(1, static_cast<char>('a' + i));
    }
  }
  if (mono.empty()) mono = "1";
  return (a.sign_free ? "up to +- " : "up to ") + mono;
}

nlohmann::json terms_json(const LaurentPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [exps, coeff] : p.terms()) {
    terms.push_back({exps, coeff.str()});
  }
  return terms;
}

}  // namespace

std::string render_text(const Job& job, const JobReport& report) {
  (void)job;
  std::ostringstream os;
  os << "seed: " << report.seed << "\n";
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
  for (const auto& t : report.tasks) {
    os << "\n== " << t.name;
    if (t.name != t.kind) os << " (" << t.kind << ")";
    os << " ==\n";
    os << "status: " << (t.ok ? "ok" : "error") << "\n";
    const std::string label = value_label(t.kind);
    if (t.poly) {
      os << label << " = " << t.poly->str(true) << "   ["
         << ambiguity_annotation(t.ambiguity, t.poly->vars()) << "]\n";
    } else if (t.value) {
      os << label << " = " << t.value->str() << "   ["
         << ambiguity_annotation(t.ambiguity, t.value->vars()) << "]\n";
    } else if (t.scalar) {
      os << label << " = " << t.scalar->str() << "   ["
         << ambiguity_annotation(t.ambiguity, {}) << "]\n";
    }
    for (const auto& n : t.notes) os << "note: " << n << "\n";
  }
  return os.str();
}

std::string render_json(const Job& job, const JobReport& report) {
  (void)job;
  nlohmann::json doc;
  doc["seed"] = report.seed;
  doc["warnings"] = report.warnings;
  nlohmann::json tasks = nlohmann::json::array();
  for (const auto& t : report.tasks) {
    nlohmann::json jt;
    jt["task"] = t.name;
    jt["kind"] = t.kind;
    jt["status"] = t.ok ? "ok" : "error";
    if (t.poly) {
      jt["value"] = {{"vars", t.poly->vars()}, {"terms", terms_json(*t.poly)}};
    } else if (t.value) {
      jt["value"] = {{"vars", t.value->vars()},
                     {"numerator_terms", terms_json(t.value->num())},
                     {"denominator_terms", terms_json(t.value->den())}};
    } else if (t.scalar) {
      jt["value"] = {{"scalar", t.scalar->str()}};
    } else {
      jt["value"] = nullptr;
    }
    std::vector<std::string> vars =
        t.poly ? t.poly->vars() : (t.value ? t.value->vars() : job.vars);
    jt["ambiguity"] = {{"sign_free", t.ambiguity.sign_free},
                       {"monomial_free", t.ambiguity.monomial_free},
                       {"label", ambiguity_annotation(t.ambiguity, vars)}};
    jt["notes"] = t.notes;
    tasks.push_back(std::move(jt));
  }
  doc["tasks"] = std::move(tasks);
  return doc.dump(2) + "\n";
}

std::vector<std::pair<std::string, LaurentPoly>> report_polynomials(
    const std::string& json_text, const TowerPtr& tower) {
  nlohmann::json doc = nlohmann::json::parse(json_text);
  std::vector<std::pair<std::string, LaurentPoly>> out;
  for (const auto& jt : doc.at("tasks")) {
    if (!jt.contains("value") || jt.at("value").is_null()) continue;
    const auto& v = jt.at("value");
    if (!v.contains("terms")) continue;
    std::vector<std::string> vars =
        v.at("vars").get<std::vector<std::string>>();
    LaurentPoly p = LaurentPoly::zero(tower, vars);
    for (const auto& term : v.at("terms")) {
      std::vector<int> exps = term.at(0).get<std::vector<int>>();
      FieldScalar c = parse_scalar(term.at(1).get<std::string>(), tower);
      p.add_term(exps, c);
    }
    out.emplace_back(jt.at("task").get<std::string>(), std::move(p));
  }
  return out;
}

}  // namespace torsionlab
