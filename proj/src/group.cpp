// Word arithmetic, the presentation parser, and Fox derivatives.
#include "torsionlab/group.hpp"

#include <set>
#include <sstream>

namespace torsionlab {

Word free_reduce(const Word& w) {
  Word out;
  for (const Letter& l : w.letters) {
    if (!out.letters.empty() && out.letters.back().gen == l.gen &&
        out.letters.back().exp == -l.exp) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

Word word_mul(const Word& a, const Word& b) {
  Word cat = a;
  cat.letters.insert(cat.letters.end(), b.letters.begin(), b.letters.end());
  return free_reduce(cat);
}

Word word_inverse(const Word& w) {
  Word out;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back({it->gen, -it->exp});
  }
  return out;
}

Word word_pow(const Word& w, int e) {
  Word base = e < 0 ? word_inverse(w) : w;
  int n = e < 0 ? -e : e;
  Word out;
  for (int k = 0; k < n; ++k) out = word_mul(out, base);
  return out;
}

std::string word_str(const Word& w, const std::vector<std::string>& names) {
  if (w.letters.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  size_t i = 0;
  while (i < w.letters.size()) {
    size_t j = i;
    while (j + 1 < w.letters.size() &&
           w.letters[j + 1].gen == w.letters[i].gen &&
           w.letters[j + 1].exp == w.letters[i].exp) {
      ++j;
    }
    int run = static_cast<int>(j - i + 1) * w.letters[i].exp;
    if (!first) os << " ";
    first = false;
    os << names.at(w.letters[i].gen);
    if (run != 1) os << "^" << run;
    i = j + 1;
  }
  return os.str();
}

GroupRingElement GroupRingElement::one() { return from_word(Word{}); }

GroupRingElement GroupRingElement::from_word(const Word& w, long coeff) {
  GroupRingElement e;
  e.add_word(w, coeff);
  return e;
}

void GroupRingElement::add_word(const Word& w, long coeff) {
  if (coeff == 0) return;
  Word r = free_reduce(w);
  auto it = terms_.find(r);
  if (it == terms_.end()) {
    terms_.emplace(std::move(r), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement out = *this;
  for (auto& [w, c] : o.terms_) out.add_word(w, c);
  return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  GroupRingElement out = *this;
  for (auto& [w, c] : o.terms_) out.add_word(w, -c);
  return out;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement out;
  for (auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

std::string GroupRingElement::str(
    const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    long a = c < 0 ? -c : c;
    if (a != 1 || w.empty()) os << a;
    if (!w.empty()) {
      if (a != 1) os << "*";
      os << word_str(w, names);
    }
  }
  return os.str();
}

GroupRingElement group_ring_mul(const GroupRingElement& x,
                                const GroupRingElement& y) {
  GroupRingElement out;
  for (auto& [wx, cx] : x.terms()) {
    for (auto& [wy, cy] : y.terms()) {
      out.add_word(word_mul(wx, wy), cx * cy);
    }
  }
  return out;
}

GroupRingElement fox_derivative(const Word& w, int g) {
  GroupRingElement acc;
  Word prefix;
  for (const Letter& l : w.letters) {
    if (l.gen == g) {
      if (l.exp == 1) {
        acc.add_word(prefix, 1);
      } else {
        // d(g^-1)/dg = -g^-1, translated by the prefix.
        acc.add_word(word_mul(prefix, Word{{{g, -1}}}), -1);
      }
    }
    prefix.letters.push_back(l);
    prefix = free_reduce(prefix);
  }
  return acc;
}

int Presentation::generator_index(const std::string& name) const {
  for (size_t i = 0; i < generators.size(); ++i) {
    if (generators[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::string Presentation::print() const {
  std::ostringstream os;
  os << "gens";
  for (auto& g : generators) os << " " << g;
  os << " ;\n";
  for (auto& r : relators) os << "rel " << word_str(r, generators) << " ;\n";
  return os.str();
}

namespace {

struct Token {
  std::string text;
  int line = 1;
  int col = 1;
};

// Splits into identifiers, integers, and single punctuation characters,
// tracking line/column; `#` comments run to end of line.
std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(text[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      ++i;
      continue;
    }
    Token t{{}, line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_')) {
        t.text += text[i];
        advance(text[i++]);
      }
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      t.text += text[i];
      advance(text[i++]);
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        t.text += text[i];
        advance(text[i++]);
      }
    } else {
      t.text = std::string(1, c);
      advance(c);
      ++i;
    }
    out.push_back(std::move(t));
  }
  return out;
}

bool is_name(const std::string& s) {
  return !s.empty() &&
         (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

struct RawStatement {
  std::vector<Token> tokens;  // without the trailing ';'
};

// A symbol followed by an optional ^exponent.
struct RawAtom {
  Token name;
  int exp = 1;
};

std::vector<RawAtom> parse_atoms(const std::vector<Token>& toks, size_t from,
                                 size_t to) {
  std::vector<RawAtom> atoms;
  size_t i = from;
  while (i < to) {
    const Token& t = toks[i];
    if (!is_name(t.text)) {
      throw ParseError("expected a symbol, found '" + t.text + "'", t.line,
                       t.col);
    }
    RawAtom a{t, 1};
    ++i;
    if (i < to && toks[i].text == "^") {
      ++i;
      if (i >= to) {
        throw ParseError("expected an exponent after '^'", t.line, t.col);
      }
      try {
        a.exp = std::stoi(toks[i].text);
      } catch (const std::exception&) {
        throw ParseError("invalid exponent '" + toks[i].text + "'",
                         toks[i].line, toks[i].col);
      }
      if (a.exp == 0) {
        throw ParseError("exponent must be nonzero", toks[i].line,
                         toks[i].col);
      }
      ++i;
    }
    atoms.push_back(std::move(a));
  }
  return atoms;
}

class PresentationBuilder {
 public:
  Presentation build(const std::string& text) {
    auto toks = tokenize(text);
    // Split on ';'.
    std::vector<RawStatement> stmts;
    RawStatement cur;
    for (auto& t : toks) {
      if (t.text == ";") {
        if (!cur.tokens.empty()) stmts.push_back(std::move(cur));
        cur = {};
      } else {
        cur.tokens.push_back(t);
      }
    }
    if (!cur.tokens.empty()) {
      const Token& t = cur.tokens.front();
      throw ParseError("statement not terminated by ';'", t.line, t.col);
    }

    for (auto& s : stmts) handle(s);
    for (auto& [name, atoms] : abbrevs_) {
      (void)atoms;
      expand_abbrev(name);  // forces cycle detection even for unused ones
    }
    for (auto& r : raw_relators_) {
      pres_.relators.push_back(free_reduce(expand_atoms(r)));
    }
    return pres_;
  }

 private:
  void handle(const RawStatement& s) {
    const Token& head = s.tokens.front();
    if (head.text == "gens") {
      for (size_t i = 1; i < s.tokens.size(); ++i) {
        const Token& t = s.tokens[i];
        if (!is_name(t.text)) {
          throw ParseError("invalid generator name '" + t.text + "'", t.line,
                           t.col);
        }
        if (pres_.generator_index(t.text) >= 0 || abbrevs_.count(t.text)) {
          throw ParseError("duplicate symbol '" + t.text + "'", t.line,
                           t.col);
        }
        pres_.generators.push_back(t.text);
      }
    } else if (head.text == "let") {
      if (s.tokens.size() < 4 || !is_name(s.tokens[1].text) ||
          s.tokens[2].text != "=") {
        throw ParseError("expected 'let name = word'", head.line, head.col);
      }
      const Token& nm = s.tokens[1];
      if (pres_.generator_index(nm.text) >= 0 || abbrevs_.count(nm.text)) {
        throw ParseError("duplicate symbol '" + nm.text + "'", nm.line,
                         nm.col);
      }
      abbrevs_[nm.text] = parse_atoms(s.tokens, 3, s.tokens.size());
    } else if (head.text == "rel") {
      raw_relators_.push_back(parse_atoms(s.tokens, 1, s.tokens.size()));
    } else {
      throw ParseError("unknown statement '" + head.text + "'", head.line,
                       head.col);
    }
  }

  Word expand_abbrev(const std::string& name) {
    auto done = expanded_.find(name);
    if (done != expanded_.end()) return done->second;
    if (in_progress_.count(name)) {
      const Token& t = abbrevs_.at(name).front().name;
      throw ParseError("cyclic abbreviation '" + name + "'", t.line, t.col);
    }
    in_progress_.insert(name);
    Word w = expand_atoms(abbrevs_.at(name));
    in_progress_.erase(name);
    expanded_[name] = w;
    return w;
  }

  Word expand_atoms(const std::vector<RawAtom>& atoms) {
    Word w;
    for (auto& a : atoms) {
      int g = pres_.generator_index(a.name.text);
      Word piece;
      if (g >= 0) {
        piece.letters.push_back({g, 1});
      } else if (abbrevs_.count(a.name.text)) {
        piece = expand_abbrev(a.name.text);
      } else {
        throw ParseError("undeclared symbol '" + a.name.text + "'",
                         a.name.line, a.name.col);
      }
      w = word_mul(w, word_pow(piece, a.exp));
    }
    return w;
  }

  Presentation pres_;
  std::map<std::string, std::vector<RawAtom>> abbrevs_;
  std::map<std::string, Word> expanded_;
  std::set<std::string> in_progress_;
  std::vector<std::vector<RawAtom>> raw_relators_;
};

}  // namespace

Presentation parse_presentation(const std::string& text) {
  return PresentationBuilder().build(text);
}

}  // namespace torsionlab
