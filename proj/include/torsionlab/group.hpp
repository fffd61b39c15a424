// Finitely presented groups: freely reduced words, a presentation parser
// with named abbreviations, integer group-ring elements, and Fox free
// differential calculus.
#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "torsionlab/errors.hpp"

namespace torsionlab {

// One letter of a word: generator index and exponent +1 or -1.
struct Letter {
  int gen = 0;
  int exp = 1;
  auto operator<=>(const Letter&) const = default;
};

// A word in a free group, stored freely reduced by every producing
// operation in this module.
struct Word {
  std::vector<Letter> letters;
  auto operator<=>(const Word&) const = default;
  bool empty() const { return letters.empty(); }
  int length() const { return static_cast<int>(letters.size()); }
};

Word free_reduce(const Word& w);
Word word_mul(const Word& a, const Word& b);   // concatenate, then reduce
Word word_inverse(const Word& w);
Word word_pow(const Word& w, int e);
std::string word_str(const Word& w, const std::vector<std::string>& names);

// Finite integer combination of freely reduced words; the free group ring
// over Z restricted to finite support.
class GroupRingElement {
 public:
  static GroupRingElement zero() { return GroupRingElement(); }
  static GroupRingElement one();
  static GroupRingElement from_word(const Word& w, long coeff = 1);

  const std::map<Word, long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_word(const Word& w, long coeff);  // accumulates, drops zeros

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  bool operator==(const GroupRingElement& o) const = default;

  std::string str(const std::vector<std::string>& names) const;

 private:
  std::map<Word, long> terms_;
};

GroupRingElement group_ring_mul(const GroupRingElement& x,
                                const GroupRingElement& y);

// Fox free differential calculus with respect to generator index g:
// d(g)/dg = 1, d(h)/dg = 0, d(uv)/dg = du/dg + u dv/dg, d(g^-1)/dg = -g^-1.
GroupRingElement fox_derivative(const Word& w, int g);

// A finitely presented group: ordered generator names and freely reduced
// relator words. Abbreviations from `let` lines are expanded at parse time.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int generator_index(const std::string& name) const;  // -1 if absent
  std::string print() const;
  bool operator==(const Presentation&) const = default;
};

// Parses the line-oriented grammar:
//   gens a b ;
//   let w = b a b^-1 ;
//   rel a w a^-1 w^-1 ;
// `#` starts a comment; exponents are nonzero integers; each `rel`
// statement contributes one relator. Throws ParseError (with line/column)
// on syntax errors, undeclared symbols, and cyclic abbreviations.
Presentation parse_presentation(const std::string& text);

}  // namespace torsionlab
