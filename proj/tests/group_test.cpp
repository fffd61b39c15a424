// Exercises words, the presentation parser, group-ring arithmetic, and Fox
// derivatives, including the fundamental identity on random words.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torsionlab/group.hpp"

using namespace torsionlab;

namespace {

Word w(std::initializer_list<Letter> ls) { return Word{ls}; }

Word random_word(std::mt19937& rng, int num_gens, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, num_gens - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  Word out;
  int n = len(rng);
  for (int k = 0; k < n; ++k) {
    out.letters.push_back({gen(rng), sgn(rng) ? 1 : -1});
  }
  return free_reduce(out);
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(free_reduce(w({{0, 1}, {1, 1}, {1, -1}, {0, -1}})).empty());
  CHECK(free_reduce(w({{0, 1}, {0, -1}, {0, 1}})) == w({{0, 1}}));
  Word reduced = w({{0, 1}, {1, -1}, {0, 1}});
  CHECK(free_reduce(reduced) == reduced);
  // Nested cancellation needs the stack behaviour: a b b^-1 a^-1 -> empty
  // even though no cancelling pair is adjacent at the start.
  CHECK(free_reduce(w({{0, 1}, {1, 1}, {2, 1}, {2, -1}, {1, -1}, {0, -1}}))
            .empty());
  std::mt19937 rng(31);
  for (int k = 0; k < 100; ++k) {
    Word v = random_word(rng, 3, 12);
    CHECK(free_reduce(v) == v);  // idempotent
    CHECK(word_mul(v, word_inverse(v)).empty());
  }
}

TEST_CASE("word power and printing") {
  Word a = w({{0, 1}});
  CHECK(word_pow(a, 3) == w({{0, 1}, {0, 1}, {0, 1}}));
  CHECK(word_pow(a, -2) == w({{0, -1}, {0, -1}}));
  CHECK(word_pow(a, 0).empty());
  std::vector<std::string> names{"a", "b"};
  CHECK(word_str(word_pow(a, 3), names) == "a^3");
  CHECK(word_str(w({{0, 1}, {1, -1}}), names) == "a b^-1");
  CHECK(word_str(Word{}, names) == "1");
}

TEST_CASE("presentation parser") {
  Presentation p = parse_presentation(
      "gens a b ;\n"
      "let w = b a b^-1 a^-1 b^-1 a b ;\n"
      "rel a w a^-1 w^-1 ;\n");
  CHECK(p.generators == std::vector<std::string>{"a", "b"});
  REQUIRE(p.relators.size() == 1);
  // a(7 letters)a^-1(7 letters) with no cancellation at the junctions.
  CHECK(p.relators[0].length() == 16);
  CHECK(word_str(p.relators[0], p.generators) ==
        "a b a b^-1 a^-1 b^-1 a b a^-1 b^-1 a^-1 b a b a^-1 b^-1");

  Presentation free1 = parse_presentation("gens a ;");
  CHECK(free1.generators.size() == 1);
  CHECK(free1.relators.empty());

  // Comments and exponent runs.
  Presentation q = parse_presentation(
      "# figure-eight style\n"
      "gens x y ;\n"
      "rel x^2 y^-3 ;\n");
  CHECK(q.relators[0] == w({{0, 1}, {0, 1}, {1, -1}, {1, -1}, {1, -1}}));
}

TEST_CASE("parser errors carry position") {
  CHECK_THROWS_AS(parse_presentation("gens a ;\nrel a c ;\n"), ParseError);
  try {
    parse_presentation("gens a ;\nrel a c ;\n");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 7);
    CHECK(std::string(e.what()).find("undeclared") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_presentation("gens a ;\nrel a a^0 ;"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a ;\nrel a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a a ;"), ParseError);
  CHECK_THROWS_AS(parse_presentation("frobnicate a ;"), ParseError);
  // Mutual recursion between abbreviations.
  CHECK_THROWS_AS(parse_presentation("gens a ;\n"
                                     "let u = a v ;\n"
                                     "let v = u a ;\n"
                                     "rel u ;\n"),
                  ParseError);
  try {
    parse_presentation("gens a ; let u = a v ; let v = u a ; rel u ;");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("cyclic") != std::string::npos);
  }
}

TEST_CASE("abbreviations expand through other abbreviations") {
  Presentation p = parse_presentation(
      "gens a b ;\n"
      "let u = a b ;\n"
      "let v = u u^-1 u ;\n"
      "rel v b^-1 ;\n");
  // v = ab, relator = a b b^-1 = a.
  CHECK(p.relators[0] == w({{0, 1}}));
}

TEST_CASE("parse -> print -> parse round-trips") {
  std::vector<std::string> sources{
      "gens a b ; let w = b a b^-1 a^-1 b^-1 a b ; rel a w a^-1 w^-1 ;",
      "gens x y z ; rel x y x^-1 y^-1 ; rel z^5 ;",
      "gens a ;",
  };
  for (auto& src : sources) {
    Presentation p = parse_presentation(src);
    Presentation again = parse_presentation(p.print());
    CHECK(p == again);
  }
}

TEST_CASE("group ring arithmetic") {
  Word a = w({{0, 1}});
  Word b = w({{1, 1}});
  GroupRingElement one = GroupRingElement::one();
  GroupRingElement A = GroupRingElement::from_word(a);
  GroupRingElement B = GroupRingElement::from_word(b);

  // (a - 1)(a + 1) = a^2 - 1.
  GroupRingElement lhs = group_ring_mul(A - one, A + one);
  GroupRingElement rhs = GroupRingElement::from_word(word_pow(a, 2)) - one;
  CHECK(lhs == rhs);

  // x * 1 = x.
  GroupRingElement x = A + B - one;
  CHECK(group_ring_mul(x, one) == x);
  CHECK(group_ring_mul(one, x) == x);

  // (1 - b)(1 + b + b^2) = 1 - b^3.
  GroupRingElement geom =
      one + B + GroupRingElement::from_word(word_pow(b, 2));
  CHECK(group_ring_mul(one - B, geom) ==
        one - GroupRingElement::from_word(word_pow(b, 3)));

  // Cancellation to zero.
  CHECK((x - x).is_zero());
  CHECK(group_ring_mul(x, GroupRingElement::zero()).is_zero());
}

TEST_CASE("fox derivative base cases") {
  Word a = w({{0, 1}});
  Word ab = w({{0, 1}, {1, 1}});
  GroupRingElement one = GroupRingElement::one();

  CHECK(fox_derivative(ab, 0) == one);
  CHECK(fox_derivative(ab, 1) == GroupRingElement::from_word(a));
  CHECK(fox_derivative(w({{0, -1}}), 0) ==
        -GroupRingElement::from_word(w({{0, -1}})));
  CHECK(fox_derivative(ab, 2).is_zero());

  // d(a b a^-1 b^-1)/da = 1 - a b a^-1.
  Word comm = w({{0, 1}, {1, 1}, {0, -1}, {1, -1}});
  GroupRingElement expect =
      one - GroupRingElement::from_word(w({{0, 1}, {1, 1}, {0, -1}}));
  CHECK(fox_derivative(comm, 0) == expect);
}

TEST_CASE("fox derivative is a derivation") {
  std::mt19937 rng(2024);
  GroupRingElement one = GroupRingElement::one();
  for (int k = 0; k < 100; ++k) {
    Word u = random_word(rng, 3, 8);
    Word v = random_word(rng, 3, 8);
    for (int g = 0; g < 3; ++g) {
      GroupRingElement lhs = fox_derivative(word_mul(u, v), g);
      GroupRingElement rhs =
          fox_derivative(u, g) +
          group_ring_mul(GroupRingElement::from_word(u), fox_derivative(v, g));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("fundamental fox identity on 200 random words") {
  // w - 1 = sum_g (dw/dg) (g - 1) in the free group ring.
  std::mt19937 rng(555);
  GroupRingElement one = GroupRingElement::one();
  for (int k = 0; k < 200; ++k) {
    Word v = random_word(rng, 3, 12);
    GroupRingElement sum;
    for (int g = 0; g < 3; ++g) {
      GroupRingElement gm1 =
          GroupRingElement::from_word(w({{g, 1}})) - one;
      sum = sum + group_ring_mul(fox_derivative(v, g), gm1);
    }
    CHECK(sum == GroupRingElement::from_word(v) - one);
  }
}
