// Tests for the derived identities: reciprocity with its boundary-count
// sign, the derivative formula's scalar torsion, covering products in
// cyclic and general abelian form, fibered torsion, and the sign helpers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "torsionlab/analysis.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/torsion.hpp"

using namespace torsionlab;

namespace {

TowerPtr q_tower() { return FieldTower::rationals(); }

TowerPtr gauss_tower() {
  auto q = q_tower();
  return adjoin_extension(
      q, "i", {FieldScalar::one(q), FieldScalar::zero(q), FieldScalar::one(q)});
}

// Q(r) with r^2 = -3.
TowerPtr sqrt_minus3_tower() {
  auto q = q_tower();
  return adjoin_extension(q, "r",
                          {FieldScalar::integer(q, 3), FieldScalar::zero(q),
                           FieldScalar::one(q)});
}

LaurentPoly upoly(const TowerPtr& t, const std::string& var,
                  const std::vector<long>& asc) {
  LaurentPoly p = LaurentPoly::zero(t, {var});
  for (size_t k = 0; k < asc.size(); ++k) {
    if (asc[k] != 0) {
      p.add_term({static_cast<int>(k)}, FieldScalar::integer(t, asc[k]));
    }
  }
  return p;
}

// The figure-eight adjoint torsion polynomial -(t - 1)(t^2 - 5t + 1).
LaurentPoly fig8_adjoint(const TowerPtr& t) {
  return upoly(t, "t", {1, -6, 6, -1});
}

// The Whitehead-link torsion polynomial B(t1,t2) (t1 - 1)(t2 - 1) with
// B = -8(1+i) t1 t2 + 4 t1 (t2+1)^2 + 4 (t1+1)^2 t2 - (t1+1)^2 (t2+1)^2.
LaurentPoly whitehead_poly() {
  auto gi = gauss_tower();
  std::vector<std::string> vars{"t1", "t2"};
  LaurentPoly t1 = LaurentPoly::variable(gi, vars, "t1");
  LaurentPoly t2 = LaurentPoly::variable(gi, vars, "t2");
  LaurentPoly one = LaurentPoly::constant(FieldScalar::one(gi), vars);
  FieldScalar i = FieldScalar::symbol(gi, "i");
  FieldScalar m8 = FieldScalar::integer(gi, -8);
  LaurentPoly c1 = LaurentPoly::constant(m8 + m8 * i, vars);
  LaurentPoly c4 = LaurentPoly::constant(FieldScalar::integer(gi, 4), vars);
  LaurentPoly s1 = t1 + one;
  LaurentPoly s2 = t2 + one;
  LaurentPoly big = c1 * t1 * t2 + c4 * t1 * s2 * s2 + c4 * s1 * s1 * t2 -
                    s1 * s1 * s2 * s2;
  return big * (t1 - one) * (t2 - one);
}

Matrix<long> long_matrix(const std::vector<std::vector<long>>& rows) {
  int n = static_cast<int>(rows.size());
  int m_cols = n == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix<long> m(n, m_cols, 0L);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m_cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Matrix<FieldScalar> scalar_matrix(const TowerPtr& t,
                                  const std::vector<std::vector<long>>& rows) {
  int n = static_cast<int>(rows.size());
  int m_cols = n == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix<FieldScalar> m(n, m_cols, FieldScalar::zero(t));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m_cols; ++c) {
      m.at(r, c) = FieldScalar::integer(t, rows[r][c]);
    }
  }
  return m;
}

Matrix<long> mat_mul_long(const Matrix<long>& a, const Matrix<long>& b) {
  Matrix<long> out(a.rows, b.cols, 0L);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < b.cols; ++c) {
      long acc = 0;
      for (int k = 0; k < a.cols; ++k) acc += a.at(r, k) * b.at(k, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

Matrix<long> mat_pow_long(const Matrix<long>& a, int e) {
  Matrix<long> out(a.rows, a.cols, 0L);
  for (int r = 0; r < a.rows; ++r) out.at(r, r) = 1;
  for (int k = 0; k < e; ++k) out = mat_mul_long(out, a);
  return out;
}

// det(v I - A) as a polynomial in the named variable, over Q.
LaurentPoly charpoly_var(const Matrix<long>& a, const std::string& v) {
  auto q = q_tower();
  LaurentPoly t = LaurentPoly::variable(q, {v}, v);
  LaurentPoly zero = LaurentPoly::zero(q, {v});
  Matrix<LaurentPoly> m(a.rows, a.cols, zero);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) {
      m.at(r, c) = (r == c ? t : zero) -
                   LaurentPoly::constant(FieldScalar::integer(q, a.at(r, c)),
                                         {v});
    }
  }
  RatFunc d = determinant(m);
  return d.is_poly() ? d.num() : divide_exact(d.num(), d.den());
}

bool notes_contain(const std::vector<std::string>& notes,
                   const std::string& needle) {
  for (const auto& n : notes) {
    if (n.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("boundary-count signs") {
  SignContext ctx;
  ctx.boundary_components = 1;
  SignPair s1 = sign_helpers(ctx);
  CHECK(s1.pair_sign == 1);
  CHECK(s1.symmetry_sign == -1);

  ctx.boundary_components = 2;
  SignPair s2 = sign_helpers(ctx);
  CHECK(s2.pair_sign == -1);
  CHECK(s2.symmetry_sign == -1);

  ctx.boundary_components = 3;
  SignPair s3 = sign_helpers(ctx);
  CHECK(s3.pair_sign == -1);
  CHECK(s3.symmetry_sign == 1);

  ctx.boundary_components = 4;
  SignPair s4 = sign_helpers(ctx);
  CHECK(s4.pair_sign == 1);
  CHECK(s4.symmetry_sign == 1);

  ctx.boundary_components = 0;
  CHECK_THROWS_AS(sign_helpers(ctx), ValidationError);
}

TEST_CASE("reciprocity of one-variable polynomials") {
  auto q = q_tower();
  SignContext generic;
  generic.manifold = ManifoldClass::kGeneric;

  // Palindromic: Delta(1/t) = t^-2 Delta(t).
  LaurentPoly alex = upoly(q, "t", {1, -3, 1});
  ReciprocityReport pal = reciprocity(alex, generic);
  CHECK(pal.observed_sign == 1);
  CHECK(pal.unit.shift == std::vector<int>{-2});
  CHECK_FALSE(pal.expected_sign.has_value());
  CHECK(pal.sign_matches);

  // Anti-palindromic knot value: Delta(1/t) = -t^-3 Delta(t).
  SignContext knot;
  knot.boundary_components = 1;
  knot.manifold = ManifoldClass::kKnotExterior;
  LaurentPoly adj = fig8_adjoint(q);
  ReciprocityReport rep = reciprocity(adj, knot);
  CHECK(rep.observed_sign == -1);
  CHECK(rep.unit.shift == std::vector<int>{-3});
  REQUIRE(rep.expected_sign.has_value());
  CHECK(*rep.expected_sign == -1);
  CHECK(rep.sign_matches);
  CHECK(notes_contain(rep.notes, "matches"));

  // Involution: applying the map to Delta(1/t) inverts the unit.
  ReciprocityReport back = reciprocity(rep.inverted, knot);
  CHECK(back.observed_sign == rep.observed_sign);
  CHECK(back.unit.shift == std::vector<int>{3});

  // A non-reciprocal polynomial is an error carrying both sides.
  LaurentPoly bad = upoly(q, "t", {2, 1});
  try {
    reciprocity(bad, generic);
    FAIL("expected NotUnitEquivalent");
  } catch (const NotUnitEquivalent& e) {
    std::string msg = e.what();
    CHECK(msg.find("Delta(1/t)") != std::string::npos);
    CHECK(msg.find("Delta(t)") != std::string::npos);
  }

  CHECK_THROWS_AS(reciprocity(LaurentPoly::zero(q, {"t"}), generic),
                  ValidationError);
}

TEST_CASE("reciprocity of the two-variable link polynomial") {
  LaurentPoly delta = whitehead_poly();
  SignContext link;
  link.boundary_components = 2;
  link.manifold = ManifoldClass::kLinkExterior;
  ReciprocityReport rep = reciprocity(delta, link);
  // The polynomial is symmetric (sign +1), while the boundary-count
  // formula for b = 2 predicts -1: the mismatch is recorded, not fatal.
  CHECK(rep.observed_sign == 1);
  REQUIRE(rep.expected_sign.has_value());
  CHECK(*rep.expected_sign == -1);
  CHECK_FALSE(rep.sign_matches);
  CHECK(notes_contain(rep.notes, "differs"));
  CHECK(rep.unit.shift == std::vector<int>{-3, -3});
}

TEST_CASE("derivative formula: scalar torsion values") {
  auto q = q_tower();
  LaurentPoly adj = fig8_adjoint(q);
  FieldScalar v = derivative_formula(adj, {1});
  CHECK(v.equals(FieldScalar::integer(q, -3)));

  // Multiplicity in the divisor exponent.
  LaurentPoly five_t3 = upoly(q, "t", {-5, 0, 0, 5});  // 5(t^3 - 1)
  CHECK(derivative_formula(five_t3, {3}).equals(FieldScalar::integer(q, -5)));

  auto gi = gauss_tower();
  LaurentPoly wh = whitehead_poly();
  FieldScalar w = derivative_formula(wh, {1, 1}, {1, 1});
  FieldScalar expect =
      FieldScalar::integer(gi, 8) -
      FieldScalar::integer(gi, 8) * FieldScalar::symbol(gi, "i");
  CHECK(w.equals(expect));

  // Reducing along a different direction gives the same scalar when the
  // divisor exponents follow the reduction.
  FieldScalar w2 = derivative_formula(wh, {2, 3}, {2, 3});
  CHECK(w2.equals(expect));

  // Non-divisible input is a hard error.
  LaurentPoly just_t = upoly(q, "t", {0, 1});
  CHECK_THROWS_AS(derivative_formula(just_t, {1}), NonDivisible);

  CHECK_THROWS_AS(derivative_formula(adj, {}), ValidationError);
  CHECK_THROWS_AS(derivative_formula(adj, {0}), ValidationError);
  CHECK_THROWS_AS(derivative_formula(wh, {1}, {1}), ValidationError);
  CHECK_THROWS_AS(derivative_formula(LaurentPoly::zero(q, {"t"}), {1}),
                  ValidationError);
}

TEST_CASE("cyclic covering products") {
  auto q = q_tower();
  LaurentPoly adj = fig8_adjoint(q);

  // Order one: the polynomial itself, renamed to s.
  CoveringReport triv = covering_formula(adj, 1);
  CHECK(triv.value == upoly(q, "s", {1, -6, 6, -1}));
  CHECK(triv.ambiguity.sign_free);

  // Order two: Delta(t) Delta(-t) = -(s - 1)(s^2 - 23 s + 1).
  CoveringReport two = covering_formula(adj, 2);
  CHECK(two.value == upoly(q, "s", {1, -24, 24, -1}));

  // Order three over Q: -(s - 1)(s^2 - 110 s + 1).
  CoveringReport three = covering_formula(adj, 3);
  CHECK(three.value == upoly(q, "s", {1, -111, 111, -1}));

  // The same polynomial lifted into Q(r), r^2 = -3, where the cyclotomic
  // extension is formally reducible: multiplication-only arithmetic still
  // collapses the root of unity away.
  auto r3 = sqrt_minus3_tower();
  CoveringReport lifted = covering_formula(fig8_adjoint(r3), 3);
  CHECK(lifted.value == upoly(r3, "s", {1, -111, 111, -1}));

  // Coefficients outside Q: Delta = t - i over Q(i), order four.
  auto gi = gauss_tower();
  LaurentPoly ti = LaurentPoly::variable(gi, {"t"}, "t") -
                   LaurentPoly::constant(FieldScalar::symbol(gi, "i"), {"t"});
  CoveringReport four = covering_formula(ti, 4);
  CHECK(four.value == upoly(gi, "s", {1, -1}));

  CHECK_THROWS_AS(covering_formula(adj, 0), ValidationError);
  CHECK_THROWS_AS(covering_formula(whitehead_poly(), 2), ValidationError);
}

TEST_CASE("cyclic covering agrees with matrix powers") {
  std::mt19937 rng(99173u);
  std::uniform_int_distribution<long> entry(-3, 3);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix<long> a(3, 3, 0L);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a.at(r, c) = entry(rng);
    }
    LaurentPoly delta = charpoly_var(a, "t");

    // Order two: prod_k det(zeta^k t - A) = (-1)^3 det(s - A^2).
    CoveringReport two = covering_formula(delta, 2);
    CHECK(two.value == -charpoly_var(mat_pow_long(a, 2), "s"));

    // Order three: the product is det(s - A^3) on the nose.
    CoveringReport three = covering_formula(delta, 3);
    CHECK(three.value == charpoly_var(mat_pow_long(a, 3), "s"));
  }
}

TEST_CASE("abelian covering products from character lists") {
  auto q = q_tower();
  FieldScalar one = FieldScalar::one(q);
  FieldScalar minus = FieldScalar::integer(q, -1);

  // One variable, Z/2: same as the order-two cyclic product but kept in t.
  LaurentPoly alex = upoly(q, "t", {1, -3, 1});
  CoveringReport z2 = covering_formula(alex, {{one}, {minus}});
  CHECK(z2.value == upoly(q, "t", {1, 0, -7, 0, 1}));

  // Two variables, Z/2 x Z/2.
  std::vector<std::string> vars{"t1", "t2"};
  LaurentPoly t1 = LaurentPoly::variable(q, vars, "t1");
  LaurentPoly t2 = LaurentPoly::variable(q, vars, "t2");
  CoveringReport z22 = covering_formula(
      t1 + t2,
      {{one, one}, {one, minus}, {minus, one}, {minus, minus}});
  LaurentPoly diff = t1 * t1 - t2 * t2;
  CHECK(z22.value == diff * diff);

  // Gaussian characters over a rational polynomial: Z/4 in one variable.
  auto gi = gauss_tower();
  FieldScalar gi_one = FieldScalar::one(gi);
  FieldScalar i = FieldScalar::symbol(gi, "i");
  LaurentPoly tp1 = upoly(q, "t", {1, 1});
  CoveringReport z4 = covering_formula(
      tp1, {{gi_one}, {i}, {i * i}, {i * i * i}});
  // (t+1)(it+1)(-t+1)(-it+1) = 1 - t^4, collapsing back to Q.
  CHECK(z4.value == upoly(q, "t", {1, 0, 0, 0, -1}));

  // Violations of the group structure are rejected.
  CHECK_THROWS_AS(covering_formula(alex, {{minus}}), ValidationError);
  CHECK_THROWS_AS(covering_formula(alex, {{gi_one}, {i}}), ValidationError);
  CHECK_THROWS_AS(covering_formula(alex, {{FieldScalar::zero(q)}}),
                  ValidationError);
  CHECK_THROWS_AS(covering_formula(alex, {{one, one}}), ValidationError);
  CHECK_THROWS_AS(
      covering_formula(alex, std::vector<std::vector<FieldScalar>>{}),
      ValidationError);
}

TEST_CASE("fibered torsion from a monodromy matrix") {
  auto q = q_tower();
  // Eigenvalues {1, l, 1/l} with l + 1/l = 5, and det(1 - phi_1) = -1.
  Matrix<FieldScalar> a =
      scalar_matrix(q, {{1, 0, 0}, {0, 0, -1}, {0, 1, 5}});
  Matrix<long> phi1 = long_matrix({{1, 1}, {1, 2}});
  TorsionResult res = fibered_torsion(a, phi1);
  CHECK(ratfunc_eq(res.value, RatFunc::from_poly(upoly(q, "t", {1, -6, 6, -1}))));
  CHECK_FALSE(res.ambiguity.sign_free);
  CHECK_FALSE(res.ambiguity.monomial_free);
  CHECK(notes_contain(res.notes, "sign fixed"));

  // Identity monodromy with a positive sign.
  Matrix<FieldScalar> id3 =
      scalar_matrix(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  TorsionResult cube = fibered_torsion(id3, long_matrix({{-1}}));
  CHECK(ratfunc_eq(cube.value, RatFunc::from_poly(upoly(q, "t", {-1, 3, -3, 1}))));
  CHECK_FALSE(cube.ambiguity.sign_free);

  // Degenerate det(1 - phi_1): unit-ambiguous with a warning.
  TorsionResult amb = fibered_torsion(a, long_matrix({{1}}));
  CHECK(amb.ambiguity.sign_free);
  CHECK(notes_contain(amb.notes, "sign undefined"));
  CHECK(unit_equivalent(amb.value,
                        RatFunc::from_poly(upoly(q, "t", {1, -6, 6, -1})))
            .has_value());

  Matrix<FieldScalar> rect(2, 3, FieldScalar::zero(q));
  CHECK_THROWS_AS(fibered_torsion(rect, phi1), ValidationError);
  Matrix<long> rect2(1, 2, 0L);
  CHECK_THROWS_AS(fibered_torsion(id3, rect2), ValidationError);
}
