// Exact coefficient arithmetic: towers of algebraic extensions over Q with
// free transcendental parameters, multivariate Laurent polynomials over such
// towers, rational functions, and unit classes (+- monomial equivalence).
//
// Scalars are fractions of multivariate polynomials whose variables are the
// adjoined algebraic generators (exponents kept reduced below the minimal
// polynomial degree) followed by the declared parameters.  Simplification is
// best-effort: equality is always decided by cross-multiplication, which is
// sound without any GCD machinery.
#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/errors.hpp"

namespace torsionlab {

using Rational = mpq_class;

// Exponent vector over the tower's symbols (algebraic generators then
// parameters); entries are always >= 0 at the scalar level.
using ExpVec = std::vector<int>;
using PolyMap = std::map<ExpVec, Rational>;

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldScalar;

// ---------------------------------------------------------------------------
// FieldTower: an immutable chain of monic algebraic extensions of Q plus an
// ordered list of free parameter symbols.
// ---------------------------------------------------------------------------
class FieldTower {
 public:
  struct Level {
    std::string symbol;
    int degree = 0;  // degree of the monic minimal polynomial, >= 2
    // symbol^degree rewritten as a polynomial in lower symbols/parameters;
    // exponent vectors are sized for this tower's full symbol layout.
    PolyMap power_rule;
  };

  static TowerPtr rationals();

  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<std::string>& params() const { return params_; }
  int num_algebraic() const { return static_cast<int>(levels_.size()); }
  int num_params() const { return static_cast<int>(params_.size()); }
  int num_symbols() const { return num_algebraic() + num_params(); }

  // Name of symbol index i in the [algebraic | parameter] layout.
  const std::string& symbol_name(int i) const;
  // Index of a symbol name, or -1 when absent.
  int symbol_index(const std::string& name) const;
  bool is_param_index(int i) const { return i >= num_algebraic(); }

  bool same_as(const FieldTower& other) const;
  // True when `other`'s levels are a prefix of ours and its parameters are a
  // sublist-prefix of ours: scalars over `other` embed by symbol name.
  bool extends(const FieldTower& other) const;

  // New tower with extra parameter symbols appended.
  TowerPtr with_params(const std::vector<std::string>& names) const;

  friend TowerPtr adjoin_extension(const TowerPtr& tower,
                                   const std::string& symbol,
                                   const std::vector<FieldScalar>& minpoly);

 private:
  std::vector<Level> levels_;
  std::vector<std::string> params_;
};

// Adjoin one algebraic extension.  `minpoly` lists the coefficients of the
// monic minimal polynomial from constant to leading term (the leading
// coefficient must be 1, degree >= 2); coefficients must live in `tower` with
// denominator 1 after normalization.  Reducibility is NOT checked; a reducible
// input yields a ring with zero divisors in which inversion may raise
// NotInvertible.
TowerPtr adjoin_extension(const TowerPtr& tower, const std::string& symbol,
                          const std::vector<FieldScalar>& minpoly);

// m-th cyclotomic polynomial over Q, coefficients from constant to leading.
std::vector<Rational> cyclotomic_polynomial(int m);

// ---------------------------------------------------------------------------
// FieldScalar: num/den fraction over a tower, kept reduced modulo the minimal
// polynomials, denominator normalized to 1 whenever that is cheaply possible
// (rational denominators always; parameter-free denominators via exact linear
// inversion in the finite-dimensional algebra).
// ---------------------------------------------------------------------------
class FieldScalar {
 public:
  FieldScalar();  // zero over Q

  static FieldScalar zero(const TowerPtr& t);
  static FieldScalar one(const TowerPtr& t);
  static FieldScalar from_rational(const TowerPtr& t, const Rational& r);
  static FieldScalar integer(const TowerPtr& t, long v);
  static FieldScalar symbol(const TowerPtr& t, const std::string& name);
  // Raw constructor from prepared polynomial maps (normalizes).
  static FieldScalar fraction(const TowerPtr& t, PolyMap num, PolyMap den);

  const TowerPtr& tower() const { return tower_; }
  const PolyMap& num() const { return num_; }
  const PolyMap& den() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  bool is_one() const;
  bool denominator_is_one() const;
  bool is_rational() const;
  Rational as_rational() const;  // requires is_rational()

  bool equals(const FieldScalar& other) const;  // cross-multiplication

  FieldScalar operator-() const;
  FieldScalar operator+(const FieldScalar& o) const;
  FieldScalar operator-(const FieldScalar& o) const;
  FieldScalar operator*(const FieldScalar& o) const;
  FieldScalar operator/(const FieldScalar& o) const;  // DivisionByZero
  FieldScalar inverse() const;
  FieldScalar pow(int e) const;  // negative e via inverse

  FieldScalar lift_to(const TowerPtr& target) const;

  // Replace parameter symbols by values over `target` (parameters not listed
  // must exist in `target` and are kept).  The algebraic part embeds by name.
  FieldScalar substitute_params(const std::map<std::string, FieldScalar>& vals,
                                const TowerPtr& target) const;

  std::string str() const;

 private:
  FieldScalar(TowerPtr t, PolyMap num, PolyMap den);
  void normalize();

  TowerPtr tower_;
  PolyMap num_;
  PolyMap den_;  // nonzero; 1 is represented as {all-zero exponent: 1}
};

// Graded-lex comparison with the later variable more significant; returns
// negative/zero/positive like a three-way compare.
int grlex_compare(const std::vector<int>& a, const std::vector<int>& b);

struct GrlexLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    return grlex_compare(a, b) < 0;
  }
};

// ---------------------------------------------------------------------------
// LaurentPoly: finite map from integer exponent vectors over the listed
// torsion variables to nonzero FieldScalar coefficients.  Binary operations
// align differing variable lists (ordered union) and towers automatically.
// ---------------------------------------------------------------------------
class LaurentPoly {
 public:
  using TermMap = std::map<std::vector<int>, FieldScalar, GrlexLess>;
  LaurentPoly();  // zero, no variables, over Q

  static LaurentPoly zero(const TowerPtr& t, std::vector<std::string> vars);
  static LaurentPoly constant(const FieldScalar& c,
                              std::vector<std::string> vars);
  static LaurentPoly monomial(const FieldScalar& c,
                              std::vector<std::string> vars,
                              std::vector<int> exps);
  // The variable `name` (must appear in vars) to the first power.
  static LaurentPoly variable(const TowerPtr& t, std::vector<std::string> vars,
                              const std::string& name);

  const std::vector<std::string>& vars() const { return vars_; }
  const TowerPtr& tower() const { return tower_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldScalar constant_value() const;  // requires is_constant() or zero

  int num_terms() const { return static_cast<int>(terms_.size()); }
  std::vector<int> min_exps() const;  // per-variable minimum (0s when zero)
  std::vector<int> max_exps() const;

  LaurentPoly operator-() const;
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly scale(const FieldScalar& c) const;
  LaurentPoly mul_monomial(const FieldScalar& c,
                           const std::vector<int>& exps) const;
  LaurentPoly pow(int e) const;  // e >= 0

  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly lift_to(const TowerPtr& target) const;
  // Re-index onto a variable list that contains all current variables.
  LaurentPoly with_vars(std::vector<std::string> new_vars) const;

  // Grade-lex leading term (largest); requires nonzero.
  std::pair<std::vector<int>, FieldScalar> leading_term() const;

  void add_term(const std::vector<int>& exps, const FieldScalar& c);

  // min-degree-0 printing used by reports; plain printing keeps exponents.
  std::string str(bool shift_to_min_zero = false) const;

 private:
  std::vector<std::string> vars_;
  TowerPtr tower_;
  TermMap terms_;
};

// One substitution target: coefficient times a monomial in the output vars.
struct SubstTarget {
  FieldScalar coeff;            // must be nonzero
  std::map<std::string, int> exps;  // exponents over the output variables
};

// Substitute every variable of `p` according to `subs` (all of p's variables
// must be mapped); the result lives over `out_vars`.
LaurentPoly laurent_substitute(const LaurentPoly& p,
                               const std::map<std::string, SubstTarget>& subs,
                               std::vector<std::string> out_vars);

// Exact division in the Laurent ring; both arguments are shifted to ordinary
// polynomials first.  Raises NonDivisible (with remainder) or DivisionByZero.
LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& q);

// ---------------------------------------------------------------------------
// UnitClass: +- t1^m1 ... tn^mn.
// ---------------------------------------------------------------------------
struct UnitClass {
  bool sign_known = true;
  int sign = 1;            // +1 or -1 when sign_known
  std::vector<int> shift;  // per-variable monomial exponent

  UnitClass compose(const UnitClass& o) const;
  std::string str(const std::vector<std::string>& vars) const;
};

// The unit u with p = u * q when one exists (u restricted to +- monomials).
std::optional<UnitClass> unit_equivalent(const LaurentPoly& p,
                                         const LaurentPoly& q);

// ---------------------------------------------------------------------------
// RatFunc: quotient of Laurent polynomials.  Equality by cross-multiplication.
// ---------------------------------------------------------------------------
class RatFunc {
 public:
  RatFunc();  // zero
  static RatFunc from_poly(LaurentPoly p);
  static RatFunc make(LaurentPoly num, LaurentPoly den);  // normalizes

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  const std::vector<std::string>& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const;  // den == 1 after normalization

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc inverse() const;

  RatFunc scale(const FieldScalar& c) const;

  std::string str() const;

 private:
  LaurentPoly num_, den_;
};

bool ratfunc_eq(const RatFunc& a, const RatFunc& b);

// Unit equivalence extended to quotients: num_a*den_b vs num_b*den_a.
std::optional<UnitClass> unit_equivalent(const RatFunc& a, const RatFunc& b);

// ---------------------------------------------------------------------------
// Dense matrices and exact determinants.
// ---------------------------------------------------------------------------
template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<T> e;

  Matrix() = default;
  Matrix(int r, int c, T fill) : rows(r), cols(c), e(r * c, fill) {}
  T& at(int r, int c) { return e[r * cols + c]; }
  const T& at(int r, int c) const { return e[r * cols + c]; }
};

// Fraction-free (Bareiss) determinant over the Laurent ring; every interior
// division is exact.  The 0x0 determinant is 1.
RatFunc determinant(const Matrix<LaurentPoly>& m);
// Clears denominators row by row, computes over LaurentPoly, divides back.
RatFunc determinant(const Matrix<RatFunc>& m);

}  // namespace torsionlab
