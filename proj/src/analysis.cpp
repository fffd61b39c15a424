// Derived identities: reciprocity, the derivative formula, covering
// products, fibered torsion, and the boundary-count signs.
#include "torsionlab/analysis.hpp"

#include <cstdlib>
#include <sstream>
#include <utility>

#include "torsionlab/errors.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

namespace {

int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

// Sum of coefficients = evaluation at t_i = 1 for every variable.
FieldScalar eval_at_one(const LaurentPoly& p) {
  FieldScalar acc = FieldScalar::zero(p.tower());
  for (const auto& [e, c] : p.terms()) {
    (void)e;
    acc = acc + c;
  }
  return acc;
}

// Integer determinant by cofactor expansion; the matrices are tiny.
long int_det(const Matrix<long>& m) {
  int n = m.rows;
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  long acc = 0;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    Matrix<long> minor(n - 1, n - 1, 0L);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    long term = m.at(0, j) * int_det(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

// Rebuild a scalar over `base` given that its extra symbol coordinates
// (those of `from` beyond `base`) all vanish.
FieldScalar restrict_scalar(const FieldScalar& c, const TowerPtr& base) {
  const TowerPtr& from = c.tower();
  if (from->same_as(*base)) return c;
  std::vector<int> keep;  // indices of `from` symbols present in `base`
  std::vector<int> drop;
  for (int i = 0; i < from->num_symbols(); ++i) {
    if (base->symbol_index(from->symbol_name(i)) >= 0) {
      keep.push_back(i);
    } else {
      drop.push_back(i);
    }
  }
  auto trim = [&](const PolyMap& pm) {
    PolyMap out;
    for (const auto& [e, q] : pm) {
      for (int d : drop) {
        if (e[static_cast<size_t>(d)] != 0) {
          throw CoefficientsDoNotCollapse(
              "a coefficient of the covering product does not lie in the "
              "base coefficient field: " +
              c.str());
        }
      }
      ExpVec t(keep.size());
      for (size_t k = 0; k < keep.size(); ++k) {
        t[k] = e[static_cast<size_t>(keep[k])];
      }
      out[t] = q;
    }
    return out;
  };
  return FieldScalar::fraction(base, trim(c.num()), trim(c.den()));
}

std::string sign_str(int s) { return s >= 0 ? "+1" : "-1"; }

}  // namespace

SignPair sign_helpers(const SignContext& ctx) {
  long b = ctx.boundary_components;
  if (b < 1) {
    throw ValidationError("boundary component count must be >= 1");
  }
  SignPair out;
  out.pair_sign = parity_sign(b * (b - 1) / 2);
  out.symmetry_sign = parity_sign(b * (b + 1) / 2);
  return out;
}

ReciprocityReport reciprocity(const LaurentPoly& delta,
                              const SignContext& ctx) {
  if (delta.is_zero()) {
    throw ValidationError("reciprocity needs a nonzero polynomial");
  }
  LaurentPoly inv = LaurentPoly::zero(delta.tower(), delta.vars());
  for (const auto& [e, c] : delta.terms()) {
    std::vector<int> ne(e);
    for (int& x : ne) x = -x;
    inv.add_term(ne, c);
  }
  auto u = unit_equivalent(inv, delta);
  if (!u) {
    throw NotUnitEquivalent("the polynomial is not reciprocal: Delta(1/t) = " +
                            inv.str() + " is not +-(monomial) * Delta(t) = " +
                            delta.str());
  }

  ReciprocityReport rep;
  rep.inverted = inv;
  rep.unit = *u;
  rep.observed_sign = u->sign_known ? u->sign : 0;
  if (rep.observed_sign == 0) {
    rep.notes.push_back("the unit leaves the sign undetermined");
  }
  bool boundary_class = ctx.manifold == ManifoldClass::kKnotExterior ||
                        ctx.manifold == ManifoldClass::kLinkExterior ||
                        ctx.manifold == ManifoldClass::kFiberedKnot;
  if (boundary_class && ctx.boundary_components >= 1) {
    rep.expected_sign = sign_helpers(ctx).symmetry_sign;
    if (rep.observed_sign != 0 && rep.observed_sign != *rep.expected_sign) {
      rep.sign_matches = false;
      rep.notes.push_back(
          "observed sign " + sign_str(rep.observed_sign) +
          " differs from the boundary-count formula sign " +
          sign_str(*rep.expected_sign) + "; recorded, not enforced");
    } else if (rep.observed_sign == *rep.expected_sign) {
      rep.notes.push_back("observed sign matches the boundary-count formula");
    }
  }
  return rep;
}

std::string ReciprocityReport::str() const {
  std::ostringstream os;
  os << "Delta(1/t) = " << inverted.str() << "\n"
     << "unit: " << unit.str(inverted.vars()) << "\n"
     << "observed sign: "
     << (observed_sign == 0 ? std::string("undetermined")
                            : sign_str(observed_sign))
     << "\n";
  if (expected_sign) {
    os << "boundary-count formula sign: " << sign_str(*expected_sign) << " ("
       << (sign_matches ? "match" : "MISMATCH") << ")\n";
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

FieldScalar derivative_formula(const LaurentPoly& delta,
                               const std::vector<int>& boundary_exponents,
                               std::vector<int> reduction_exponents) {
  if (delta.is_zero()) {
    throw ValidationError("the derivative formula needs a nonzero polynomial");
  }
  if (boundary_exponents.empty()) {
    throw ValidationError("need at least one boundary exponent");
  }
  for (int a : boundary_exponents) {
    if (a < 1) throw ValidationError("boundary exponents must be >= 1");
  }
  if (reduction_exponents.empty()) {
    reduction_exponents.assign(delta.vars().size(), 1);
  }
  LaurentPoly reduced = naturality_substitute(delta, reduction_exponents, "t");

  const TowerPtr& tw = reduced.tower();
  LaurentPoly one = LaurentPoly::constant(FieldScalar::one(tw), {"t"});
  LaurentPoly divisor = one;
  for (int a : boundary_exponents) {
    divisor =
        divisor *
        (LaurentPoly::monomial(FieldScalar::one(tw), {"t"}, {a}) - one);
  }
  LaurentPoly quotient = divide_exact(reduced, divisor);
  FieldScalar value = eval_at_one(quotient);
  if (boundary_exponents.size() % 2 == 1) {
    value = FieldScalar::zero(tw) - value;
  }
  return value;
}

CoveringReport covering_formula(const LaurentPoly& delta, int m) {
  if (m < 1) throw ValidationError("covering order must be >= 1");
  if (delta.is_zero()) {
    throw ValidationError("the covering formula needs a nonzero polynomial");
  }
  if (delta.vars().size() != 1) {
    throw ValidationError(
        "the cyclic covering formula needs a one-variable polynomial");
  }
  const TowerPtr& base = delta.tower();
  const std::string var = delta.vars()[0];

  TowerPtr work = base;
  FieldScalar zeta = FieldScalar::one(base);
  if (m == 2) zeta = FieldScalar::integer(base, -1);
  if (m >= 3) {
    std::string name = "zeta" + std::to_string(m);
    if (base->symbol_index(name) >= 0) {
      throw ValidationError("the symbol " + name +
                            " is already taken in the coefficient field");
    }
    std::vector<FieldScalar> coeffs;
    for (const Rational& r : cyclotomic_polynomial(m)) {
      coeffs.push_back(FieldScalar::from_rational(base, r));
    }
    work = adjoin_extension(base, name, coeffs);
    zeta = FieldScalar::symbol(work, name);
  }

  LaurentPoly lifted = m >= 3 ? delta.lift_to(work) : delta;
  LaurentPoly product = LaurentPoly::constant(FieldScalar::one(work), {var});
  FieldScalar zk = FieldScalar::one(work);
  for (int k = 0; k < m; ++k) {
    std::map<std::string, SubstTarget> sub{{var, SubstTarget{zk, {{var, 1}}}}};
    product = product * laurent_substitute(lifted, sub, {var});
    zk = zk * zeta;
  }

  CoveringReport rep;
  LaurentPoly out = LaurentPoly::zero(base, {"s"});
  for (const auto& [e, c] : product.terms()) {
    if (e[0] % m != 0) {
      throw CoefficientsDoNotCollapse(
          "the covering product has a term of degree " + std::to_string(e[0]) +
          ", not a multiple of " + std::to_string(m));
    }
    out.add_term({e[0] / m}, restrict_scalar(c, base));
  }
  rep.value = out;
  rep.ambiguity.sign_free = true;
  rep.ambiguity.monomial_free = true;
  rep.notes.push_back("order-" + std::to_string(m) +
                      " cyclic covering product, written in s = " + var + "^" +
                      std::to_string(m));
  rep.notes.push_back("covering sign left unresolved");
  return rep;
}

CoveringReport covering_formula(
    const LaurentPoly& delta,
    const std::vector<std::vector<FieldScalar>>& characters) {
  if (delta.is_zero()) {
    throw ValidationError("the covering formula needs a nonzero polynomial");
  }
  if (characters.empty()) {
    throw ValidationError("the character list is empty");
  }
  const std::vector<std::string>& vars = delta.vars();
  size_t n = vars.size();
  const TowerPtr& base = delta.tower();

  // Find the tallest tower among the inputs; every tower must embed in it.
  TowerPtr work = base;
  for (const auto& chi : characters) {
    if (chi.size() != n) {
      throw ValidationError("each character needs one value per variable");
    }
    for (const FieldScalar& x : chi) {
      if (x.is_zero()) throw ValidationError("character values must be nonzero");
      if (x.tower()->extends(*work)) {
        work = x.tower();
      } else if (!work->extends(*x.tower())) {
        throw IncompatibleTowers(
            "character values live over incompatible coefficient fields");
      }
    }
  }
  std::vector<std::vector<FieldScalar>> lifted_chars;
  for (const auto& chi : characters) {
    std::vector<FieldScalar> row;
    for (const FieldScalar& x : chi) row.push_back(x.lift_to(work));
    lifted_chars.push_back(std::move(row));
  }

  // The list must be a finite group: identity plus closure under products.
  auto tuple_equal = [&](const std::vector<FieldScalar>& a,
                         const std::vector<FieldScalar>& b) {
    for (size_t i = 0; i < n; ++i) {
      if (!a[i].equals(b[i])) return false;
    }
    return true;
  };
  auto contains = [&](const std::vector<FieldScalar>& t) {
    for (const auto& chi : lifted_chars) {
      if (tuple_equal(chi, t)) return true;
    }
    return false;
  };
  std::vector<FieldScalar> identity(n, FieldScalar::one(work));
  if (n > 0 && !contains(identity)) {
    throw ValidationError(
        "the character list has no identity: not a full dual group");
  }
  for (const auto& a : lifted_chars) {
    for (const auto& b : lifted_chars) {
      std::vector<FieldScalar> prod;
      for (size_t i = 0; i < n; ++i) prod.push_back(a[i] * b[i]);
      if (!contains(prod)) {
        throw ValidationError(
            "the character list is not closed under products: not a full "
            "dual group");
      }
    }
  }

  LaurentPoly lifted = delta.lift_to(work);
  LaurentPoly product = LaurentPoly::constant(FieldScalar::one(work), vars);
  for (const auto& chi : lifted_chars) {
    std::map<std::string, SubstTarget> sub;
    for (size_t i = 0; i < n; ++i) {
      sub[vars[i]] = SubstTarget{chi[i], {{vars[i], 1}}};
    }
    product = product * laurent_substitute(lifted, sub, vars);
  }

  CoveringReport rep;
  LaurentPoly out = LaurentPoly::zero(base, vars);
  for (const auto& [e, c] : product.terms()) {
    out.add_term(e, restrict_scalar(c, base));
  }
  rep.value = out;
  rep.ambiguity.sign_free = true;
  rep.ambiguity.monomial_free = true;
  rep.notes.push_back("abelian covering product over " +
                      std::to_string(lifted_chars.size()) + " characters");
  rep.notes.push_back("covering sign left unresolved");
  return rep;
}

std::string CoveringReport::str() const {
  std::ostringstream os;
  os << "covering product = " << value.str() << " [" << ambiguity.str()
     << "]\n";
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

TorsionResult fibered_torsion(const Matrix<FieldScalar>& monodromy,
                              const Matrix<long>& phi1) {
  if (monodromy.rows != monodromy.cols) {
    throw ValidationError("the monodromy matrix must be square");
  }
  if (phi1.rows != phi1.cols) {
    throw ValidationError("phi_1 must be square");
  }
  Matrix<long> one_minus(phi1.rows, phi1.cols, 0L);
  for (int r = 0; r < phi1.rows; ++r) {
    for (int c = 0; c < phi1.cols; ++c) {
      one_minus.at(r, c) = (r == c ? 1 : 0) - phi1.at(r, c);
    }
  }
  long d = int_det(one_minus);

  TowerPtr tw = monodromy.rows > 0 ? monodromy.at(0, 0).tower()
                                   : FieldTower::rationals();
  LaurentPoly t = LaurentPoly::variable(tw, {"t"}, "t");
  LaurentPoly zero = LaurentPoly::zero(tw, {"t"});
  Matrix<LaurentPoly> m(monodromy.rows, monodromy.cols, zero);
  for (int r = 0; r < monodromy.rows; ++r) {
    for (int c = 0; c < monodromy.cols; ++c) {
      m.at(r, c) = (r == c ? t : zero) -
                   LaurentPoly::constant(monodromy.at(r, c), {"t"});
    }
  }
  RatFunc det = determinant(m);
  LaurentPoly char_poly =
      det.is_poly() ? det.num() : divide_exact(det.num(), det.den());

  TorsionResult res;
  if (d == 0) {
    res.value = RatFunc::from_poly(char_poly);
    res.ambiguity.sign_free = true;
    res.ambiguity.monomial_free = true;
    res.notes.push_back(
        "det(1 - phi_1) = 0: sign undefined, the characteristic polynomial "
        "is only determined up to a unit");
  } else {
    res.value = RatFunc::from_poly(d > 0 ? char_poly : -char_poly);
    res.ambiguity.sign_free = false;
    res.ambiguity.monomial_free = false;
    res.notes.push_back("sign fixed by sgn det(1 - phi_1) = " +
                        sign_str(d > 0 ? 1 : -1));
  }
  return res;
}

}  // namespace torsionlab
