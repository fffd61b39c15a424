// Twisted chain complexes from presentations, the Wada determinant ratio,
// the classical Alexander polynomial, the abelian factorization, and
// naturality under variable substitution.
#include "torsionlab/torsion.hpp"

#include <sstream>

#include "torsionlab/errors.hpp"

namespace torsionlab {

namespace {

Word generator_word(int g) {
  Word w;
  w.letters.push_back(Letter{g, 1});
  return w;
}

GroupRingElement generator_minus_one(int g) {
  return GroupRingElement::from_word(generator_word(g)) -
         GroupRingElement::one();
}

// Copies a 3x3 polynomial block into a larger RatFunc matrix.
void place_block(Matrix<RatFunc>& dst, int row0, int col0,
                 const Matrix<LaurentPoly>& block) {
  for (int r = 0; r < block.rows; ++r) {
    for (int c = 0; c < block.cols; ++c) {
      dst.at(row0 + r, col0 + c) = RatFunc::from_poly(block.at(r, c));
    }
  }
}

// Laurent-polynomial image of a group-ring element under the rank-one
// weight map: words go to monomials t^{phi(w)}.
LaurentPoly abelianize_elt(const GroupRingElement& x,
                           const AbelianizationMap& phi, const TowerPtr& t) {
  LaurentPoly out = LaurentPoly::zero(t, phi.vars);
  for (const auto& [w, c] : x.terms()) {
    out.add_term(phi.word_image(w), FieldScalar::integer(t, c));
  }
  return out;
}

// Minimum degree zero, positive leading coefficient where that is
// meaningful (rational leading coefficient).
LaurentPoly normalize_unit(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  std::vector<int> shift = p.min_exps();
  for (int& s : shift) s = -s;
  LaurentPoly q = p.mul_monomial(FieldScalar::one(p.tower()), shift);
  auto [exps, lead] = q.leading_term();
  (void)exps;
  if (lead.is_rational() && lead.as_rational() < 0) q = -q;
  return q;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

BasedChainComplex build_complex_from_presentation(const TwistedMap& tm) {
  const Presentation& pres = tm.presentation();
  int n = static_cast<int>(pres.generators.size());
  int m = static_cast<int>(pres.relators.size());

  Matrix<LaurentPoly> d1(3, 3 * n,
                         LaurentPoly::zero(tm.tower(), tm.vars()));
  for (int i = 0; i < n; ++i) {
    Matrix<LaurentPoly> block = tm.apply_internal(generator_minus_one(i));
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) d1.at(r, 3 * i + c) = block.at(r, c);
    }
  }
  Matrix<LaurentPoly> d2(3 * n, 3 * m,
                         LaurentPoly::zero(tm.tower(), tm.vars()));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      Matrix<LaurentPoly> block =
          tm.apply_internal(fox_derivative(pres.relators[j], i));
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          d2.at(3 * i + r, 3 * j + c) = block.at(r, c);
        }
      }
    }
  }

  Matrix<LaurentPoly> prod = mat_mul(d1, d2);
  for (int r = 0; r < prod.rows; ++r) {
    for (int c = 0; c < prod.cols; ++c) {
      if (!prod.at(r, c).is_zero()) {
        throw ValidationError(
            "boundary product d_1 d_2 is nonzero: the representation or "
            "the weight map does not kill a relator");
      }
    }
  }

  BasedChainComplex out;
  out.tower = tm.tower();
  out.vars = tm.vars();
  out.dims = {3, 3 * n, 3 * m};
  RatFunc zero = RatFunc::from_poly(LaurentPoly::zero(tm.tower(), tm.vars()));
  out.boundaries.push_back(Matrix<RatFunc>(0, 3, zero));
  Matrix<RatFunc> b1(3, 3 * n, zero);
  place_block(b1, 0, 0, d1);
  out.boundaries.push_back(std::move(b1));
  Matrix<RatFunc> b2(3 * n, 3 * m, zero);
  place_block(b2, 0, 0, d2);
  out.boundaries.push_back(std::move(b2));
  return out;
}

TorsionResult wada_torsion(const TorsionJobInput& input) {
  const Presentation& pres = input.pres;
  int n = static_cast<int>(pres.generators.size());
  int m = static_cast<int>(pres.relators.size());
  if (m != n - 1) {
    throw WrongDeficiency("the Wada ratio needs deficiency one (" +
                          std::to_string(n) + " generators need " +
                          std::to_string(n - 1) + " relators, got " +
                          std::to_string(m) + ")");
  }
  ValidationReport report =
      validate_representation(input.rep, input.phi, pres);
  if (!report.ok()) throw ValidationError(report.str());
  TwistedMap tm(pres, input.rep, input.phi);

  std::vector<int> candidates;
  if (input.removed_generator) {
    int k = *input.removed_generator;
    if (k < 0 || k >= n) {
      throw ValidationError("removed generator index " + std::to_string(k) +
                            " out of range");
    }
    candidates.push_back(k);
  } else {
    for (int k = n - 1; k >= 0; --k) candidates.push_back(k);
  }

  std::vector<std::string> degenerate;
  for (int k : candidates) {
    Matrix<LaurentPoly> den_mat =
        tm.apply_internal(generator_minus_one(k));
    RatFunc den = determinant(den_mat);
    if (den.is_zero()) {
      degenerate.push_back(pres.generators[static_cast<size_t>(k)]);
      continue;
    }
    Matrix<LaurentPoly> minor(3 * (n - 1), 3 * m,
                              LaurentPoly::zero(tm.tower(), tm.vars()));
    int row_block = 0;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      for (int j = 0; j < m; ++j) {
        Matrix<LaurentPoly> block =
            tm.apply_internal(fox_derivative(pres.relators[j], i));
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 3; ++c) {
            minor.at(3 * row_block + r, 3 * j + c) = block.at(r, c);
          }
        }
      }
      ++row_block;
    }
    RatFunc num = determinant(minor);

    TorsionResult result;
    result.value = num / den;
    if (input.tau0) result.value = result.value.scale(*input.tau0);
    result.ambiguity.sign_free = !input.tau0.has_value();
    result.ambiguity.monomial_free = true;
    result.notes.push_back("removed generator " +
                           pres.generators[static_cast<size_t>(k)]);
    if (!degenerate.empty()) {
      result.notes.push_back("degenerate denominator at " +
                             join_names(degenerate) + "; retried");
    }
    if (result.value.is_poly()) {
      result.notes.push_back("value is a polynomial");
    }
    return result;
  }
  if (input.removed_generator) {
    throw DegenerateDenominator(
        "det Phi(" + pres.generators[static_cast<size_t>(candidates[0])] +
        " - 1) = 0; try a different removed generator");
  }
  throw DegenerateDenominator(
      "every generator gives a singular denominator");
}

LaurentPoly classical_alexander(const Presentation& pres,
                                const AbelianizationMap& phi) {
  if (phi.vars.size() != 1) {
    throw ValidationError(
        "the classical Alexander polynomial needs a rank-one weight map");
  }
  int n = static_cast<int>(pres.generators.size());
  int m = static_cast<int>(pres.relators.size());
  if (m != n - 1) {
    throw WrongDeficiency("deficiency one required (" + std::to_string(n) +
                          " generators, " + std::to_string(m) + " relators)");
  }
  for (const Word& r : pres.relators) {
    if (phi.word_image(r) != std::vector<int>{0}) {
      throw ValidationError("the weight map does not kill a relator");
    }
  }
  TowerPtr q = FieldTower::rationals();
  LaurentPoly one_t = LaurentPoly::constant(FieldScalar::one(q), phi.vars);
  LaurentPoly t_var = LaurentPoly::variable(q, phi.vars, phi.vars[0]);

  for (int k = n - 1; k >= 0; --k) {
    int c = phi.images[static_cast<size_t>(k)][0];
    if (c == 0) continue;
    Matrix<LaurentPoly> minor(n - 1, m, LaurentPoly::zero(q, phi.vars));
    int row = 0;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      for (int j = 0; j < m; ++j) {
        minor.at(row, j) =
            abelianize_elt(fox_derivative(pres.relators[j], i), phi, q);
      }
      ++row;
    }
    RatFunc det = determinant(minor);
    LaurentPoly den =
        LaurentPoly::monomial(FieldScalar::one(q), phi.vars, {c}) - one_t;
    RatFunc ratio = det * RatFunc::from_poly(t_var - one_t) /
                    RatFunc::from_poly(den);
    std::optional<LaurentPoly> delta = is_polynomial(ratio);
    if (!delta) {
      throw NonDivisible("the Alexander ratio failed to reduce to a polynomial",
                         ratio.str());
    }
    return normalize_unit(*delta);
  }
  throw DegenerateDenominator(
      "every generator has weight zero; no column can be removed");
}

std::string FactorizationReport::str() const {
  std::ostringstream os;
  os << "lhs (Wada at the diagonal rep) = " << lhs.str() << "\n"
     << "rhs (Alexander product)        = " << rhs.str() << "\n";
  if (unit) os << "unit: " << unit->str(lhs.vars()) << "\n";
  os << "factorization " << (equal ? "holds" : "FAILS") << " up to a unit\n";
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

FactorizationReport abelian_factorization(const Presentation& pres,
                                          const AbelianizationMap& phi,
                                          const FieldScalar& xi) {
  const TowerPtr& tw = xi.tower();
  FieldScalar xi2 = xi * xi;
  if (xi.is_zero()) throw ValidationError("xi must be nonzero");
  if (xi2.equals(FieldScalar::one(tw))) {
    throw DegenerateDenominator(
        "xi^2 = 1 degenerates the factorization denominators");
  }

  SL2Rep rep = abelian_rep_build(phi, xi);
  TorsionJobInput job{pres, rep, phi, std::nullopt, std::nullopt};
  FactorizationReport out;
  out.lhs = wada_torsion(job).value;
  out.notes.push_back("lhs: Wada ratio at diag(xi^phi, xi^-phi)");

  LaurentPoly delta = classical_alexander(pres, phi).lift_to(tw);
  const std::string& tname = phi.vars[0];
  auto shifted = [&](const FieldScalar& c) {
    std::map<std::string, SubstTarget> subs;
    subs[tname] = SubstTarget{c, {{tname, 1}}};
    return laurent_substitute(delta, subs, {tname});
  };
  FieldScalar xim2 = xi2.inverse();
  LaurentPoly num = shifted(xi2) * delta * shifted(xim2);
  LaurentPoly t_var = LaurentPoly::variable(tw, phi.vars, tname);
  LaurentPoly den = (t_var - LaurentPoly::constant(xi2, phi.vars)) *
                    (t_var - LaurentPoly::constant(FieldScalar::one(tw),
                                                   phi.vars)) *
                    (t_var - LaurentPoly::constant(xim2, phi.vars));
  out.rhs = RatFunc::make(num, den);
  out.notes.push_back(
      "rhs: Delta(xi^2 t) Delta(t) Delta(xi^-2 t) over the three linear "
      "factors");

  out.unit = unit_equivalent(out.lhs, out.rhs);
  out.equal = out.unit.has_value();
  return out;
}

LaurentPoly naturality_substitute(const LaurentPoly& delta,
                                  const std::vector<int>& exponents,
                                  const std::string& out_var) {
  if (exponents.size() != delta.vars().size()) {
    throw ValidationError("need one exponent per variable");
  }
  for (int a : exponents) {
    if (a < 1) throw ValidationError("substitution exponents must be >= 1");
  }
  std::map<std::string, SubstTarget> subs;
  for (size_t i = 0; i < exponents.size(); ++i) {
    subs[delta.vars()[i]] = SubstTarget{FieldScalar::one(delta.tower()),
                                        {{out_var, exponents[i]}}};
  }
  return laurent_substitute(delta, subs, {out_var});
}

std::string NaturalityReport::str() const {
  std::ostringstream os;
  os << "substituted = " << substituted.str() << "\n"
     << "recomputed  = " << recomputed.str() << "\n";
  if (unit) os << "unit: " << unit->str(substituted.vars()) << "\n";
  os << "naturality " << (equal ? "holds" : "FAILS") << " up to a unit\n";
  return os.str();
}

NaturalityReport naturality_cross_check(const TorsionJobInput& input,
                                        const std::vector<int>& exponents) {
  TorsionResult base = wada_torsion(input);
  NaturalityReport out;
  const std::string out_var = "t";
  out.substituted =
      RatFunc::make(naturality_substitute(base.value.num(), exponents, out_var),
                    naturality_substitute(base.value.den(), exponents, out_var));

  AbelianizationMap composed;
  composed.vars = {out_var};
  for (const auto& image : input.phi.images) {
    long acc = 0;
    for (size_t j = 0; j < image.size(); ++j) {
      acc += static_cast<long>(exponents.at(j)) * image[j];
    }
    composed.images.push_back({static_cast<int>(acc)});
  }
  TorsionJobInput job{input.pres, input.rep, composed,
                      input.removed_generator, std::nullopt};
  out.recomputed = wada_torsion(job).value;

  out.unit = unit_equivalent(out.substituted, out.recomputed);
  out.equal = out.unit.has_value();
  return out;
}

std::optional<LaurentPoly> is_polynomial(const RatFunc& r) {
  if (r.is_poly()) return r.num();
  try {
    return divide_exact(r.num(), r.den());
  } catch (const NonDivisible&) {
    return std::nullopt;
  }
}

}  // namespace torsionlab
