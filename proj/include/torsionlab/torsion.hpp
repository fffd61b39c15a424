// The main invariant: the twisted chain complex of a presentation, the
// Wada determinant-ratio torsion, the classical Alexander polynomial, the
// abelian factorization identity, and naturality under variable
// substitution.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torsionlab/complex.hpp"
#include "torsionlab/group.hpp"
#include "torsionlab/rep.hpp"
#include "torsionlab/ring.hpp"

namespace torsionlab {

struct TorsionJobInput {
  Presentation pres;
  SL2Rep rep;
  AbelianizationMap phi;
  // Generator column to remove in the Wada ratio. Unset: the last
  // generator, automatically retrying the others on a degenerate
  // denominator. Set: that generator only, failing hard when degenerate.
  std::optional<int> removed_generator;
  // Sign input resolving the +-1 ambiguity; the result is scaled by it.
  std::optional<FieldScalar> tau0;
};

// The presentation's twisted chain complex 0 -> C_2 -> C_1 -> C_0 -> 0
// with C_2 = (3 * #relators), C_1 = (3 * #generators), C_0 = 3; boundary
// blocks are the twisted images of Fox derivatives and of (generator - 1).
// Verifies d_1 d_2 = 0, which encodes that the representation and the
// weights both kill the relators. Any deficiency is accepted.
BasedChainComplex build_complex_from_presentation(const TwistedMap& tm);

// The Wada ratio det[Phi(dr_j/dx_i)]_{i != k} / det Phi(x_k - 1) for a
// deficiency-one presentation. Ambiguity is +-(monomial) unless tau0 is
// given, in which case only the monomial ambiguity remains.
TorsionResult wada_torsion(const TorsionJobInput& input);

// The classical (untwisted) Alexander polynomial from the rank-one weight
// map: the one-dimensional torsion times (t - 1), normalized to minimum
// degree zero with positive leading coefficient.
LaurentPoly classical_alexander(const Presentation& pres,
                                const AbelianizationMap& phi);

struct FactorizationReport {
  RatFunc lhs;                     // Wada torsion at the diagonal rep
  RatFunc rhs;                     // Alexander-polynomial product formula
  std::optional<UnitClass> unit;   // lhs = unit * rhs when it holds
  bool equal = false;              // up to +- monomial
  std::vector<std::string> notes;
  std::string str() const;
};

// Checks the factorization of the torsion at the diagonal abelian
// representation sending gamma to diag(xi^phi, xi^-phi):
//   Tor = Delta(xi^2 t) Delta(t) Delta(xi^-2 t)
//         / ((t - xi^2)(t - 1)(t - xi^-2)),
// computing the two sides through independent pipelines.
FactorizationReport abelian_factorization(const Presentation& pres,
                                          const AbelianizationMap& phi,
                                          const FieldScalar& xi);

// Substitutes t_i -> t^{a_i} (all a_i >= 1) into a multivariable
// polynomial, producing a one-variable polynomial in `out_var`.
LaurentPoly naturality_substitute(const LaurentPoly& delta,
                                  const std::vector<int>& exponents,
                                  const std::string& out_var = "t");

struct NaturalityReport {
  RatFunc substituted;  // substitution into the precomputed torsion
  RatFunc recomputed;   // fresh computation with the composed weights
  std::optional<UnitClass> unit;
  bool equal = false;
  std::string str() const;
};

// Cross-checks naturality: substituting into the torsion of `input` must
// agree (up to a unit) with recomputing the torsion after composing the
// weight map with t_i -> t^{a_i}.
NaturalityReport naturality_cross_check(const TorsionJobInput& input,
                                        const std::vector<int>& exponents);

// The quotient when the denominator divides the numerator exactly.
std::optional<LaurentPoly> is_polynomial(const RatFunc& r);

}  // namespace torsionlab
