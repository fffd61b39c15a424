// Derived identities on torsion polynomials: reciprocity under variable
// inversion, the boundary-derivative formula producing a scalar torsion,
// finite-covering products, fibered-manifold torsion from a monodromy
// matrix, and the closed-form boundary-count signs.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torsionlab/complex.hpp"
#include "torsionlab/ring.hpp"

namespace torsionlab {

enum class ManifoldClass { kKnotExterior, kLinkExterior, kFiberedKnot, kGeneric };

struct SignContext {
  int boundary_components = 1;
  ManifoldClass manifold = ManifoldClass::kGeneric;
  // sgn det(1 - phi_1) when the manifold fibers and the sign is known.
  std::optional<int> det_sign;
};

struct SignPair {
  int pair_sign = 1;      // (-1)^{b(b-1)/2}
  int symmetry_sign = 1;  // (-1)^{b(b+1)/2}
};

// The two closed-form signs attached to a boundary-component count b >= 1.
SignPair sign_helpers(const SignContext& ctx);

struct ReciprocityReport {
  LaurentPoly inverted;             // Delta(1/t_1, ..., 1/t_n)
  UnitClass unit;                   // Delta(1/t) = unit * Delta(t)
  int observed_sign = 0;            // 0 when the unit leaves the sign open
  std::optional<int> expected_sign; // boundary-count formula, knot/link only
  bool sign_matches = true;         // false only on a determinate mismatch
  std::vector<std::string> notes;
  std::string str() const;
};

// Checks Delta(1/t) = +-(monomial) * Delta(t) and reports the unit.  For
// knot and link exteriors the observed sign is compared against
// (-1)^{b(b+1)/2}; a mismatch is recorded in the report, never asserted.
ReciprocityReport reciprocity(const LaurentPoly& delta, const SignContext& ctx);

// The scalar torsion obtained from a torsion polynomial: reduce to one
// variable via t_i -> t^{c_i}, divide exactly by prod_l (t^{a_l} - 1),
// evaluate at t = 1 and multiply by (-1)^b where b is the number of
// boundary exponents.  Exactness is mandatory; no numeric limits.
FieldScalar derivative_formula(const LaurentPoly& delta,
                               const std::vector<int>& boundary_exponents,
                               std::vector<int> reduction_exponents = {});

struct CoveringReport {
  // For the cyclic form: the product written in s = t^m.  For the
  // character form: the product in the original variables.
  LaurentPoly value;
  Ambiguity ambiguity;  // the covering sign stays unresolved
  std::vector<std::string> notes;
  std::string str() const;
};

// Cyclic covering of order m: adjoins a primitive m-th root of unity when
// needed, forms prod_k Delta(zeta^k t), checks that the coefficients
// collapse back to Delta's coefficient field and that every exponent is a
// multiple of m, and returns the product in s = t^m.
CoveringReport covering_formula(const LaurentPoly& delta, int m);

// General finite abelian covering: `characters` lists the value tuples of
// the dual group (one root of unity per variable, the full group).  Forms
// prod_chi Delta(chi_1 t_1, ..., chi_n t_n) and checks the collapse.
CoveringReport covering_formula(
    const LaurentPoly& delta,
    const std::vector<std::vector<FieldScalar>>& characters);

// Torsion of a fibered manifold: sgn(det(1 - phi_1)) * det(t I - A) for
// the twisted monodromy matrix A.  When det(1 - phi_1) = 0 the sign is
// undefined and the characteristic polynomial is returned unit-ambiguous
// with a warning note.
TorsionResult fibered_torsion(const Matrix<FieldScalar>& monodromy,
                              const Matrix<long>& phi1);

}  // namespace torsionlab
