// SL2 representations, the adjoint action on sl2 in the ordered basis
// {E, H, F}, abelianization maps into a free abelian group written in the
// torsion variables, and the twisted ring map combining both.
#pragma once

#include <string>
#include <vector>

#include "torsionlab/group.hpp"
#include "torsionlab/ring.hpp"

namespace torsionlab {

// 2x2 matrix over a field-tower scalar; rows are (a b / c d).
struct Mat2 {
  FieldScalar a, b, c, d;

  static Mat2 identity(const TowerPtr& t);
  static Mat2 diagonal(const FieldScalar& x, const FieldScalar& y);

  Mat2 operator*(const Mat2& o) const;
  FieldScalar det() const;
  Mat2 inverse_det1() const;  // adjugate; valid when det = 1
  bool equals(const Mat2& o) const;
  bool is_identity() const;
  std::string str() const;
};

// Small dense matrix helpers shared by the twisted map and the complexes.
Matrix<FieldScalar> mat_mul(const Matrix<FieldScalar>& x,
                            const Matrix<FieldScalar>& y);
Matrix<LaurentPoly> mat_mul(const Matrix<LaurentPoly>& x,
                            const Matrix<LaurentPoly>& y);
bool mat_equal(const Matrix<LaurentPoly>& x, const Matrix<LaurentPoly>& y);
Matrix<FieldScalar> mat_identity_scalar(const TowerPtr& t, int n);
Matrix<LaurentPoly> mat_identity_poly(const TowerPtr& t,
                                      const std::vector<std::string>& vars,
                                      int n);
Matrix<LaurentPoly> mat_transpose(const Matrix<LaurentPoly>& x);

// Matrix of X -> A X A^{-1} on sl2 in the ordered basis {E, H, F}; columns
// are the images of E, H, F. Throws ValidationError unless det A = 1.
Matrix<FieldScalar> adjoint(const Mat2& A);

// A choice of SL2 matrix for each presentation generator.
struct SL2Rep {
  TowerPtr tower;
  std::vector<Mat2> images;

  // Evaluates on a freely reduced word; inverse letters use the adjugate.
  Mat2 word_image(const Word& w) const;
};

// Per-generator exponent vectors in the torsion variables t_1..t_n.
struct AbelianizationMap {
  std::vector<std::string> vars;
  std::vector<std::vector<int>> images;  // one exponent vector per generator

  std::vector<int> word_image(const Word& w) const;
};

// Report-style validation: hard failures plus warnings. A relator whose
// image is not the identity is only a warning when the scalar tower has
// free parameters (a symbolic family need not satisfy its defining variety
// identically).
struct ValidationReport {
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  bool ok() const { return failures.empty(); }
  std::string str() const;
};

ValidationReport validate_representation(const SL2Rep& rep,
                                         const AbelianizationMap& phi,
                                         const Presentation& pres);

// The coefficient map used throughout: a word w is sent to the 3x3 matrix
// t^{phi(w)} * adjoint(rho(w)^{-1}) over the Laurent ring, extended
// Z-linearly to group-ring elements.
//
// The raw assignment is anti-multiplicative (adjoint of an inverse reverses
// products), which is exactly what the chain-complex boundary blocks need;
// `apply` exposes the transposed, multiplicative form used for determinant
// identities, and `apply_internal` the raw one. Determinants agree either
// way; only product order differs.
class TwistedMap {
 public:
  TwistedMap(Presentation pres, SL2Rep rep, AbelianizationMap phi);

  const Presentation& presentation() const { return pres_; }
  const SL2Rep& rep() const { return rep_; }
  const AbelianizationMap& phi() const { return phi_; }
  const TowerPtr& tower() const { return rep_.tower; }
  const std::vector<std::string>& vars() const { return phi_.vars; }

  Matrix<LaurentPoly> word_matrix_internal(const Word& w) const;
  Matrix<LaurentPoly> apply_internal(const GroupRingElement& x) const;
  Matrix<LaurentPoly> apply(const GroupRingElement& x) const;

 private:
  Presentation pres_;
  SL2Rep rep_;
  AbelianizationMap phi_;
};

// Diagonal abelian representation g -> diag(xi^{phi(g)}, xi^{-phi(g)}) for a
// one-variable abelianization map. Throws ValidationError when xi = 0.
SL2Rep abelian_rep_build(const AbelianizationMap& phi, const FieldScalar& xi);

}  // namespace torsionlab
