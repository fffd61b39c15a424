// Adjoint action, representation validation, and the twisted ring map.
#include "torsionlab/rep.hpp"

#include <sstream>

namespace torsionlab {

Mat2 Mat2::identity(const TowerPtr& t) {
  return {FieldScalar::one(t), FieldScalar::zero(t), FieldScalar::zero(t),
          FieldScalar::one(t)};
}

Mat2 Mat2::diagonal(const FieldScalar& x, const FieldScalar& y) {
  FieldScalar z = FieldScalar::zero(x.tower());
  return {x, z, z, y};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
          c * o.b + d * o.d};
}

FieldScalar Mat2::det() const { return a * d - b * c; }

Mat2 Mat2::inverse_det1() const { return {d, -b, -c, a}; }

bool Mat2::equals(const Mat2& o) const {
  return a.equals(o.a) && b.equals(o.b) && c.equals(o.c) && d.equals(o.d);
}

bool Mat2::is_identity() const {
  return a.is_one() && b.is_zero() && c.is_zero() && d.is_one();
}

std::string Mat2::str() const {
  return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() +
         "]]";
}

Matrix<FieldScalar> mat_mul(const Matrix<FieldScalar>& x,
                            const Matrix<FieldScalar>& y) {
  if (x.cols != y.rows) throw TorsionError("matrix shape mismatch");
  Matrix<FieldScalar> out(x.rows, y.cols, FieldScalar());
  for (int r = 0; r < x.rows; ++r) {
    for (int c = 0; c < y.cols; ++c) {
      FieldScalar acc;
      for (int k = 0; k < x.cols; ++k) acc = acc + x.at(r, k) * y.at(k, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

Matrix<LaurentPoly> mat_mul(const Matrix<LaurentPoly>& x,
                            const Matrix<LaurentPoly>& y) {
  if (x.cols != y.rows) throw TorsionError("matrix shape mismatch");
  Matrix<LaurentPoly> out(x.rows, y.cols, LaurentPoly());
  for (int r = 0; r < x.rows; ++r) {
    for (int c = 0; c < y.cols; ++c) {
      LaurentPoly acc;
      for (int k = 0; k < x.cols; ++k) acc = acc + x.at(r, k) * y.at(k, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

bool mat_equal(const Matrix<LaurentPoly>& x, const Matrix<LaurentPoly>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (int r = 0; r < x.rows; ++r) {
    for (int c = 0; c < x.cols; ++c) {
      if (!(x.at(r, c) == y.at(r, c))) return false;
    }
  }
  return true;
}

Matrix<FieldScalar> mat_identity_scalar(const TowerPtr& t, int n) {
  Matrix<FieldScalar> out(n, n, FieldScalar::zero(t));
  for (int i = 0; i < n; ++i) out.at(i, i) = FieldScalar::one(t);
  return out;
}

Matrix<LaurentPoly> mat_identity_poly(const TowerPtr& t,
                                      const std::vector<std::string>& vars,
                                      int n) {
  Matrix<LaurentPoly> out(n, n, LaurentPoly::zero(t, vars));
  for (int i = 0; i < n; ++i) {
    out.at(i, i) = LaurentPoly::constant(FieldScalar::one(t), vars);
  }
  return out;
}

Matrix<LaurentPoly> mat_transpose(const Matrix<LaurentPoly>& x) {
  Matrix<LaurentPoly> out(x.cols, x.rows, LaurentPoly());
  for (int r = 0; r < x.rows; ++r) {
    for (int c = 0; c < x.cols; ++c) out.at(c, r) = x.at(r, c);
  }
  return out;
}

Matrix<FieldScalar> adjoint(const Mat2& A) {
  if (!A.det().is_one()) {
    throw ValidationError("adjoint requires determinant 1, got " +
                          A.det().str());
  }
  const FieldScalar &a = A.a, &b = A.b, &c = A.c, &d = A.d;
  Matrix<FieldScalar> m(3, 3, FieldScalar());
  // Columns are the images of E, H, F under X -> A X A^{-1}.
  m.at(0, 0) = a * a;
  m.at(1, 0) = -(a * c);
  m.at(2, 0) = -(c * c);
  m.at(0, 1) = -(a * b) - (a * b);
  m.at(1, 1) = a * d + b * c;
  m.at(2, 1) = c * d + c * d;
  m.at(0, 2) = -(b * b);
  m.at(1, 2) = b * d;
  m.at(2, 2) = d * d;
  return m;
}

Mat2 SL2Rep::word_image(const Word& w) const {
  Mat2 acc = Mat2::identity(tower);
  for (const Letter& l : w.letters) {
    const Mat2& g = images.at(static_cast<size_t>(l.gen));
    acc = acc * (l.exp == 1 ? g : g.inverse_det1());
  }
  return acc;
}

std::vector<int> AbelianizationMap::word_image(const Word& w) const {
  std::vector<int> out(vars.size(), 0);
  for (const Letter& l : w.letters) {
    const std::vector<int>& img = images.at(static_cast<size_t>(l.gen));
    for (size_t i = 0; i < out.size(); ++i) out[i] += l.exp * img[i];
  }
  return out;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  if (failures.empty() && warnings.empty()) return "all checks passed";
  for (auto& f : failures) os << "FAIL: " << f << "\n";
  for (auto& w : warnings) os << "WARN: " << w << "\n";
  return os.str();
}

ValidationReport validate_representation(const SL2Rep& rep,
                                         const AbelianizationMap& phi,
                                         const Presentation& pres) {
  ValidationReport report;
  size_t n = pres.generators.size();
  if (rep.images.size() != n) {
    report.failures.push_back("representation assigns " +
                              std::to_string(rep.images.size()) +
                              " matrices to " + std::to_string(n) +
                              " generators");
    return report;
  }
  if (phi.images.size() != n) {
    report.failures.push_back("abelianization assigns " +
                              std::to_string(phi.images.size()) +
                              " exponent vectors to " + std::to_string(n) +
                              " generators");
    return report;
  }
  for (size_t i = 0; i < n; ++i) {
    if (!rep.images[i].det().is_one()) {
      report.failures.push_back("det rho(" + pres.generators[i] +
                                ") = " + rep.images[i].det().str() +
                                ", expected 1");
    }
    if (phi.images[i].size() != phi.vars.size()) {
      report.failures.push_back("phi(" + pres.generators[i] +
                                ") has wrong length");
    }
  }
  if (!report.failures.empty()) return report;

  bool symbolic = rep.tower->num_params() > 0;
  for (size_t j = 0; j < pres.relators.size(); ++j) {
    const Word& r = pres.relators[j];
    std::vector<int> sum = phi.word_image(r);
    for (int e : sum) {
      if (e != 0) {
        report.failures.push_back("phi does not kill relator " +
                                  std::to_string(j + 1));
        break;
      }
    }
    Mat2 img = rep.word_image(r);
    if (!img.is_identity()) {
      std::string msg = "rho(relator " + std::to_string(j + 1) +
                        ") != identity: " + img.str();
      if (symbolic) {
        report.warnings.push_back(
            msg + " (free parameters present; holds only on the variety)");
      } else {
        report.failures.push_back(msg);
      }
    }
  }
  return report;
}

TwistedMap::TwistedMap(Presentation pres, SL2Rep rep, AbelianizationMap phi)
    : pres_(std::move(pres)), rep_(std::move(rep)), phi_(std::move(phi)) {
  if (rep_.images.size() != pres_.generators.size() ||
      phi_.images.size() != pres_.generators.size()) {
    throw ValidationError("twisted map: per-generator data sizes mismatch");
  }
  for (auto& img : phi_.images) {
    if (img.size() != phi_.vars.size()) {
      throw ValidationError("twisted map: exponent vector length mismatch");
    }
  }
}

Matrix<LaurentPoly> TwistedMap::word_matrix_internal(const Word& w) const {
  Mat2 inv = rep_.word_image(w).inverse_det1();
  Matrix<FieldScalar> ad = adjoint(inv);
  std::vector<int> exps = phi_.word_image(w);
  Matrix<LaurentPoly> out(3, 3, LaurentPoly::zero(tower(), vars()));
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (ad.at(r, c).is_zero()) continue;
      out.at(r, c) = LaurentPoly::monomial(ad.at(r, c), vars(), exps);
    }
  }
  return out;
}

Matrix<LaurentPoly> TwistedMap::apply_internal(
    const GroupRingElement& x) const {
  Matrix<LaurentPoly> acc(3, 3, LaurentPoly::zero(tower(), vars()));
  for (auto& [w, coeff] : x.terms()) {
    Matrix<LaurentPoly> m = word_matrix_internal(w);
    FieldScalar c = FieldScalar::from_rational(tower(), Rational(coeff));
    for (int r = 0; r < 3; ++r) {
      for (int cc = 0; cc < 3; ++cc) {
        acc.at(r, cc) = acc.at(r, cc) + m.at(r, cc).scale(c);
      }
    }
  }
  return acc;
}

Matrix<LaurentPoly> TwistedMap::apply(const GroupRingElement& x) const {
  return mat_transpose(apply_internal(x));
}

SL2Rep abelian_rep_build(const AbelianizationMap& phi, const FieldScalar& xi) {
  if (phi.vars.size() != 1) {
    throw ValidationError("abelian representation needs one torsion variable");
  }
  if (xi.is_zero()) throw ValidationError("xi must be nonzero");
  SL2Rep rep;
  rep.tower = xi.tower();
  for (auto& img : phi.images) {
    int k = img.at(0);
    rep.images.push_back(Mat2::diagonal(xi.pow(k), xi.pow(-k)));
  }
  return rep;
}

}  // namespace torsionlab
