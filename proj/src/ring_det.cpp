// Exact determinants: fraction-free Bareiss elimination over the Laurent ring
// (every interior division is exact), and a denominator-clearing wrapper for
// matrices of rational functions.
#include <algorithm>

#include "torsionlab/ring.hpp"

namespace torsionlab {

namespace {

// Common variable list and tower across all entries.
template <class Get>
std::pair<TowerPtr, std::vector<std::string>> common_frame(int count, Get get) {
  TowerPtr tower = FieldTower::rationals();
  std::vector<std::string> vars;
  for (int i = 0; i < count; ++i) {
    const LaurentPoly& p = get(i);
    if (p.tower()->extends(*tower)) {
      tower = p.tower();
    } else if (!tower->extends(*p.tower())) {
      throw IncompatibleTowers("matrix entries over unrelated towers");
    }
    for (const auto& v : p.vars()) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        vars.push_back(v);
      }
    }
  }
  return {tower, vars};
}

}  // namespace

RatFunc determinant(const Matrix<LaurentPoly>& m) {
  if (m.rows != m.cols) throw TorsionError("determinant of non-square matrix");
  const int n = m.rows;
  auto [tower, vars] = common_frame(
      n * n, [&](int i) -> const LaurentPoly& { return m.e[i]; });
  if (n == 0) {
    return RatFunc::from_poly(
        LaurentPoly::constant(FieldScalar::one(tower), vars));
  }

  // Laurent entries are scaled to ordinary polynomials by a monomial per row;
  // the product of those monomials divides back out at the end.
  std::vector<std::vector<LaurentPoly>> w(n, std::vector<LaurentPoly>(n));
  std::vector<int> row_shift_total(vars.size(), 0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> row_min(vars.size(), 0);
    bool first = true;
    for (int j = 0; j < n; ++j) {
      LaurentPoly p = m.at(i, j);
      if (p.vars() != vars) p = p.with_vars(vars);
      if (!p.tower()->same_as(*tower)) p = p.lift_to(tower);
      w[i][j] = std::move(p);
      if (w[i][j].is_zero()) continue;
      std::vector<int> me = w[i][j].min_exps();
      if (first) {
        row_min = me;
        first = false;
      } else {
        for (size_t k = 0; k < row_min.size(); ++k) {
          row_min[k] = std::min(row_min[k], me[k]);
        }
      }
    }
    bool any = false;
    for (int s : row_min) any = any || s != 0;
    if (any && !first) {
      std::vector<int> neg(row_min.size());
      for (size_t k = 0; k < row_min.size(); ++k) {
        neg[k] = -row_min[k];
        row_shift_total[k] += row_min[k];
      }
      for (int j = 0; j < n; ++j) {
        if (!w[i][j].is_zero()) {
          w[i][j] = w[i][j].mul_monomial(FieldScalar::one(tower), neg);
        }
      }
    }
  }

  int sign = 1;
  LaurentPoly prev = LaurentPoly::constant(FieldScalar::one(tower), vars);
  for (int k = 0; k < n - 1; ++k) {
    if (w[k][k].is_zero()) {
      int sel = -1;
      for (int r = k + 1; r < n; ++r) {
        if (!w[r][k].is_zero()) {
          sel = r;
          break;
        }
      }
      if (sel < 0) return RatFunc::from_poly(LaurentPoly::zero(tower, vars));
      std::swap(w[k], w[sel]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        LaurentPoly t = w[k][k] * w[i][j] - w[i][k] * w[k][j];
        w[i][j] = t.is_zero() ? LaurentPoly::zero(tower, vars)
                              : divide_exact(t, prev);
      }
      w[i][k] = LaurentPoly::zero(tower, vars);
    }
    prev = w[k][k];
  }

  LaurentPoly det = w[n - 1][n - 1];
  if (sign < 0) det = -det;
  // Restore the row scalings.
  bool any = false;
  for (int s : row_shift_total) any = any || s != 0;
  if (any && !det.is_zero()) {
    det = det.mul_monomial(FieldScalar::one(tower), row_shift_total);
  }
  return RatFunc::from_poly(det);
}

RatFunc determinant(const Matrix<RatFunc>& m) {
  if (m.rows != m.cols) throw TorsionError("determinant of non-square matrix");
  const int n = m.rows;
  if (n == 0) return determinant(Matrix<LaurentPoly>(0, 0, LaurentPoly()));

  Matrix<LaurentPoly> cleared(n, n, LaurentPoly());
  RatFunc scale_back = RatFunc::from_poly(LaurentPoly::constant(
      FieldScalar::one(m.at(0, 0).num().tower()), m.at(0, 0).vars()));
  for (int i = 0; i < n; ++i) {
    // Common multiple of the row's denominators: product with a divisibility
    // probe to skip factors already present.
    LaurentPoly common = LaurentPoly::constant(
        FieldScalar::one(m.at(i, 0).num().tower()), m.at(i, 0).vars());
    for (int j = 0; j < n; ++j) {
      const LaurentPoly& d = m.at(i, j).den();
      if (d.is_constant()) continue;
      bool covered = false;
      try {
        (void)divide_exact(common, d);
        covered = true;
      } catch (const NonDivisible&) {
      } catch (const NotInvertible&) {
      }
      if (!covered) common = common * d;
    }
    for (int j = 0; j < n; ++j) {
      const RatFunc& entry = m.at(i, j);
      if (entry.is_zero()) {
        cleared.at(i, j) = LaurentPoly::zero(common.tower(), common.vars());
      } else {
        cleared.at(i, j) = entry.num() * divide_exact(common, entry.den());
      }
    }
    scale_back = scale_back * RatFunc::from_poly(common);
  }
  RatFunc det = determinant(cleared);
  return det / scale_back;
}

}  // namespace torsionlab
