// Seeded random based complexes and twisted-sum short exact sequences.
#include "torsionlab/random_complexes.hpp"

#include <utility>

#include "torsionlab/errors.hpp"

namespace torsionlab {
namespace {

Matrix<RatFunc> zeros(int rows, int cols) {
  return Matrix<RatFunc>(rows, cols, RatFunc());
}

Matrix<RatFunc> eye(const TowerPtr& tower, const std::vector<std::string>& vars,
                    int n) {
  Matrix<RatFunc> m = zeros(n, n);
  RatFunc one = RatFunc::from_poly(
      LaurentPoly::constant(FieldScalar::one(tower), vars));
  for (int i = 0; i < n; ++i) m.at(i, i) = one;
  return m;
}

Matrix<RatFunc> mul(const Matrix<RatFunc>& a, const Matrix<RatFunc>& b) {
  Matrix<RatFunc> out = zeros(a.rows, b.cols);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < b.cols; ++c) {
      RatFunc acc;
      for (int k = 0; k < a.cols; ++k) acc = acc + a.at(r, k) * b.at(k, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

Matrix<RatFunc> sub_mats(const Matrix<RatFunc>& a, const Matrix<RatFunc>& b) {
  Matrix<RatFunc> out = zeros(a.rows, a.cols);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) out.at(r, c) = a.at(r, c) - b.at(r, c);
  }
  return out;
}

std::vector<RatFunc> apply_columns(const Matrix<RatFunc>& m,
                                   const std::vector<RatFunc>& v) {
  std::vector<RatFunc> out(static_cast<size_t>(m.rows), RatFunc());
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      out[static_cast<size_t>(r)] =
          out[static_cast<size_t>(r)] + m.at(r, c) * v[static_cast<size_t>(c)];
    }
  }
  return out;
}

// c * t1^e as a rational function (first variable carries the twist).
RatFunc unit_mono(const TowerPtr& tower, const std::vector<std::string>& vars,
                  long c, int e) {
  std::vector<int> exps(vars.size(), 0);
  if (!exps.empty()) exps[0] = e;
  return RatFunc::from_poly(
      LaurentPoly::monomial(FieldScalar::integer(tower, c), vars, exps));
}

RatFunc random_unit_coeff(std::mt19937& rng, const TowerPtr& tower,
                          const std::vector<std::string>& vars) {
  static const long coeffs[] = {-2, -1, 1, 2};
  std::uniform_int_distribution<int> ci(0, 3), ei(-1, 1);
  return unit_mono(tower, vars, coeffs[ci(rng)], ei(rng));
}

// Random invertible matrix together with its inverse, as a short product
// of elementary transvections and monomial scalings.
std::pair<Matrix<RatFunc>, Matrix<RatFunc>> random_gl(
    std::mt19937& rng, const TowerPtr& tower,
    const std::vector<std::string>& vars, int n) {
  Matrix<RatFunc> p = eye(tower, vars, n), pinv = eye(tower, vars, n);
  if (n == 0) return {p, pinv};
  std::uniform_int_distribution<int> idx(0, n - 1), nops(1, 3), kind(0, 2);
  int k = nops(rng);
  for (int op = 0; op < k; ++op) {
    if (kind(rng) == 0 || n == 1) {
      int r = idx(rng);
      RatFunc c = random_unit_coeff(rng, tower, vars);
      Matrix<RatFunc> e = eye(tower, vars, n), einv = eye(tower, vars, n);
      e.at(r, r) = c;
      einv.at(r, r) = c.inverse();
      p = mul(e, p);
      pinv = mul(pinv, einv);
    } else {
      int r = idx(rng), s = idx(rng);
      if (r == s) s = (s + 1) % n;
      RatFunc lam = random_unit_coeff(rng, tower, vars);
      Matrix<RatFunc> e = eye(tower, vars, n), einv = eye(tower, vars, n);
      e.at(r, s) = lam;
      einv.at(r, s) = RatFunc() - lam;
      p = mul(e, p);
      pinv = mul(pinv, einv);
    }
  }
  return {p, pinv};
}

}  // namespace

void scramble_basis(std::mt19937& rng, BasedChainComplex& c) {
  int n = c.length();
  std::vector<Matrix<RatFunc>> p, pinv;
  for (int i = 0; i <= n; ++i) {
    auto [a, b] =
        random_gl(rng, c.tower, c.vars, c.dims.at(static_cast<size_t>(i)));
    p.push_back(a);
    pinv.push_back(b);
  }
  for (int i = 1; i <= n; ++i) {
    c.boundaries[static_cast<size_t>(i)] =
        mul(mul(p[static_cast<size_t>(i - 1)],
                c.boundaries[static_cast<size_t>(i)]),
            pinv[static_cast<size_t>(i)]);
  }
  if (c.homology_bases) {
    for (int i = 0; i <= n; ++i) {
      for (auto& chain : (*c.homology_bases)[static_cast<size_t>(i)]) {
        chain = apply_columns(p[static_cast<size_t>(i)], chain);
      }
    }
  }
}

BasedChainComplex staircase_complex(const TowerPtr& tower,
                                    const std::vector<std::string>& vars,
                                    const std::vector<int>& r,
                                    const std::vector<int>& h) {
  if (h.empty() || r.size() != h.size() + 1) {
    throw ValidationError(
        "staircase data needs one boundary rank per degree boundary");
  }
  int n = static_cast<int>(h.size()) - 1;
  std::vector<int> dims(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    dims[static_cast<size_t>(i)] = r[static_cast<size_t>(i + 1)] +
                                   h[static_cast<size_t>(i)] +
                                   r[static_cast<size_t>(i)];
  }
  BasedChainComplex c;
  c.tower = tower;
  c.vars = vars;
  c.dims = dims;
  c.boundaries.push_back(zeros(0, dims.at(0)));
  RatFunc one =
      RatFunc::from_poly(LaurentPoly::constant(FieldScalar::one(tower), vars));
  for (int i = 1; i <= n; ++i) {
    Matrix<RatFunc> d =
        zeros(dims[static_cast<size_t>(i - 1)], dims[static_cast<size_t>(i)]);
    int col0 = r[static_cast<size_t>(i + 1)] + h[static_cast<size_t>(i)];
    for (int k = 0; k < r[static_cast<size_t>(i)]; ++k) {
      d.at(k, col0 + k) = one;
    }
    c.boundaries.push_back(std::move(d));
  }
  std::vector<std::vector<std::vector<RatFunc>>> bases;
  for (int i = 0; i <= n; ++i) {
    std::vector<std::vector<RatFunc>> degree;
    for (int k = 0; k < h[static_cast<size_t>(i)]; ++k) {
      std::vector<RatFunc> e(static_cast<size_t>(dims[static_cast<size_t>(i)]),
                             RatFunc());
      e[static_cast<size_t>(r[static_cast<size_t>(i + 1)] + k)] = one;
      degree.push_back(std::move(e));
    }
    bases.push_back(std::move(degree));
  }
  c.homology_bases = std::move(bases);
  return c;
}

BasedChainComplex random_based_complex(std::mt19937& rng,
                                       const TowerPtr& tower,
                                       const std::vector<std::string>& vars,
                                       int n, int max_dim) {
  if (n < 0 || max_dim < 1) {
    throw ValidationError("random complex needs n >= 0 and max_dim >= 1");
  }
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> pick(0, 2);  // skew homology toward 0
  std::vector<int> r, h;
  for (;;) {
    r.assign(static_cast<size_t>(n) + 2, 0);
    h.assign(static_cast<size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) r[static_cast<size_t>(i)] = bit(rng);
    for (int i = 0; i <= n; ++i) h[static_cast<size_t>(i)] = pick(rng) == 2;
    bool fits = true;
    for (int i = 0; i <= n && fits; ++i) {
      fits = r[static_cast<size_t>(i + 1)] + h[static_cast<size_t>(i)] +
                 r[static_cast<size_t>(i)] <=
             max_dim;
    }
    if (fits) break;
  }
  BasedChainComplex c = staircase_complex(tower, vars, r, h);
  scramble_basis(rng, c);
  return c;
}

TwistedSumSES random_twisted_sum(std::mt19937& rng,
                                 const BasedChainComplex& sub,
                                 const BasedChainComplex& quot) {
  if (sub.length() != quot.length()) {
    throw ValidationError("twisted sum needs complexes of equal length");
  }
  int n = sub.length();
  std::uniform_int_distribution<int> sparse(0, 2);
  std::vector<Matrix<RatFunc>> g;
  for (int i = 0; i <= n; ++i) {
    Matrix<RatFunc> gi = zeros(sub.dims.at(static_cast<size_t>(i)),
                               quot.dims.at(static_cast<size_t>(i)));
    for (int r = 0; r < gi.rows; ++r) {
      for (int c = 0; c < gi.cols; ++c) {
        if (sparse(rng) == 0) {
          gi.at(r, c) = random_unit_coeff(rng, sub.tower, sub.vars);
        }
      }
    }
    g.push_back(std::move(gi));
  }
  TwistedSumSES out;
  std::vector<int> dims;
  for (int i = 0; i <= n; ++i) {
    dims.push_back(sub.dims.at(static_cast<size_t>(i)) +
                   quot.dims.at(static_cast<size_t>(i)));
  }
  out.total.tower = sub.tower;
  out.total.vars = sub.vars;
  out.total.dims = dims;
  out.total.boundaries.push_back(zeros(0, dims.at(0)));
  for (int i = 1; i <= n; ++i) {
    const Matrix<RatFunc> ds = sub.d(i);
    const Matrix<RatFunc> dq = quot.d(i);
    Matrix<RatFunc> f = sub_mats(mul(ds, g[static_cast<size_t>(i)]),
                                 mul(g[static_cast<size_t>(i - 1)], dq));
    Matrix<RatFunc> d =
        zeros(dims[static_cast<size_t>(i - 1)], dims[static_cast<size_t>(i)]);
    int sr = ds.rows, sc = ds.cols;
    for (int r = 0; r < ds.rows; ++r) {
      for (int c = 0; c < ds.cols; ++c) d.at(r, c) = ds.at(r, c);
    }
    for (int r = 0; r < f.rows; ++r) {
      for (int c = 0; c < f.cols; ++c) d.at(r, sc + c) = f.at(r, c);
    }
    for (int r = 0; r < dq.rows; ++r) {
      for (int c = 0; c < dq.cols; ++c) d.at(sr + r, sc + c) = dq.at(r, c);
    }
    out.total.boundaries.push_back(std::move(d));
  }
  std::vector<std::vector<std::vector<RatFunc>>> bases;
  for (int i = 0; i <= n; ++i) {
    bases.push_back(homology_basis(out.total, i));
  }
  out.total.homology_bases = std::move(bases);
  RatFunc one = RatFunc::from_poly(
      LaurentPoly::constant(FieldScalar::one(sub.tower), sub.vars));
  for (int i = 0; i <= n; ++i) {
    int ds = sub.dims.at(static_cast<size_t>(i));
    int dq = quot.dims.at(static_cast<size_t>(i));
    Matrix<RatFunc> inc = zeros(ds + dq, ds);
    for (int r = 0; r < ds; ++r) inc.at(r, r) = one;
    Matrix<RatFunc> prj = zeros(dq, ds + dq);
    for (int r = 0; r < dq; ++r) prj.at(r, ds + r) = one;
    out.incl.push_back(std::move(inc));
    out.proj.push_back(std::move(prj));
  }
  return out;
}

}  // namespace torsionlab
