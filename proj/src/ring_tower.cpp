// Field towers and scalars: polynomial maps over [algebraic | parameter]
// exponent layouts, triangular reduction modulo the minimal polynomials, and
// best-effort fraction normalization (exact inversion of parameter-free
// denominators in the finite-dimensional algebra).
#include <algorithm>
#include <cassert>
#include <climits>
#include <sstream>

#include "torsionlab/ring.hpp"

namespace torsionlab {

namespace {

// ---- raw PolyMap arithmetic ------------------------------------------------

void padd_into(PolyMap& a, const PolyMap& b) {
  for (const auto& [e, c] : b) {
    auto it = a.find(e);
    if (it == a.end()) {
      a.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) a.erase(it);
    }
  }
}

void padd_term(PolyMap& a, const ExpVec& e, const Rational& c) {
  if (c == 0) return;
  auto it = a.find(e);
  if (it == a.end()) {
    a.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) a.erase(it);
  }
}

PolyMap pneg(PolyMap a) {
  for (auto& [e, c] : a) c = -c;
  return a;
}

PolyMap pmul(const PolyMap& a, const PolyMap& b) {
  PolyMap out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      ExpVec e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      padd_term(out, e, ca * cb);
    }
  }
  return out;
}

PolyMap pscale(PolyMap a, const Rational& r) {
  if (r == 0) return {};
  for (auto& [e, c] : a) c *= r;
  return a;
}

PolyMap pconst(int nsyms, const Rational& r) {
  PolyMap m;
  if (r != 0) m.emplace(ExpVec(nsyms, 0), r);
  return m;
}

// Remap exponent vectors onto a new symbol layout; index_map[i_old] = i_new.
PolyMap premap(const PolyMap& m, const std::vector<int>& index_map,
               int new_size) {
  PolyMap out;
  for (const auto& [e, c] : m) {
    ExpVec ne(new_size, 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) ne[index_map[i]] = e[i];
    }
    padd_term(out, ne, c);
  }
  return out;
}

// Reduce every algebraic exponent below its level's degree.  Processing from
// the top level down terminates in one pass per level because a power rule
// only involves strictly lower symbols.
PolyMap preduce(PolyMap m, const FieldTower& tower) {
  for (int lvl = tower.num_algebraic() - 1; lvl >= 0; --lvl) {
    const auto& level = tower.levels()[lvl];
    PolyMap next;
    for (const auto& [e, c] : m) {
      if (e[lvl] < level.degree) {
        padd_term(next, e, c);
        continue;
      }
      int q = e[lvl] / level.degree;
      int r = e[lvl] % level.degree;
      // rule^q, computed by repeated multiplication (q is small in practice).
      PolyMap rulepow = pconst(static_cast<int>(e.size()), 1);
      for (int k = 0; k < q; ++k) rulepow = pmul(rulepow, level.power_rule);
      ExpVec base = e;
      base[lvl] = r;
      PolyMap term;
      term.emplace(base, c);
      padd_into(next, pmul(term, rulepow));
    }
    m = std::move(next);
  }
  return m;
}

Rational rational_content(const PolyMap& m) {
  // gcd of numerators over lcm of denominators, as a positive rational.
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : m) {
    mpz_class n = c.get_num();
    mpz_class d = c.get_den();
    mpz_abs(n.get_mpz_t(), n.get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  if (num_gcd == 0) return Rational(1);
  Rational r(num_gcd, den_lcm);
  r.canonicalize();
  return r;
}

int total_degree(const ExpVec& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}

// Graded-lex over the tower's symbols, later symbol more significant.
bool sym_grlex_less(const ExpVec& a, const ExpVec& b) {
  int ta = total_degree(a), tb = total_degree(b);
  if (ta != tb) return ta < tb;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

const std::pair<const ExpVec, Rational>& poly_leading(const PolyMap& m) {
  assert(!m.empty());
  auto best = m.begin();
  for (auto it = std::next(m.begin()); it != m.end(); ++it) {
    if (sym_grlex_less(best->first, it->first)) best = it;
  }
  return *best;
}

bool has_param_exponent(const PolyMap& m, const FieldTower& tower) {
  for (const auto& [e, c] : m) {
    (void)c;
    for (int i = tower.num_algebraic(); i < tower.num_symbols(); ++i) {
      if (e[i] != 0) return true;
    }
  }
  return false;
}

// Exact division of free polynomials (no use of the tower relations): returns
// the quotient when the remainder is zero, nullopt otherwise.  Sound as a
// best-effort simplifier: a free-polynomial identity holds a fortiori in the
// quotient ring.
std::optional<PolyMap> pdiv_exact(const PolyMap& num, const PolyMap& den) {
  if (den.empty()) return std::nullopt;
  PolyMap rem = num, quot;
  const auto& [de, dc] = poly_leading(den);
  int guard = 0;
  while (!rem.empty()) {
    if (++guard > 20000) return std::nullopt;
    const auto& [re, rc] = poly_leading(rem);
    ExpVec qe(re.size());
    for (size_t i = 0; i < re.size(); ++i) {
      qe[i] = re[i] - de[i];
      if (qe[i] < 0) return std::nullopt;
    }
    Rational qc = rc / dc;
    padd_term(quot, qe, qc);
    PolyMap t;
    t.emplace(qe, qc);
    padd_into(rem, pneg(pmul(t, den)));
  }
  return quot;
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Pretty-print a reduced PolyMap as a sum of monomials, graded-lex descending.
std::string poly_str(const PolyMap& m, const FieldTower& tower) {
  if (m.empty()) return "0";
  std::vector<const std::pair<const ExpVec, Rational>*> terms;
  terms.reserve(m.size());
  for (const auto& t : m) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(),
            [](auto* a, auto* b) { return sym_grlex_less(b->first, a->first); });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : terms) {
    Rational c = t->second;
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) c = -c;
    std::string mono;
    for (size_t i = 0; i < t->first.size(); ++i) {
      if (t->first[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += tower.symbol_name(static_cast<int>(i));
      if (t->first[i] != 1) mono += "^" + std::to_string(t->first[i]);
    }
    if (mono.empty()) {
      os << rational_str(c);
    } else if (c == 1) {
      os << mono;
    } else {
      os << rational_str(c) << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

}  // namespace

// ---- FieldTower ------------------------------------------------------------

TowerPtr FieldTower::rationals() {
  static TowerPtr q = std::make_shared<FieldTower>();
  return q;
}

const std::string& FieldTower::symbol_name(int i) const {
  if (i < num_algebraic()) return levels_[i].symbol;
  return params_[i - num_algebraic()];
}

int FieldTower::symbol_index(const std::string& name) const {
  for (int i = 0; i < num_algebraic(); ++i) {
    if (levels_[i].symbol == name) return i;
  }
  for (int i = 0; i < num_params(); ++i) {
    if (params_[i] == name) return num_algebraic() + i;
  }
  return -1;
}

bool FieldTower::same_as(const FieldTower& other) const {
  if (this == &other) return true;
  if (params_ != other.params_) return false;
  if (levels_.size() != other.levels_.size()) return false;
  for (size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].symbol != other.levels_[i].symbol ||
        levels_[i].degree != other.levels_[i].degree ||
        levels_[i].power_rule != other.levels_[i].power_rule) {
      return false;
    }
  }
  return true;
}

bool FieldTower::extends(const FieldTower& other) const {
  if (other.levels_.size() > levels_.size()) return false;
  if (other.params_.size() > params_.size()) return false;
  for (size_t i = 0; i < other.levels_.size(); ++i) {
    if (levels_[i].symbol != other.levels_[i].symbol ||
        levels_[i].degree != other.levels_[i].degree) {
      return false;
    }
  }
  for (size_t i = 0; i < other.params_.size(); ++i) {
    if (params_[i] != other.params_[i]) return false;
  }
  return true;
}

TowerPtr FieldTower::with_params(const std::vector<std::string>& names) const {
  auto t = std::make_shared<FieldTower>();
  t->params_ = params_;
  for (const auto& n : names) {
    if (symbol_index(n) >= 0 ||
        std::find(t->params_.begin(), t->params_.end(), n) != t->params_.end()) {
      throw TorsionError("duplicate symbol name: " + n);
    }
    t->params_.push_back(n);
  }
  // Parameters are appended at the end of the layout, so existing power rules
  // keep their indices and only need padding.
  const int new_size = num_algebraic() + static_cast<int>(t->params_.size());
  std::vector<int> idmap(num_symbols());
  for (int i = 0; i < num_symbols(); ++i) idmap[i] = i;
  t->levels_ = levels_;
  for (auto& lvl : t->levels_) {
    lvl.power_rule = premap(lvl.power_rule, idmap, new_size);
  }
  return t;
}

TowerPtr adjoin_extension(const TowerPtr& tower, const std::string& symbol,
                          const std::vector<FieldScalar>& minpoly) {
  if (minpoly.size() < 3) {
    throw TorsionError("minimal polynomial must have degree >= 2");
  }
  const int degree = static_cast<int>(minpoly.size()) - 1;
  if (!minpoly.back().is_one()) {
    throw TorsionError("minimal polynomial must be monic");
  }
  if (tower->symbol_index(symbol) >= 0) {
    throw TorsionError("symbol already used in tower: " + symbol);
  }

  auto t = std::make_shared<FieldTower>();
  t->params_ = tower->params();
  t->levels_ = tower->levels();

  // The new algebraic symbol is inserted between the old algebraic block and
  // the parameter block, shifting parameter indices up by one.
  const int old_alg = tower->num_algebraic();
  const int new_size = tower->num_symbols() + 1;
  std::vector<int> idmap(tower->num_symbols());
  for (int i = 0; i < tower->num_symbols(); ++i) {
    idmap[i] = i < old_alg ? i : i + 1;
  }
  for (auto& lvl : t->levels_) {
    lvl.power_rule = premap(lvl.power_rule, idmap, new_size);
  }

  FieldTower::Level lvl;
  lvl.symbol = symbol;
  lvl.degree = degree;
  for (int k = 0; k < degree; ++k) {
    FieldScalar c = minpoly[k].lift_to(tower);
    if (!c.denominator_is_one()) {
      throw TorsionError(
          "minimal polynomial coefficient not expressible at the current "
          "level: " +
          c.str());
    }
    PolyMap part = premap(c.num(), idmap, new_size);
    if (k > 0) {
      PolyMap shifted;
      for (const auto& [e, r] : part) {
        ExpVec e2 = e;
        e2[static_cast<size_t>(old_alg)] += k;
        shifted[e2] = r;
      }
      part = std::move(shifted);
    }
    padd_into(lvl.power_rule, pscale(part, -1));
  }
  t->levels_.push_back(std::move(lvl));
  return t;
}

std::vector<Rational> cyclotomic_polynomial(int m) {
  if (m <= 0) throw TorsionError("cyclotomic_polynomial requires m >= 1");
  // x^m - 1 divided by the product of the lower cyclotomics Phi_d, d | m.
  std::vector<Rational> q(m + 1, Rational(0));
  q[0] = -1;
  q[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    std::vector<Rational> phi = cyclotomic_polynomial(d);
    // Exact long division q / phi (phi is monic).
    std::vector<Rational> out(q.size() - phi.size() + 1, Rational(0));
    std::vector<Rational> rem = q;
    for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
      Rational c = rem[i + phi.size() - 1];
      out[i] = c;
      if (c == 0) continue;
      for (size_t j = 0; j < phi.size(); ++j) rem[i + j] -= c * phi[j];
    }
    q = std::move(out);
  }
  return q;
}

// ---- FieldScalar -----------------------------------------------------------

FieldScalar::FieldScalar() : tower_(FieldTower::rationals()) {
  den_ = pconst(0, 1);
}

FieldScalar::FieldScalar(TowerPtr t, PolyMap num, PolyMap den)
    : tower_(std::move(t)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

FieldScalar FieldScalar::zero(const TowerPtr& t) {
  return FieldScalar(t, {}, pconst(t->num_symbols(), 1));
}

FieldScalar FieldScalar::one(const TowerPtr& t) {
  return from_rational(t, Rational(1));
}

FieldScalar FieldScalar::from_rational(const TowerPtr& t, const Rational& r) {
  return FieldScalar(t, pconst(t->num_symbols(), r),
                     pconst(t->num_symbols(), 1));
}

FieldScalar FieldScalar::integer(const TowerPtr& t, long v) {
  return from_rational(t, Rational(v));
}

FieldScalar FieldScalar::symbol(const TowerPtr& t, const std::string& name) {
  int idx = t->symbol_index(name);
  if (idx < 0) throw TorsionError("unknown symbol: " + name);
  PolyMap m;
  ExpVec e(t->num_symbols(), 0);
  e[idx] = 1;
  m.emplace(e, Rational(1));
  return FieldScalar(t, std::move(m), pconst(t->num_symbols(), 1));
}

FieldScalar FieldScalar::fraction(const TowerPtr& t, PolyMap num, PolyMap den) {
  return FieldScalar(t, std::move(num), std::move(den));
}

bool FieldScalar::is_one() const {
  return denominator_is_one() && num_ == pconst(tower_->num_symbols(), 1);
}

bool FieldScalar::denominator_is_one() const {
  return den_ == pconst(tower_->num_symbols(), 1);
}

bool FieldScalar::is_rational() const {
  auto constant = [&](const PolyMap& m) {
    if (m.empty()) return true;
    if (m.size() != 1) return false;
    return total_degree(m.begin()->first) == 0;
  };
  return constant(num_) && constant(den_);
}

Rational FieldScalar::as_rational() const {
  if (!is_rational()) throw TorsionError("scalar is not rational: " + str());
  Rational n = num_.empty() ? Rational(0) : num_.begin()->second;
  Rational d = den_.begin()->second;
  Rational r = n / d;
  r.canonicalize();
  return r;
}

bool FieldScalar::equals(const FieldScalar& other) const {
  if (tower_->same_as(*other.tower_)) {
    PolyMap lhs = preduce(pmul(num_, other.den_), *tower_);
    PolyMap rhs = preduce(pmul(other.num_, den_), *tower_);
    return lhs == rhs;
  }
  // Lift onto the larger tower when one extends the other.
  if (tower_->extends(*other.tower_)) return equals(other.lift_to(tower_));
  if (other.tower_->extends(*tower_)) return lift_to(other.tower_).equals(other);
  throw IncompatibleTowers("comparing scalars over unrelated towers");
}

namespace {

// Shared binary-op tower alignment.
void align(const FieldScalar& a, const FieldScalar& b, FieldScalar& la,
           FieldScalar& lb) {
  if (a.tower()->same_as(*b.tower())) {
    la = a;
    lb = b;
  } else if (a.tower()->extends(*b.tower())) {
    la = a;
    lb = b.lift_to(a.tower());
  } else if (b.tower()->extends(*a.tower())) {
    la = a.lift_to(b.tower());
    lb = b;
  } else {
    throw IncompatibleTowers("arithmetic on scalars over unrelated towers");
  }
}

}  // namespace

FieldScalar FieldScalar::operator-() const {
  FieldScalar r = *this;
  r.num_ = pneg(r.num_);
  return r;
}

FieldScalar FieldScalar::operator+(const FieldScalar& o) const {
  FieldScalar a, b;
  align(*this, o, a, b);
  PolyMap n = pmul(a.num_, b.den_);
  padd_into(n, pmul(b.num_, a.den_));
  return FieldScalar(a.tower_, std::move(n), pmul(a.den_, b.den_));
}

FieldScalar FieldScalar::operator-(const FieldScalar& o) const {
  return *this + (-o);
}

FieldScalar FieldScalar::operator*(const FieldScalar& o) const {
  FieldScalar a, b;
  align(*this, o, a, b);
  return FieldScalar(a.tower_, pmul(a.num_, b.num_), pmul(a.den_, b.den_));
}

FieldScalar FieldScalar::operator/(const FieldScalar& o) const {
  if (o.is_zero()) throw DivisionByZero("scalar division by zero");
  FieldScalar a, b;
  align(*this, o, a, b);
  return FieldScalar(a.tower_, pmul(a.num_, b.den_), pmul(a.den_, b.num_));
}

FieldScalar FieldScalar::inverse() const {
  return one(tower_) / *this;
}

FieldScalar FieldScalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  FieldScalar r = one(tower_);
  FieldScalar base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

FieldScalar FieldScalar::lift_to(const TowerPtr& target) const {
  if (tower_->same_as(*target)) {
    FieldScalar r = *this;
    r.tower_ = target;
    return r;
  }
  if (!target->extends(*tower_)) {
    throw IncompatibleTowers("cannot lift scalar onto unrelated tower");
  }
  std::vector<int> idmap(tower_->num_symbols());
  for (int i = 0; i < tower_->num_symbols(); ++i) {
    idmap[i] = target->symbol_index(tower_->symbol_name(i));
  }
  return FieldScalar(target, premap(num_, idmap, target->num_symbols()),
                     premap(den_, idmap, target->num_symbols()));
}

FieldScalar FieldScalar::substitute_params(
    const std::map<std::string, FieldScalar>& vals,
    const TowerPtr& target) const {
  auto subst_poly = [&](const PolyMap& m) {
    FieldScalar acc = FieldScalar::zero(target);
    for (const auto& [e, c] : m) {
      FieldScalar term = FieldScalar::from_rational(target, c);
      for (int i = 0; i < tower_->num_symbols(); ++i) {
        if (e[i] == 0) continue;
        const std::string& name = tower_->symbol_name(i);
        auto it = vals.find(name);
        FieldScalar base = it != vals.end()
                               ? it->second.lift_to(target)
                               : FieldScalar::symbol(target, name);
        term = term * base.pow(e[i]);
      }
      acc = acc + term;
    }
    return acc;
  };
  FieldScalar n = subst_poly(num_);
  FieldScalar d = subst_poly(den_);
  return n / d;  // DivisionByZero when the point kills the denominator
}

void FieldScalar::normalize() {
  const int nsyms = tower_->num_symbols();
  num_ = preduce(std::move(num_), *tower_);
  den_ = preduce(std::move(den_), *tower_);
  if (den_.empty()) throw DivisionByZero("scalar with zero denominator");
  if (num_.empty()) {
    den_ = pconst(nsyms, 1);
    return;
  }

  // Cancel the common monomial factor (componentwise min of the two minimum
  // exponent vectors); common factors are regular here.
  {
    ExpVec mn(nsyms, INT_MAX);
    auto fold = [&](const PolyMap& m) {
      for (const auto& [e, c] : m) {
        (void)c;
        for (int i = 0; i < nsyms; ++i) mn[i] = std::min(mn[i], e[i]);
      }
    };
    fold(num_);
    fold(den_);
    bool any = false;
    for (int i = 0; i < nsyms; ++i) any = any || mn[i] > 0;
    if (any) {
      auto shift = [&](PolyMap& m) {
        PolyMap out;
        for (const auto& [e, c] : m) {
          ExpVec ne = e;
          for (int i = 0; i < nsyms; ++i) ne[i] -= mn[i];
          out.emplace(ne, c);
        }
        m = std::move(out);
      };
      shift(num_);
      shift(den_);
    }
  }

  // Scale so the denominator is primitive with positive leading coefficient.
  {
    Rational c = rational_content(den_);
    if (poly_leading(den_).second < 0) c = -c;
    if (c != 1) {
      den_ = pscale(std::move(den_), Rational(1) / c);
      num_ = pscale(std::move(num_), Rational(1) / c);
    }
  }

  // Rational denominator folds away entirely.
  if (den_.size() == 1 && total_degree(den_.begin()->first) == 0) {
    Rational d = den_.begin()->second;
    if (d != 1) num_ = pscale(std::move(num_), Rational(1) / d);
    den_ = pconst(nsyms, 1);
    return;
  }

  // Parameter-free denominator: invert exactly in the finite-dimensional
  // algebra spanned by the reduced algebraic monomials.
  if (!has_param_exponent(den_, *tower_)) {
    const int nalg = tower_->num_algebraic();
    std::vector<ExpVec> basis;
    {
      ExpVec cur(nsyms, 0);
      // Enumerate all reduced algebraic exponent patterns.
      long dim = 1;
      for (int i = 0; i < nalg; ++i) dim *= tower_->levels()[i].degree;
      basis.reserve(dim);
      std::vector<int> idx(nalg, 0);
      for (long k = 0; k < dim; ++k) {
        ExpVec e(nsyms, 0);
        long rest = k;
        for (int i = 0; i < nalg; ++i) {
          e[i] = static_cast<int>(rest % tower_->levels()[i].degree);
          rest /= tower_->levels()[i].degree;
        }
        basis.push_back(e);
      }
      (void)cur;
    }
    const int dim = static_cast<int>(basis.size());
    std::map<ExpVec, int> basis_index;
    for (int i = 0; i < dim; ++i) basis_index.emplace(basis[i], i);

    // Columns: den * basis monomial, expanded over the basis.
    std::vector<std::vector<Rational>> mat(dim,
                                           std::vector<Rational>(dim, 0));
    for (int j = 0; j < dim; ++j) {
      PolyMap bj;
      bj.emplace(basis[j], Rational(1));
      PolyMap prod = preduce(pmul(den_, bj), *tower_);
      for (const auto& [e, c] : prod) mat[basis_index.at(e)][j] = c;
    }
    std::vector<Rational> rhs(dim, 0);
    rhs[basis_index.at(ExpVec(nsyms, 0))] = 1;

    // Gaussian elimination over Q.
    std::vector<int> piv_col(dim, -1);
    int row = 0;
    for (int col = 0; col < dim && row < dim; ++col) {
      int sel = -1;
      for (int r = row; r < dim; ++r) {
        if (mat[r][col] != 0) {
          sel = r;
          break;
        }
      }
      if (sel < 0) continue;
      std::swap(mat[sel], mat[row]);
      std::swap(rhs[sel], rhs[row]);
      Rational p = mat[row][col];
      for (int c2 = col; c2 < dim; ++c2) mat[row][c2] /= p;
      rhs[row] /= p;
      for (int r = 0; r < dim; ++r) {
        if (r == row || mat[r][col] == 0) continue;
        Rational f = mat[r][col];
        for (int c2 = col; c2 < dim; ++c2) mat[r][c2] -= f * mat[row][c2];
        rhs[r] -= f * rhs[row];
      }
      piv_col[row] = col;
      ++row;
    }
    // Solve; inconsistency means den is a zero divisor.
    std::vector<Rational> x(dim, 0);
    for (int r = 0; r < dim; ++r) {
      if (piv_col[r] >= 0) {
        x[piv_col[r]] = rhs[r];
      } else if (rhs[r] != 0) {
        throw NotInvertible(
            "denominator is a zero divisor in a reducible extension: " +
            poly_str(den_, *tower_));
      }
    }
    PolyMap inv;
    for (int j = 0; j < dim; ++j) padd_term(inv, basis[j], x[j]);
    num_ = preduce(pmul(num_, inv), *tower_);
    den_ = pconst(nsyms, 1);
    return;
  }

  // Mixed / parameter denominator: probe exact free-polynomial division.
  if (auto q = pdiv_exact(num_, den_)) {
    num_ = preduce(std::move(*q), *tower_);
    den_ = pconst(nsyms, 1);
  }
}

std::string FieldScalar::str() const {
  if (denominator_is_one()) return poly_str(num_, *tower_);
  std::string n = poly_str(num_, *tower_);
  std::string d = poly_str(den_, *tower_);
  return "(" + n + ")/(" + d + ")";
}

}  // namespace torsionlab
