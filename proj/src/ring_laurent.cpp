// Laurent polynomials over field towers, exact division, unit classes, and
// rational functions.  Term maps are kept in graded-lex order (later variable
// more significant) so the leading term is the last map entry.
#include <algorithm>
#include <cassert>
#include <sstream>

#include "torsionlab/ring.hpp"

namespace torsionlab {

int grlex_compare(const std::vector<int>& a, const std::vector<int>& b) {
  assert(a.size() == b.size());
  long ta = 0, tb = 0;
  for (int x : a) ta += x;
  for (int x : b) tb += x;
  if (ta != tb) return ta < tb ? -1 : 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

TowerPtr merge_towers(const TowerPtr& a, const TowerPtr& b) {
  if (a->same_as(*b) || a->extends(*b)) return a;
  if (b->extends(*a)) return b;
  throw IncompatibleTowers("values over unrelated towers");
}

// Ordered union: left list order, then unseen names from the right.
std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

void align_pair(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& la,
                LaurentPoly& lb) {
  TowerPtr t = merge_towers(a.tower(), b.tower());
  std::vector<std::string> vars = a.vars();
  if (a.vars() != b.vars()) vars = merge_vars(a.vars(), b.vars());
  la = a;
  lb = b;
  if (la.vars() != vars) la = la.with_vars(vars);
  if (lb.vars() != vars) lb = lb.with_vars(vars);
  if (!la.tower()->same_as(*t)) la = la.lift_to(t);
  if (!lb.tower()->same_as(*t)) lb = lb.lift_to(t);
}

}  // namespace

// ---- LaurentPoly -----------------------------------------------------------

LaurentPoly::LaurentPoly() : tower_(FieldTower::rationals()) {}

LaurentPoly LaurentPoly::zero(const TowerPtr& t,
                              std::vector<std::string> vars) {
  LaurentPoly p;
  p.tower_ = t;
  p.vars_ = std::move(vars);
  return p;
}

LaurentPoly LaurentPoly::constant(const FieldScalar& c,
                                  std::vector<std::string> vars) {
  LaurentPoly p = zero(c.tower(), std::move(vars));
  p.add_term(std::vector<int>(p.vars_.size(), 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const FieldScalar& c,
                                  std::vector<std::string> vars,
                                  std::vector<int> exps) {
  LaurentPoly p = zero(c.tower(), std::move(vars));
  if (exps.size() != p.vars_.size()) {
    throw TorsionError("monomial exponent vector has wrong length");
  }
  p.add_term(exps, c);
  return p;
}

LaurentPoly LaurentPoly::variable(const TowerPtr& t,
                                  std::vector<std::string> vars,
                                  const std::string& name) {
  LaurentPoly p = zero(t, std::move(vars));
  auto it = std::find(p.vars_.begin(), p.vars_.end(), name);
  if (it == p.vars_.end()) {
    throw TorsionError("variable not in list: " + name);
  }
  std::vector<int> e(p.vars_.size(), 0);
  e[it - p.vars_.begin()] = 1;
  p.add_term(e, FieldScalar::one(t));
  return p;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  for (int x : terms_.begin()->first) {
    if (x != 0) return false;
  }
  return true;
}

FieldScalar LaurentPoly::constant_value() const {
  if (terms_.empty()) return FieldScalar::zero(tower_);
  if (!is_constant()) throw TorsionError("polynomial is not constant: " + str());
  return terms_.begin()->second;
}

std::vector<int> LaurentPoly::min_exps() const {
  std::vector<int> m(vars_.size(), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    (void)c;
    if (first) {
      m = e;
      first = false;
    } else {
      for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    }
  }
  return m;
}

std::vector<int> LaurentPoly::max_exps() const {
  std::vector<int> m(vars_.size(), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    (void)c;
    if (first) {
      m = e;
      first = false;
    } else {
      for (size_t i = 0; i < m.size(); ++i) m[i] = std::max(m[i], e[i]);
    }
  }
  return m;
}

void LaurentPoly::add_term(const std::vector<int>& exps, const FieldScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, c);
  } else {
    FieldScalar s = it->second + c;
    if (s.is_zero()) {
      terms_.erase(it);
    } else {
      it->second = std::move(s);
    }
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly a, b;
  align_pair(*this, o, a, b);
  for (const auto& [e, c] : b.terms_) a.add_term(e, c);
  return a;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  return *this + (-o);
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly a, b;
  align_pair(*this, o, a, b);
  LaurentPoly out = zero(a.tower_, a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

LaurentPoly LaurentPoly::scale(const FieldScalar& c) const {
  if (c.is_zero()) return zero(tower_, vars_);
  LaurentPoly out = zero(tower_, vars_);
  for (const auto& [e, k] : terms_) out.add_term(e, k * c);
  return out;
}

LaurentPoly LaurentPoly::mul_monomial(const FieldScalar& c,
                                      const std::vector<int>& exps) const {
  if (c.is_zero()) return zero(tower_, vars_);
  if (exps.size() != vars_.size()) {
    throw TorsionError("monomial exponent vector has wrong length");
  }
  LaurentPoly out = zero(tower_, vars_);
  for (const auto& [e, k] : terms_) {
    std::vector<int> ne(e.size());
    for (size_t i = 0; i < e.size(); ++i) ne[i] = e[i] + exps[i];
    out.add_term(ne, k * c);
  }
  return out;
}

LaurentPoly LaurentPoly::pow(int e) const {
  if (e < 0) throw TorsionError("LaurentPoly::pow requires e >= 0");
  LaurentPoly r = constant(FieldScalar::one(tower_), vars_);
  LaurentPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    if (e >>= 1) base = base * base;
  }
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  LaurentPoly a, b;
  align_pair(*this, o, a, b);
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!ia->second.equals(ib->second)) return false;
  }
  return true;
}

LaurentPoly LaurentPoly::lift_to(const TowerPtr& target) const {
  LaurentPoly out = zero(target, vars_);
  for (const auto& [e, c] : terms_) out.add_term(e, c.lift_to(target));
  return out;
}

LaurentPoly LaurentPoly::with_vars(std::vector<std::string> new_vars) const {
  std::vector<int> idx(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
    if (it == new_vars.end()) {
      throw TorsionError("variable " + vars_[i] + " missing from new list");
    }
    idx[i] = static_cast<int>(it - new_vars.begin());
  }
  LaurentPoly out = zero(tower_, std::move(new_vars));
  for (const auto& [e, c] : terms_) {
    std::vector<int> ne(out.vars_.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) ne[idx[i]] = e[i];
    out.add_term(ne, c);
  }
  return out;
}

std::pair<std::vector<int>, FieldScalar> LaurentPoly::leading_term() const {
  if (terms_.empty()) throw TorsionError("zero polynomial has no leading term");
  auto it = std::prev(terms_.end());
  return {it->first, it->second};
}

std::string LaurentPoly::str(bool shift_to_min_zero) const {
  if (terms_.empty()) return "0";
  std::vector<int> shift(vars_.size(), 0);
  if (shift_to_min_zero) {
    shift = min_exps();
    for (auto& s : shift) s = -s;
  }
  std::ostringstream os;
  bool first = true;
  // Iterate descending graded-lex.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& e = it->first;
    const FieldScalar& c = it->second;
    std::string mono;
    for (size_t i = 0; i < vars_.size(); ++i) {
      int ex = e[i] + shift[i];
      if (ex == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (ex != 1) mono += "^" + std::to_string(ex);
    }
    std::string coeff;
    bool neg = false;
    if (c.is_rational()) {
      Rational r = c.as_rational();
      if (r < 0) {
        neg = true;
        r = -r;
      }
      std::ostringstream cs;
      cs << r;
      coeff = cs.str();
      if (coeff == "1" && !mono.empty()) coeff.clear();
    } else {
      coeff = "(" + c.str() + ")";
    }
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (coeff.empty()) {
      os << mono;
    } else if (mono.empty()) {
      os << coeff;
    } else {
      os << coeff << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

// ---- substitution ----------------------------------------------------------

LaurentPoly laurent_substitute(const LaurentPoly& p,
                               const std::map<std::string, SubstTarget>& subs,
                               std::vector<std::string> out_vars) {
  TowerPtr t = p.tower();
  for (const auto& [v, target] : subs) {
    (void)v;
    if (target.coeff.is_zero()) {
      throw TorsionError("substitution target is zero");
    }
    t = merge_towers(t, target.coeff.tower());
  }
  LaurentPoly out = LaurentPoly::zero(t, out_vars);
  const auto& vars = p.vars();
  // Pre-resolve each variable: coefficient and output exponent vector.
  std::vector<FieldScalar> coeffs;
  std::vector<std::vector<int>> monos;
  for (const auto& v : vars) {
    auto it = subs.find(v);
    if (it == subs.end()) {
      throw TorsionError("no substitution given for variable " + v);
    }
    coeffs.push_back(it->second.coeff.lift_to(t));
    std::vector<int> mono(out_vars.size(), 0);
    for (const auto& [ov, ex] : it->second.exps) {
      auto jt = std::find(out_vars.begin(), out_vars.end(), ov);
      if (jt == out_vars.end()) {
        throw TorsionError("substitution target uses unknown variable " + ov);
      }
      mono[jt - out_vars.begin()] = ex;
    }
    monos.push_back(std::move(mono));
  }
  for (const auto& [e, c] : p.terms()) {
    FieldScalar nc = c.lift_to(t);
    std::vector<int> ne(out_vars.size(), 0);
    for (size_t i = 0; i < vars.size(); ++i) {
      if (e[i] == 0) continue;
      nc = nc * coeffs[i].pow(e[i]);
      for (size_t j = 0; j < ne.size(); ++j) ne[j] += e[i] * monos[i][j];
    }
    out.add_term(ne, nc);
  }
  return out;
}

// ---- exact division --------------------------------------------------------

LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw DivisionByZero("divide_exact by zero");
  LaurentPoly a, b;
  align_pair(p, q, a, b);
  if (a.is_zero()) return LaurentPoly::zero(a.tower(), a.vars());

  std::vector<int> sp = a.min_exps();
  std::vector<int> sq = b.min_exps();
  auto shift = [](const LaurentPoly& x, const std::vector<int>& by) {
    std::vector<int> neg(by.size());
    for (size_t i = 0; i < by.size(); ++i) neg[i] = -by[i];
    return x.mul_monomial(FieldScalar::one(x.tower()), neg);
  };
  LaurentPoly rem = shift(a, sp);
  LaurentPoly div = shift(b, sq);

  auto [de, dc] = div.leading_term();
  LaurentPoly quot = LaurentPoly::zero(a.tower(), a.vars());
  while (!rem.is_zero()) {
    auto [re, rc] = rem.leading_term();
    std::vector<int> qe(re.size());
    bool ok = true;
    for (size_t i = 0; i < re.size(); ++i) {
      qe[i] = re[i] - de[i];
      if (qe[i] < 0) ok = false;
    }
    if (!ok) {
      // Restore the Laurent shift on the remainder for the witness.
      throw NonDivisible("not exactly divisible",
                         rem.mul_monomial(FieldScalar::one(rem.tower()), sp)
                             .str());
    }
    FieldScalar qc = rc / dc;
    quot.add_term(qe, qc);
    rem = rem - div.mul_monomial(qc, qe);
  }
  // Undo the min-exponent shifts: p/q = t^{sp - sq} * (p0/q0).
  std::vector<int> back(sp.size());
  for (size_t i = 0; i < sp.size(); ++i) back[i] = sp[i] - sq[i];
  return quot.mul_monomial(FieldScalar::one(quot.tower()), back);
}

// ---- unit classes ----------------------------------------------------------

UnitClass UnitClass::compose(const UnitClass& o) const {
  UnitClass u;
  u.sign_known = sign_known && o.sign_known;
  u.sign = sign * o.sign;
  u.shift = shift;
  if (u.shift.size() < o.shift.size()) u.shift.resize(o.shift.size(), 0);
  for (size_t i = 0; i < o.shift.size(); ++i) u.shift[i] += o.shift[i];
  return u;
}

std::string UnitClass::str(const std::vector<std::string>& vars) const {
  std::string mono;
  for (size_t i = 0; i < shift.size() && i < vars.size(); ++i) {
    if (shift[i] == 0) continue;
    if (!mono.empty()) mono += "*";
    mono += vars[i];
    if (shift[i] != 1) mono += "^" + std::to_string(shift[i]);
  }
  std::string s = sign_known ? (sign < 0 ? "-" : "+") : "+-";
  if (mono.empty()) mono = "1";
  return s + mono;
}

std::optional<UnitClass> unit_equivalent(const LaurentPoly& p,
                                         const LaurentPoly& q) {
  LaurentPoly a, b;
  align_pair(p, q, a, b);
  UnitClass u;
  u.shift.assign(a.vars().size(), 0);
  if (a.is_zero() && b.is_zero()) return u;
  if (a.is_zero() || b.is_zero()) return std::nullopt;

  std::vector<int> sp = a.min_exps();
  std::vector<int> sq = b.min_exps();
  auto shifted = [](const LaurentPoly& x, const std::vector<int>& by) {
    std::vector<int> neg(by.size());
    for (size_t i = 0; i < by.size(); ++i) neg[i] = -by[i];
    return x.mul_monomial(FieldScalar::one(x.tower()), neg);
  };
  LaurentPoly a0 = shifted(a, sp);
  LaurentPoly b0 = shifted(b, sq);
  for (size_t i = 0; i < sp.size(); ++i) u.shift[i] = sp[i] - sq[i];
  if (a0 == b0) {
    u.sign = 1;
    return u;
  }
  if (a0 == -b0) {
    u.sign = -1;
    return u;
  }
  return std::nullopt;
}

// ---- RatFunc ---------------------------------------------------------------

namespace {

// Univariate GCD by the Euclidean algorithm on min-0 representatives; returns
// a monic gcd.  Coefficient arithmetic is exact field arithmetic.
LaurentPoly upoly_gcd(LaurentPoly a, LaurentPoly b) {
  auto monic = [](const LaurentPoly& x) {
    if (x.is_zero()) return x;
    return x.scale(x.leading_term().second.inverse());
  };
  while (!b.is_zero()) {
    // a mod b by long division on leading terms.
    LaurentPoly r = a;
    auto [de, dc] = b.leading_term();
    while (!r.is_zero()) {
      auto [re, rc] = r.leading_term();
      if (re[0] < de[0]) break;
      std::vector<int> qe{re[0] - de[0]};
      r = r - b.mul_monomial(rc / dc, qe);
    }
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

}  // namespace

RatFunc::RatFunc() {
  num_ = LaurentPoly();
  den_ = LaurentPoly::constant(FieldScalar::one(FieldTower::rationals()), {});
}

RatFunc RatFunc::from_poly(LaurentPoly p) {
  RatFunc r;
  r.den_ = LaurentPoly::constant(FieldScalar::one(p.tower()), p.vars());
  r.num_ = std::move(p);
  return r;
}

RatFunc RatFunc::make(LaurentPoly num, LaurentPoly den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  LaurentPoly n, d;
  align_pair(num, den, n, d);
  RatFunc r;
  if (n.is_zero()) {
    r.num_ = n;
    r.den_ = LaurentPoly::constant(FieldScalar::one(n.tower()), n.vars());
    return r;
  }

  // Joint monomial shift: divide both by the gcd of their monomial contents.
  {
    std::vector<int> mn = n.min_exps();
    std::vector<int> md = d.min_exps();
    std::vector<int> s(mn.size());
    bool any = false;
    for (size_t i = 0; i < mn.size(); ++i) {
      s[i] = -std::min(mn[i], md[i]);
      any = any || s[i] != 0;
    }
    if (any) {
      n = n.mul_monomial(FieldScalar::one(n.tower()), s);
      d = d.mul_monomial(FieldScalar::one(d.tower()), s);
    }
  }

  if (d.is_constant()) {
    r.num_ = n.scale(d.constant_value().inverse());
    r.den_ = LaurentPoly::constant(FieldScalar::one(n.tower()), n.vars());
    return r;
  }

  if (n.vars().size() == 1) {
    // Univariate: cancel the polynomial GCD and make the denominator monic.
    // Coefficient inversion can fail in a reducible extension; fall back to
    // the unreduced fraction then (equality stays sound via cross-products).
    try {
      LaurentPoly n0 = n.mul_monomial(FieldScalar::one(n.tower()),
                                      {-n.min_exps()[0]});
      LaurentPoly d0 = d.mul_monomial(FieldScalar::one(d.tower()),
                                      {-d.min_exps()[0]});
      LaurentPoly g = upoly_gcd(n0, d0);
      if (!g.is_constant()) {
        n0 = divide_exact(n0, g);
        d0 = divide_exact(d0, g);
      }
      // Reapply the Laurent offset difference.
      int off = n.min_exps()[0] - d.min_exps()[0];
      LaurentPoly nn = n0.mul_monomial(FieldScalar::one(n0.tower()), {off});
      if (d0.is_constant()) {
        r.num_ = nn.scale(d0.constant_value().inverse());
        r.den_ = LaurentPoly::constant(FieldScalar::one(nn.tower()), nn.vars());
        return r;
      }
      FieldScalar lead = d0.leading_term().second;
      if (!lead.is_one()) {
        nn = nn.scale(lead.inverse());
        d0 = d0.scale(lead.inverse());
      }
      r.num_ = std::move(nn);
      r.den_ = std::move(d0);
      return r;
    } catch (const NotInvertible&) {
      r.num_ = std::move(n);
      r.den_ = std::move(d);
      return r;
    }
  }

  // Multivariate: probe exact division.
  try {
    LaurentPoly q = divide_exact(n, d);
    r.num_ = std::move(q);
    r.den_ = LaurentPoly::constant(FieldScalar::one(r.num_.tower()),
                                   r.num_.vars());
    return r;
  } catch (const NonDivisible&) {
  } catch (const NotInvertible&) {
  }
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  return r;
}

bool RatFunc::is_poly() const { return den_.is_constant(); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return make(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw DivisionByZero("rational function division by zero");
  return make(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  return make(den_, num_);
}

RatFunc RatFunc::scale(const FieldScalar& c) const {
  return make(num_.scale(c), den_);
}

std::string RatFunc::str() const {
  if (is_poly()) {
    FieldScalar c = den_.constant_value();
    if (c.is_one()) return num_.str();
  }
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

bool ratfunc_eq(const RatFunc& a, const RatFunc& b) {
  return a.num() * b.den() == b.num() * a.den();
}

std::optional<UnitClass> unit_equivalent(const RatFunc& a, const RatFunc& b) {
  return unit_equivalent(a.num() * b.den(), b.num() * a.den());
}

}  // namespace torsionlab
