#include "localpt/exact.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace localpt {

std::string to_string(const BigRat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRat parse_bigrat(const std::string& s) {
  BigRat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw DivisionByZero();
  q.canonicalize();
  return q;
}

namespace {

inline uint64_t key_of(uint32_t a, uint32_t b) { return (uint64_t(a + b) << 32) | a; }
inline uint64_t key_of(const Poly2::Term& t) { return key_of(t.a, t.b); }

}  // namespace

// ---------------------------------------------------------------- Poly2

Poly2::Poly2(long c) {
  if (c != 0) terms_.push_back({0, 0, BigRat(c)});
}

Poly2::Poly2(const BigRat& c) {
  if (c != 0) terms_.push_back({0, 0, c});
}

Poly2 Poly2::monomial(uint32_t a, uint32_t b, const BigRat& c) {
  Poly2 p;
  if (c != 0) p.terms_.push_back({a, b, c});
  return p;
}

Poly2 Poly2::from_terms(std::vector<Term> terms) {
  Poly2 p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly2::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return key_of(x) > key_of(y); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().a == t.a && out.back().b == t.b) {
      out.back().c += t.c;
    } else {
      if (!out.empty() && out.back().c == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().c == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Poly2::is_one() const {
  return terms_.size() == 1 && terms_[0].a == 0 && terms_[0].b == 0 && terms_[0].c == 1;
}

bool Poly2::is_homogeneous() const {
  if (terms_.empty()) return true;
  uint32_t d = terms_.front().a + terms_.front().b;
  return terms_.back().a + terms_.back().b == d;
}

BigRat Poly2::constant_value() const {
  if (terms_.empty()) return 0;
  const Term& t = terms_.back();
  return (t.a == 0 && t.b == 0) ? t.c : BigRat(0);
}

uint32_t Poly2::degree_t1() const {
  uint32_t d = 0;
  for (auto& t : terms_) d = std::max(d, t.a);
  return d;
}

uint32_t Poly2::degree_t2() const {
  uint32_t d = 0;
  for (auto& t : terms_) d = std::max(d, t.b);
  return d;
}

uint32_t Poly2::min_t1() const {
  uint32_t d = UINT32_MAX;
  for (auto& t : terms_) d = std::min(d, t.a);
  return terms_.empty() ? 0 : d;
}

uint32_t Poly2::min_t2() const {
  uint32_t d = UINT32_MAX;
  for (auto& t : terms_) d = std::min(d, t.b);
  return terms_.empty() ? 0 : d;
}

Poly2 Poly2::operator-() const {
  Poly2 r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

static void merge_into(std::vector<Poly2::Term>& x, const std::vector<Poly2::Term>& y, bool subtract) {
  std::vector<Poly2::Term> out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && key_of(x[i]) > key_of(y[j]))) {
      out.push_back(std::move(x[i++]));
    } else if (i == x.size() || key_of(y[j]) > key_of(x[i])) {
      out.push_back(y[j]);
      if (subtract) out.back().c = -out.back().c;
      ++j;
    } else {
      Poly2::Term t = std::move(x[i++]);
      if (subtract) t.c -= y[j].c; else t.c += y[j].c;
      ++j;
      if (t.c != 0) out.push_back(std::move(t));
    }
  }
  x = std::move(out);
}

Poly2& Poly2::operator+=(const Poly2& o) {
  if (o.terms_.empty()) return *this;
  merge_into(terms_, o.terms_, false);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  if (o.terms_.empty()) return *this;
  merge_into(terms_, o.terms_, true);
  return *this;
}

Poly2 operator*(const Poly2& x, const Poly2& y) {
  Poly2 r;
  if (x.terms_.empty() || y.terms_.empty()) return r;
  if (x.terms_.size() == 1 || y.terms_.size() == 1) {
    const Poly2& m = x.terms_.size() == 1 ? x : y;
    const Poly2& o = x.terms_.size() == 1 ? y : x;
    const Poly2::Term& t = m.terms_[0];
    r.terms_.reserve(o.terms_.size());
    for (auto& s : o.terms_) r.terms_.push_back({s.a + t.a, s.b + t.b, s.c * t.c});
    return r;
  }
  r.terms_.reserve(x.terms_.size() * y.terms_.size());
  for (auto& s : x.terms_)
    for (auto& t : y.terms_) r.terms_.push_back({s.a + t.a, s.b + t.b, s.c * t.c});
  r.normalize();
  return r;
}

Poly2 Poly2::scaled(const BigRat& s) const {
  if (s == 0) return Poly2();
  Poly2 r = *this;
  for (auto& t : r.terms_) t.c *= s;
  return r;
}

Poly2 Poly2::shifted_down(uint32_t da, uint32_t db) const {
  Poly2 r = *this;
  for (auto& t : r.terms_) {
    if (t.a < da || t.b < db) throw std::domain_error("negative exponent");
    t.a -= da;
    t.b -= db;
  }
  return r;
}

bool operator==(const Poly2& x, const Poly2& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  for (size_t i = 0; i < x.terms_.size(); ++i) {
    const auto& s = x.terms_[i];
    const auto& t = y.terms_[i];
    if (s.a != t.a || s.b != t.b || s.c != t.c) return false;
  }
  return true;
}

Poly2 exact_div(const Poly2& x, const Poly2& y) {
  if (y.is_zero()) throw DivisionByZero();
  if (y.is_one()) return x;
  if (y.is_monomial()) {
    const auto& t = y.terms_[0];
    BigRat inv = 1 / t.c;
    Poly2 r = x.shifted_down(t.a, t.b);
    for (auto& s : r.terms_) s.c *= inv;
    return r;
  }
  const Poly2::Term& ly = y.terms_.front();
  BigRat inv = 1 / ly.c;
  std::vector<Poly2::Term> q;
  Poly2 r = x;
  while (!r.is_zero()) {
    const Poly2::Term& lr = r.terms_.front();
    if (lr.a < ly.a || lr.b < ly.b) throw std::domain_error("inexact polynomial division");
    Poly2::Term t{lr.a - ly.a, lr.b - ly.b, lr.c * inv};
    Poly2 sub;
    sub.terms_.reserve(y.terms_.size());
    for (auto& s : y.terms_) sub.terms_.push_back({s.a + t.a, s.b + t.b, s.c * t.c});
    r -= sub;
    q.push_back(std::move(t));
  }
  Poly2 out;
  out.terms_ = std::move(q);
  return out;
}

BigRat Poly2::eval(const BigRat& x1, const BigRat& x2) const {
  BigRat s = 0;
  std::map<uint32_t, BigRat> p1, p2;
  auto pw = [](std::map<uint32_t, BigRat>& cache, const BigRat& x, uint32_t e) -> const BigRat& {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    BigRat v = 1;
    for (uint32_t i = 0; i < e; ++i) v *= x;
    return cache.emplace(e, v).first->second;
  };
  for (auto& t : terms_) s += t.c * pw(p1, x1, t.a) * pw(p2, x2, t.b);
  return s;
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    BigRat c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool mono = t.a || t.b;
    if (!mono || c != 1) {
      os << c.get_str();
      if (mono) os << "*";
    }
    if (t.a) {
      os << "t1";
      if (t.a > 1) os << "^" << t.a;
      if (t.b) os << "*";
    }
    if (t.b) {
      os << "t2";
      if (t.b > 1) os << "^" << t.b;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- gcd

namespace detail {

template <class R>
struct UPoly {
  std::vector<R> c;
};

inline bool rzero(const mpz_class& x) { return sgn(x) == 0; }
inline int rsign(const mpz_class& x) { return sgn(x); }
inline mpz_class rgcd(const mpz_class& x, const mpz_class& y) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g;
}
inline mpz_class rdiv(const mpz_class& x, const mpz_class& y) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return q;
}
inline bool runit(const mpz_class& x) { return x == 1 || x == -1; }
inline mpz_class rneg(const mpz_class& x) { return -x; }

template <class R> bool rzero(const UPoly<R>& p) { return p.c.empty(); }
template <class R> int rsign(const UPoly<R>& p) { return rsign(p.c.back()); }
template <class R> bool runit(const UPoly<R>& p) { return p.c.size() == 1 && runit(p.c[0]); }
template <class R> UPoly<R> rneg(const UPoly<R>& p);
template <class R> UPoly<R> rgcd(const UPoly<R>& x, const UPoly<R>& y);
template <class R> UPoly<R> rdiv(const UPoly<R>& x, const UPoly<R>& y);
template <class R> UPoly<R> operator*(const UPoly<R>& x, const UPoly<R>& y);
template <class R> UPoly<R> operator-(const UPoly<R>& x, const UPoly<R>& y);
template <class R> UPoly<R> operator+(const UPoly<R>& x, const UPoly<R>& y);

template <class R>
void trim(UPoly<R>& p) {
  while (!p.c.empty() && rzero(p.c.back())) p.c.pop_back();
}

template <class R>
UPoly<R> rneg(const UPoly<R>& p) {
  UPoly<R> r = p;
  for (auto& x : r.c) x = rneg(x);
  return r;
}

template <class R>
UPoly<R> operator*(const UPoly<R>& x, const UPoly<R>& y) {
  UPoly<R> r;
  if (x.c.empty() || y.c.empty()) return r;
  r.c.assign(x.c.size() + y.c.size() - 1, R());
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (rzero(x.c[i])) continue;
    for (size_t j = 0; j < y.c.size(); ++j) {
      if (rzero(y.c[j])) continue;
      if (rzero(r.c[i + j])) r.c[i + j] = x.c[i] * y.c[j];
      else r.c[i + j] = r.c[i + j] + x.c[i] * y.c[j];
    }
  }
  trim(r);
  return r;
}

template <class R>
UPoly<R> operator+(const UPoly<R>& x, const UPoly<R>& y) {
  UPoly<R> r = x;
  if (r.c.size() < y.c.size()) r.c.resize(y.c.size(), R());
  for (size_t i = 0; i < y.c.size(); ++i) r.c[i] = r.c[i] + y.c[i];
  trim(r);
  return r;
}

template <class R>
UPoly<R> operator-(const UPoly<R>& x, const UPoly<R>& y) {
  UPoly<R> r = x;
  if (r.c.size() < y.c.size()) r.c.resize(y.c.size(), R());
  for (size_t i = 0; i < y.c.size(); ++i) r.c[i] = r.c[i] - y.c[i];
  trim(r);
  return r;
}

template <class R>
UPoly<R> scale(const UPoly<R>& p, const R& s) {
  UPoly<R> r;
  r.c.reserve(p.c.size());
  for (auto& x : p.c) r.c.push_back(x * s);
  trim(r);
  return r;
}

template <class R>
UPoly<R> divide_scalar(const UPoly<R>& p, const R& s) {
  if (runit(s) && rsign(s) > 0) return p;
  UPoly<R> r;
  r.c.reserve(p.c.size());
  for (auto& x : p.c) r.c.push_back(rzero(x) ? x : rdiv(x, s));
  return r;
}

template <class R>
R content(const UPoly<R>& p) {
  R g;
  bool first = true;
  for (auto& x : p.c) {
    if (rzero(x)) continue;
    g = first ? (rsign(x) < 0 ? rneg(x) : x) : rgcd(g, x);
    first = false;
    if (runit(g)) break;
  }
  return g;
}

template <class R>
UPoly<R> primitive(const UPoly<R>& p) {
  if (p.c.empty()) return p;
  UPoly<R> r = divide_scalar(p, content(p));
  if (rsign(r.c.back()) < 0) r = rneg(r);
  return r;
}

template <class R>
UPoly<R> prem(const UPoly<R>& a, const UPoly<R>& b) {
  UPoly<R> r = a;
  const size_t db = b.c.size() - 1;
  const R& lb = b.c.back();
  long e = long(a.c.size()) - long(db);
  while (!r.c.empty() && r.c.size() - 1 >= db) {
    size_t shift = r.c.size() - 1 - db;
    R lr = r.c.back();
    UPoly<R> t = scale(r, lb);
    for (size_t i = 0; i <= db; ++i) t.c[i + shift] = t.c[i + shift] - lr * b.c[i];
    trim(t);
    r = std::move(t);
    --e;
  }
  for (long i = 0; i < e; ++i) r = scale(r, lb);
  return r;
}

template <class R>
UPoly<R> rgcd(const UPoly<R>& x, const UPoly<R>& y) {
  if (x.c.empty()) return (y.c.empty() || rsign(y.c.back()) > 0) ? y : rneg(y);
  if (y.c.empty()) return rgcd(y, x);
  R cg = rgcd(content(x), content(y));
  UPoly<R> p = primitive(x), q = primitive(y);
  if (p.c.size() < q.c.size()) std::swap(p, q);
  while (!q.c.empty()) {
    if (q.c.size() == 1) {
      p = q;
      break;
    }
    UPoly<R> r = prem(p, q);
    p = std::move(q);
    q = primitive(r);
  }
  p = primitive(p);
  return scale(p, cg);
}

// Exact division in R[x]; caller guarantees divisibility.
template <class R>
UPoly<R> rdiv(const UPoly<R>& x, const UPoly<R>& y) {
  if (y.c.size() == 1) return divide_scalar(x, y.c[0]);
  UPoly<R> r = x, q;
  if (r.c.size() < y.c.size()) {
    if (!r.c.empty()) throw std::domain_error("inexact division");
    return q;
  }
  q.c.assign(r.c.size() - y.c.size() + 1, R());
  const R& ly = y.c.back();
  while (!r.c.empty() && r.c.size() >= y.c.size()) {
    size_t shift = r.c.size() - y.c.size();
    R t = rdiv(r.c.back(), ly);
    q.c[shift] = t;
    for (size_t i = 0; i < y.c.size(); ++i) r.c[i + shift] = r.c[i + shift] - t * y.c[i];
    trim(r);
  }
  if (!r.c.empty()) throw std::domain_error("inexact division");
  trim(q);
  return q;
}

using UZ = UPoly<mpz_class>;
using UZZ = UPoly<UZ>;

mpz_class denominator_lcm(const Poly2& p) {
  mpz_class l = 1;
  for (auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  return l;
}

mpz_class scaled_num(const BigRat& c, const mpz_class& l) { return c.get_num() * (l / c.get_den()); }

// Homogeneous f of degree n with no t1 or t2 factor -> f(x, 1).
UZ dehomogenize(const Poly2& p) {
  mpz_class l = denominator_lcm(p);
  UZ r;
  r.c.assign(p.degree_t1() + 1, mpz_class(0));
  for (auto& t : p.terms()) r.c[t.a] = scaled_num(t.c, l);
  trim(r);
  return r;
}

Poly2 homogenize(const UZ& f) {
  std::vector<Poly2::Term> terms;
  uint32_t n = f.c.size() - 1;
  for (uint32_t a = 0; a <= n; ++a)
    if (sgn(f.c[a]) != 0) terms.push_back({a, n - a, BigRat(f.c[a])});
  return Poly2::from_terms(std::move(terms));
}

UZZ to_uzz(const Poly2& p) {
  mpz_class l = denominator_lcm(p);
  UZZ r;
  r.c.assign(p.degree_t1() + 1, UZ());
  for (auto& t : p.terms()) {
    UZ& u = r.c[t.a];
    if (u.c.size() <= t.b) u.c.resize(t.b + 1, mpz_class(0));
    u.c[t.b] = scaled_num(t.c, l);
  }
  for (auto& u : r.c) trim(u);
  trim(r);
  return r;
}

Poly2 from_uzz(const UZZ& f) {
  std::vector<Poly2::Term> terms;
  for (uint32_t a = 0; a < f.c.size(); ++a)
    for (uint32_t b = 0; b < f.c[a].c.size(); ++b)
      if (sgn(f.c[a].c[b]) != 0) terms.push_back({a, b, BigRat(f.c[a].c[b])});
  return Poly2::from_terms(std::move(terms));
}

Poly2 make_monic(const Poly2& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading_coeff());
}

}  // namespace detail

Poly2 gcd(const Poly2& x, const Poly2& y) {
  using namespace detail;
  if (x.is_zero()) return make_monic(y);
  if (y.is_zero()) return make_monic(x);
  if (x.is_constant() || y.is_constant()) return Poly2(1);
  uint32_t ma = std::min(x.min_t1(), y.min_t1());
  uint32_t mb = std::min(x.min_t2(), y.min_t2());
  Poly2 mono = Poly2::monomial(ma, mb);
  if (x.is_monomial() || y.is_monomial()) return mono;
  Poly2 xr = x.shifted_down(x.min_t1(), x.min_t2());
  Poly2 yr = y.shifted_down(y.min_t1(), y.min_t2());
  if (xr.is_constant() || yr.is_constant()) return mono;
  Poly2 g;
  if (xr.is_homogeneous() && yr.is_homogeneous()) {
    g = homogenize(rgcd(dehomogenize(xr), dehomogenize(yr)));
  } else {
    g = from_uzz(rgcd(to_uzz(xr), to_uzz(yr)));
  }
  return make_monic(g * mono);
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Poly2& num, const Poly2& den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    den_ = Poly2(1);
    return;
  }
  if (den.is_constant()) {
    num_ = num.scaled(1 / den.constant_value());
    den_ = Poly2(1);
    return;
  }
  Poly2 g = gcd(num, den);
  if (g.is_one()) {
    num_ = num;
    den_ = den;
  } else {
    num_ = exact_div(num, g);
    den_ = exact_div(den, g);
  }
  canonicalize_sign();
}

void RatFunc::canonicalize_sign() {
  if (num_.is_zero()) {
    den_ = Poly2(1);
    return;
  }
  const BigRat& lc = den_.leading_coeff();
  if (lc != 1) {
    BigRat inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

BigRat RatFunc::constant_value() const {
  if (!is_constant()) throw std::domain_error("not a constant: " + to_string());
  return num_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    Poly2 n = num_ + o.num_;
    *this = RatFunc(n, den_);
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    return *this;
  }
  Poly2 g = gcd(den_, o.den_);
  if (g.is_one()) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    if (num_.is_zero()) den_ = Poly2(1);
    return *this;
  }
  Poly2 b1 = exact_div(den_, g), d1 = exact_div(o.den_, g);
  Poly2 n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) {
    num_ = Poly2();
    den_ = Poly2(1);
    return *this;
  }
  Poly2 g2 = gcd(n, g);
  if (g2.is_one()) {
    num_ = std::move(n);
    den_ = b1 * o.den_;
  } else {
    num_ = exact_div(n, g2);
    den_ = b1 * exact_div(o.den_, g2);
  }
  canonicalize_sign();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc();
  if (o.is_constant()) {
    num_ = num_.scaled(o.num_.constant_value());
    return *this;
  }
  if (is_constant()) {
    BigRat c = num_.constant_value();
    *this = o;
    num_ = num_.scaled(c);
    return *this;
  }
  Poly2 a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    Poly2 g1 = gcd(a, d);
    if (!g1.is_one()) {
      a = exact_div(a, g1);
      d = exact_div(d, g1);
    }
  }
  if (!b.is_one()) {
    Poly2 g2 = gcd(c, b);
    if (!g2.is_one()) {
      c = exact_div(c, g2);
      b = exact_div(b, g2);
    }
  }
  num_ = a * c;
  den_ = b * d;
  canonicalize_sign();
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero();
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  r.canonicalize_sign();
  return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DivisionByZero();
  return *this *= o.inverse();
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  auto wrap = [](const Poly2& p) {
    std::string s = p.to_string();
    return p.terms().size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

RatFunc substitute_poly(const Poly2& p, const Substitution& s) {
  RatFunc x1 = s.has_t1 ? s.t1 : RatFunc::t1();
  RatFunc x2 = s.has_t2 ? s.t2 : RatFunc::t2();
  std::vector<RatFunc> p1{RatFunc(1)}, p2{RatFunc(1)};
  RatFunc acc;
  for (auto& t : p.terms()) {
    while (p1.size() <= t.a) p1.push_back(p1.back() * x1);
    while (p2.size() <= t.b) p2.push_back(p2.back() * x2);
    acc += RatFunc(t.c) * p1[t.a] * p2[t.b];
  }
  return acc;
}

RatFunc substitute(const RatFunc& f, const Substitution& s) {
  RatFunc d = substitute_poly(f.den(), s);
  if (d.is_zero()) throw SpecializationPole();
  return substitute_poly(f.num(), s) / d;
}

BigRat random_rational(std::mt19937_64& rng, long range) {
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  long n = 0;
  while (n == 0) n = num(rng);
  BigRat q(n, den(rng));
  q.canonicalize();
  return q;
}

Weights Weights::at(const BigRat& a, const BigRat& b) {
  Weights w;
  w.t1 = RatFunc(a);
  w.t2 = RatFunc(b);
  return w;
}

Weights Weights::probe(uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    BigRat a = random_rational(rng, 997), b = random_rational(rng, 997);
    bool ok = true;
    for (long i = -12; i <= 12 && ok; ++i)
      for (long j = -12; j <= 12 && ok; ++j)
        if ((i || j) && i * a + j * b == 0) ok = false;
    if (ok) return at(a, b);
  }
}

}  // namespace localpt
