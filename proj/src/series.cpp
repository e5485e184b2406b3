#include "localpt/series.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace localpt {

namespace {

inline bool exps_less(const Exps& x, const Exps& y) { return std::memcmp(x.data(), y.data(), kMaxVars) < 0; }
inline bool exps_equal(const Exps& x, const Exps& y) { return std::memcmp(x.data(), y.data(), kMaxVars) == 0; }

void sort_and_merge(std::vector<TruncSeries::Term>& ts) {
  std::sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) { return exps_less(x.first, y.first); });
  std::vector<TruncSeries::Term> out;
  out.reserve(ts.size());
  for (auto& t : ts) {
    if (!out.empty() && exps_equal(out.back().first, t.first)) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second.is_zero()) out.pop_back();
  ts = std::move(out);
}

}  // namespace

// ---------------------------------------------------------------- VarSet

int VarSet::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (vars[i].name == name) return i;
  return -1;
}

int VarSet::index(const std::string& name) const {
  int i = find(name);
  if (i < 0) throw UnknownVariable(name);
  return i;
}

bool VarSet::admits(const Exps& e) const {
  int box = 0;
  for (int i = 0; i < size(); ++i) {
    if (e[i] > vars[i].order) return false;
    if (vars[i].box) box += e[i];
  }
  for (int i = size(); i < kMaxVars; ++i)
    if (e[i]) return false;
  return total_box_order < 0 || box <= total_box_order;
}

std::vector<int> VarSet::box_indices() const {
  std::vector<int> r;
  for (int i = 0; i < size(); ++i)
    if (vars[i].box) r.push_back(i);
  return r;
}

bool operator==(const VarSet& x, const VarSet& y) {
  if (x.total_box_order != y.total_box_order || x.vars.size() != y.vars.size()) return false;
  for (size_t i = 0; i < x.vars.size(); ++i)
    if (x.vars[i].name != y.vars[i].name || x.vars[i].order != y.vars[i].order || x.vars[i].box != y.vars[i].box)
      return false;
  return true;
}

VarSetBuilder& VarSetBuilder::boxes(const std::vector<std::string>& names, int total_order) {
  for (auto& n : names) vs_.vars.push_back({n, total_order, true});
  vs_.total_box_order = total_order;
  return *this;
}

VarSetBuilder& VarSetBuilder::var(const std::string& name, int order) {
  vs_.vars.push_back({name, order, false});
  return *this;
}

VarSetPtr VarSetBuilder::build() const {
  if (vs_.size() > kMaxVars) throw std::invalid_argument("too many series variables");
  for (int i = 0; i < vs_.size(); ++i) {
    if (vs_.vars[i].order < 0 || vs_.vars[i].order > 255) throw std::invalid_argument("bad truncation order");
    for (int j = 0; j < i; ++j)
      if (vs_.vars[i].name == vs_.vars[j].name) throw std::invalid_argument("duplicate variable " + vs_.vars[i].name);
  }
  return std::make_shared<const VarSet>(vs_);
}

// ---------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries(VarSetPtr vs, const RatFunc& c) : vs_(std::move(vs)) {
  if (!c.is_zero()) terms_.push_back({Exps{}, c});
}

TruncSeries TruncSeries::variable(VarSetPtr vs, const std::string& name, const RatFunc& c) {
  Exps e{};
  e[vs->index(name)] = 1;
  return monomial(std::move(vs), e, c);
}

TruncSeries TruncSeries::monomial(VarSetPtr vs, const Exps& e, const RatFunc& c) {
  TruncSeries s(std::move(vs));
  if (!c.is_zero() && s.vs_->admits(e)) s.terms_.push_back({e, c});
  return s;
}

TruncSeries TruncSeries::from_terms(VarSetPtr vs, std::vector<Term> terms) {
  TruncSeries s(std::move(vs));
  for (auto& t : terms)
    if (s.vs_->admits(t.first) && !t.second.is_zero()) s.terms_.push_back(std::move(t));
  sort_and_merge(s.terms_);
  return s;
}

RatFunc TruncSeries::coeff(const Exps& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exps& k) { return exps_less(t.first, k); });
  if (it != terms_.end() && exps_equal(it->first, e)) return it->second;
  return RatFunc();
}

RatFunc TruncSeries::constant_term() const {
  if (!terms_.empty() && exps_equal(terms_.front().first, Exps{})) return terms_.front().second;
  return RatFunc();
}

bool TruncSeries::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exps_equal(terms_.front().first, Exps{}));
}

void TruncSeries::check_compatible(const TruncSeries& o) const {
  if (vs_ == o.vs_) return;
  if (!vs_ || !o.vs_ || !(*vs_ == *o.vs_)) throw IncompatibleVarSets();
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  if (!vs_) {
    return *this = o;
  }
  if (!o.vs_) return *this;
  check_compatible(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && exps_less(terms_[i].first, o.terms_[j].first))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || exps_less(o.terms_[j].first, terms_[i].first)) {
      out.push_back(o.terms_[j++]);
    } else {
      Term t = std::move(terms_[i++]);
      t.second += o.terms_[j++].second;
      if (!t.second.is_zero()) out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) { return *this += -o; }

TruncSeries operator*(const TruncSeries& x, const TruncSeries& y) {
  if (!x.vs_) return x;
  if (!y.vs_) return y;
  x.check_compatible(y);
  TruncSeries r(x.vs_);
  if (x.terms_.empty() || y.terms_.empty()) return r;
  const VarSet& vs = *x.vs_;
  const int n = vs.size();
  std::vector<int> boxdeg_y(y.terms_.size());
  std::vector<int> box_idx = vs.box_indices();
  for (size_t j = 0; j < y.terms_.size(); ++j) {
    int s = 0;
    for (int b : box_idx) s += y.terms_[j].first[b];
    boxdeg_y[j] = s;
  }
  std::vector<TruncSeries::Term> acc;
  for (const auto& [ex, cx] : x.terms_) {
    int bx = 0;
    for (int b : box_idx) bx += ex[b];
    for (size_t j = 0; j < y.terms_.size(); ++j) {
      if (vs.total_box_order >= 0 && bx + boxdeg_y[j] > vs.total_box_order) continue;
      const Exps& ey = y.terms_[j].first;
      Exps e{};
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        int v = ex[i] + ey[i];
        if (v > vs.vars[i].order) {
          ok = false;
          break;
        }
        e[i] = uint8_t(v);
      }
      if (!ok) continue;
      acc.push_back({e, cx * y.terms_[j].second});
    }
  }
  sort_and_merge(acc);
  r.terms_ = std::move(acc);
  return r;
}

TruncSeries TruncSeries::scaled(const RatFunc& c) const {
  TruncSeries r(vs_);
  if (c.is_zero()) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

bool operator==(const TruncSeries& x, const TruncSeries& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  if (x.vs_ && y.vs_) x.check_compatible(y);
  for (size_t i = 0; i < x.terms_.size(); ++i)
    if (!exps_equal(x.terms_[i].first, y.terms_[i].first) || x.terms_[i].second != y.terms_[i].second) return false;
  return true;
}

TruncSeries TruncSeries::inverse() const {
  RatFunc c0 = constant_term();
  if (c0.is_zero()) throw NonInvertibleConstantTerm();
  RatFunc ic = c0.inverse();
  // s = c0 (1 + r), 1/s = ic * sum (-r)^k
  TruncSeries r = scaled(ic);
  r -= TruncSeries(vs_, RatFunc(1));
  TruncSeries neg_r = -r;
  TruncSeries acc(vs_, RatFunc(1)), term(vs_, RatFunc(1));
  for (;;) {
    term = term * neg_r;
    if (term.is_zero()) break;
    acc += term;
  }
  return acc.scaled(ic);
}

TruncSeries TruncSeries::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  TruncSeries r(vs_, RatFunc(1)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

TruncSeries TruncSeries::pd(const std::string& var) const { return pd(vs_->index(var)); }

TruncSeries TruncSeries::pd(int var) const {
  TruncSeries r(vs_);
  for (const auto& t : terms_)
    if (t.first[var]) r.terms_.push_back({t.first, t.second * RatFunc(long(t.first[var]))});
  return r;
}

TruncSeries TruncSeries::deriv(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (!t.first[var]) continue;
    Exps e = t.first;
    e[var]--;
    out.push_back({e, t.second * RatFunc(long(t.first[var]))});
  }
  return from_terms(vs_, std::move(out));
}

TruncSeries TruncSeries::negate_var(const std::string& var) const {
  int i = vs_->index(var);
  TruncSeries r = *this;
  for (auto& t : r.terms_)
    if (t.first[i] & 1) t.second = -t.second;
  return r;
}

TruncSeries TruncSeries::map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.first, f(t.second)});
  return from_terms(vs_, std::move(out));
}

TruncSeries TruncSeries::embed(const VarSetPtr& target) const {
  std::vector<int> map(vs_->size());
  for (int i = 0; i < vs_->size(); ++i) map[i] = target->index(vs_->vars[i].name);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Exps e{};
    for (int i = 0; i < vs_->size(); ++i) e[map[i]] = t.first[i];
    out.push_back({e, t.second});
  }
  return from_terms(target, std::move(out));
}

TruncSeries TruncSeries::specialize_boxes(const VarSetPtr& into, const std::string& target) const {
  int p = into->index(target);
  std::vector<int> map(vs_->size(), -1);
  for (int i = 0; i < vs_->size(); ++i)
    map[i] = vs_->vars[i].box ? p : into->index(vs_->vars[i].name);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    std::array<int, kMaxVars> e{};
    for (int i = 0; i < vs_->size(); ++i) e[map[i]] += t.first[i];
    Exps ee{};
    bool ok = true;
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[i] > 255) ok = false;
      ee[i] = uint8_t(e[i]);
    }
    if (ok) out.push_back({ee, t.second});
  }
  return from_terms(into, std::move(out));
}

TruncSeries TruncSeries::shifted(const std::vector<int>& sh) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Exps e = t.first;
    bool ok = true;
    for (size_t i = 0; i < sh.size(); ++i) {
      if (sh[i] < 0) throw std::invalid_argument("negative shift");
      int v = e[i] + sh[i];
      if (v > 255) ok = false;
      e[i] = uint8_t(v);
    }
    if (ok) out.push_back({e, t.second});
  }
  return from_terms(vs_, std::move(out));
}

TruncSeries TruncSeries::slice(int var, int k) const {
  TruncSeries r(vs_);
  for (const auto& t : terms_) {
    if (t.first[var] != k) continue;
    Exps e = t.first;
    e[var] = 0;
    r.terms_.push_back({e, t.second});
  }
  sort_and_merge(r.terms_);
  return r;
}

int TruncSeries::max_total_box_degree() const {
  int m = 0;
  auto idx = vs_->box_indices();
  for (const auto& t : terms_) {
    int s = 0;
    for (int b : idx) s += t.first[b];
    m = std::max(m, s);
  }
  return m;
}

std::string TruncSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int i = 0; i < vs_->size(); ++i) {
      if (!e[i]) continue;
      os << "*" << vs_->vars[i].name;
      if (e[i] > 1) os << "^" << int(e[i]);
    }
  }
  return os.str();
}

TruncSeries exp_linear(const std::string& zvar, const TruncSeries& body, int z_order) {
  const VarSetPtr& vs = body.varset();
  int zi = vs->index(zvar);
  for (const auto& t : body.terms())
    if (t.first[zi]) throw std::invalid_argument("exp_linear body involves " + zvar);
  TruncSeries z = TruncSeries::variable(vs, zvar);
  TruncSeries zb = z * body;
  TruncSeries acc(vs, RatFunc(1)), term(vs, RatFunc(1));
  for (int k = 1; k <= z_order; ++k) {
    term = (term * zb).scaled(RatFunc(BigRat(1, k)));
    if (term.is_zero()) break;
    acc += term;
  }
  return acc;
}

TruncSeries compose(const TruncSeries& p, const std::vector<TruncSeries>& values, const VarSetPtr& target) {
  const int n = p.varset()->size();
  if (int(values.size()) != n) throw std::invalid_argument("compose: wrong number of values");
  std::vector<std::vector<TruncSeries>> powers(n);
  for (int i = 0; i < n; ++i) powers[i].push_back(TruncSeries(target, RatFunc(1)));
  TruncSeries acc(target);
  for (const auto& [e, c] : p.terms()) {
    TruncSeries m(target, c);
    for (int i = 0; i < n; ++i) {
      while (int(powers[i].size()) <= e[i]) powers[i].push_back(powers[i].back() * values[i]);
      if (e[i]) m = m * powers[i][e[i]];
    }
    acc += m;
  }
  return acc;
}

// ---------------------------------------------------------------- ShiftedSeries

ShiftedSeries ShiftedSeries::unit(const TruncSeries& s) {
  return ShiftedSeries{std::vector<int>(s.varset()->size(), 0), s};
}

ShiftedSeries ShiftedSeries::operator*(const ShiftedSeries& o) const {
  ShiftedSeries r{shift, series * o.series};
  for (size_t i = 0; i < r.shift.size(); ++i) r.shift[i] += o.shift[i];
  return r;
}

ShiftedSeries ShiftedSeries::operator+(const ShiftedSeries& o) const {
  std::vector<int> m(shift.size()), d1(shift.size()), d2(shift.size());
  for (size_t i = 0; i < shift.size(); ++i) {
    m[i] = std::min(shift[i], o.shift[i]);
    d1[i] = shift[i] - m[i];
    d2[i] = o.shift[i] - m[i];
  }
  return ShiftedSeries{m, series.shifted(d1) + o.series.shifted(d2)};
}

ShiftedSeries ShiftedSeries::operator-() const { return ShiftedSeries{shift, -series}; }

ShiftedSeries ShiftedSeries::inverse() const {
  ShiftedSeries r{shift, series.inverse()};
  for (auto& x : r.shift) x = -x;
  return r;
}

ShiftedSeries ShiftedSeries::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  ShiftedSeries r{shift, series.pow(e)};
  for (auto& x : r.shift) x *= int(e);
  return r;
}

TruncSeries ShiftedSeries::as_series() const {
  for (int x : shift)
    if (x < 0) throw std::domain_error("series carries a negative monomial prefactor");
  return series.shifted(shift);
}

}  // namespace localpt
