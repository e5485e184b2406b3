#include "localpt/locoracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace localpt {

SymClass::SymClass(int factors, int genus) : n_(factors), g_(genus) {
  if (factors < 0 || genus < 0 || 2 * factors * genus > 64)
    throw MalformedIntegrand("too many odd generators");
}

SymClass SymClass::scalar(int factors, int genus, const RatFunc& c) {
  SymClass s(factors, genus);
  if (!c.is_zero()) s.terms_[Key{std::vector<int>(factors, 0), 0}] = c;
  return s;
}

SymClass SymClass::u(int factors, int genus, int i) {
  if (i < 0 || i >= factors) throw MalformedIntegrand("factor index out of range");
  SymClass s(factors, genus);
  Key k{std::vector<int>(factors, 0), 0};
  k.u[i] = 1;
  s.terms_[k] = RatFunc(1);
  return s;
}

SymClass SymClass::alpha(int factors, int genus, int l, int i) {
  if (i < 0 || i >= factors || l < 1 || l > genus) throw MalformedIntegrand("odd class index out of range");
  SymClass s(factors, genus);
  s.terms_[Key{std::vector<int>(factors, 0), uint64_t(1) << s.bit(l, i, 0)}] = RatFunc(1);
  return s;
}

SymClass SymClass::beta(int factors, int genus, int l, int i) {
  if (i < 0 || i >= factors || l < 1 || l > genus) throw MalformedIntegrand("odd class index out of range");
  SymClass s(factors, genus);
  s.terms_[Key{std::vector<int>(factors, 0), uint64_t(1) << s.bit(l, i, 1)}] = RatFunc(1);
  return s;
}

SymClass SymClass::theta(int factors, int genus, int k, int l) {
  SymClass s(factors, genus);
  for (int j = 1; j <= genus; ++j) s += alpha(factors, genus, j, k) * beta(factors, genus, j, l);
  return s;
}

SymClass& SymClass::operator+=(const SymClass& o) {
  for (const auto& [k, c] : o.terms_) {
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

SymClass SymClass::multiply(const SymClass& o, const std::vector<int>& caps) const {
  SymClass out(n_, g_);
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      if (ka.odd & kb.odd) continue;
      Key k{ka.u, ka.odd | kb.odd};
      bool keep = true;
      for (int i = 0; i < n_; ++i) {
        k.u[i] += kb.u[i];
        if (!caps.empty() && k.u[i] > caps[i]) keep = false;
      }
      if (!keep) continue;
      // move each generator of the right factor past the larger ones of the left factor
      int swaps = 0;
      for (uint64_t rest = kb.odd; rest; rest &= rest - 1) {
        int y = std::countr_zero(rest);
        swaps += std::popcount(y == 63 ? uint64_t(0) : ka.odd >> (y + 1));
      }
      RatFunc c = ca * cb;
      if (swaps % 2) c = -c;
      SymClass t(n_, g_);
      t.terms_[k] = c;
      out += t;
    }
  return out;
}

SymClass SymClass::scaled(const RatFunc& c) const {
  SymClass out(n_, g_);
  if (c.is_zero()) return out;
  for (const auto& [k, v] : terms_) out.terms_[k] = v * c;
  return out;
}

RatFunc SymClass::integrate(const std::vector<int>& sizes) const {
  if (int(sizes.size()) != n_) throw MalformedIntegrand("size tuple does not match the factor count");
  RatFunc acc(0);
  for (const auto& [k, c] : terms_) {
    bool ok = true;
    for (int i = 0; i < n_ && ok; ++i) {
      int pairs = 0;
      for (int l = 1; l <= g_; ++l) {
        bool a = k.odd >> bit(l, i, 0) & 1, b = k.odd >> bit(l, i, 1) & 1;
        if (a != b) ok = false;
        pairs += a;
      }
      if (k.u[i] + pairs != sizes[i]) ok = false;
    }
    if (ok) acc += c;
  }
  return acc;
}

void validate(const SymIntegrand& s) {
  int n = int(s.sizes.size());
  if (s.genus < 0) throw MalformedIntegrand("negative genus");
  if (int(s.u_powers.size()) != n) throw MalformedIntegrand("u-power tuple does not match the factor count");
  if (int(s.alpha.size()) > s.genus || int(s.beta.size()) > s.genus)
    throw MalformedIntegrand("more odd class lists than the genus");
  auto check = [&](int i) {
    if (i < 0 || i >= n) throw MalformedIntegrand("factor index out of range");
  };
  for (const auto& v : s.alpha)
    for (int i : v) check(i);
  for (const auto& v : s.beta)
    for (int i : v) check(i);
  for (auto [a, b] : s.theta) {
    check(a);
    check(b);
  }
  if (!s.z.empty()) {
    if (int(s.z.size()) != n) throw MalformedIntegrand("exponent matrix has the wrong size");
    for (const auto& row : s.z)
      if (int(row.size()) != n) throw MalformedIntegrand("exponent matrix has the wrong size");
  }
  for (int x : s.sizes)
    if (x < 0) throw MalformedIntegrand("negative size");
  for (int x : s.u_powers)
    if (x < 0) throw MalformedIntegrand("negative u-power");
}

namespace {

const std::vector<int>& list_or_empty(const std::vector<std::vector<int>>& v, int l) {
  static const std::vector<int> empty;
  return l < int(v.size()) ? v[l] : empty;
}

RatFunc z_entry(const SymIntegrand& s, int i, int j) { return s.z.empty() ? RatFunc(0) : s.z[i][j]; }

}  // namespace

RatFunc sym_integral(const SymIntegrand& s) {
  validate(s);
  int n = int(s.sizes.size()), g = s.genus;
  for (int l = 0; l < g; ++l)
    if (list_or_empty(s.alpha, l).size() != list_or_empty(s.beta, l).size()) return RatFunc(0);
  for (int i = 0; i < n; ++i)
    if (s.u_powers[i] > s.sizes[i]) return RatFunc(0);
  int t = int(s.theta.size());
  if (g == 0 && t > 0) return RatFunc(0);
  if (n == 0) return s.coeff;

  VarSetBuilder b;
  for (int i = 0; i < n; ++i) b.var("u" + std::to_string(i), s.sizes[i]);
  VarSetPtr vs = b.build();
  std::vector<TruncSeries> u;
  for (int i = 0; i < n; ++i) u.push_back(TruncSeries::variable(vs, "u" + std::to_string(i)));

  // I + U Z^T, whose determinant is prod u * det M
  SeriesMatrix k(n, std::vector<TruncSeries>(n, TruncSeries(vs)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      k[i][j] = u[i].scaled(z_entry(s, j, i));
      if (i == j) k[i][j] += TruncSeries(vs, RatFunc(1));
    }
  TruncSeries det = determinant(k, vs);
  SeriesMatrix minv;
  bool minors = t > 0;
  for (int l = 0; l < g; ++l) minors = minors || !list_or_empty(s.alpha, l).empty();
  if (minors) {
    minv = inverse(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) minv[i][j] *= u[j];
  }

  Exps e{};
  for (int i = 0; i < n; ++i) e[i] = uint8_t(s.u_powers[i]);
  TruncSeries base = TruncSeries::monomial(vs, e, RatFunc(1)) * det.pow(g);

  TruncSeries sum(vs);
  std::vector<int> assign(t, 0);
  for (;;) {
    TruncSeries term = base;
    for (int l = 0; l < g && !term.is_zero(); ++l) {
      std::vector<int> rows = list_or_empty(s.alpha, l), cols = list_or_empty(s.beta, l);
      for (int q = 0; q < t; ++q)
        if (assign[q] == l) {
          rows.push_back(s.theta[q].first);
          cols.push_back(s.theta[q].second);
        }
      if (!rows.empty()) term *= determinant_expansion(submatrix(minv, rows, cols), vs);
    }
    sum += term;
    int q = 0;
    while (q < t && ++assign[q] == g) assign[q++] = 0;
    if (q == t) break;
  }
  Exps m{};
  for (int i = 0; i < n; ++i) m[i] = uint8_t(s.sizes[i]);
  RatFunc out = sum.coeff(m) * s.coeff;
  int sign_exp = 0;
  for (int l = 0; l < g; ++l) {
    int r = int(list_or_empty(s.alpha, l).size());
    sign_exp += r * (r - 1) / 2;
  }
  return sign_exp % 2 ? -out : out;
}

SymClass to_sym_class(const SymIntegrand& s) {
  validate(s);
  int n = int(s.sizes.size()), g = s.genus;
  const std::vector<int>& caps = s.sizes;
  SymClass c = SymClass::scalar(n, g, s.coeff);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < s.u_powers[i]; ++k) c = c.multiply(SymClass::u(n, g, i), caps);
  for (int l = 0; l < g; ++l) {
    for (int i : list_or_empty(s.alpha, l)) c = c.multiply(SymClass::alpha(n, g, l + 1, i), caps);
    for (int i : list_or_empty(s.beta, l)) c = c.multiply(SymClass::beta(n, g, l + 1, i), caps);
  }
  for (auto [a, b] : s.theta) c = c.multiply(SymClass::theta(n, g, a, b), caps);
  // exp of a sum of square-zero even elements
  for (int j = 1; j <= g; ++j)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        RatFunc zab = z_entry(s, a, b);
        if (zab.is_zero()) continue;
        SymClass f = SymClass::scalar(n, g, RatFunc(1)) +
                     (SymClass::alpha(n, g, j, a) * SymClass::beta(n, g, j, b)).scaled(zab);
        c = c.multiply(f, caps);
      }
  return c;
}

RatFunc sym_integral_bruteforce(const SymIntegrand& s) { return to_sym_class(s).integrate(s.sizes); }

FactorProduct abar_factors(const Partition& lambda) {
  auto bs = boxes_of(lambda);
  int d = int(bs.size());
  FactorProduct f;
  for (int p = 0; p < d; ++p) {
    if (p != 0) f.mul({0, 0, p, -1}, 1);
    f.mul({1, 1, -1, p}, 1);
  }
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
          if (bs[q].i == bs[p].i + a && bs[q].j == bs[p].j + b) continue;
          f.mul({a, b, q, p}, (a + b) % 2 ? 1 : -1);
        }
  return f;
}

FactorProduct bbar_factors(const Partition& lambda, int direction) {
  if (direction != 1 && direction != 2) throw std::invalid_argument("direction must be 1 or 2");
  auto bs = boxes_of(lambda);
  int d = int(bs.size());
  auto coord = [&](int box) { return direction == 1 ? bs[box].i : bs[box].j; };
  FactorProduct f;
  for (int p = 0; p < d; ++p) {
    if (coord(p) != 0) f.mul({0, 0, p, -1}, coord(p));
    f.mul({1, 1, -1, p}, -(coord(p) + 1));
  }
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
          int e = coord(p) - coord(q) + (direction == 1 ? a : b);
          if (e == 0) continue;
          f.mul({a, b, q, p}, (a + b) % 2 ? -e : e);
        }
  return f;
}

std::vector<TruncSeries> ybar(const Partition& lambda, const std::vector<SkewShape>& shapes, const VarSetPtr& vs,
                              const Weights& w) {
  auto bs = boxes_of(lambda);
  std::vector<TruncSeries> y;
  for (size_t p = 0; p < bs.size(); ++p) {
    TruncSeries v(vs, -RatFunc(bs[p].i) * w.t1 - RatFunc(bs[p].j) * w.t2);
    for (size_t a = 0; a < shapes.size(); ++a)
      if (std::find(shapes[a].box_ids.begin(), shapes[a].box_ids.end(), int(p)) != shapes[a].box_ids.end()) {
        Exps e{};
        e[a] = 1;
        v += TruncSeries::monomial(vs, e, RatFunc(1));
      }
    y.push_back(v);
  }
  return y;
}

VarSetPtr descendent_varset(const std::vector<Insertion>& ins, const Orders& o) {
  VarSetBuilder b;
  for (const Insertion& x : ins) b.var(x.zvar, o.z);
  return b.build();
}

namespace {

// z E(z, y_b) for every box b
std::vector<TruncSeries> scaled_e(const std::string& z, const std::vector<TruncSeries>& y, int z_order,
                                  const Weights& w) {
  const VarSetPtr& vs = y.front().varset();
  std::vector<int> sh(vs->size(), 0);
  sh[vs->index(z)] = 1;
  std::vector<TruncSeries> out;
  for (const TruncSeries& yb : y) out.push_back(e_factor(z, yb, z_order, w).shifted(sh));
  return out;
}

bool contains(const SkewShape& s, int box) {
  return std::find(s.box_ids.begin(), s.box_ids.end(), box) != s.box_ids.end();
}

}  // namespace

TruncSeries skew_bracket(const SeriesMatrix& inv_skew, const std::vector<SkewShape>& shapes,
                         const std::vector<std::pair<std::string, std::string>>& zw_pairs,
                         const std::vector<std::string>& x_list, const std::vector<TruncSeries>& y, int z_order,
                         const Weights& w) {
  const VarSetPtr& vs = y.front().varset();
  int ns = int(shapes.size()), d = int(y.size());
  int m = int(zw_pairs.size()), n = int(x_list.size());
  if (m == 0 && n == 0) return TruncSeries(vs, RatFunc(1));

  // weights of a shape (or a pair of shapes) summed over the admissible box choices
  std::vector<std::vector<TruncSeries>> rw(m), cw(m);
  for (int i = 0; i < m; ++i) {
    auto ez = scaled_e(zw_pairs[i].first, y, z_order, w);
    auto ew = scaled_e(zw_pairs[i].second, y, z_order, w);
    for (int a = 0; a < ns; ++a) {
      TruncSeries r(vs), c(vs);
      for (int b = 0; b < d; ++b)
        if (contains(shapes[a], b)) {
          r += ez[b];
          c += ew[b];
        }
      rw[i].push_back(r);
      cw[i].push_back(c);
    }
  }
  std::vector<std::vector<std::vector<TruncSeries>>> xw(n);
  for (int k = 0; k < n; ++k) {
    auto ex = scaled_e(x_list[k], y, z_order, w);
    xw[k].assign(ns, std::vector<TruncSeries>(ns, TruncSeries(vs)));
    for (int a = 0; a < ns; ++a)
      for (int a2 = 0; a2 < ns; ++a2)
        for (int b = 0; b < d; ++b)
          if (contains(shapes[a], b) && contains(shapes[a2], b)) xw[k][a][a2] += ex[b];
  }

  int slots = 2 * m + 2 * n;
  std::vector<int> choice(slots, 0);
  TruncSeries acc(vs);
  for (;;) {
    TruncSeries weight(vs, RatFunc(1));
    std::vector<int> rows, cols;
    for (int i = 0; i < m && !weight.is_zero(); ++i) {
      weight *= rw[i][choice[2 * i]] * cw[i][choice[2 * i + 1]];
      rows.push_back(choice[2 * i]);
      cols.push_back(choice[2 * i + 1]);
    }
    for (int k = 0; k < n && !weight.is_zero(); ++k) {
      int a = choice[2 * m + 2 * k], a2 = choice[2 * m + 2 * k + 1];
      weight *= xw[k][a][a2];
      rows.push_back(a);
      cols.push_back(a2);
    }
    if (!weight.is_zero()) acc += weight * determinant_expansion(submatrix(inv_skew, rows, cols), vs);
    int q = 0;
    while (q < slots && ++choice[q] == ns) choice[q++] = 0;
    if (q == slots) break;
  }
  return n % 2 ? -acc : acc;
}

TruncSeries pbar_lambda(const Geometry& geom, const CanonicalInsertions& ins, const Partition& lambda,
                        const SkewMultiplicity& m, const Orders& o, const Weights& w) {
  VarSetPtr dvs = descendent_varset(ins.list, o);
  if (ins.vanishes) return TruncSeries(dvs);
  auto shapes = connected_skew_shapes(lambda);
  int ns = int(shapes.size()), d = size_of(lambda), g = geom.g;
  if (int(m.size()) != ns) throw std::invalid_argument("multiplicity tuple does not match the skew shapes");
  if (ns + int(ins.list.size()) > kMaxVars) throw std::invalid_argument("too many variables for the oracle");

  VarSetBuilder b;
  for (int a = 0; a < ns; ++a) b.var("u" + std::to_string(a), m[a]);
  for (const Insertion& x : ins.list) b.var(x.zvar, o.z);
  VarSetPtr vs = b.build();
  TruncSeries one(vs, RatFunc(1));
  auto y = ybar(lambda, shapes, vs, w);
  auto bs = boxes_of(lambda);

  std::vector<TruncSeries> fbar, fbar_inv;
  for (int a = 0; a < ns; ++a) {
    fbar.push_back(evaluate(skew_F_factors(lambda, shapes[a]), y, w));
    fbar_inv.push_back(fbar.back().inverse());
  }
  // I + K with K[a][a'] = u_a d/du_a log Fbar_a'
  SeriesMatrix ik(ns, std::vector<TruncSeries>(ns, TruncSeries(vs)));
  for (int a = 0; a < ns; ++a)
    for (int a2 = 0; a2 < ns; ++a2) {
      ik[a][a2] = fbar[a2].pd(a) * fbar_inv[a2];
      if (a == a2) ik[a][a2] += one;
    }
  TruncSeries det = determinant(ik, vs);

  TruncSeries tail = det;
  for (int a = 0; a < ns; ++a)
    if (m[a]) tail *= fbar_inv[a].pow(m[a]);
  if (g != 1) tail *= (evaluate(abar_factors(lambda), y, w) * det).pow(g - 1);
  if (geom.l1) tail *= evaluate(bbar_factors(lambda, 1), y, w).pow(geom.l1);
  if (geom.l2) tail *= evaluate(bbar_factors(lambda, 2), y, w).pow(geom.l2);
  auto e_total = [&](const std::string& z) {
    TruncSeries acc(vs);
    for (const TruncSeries& yb : y) acc += e_factor(z, yb, o.z, w);
    return acc;
  };
  for (int k : ins.points()) tail *= e_total(ins.list[k].zvar);

  std::vector<int> ones = ins.ones();
  int na = int(ones.size());
  bool brackets = false;
  for (int l = 1; l <= g; ++l) brackets = brackets || !ins.pairs(l).empty();
  brackets = brackets || (g > 0 && na > 0);
  SeriesMatrix inv_skew;
  if (brackets) {
    inv_skew = inverse(ik);
    std::vector<TruncSeries> u;
    for (int a = 0; a < ns; ++a) u.push_back(TruncSeries::variable(vs, "u" + std::to_string(a)));
    for (int a = 0; a < ns; ++a)
      for (int a2 = 0; a2 < ns; ++a2) inv_skew[a][a2] *= u[a2];
  }

  RPP nbox = box_sums(lambda, shapes, m);
  std::vector<TruncSeries> plain;  // the non-theta part of each descendent of 1
  for (int k : ones) {
    const std::string& x = ins.list[k].zvar;
    TruncSeries acc = (frakB_series(vs, x, w.t1, o.z).scaled(RatFunc(geom.l1)) +
                       frakB_series(vs, x, w.t2, o.z).scaled(RatFunc(geom.l2))) *
                      e_total(x);
    for (int p = 0; p < d; ++p)
      acc += e_factor(x, y[p], o.z, w).scaled(RatFunc(nbox[p] - bs[p].i * geom.l1 - bs[p].j * geom.l2));
    plain.push_back(acc);
  }

  std::map<std::pair<int, uint32_t>, TruncSeries> cache;
  auto bracket = [&](int l, uint32_t mask) -> TruncSeries {
    auto key = std::make_pair(l, mask);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<std::string, std::string>> zw;
    for (auto [ka, kb] : ins.pairs(l)) zw.push_back({ins.list[ka].zvar, ins.list[kb].zvar});
    std::vector<std::string> xs;
    for (int i = 0; i < na; ++i)
      if (mask >> i & 1) xs.push_back(ins.list[ones[i]].zvar);
    TruncSeries v = skew_bracket(inv_skew, shapes, zw, xs, y, o.z, w);
    cache.emplace(key, v);
    return v;
  };

  // labels: 0 -> plain block, l -> theta part routed to class index l
  std::vector<int> label(na, 0);
  TruncSeries total(vs);
  for (;;) {
    TruncSeries t = tail;
    for (int i = 0; i < na; ++i)
      if (label[i] == 0) t *= plain[i];
    for (int l = 1; l <= g; ++l) {
      uint32_t mask = 0;
      for (int i = 0; i < na; ++i)
        if (label[i] == l) mask |= 1u << i;
      if (mask || !ins.pairs(l).empty()) t *= bracket(l, mask);
    }
    total += t;
    int k = 0;
    while (k < na && ++label[k] == g + 1) label[k++] = 0;
    if (k == na) break;
  }
  std::vector<int> sh(vs->size(), 0);
  for (int k : ones) sh[vs->index(ins.list[k].zvar)] = 1;
  total = total.shifted(sh);

  std::vector<TruncSeries::Term> out;
  for (const auto& [e, c] : total.terms()) {
    bool hit = true;
    for (int a = 0; a < ns; ++a) hit = hit && e[a] == m[a];
    if (!hit) continue;
    Exps r{};
    for (int k = 0; k < int(ins.list.size()); ++k) r[k] = e[ns + k];
    out.push_back({r, c});
  }
  return TruncSeries::from_terms(dvs, out);
}

InvariantSeries invariant_via_m_sum(const Geometry& geom, const std::vector<Insertion>& ins, const Orders& o,
                                    const Weights& w) {
  CanonicalInsertions canon = canonicalize_insertions(ins, geom.g);
  InvariantSeries res;
  res.geom = geom;
  res.insertions = canon.list;
  res.sign = canon.sign;
  res.vanishes = canon.vanishes;
  VarSetPtr out_vs = invariant_varset(canon.list, o);
  res.series = TruncSeries(out_vs);
  if (canon.vanishes) return res;
  if (geom.d == 0) {
    if (canon.list.empty()) res.series = TruncSeries(out_vs, RatFunc(1));
    return res;
  }
  auto parts = partitions_of(geom.d);
  int lo = partition_shift(geom, parts[0]);
  for (const Partition& l : parts) lo = std::min(lo, partition_shift(geom, l));
  res.p_shift = lo;
  int pvar = out_vs->index("p");
  for (const Partition& l : parts) {
    int rel = partition_shift(geom, l) - lo;
    if (rel > o.p) continue;
    auto shapes = connected_skew_shapes(l);
    for (const SkewMultiplicity& m : multiplicities_up_to(shapes, o.p - rel)) {
      TruncSeries c = pbar_lambda(geom, canon, l, m, o, w);
      if (c.is_zero()) continue;
      std::vector<int> up(out_vs->size(), 0);
      up[pvar] = rel + weight(shapes, m);
      res.series += c.embed(out_vs).shifted(up);
    }
  }
  return res;
}

}  // namespace localpt
