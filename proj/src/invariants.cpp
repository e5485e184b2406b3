#include "localpt/invariants.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace localpt {

Insertion parse_insertion(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos || colon + 1 >= s.size()) throw std::invalid_argument("bad insertion: " + s);
  std::string cls = s.substr(0, colon);
  Insertion ins;
  ins.zvar = s.substr(colon + 1);
  if (cls == "1") ins.cls = InsertionClass::One;
  else if (cls == "pt") ins.cls = InsertionClass::Point;
  else if ((cls[0] == 'a' || cls[0] == 'b') && cls.size() > 1) {
    ins.cls = cls[0] == 'a' ? InsertionClass::Alpha : InsertionClass::Beta;
    size_t pos = 0;
    ins.index = std::stoi(cls.substr(1), &pos);
    if (pos != cls.size() - 1 || ins.index < 1) throw std::invalid_argument("bad insertion: " + s);
  } else {
    throw std::invalid_argument("bad insertion class: " + s);
  }
  return ins;
}

std::string insertion_string(const Insertion& ins) {
  switch (ins.cls) {
    case InsertionClass::One: return "1:" + ins.zvar;
    case InsertionClass::Point: return "pt:" + ins.zvar;
    case InsertionClass::Alpha: return "a" + std::to_string(ins.index) + ":" + ins.zvar;
    case InsertionClass::Beta: return "b" + std::to_string(ins.index) + ":" + ins.zvar;
  }
  return "";
}

std::vector<int> CanonicalInsertions::ones() const {
  std::vector<int> r;
  for (size_t k = 0; k < list.size(); ++k)
    if (list[k].cls == InsertionClass::One) r.push_back(int(k));
  return r;
}

std::vector<int> CanonicalInsertions::points() const {
  std::vector<int> r;
  for (size_t k = 0; k < list.size(); ++k)
    if (list[k].cls == InsertionClass::Point) r.push_back(int(k));
  return r;
}

std::vector<std::pair<int, int>> CanonicalInsertions::pairs(int l) const {
  std::vector<std::pair<int, int>> r;
  for (size_t k = 0; k + 1 < list.size(); ++k)
    if (list[k].cls == InsertionClass::Alpha && list[k].index == l) r.push_back({int(k), int(k + 1)});
  return r;
}

CanonicalInsertions canonicalize_insertions(const std::vector<Insertion>& ins, int g) {
  std::set<std::string> names;
  for (const Insertion& x : ins) {
    if (x.odd() && (x.index < 1 || x.index > g))
      throw std::invalid_argument("class index out of range: " + insertion_string(x));
    if (x.zvar.empty() || x.zvar == "p" || !names.insert(x.zvar).second)
      throw std::invalid_argument("descendent variable names must be unique and differ from p");
  }
  CanonicalInsertions out;
  std::vector<int> order;
  for (size_t k = 0; k < ins.size(); ++k)
    if (ins[k].cls == InsertionClass::One) order.push_back(int(k));
  for (size_t k = 0; k < ins.size(); ++k)
    if (ins[k].cls == InsertionClass::Point) order.push_back(int(k));
  for (int l = 1; l <= g; ++l) {
    std::vector<int> a, b;
    for (size_t k = 0; k < ins.size(); ++k) {
      if (ins[k].index != l) continue;
      if (ins[k].cls == InsertionClass::Alpha) a.push_back(int(k));
      if (ins[k].cls == InsertionClass::Beta) b.push_back(int(k));
    }
    if (a.size() != b.size()) out.vanishes = true;
    for (size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
      order.push_back(a[k]);
      order.push_back(b[k]);
    }
    for (size_t k = std::min(a.size(), b.size()); k < a.size(); ++k) order.push_back(a[k]);
    for (size_t k = std::min(a.size(), b.size()); k < b.size(); ++k) order.push_back(b[k]);
  }
  // parity of the permutation restricted to odd entries
  std::vector<int> odd_positions;
  for (int k : order)
    if (ins[k].odd()) odd_positions.push_back(k);
  int inversions = 0;
  for (size_t i = 0; i < odd_positions.size(); ++i)
    for (size_t j = i + 1; j < odd_positions.size(); ++j)
      if (odd_positions[i] > odd_positions[j]) ++inversions;
  out.sign = inversions % 2 ? -1 : 1;
  for (int k : order) out.list.push_back(ins[k]);
  return out;
}

namespace {

std::vector<BigRat> bernoulli_numbers(int n) {
  std::vector<BigRat> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    BigRat acc = 0;
    mpz_class binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += BigRat(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / BigRat(m + 1);
  }
  return b;
}

BigRat factorial(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return BigRat(f);
}

Exps unit_exps(int var, int k) {
  Exps e{};
  e[var] = uint8_t(k);
  return e;
}

// (1 - e^{-t z}) / t
TruncSeries one_minus_exp(const VarSetPtr& vs, int zi, const RatFunc& t, int z_order) {
  std::vector<TruncSeries::Term> terms;
  RatFunc tp(1);
  for (int k = 1; k <= z_order; ++k) {
    RatFunc c = tp / RatFunc(factorial(k));
    if (k % 2 == 0) c = -c;
    terms.push_back({unit_exps(zi, k), c});
    tp *= t;
  }
  return TruncSeries::from_terms(vs, terms);
}

}  // namespace

TruncSeries frakB_series(const VarSetPtr& vs, const std::string& zvar, const RatFunc& weight, int z_order) {
  int zi = vs->index(zvar);
  auto b = bernoulli_numbers(z_order + 1);
  std::vector<TruncSeries::Term> terms{{Exps{}, RatFunc(BigRat(-1, 2))}};
  for (int k = 1; k <= z_order; k += 2)
    terms.push_back({unit_exps(zi, k), RatFunc(b[k + 1] / factorial(k + 1)) * weight.pow(k)});
  return TruncSeries::from_terms(vs, terms);
}

TruncSeries e_factor(const std::string& zvar, const TruncSeries& y, int z_order, const Weights& w) {
  const VarSetPtr& vs = y.varset();
  int zi = vs->index(zvar);
  return one_minus_exp(vs, zi, w.t1, z_order) * one_minus_exp(vs, zi, w.t2, z_order) *
         exp_linear(zvar, y, z_order);
}

FactorProduct a_factors(int d) {
  FactorProduct f;
  for (int i = 0; i < d; ++i) f.mul({0, 0, i, -1}, 1).mul({1, 1, -1, i}, 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
          if (!a && !b && i == j) continue;
          f.mul({a, b, i, j}, (a + b) % 2 ? 1 : -1);
        }
  return f;
}

FactorProduct b1_factors(int d) {
  FactorProduct f;
  for (int i = 0; i < d; ++i) f.mul({1, 1, -1, i}, -1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int b = 0; b <= 1; ++b) f.mul({1, b, i, j}, b ? 1 : -1);
  return f;
}

FactorProduct b2_factors(int d) {
  FactorProduct f;
  for (int i = 0; i < d; ++i) f.mul({1, 1, -1, i}, -1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int a = 0; a <= 1; ++a) f.mul({a, 1, i, j}, a ? 1 : -1);
  return f;
}

ABB abb_factors(const BetheRoot& root) {
  int d = size_of(root.lambda);
  ABB r;
  r.a = root_product(root, a_factors(d)) * root_log_jacobian_det(root);
  r.b1 = root_product(root, b1_factors(d));
  r.b2 = root_product(root, b2_factors(d));
  return r;
}

namespace {

// ez[i][b] = z_i E(z_i, Y_b) and similarly for w and x, precomputed
TruncSeries bracket_from_factors(const SeriesMatrix& n, const std::vector<std::vector<TruncSeries>>& ez,
                                 const std::vector<std::vector<TruncSeries>>& ew,
                                 const std::vector<std::vector<TruncSeries>>& ex, const VarSetPtr& vs) {
  size_t m = ez.size(), nx = ex.size(), d = n.size();
  // pair rows and columns summed against the E-weights
  SeriesMatrix row_sum(m, std::vector<TruncSeries>(d, TruncSeries(vs)));  // sum_a zE(z_i, Y_a) N[a][.]
  SeriesMatrix col_sum(d, std::vector<TruncSeries>(m, TruncSeries(vs)));  // sum_b N[.][b] wE(w_k, Y_b)
  for (size_t i = 0; i < m; ++i)
    for (size_t a = 0; a < d; ++a)
      for (size_t c = 0; c < d; ++c) {
        row_sum[i][c] += ez[i][a] * n[a][c];
        col_sum[a][i] += n[a][c] * ew[i][c];
      }
  SeriesMatrix both(m, std::vector<TruncSeries>(m, TruncSeries(vs)));
  for (size_t i = 0; i < m; ++i)
    for (size_t k = 0; k < m; ++k)
      for (size_t b = 0; b < d; ++b) both[i][k] += row_sum[i][b] * ew[k][b];

  TruncSeries acc(vs);
  std::vector<int> c(nx, 0);
  for (;;) {
    SeriesMatrix g(m + nx, std::vector<TruncSeries>(m + nx, TruncSeries(vs)));
    for (size_t i = 0; i < m; ++i) {
      for (size_t k = 0; k < m; ++k) g[i][k] = both[i][k];
      for (size_t j = 0; j < nx; ++j) g[i][m + j] = row_sum[i][c[j]];
    }
    TruncSeries weight(vs, RatFunc(1));
    for (size_t j = 0; j < nx; ++j) {
      for (size_t k = 0; k < m; ++k) g[m + j][k] = col_sum[c[j]][k];
      for (size_t jj = 0; jj < nx; ++jj) g[m + j][m + jj] = n[c[j]][c[jj]];
      weight *= ex[j][c[j]];
    }
    if (!weight.is_zero()) acc += weight * determinant_expansion(g, vs);
    size_t k = 0;
    while (k < nx && ++c[k] == int(d)) c[k++] = 0;
    if (k == nx) break;
  }
  return nx % 2 ? -acc : acc;
}

std::vector<TruncSeries> weighted_e(const std::string& zvar, const std::vector<TruncSeries>& y, int z_order,
                                    const Weights& w) {
  const VarSetPtr& vs = y.front().varset();
  std::vector<int> sh(vs->size(), 0);
  sh[vs->index(zvar)] = 1;
  std::vector<TruncSeries> out;
  for (const TruncSeries& yb : y) out.push_back(e_factor(zvar, yb, z_order, w).shifted(sh));
  return out;
}

}  // namespace

TruncSeries minor_bracket(const SeriesMatrix& n, const std::vector<std::pair<std::string, std::string>>& zw_pairs,
                          const std::vector<std::string>& x_list, const std::vector<TruncSeries>& y, int z_order,
                          const Weights& w) {
  if (y.empty()) {
    if (!zw_pairs.empty() || !x_list.empty()) return TruncSeries(nullptr);
    throw std::invalid_argument("empty bracket needs a variable set");
  }
  const VarSetPtr& vs = y.front().varset();
  std::vector<std::vector<TruncSeries>> ez, ew, ex;
  for (const auto& [z, wv] : zw_pairs) {
    ez.push_back(weighted_e(z, y, z_order, w));
    ew.push_back(weighted_e(wv, y, z_order, w));
  }
  for (const std::string& x : x_list) ex.push_back(weighted_e(x, y, z_order, w));
  return bracket_from_factors(n, ez, ew, ex, vs);
}

VarSetPtr invariant_varset(const std::vector<Insertion>& ins, const Orders& o) {
  VarSetBuilder b;
  b.var("p", o.p);
  for (const Insertion& x : ins) b.var(x.zvar, o.z);
  return b.build();
}

int partition_shift(const Geometry& geom, const Partition& lambda) {
  auto st = conjugate_and_stats(lambda);
  return geom.d * (1 - geom.g) - st.n * geom.l1 - st.n_conjugate * geom.l2;
}

RootProvider default_root_provider() {
  return [](const Partition& l, int order, const Weights& w) {
    return solve_bethe_fixed_point(l, order, RootMode::PerBox, w);
  };
}

ShiftedSeries p_lambda(const Geometry& geom, const CanonicalInsertions& ins, const BetheRoot& root, const Orders& o) {
  if (root.mode != RootMode::PerBox) throw std::invalid_argument("partition contribution needs a per-box root");
  const VarSetPtr& vs = root.vars;
  const Weights& w = root.weights;
  int d = size_of(root.lambda);
  int g = geom.g;
  TruncSeries one(vs, RatFunc(1));
  auto e_total = [&](const std::string& z) {
    TruncSeries acc(vs);
    for (const TruncSeries& y : root.y) acc += e_factor(z, y, o.z, w);
    return acc;
  };

  ShiftedSeries base = ShiftedSeries::unit(one);
  for (int k : ins.points()) base.series *= e_total(ins.list[k].zvar);
  if (g != 1 || geom.l1 || geom.l2) {
    int dd = d;
    if (g != 1) base = base * (root_product(root, a_factors(dd)) * root_log_jacobian_det(root)).pow(g - 1);
    if (geom.l1) base = base * root_product(root, b1_factors(dd)).pow(geom.l1);
    if (geom.l2) base = base * root_product(root, b2_factors(dd)).pow(geom.l2);
  }

  std::vector<int> ones = ins.ones();
  int a = int(ones.size());
  bool need_mt = a > 0 || !ins.list.empty();
  SeriesMatrix mt;
  if (need_mt) mt = root_derivative_matrix(root);

  // E-factor tables
  std::vector<std::vector<TruncSeries>> ex, e_plain;  // x_i E(x_i, Y_b) and E(x_i, Y_b)
  std::vector<TruncSeries> ex_sum, frak;              // E(x_i, Y) summed over boxes and l1 B(x t1) + l2 B(x t2)
  for (int k : ones) {
    const std::string& x = ins.list[k].zvar;
    ex.push_back(weighted_e(x, root.y, o.z, w));
    e_plain.emplace_back();
    for (const TruncSeries& yb : root.y) e_plain.back().push_back(e_factor(x, yb, o.z, w));
    ex_sum.push_back(e_total(x));
    frak.push_back(frakB_series(vs, x, w.t1, o.z).scaled(RatFunc(geom.l1)) +
                   frakB_series(vs, x, w.t2, o.z).scaled(RatFunc(geom.l2)));
  }
  std::vector<std::vector<std::vector<TruncSeries>>> ez(g + 1), ew(g + 1);
  for (int l = 1; l <= g; ++l)
    for (auto [ka, kb] : ins.pairs(l)) {
      ez[l].push_back(weighted_e(ins.list[ka].zvar, root.y, o.z, w));
      ew[l].push_back(weighted_e(ins.list[kb].zvar, root.y, o.z, w));
    }
  std::map<std::pair<int, uint32_t>, TruncSeries> bracket_cache;
  auto bracket = [&](int l, uint32_t mask) -> TruncSeries {
    auto key = std::make_pair(l, mask);
    auto it = bracket_cache.find(key);
    if (it != bracket_cache.end()) return it->second;
    std::vector<std::vector<TruncSeries>> xs;
    for (int i = 0; i < a; ++i)
      if (mask >> i & 1) xs.push_back(ex[i]);
    TruncSeries v = bracket_from_factors(mt, ez[l], ew[l], xs, vs);
    bracket_cache.emplace(key, v);
    return v;
  };

  // labels: 0 -> derivative block, 1 -> Bernoulli block, 2.. -> bracket l = label - 1
  std::vector<int> label(a, 0);
  std::optional<ShiftedSeries> total;
  std::vector<int> box_index_of(vs->size(), -1);
  for (int b = 0; b < d; ++b) box_index_of[b] = vs->index(root.p_name(b));
  for (;;) {
    TruncSeries tail = base.series;
    std::vector<int> deriv;
    for (int i = 0; i < a; ++i) {
      if (label[i] == 0) deriv.push_back(i);
      else if (label[i] == 1) tail *= frak[i] * ex_sum[i];
    }
    for (int l = 1; l <= g; ++l) {
      uint32_t mask = 0;
      for (int i = 0; i < a; ++i)
        if (label[i] == l + 1) mask |= 1u << i;
      tail *= bracket(l, mask);
    }
    if (deriv.empty()) {
      total = total ? *total + ShiftedSeries{base.shift, tail} : ShiftedSeries{base.shift, tail};
    } else {
      std::vector<int> boxes(deriv.size(), 0);
      TruncSeries acc(vs);
      for (;;) {
        TruncSeries t = tail;
        for (size_t k = 0; k < deriv.size(); ++k) t *= e_plain[deriv[k]][boxes[k]];
        // p_b d/dp_b on p^shift * t
        for (size_t k = 0; k < deriv.size(); ++k) {
          int var = box_index_of[boxes[k]];
          t = t.scaled(RatFunc(base.shift[var])) + t.pd(var);
        }
        acc += t;
        size_t k = 0;
        while (k < boxes.size() && ++boxes[k] == d) boxes[k++] = 0;
        if (k == boxes.size()) break;
      }
      total = total ? *total + ShiftedSeries{base.shift, acc} : ShiftedSeries{base.shift, acc};
    }
    int k = 0;
    while (k < a && ++label[k] == g + 2) label[k++] = 0;
    if (k == a) break;
  }
  ShiftedSeries out = *total;
  std::vector<int> sh(vs->size(), 0);
  for (int k : ones) sh[vs->index(ins.list[k].zvar)] = 1;
  out.series = out.series.shifted(sh);
  return out;
}

namespace {

int series_p_shift(const ShiftedSeries& s, const BetheRoot& root) {
  int t = 0;
  for (int b = 0; b < size_of(root.lambda); ++b) t += s.shift[root.vars->index(root.p_name(b))];
  return t;
}

}  // namespace

InvariantSeries invariant(const Geometry& geom, const std::vector<Insertion>& ins, const Orders& o, const Weights& w,
                          const RootProvider& roots) {
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
  bool needs_root = !canon.list.empty() || geom.g != 1 || geom.l1 || geom.l2;
  for (const Partition& l : parts) {
    int rel = partition_shift(geom, l) - lo;
    int order = o.p - rel;
    if (order < 0) continue;
    std::vector<int> up(out_vs->size(), 0);
    up[pvar] = rel;
    if (!needs_root) {
      res.series += TruncSeries(out_vs, RatFunc(1)).shifted(up);
      continue;
    }
    BetheRoot root = roots(l, order, w);
    std::vector<std::string> names;
    for (const Box& b : boxes_of(l)) names.push_back(box_var(b));
    VarSetBuilder vb;
    vb.boxes(names, order);
    for (const Insertion& x : canon.list) vb.var(x.zvar, o.z);
    BetheRoot big = embed_root(root, vb.build());
    ShiftedSeries part = p_lambda(geom, canon, big, o);
    int got = geom.d * (1 - geom.g) + series_p_shift(part, big);
    if (got != partition_shift(geom, l))
      throw std::logic_error("unexpected p-shift for partition (" + partition_string(l) + ")");
    res.series += part.series.specialize_boxes(out_vs, "p").shifted(up);
  }
  return res;
}

bool same_invariant(const InvariantSeries& a, const InvariantSeries& b) {
  if (a.vanishes != b.vanishes || a.sign != b.sign || a.insertions != b.insertions) return false;
  if (a.vanishes) return true;
  if (!(*a.series.varset() == *b.series.varset())) return false;
  int pv = a.series.varset()->index("p");
  int na = a.series.varset()->vars[pv].order;
  int lo = std::min(a.p_shift, b.p_shift), hi = std::min(a.p_shift + na, b.p_shift + na);
  for (int k = lo; k <= hi; ++k) {
    TruncSeries sa = k >= a.p_shift ? a.series.slice(pv, k - a.p_shift) : TruncSeries(a.series.varset());
    TruncSeries sb = k >= b.p_shift ? b.series.slice(pv, k - b.p_shift) : TruncSeries(b.series.varset());
    if (sa != sb) return false;
  }
  return true;
}

}  // namespace localpt
