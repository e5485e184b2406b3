#include "localpt/analysis.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "localpt/shapes.hpp"

namespace localpt {

PPoly trim(PPoly a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  return a;
}

int degree(const PPoly& a) { return int(trim(a).size()) - 1; }

PPoly multiply(const PPoly& a, const PPoly& b) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(r);
}

std::pair<PPoly, PPoly> divide(const PPoly& a0, const PPoly& b0) {
  PPoly a = trim(a0), b = trim(b0);
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  if (a.size() < b.size()) return {{}, a};
  PPoly q(a.size() - b.size() + 1);
  RatFunc lead_inv = b.back().inverse();
  for (int k = int(a.size()) - 1; k >= int(b.size()) - 1; --k) {
    if (a[k].is_zero()) continue;
    RatFunc c = a[k] * lead_inv;
    int s = k - (int(b.size()) - 1);
    q[s] = c;
    for (size_t j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
  }
  return {trim(q), trim(a)};
}

PPoly gcd(const PPoly& a0, const PPoly& b0) {
  PPoly a = trim(a0), b = trim(b0);
  while (!b.empty()) {
    PPoly r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  RatFunc inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

std::string to_string(const PPoly& a0) {
  PPoly a = trim(a0);
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << a[k].to_string() << ")";
    if (k == 1) os << "*p";
    if (k > 1) os << "*p^" << k;
  }
  return os.str();
}

std::vector<RatFunc> expand(const RationalFit& f, int n) {
  std::vector<RatFunc> out(n + 1);
  if (f.den.empty() || f.den[0].is_zero()) throw std::domain_error("denominator vanishes at p = 0");
  RatFunc inv0 = f.den[0].inverse();
  for (int k = 0; k <= n; ++k) {
    RatFunc c = k < int(f.num.size()) ? f.num[k] : RatFunc();
    for (int i = 1; i <= k && i < int(f.den.size()); ++i) c -= f.den[i] * out[k - i];
    out[k] = c * inv0;
  }
  return out;
}

RationalFit normalized(RationalFit f) {
  f.num = trim(f.num);
  f.den = trim(f.den);
  if (f.num.empty()) return RationalFit{{}, {RatFunc(1)}, 0};
  size_t z = 0;
  while (f.num[z].is_zero()) ++z;
  f.num.erase(f.num.begin(), f.num.begin() + z);
  f.p_shift += int(z);
  RatFunc inv0 = f.den[0].inverse();
  for (auto& c : f.num) c *= inv0;
  for (auto& c : f.den) c *= inv0;
  return f;
}

namespace {

// Some solution of a x = rhs, free unknowns set to zero; nullopt when inconsistent.
std::optional<std::vector<RatFunc>> solve_linear(RatMatrix a, std::vector<RatFunc> rhs, int unknowns) {
  int rows = int(a.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < unknowns && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!a[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    std::swap(rhs[piv], rhs[r]);
    RatFunc inv = a[r][c].inverse();
    for (int j = c; j < unknowns; ++j) a[r][j] *= inv;
    rhs[r] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      RatFunc f = a[i][c];
      for (int j = c; j < unknowns; ++j) a[i][j] -= f * a[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (!rhs[i].is_zero()) return std::nullopt;
  std::vector<RatFunc> x(unknowns);
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

}  // namespace

namespace {

std::optional<RationalFit> try_fit(const std::vector<RatFunc>& c, int p_shift, int n, int q) {
  int top = int(c.size()) - 1;
  auto at = [&](int k) { return k >= 0 ? c[k] : RatFunc(); };
  // sum_{i=1..q} b_i c_{k-i} = -c_k for k = n+1..top
  RatMatrix a;
  std::vector<RatFunc> rhs;
  for (int k = n + 1; k <= top; ++k) {
    std::vector<RatFunc> row(q);
    for (int i = 1; i <= q; ++i) row[i - 1] = at(k - i);
    a.push_back(std::move(row));
    rhs.push_back(-c[k]);
  }
  auto b = solve_linear(a, rhs, q);
  if (!b) return std::nullopt;
  RationalFit f;
  f.p_shift = p_shift;
  f.den.push_back(RatFunc(1));
  for (auto& x : *b) f.den.push_back(x);
  for (int k = 0; k <= n; ++k) {
    RatFunc s = c[k];
    for (int i = 1; i <= q && i <= k; ++i) s += f.den[i] * c[k - i];
    f.num.push_back(s);
  }
  f.num = trim(f.num);
  f.den = trim(f.den);
  if (expand(f, top) != c) return std::nullopt;
  return f;
}

}  // namespace

std::optional<RationalFit> fit_rational(const std::vector<RatFunc>& c, int p_shift, int max_num_deg,
                                        int max_den_deg) {
  int top = int(c.size()) - 1;
  if (max_num_deg < 0 || max_den_deg < 0 || top < max_num_deg + max_den_deg + 1) return std::nullopt;
  for (int q = 0; q <= max_den_deg; ++q)
    for (int n = 0; n <= max_num_deg; ++n)
      if (auto f = try_fit(c, p_shift, n, q)) return f;
  return std::nullopt;
}

std::optional<RationalFit> fit_rational_minimal(const std::vector<RatFunc>& c, int p_shift, int guards) {
  int top = int(c.size()) - 1;
  for (int total = 0; total + 1 + guards <= top + 1; ++total)
    for (int q = 0; q <= total; ++q)
      if (auto f = try_fit(c, p_shift, total - q, q)) return f;
  return std::nullopt;
}

namespace {

PPoly reversed(const PPoly& a, int deg) {
  PPoly r(deg + 1);
  for (int k = 0; k <= deg && k < int(a.size()); ++k) r[deg - k] = a[k];
  return trim(r);
}

}  // namespace

Verdict check_functional_equation(const RationalFit& r0, const RationalFit& n0, int d_beta) {
  Verdict v{"functional", false, ""};
  RationalFit r = normalized(r0), n = normalized(n0);
  if (r.num.empty() || n.num.empty()) {
    v.pass = r.num.empty() && n.num.empty();
    if (!v.pass) v.witness = "exactly one side vanishes";
    return v;
  }
  // R(1/p) = p^(-s - deg N + deg D) rev(N) / rev(D), both reversals nonzero at p = 0
  int dn = degree(r.num), dd = degree(r.den);
  int lhs_shift = -r.p_shift - dn + dd;
  int rhs_shift = -d_beta + n.p_shift;
  PPoly lhs = multiply(reversed(r.num, dn), n.den);
  PPoly rhs = multiply(n.num, reversed(r.den, dd));
  if (lhs_shift != rhs_shift) {
    v.witness = "p-order " + std::to_string(lhs_shift) + " vs " + std::to_string(rhs_shift);
    return v;
  }
  if (lhs != rhs) {
    v.witness = "cross products differ: " + to_string(lhs) + " vs " + to_string(rhs);
    return v;
  }
  v.pass = true;
  return v;
}

Verdict check_pole_locations(const RationalFit& r, int d) {
  Verdict v{"poles", false, ""};
  PPoly den = trim(r.den);
  if (den.empty()) {
    v.witness = "zero denominator";
    return v;
  }
  size_t z = 0;
  while (den[z].is_zero()) ++z;
  den.erase(den.begin(), den.begin() + z);
  PPoly allowed{RatFunc(1)};
  for (int n = 1; n <= d; ++n) {
    PPoly f(n + 1);
    f[0] = RatFunc(-1);
    f[n] = RatFunc(n % 2 ? -1 : 1);
    allowed = multiply(allowed, f);
  }
  while (degree(den) > 0) {
    PPoly g = gcd(den, allowed);
    if (degree(g) <= 0) {
      v.witness = "denominator factor outside the allowed family: " + to_string(den);
      return v;
    }
    auto [q, rem] = divide(den, g);
    if (!rem.empty()) throw std::logic_error("gcd does not divide");
    den = q;
  }
  if (!den[0].is_constant()) {
    v.witness = "t-dependent constant " + den[0].to_string();
    return v;
  }
  v.pass = true;
  v.witness = to_string(trim(r.den));
  return v;
}

namespace {

InvariantFit fit_groups(const InvariantSeries& inv,
                        const std::function<std::optional<RationalFit>(const std::vector<RatFunc>&)>& fit) {
  InvariantFit out;
  const auto& vs = inv.series.varset();
  int pv = vs->index("p");
  int top = vs->vars[pv].order;
  std::map<std::vector<int>, std::vector<RatFunc>> groups;
  for (const auto& [e, c] : inv.series.terms()) {
    std::vector<int> key;
    for (int i = 0; i < vs->size(); ++i)
      if (i != pv) key.push_back(e[i]);
    auto& g = groups[key];
    if (g.empty()) g.assign(top + 1, RatFunc());
    g[e[pv]] = c;
  }
  for (const auto& [key, coeffs] : groups) {
    auto f = fit(coeffs);
    if (f)
      out.fits[key] = normalized(*f);
    else
      out.unfitted.push_back(key);
  }
  return out;
}

}  // namespace

InvariantFit fit_invariant(const InvariantSeries& inv, int max_num_deg, int max_den_deg) {
  return fit_groups(inv, [&](const std::vector<RatFunc>& c) {
    return fit_rational(c, inv.p_shift, max_num_deg, max_den_deg);
  });
}

InvariantFit fit_invariant_minimal(const InvariantSeries& inv, int guards) {
  return fit_groups(inv, [&](const std::vector<RatFunc>& c) { return fit_rational_minimal(c, inv.p_shift, guards); });
}

InvariantSeries negate_descendents(const InvariantSeries& inv) {
  InvariantSeries out = inv;
  for (const auto& v : inv.series.varset()->vars)
    if (v.name != "p") out.series = out.series.negate_var(v.name);
  return out;
}

namespace {

std::string key_string(const std::vector<int>& k) {
  std::string s = "[";
  for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "]";
}

}  // namespace

Verdict check_functional_equation(const InvariantFit& fit, const InvariantFit& negated, int d_beta) {
  Verdict v{"functional", false, ""};
  if (!fit.complete() || !negated.complete()) {
    v.witness = "fit unavailable";
    return v;
  }
  std::set<std::vector<int>> keys;
  for (const auto& kv : fit.fits) keys.insert(kv.first);
  for (const auto& kv : negated.fits) keys.insert(kv.first);
  RationalFit zero{{}, {RatFunc(1)}, 0};
  for (const auto& k : keys) {
    auto a = fit.fits.count(k) ? fit.fits.at(k) : zero;
    auto b = negated.fits.count(k) ? negated.fits.at(k) : zero;
    Verdict one = check_functional_equation(a, b, d_beta);
    if (!one.pass) {
      v.witness = "z-monomial " + key_string(k) + ": " + one.witness;
      return v;
    }
  }
  v.pass = true;
  v.witness = std::to_string(keys.size()) + " monomials";
  return v;
}

Verdict check_pole_locations(const InvariantFit& fit, int d) {
  Verdict v{"poles", false, ""};
  if (!fit.complete()) {
    v.witness = "fit unavailable";
    return v;
  }
  for (const auto& [k, f] : fit.fits) {
    Verdict one = check_pole_locations(f, d);
    if (!one.pass) {
      v.witness = "z-monomial " + key_string(k) + ": " + one.witness;
      return v;
    }
  }
  v.pass = true;
  v.witness = std::to_string(fit.fits.size()) + " monomials";
  return v;
}

VarSetPtr bracket_varset(const std::vector<Insertion>& ins, const Orders& o) {
  VarSetBuilder b;
  b.var("p", o.p);
  for (const auto& i : ins) b.var(i.zvar, o.z);
  return b.build();
}

namespace {

ShiftedSeries zero_bracket(const VarSetPtr& vs) { return ShiftedSeries{std::vector<int>(vs->size(), 0), TruncSeries(vs)}; }

ShiftedSeries one_bracket(const VarSetPtr& vs) {
  return ShiftedSeries{std::vector<int>(vs->size(), 0), TruncSeries(vs, RatFunc(1))};
}

std::vector<Insertion> subset(const std::vector<Insertion>& ins, uint32_t mask) {
  std::vector<Insertion> out;
  for (size_t i = 0; i < ins.size(); ++i)
    if (mask >> i & 1) out.push_back(ins[i]);
  return out;
}

// Set partitions of the bits of mask, blocks ordered by smallest element.
void set_partitions(uint32_t mask, std::vector<uint32_t>& cur, std::vector<std::vector<uint32_t>>& out) {
  if (!mask) {
    out.push_back(cur);
    return;
  }
  uint32_t low = mask & (~mask + 1);
  uint32_t rest = mask ^ low;
  for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
    cur.push_back(low | sub);
    set_partitions(rest ^ sub, cur, out);
    cur.pop_back();
    if (!sub) break;
  }
}

// Integer partitions of n into parts >= 1, parts nonincreasing.
void int_partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    int_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

struct Decomposition {
  std::vector<std::pair<uint32_t, int>> blocks;  // (mask, degree); empty blocks have mask 0
  int sign = 1;
  long aut = 1;
};

std::vector<Decomposition> decompositions(const std::vector<Insertion>& ins, uint32_t mask, int d) {
  std::vector<Decomposition> out;
  std::vector<std::vector<uint32_t>> parts;
  std::vector<uint32_t> cur;
  set_partitions(mask, cur, parts);
  for (const auto& blocks : parts) {
    int sgn = partition_sign(subset(ins, mask), [&] {
      // re-index block masks relative to the subset
      std::vector<uint32_t> rel;
      for (uint32_t b : blocks) {
        uint32_t r = 0;
        int pos = 0;
        for (size_t i = 0; i < ins.size(); ++i)
          if (mask >> i & 1) {
            if (b >> i & 1) r |= 1u << pos;
            ++pos;
          }
        rel.push_back(r);
      }
      return rel;
    }());
    int k = int(blocks.size());
    std::vector<int> deg(k, 1);
    std::function<void(int, int)> assign = [&](int i, int used) {
      if (i == k) {
        std::vector<std::vector<int>> empties;
        std::vector<int> c;
        int_partitions(d - used, d - used, c, empties);
        for (const auto& e : empties) {
          Decomposition dec;
          dec.sign = sgn;
          for (int j = 0; j < k; ++j) dec.blocks.push_back({blocks[j], deg[j]});
          std::map<int, int> mult;
          for (int x : e) {
            dec.blocks.push_back({0u, x});
            ++mult[x];
          }
          for (auto [x, m] : mult)
            for (int f = 2; f <= m; ++f) dec.aut *= f;
          out.push_back(std::move(dec));
        }
        return;
      }
      for (int x = 1; used + x <= d; ++x) {
        deg[i] = x;
        assign(i + 1, used + x);
      }
    };
    assign(0, 0);
  }
  return out;
}

ShiftedSeries term_value(const Decomposition& dec, const BracketTable& conn, const VarSetPtr& vs) {
  ShiftedSeries v = one_bracket(vs);
  for (const auto& b : dec.blocks) {
    auto it = conn.find(b);
    if (it == conn.end()) throw std::logic_error("missing connected bracket");
    if (it->second.series.is_zero()) return zero_bracket(vs);
    v = v * it->second;
  }
  RatFunc c = RatFunc(BigRat(dec.sign)) / RatFunc(BigRat(dec.aut));
  return ShiftedSeries{v.shift, v.series.scaled(c)};
}

void accumulate(std::optional<ShiftedSeries>& acc, const ShiftedSeries& x) {
  if (x.series.is_zero()) return;
  acc = acc ? *acc + x : x;
}

bool is_single_block(const Decomposition& dec, uint32_t mask, int d) {
  return dec.blocks.size() == 1 && dec.blocks[0].first == mask && dec.blocks[0].second == d;
}

std::vector<std::pair<uint32_t, int>> keys_in_order(size_t n, int d) {
  std::vector<std::pair<uint32_t, int>> keys;
  for (uint32_t m = 0; m < (1u << n); ++m)
    for (int k = 0; k <= d; ++k) keys.push_back({m, k});
  std::stable_sort(keys.begin(), keys.end(), [](auto a, auto b) {
    int pa = std::popcount(a.first), pb = std::popcount(b.first);
    return pa != pb ? pa < pb : a.second < b.second;
  });
  return keys;
}

}  // namespace

int partition_sign(const std::vector<Insertion>& ins, const std::vector<uint32_t>& blocks) {
  std::vector<int> order;
  for (uint32_t b : blocks)
    for (size_t i = 0; i < ins.size(); ++i)
      if (b >> i & 1) order.push_back(int(i));
  int inv = 0;
  for (size_t a = 0; a < order.size(); ++a)
    for (size_t b = a + 1; b < order.size(); ++b)
      if (order[a] > order[b] && ins[order[a]].odd() && ins[order[b]].odd()) ++inv;
  return inv % 2 ? -1 : 1;
}

BracketTable disconnected_table(const Geometry& geom, const std::vector<Insertion>& ins, const Orders& o,
                                const Weights& w) {
  if (ins.size() > 12) throw std::invalid_argument("too many insertions");
  VarSetPtr vs = bracket_varset(ins, o);
  int pv = vs->index("p");
  BracketTable out;
  for (uint32_t m = 0; m < (1u << ins.size()); ++m) {
    for (int k = 0; k <= geom.d; ++k) {
      if (k == 0) {
        out[{m, 0}] = m ? zero_bracket(vs) : one_bracket(vs);
        continue;
      }
      Geometry gk = geom;
      gk.d = k;
      InvariantSeries inv = invariant(gk, subset(ins, m), o, w);
      if (inv.vanishes || inv.series.is_zero()) {
        out[{m, k}] = zero_bracket(vs);
        continue;
      }
      std::vector<int> shift(vs->size(), 0);
      shift[pv] = inv.p_shift;
      TruncSeries s = inv.series.embed(vs);
      if (inv.sign < 0) s = -s;
      out[{m, k}] = ShiftedSeries{shift, s};
    }
  }
  return out;
}

BracketTable connected_invariants(const BracketTable& disc, const std::vector<Insertion>& ins, int d,
                                  const VarSetPtr& vs) {
  BracketTable conn;
  for (auto key : keys_in_order(ins.size(), d)) {
    auto [m, k] = key;
    if (k == 0) {
      conn[key] = zero_bracket(vs);
      continue;
    }
    auto it = disc.find(key);
    if (it == disc.end()) throw std::invalid_argument("disconnected table is missing an entry");
    std::optional<ShiftedSeries> acc;
    accumulate(acc, it->second);
    for (const auto& dec : decompositions(ins, m, k)) {
      if (is_single_block(dec, m, k)) continue;
      accumulate(acc, -term_value(dec, conn, vs));
    }
    conn[key] = acc ? *acc : zero_bracket(vs);
  }
  return conn;
}

BracketTable disconnected_from_connected(const BracketTable& conn, const std::vector<Insertion>& ins, int d,
                                         const VarSetPtr& vs) {
  BracketTable disc;
  for (auto key : keys_in_order(ins.size(), d)) {
    auto [m, k] = key;
    if (k == 0) {
      disc[key] = m ? zero_bracket(vs) : one_bracket(vs);
      continue;
    }
    std::optional<ShiftedSeries> acc;
    for (const auto& dec : decompositions(ins, m, k)) accumulate(acc, term_value(dec, conn, vs));
    disc[key] = acc ? *acc : zero_bracket(vs);
  }
  return disc;
}

bool same_bracket(const ShiftedSeries& a, const ShiftedSeries& b) {
  const auto& vs = a.series.varset();
  if (!(*vs == *b.series.varset())) return false;
  // absolute window per variable: min(shift + order) over both sides
  std::vector<int> top(vs->size());
  for (int i = 0; i < vs->size(); ++i)
    top[i] = std::min(a.shift[i], b.shift[i]) + vs->vars[i].order;
  auto collect = [&](const ShiftedSeries& s) {
    std::map<std::vector<int>, RatFunc> out;
    for (const auto& [e, c] : s.series.terms()) {
      std::vector<int> abs(vs->size());
      bool keep = true;
      for (int i = 0; i < vs->size(); ++i) {
        abs[i] = e[i] + s.shift[i];
        if (abs[i] > top[i]) keep = false;
      }
      if (keep) out[abs] = c;
    }
    return out;
  };
  return collect(a) == collect(b);
}

SpectrumReport spectrum_check(int d, int z_order, int p_order, const Weights& w, const Weights& probe) {
  SpectrumReport rep;
  rep.d = d;
  rep.partitions = partitions_of(d);
  VarSetPtr vs = VarSetBuilder().var("p", p_order).var("z1", z_order).var("z2", z_order).build();
  int pv = vs->index("p");
  std::vector<std::vector<TruncSeries>> values;  // per partition, per box, embedded into vs
  for (const Partition& l : rep.partitions) {
    BetheRoot root = embed_root(solve_bethe_fixed_point(l, p_order, RootMode::Single, w), vs);
    values.push_back(root.y);
  }
  auto eigen = [&](size_t li, const std::string& z) {
    TruncSeries acc(vs);
    for (const auto& y : values[li]) acc += e_factor(z, y, z_order, w);
    return acc;
  };
  rep.classical_limit = true;
  for (size_t li = 0; li < rep.partitions.size(); ++li) {
    TruncSeries e1 = eigen(li, "z1");
    rep.eigenvalues.push_back(e1);
    TruncSeries classical(vs);
    for (const Box& b : boxes_of(rep.partitions[li])) {
      TruncSeries y(vs, -(w.t1 * RatFunc(b.i)) - w.t2 * RatFunc(b.j));
      classical += e_factor("z1", y, z_order, w);
    }
    if (e1.slice(pv, 0) != classical) {
      rep.classical_limit = false;
      rep.message += "p^0 mismatch at " + partition_string(rep.partitions[li]) + "; ";
    }
  }
  rep.trace_identity = true;
  Geometry ell{1, 0, 0, d};
  for (int npts = 1; npts <= 2; ++npts) {
    std::vector<Insertion> ins;
    TruncSeries expect(vs);
    for (size_t li = 0; li < rep.partitions.size(); ++li) {
      TruncSeries prod(vs, RatFunc(1));
      for (int i = 1; i <= npts; ++i) prod *= eigen(li, "z" + std::to_string(i));
      expect += prod;
    }
    for (int i = 1; i <= npts; ++i) ins.push_back(Insertion{InsertionClass::Point, 0, "z" + std::to_string(i)});
    InvariantSeries inv = invariant(ell, ins, Orders{p_order, z_order}, w);
    std::vector<int> up(vs->size(), 0);
    up[pv] = inv.p_shift;
    bool ok = inv.p_shift >= 0 && inv.series.embed(vs).shifted(up) == expect;
    if (!ok) {
      rep.trace_identity = false;
      rep.message += "trace identity fails with " + std::to_string(npts) + " point insertions; ";
    }
  }
  for (int k = 1; k <= 20 && rep.k0 < 0; ++k) {
    std::set<std::string> seen;
    for (const Partition& l : rep.partitions) {
      RatFunc s;
      for (const Box& b : boxes_of(l)) s += (-(probe.t1 * RatFunc(b.i)) - probe.t2 * RatFunc(b.j)).pow(k);
      seen.insert(s.to_string());
    }
    if (seen.size() == rep.partitions.size()) rep.k0 = k;
  }
  if (rep.k0 < 0) rep.message += "no separating power sum up to k = 20; ";
  return rep;
}

}  // namespace localpt
