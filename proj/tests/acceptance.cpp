// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select criteria by number.
#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "localpt/analysis.hpp"
#include "localpt/locoracle.hpp"

using namespace localpt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += why + "; ";
  }
};

const RatFunc T1 = RatFunc::t1();
const RatFunc T2 = RatFunc::t2();

int total_degree(const Exps& e, int n) {
  int d = 0;
  for (int i = 0; i < n; ++i) d += e[i];
  return d;
}

std::vector<Insertion> parse_all(const std::vector<std::string>& s) {
  std::vector<Insertion> out;
  for (const auto& x : s) out.push_back(parse_insertion(x));
  return out;
}

std::string describe(const Geometry& g, const std::vector<std::string>& ins) {
  std::ostringstream os;
  os << "(g,l1,l2,d)=(" << g.g << "," << g.l1 << "," << g.l2 << "," << g.d << ") [";
  for (size_t i = 0; i < ins.size(); ++i) os << (i ? " " : "") << ins[i];
  os << "]";
  return os.str();
}

struct OracleCase {
  Geometry geom;
  std::vector<std::string> ins;
};

std::vector<OracleCase> oracle_cases() {
  std::vector<OracleCase> out;
  for (auto [g, l1, l2] : std::vector<std::array<int, 3>>{{0, 0, 0}, {0, -1, -1}, {1, 0, 0}, {2, 1, 0}})
    for (int d = 1; d <= 2; ++d) {
      std::vector<std::vector<std::string>> sets{{}, {"pt:y"}, {"pt:y", "pt:z"}, {"1:x"}};
      if (g >= 1) sets.push_back({"a1:z", "b1:w"});
      for (auto& s : sets) out.push_back({Geometry{g, l1, l2, d}, s});
    }
  return out;
}

Outcome criterion1() {
  Outcome o;
  BetheRoot r = solve_bethe_fixed_point({1}, 8);
  TruncSeries expect(r.vars);
  for (int k = 1; k <= 8; ++k) {
    Exps e{};
    e[0] = uint8_t(k);
    expect += TruncSeries::monomial(r.vars, e, (T1 + T2) * RatFunc(k % 2 ? 1 : -1));
  }
  if (r.y[0] != expect) o.fail("got " + r.y[0].to_string());
  o.detail = "Y = " + r.y[0].to_string();
  return o;
}

Outcome criterion2() {
  Outcome o;
  int count = 0;
  for (int d = 1; d <= 4; ++d)
    for (const Partition& l : partitions_of(d)) {
      auto rep = verify_bethe(solve_bethe_fixed_point(l, 6, RootMode::PerBox));
      ++count;
      if (!rep.pass) o.fail(partition_string(l) + ": " + rep.message);
    }
  if (o.pass) o.detail = std::to_string(count) + " partitions verified at total order 6";
  return o;
}

Outcome criterion3() {
  Outcome o;
  int checked = 0;
  for (const Partition& l : {Partition{2}, Partition{1, 1}, Partition{3}, Partition{2, 1}}) {
    const int top = 4;
    BetheRoot r = solve_bethe_fixed_point(l, top);
    int d = size_of(l);
    std::vector<int> n(d, 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
      if (k == d) {
        auto cf = closed_form_coefficient(l, n);
        Exps e{};
        for (int b = 0; b < d; ++b) e[b] = uint8_t(n[b]);
        for (int b = 0; b < d; ++b) {
          ++checked;
          if (cf[b] != r.y[b].coeff(e)) o.fail(partition_string(l) + " box " + std::to_string(b));
        }
        return;
      }
      for (int x = 0; x <= left; ++x) {
        n[k] = x;
        rec(k + 1, left - x);
      }
      n[k] = 0;
    };
    rec(0, top);
  }
  if (o.pass) o.detail = std::to_string(checked) + " coefficients agree";
  return o;
}

Outcome criterion4() {
  Outcome o;
  Substitution s;
  s.has_t2 = true;
  s.t2 = -T1;
  int checked = 0;
  for (int d = 1; d <= 3; ++d)
    for (const Partition& l : partitions_of(d)) {
      BetheRoot r = solve_bethe_fixed_point(l, 6);
      auto bs = boxes_of(l);
      for (size_t b = 0; b < bs.size(); ++b) {
        RatFunc constant = substitute(r.y[b].constant_term(), s);
        if (constant != T1 * RatFunc(bs[b].j - bs[b].i)) o.fail(partition_string(l) + " constant term");
        for (const auto& [e, c] : r.y[b].terms()) {
          if (total_degree(e, r.vars->size()) == 0) continue;
          ++checked;
          if (!substitute(c, s).is_zero()) o.fail(partition_string(l) + " nonzero higher coefficient");
        }
      }
    }
  if (o.pass) o.detail = "constant terms t1(j-i), " + std::to_string(checked) + " higher coefficients vanish";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const int target = 5;
  for (int n = 1; n <= 3; ++n)
    for (const Partition& l : partitions_of(n)) {
      int d = size_of(l);
      BetheRoot r = solve_bethe_fixed_point(l, target + d);
      auto m = root_log_jacobian(r);
      auto mt = root_derivative_matrix(r);
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
          std::optional<ShiftedSeries> acc;
          for (int j = 0; j < d; ++j) {
            ShiftedSeries t = m[i][j] * ShiftedSeries::unit(mt[j][k]);
            acc = acc ? *acc + t : t;
          }
          int lo = 0;
          for (int x : acc->shift) lo += x;
          if (r.order + lo < target) o.fail(partition_string(l) + " lost precision");
          RatFunc constant;
          for (const auto& [e, c] : acc->series.terms()) {
            int deg = lo + total_degree(e, r.vars->size());
            if (deg > target) continue;
            if (deg == 0)
              constant = c;
            else if (!c.is_zero())
              o.fail(partition_string(l) + " entry (" + std::to_string(i) + "," + std::to_string(k) + ") degree " +
                     std::to_string(deg));
          }
          if (constant != RatFunc(i == k ? 1 : 0)) o.fail(partition_string(l) + " constant term");
        }
    }
  if (o.pass) o.detail = "identity through total degree 5 for all |lambda| <= 3";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(61);
  int points = 0;
  for (int n = 1; n <= 4; ++n)
    for (const Partition& l : partitions_of(n)) {
      int d = size_of(l);
      Weights w = Weights::probe(100 + points);
      for (int k = 0; k < 20; ++k) {
        BethePoint y;
        for (;;) {
          y.clear();
          for (int b = 0; b < d; ++b) y.push_back(RatFunc(random_rational(rng, 30)));
          if (check_admissible(y, w).empty()) break;
        }
        std::vector<RatFunc> v;
        try {
          v = v_of_y(l, y, w);
        } catch (const AdmissibilityError&) {
          --k;
          continue;
        }
        ++points;
        if (y_tilde(l, v, w) != y) o.fail(partition_string(l) + " round trip");
        auto j = jacobian_dets(l, y, w);
        if (j.determinant != j.product_formula) o.fail(partition_string(l) + " determinant product formula");
        auto m = matrix_identities(l, v, w);
        if (!m.determinant_identity || !m.inverse_identity) o.fail(partition_string(l) + " matrix identities");
      }
    }
  if (o.pass) o.detail = std::to_string(points) + " random admissible points";
  return o;
}

Outcome criterion7() {
  Outcome o;
  int nonzero = 0, n = 0;
  for (const auto& c : oracle_cases()) {
    auto ins = parse_all(c.ins);
    InvariantSeries a = invariant(c.geom, ins, Orders{4, 4});
    InvariantSeries b = invariant_via_m_sum(c.geom, ins, Orders{4, 4});
    ++n;
    nonzero += !a.series.is_zero();
    if (!same_invariant(a, b)) o.fail(describe(c.geom, c.ins));
  }
  if (o.pass) o.detail = std::to_string(n) + " invariants agree, " + std::to_string(nonzero) + " nonzero";
  return o;
}

long count_partitions(int n, int max_part) {
  if (n == 0) return 1;
  long c = 0;
  for (int k = 1; k <= std::min(n, max_part); ++k) c += count_partitions(n - k, k);
  return c;
}

Outcome criterion8() {
  Outcome o;
  std::string vals;
  for (int d = 1; d <= 5; ++d) {
    InvariantSeries inv = invariant(Geometry{1, 0, 0, d}, {}, Orders{4, 1});
    TruncSeries expect(inv.series.varset(), RatFunc(count_partitions(d, d)));
    if (inv.series != expect || inv.p_shift != 0) o.fail("d=" + std::to_string(d) + ": " + inv.series.to_string());
    vals += (d > 1 ? "," : "") + inv.series.to_string();
  }
  if (o.pass) o.detail = "constants " + vals;
  return o;
}

Outcome criterion9() {
  Outcome o;
  const int p_order = 24, guards = 2;
  int n = 0, monomials = 0;
  for (const auto& c : oracle_cases()) {
    Weights w = c.geom.d == 1 ? Weights{} : Weights::probe(901);
    InvariantSeries inv = invariant(c.geom, parse_all(c.ins), Orders{p_order, 4}, w);
    InvariantFit fit = fit_invariant_minimal(inv, guards);
    InvariantFit neg = fit_invariant_minimal(negate_descendents(inv), guards);
    ++n;
    monomials += int(fit.fits.size());
    std::string tag = describe(c.geom, c.ins);
    if (!fit.complete() || !neg.complete()) {
      o.fail(tag + " no fit");
      continue;
    }
    Verdict fe = check_functional_equation(fit, neg, c.geom.d_beta());
    if (!fe.pass) o.fail(tag + " functional: " + fe.witness);
    Verdict poles = check_pole_locations(fit, c.geom.d);
    if (!poles.pass) o.fail(tag + " poles: " + poles.witness);
  }
  if (o.pass)
    o.detail = std::to_string(n) + " invariants, " + std::to_string(monomials) +
               " z-monomials fitted (degree 1 symbolic, degree 2 at a probe point; p-order 24, 2 guards)";
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::string ks;
  for (int d = 1; d <= 3; ++d) {
    SpectrumReport rep = spectrum_check(d, 4, 4);
    if (!rep.classical_limit) o.fail("d=" + std::to_string(d) + " classical limit");
    if (!rep.trace_identity) o.fail("d=" + std::to_string(d) + " trace identity");
    if (rep.k0 < 1) o.fail("d=" + std::to_string(d) + " no separating power sum");
    ks += " d=" + std::to_string(d) + ":k0=" + std::to_string(rep.k0);
  }
  if (o.pass) o.detail = "eigenvalue limits and trace identities hold;" + ks;
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::mt19937_64 rng(1111);
  auto small = [&](bool allow_zero) {
    for (;;) {
      BigRat q = random_rational(rng, 5);
      if (allow_zero || q != 0) return RatFunc(q);
    }
  };
  int nonzero = 0;
  for (int k = 0; k < 50; ++k) {
    std::uniform_int_distribution<int> g_dist(0, 2), n_dist(1, 3), m_dist(0, 3), coin(0, 1), tcount(0, 2);
    SymIntegrand s;
    s.genus = g_dist(rng);
    int n = n_dist(rng);
    for (int i = 0; i < n; ++i) s.u_powers.push_back(m_dist(rng));
    std::uniform_int_distribution<int> idx(0, n - 1);
    s.alpha.assign(s.genus, {});
    s.beta.assign(s.genus, {});
    std::vector<int> odd(n, 0);
    for (int l = 0; l < s.genus; ++l) {
      int r = std::uniform_int_distribution<int>(0, 2)(rng);
      for (int j = 0; j < r; ++j) ++odd[s.alpha[l].emplace_back(idx(rng))];
      for (int j = 0; j < r; ++j) ++odd[s.beta[l].emplace_back(idx(rng))];
    }
    int t = tcount(rng);
    for (int j = 0; j < t; ++j) s.theta.push_back({idx(rng), idx(rng)});
    s.z.assign(n, std::vector<RatFunc>(n));
    for (auto& row : s.z)
      for (auto& x : row) x = coin(rng) || coin(rng) ? small(true) : RatFunc(0);
    s.coeff = small(false);
    // most of the time pick sizes at which the integrand has top degree somewhere, otherwise uniformly
    std::vector<std::vector<int>> live;
    for (int code = 0; code < (1 << (2 * n)); ++code) {
      std::vector<int> sz;
      for (int i = 0; i < n; ++i) sz.push_back(code >> (2 * i) & 3);
      s.sizes = sz;
      if (!sym_integral_bruteforce(s).is_zero()) live.push_back(sz);
    }
    if (!live.empty() && std::uniform_int_distribution<int>(0, 3)(rng))
      s.sizes = live[std::uniform_int_distribution<size_t>(0, live.size() - 1)(rng)];
    else
      for (int i = 0; i < n; ++i) s.sizes[i] = std::uniform_int_distribution<int>(0, 3)(rng);
    RatFunc a = sym_integral(s), b = sym_integral_bruteforce(s);
    if (a != b) o.fail("instance " + std::to_string(k));
    nonzero += !a.is_zero();
  }
  if (nonzero == 0) o.fail("all instances vanish");
  if (o.pass) o.detail = "50 instances agree, " + std::to_string(nonzero) + " nonzero";
  return o;
}

Outcome criterion12() {
  Outcome o;
  int entries = 0;
  for (auto [g, l1, l2] : std::vector<std::array<int, 3>>{{0, 0, 0}, {0, -1, -1}, {1, 0, 0}, {2, 1, 0}}) {
    std::vector<std::string> names{"pt:y", "1:x"};
    if (g >= 1) names = {"a1:z", "pt:y", "b1:w"};
    auto ins = parse_all(names);
    Orders ord{4, 4};
    VarSetPtr vs = bracket_varset(ins, ord);
    Geometry geom{g, l1, l2, 2};
    BracketTable disc = disconnected_table(geom, ins, ord);
    BracketTable conn = connected_invariants(disc, ins, 2, vs);
    BracketTable back = disconnected_from_connected(conn, ins, 2, vs);
    for (const auto& [k, v] : disc) {
      ++entries;
      if (!same_bracket(v, back.at(k)))
        o.fail(describe(geom, names) + " subset " + std::to_string(k.first) + " degree " + std::to_string(k.second));
    }
    for (uint32_t m = 0; m < (1u << ins.size()); ++m)
      if (!same_bracket(conn.at({m, 1}), disc.at({m, 1}))) o.fail(describe(geom, names) + " degree 1 differs");
  }
  if (o.pass) o.detail = std::to_string(entries) + " table entries reconstructed";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3,  criterion4,
                                                 criterion5, criterion6, criterion7,  criterion8,
                                                 criterion9, criterion10, criterion11, criterion12};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    int id = int(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << id << ": " << (r.pass ? "PASS" : "FAIL") << " (" << secs << " s) " << r.detail
              << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
