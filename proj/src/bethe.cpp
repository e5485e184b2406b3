#include "localpt/bethe.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace localpt {

namespace {

const int kDirs[3][2] = {{1, 0}, {0, 1}, {1, 1}};

int parity_sign(int k) { return (k % 2 + 2) % 2 ? -1 : 1; }

RatFunc form_constant(const LinearForm& l, const Weights& w) {
  RatFunc c(0);
  if (l.c1) c += w.t1 * RatFunc(l.c1);
  if (l.c2) c += w.t2 * RatFunc(l.c2);
  return c;
}

// Y_box at p = 0
RatFunc base_value(const Box& b, const Weights& w) { return -(w.t1 * RatFunc(b.i) + w.t2 * RatFunc(b.j)); }

template <class T>
std::vector<T> shape_products(const std::vector<SkewShape>& shapes, const std::vector<T>& v, const T& one) {
  std::vector<T> u;
  u.reserve(shapes.size());
  for (const SkewShape& s : shapes) {
    T prod = one;
    for (int id : s.box_ids) prod = prod * v[id];
    u.push_back(prod);
  }
  return u;
}

}  // namespace

FactorProduct& FactorProduct::mul(const FactorProduct& o) {
  scalar *= o.scalar;
  factors.insert(factors.end(), o.factors.begin(), o.factors.end());
  return *this;
}

RatFunc evaluate(const LinearForm& l, const BethePoint& y, const Weights& w) {
  RatFunc c = form_constant(l, w);
  if (l.plus >= 0) c += y[l.plus];
  if (l.minus >= 0) c -= y[l.minus];
  return c;
}

RatFunc evaluate(const FactorProduct& f, const BethePoint& y, const Weights& w) {
  RatFunc num = f.scalar, den(1);
  for (const auto& [l, e] : f.factors) {
    RatFunc v = evaluate(l, y, w);
    if (v.is_zero()) throw AdmissibilityError("a factor of the product vanishes at this point");
    if (e > 0) num *= v.pow(e);
    else den *= v.pow(-e);
  }
  return num / den;
}

RatFunc log_derivative(const FactorProduct& f, int k, const BethePoint& y, const Weights& w) {
  RatFunc acc(0);
  for (const auto& [l, e] : f.factors) {
    int s = l.dY(k);
    if (!s) continue;
    RatFunc v = evaluate(l, y, w);
    if (v.is_zero()) throw AdmissibilityError("a factor of the product vanishes at this point");
    acc += RatFunc(s * e) / v;
  }
  return acc;
}

TruncSeries evaluate(const LinearForm& l, const std::vector<TruncSeries>& y, const Weights& w) {
  const VarSetPtr& vs = y.front().varset();
  TruncSeries s(vs, form_constant(l, w));
  if (l.plus >= 0) s += y[l.plus];
  if (l.minus >= 0) s -= y[l.minus];
  return s;
}

TruncSeries evaluate(const FactorProduct& f, const std::vector<TruncSeries>& y, const Weights& w) {
  const VarSetPtr& vs = y.front().varset();
  TruncSeries num(vs, f.scalar), den(vs, RatFunc(1));
  bool has_den = false;
  for (const auto& [l, e] : f.factors) {
    TruncSeries v = evaluate(l, y, w);
    if (e > 0) num *= v.pow(e);
    else {
      den *= v.pow(-e);
      has_den = true;
    }
  }
  return has_den ? num * den.inverse() : num;
}

FactorProduct bethe_F_factors(int d, int i) {
  FactorProduct f;
  f.mul({0, 0, i, -1}, 1).mul({1, 1, -1, i}, -1);
  for (int k = 0; k < d; ++k) {
    if (k == i) continue;
    for (auto& dir : kDirs)
      for (int c = 0; c < 2; ++c) {
        int s = c ? -1 : 1;
        f.mul({s * dir[0], s * dir[1], k, i}, parity_sign(dir[0] + dir[1] + c));
      }
  }
  return f;
}

FactorProduct tilde_g_factors(const Partition& lambda, int a, int b) {
  auto bs = boxes_of(lambda);
  FactorProduct f;
  f.scalar = RatFunc(-1);
  for (auto& dir : kDirs)
    for (int c = 0; c < 2; ++c) {
      int s = c ? -1 : 1;
      if (bs[a].i == bs[b].i + s * dir[0] && bs[a].j == bs[b].j + s * dir[1]) continue;
      LinearForm l = c ? LinearForm{dir[0], dir[1], b, a} : LinearForm{dir[0], dir[1], a, b};
      f.mul(l, parity_sign(dir[0] + dir[1] + c));
    }
  return f;
}

namespace {

FactorProduct tilde_f_factors(const Partition& lambda, int box) {
  FactorProduct f;
  if (box != 0) f.mul({0, 0, box, -1}, 1);
  f.mul({1, 1, -1, box}, -1);
  (void)lambda;
  return f;
}

}  // namespace

FactorProduct tilde_F_factors(const Partition& lambda, int box) {
  FactorProduct f = tilde_f_factors(lambda, box);
  int d = size_of(lambda);
  for (int k = 0; k < d; ++k)
    if (k != box) f.mul(tilde_g_factors(lambda, k, box));
  return f;
}

FactorProduct skew_F_factors(const Partition& lambda, const SkewShape& shape) {
  FactorProduct f;
  int d = size_of(lambda);
  for (int b : shape.box_ids) {
    f.mul(tilde_f_factors(lambda, b));
    for (int k = 0; k < d; ++k)
      if (std::find(shape.box_ids.begin(), shape.box_ids.end(), k) == shape.box_ids.end())
        f.mul(tilde_g_factors(lambda, k, b));
  }
  return f;
}

FactorProduct v_of_y_factors(const Partition& lambda, int box) {
  auto bs = boxes_of(lambda);
  FactorProduct f;
  if (box == 0) f.mul({0, 0, 0, -1}, 1);
  for (auto& dir : kDirs)
    for (int c = 0; c < 2; ++c) {
      int s = c ? -1 : 1;
      int other = box_index(lambda, {bs[box].i + s * dir[0], bs[box].j + s * dir[1]});
      if (other < 0) continue;
      LinearForm l = c ? LinearForm{dir[0], dir[1], box, other} : LinearForm{dir[0], dir[1], other, box};
      f.mul(l, parity_sign(dir[0] + dir[1] + c));
    }
  return f;
}

std::string check_admissible(const BethePoint& y, const Weights& w) {
  RatFunc s = w.t1 + w.t2;
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i].is_zero()) return "Y_" + std::to_string(i) + " = 0";
    if (y[i] == s) return "Y_" + std::to_string(i) + " = t1+t2";
    for (size_t k = 0; k < y.size(); ++k) {
      if (k == i) continue;
      RatFunc diff = y[i] - y[k];
      if (diff == w.t1 || diff == w.t2 || diff == s)
        return "Y_" + std::to_string(i) + " - Y_" + std::to_string(k) + " lies in {t1, t2, t1+t2}";
    }
  }
  return "";
}

std::vector<RatFunc> bethe_F(const BethePoint& y, const Weights& w) {
  std::string why = check_admissible(y, w);
  if (!why.empty()) throw AdmissibilityError("not admissible: " + why);
  std::vector<RatFunc> out;
  for (size_t i = 0; i < y.size(); ++i) out.push_back(evaluate(bethe_F_factors(int(y.size()), int(i)), y, w));
  return out;
}

BethePoint y_tilde(const Partition& lambda, const std::vector<RatFunc>& v, const Weights& w) {
  auto bs = boxes_of(lambda);
  auto shapes = connected_skew_shapes(lambda);
  auto u = shape_products(shapes, v, RatFunc(1));
  BethePoint y;
  for (const Box& b : bs) y.push_back(base_value(b, w));
  for (size_t s = 0; s < shapes.size(); ++s)
    for (int id : shapes[s].box_ids) y[id] += u[s];
  return y;
}

std::vector<TruncSeries> y_tilde(const Partition& lambda, const std::vector<TruncSeries>& v, const Weights& w) {
  auto bs = boxes_of(lambda);
  auto shapes = connected_skew_shapes(lambda);
  const VarSetPtr& vs = v.front().varset();
  auto u = shape_products(shapes, v, TruncSeries(vs, RatFunc(1)));
  std::vector<TruncSeries> y;
  for (const Box& b : bs) y.emplace_back(vs, base_value(b, w));
  for (size_t s = 0; s < shapes.size(); ++s)
    for (int id : shapes[s].box_ids) y[id] += u[s];
  return y;
}

std::string mode_name(RootMode m) { return m == RootMode::PerBox ? "perbox" : "single"; }

RootMode parse_mode(const std::string& s) {
  if (s == "perbox") return RootMode::PerBox;
  if (s == "single") return RootMode::Single;
  throw std::invalid_argument("unknown root mode: " + s);
}

std::string BetheRoot::p_name(int box) const {
  return mode == RootMode::PerBox ? box_var(boxes_of(lambda)[box]) : std::string("p");
}

TruncSeries BetheRoot::v(int box) const {
  std::vector<int> e(vars->size(), 0);
  e[vars->index(p_name(box))] = 1;
  return w[box].shifted(e);
}

VarSetPtr root_varset(const Partition& lambda, int order, RootMode mode) {
  if (mode == RootMode::Single) return VarSetBuilder().var("p", order).build();
  std::vector<std::string> names;
  for (const Box& b : boxes_of(lambda)) names.push_back(box_var(b));
  return VarSetBuilder().boxes(names, order).build();
}

namespace {

std::vector<TruncSeries> tilde_F_values(const Partition& lambda, const std::vector<FactorProduct>& ft,
                                        const std::vector<TruncSeries>& y, const Weights& w) {
  std::vector<TruncSeries> out;
  for (const FactorProduct& f : ft) {
    try {
      out.push_back(evaluate(f, y, w));
    } catch (const NonInvertibleConstantTerm&) {
      throw NonInvertibleConstantTerm("a factor of the modified Bethe function vanishes at p = 0 for λ = (" +
                                      partition_string(lambda) + ")");
    }
  }
  return out;
}

}  // namespace

BetheRoot solve_bethe_fixed_point(const Partition& lambda, int order, RootMode mode, const Weights& w) {
  if (order < 0) throw std::invalid_argument("negative order");
  int d = size_of(lambda);
  BetheRoot root;
  root.lambda = lambda;
  root.mode = mode;
  root.order = order;
  root.weights = w;
  std::vector<FactorProduct> ft;
  for (int b = 0; b < d; ++b) ft.push_back(tilde_F_factors(lambda, b));

  VarSetPtr vs = root_varset(lambda, 0, mode);
  std::vector<TruncSeries> v(d, TruncSeries(vs));
  root.vars = vs;
  // step n only needs precision n, so the cap grows with the step
  for (int n = 1; n <= order; ++n) {
    vs = root_varset(lambda, n, mode);
    root.vars = vs;
    for (auto& s : v) s = s.embed(vs);
    auto y = y_tilde(lambda, v, w);
    auto f = tilde_F_values(lambda, ft, y, w);
    for (int b = 0; b < d; ++b) v[b] = TruncSeries::variable(vs, root.p_name(b)) * f[b].inverse();
  }
  if (d == 0) return root;
  root.y = y_tilde(lambda, v, w);
  complete_root(root);
  return root;
}

void complete_root(BetheRoot& root) {
  int d = size_of(root.lambda);
  root.w.clear();
  for (int b = 0; b < d; ++b) {
    TruncSeries f = tilde_F_values(root.lambda, {tilde_F_factors(root.lambda, b)}, root.y, root.weights)[0];
    root.w.push_back(f.inverse());
  }
}

BetheRoot embed_root(const BetheRoot& root, const VarSetPtr& target) {
  BetheRoot r = root;
  r.vars = target;
  for (auto& s : r.y) s = s.embed(target);
  for (auto& s : r.w) s = s.embed(target);
  return r;
}

ResidualReport verify_bethe(const BetheRoot& root) {
  ResidualReport rep;
  int d = size_of(root.lambda);
  auto bs = boxes_of(root.lambda);
  const Weights& w = root.weights;
  for (int b = 0; b < d; ++b)
    if (root.y[b].constant_term() != base_value(bs[b], w)) {
      rep.pass = rep.constants_ok = false;
      rep.failing_degree = 0;
      rep.failing_box = b;
      rep.message = "constant term of Y_" + box_key(bs[b]) + " is wrong";
      return rep;
    }
  for (int b = 0; b < d; ++b) {
    FactorProduct f = bethe_F_factors(d, b);
    TruncSeries num(root.vars, RatFunc(1)), den(root.vars, RatFunc(1));
    for (const auto& [l, e] : f.factors) {
      TruncSeries s = evaluate(l, root.y, w);
      if (e > 0) num *= s.pow(e);
      else den *= s.pow(-e);
    }
    TruncSeries res = num - TruncSeries::variable(root.vars, root.p_name(b)) * den;
    for (const auto& [e, c] : res.terms()) {
      int deg = 0;
      for (int k = 0; k < root.vars->size(); ++k) deg += e[k];
      if (rep.failing_degree < 0 || deg < rep.failing_degree) {
        rep.failing_degree = deg;
        rep.failing_box = b;
      }
    }
  }
  if (rep.failing_degree >= 0) {
    rep.pass = false;
    rep.message = "Bethe equation for box " + box_key(bs[rep.failing_box]) + " fails at total degree " +
                  std::to_string(rep.failing_degree);
  }
  return rep;
}

std::vector<RatFunc> closed_form_coefficient(const Partition& lambda, const std::vector<int>& exponent,
                                             const Weights& w) {
  int d = size_of(lambda);
  auto bs = boxes_of(lambda);
  if (int(exponent.size()) != d) throw std::invalid_argument("exponent length differs from |λ|");
  VarSetBuilder vb;
  for (int b = 0; b < d; ++b) {
    if (exponent[b] < 0) throw std::invalid_argument("negative exponent");
    vb.var("v_" + box_key(bs[b]), exponent[b]);
  }
  VarSetPtr vs = vb.build();
  std::vector<TruncSeries> v;
  for (int b = 0; b < d; ++b) v.push_back(TruncSeries::variable(vs, vs->vars[b].name));
  auto y = y_tilde(lambda, v, w);
  std::vector<TruncSeries> ft, ft_inv;
  for (int b = 0; b < d; ++b) {
    ft.push_back(evaluate(tilde_F_factors(lambda, b), y, w));
    ft_inv.push_back(ft.back().inverse());
  }
  TruncSeries weightf(vs, RatFunc(1));
  for (int b = 0; b < d; ++b) weightf *= ft_inv[b].pow(exponent[b]);
  SeriesMatrix k = identity_matrix(vs, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) k[a][b] += ft[b].pd(a) * ft_inv[b];
  weightf *= determinant(k, vs);
  Exps e{};
  for (int b = 0; b < d; ++b) e[b] = uint8_t(exponent[b]);
  std::vector<RatFunc> out;
  for (int b = 0; b < d; ++b) out.push_back((y[b] * weightf).coeff(e));
  return out;
}

std::vector<RatFunc> v_of_y(const Partition& lambda, const BethePoint& y, const Weights& w) {
  std::string why = check_admissible(y, w);
  if (!why.empty()) throw AdmissibilityError("not admissible: " + why);
  std::vector<RatFunc> v;
  for (int b = 0; b < size_of(lambda); ++b) v.push_back(evaluate(v_of_y_factors(lambda, b), y, w));
  return v;
}

JacobianDets jacobian_dets(const Partition& lambda, const BethePoint& y, const Weights& w) {
  int d = size_of(lambda);
  auto bs = boxes_of(lambda);
  auto v = v_of_y(lambda, y, w);
  RatMatrix j(d, std::vector<RatFunc>(d));
  for (int a = 0; a < d; ++a) {
    FactorProduct f = v_of_y_factors(lambda, a);
    for (int k = 0; k < d; ++k) j[a][k] = v[a] * log_derivative(f, k, y, w);
  }
  FactorProduct prod;
  for (int a = 0; a < d; ++a)
    for (int da = 0; da <= 1; ++da)
      for (int db = 0; db <= 1; ++db) {
        if (!da && !db) continue;
        int k = box_index(lambda, {bs[a].i + da, bs[a].j + db});
        if (k >= 0) prod.mul({da, db, k, a}, parity_sign(da + db));
      }
  return {determinant(j), evaluate(prod, y, w)};
}

RatMatrix bethe_log_jacobian(const BethePoint& y, const Weights& w) {
  int d = int(y.size());
  RatMatrix m(d, std::vector<RatFunc>(d));
  for (int j = 0; j < d; ++j) {
    FactorProduct f = bethe_F_factors(d, j);
    for (int i = 0; i < d; ++i) m[i][j] = log_derivative(f, i, y, w);
  }
  return m;
}

namespace {

// D(a, i) = d y_tilde_i / d v_a
template <class T>
std::vector<std::vector<T>> tilde_jacobian(const Partition& lambda, const std::vector<T>& v, const T& zero,
                                           const T& one) {
  int d = size_of(lambda);
  auto shapes = connected_skew_shapes(lambda);
  std::vector<std::vector<T>> m(d, std::vector<T>(d, zero));
  for (const SkewShape& s : shapes)
    for (int a : s.box_ids) {
      T prod = one;
      for (int b : s.box_ids)
        if (b != a) prod = prod * v[b];
      for (int i : s.box_ids) m[a][i] = m[a][i] + prod;
    }
  return m;
}

}  // namespace

MatrixIdentityReport matrix_identities(const Partition& lambda, const std::vector<RatFunc>& v, const Weights& w) {
  int d = size_of(lambda);
  for (const RatFunc& x : v)
    if (x.is_zero()) throw AdmissibilityError("some v vanishes");
  BethePoint y = y_tilde(lambda, v, w);
  std::string why = check_admissible(y, w);
  if (!why.empty()) throw AdmissibilityError("not admissible: " + why);
  auto shapes = connected_skew_shapes(lambda);
  int ns = int(shapes.size());
  auto u = shape_products(shapes, v, RatFunc(1));

  RatMatrix mb = bethe_log_jacobian(y, w);
  RatMatrix ms(ns, std::vector<RatFunc>(ns, RatFunc(0)));
  for (int b = 0; b < ns; ++b) {
    FactorProduct fb = skew_F_factors(lambda, shapes[b]);
    for (int a = 0; a < ns; ++a) {
      RatFunc acc = a == b ? u[a].inverse() : RatFunc(0);
      for (int box : shapes[a].box_ids) acc += log_derivative(fb, box, y, w);
      ms[a][b] = acc;
    }
  }
  RatMatrix dm = tilde_jacobian(lambda, v, RatFunc(0), RatFunc(1));

  MatrixIdentityReport rep;
  rep.lhs = determinant(ms);
  for (const RatFunc& x : u) rep.lhs *= x;
  rep.rhs = determinant(dm) * determinant(mb);
  for (const RatFunc& x : v) rep.rhs *= x;
  rep.determinant_identity = rep.lhs == rep.rhs;

  RatMatrix q(ns, std::vector<RatFunc>(d, RatFunc(0)));
  for (int a = 0; a < ns; ++a)
    for (int box : shapes[a].box_ids) q[a][box] = RatFunc(1);
  RatMatrix left = multiply(multiply(transpose(q), inverse(ms)), q);
  rep.inverse_identity = left == inverse(mb);
  return rep;
}

SeriesMatrix root_derivative_matrix(const BetheRoot& root) {
  if (root.mode != RootMode::PerBox) throw std::invalid_argument("derivative matrix needs per-box variables");
  int d = size_of(root.lambda);
  SeriesMatrix m(d, std::vector<TruncSeries>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m[a][b] = root.y[b].pd(root.p_name(a));
  return m;
}

namespace {

ShiftedSeries monomial_unit(const BetheRoot& root, const std::vector<int>& boxes_r, const TruncSeries& unit_v) {
  std::vector<int> shift(root.vars->size(), 0);
  TruncSeries unit = unit_v;
  for (int b : boxes_r) {
    shift[root.vars->index(root.p_name(b))] += 1;
    unit *= root.w[b];
  }
  return ShiftedSeries{shift, unit};
}

}  // namespace

ShiftedSeries root_factor(const BetheRoot& root, const LinearForm& l) {
  const Weights& w = root.weights;
  RatFunc c = form_constant(l, w);
  auto bs = boxes_of(root.lambda);
  if (l.plus >= 0) c += base_value(bs[l.plus], w);
  if (l.minus >= 0) c -= base_value(bs[l.minus], w);
  if (!c.is_zero()) return ShiftedSeries::unit(evaluate(l, root.y, w));
  if (l.c1 <= 0 && l.c2 <= 0 && (l.c1 < 0 || l.c2 < 0))
    return -root_factor(root, LinearForm{-l.c1, -l.c2, l.minus, l.plus});
  if (l.plus < 0 || l.c1 < 0 || l.c2 < 0) throw std::logic_error("unexpected vanishing linear form");
  Box k = bs[l.plus];
  if (l.minus < 0 && (k.i || k.j)) throw std::logic_error("unexpected vanishing linear form");
  // L = sum over connected shapes S containing k but not the minus box of prod_S v; all such S contain R
  std::vector<int> r;
  for (size_t b = 0; b < bs.size(); ++b)
    if (k.below_or_equal(bs[b])) r.push_back(int(b));
  TruncSeries unit_v(root.vars);
  for (const SkewShape& s : connected_skew_shapes(root.lambda)) {
    if (!s.contains(k)) continue;
    if (l.minus >= 0 && s.contains(bs[l.minus])) continue;
    TruncSeries prod(root.vars, RatFunc(1));
    for (int b : s.box_ids)
      if (!k.below_or_equal(bs[b])) prod *= root.v(b);
    unit_v += prod;
  }
  return monomial_unit(root, r, unit_v);
}

ShiftedSeries root_product(const BetheRoot& root, const FactorProduct& f) {
  ShiftedSeries num = ShiftedSeries::unit(TruncSeries(root.vars, f.scalar));
  ShiftedSeries den = ShiftedSeries::unit(TruncSeries(root.vars, RatFunc(1)));
  for (const auto& [l, e] : f.factors) {
    ShiftedSeries v = root_factor(root, l);
    if (e > 0) num = num * v.pow(e);
    else den = den * v.pow(-e);
  }
  return num * den.inverse();
}

std::vector<std::vector<ShiftedSeries>> root_log_jacobian(const BetheRoot& root) {
  int d = size_of(root.lambda);
  std::vector<std::vector<ShiftedSeries>> m(d, std::vector<ShiftedSeries>(d));
  for (int j = 0; j < d; ++j) {
    FactorProduct f = bethe_F_factors(d, j);
    std::vector<std::optional<ShiftedSeries>> acc(d);
    for (const auto& [l, e] : f.factors) {
      ShiftedSeries inv;
      bool have = false;
      for (int i = 0; i < d; ++i) {
        int s = l.dY(i);
        if (!s) continue;
        if (!have) {
          inv = root_factor(root, l).inverse();
          have = true;
        }
        ShiftedSeries t{inv.shift, inv.series.scaled(RatFunc(s * e))};
        acc[i] = acc[i] ? *acc[i] + t : t;
      }
    }
    for (int i = 0; i < d; ++i)
      m[i][j] = acc[i] ? *acc[i] : ShiftedSeries::unit(TruncSeries(root.vars));
  }
  return m;
}

ShiftedSeries root_log_jacobian_det(const BetheRoot& root) {
  int d = size_of(root.lambda);
  const VarSetPtr& vs = root.vars;
  auto bs = boxes_of(root.lambda);
  const Weights& w = root.weights;

  // det of the polynomial matrix d y_tilde / d v, factored as a monomial times a unit
  VarSetBuilder vb;
  for (int b = 0; b < d; ++b) vb.var("v_" + box_key(bs[b]), d);
  VarSetPtr pvs = vb.build();
  std::vector<TruncSeries> pv;
  for (int b = 0; b < d; ++b) pv.push_back(TruncSeries::variable(pvs, pvs->vars[b].name));
  auto pd = tilde_jacobian(root.lambda, pv, TruncSeries(pvs), TruncSeries(pvs, RatFunc(1)));
  TruncSeries det_poly = determinant_expansion(pd, pvs);
  if (det_poly.is_zero()) throw std::logic_error("degenerate Jacobian of the skew-shape parametrization");
  Exps lo = det_poly.terms().front().first;
  for (const auto& [e, c] : det_poly.terms())
    for (int b = 0; b < d; ++b) lo[b] = std::min(lo[b], e[b]);
  std::vector<TruncSeries::Term> reduced;
  for (const auto& [e, c] : det_poly.terms()) {
    Exps r = e;
    for (int b = 0; b < d; ++b) r[b] -= lo[b];
    reduced.push_back({r, c});
  }
  TruncSeries unit_poly = TruncSeries::from_terms(pvs, reduced);
  if (unit_poly.constant_term().is_zero()) throw std::logic_error("Jacobian determinant is not monomial times unit");

  std::vector<TruncSeries> v;
  for (int b = 0; b < d; ++b) v.push_back(root.v(b));
  std::vector<int> rbox;
  for (int b = 0; b < d; ++b)
    for (int k = 0; k < lo[b]; ++k) rbox.push_back(b);
  ShiftedSeries det_d = monomial_unit(root, rbox, compose(unit_poly, v, vs));

  std::vector<int> all;
  for (int b = 0; b < d; ++b) all.push_back(b);
  ShiftedSeries prod_v = monomial_unit(root, all, TruncSeries(vs, RatFunc(1)));

  // I + V D J2 with J2 = d log F_tilde / d Y, a matrix of series
  auto dm = tilde_jacobian(root.lambda, v, TruncSeries(vs), TruncSeries(vs, RatFunc(1)));
  SeriesMatrix j2(d, std::vector<TruncSeries>(d, TruncSeries(vs)));
  for (int b = 0; b < d; ++b) {
    FactorProduct f = tilde_F_factors(root.lambda, b);
    for (const auto& [l, e] : f.factors) {
      TruncSeries inv;
      bool have = false;
      for (int i = 0; i < d; ++i) {
        int s = l.dY(i);
        if (!s) continue;
        if (!have) {
          inv = evaluate(l, root.y, w).inverse();
          have = true;
        }
        j2[i][b] += inv.scaled(RatFunc(s * e));
      }
    }
  }
  SeriesMatrix k = multiply(dm, j2);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) k[a][b] = v[a] * k[a][b];
  for (int a = 0; a < d; ++a) k[a][a] += TruncSeries(vs, RatFunc(1));
  ShiftedSeries det_k = ShiftedSeries::unit(determinant(k, vs));
  return det_k * (det_d * prod_v).inverse();
}

}  // namespace localpt
