#include <gtest/gtest.h>

#include <random>

#include "localpt/bethe.hpp"

using namespace localpt;

namespace {

const RatFunc T1 = RatFunc::t1();
const RatFunc T2 = RatFunc::t2();

Exps exps(std::initializer_list<int> xs) {
  Exps e{};
  int k = 0;
  for (int x : xs) e[k++] = uint8_t(x);
  return e;
}

// Random admissible rational point for a fixed probe weight.
BethePoint random_point(std::mt19937_64& rng, int d, const Weights& w) {
  for (;;) {
    BethePoint y;
    for (int k = 0; k < d; ++k) y.push_back(RatFunc(random_rational(rng, 30)));
    if (check_admissible(y, w).empty()) return y;
  }
}

std::vector<RatFunc> random_v(std::mt19937_64& rng, int d) {
  std::vector<RatFunc> v;
  for (int k = 0; k < d; ++k) {
    BigRat q = 0;
    while (q == 0) q = random_rational(rng, 20);
    v.push_back(RatFunc(q));
  }
  return v;
}

}  // namespace

TEST(Bethe, SingleBoxAtMidpointIsOne) {
  auto f = bethe_F({(T1 + T2) / RatFunc(2)});
  EXPECT_TRUE(f[0].is_one());
}

TEST(Bethe, ConstantTupleSolvesEquations) {
  RatFunc p = RatFunc(BigRat(3, 5));
  for (int d = 1; d <= 4; ++d) {
    RatFunc s = d % 2 ? p : -p;
    BethePoint y(d, (T1 + T2) * s / (s + RatFunc(1)));
    try {
      for (const RatFunc& f : bethe_F(y)) EXPECT_EQ(f, p);
    } catch (const AdmissibilityError&) {
      // equal entries are admissible but not fully admissible; the product is still defined
      FAIL();
    }
  }
}

TEST(Bethe, TwoBoxNumericValue) {
  auto f = bethe_F({RatFunc(1), RatFunc(2)}, Weights::at(5, 7));
  EXPECT_EQ(f[0], RatFunc(BigRat(-13, 242)));
}

TEST(Bethe, InadmissiblePointThrows) {
  EXPECT_THROW(bethe_F({T1, RatFunc(0)}), AdmissibilityError);
  EXPECT_THROW(bethe_F({T1 + T2, RatFunc(1)}), AdmissibilityError);
}

TEST(Bethe, YTildeExamples) {
  auto y0 = y_tilde({2, 1}, {RatFunc(0), RatFunc(0), RatFunc(0)});
  EXPECT_EQ(y0[0], RatFunc(0));
  EXPECT_EQ(y0[1], -T2);
  EXPECT_EQ(y0[2], -T1);
  RatFunc a(BigRat(2, 3)), b(BigRat(-5, 7));
  auto y1 = y_tilde({1}, {a});
  EXPECT_EQ(y1[0], a);
  auto y2 = y_tilde({2}, {a, b});
  EXPECT_EQ(y2[0], a * b);
  EXPECT_EQ(y2[1], -T2 + b + a * b);
}

TEST(Bethe, SingleBoxClosedForm) {
  BetheRoot r = solve_bethe_fixed_point({1}, 8, RootMode::Single);
  std::vector<TruncSeries::Term> terms;
  for (int k = 1; k <= 8; ++k) terms.push_back({exps({k}), (T1 + T2) * RatFunc(k % 2 ? 1 : -1)});
  EXPECT_EQ(r.y[0], TruncSeries::from_terms(r.vars, terms));
  EXPECT_TRUE(verify_bethe(r).pass);
}

TEST(Bethe, OrderZeroGivesBaseValues) {
  BetheRoot r = solve_bethe_fixed_point({2, 1}, 0);
  EXPECT_EQ(r.y[0], TruncSeries(r.vars, RatFunc(0)));
  EXPECT_EQ(r.y[1], TruncSeries(r.vars, -T2));
  EXPECT_EQ(r.y[2], TruncSeries(r.vars, -T1));
  EXPECT_TRUE(verify_bethe(r).pass);
}

TEST(Bethe, TwoBoxLinearCoefficient) {
  BetheRoot r = solve_bethe_fixed_point({2}, 2);
  EXPECT_EQ(r.y[1].coeff(exps({0, 1})), RatFunc(2) * T1 * (T1 + T2) / (T1 - T2));
}

TEST(Bethe, CorruptedCoefficientFailsAtItsDegree) {
  BetheRoot r = solve_bethe_fixed_point({1}, 6, RootMode::Single);
  r.y[0] += TruncSeries::monomial(r.vars, exps({3}), RatFunc(1));
  auto rep = verify_bethe(r);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.failing_degree, 3);
}

TEST(Bethe, ResidualPassesForSmallPartitions) {
  for (int d = 1; d <= 3; ++d)
    for (const Partition& l : partitions_of(d)) {
      auto rep = verify_bethe(solve_bethe_fixed_point(l, 4));
      EXPECT_TRUE(rep.pass) << partition_string(l) << ": " << rep.message;
    }
}

TEST(Bethe, FixedPointMatchesLagrangeCoefficients) {
  for (const Partition& l : {Partition{2}, Partition{1, 1}, Partition{2, 1}}) {
    BetheRoot r = solve_bethe_fixed_point(l, 3);
    int d = size_of(l);
    for (const auto& [e, c] : TruncSeries(r.vars, RatFunc(1)).terms()) (void)e, (void)c;
    std::vector<int> n(d, 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
      if (k == d) {
        auto cf = closed_form_coefficient(l, n);
        Exps e{};
        for (int b = 0; b < d; ++b) e[b] = uint8_t(n[b]);
        for (int b = 0; b < d; ++b) EXPECT_EQ(cf[b], r.y[b].coeff(e)) << partition_string(l);
        return;
      }
      for (int x = 0; x <= left; ++x) {
        n[k] = x;
        rec(k + 1, left - x);
      }
      n[k] = 0;
    };
    rec(0, 3);
  }
}

TEST(Bethe, SingleBoxClosedFormCoefficient) {
  EXPECT_EQ(closed_form_coefficient({1}, {1})[0], T1 + T2);
  auto c0 = closed_form_coefficient({2, 1}, {0, 0, 0});
  EXPECT_EQ(c0[1], -T2);
  EXPECT_EQ(c0[2], -T1);
}

TEST(Bethe, AntidiagonalSpecialization) {
  Substitution s;
  s.has_t2 = true;
  s.t2 = -T1;
  for (const Partition& l : {Partition{2}, Partition{1, 1}, Partition{2, 1}}) {
    BetheRoot r = solve_bethe_fixed_point(l, 3);
    auto bs = boxes_of(l);
    for (size_t b = 0; b < bs.size(); ++b)
      for (const auto& [e, c] : r.y[b].terms()) {
        int deg = 0;
        for (int k = 0; k < r.vars->size(); ++k) deg += e[k];
        RatFunc v = substitute(c, s);
        if (deg == 0) EXPECT_EQ(v, T1 * RatFunc(bs[b].j - bs[b].i));
        else EXPECT_TRUE(v.is_zero());
      }
  }
}

TEST(Bethe, VOfYExamples) {
  RatFunc y(BigRat(3, 4));
  EXPECT_EQ(v_of_y({1}, {y})[0], y);
  EXPECT_THROW(v_of_y({2}, {RatFunc(0), -T2}), AdmissibilityError);
}

TEST(Bethe, VOfYRoundTrip) {
  std::mt19937_64 rng(21);
  Weights w = Weights::probe(3);
  for (const Partition& l : {Partition{2}, Partition{2, 1}, Partition{2, 2}, Partition{3, 1}}) {
    for (int k = 0; k < 5; ++k) {
      BethePoint y = random_point(rng, size_of(l), w);
      EXPECT_EQ(y_tilde(l, v_of_y(l, y, w), w), y);
    }
  }
}

TEST(Bethe, JacobianDeterminantProductFormula) {
  auto one = jacobian_dets({1}, {RatFunc(BigRat(1, 3))});
  EXPECT_TRUE(one.determinant.is_one());
  EXPECT_TRUE(one.product_formula.is_one());
  std::mt19937_64 rng(22);
  Weights w = Weights::probe(4);
  for (const Partition& l : {Partition{2}, Partition{2, 2}, Partition{3, 1}}) {
    for (int k = 0; k < 5; ++k) {
      auto j = jacobian_dets(l, random_point(rng, size_of(l), w), w);
      EXPECT_EQ(j.determinant, j.product_formula);
    }
  }
}

TEST(Bethe, JacobianSymbolicTwoBoxes) {
  BethePoint y{RatFunc(BigRat(1, 7)), RatFunc(BigRat(9, 2))};
  auto j = jacobian_dets({2}, y);
  EXPECT_EQ(j.determinant, j.product_formula);
}

TEST(Bethe, MatrixIdentities) {
  std::mt19937_64 rng(23);
  Weights w = Weights::probe(5);
  for (const Partition& l : {Partition{1}, Partition{2}, Partition{3}, Partition{2, 1}}) {
    for (int k = 0; k < 3; ++k) {
      auto rep = matrix_identities(l, random_v(rng, size_of(l)), w);
      EXPECT_TRUE(rep.determinant_identity) << partition_string(l);
      EXPECT_TRUE(rep.inverse_identity) << partition_string(l);
    }
  }
}

TEST(Bethe, ReflectedTupleInvertsBetheFunctions) {
  std::mt19937_64 rng(24);
  Weights w = Weights::probe(6);
  for (int d = 1; d <= 3; ++d) {
    BethePoint y = random_point(rng, d, w), r;
    for (auto& x : y) r.push_back(w.t1 + w.t2 - x);
    auto f = bethe_F(y, w), g = bethe_F(r, w);
    for (int i = 0; i < d; ++i) EXPECT_TRUE((f[i] * g[i]).is_one());
  }
}

TEST(Bethe, DerivativeMatrixExamples) {
  BetheRoot r0 = solve_bethe_fixed_point({2}, 0);
  for (auto& row : root_derivative_matrix(r0))
    for (auto& x : row) EXPECT_TRUE(x.is_zero());
  BetheRoot r = solve_bethe_fixed_point({1}, 4);
  std::vector<TruncSeries::Term> terms;
  for (int k = 1; k <= 4; ++k) terms.push_back({exps({k}), (T1 + T2) * RatFunc(k % 2 ? k : -k)});
  EXPECT_EQ(root_derivative_matrix(r)[0][0], TruncSeries::from_terms(r.vars, terms));
}

TEST(Bethe, LogJacobianTimesDerivativeMatrixIsIdentity) {
  for (const Partition& l : {Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}}) {
    int d = size_of(l), target = 3;
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
        ASSERT_GE(r.order + lo, target);
        // every term of absolute degree <= target must match the identity
        for (const auto& [e, c] : acc->series.terms()) {
          int deg = lo;
          for (int v = 0; v < r.vars->size(); ++v) deg += e[v];
          if (deg > target) continue;
          bool is_const = deg == 0;
          if (is_const && i == k) EXPECT_TRUE(c.is_one());
          else EXPECT_TRUE(c.is_zero()) << partition_string(l) << " degree " << deg;
        }
        if (i == k) {
          bool found = false;
          for (const auto& [e, c] : acc->series.terms()) {
            int deg = lo;
            for (int v = 0; v < r.vars->size(); ++v) deg += e[v];
            if (deg == 0) found = true;
          }
          EXPECT_TRUE(found);
        }
      }
  }
}

TEST(Bethe, LogJacobianDeterminantMatchesDirectProduct) {
  for (const Partition& l : {Partition{1}, Partition{2}, Partition{2, 1}}) {
    int d = size_of(l);
    BetheRoot r = solve_bethe_fixed_point(l, 3);
    ShiftedSeries det = root_log_jacobian_det(r);
    // det(M) * det(M~) = 1, where M~ has ordinary series entries
    TruncSeries dt = determinant(root_derivative_matrix(r), r.vars);
    ShiftedSeries prod = det * ShiftedSeries::unit(dt);
    int lo = 0;
    for (int x : prod.shift) lo += x;
    for (const auto& [e, c] : prod.series.terms()) {
      int deg = lo;
      for (int v = 0; v < r.vars->size(); ++v) deg += e[v];
      if (deg > 3 - d) continue;
      if (deg == 0) EXPECT_TRUE(c.is_one());
      else EXPECT_TRUE(c.is_zero());
    }
  }
}
