#pragma once

#include <string>
#include <utility>
#include <vector>

#include "localpt/exact.hpp"
#include "localpt/linalg.hpp"
#include "localpt/series.hpp"
#include "localpt/shapes.hpp"

namespace localpt {

// c1*t1 + c2*t2 + Y[plus] - Y[minus]; an index of -1 drops that term.
struct LinearForm {
  int c1 = 0, c2 = 0;
  int plus = -1, minus = -1;
  int dY(int k) const { return (plus == k) - (minus == k); }
};

// scalar * prod L^e
struct FactorProduct {
  RatFunc scalar = RatFunc(1);
  std::vector<std::pair<LinearForm, int>> factors;
  FactorProduct& mul(const LinearForm& l, int e) {
    factors.push_back({l, e});
    return *this;
  }
  FactorProduct& mul(const FactorProduct& o);
};

using BethePoint = std::vector<RatFunc>;

RatFunc evaluate(const LinearForm& l, const BethePoint& y, const Weights& w);
// Throws AdmissibilityError when a factor vanishes.
RatFunc evaluate(const FactorProduct& f, const BethePoint& y, const Weights& w);
// sum e * dL/dY_k / L
RatFunc log_derivative(const FactorProduct& f, int k, const BethePoint& y, const Weights& w);

TruncSeries evaluate(const LinearForm& l, const std::vector<TruncSeries>& y, const Weights& w);
// Requires every factor with negative exponent to have an invertible constant term.
TruncSeries evaluate(const FactorProduct& f, const std::vector<TruncSeries>& y, const Weights& w);

// Factor lists of the Bethe functions and their box-adapted variants.
FactorProduct bethe_F_factors(int d, int i);
FactorProduct tilde_F_factors(const Partition& lambda, int box);
// The pair factor between distinct boxes a, b (a != b), excluding the vanishing factors.
FactorProduct tilde_g_factors(const Partition& lambda, int a, int b);
FactorProduct v_of_y_factors(const Partition& lambda, int box);
// Product of the modified factors over the boxes of a skew shape, paired against boxes outside it.
FactorProduct skew_F_factors(const Partition& lambda, const SkewShape& shape);

std::string check_admissible(const BethePoint& y, const Weights& w);  // empty if admissible
std::vector<RatFunc> bethe_F(const BethePoint& y, const Weights& w = {});

BethePoint y_tilde(const Partition& lambda, const std::vector<RatFunc>& v, const Weights& w = {});
std::vector<TruncSeries> y_tilde(const Partition& lambda, const std::vector<TruncSeries>& v, const Weights& w);

enum class RootMode { PerBox, Single };
std::string mode_name(RootMode m);
RootMode parse_mode(const std::string& s);

struct BetheRoot {
  Partition lambda;
  RootMode mode = RootMode::PerBox;
  int order = 0;
  Weights weights;
  VarSetPtr vars;
  std::vector<TruncSeries> y;
  // v_box / p_box, so that y = y_tilde(p * w); derived from y by complete_root
  std::vector<TruncSeries> w;

  TruncSeries v(int box) const;
  std::string p_name(int box) const;
};

VarSetPtr root_varset(const Partition& lambda, int order, RootMode mode);
BetheRoot solve_bethe_fixed_point(const Partition& lambda, int order, RootMode mode = RootMode::PerBox,
                                  const Weights& w = {});
// Recomputes w from y.
void complete_root(BetheRoot& root);
// Re-expresses a root in a larger varset (extra descendent variables), keeping names.
BetheRoot embed_root(const BetheRoot& root, const VarSetPtr& target);

struct ResidualReport {
  bool pass = true;
  bool constants_ok = true;
  int failing_degree = -1;  // lowest total degree with a nonzero residual
  int failing_box = -1;
  std::string message;
};
ResidualReport verify_bethe(const BetheRoot& root);

std::vector<RatFunc> closed_form_coefficient(const Partition& lambda, const std::vector<int>& exponent,
                                             const Weights& w = {});

std::vector<RatFunc> v_of_y(const Partition& lambda, const BethePoint& y, const Weights& w = {});

struct JacobianDets {
  RatFunc determinant, product_formula;
};
JacobianDets jacobian_dets(const Partition& lambda, const BethePoint& y, const Weights& w = {});

struct MatrixIdentityReport {
  bool determinant_identity = false;
  bool inverse_identity = false;
  RatFunc lhs, rhs;
};
MatrixIdentityReport matrix_identities(const Partition& lambda, const std::vector<RatFunc>& v, const Weights& w = {});

// Derivative matrix of the Bethe functions at a point: (d log F_j / d Y_i).
RatMatrix bethe_log_jacobian(const BethePoint& y, const Weights& w = {});

// (p_a d y_b / d p_a)_{a,b}
SeriesMatrix root_derivative_matrix(const BetheRoot& root);

// Linear forms that vanish at p = 0 evaluated as monomial times unit.
ShiftedSeries root_factor(const BetheRoot& root, const LinearForm& l);
ShiftedSeries root_product(const BetheRoot& root, const FactorProduct& f);
// (d log F_j / d Y_i) at the root.
std::vector<std::vector<ShiftedSeries>> root_log_jacobian(const BetheRoot& root);
// det of the previous matrix, computed without dividing by vanishing series.
ShiftedSeries root_log_jacobian_det(const BetheRoot& root);

}  // namespace localpt
