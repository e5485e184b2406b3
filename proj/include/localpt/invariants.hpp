#pragma once

#include <functional>
#include <string>
#include <vector>

#include "localpt/bethe.hpp"

namespace localpt {

struct Geometry {
  int g = 0, l1 = 0, l2 = 0, d = 0;
  // degree of the p^{-1} symmetry prefactor
  int d_beta() const { return d * (l1 + l2 + 2 - 2 * g); }
};

enum class InsertionClass { One, Point, Alpha, Beta };

struct Insertion {
  InsertionClass cls = InsertionClass::One;
  int index = 0;  // for Alpha/Beta, 1..g
  std::string zvar;
  bool odd() const { return cls == InsertionClass::Alpha || cls == InsertionClass::Beta; }
  friend bool operator==(const Insertion&, const Insertion&) = default;
};

// "1:x1", "pt:y1", "a1:z1", "b1:w1"
Insertion parse_insertion(const std::string& s);
std::string insertion_string(const Insertion& ins);

struct CanonicalInsertions {
  int sign = 1;
  bool vanishes = false;
  std::vector<Insertion> list;  // all One, all Point, then alternating Alpha(l), Beta(l) for l = 1..g
  std::vector<int> ones() const;
  std::vector<int> points() const;
  // (alpha, beta) positions for class index l
  std::vector<std::pair<int, int>> pairs(int l) const;
};
// Throws std::invalid_argument for class indices outside 1..g or repeated variable names.
CanonicalInsertions canonicalize_insertions(const std::vector<Insertion>& ins, int g);

struct Orders {
  int p = 4;
  int z = 4;
};

// The Bernoulli generating function 1/(e^x - 1) - 1/x at x = zvar * weight.
TruncSeries frakB_series(const VarSetPtr& vs, const std::string& zvar, const RatFunc& weight, int z_order);
// (1 - e^{-t1 z})(1 - e^{-t2 z}) / (t1 t2) * e^{z Y}
TruncSeries e_factor(const std::string& zvar, const TruncSeries& y, int z_order, const Weights& w = {});

FactorProduct a_factors(int d);
FactorProduct b1_factors(int d);
FactorProduct b2_factors(int d);

struct ABB {
  ShiftedSeries a, b1, b2;
};
// A includes the determinant of the log-Jacobian of the Bethe functions.
ABB abb_factors(const BetheRoot& root);

// Signed sum over index tuples of minors of n, weighted by E-factors at the values y.
TruncSeries minor_bracket(const SeriesMatrix& n, const std::vector<std::pair<std::string, std::string>>& zw_pairs,
                          const std::vector<std::string>& x_list, const std::vector<TruncSeries>& y, int z_order,
                          const Weights& w);

struct InvariantSeries {
  Geometry geom;
  std::vector<Insertion> insertions;  // canonical order
  int sign = 1;
  bool vanishes = false;
  int p_shift = 0;
  TruncSeries series;  // in p (cap = p-order) and the descendent variables
};

// Variable set of an invariant: p then the descendent variables in the given order.
VarSetPtr invariant_varset(const std::vector<Insertion>& ins, const Orders& o);

// p-exponent of the prefactor attached to a partition.
int partition_shift(const Geometry& geom, const Partition& lambda);

using RootProvider = std::function<BetheRoot(const Partition&, int order, const Weights&)>;
RootProvider default_root_provider();

// Contribution of one partition, in the varset of the root (boxes plus descendent variables);
// root must be per-box and embedded into that varset.
ShiftedSeries p_lambda(const Geometry& geom, const CanonicalInsertions& ins, const BetheRoot& root, const Orders& o);

InvariantSeries invariant(const Geometry& geom, const std::vector<Insertion>& ins, const Orders& o,
                          const Weights& w = {}, const RootProvider& roots = default_root_provider());

// Series equality helpers on invariants (same varset, aligned shifts).
bool same_invariant(const InvariantSeries& a, const InvariantSeries& b);

}  // namespace localpt
