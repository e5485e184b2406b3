#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "localpt/invariants.hpp"

namespace localpt {

// Element of the cohomology of a product of symmetric products of a genus g curve, restricted to the
// classes u_i (even) and alpha_{l,i}, beta_{l,i} (odd), l = 1..g. Theta classes are expanded through
// theta_{k,l} = sum_j alpha_j^k beta_j^l.
class SymClass {
 public:
  struct Key {
    std::vector<int> u;
    uint64_t odd = 0;  // bit of generator (factor, class index, alpha/beta)
    auto operator<=>(const Key&) const = default;
  };

  SymClass(int factors, int genus);
  static SymClass scalar(int factors, int genus, const RatFunc& c);
  static SymClass u(int factors, int genus, int i);
  static SymClass alpha(int factors, int genus, int l, int i);
  static SymClass beta(int factors, int genus, int l, int i);
  static SymClass theta(int factors, int genus, int k, int l);

  int factors() const { return n_; }
  int genus() const { return g_; }
  const std::map<Key, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SymClass& operator+=(const SymClass& o);
  friend SymClass operator+(SymClass x, const SymClass& y) { return x += y; }
  // Drops u-powers above the caps, when given.
  SymClass multiply(const SymClass& o, const std::vector<int>& caps = {}) const;
  friend SymClass operator*(const SymClass& x, const SymClass& y) { return x.multiply(y); }
  SymClass scaled(const RatFunc& c) const;

  // Integral over the product of symmetric products of the given sizes.
  RatFunc integrate(const std::vector<int>& sizes) const;

 private:
  int n_, g_;
  std::map<Key, RatFunc> terms_;
  int bit(int l, int i, int type) const { return (i * g_ + (l - 1)) * 2 + type; }
};

// prod u_i^{n_i} * prod_l (prod alpha_l^{a} prod beta_l^{b}) * prod theta_{c1,c2} * exp(sum z_{i,j} theta_{i,j}),
// all factor indices 0-based, class indices l = 1..g.
struct SymIntegrand {
  int genus = 0;
  std::vector<int> sizes;                    // m_i
  std::vector<int> u_powers;                 // n_i
  std::vector<std::vector<int>> alpha;       // alpha[l-1]: factor indices, in order
  std::vector<std::vector<int>> beta;        // beta[l-1]
  std::vector<std::pair<int, int>> theta;    // (c1, c2)
  RatMatrix z;                               // n x n, empty for zero
  RatFunc coeff = RatFunc(1);
};

// Throws MalformedIntegrand on inconsistent sizes or out-of-range indices.
void validate(const SymIntegrand& s);
// Determinant closed form.
RatFunc sym_integral(const SymIntegrand& s);
// Expansion into alpha/beta monomials; exponential expanded by nilpotency.
RatFunc sym_integral_bruteforce(const SymIntegrand& s);
SymClass to_sym_class(const SymIntegrand& s);

// Factor lists appearing in the inverse Euler class of the fixed-locus normal bundle.
FactorProduct abar_factors(const Partition& lambda);
FactorProduct bbar_factors(const Partition& lambda, int direction);  // direction 1 or 2

// Box values -i t1 - j t2 + sum of the u-variables of the shapes containing the box;
// the u-variables are the first shapes.size() variables of vs.
std::vector<TruncSeries> ybar(const Partition& lambda, const std::vector<SkewShape>& shapes, const VarSetPtr& vs,
                              const Weights& w);

// Descendent variables only.
VarSetPtr descendent_varset(const std::vector<Insertion>& ins, const Orders& o);

// Coefficient of u^m in the localization integrand of one fixed-locus component, as a series in the
// descendent variables; insertions canonical.
TruncSeries pbar_lambda(const Geometry& geom, const CanonicalInsertions& ins, const Partition& lambda,
                        const SkewMultiplicity& m, const Orders& o, const Weights& w = {});

// The bracket over skew shapes with box choices, summed directly; vs holds the u-variables first.
TruncSeries skew_bracket(const SeriesMatrix& inv_skew, const std::vector<SkewShape>& shapes,
                         const std::vector<std::pair<std::string, std::string>>& zw_pairs,
                         const std::vector<std::string>& x_list, const std::vector<TruncSeries>& y, int z_order,
                         const Weights& w);

InvariantSeries invariant_via_m_sum(const Geometry& geom, const std::vector<Insertion>& ins, const Orders& o,
                                    const Weights& w = {});

}  // namespace localpt
