#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "localpt/invariants.hpp"

namespace localpt {

// Polynomial in p with coefficients in Q(t1, t2), lowest degree first; no trailing zeros.
using PPoly = std::vector<RatFunc>;

PPoly trim(PPoly a);
int degree(const PPoly& a);  // -1 for zero
PPoly multiply(const PPoly& a, const PPoly& b);
// Quotient and remainder.
std::pair<PPoly, PPoly> divide(const PPoly& a, const PPoly& b);
// Monic gcd.
PPoly gcd(const PPoly& a, const PPoly& b);
std::string to_string(const PPoly& a);

// p^p_shift * num / den with den(0) != 0.
struct RationalFit {
  PPoly num, den;
  int p_shift = 0;
};

// Coefficients of p^(p_shift + k), k = 0..n.
std::vector<RatFunc> expand(const RationalFit& f, int n);
// Moves powers of p from the numerator into the shift and scales den(0) to 1.
RationalFit normalized(RationalFit f);

// coeffs[k] is the coefficient of p^(p_shift + k). Tries denominator degrees 0..max_den_deg, then numerator
// degrees 0..max_num_deg, and returns the first fit reproducing every coefficient, including all guard
// coefficients past the solve window. Needs coeffs.size() >= max_num_deg + max_den_deg + 2.
std::optional<RationalFit> fit_rational(const std::vector<RatFunc>& coeffs, int p_shift, int max_num_deg,
                                        int max_den_deg);

// Smallest total degree num + den first, then smallest denominator degree; at least `guards` coefficients
// beyond num + den + 1 must be reproduced.
std::optional<RationalFit> fit_rational_minimal(const std::vector<RatFunc>& coeffs, int p_shift, int guards = 1);

struct Verdict {
  std::string check;
  bool pass = false;
  std::string witness;
};

// R(1/p) = p^(-d_beta) * negated(p) as rational functions.
Verdict check_functional_equation(const RationalFit& r, const RationalFit& negated, int d_beta);
// The denominator divides p^a * prod_{n <= d} ((-p)^n - 1)^(c_n).
Verdict check_pole_locations(const RationalFit& r, int d);

// Per descendent monomial (exponents of the descendent variables in varset order, p excluded).
struct InvariantFit {
  std::map<std::vector<int>, RationalFit> fits;
  std::vector<std::vector<int>> unfitted;
  bool complete() const { return unfitted.empty(); }
};
InvariantFit fit_invariant(const InvariantSeries& inv, int max_num_deg, int max_den_deg);
InvariantFit fit_invariant_minimal(const InvariantSeries& inv, int guards = 1);
// Negates every descendent variable.
InvariantSeries negate_descendents(const InvariantSeries& inv);
Verdict check_functional_equation(const InvariantFit& fit, const InvariantFit& negated, int d_beta);
Verdict check_pole_locations(const InvariantFit& fit, int d);

// Brackets keyed by (subset of the insertion list as a bit mask, degree); values are in the insertion order
// given (canonicalization sign applied), in the common variable set p + all descendent variables.
using BracketTable = std::map<std::pair<uint32_t, int>, ShiftedSeries>;

VarSetPtr bracket_varset(const std::vector<Insertion>& ins, const Orders& o);
// Disconnected invariants for every subset and every degree 0..d.
BracketTable disconnected_table(const Geometry& geom, const std::vector<Insertion>& ins, const Orders& o,
                                const Weights& w = {});
// Sign of reordering the insertions into the concatenation of the blocks (blocks by smallest element).
int partition_sign(const std::vector<Insertion>& ins, const std::vector<uint32_t>& blocks);
BracketTable connected_invariants(const BracketTable& disconnected, const std::vector<Insertion>& ins, int d,
                                  const VarSetPtr& vs);
BracketTable disconnected_from_connected(const BracketTable& connected, const std::vector<Insertion>& ins, int d,
                                         const VarSetPtr& vs);
// Equality on the common p-window.
bool same_bracket(const ShiftedSeries& a, const ShiftedSeries& b);

struct SpectrumReport {
  int d = 0;
  std::vector<Partition> partitions;
  std::vector<TruncSeries> eigenvalues;  // sum over boxes of E(z, Y_box), in (p, z)
  bool classical_limit = false;
  bool trace_identity = false;
  int k0 = -1;  // smallest k with pairwise distinct classical power sums, -1 if none up to 20
  std::string message;
  bool pass() const { return classical_limit && trace_identity && k0 > 0; }
};
// probe binds t1, t2 for the power-sum separation test.
SpectrumReport spectrum_check(int d, int z_order, int p_order, const Weights& w = {},
                              const Weights& probe = Weights::probe(1));

}  // namespace localpt
