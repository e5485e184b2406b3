#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "localpt/exact.hpp"

namespace localpt {

constexpr int kMaxVars = 16;
using Exps = std::array<uint8_t, kMaxVars>;

// Ordered variables with per-variable caps; box variables additionally share one total-degree cap.
struct VarSet {
  struct Var {
    std::string name;
    int order = 0;
    bool box = false;
  };
  std::vector<Var> vars;
  int total_box_order = -1;  // -1: no shared cap

  int size() const { return int(vars.size()); }
  int index(const std::string& name) const;  // throws UnknownVariable
  int find(const std::string& name) const;   // -1 if absent
  bool admits(const Exps& e) const;
  std::vector<int> box_indices() const;
  friend bool operator==(const VarSet& x, const VarSet& y);
};
using VarSetPtr = std::shared_ptr<const VarSet>;

class VarSetBuilder {
 public:
  VarSetBuilder& boxes(const std::vector<std::string>& names, int total_order);
  VarSetBuilder& var(const std::string& name, int order);
  VarSetPtr build() const;

 private:
  VarSet vs_;
};

class TruncSeries {
 public:
  using Term = std::pair<Exps, RatFunc>;

  TruncSeries() = default;
  explicit TruncSeries(VarSetPtr vs) : vs_(std::move(vs)) {}
  TruncSeries(VarSetPtr vs, const RatFunc& c);
  static TruncSeries variable(VarSetPtr vs, const std::string& name, const RatFunc& c = RatFunc(1));
  static TruncSeries monomial(VarSetPtr vs, const Exps& e, const RatFunc& c);
  static TruncSeries from_terms(VarSetPtr vs, std::vector<Term> terms);

  const VarSetPtr& varset() const { return vs_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RatFunc coeff(const Exps& e) const;
  RatFunc constant_term() const;
  bool is_constant() const;

  TruncSeries operator-() const;
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries x, const TruncSeries& y) { return x += y; }
  friend TruncSeries operator-(TruncSeries x, const TruncSeries& y) { return x -= y; }
  friend TruncSeries operator*(const TruncSeries& x, const TruncSeries& y);
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
  TruncSeries scaled(const RatFunc& c) const;
  friend bool operator==(const TruncSeries& x, const TruncSeries& y);
  friend bool operator!=(const TruncSeries& x, const TruncSeries& y) { return !(x == y); }

  TruncSeries inverse() const;      // throws NonInvertibleConstantTerm
  TruncSeries pow(long e) const;    // negative e inverts
  TruncSeries pd(const std::string& var) const;   // var * d/dvar
  TruncSeries pd(int var) const;
  TruncSeries deriv(int var) const;               // d/dvar (loses one order of precision in var)
  TruncSeries negate_var(const std::string& var) const;
  TruncSeries map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const;
  // Re-express in a varset containing every variable of this one (matching by name); terms beyond the new caps drop.
  TruncSeries embed(const VarSetPtr& target) const;
  // Identify all box variables with the variable `target` of `into`; other variables match by name.
  TruncSeries specialize_boxes(const VarSetPtr& into, const std::string& target) const;
  // Multiply by the monomial with exponents `e` (all >= 0), truncating.
  TruncSeries shifted(const std::vector<int>& e) const;
  // Terms whose exponent in `var` equals k, with that exponent cleared.
  TruncSeries slice(int var, int k) const;
  int max_total_box_degree() const;
  std::string to_string() const;

 private:
  VarSetPtr vs_;
  std::vector<Term> terms_;  // sorted by exponent vector, no zero coefficients
  void check_compatible(const TruncSeries& o) const;
};

// Sum_{k <= z_order} z^k body^k / k!
TruncSeries exp_linear(const std::string& zvar, const TruncSeries& body, int z_order);

// Evaluate a series P (over its own varset) at series values for each of its variables.
TruncSeries compose(const TruncSeries& p, const std::vector<TruncSeries>& values, const VarSetPtr& target);

// p^shift * series, where the shift may have negative components; used for finite Laurent prefactors.
struct ShiftedSeries {
  std::vector<int> shift;
  TruncSeries series;

  static ShiftedSeries unit(const TruncSeries& s);
  ShiftedSeries operator*(const ShiftedSeries& o) const;
  ShiftedSeries operator+(const ShiftedSeries& o) const;
  ShiftedSeries operator-() const;
  ShiftedSeries inverse() const;  // requires an invertible series part
  ShiftedSeries pow(long e) const;
  // Absorb a nonnegative prefactor into the series (truncating); throws on negative components.
  TruncSeries as_series() const;
};

}  // namespace localpt
