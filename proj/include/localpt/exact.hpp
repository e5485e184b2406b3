#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "localpt/errors.hpp"

namespace localpt {

using BigRat = mpq_class;
using BigInt = mpz_class;

std::string to_string(const BigRat& q);
BigRat parse_bigrat(const std::string& s);

// Sparse polynomial in t1, t2 with rational coefficients.
// Terms are kept sorted by descending graded-lex order (total degree, then t1 power).
class Poly2 {
 public:
  struct Term {
    uint32_t a = 0, b = 0;
    BigRat c;
  };

  Poly2() = default;
  Poly2(long c);
  Poly2(const BigRat& c);
  static Poly2 monomial(uint32_t a, uint32_t b, const BigRat& c = 1);
  static Poly2 t1() { return monomial(1, 0); }
  static Poly2 t2() { return monomial(0, 1); }
  static Poly2 from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].a == 0 && terms_[0].b == 0); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_homogeneous() const;
  BigRat constant_value() const;
  const BigRat& leading_coeff() const { return terms_.front().c; }
  uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().a + terms_.front().b; }
  uint32_t degree_t1() const;
  uint32_t degree_t2() const;
  uint32_t min_t1() const;
  uint32_t min_t2() const;

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 x, const Poly2& y) { return x += y; }
  friend Poly2 operator-(Poly2 x, const Poly2& y) { return x -= y; }
  friend Poly2 operator*(const Poly2& x, const Poly2& y);
  Poly2 scaled(const BigRat& s) const;
  Poly2 shifted_down(uint32_t da, uint32_t db) const;
  friend bool operator==(const Poly2& x, const Poly2& y);
  friend bool operator!=(const Poly2& x, const Poly2& y) { return !(x == y); }

  // Exact quotient; throws std::domain_error if y does not divide x.
  friend Poly2 exact_div(const Poly2& x, const Poly2& y);
  BigRat eval(const BigRat& x1, const BigRat& x2) const;
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
  void normalize();
};

// Monic gcd (leading graded-lex coefficient 1); gcd(0,0) = 0.
Poly2 gcd(const Poly2& x, const Poly2& y);

// Reduced fraction num/den with den monic under graded-lex order.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(const BigRat& c) : num_(c), den_(1) {}
  RatFunc(const Poly2& p) : num_(p), den_(1) {}
  RatFunc(const Poly2& num, const Poly2& den);

  static RatFunc t1() { return RatFunc(Poly2::t1()); }
  static RatFunc t2() { return RatFunc(Poly2::t2()); }

  const Poly2& num() const { return num_; }
  const Poly2& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  BigRat constant_value() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc x, const RatFunc& y) { return x += y; }
  friend RatFunc operator-(RatFunc x, const RatFunc& y) { return x -= y; }
  friend RatFunc operator*(RatFunc x, const RatFunc& y) { return x *= y; }
  friend RatFunc operator/(RatFunc x, const RatFunc& y) { return x /= y; }
  friend bool operator==(const RatFunc& x, const RatFunc& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
  friend bool operator!=(const RatFunc& x, const RatFunc& y) { return !(x == y); }

  RatFunc inverse() const;
  RatFunc pow(long e) const;
  std::string to_string() const;

 private:
  Poly2 num_, den_;
  void canonicalize_sign();
};

// Substitution of t1 and/or t2; an empty optional keeps the variable.
struct Substitution {
  bool has_t1 = false, has_t2 = false;
  RatFunc t1, t2;
};
RatFunc substitute(const RatFunc& f, const Substitution& s);
RatFunc substitute_poly(const Poly2& p, const Substitution& s);

// Values bound to the equivariant parameters. Symbolic by default; a probe binds random rationals.
struct Weights {
  RatFunc t1 = RatFunc::t1();
  RatFunc t2 = RatFunc::t2();
  bool symbolic() const { return !t1.is_constant(); }
  static Weights probe(uint64_t seed);
  static Weights at(const BigRat& a, const BigRat& b);
};

BigRat random_rational(std::mt19937_64& rng, long range = 40);

}  // namespace localpt
