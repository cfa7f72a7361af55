#pragma once

#include <gmpxx.h>

#include "qboson/poly.hpp"

namespace qb {

/// Exact element of the coefficient field Q(v), canonicalized: the denominator
/// is monic and coprime to the numerator, and zero is 0/1. Laurent values like
/// q^-2 are held as genuine fractions (1/v^(2D)). The engine sets v = q^(1/D)
/// where D is the common exponent denominator of the Cartan datum.
class Scalar {
 public:
  Scalar() : num_(), den_(Poly::one()) {}
  Scalar(long n) : num_(mpq_class(n)), den_(Poly::one()) {}
  explicit Scalar(const mpq_class& r) : num_(r), den_(Poly::one()) {}
  Scalar(Poly num, Poly den);

  static Scalar from_poly(Poly p) { return Scalar(std::move(p), Poly::one()); }
  /// v^k for any integer k (negative exponents go to the denominator).
  static Scalar v_power(long k);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // DIVISION_BY_ZERO on o == 0
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  Scalar pow(long e) const;
  /// The bar involution v -> v^-1.
  Scalar bar() const;

 private:
  void reduce();
  Poly num_, den_;
};

/// q-integer [n] for q_i = v^qi_vexp: (q_i^n - q_i^-n)/(q_i - q_i^-1).
Scalar q_integer(long n, long qi_vexp);
/// [n]! for the same q_i.
Scalar q_factorial(long n, long qi_vexp);
/// Gaussian binomial [m choose k] for q_i; 0 (flagged by caller) outside range.
Scalar q_binomial(long m, long k, long qi_vexp);

}  // namespace qb
