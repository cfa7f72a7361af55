#pragma once

#include <gmpxx.h>

#include <vector>

namespace qb {

/// Dense univariate polynomial in the formal variable v, with exact rational
/// coefficients. Coefficient k is the coefficient of v^k; no trailing zeros
/// are stored, so the zero polynomial has an empty coefficient vector.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpq_class& c0);
  static Poly monomial(const mpq_class& c, int deg);
  static Poly one() { return Poly(mpq_class(1)); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  int order() const;  // lowest nonzero power, -1 for zero
  const mpq_class& coeff(int k) const;
  const mpq_class& leading() const { return c_.back(); }
  bool is_monomial() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly scaled(const mpq_class& s) const;
  Poly shifted(int k) const;   // multiply by v^k, k >= 0
  Poly reversed() const;       // v^deg * p(1/v), zero stays zero
  Poly monic() const;

  /// Euclidean division: a = q*b + r with deg r < deg b. b must be nonzero.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  /// Monic gcd (1 if either is a nonzero constant, 0 only for gcd(0,0)).
  static Poly gcd(Poly a, Poly b);

 private:
  void trim();
  std::vector<mpq_class> c_;
};

}  // namespace qb
