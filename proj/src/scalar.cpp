#include "qboson/scalar.hpp"

#include "qboson/error.hpp"

namespace qb {

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(Err::DIVISION_BY_ZERO, "scalar with zero denominator");
  reduce();
}

void Scalar::reduce() {
  if (num_.is_zero()) {
    den_ = Poly::one();
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(num_, g, q, r);
    num_ = q;
    Poly::divmod(den_, g, q, r);
    den_ = q;
  }
  // make the denominator monic
  mpq_class lead = den_.leading();
  if (lead != 1) {
    den_ = den_.scaled(1 / lead);
    num_ = num_.scaled(1 / lead);
  }
}

Scalar Scalar::v_power(long k) {
  if (k >= 0) return Scalar(Poly::monomial(1, static_cast<int>(k)), Poly::one());
  return Scalar(Poly::one(), Poly::monomial(1, static_cast<int>(-k)));
}

bool Scalar::is_one() const {
  return den_ == Poly::one() && num_ == Poly::one();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  // cross-reduce first; the two fractions are individually reduced already
  Poly g1 = Poly::gcd(num_, o.den_);
  Poly g2 = Poly::gcd(o.num_, den_);
  Poly q, r;
  Poly n1 = num_, d2 = o.den_, n2 = o.num_, d1 = den_;
  if (g1.degree() > 0) {
    Poly::divmod(n1, g1, q, r); n1 = q;
    Poly::divmod(d2, g1, q, r); d2 = q;
  }
  if (g2.degree() > 0) {
    Poly::divmod(n2, g2, q, r); n2 = q;
    Poly::divmod(d1, g2, q, r); d1 = q;
  }
  return Scalar(n1 * n2, d1 * d2);
}

Scalar Scalar::operator/(const Scalar& o) const {
  return *this * o.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Err::DIVISION_BY_ZERO, "inverse of zero scalar");
  return Scalar(den_, num_);
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::bar() const {
  if (is_zero()) return Scalar();
  // num(1/v)/den(1/v) = rev(num) * v^(deg den - deg num) / rev(den)
  int shift = den_.degree() - num_.degree();
  Poly n = num_.reversed(), d = den_.reversed();
  if (shift >= 0) {
    n = n.shifted(shift);
  } else {
    d = d.shifted(-shift);
  }
  return Scalar(std::move(n), std::move(d));
}

Scalar q_integer(long n, long qi_vexp) {
  if (n == 0) return Scalar(0);
  if (n < 0) return -q_integer(-n, qi_vexp);
  // (q_i^n - q_i^-n)/(q_i - q_i^-1) = q_i^{-(n-1)} * (q_i^{2n}-1)/(q_i^2-1)
  //                                 = q_i^{-(n-1)} * sum_{k<n} q_i^{2k}
  Scalar s(0);
  for (long k = 0; k < n; ++k) s += Scalar::v_power(qi_vexp * (2 * k - (n - 1)));
  return s;
}

Scalar q_factorial(long n, long qi_vexp) {
  Scalar r(1);
  for (long k = 2; k <= n; ++k) r *= q_integer(k, qi_vexp);
  return r;
}

Scalar q_binomial(long m, long k, long qi_vexp) {
  if (k < 0 || k > m) return Scalar(0);
  Scalar r(1);
  for (long t = 0; t < k; ++t) {
    r *= q_integer(m - t, qi_vexp);
    r /= q_integer(t + 1, qi_vexp);
  }
  return r;
}

const char* err_name(Err e) {
  switch (e) {
    case Err::NON_SYMMETRIZABLE: return "NON_SYMMETRIZABLE";
    case Err::BAD_CARTAN: return "BAD_CARTAN";
    case Err::DIVISION_BY_ZERO: return "DIVISION_BY_ZERO";
    case Err::OUT_OF_RANGE: return "OUT_OF_RANGE";
    case Err::FLAVOR_MISMATCH: return "FLAVOR_MISMATCH";
    case Err::SAME_INDEX: return "SAME_INDEX";
    case Err::WEIGHT_MIXED: return "WEIGHT_MIXED";
    case Err::HEIGHT_LIMIT: return "HEIGHT_LIMIT";
    case Err::DEGENERATE_GRAM: return "DEGENERATE_GRAM";
    case Err::IDENTITY_VIOLATION: return "IDENTITY_VIOLATION";
    case Err::NOT_HOMOGENEOUS: return "NOT_HOMOGENEOUS";
    case Err::WRONG_DATUM: return "WRONG_DATUM";
    case Err::UNSAFE_REGION: return "UNSAFE_REGION";
    case Err::NOT_A_SUBMODULE: return "NOT_A_SUBMODULE";
    case Err::INCONSISTENT_MODULE: return "INCONSISTENT_MODULE";
    case Err::PARSE_ERROR: return "PARSE_ERROR";
    case Err::UNKNOWN_INDEX: return "UNKNOWN_INDEX";
    case Err::USAGE: return "USAGE";
  }
  return "UNKNOWN";
}

}  // namespace qb
