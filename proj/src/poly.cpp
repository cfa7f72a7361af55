#include "qboson/poly.hpp"

#include <algorithm>

#include "qboson/error.hpp"

namespace qb {

namespace {
const mpq_class kZero(0);
}

Poly::Poly(const mpq_class& c0) {
  if (c0 != 0) c_.push_back(c0);
}

Poly Poly::monomial(const mpq_class& c, int deg) {
  Poly p;
  if (c != 0) {
    p.c_.assign(static_cast<size_t>(deg) + 1, kZero);
    p.c_.back() = c;
  }
  return p;
}

int Poly::order() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return static_cast<int>(k);
  return -1;
}

const mpq_class& Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[static_cast<size_t>(k)];
}

bool Poly::is_monomial() const {
  if (is_zero()) return false;
  return order() == degree();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), kZero);
  for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), kZero);
  for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = coeff(static_cast<int>(k)) - o.coeff(static_cast<int>(k));
  r.trim();
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  Poly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, kZero);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  r.trim();
  return r;
}

Poly Poly::scaled(const mpq_class& s) const {
  if (s == 0) return Poly();
  Poly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return k == 0 ? *this : Poly();
  Poly r;
  r.c_.assign(c_.size() + static_cast<size_t>(k), kZero);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<size_t>(k)] = c_[i];
  return r;
}

Poly Poly::reversed() const {
  Poly r = *this;
  std::reverse(r.c_.begin(), r.c_.end());
  r.trim();
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / leading());
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) fail(Err::DIVISION_BY_ZERO, "polynomial division by zero");
  r = a;
  q = Poly();
  if (a.degree() < b.degree()) return;
  q.c_.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, kZero);
  const mpq_class lead_inv = 1 / b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    mpq_class f = r.leading() * lead_inv;
    q.c_[static_cast<size_t>(shift)] = f;
    for (int k = 0; k <= b.degree(); ++k) {
      r.c_[static_cast<size_t>(k + shift)] -= f * b.coeff(k);
    }
    r.trim();
  }
  q.trim();
}

namespace {

/// Primitive integer vector (clear denominators, divide out the content).
/// Empty vector encodes zero.
std::vector<mpz_class> to_primitive(const Poly& p) {
  std::vector<mpz_class> z;
  if (p.is_zero()) return z;
  mpz_class den_lcm(1);
  for (int k = 0; k <= p.degree(); ++k)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), p.coeff(k).get_den().get_mpz_t());
  z.resize(static_cast<size_t>(p.degree()) + 1);
  mpz_class content(0);
  for (int k = 0; k <= p.degree(); ++k) {
    z[static_cast<size_t>(k)] = p.coeff(k).get_num() * (den_lcm / p.coeff(k).get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[static_cast<size_t>(k)].get_mpz_t());
  }
  for (auto& c : z) c /= content;
  return z;
}

void z_trim(std::vector<mpz_class>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

void z_make_primitive(std::vector<mpz_class>& v) {
  z_trim(v);
  if (v.empty()) return;
  mpz_class content(0);
  for (const auto& c : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  for (auto& c : v) c /= content;
}

/// Pseudo-remainder of a by b (b nonzero, deg a >= deg b), up to sign/content.
std::vector<mpz_class> z_prem(std::vector<mpz_class> r, const std::vector<mpz_class>& b) {
  const mpz_class& lead = b.back();
  while (r.size() >= b.size()) {
    mpz_class top = r.back();
    size_t shift = r.size() - b.size();
    for (size_t k = 0; k + 1 < r.size(); ++k) {
      r[k] *= lead;
      if (k >= shift) r[k] -= top * b[k - shift];
    }
    r.pop_back();
    z_trim(r);
  }
  return r;
}

}  // namespace

Poly Poly::gcd(Poly a, Poly b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  // monomial and constant fast paths cover most denominators in practice
  if (a.degree() == 0 || b.degree() == 0) return Poly::one();
  if (a.is_monomial() || b.is_monomial()) {
    int k = std::min(a.order(), b.order());
    return k > 0 ? Poly::monomial(1, k) : Poly::one();
  }
  // primitive pseudo-remainder sequence over the integers
  std::vector<mpz_class> za = to_primitive(a), zb = to_primitive(b);
  if (za.size() < zb.size()) std::swap(za, zb);
  while (!zb.empty()) {
    std::vector<mpz_class> zr = z_prem(za, zb);
    z_make_primitive(zr);
    za = std::move(zb);
    zb = std::move(zr);
  }
  Poly g;
  g.c_.reserve(za.size());
  for (const auto& c : za) g.c_.push_back(mpq_class(c));
  return g.monic();
}

}  // namespace qb
